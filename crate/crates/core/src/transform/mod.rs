//! Normal-form translations between terms and diagrams.
//!
//! * [`flatten`]: a diagram as a nominal netlist term (boxes in parallel,
//!   every wire a `link`);
//! * [`delink`]: a diagram as a pure combinator term;
//! * [`extrude_scopes`]: all binders moved to the root;
//! * [`trace_to_link`] / [`link_to_trace`]: exchanging feedback and binders.

mod delink;
mod extrude;
mod flatten;
mod trace_link;

use thiserror::Error;

use crate::term::Mode;
use crate::typecheck::TypeError;

pub use delink::delink;
pub use extrude::{extrude_scopes, split_binders};
pub use flatten::flatten;
pub use trace_link::{link_to_trace, trace_to_link};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("diagram has open variable points: {0}")]
    OpenDiagram(String),
    #[error("not possible in {mode} mode: {reason}")]
    ModeViolation { mode: Mode, reason: String },
    #[error(transparent)]
    Type(#[from] TypeError),
}

impl TransformError {
    pub fn code(&self) -> &'static str {
        match self {
            TransformError::OpenDiagram(_) => "OpenDiagram",
            TransformError::ModeViolation { .. } => "ModeViolation",
            TransformError::Type(e) => e.code(),
        }
    }
}

fn require_closed(d: &crate::Diagram) -> Result<(), TransformError> {
    if d.is_closed() {
        return Ok(());
    }
    let mut labels: Vec<String> = d.source_points().to_vec();
    labels.extend(d.sink_points().iter().cloned());
    labels.sort();
    labels.dedup();
    Err(TransformError::OpenDiagram(labels.join(", ")))
}
