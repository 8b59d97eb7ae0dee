//! String diagrams with nominal wiring.
//!
//! Terms combine the structural combinators of symmetric monoidal categories
//! (composition, tensor, identities, symmetry, trace and the (co)monoid
//! generators) with a `link` binder that connects named sink and source
//! occurrences. Terms are checked in one of four [`Mode`]s and interpreted as
//! port-wired [`Diagram`]s, where equality is decided by canonical labelling.

pub mod diagram;
pub mod eqtheory;
pub mod interchange;
pub mod interp;
pub mod syntax;
pub mod term;
pub mod transform;
pub mod typecheck;

use thiserror::Error;

pub use diagram::{
    canonical, canonical_form, BoxNode, CanonicalKey, Diagram, DiagramError, Net, Port,
};
pub use interchange::NetlistError;
pub use interp::{interpret, Context};
pub use syntax::{parse_module, parse_term, print_module, print_term, ParseError, SourceModule};
pub use term::{
    gamma_term, id_term, perm_term, Arity, FreeDecls, FreshNames, Mode, Name, NameError,
    Permutation, Polarity, Signature, Term,
};
pub use transform::{
    delink, extrude_scopes, flatten, link_to_trace, trace_to_link, TransformError,
};
pub use typecheck::{typecheck, Anchor, Judgement, TypeError};

/// Any error raised by the library.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Name(#[from] NameError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Netlist(#[from] NetlistError),
}

impl Error {
    /// A stable machine-readable error code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Type(e) => e.code(),
            Error::Diagram(e) => match e {
                DiagramError::UnknownConstant(_) => "UnknownConstant",
                DiagramError::IfaceMismatch { .. } => "IfaceMismatch",
                DiagramError::NegativeArity { .. } => "NegativeArity",
                DiagramError::ModeViolation { .. } => "ModeViolation",
                DiagramError::UnknownLabel { .. } => "UnknownLabel",
                DiagramError::CycleError { .. } => "CycleError",
            },
            Error::Name(NameError::Capture(_)) => "CaptureError",
            Error::Name(NameError::NoBinder) => "NoBinder",
            Error::Parse(e) => e.code(),
            Error::Transform(e) => e.code(),
            Error::Netlist(e) => e.code(),
        }
    }
}
