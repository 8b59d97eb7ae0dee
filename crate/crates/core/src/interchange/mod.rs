//! Flat netlists and DOT export.
//!
//! The netlist format is the idealised hardware-description style:
//!
//! ```text
//! -- mode: biflow
//! module fg(input u; output v)
//! begin
//! component f(input x1; output y1, y2, y3);
//! component g(input z1, z2, z3; output t1);
//! wire y1, z1;
//! wire y2, z2;
//! wire y3, z3;
//! wire u, x1;
//! wire t1, v;
//! end
//! ```
//!
//! Two extensions cover what plain point-to-point wires cannot express.
//! `component c1 : f(...)` gives an instance a name distinct from its
//! constant, and `node n1, n2;` declares junctions: a junction joins every
//! port wired to it into one net, which is how merges, producerless wires and
//! closed loops are written. `--` starts a comment; the comment
//! `-- mode: <mode>` is read as a pragma.

mod dot;
mod netlist;

use thiserror::Error;

pub use dot::to_dot;
pub use netlist::{
    diagram_to_netlist, netlist_to_diagram, parse_netlist, print_netlist, Component, Import,
    Netlist,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum NetlistError {
    #[error("{line}:{col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("port `{0}` is not connected")]
    DanglingPort(String),
    #[error("port `{0}` is driven more than once")]
    DoubleDrive(String),
    #[error("name `{0}` is declared more than once")]
    DuplicatePort(String),
    #[error("wire endpoint `{0}` is not a declared port or node")]
    UnknownPort(String),
    #[error("wire `{0}, {1}` joins two ports of the same direction")]
    BadWire(String, String),
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("component `{instance}` has {found} ports where `{constant}` needs {expected}")]
    ArityMismatch {
        instance: String,
        constant: String,
        expected: String,
        found: String,
    },
    #[error("not valid in {mode} mode: {reason}")]
    ModeViolation {
        mode: crate::term::Mode,
        reason: String,
    },
    #[error("the diagram has open variable points ({0})")]
    OpenDiagram(String),
}

impl NetlistError {
    pub fn code(&self) -> &'static str {
        match self {
            NetlistError::Syntax { .. } => "SyntaxError",
            NetlistError::DanglingPort(_) => "DanglingPort",
            NetlistError::DoubleDrive(_) => "DoubleDrive",
            NetlistError::DuplicatePort(_) => "DuplicatePort",
            NetlistError::UnknownPort(_) => "UnknownPort",
            NetlistError::BadWire(..) => "BadWire",
            NetlistError::UnknownConstant(_) => "UnknownConstant",
            NetlistError::ArityMismatch { .. } => "ArityMismatch",
            NetlistError::ModeViolation { .. } => "ModeViolation",
            NetlistError::OpenDiagram(_) => "OpenDiagram",
        }
    }
}
