//! Equational theories: the law schemas of each mode, a random generator of
//! well-typed terms, a law checker against the diagram semantics, and random
//! law rewriting.

mod check;
mod gen;
mod rewrite;
mod schema;

pub use check::{check_all, check_schema, Counterexample, SchemaReport};
pub use gen::{gen_term, wrap, TermGen};
pub use rewrite::rewrite_random;
pub use schema::{nominal_gamma, schema, schemas, Instance, Schema};
