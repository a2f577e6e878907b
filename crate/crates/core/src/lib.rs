//! Exact symbolic workbench for quantum-deformed point algebras of the
//! projective line.

pub mod expr;
pub mod freealg;
pub mod linalg;
pub mod pointalg;
pub mod poisson;
pub mod projcoord;
pub mod report;
pub mod rewrite;
pub mod scalars;
pub mod suites;
pub mod uqaction;

pub use freealg::{Gen, GenKind, NCPoly, StarStructure, Word};
pub use scalars::{Scalar, Var};
