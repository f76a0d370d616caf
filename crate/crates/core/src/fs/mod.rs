//! Feature structures and the equation language describing them.

mod describe;
mod equation;
mod order;
mod structure;
mod tree;

pub use describe::{describe, Inconsistency, InconsistencyKind};
pub use equation::{Equation, Term};
pub use order::{canonical_equations, equivalent, subsumes, unify};
pub use structure::{FeatureStructure, NodeId, RawFeatureStructure, WellFormedness};
pub use tree::{TreeId, TreeStore};
