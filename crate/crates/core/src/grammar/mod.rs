//! The grammar model, its validation and the normal-form rewrite.

mod fresh;
mod model;
mod normal;
mod validate;

pub(crate) use fresh::FreshNames;
pub use model::{AnnotationSet, Daughter, Grammar, LexiconRule, Production, Schema};
pub use normal::{is_normal_form, normalize};
pub(crate) use normal::{normalize_with_origin, Normalized};
pub use validate::{validate, Constraint, RuleRef, Violation};
