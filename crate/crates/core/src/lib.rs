//! Tree homomorphic feature structure grammars.
//!
//! A grammar in this formalism is a context-free backbone whose daughters carry
//! equation schemata of two shapes only: `↑ a1 … an = ↓` (exactly one per
//! production daughter) and `↑ a1 … an = v`. Instantiating the schemata over a
//! constituent tree yields an equation set; a string is grammatical when some
//! tree for it yields a consistent set, i.e. one that describes a well-formed
//! feature structure. Because the arrow schema only carries a path on its left
//! side, the described structure is always a tree whose domination order
//! follows the constituent tree.
//!
//! The crate is `no_std` (it needs `alloc`) and is organised as:
//!
//! - [`fs`]: feature structures, equations, description (least model),
//!   subsumption, unification and well-formedness diagnostics.
//! - [`grammar`]: the grammar model, validation and the normal-form rewrite.
//! - [`cstructure`]: tree addresses, constituent structures, schema
//!   instantiation and the generated feature structure.
//! - [`parser`]: recognition, bounded parse enumeration and the bounded
//!   language enumerator.
//! - [`algebra`]: union, concatenation, Kleene closure, finite transducers and
//!   the transducer-image grammar.
//! - [`fixtures`]: the example grammars used throughout the tests.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod cstructure;
pub mod fixtures;
pub mod fs;
pub mod grammar;
pub mod parser;
mod symbol;

pub use symbol::Symbol;
