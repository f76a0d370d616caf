//! Closure constructions: union, concatenation, Kleene closure, finite
//! transducers and the grammar for a transducer image.

mod combinators;
mod image;
mod nft;

pub use combinators::{concat, star, union};
pub use image::{nft_image_grammar, triple_category, tilde_category};
pub use nft::{from_homomorphism, nft_invert, nft_outputs, Outputs, Transducer, Transition};

use core::fmt;

use crate::Symbol;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AlgebraError {
    /// The image construction needs a grammar in normal form.
    NotNormalForm,
    /// A grammar terminal the transducer cannot read.
    TerminalNotInInput(Symbol),
    /// An input symbol the homomorphism leaves undefined.
    NotTotal(Symbol),
    /// An output symbol outside the declared output alphabet.
    NotInOutput(Symbol),
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::NotNormalForm => f.write_str("grammar is not in normal form"),
            AlgebraError::TerminalNotInInput(t) => write!(f, "terminal {t:?} is not in the transducer's input alphabet"),
            AlgebraError::NotTotal(a) => write!(f, "homomorphism is undefined on {a:?}"),
            AlgebraError::NotInOutput(a) => write!(f, "{a:?} is not in the output alphabet"),
        }
    }
}
