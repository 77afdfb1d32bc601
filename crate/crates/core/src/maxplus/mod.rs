//! Scalars, vectors and matrices over the completed max-plus semiring.
//!
//! Residuation identities (for `f = A·` and `f# = A\·`) are
//! `f∘f#∘f = f` and `f#∘f∘f# = f#`. Some references print the first one as
//! `f∘f#∘f = f#`; that form does not type-check for non-square `A` and is
//! not what is implemented or tested here.

mod linalg;
mod scalar;

pub use linalg::{MaxPlusMatrix, MaxPlusVector};
pub use scalar::MaxPlusScalar;
