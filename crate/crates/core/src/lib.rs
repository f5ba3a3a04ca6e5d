//! Finite categories, cofunctors and delta lenses.
//!
//! A delta lens `A => B` is a functor `f: A -> B` (its Get) together with a
//! lifting operation choosing, for every object `a` and every morphism
//! `u: f a -> b`, a morphism `put(a, u)` out of `a` lying over `u` (its Put).
//! Forgetting the Get leaves a [`Cofunctor`]. This crate implements both,
//! the category `Cof(B)` of cofunctors over a fixed base, the slice
//! `Lens(B)`, and the cofree-lens construction that makes the forgetful
//! functor `L: Lens(B) -> Cof(B)` comonadic. Every law is checked
//! exhaustively; [`oracle`] enumerates all small instances by brute force.

pub mod cofree;
pub mod cofunctor;
mod error;
pub mod fincat;
pub mod fixtures;
pub mod format;
pub mod laws;
pub mod lens;
pub mod names;
pub mod oracle;

pub use cofree::{cofree_lens, Coalgebra, CofreeLens, Factorization};
pub use cofunctor::{CofMorphism, CofSpan, Cofunctor, LiftTable};
pub use error::{CategoryFault, Error, Result, Triangle};
pub use fincat::{FinCategory, Functor, Mor, Obj, RawCategory};
pub use laws::{Audited, LawCheck, Mode};
pub use lens::{DeltaLens, LensMorphism};
