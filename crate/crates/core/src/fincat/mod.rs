//! Finite categories, functors, and the few limits and colimits the lens
//! constructions need.

mod category;
mod construct;
mod functor;

pub use category::{audit_category, validate_category, Arrow, FinCategory, Mor, Obj, RawCategory, RawMorphism};
pub use construct::{codiscrete, codiscrete_map, codiscrete_unit, coproduct_cat, pullback, Coproduct, Pullback};
pub use functor::{audit_functor, validate_functor, Functor};

pub(crate) use functor::same_category;
