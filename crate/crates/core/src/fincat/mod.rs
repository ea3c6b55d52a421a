//! Finite categories and the enumeration kernel.

mod bifunctor;
mod category;
mod comma;
mod functor;
mod presheaf;
pub(crate) mod search;

pub use bifunctor::{
    coend, end, validate_bifunctor, Bifunctor, BifunctorViolation, Coend, End,
    ExponentialBifunctor, TabulatedBifunctor,
};
pub use category::{opposite, product, validate_category, CategoryViolation, FinCat};
pub(crate) use category::product_uncapped;
pub use comma::{comma_category, is_universal_cocone, Comma, CoconeViolation};
pub use functor::{
    all_functors, find_functor_iso, functor_transformations, Functor, FunctorTransformation,
    FunctorViolation, TransformationViolation,
};
pub use presheaf::{
    find_natural_iso, nat_transformations, NatTransformation, NaturalityViolation, Presheaf,
    PresheafViolation,
};
