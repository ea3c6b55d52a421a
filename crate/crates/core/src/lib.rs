//! Finite models for convolution semantics: finite categories, Day
//! convolution, Kan liftings, ternary and Kripke frames, and consequence
//! operators, all checked by exhaustive enumeration.

mod caps;
mod error;
mod report;
mod subset;

pub mod fincat;
pub mod frames;
pub mod consequence;
pub mod dayconv;
pub mod gen;
pub mod kan;
pub mod syntax;

pub use caps::Caps;
pub use error::{Error, Result};
pub use report::Report;
pub use subset::Subset;
