//! A workbench for discrete Γ-rings.
//!
//! * [`skeleton`]: finite pointed sets `[n]`, their maps and named generators.
//! * [`ring`]: the Γ-ring abstraction, built-in models and the axiom checker.
//! * [`laws`]: formal sum and difference laws.
//! * [`maps`]: multiplicative maps `HN -> R` and `HZ -> R` built from laws.
//! * [`pi0`]: `π₀` of finite models, Smith normal form and law classification.

pub mod error;
pub mod laws;
pub mod maps;
pub mod pi0;
pub mod report;
pub mod ring;
pub mod skeleton;

pub use error::{GammaError, Result};
pub use ring::{make_model, Element, GammaRing, Model};
pub use skeleton::PointedMap;
