//! Exact numerics for tilt stability and moduli of rank-two sheaves on the
//! Fano threefolds P3, X2 (quadric), X4 and X5.
//!
//! Everything is computed over `BigRational`; the only floating point in the
//! workspace lives in the CLI plot sampler.

pub mod bounds;
pub mod chern;
pub mod error;
pub mod moduli;
pub mod rational;
pub mod tilt;
pub mod varieties;
pub mod walls;

pub use chern::{ChernCharacter, ChernClasses, CubicPolynomial, Slope};
pub use error::{Error, Result};
pub use rational::Rational;
pub use tilt::{TiltPoint, Truncation, Wall, WallKind};
pub use varieties::{VarietyData, VarietyId};
