//! Exact arithmetic for Drinfeld modular forms over `F_q[θ]`: Carlitz
//! torsion rings, Dirichlet characters and Gauss–Thakur sums, truncated
//! `u`-expansions and A-expansions, character twists and Hecke operators.

pub mod algebra;
pub mod carlitz;
pub mod characters;
pub mod error;
pub mod forms;
pub mod operators;
pub mod series;

pub use error::{Error, Result};

/// `F_q`.
pub type BaseField = algebra::Field;
/// `A = F_q[θ]`.
pub type PolyA = algebra::Poly;
/// Elements of the torsion ring `K[λ]`.
pub type TorsionScalar = algebra::QElem;
/// Series with coefficients in `K = F_{q^D}(θ)`.
pub type KSeries = series::UExpansion<algebra::RatFunc>;
/// Series with coefficients in a torsion ring.
pub type TorsionSeries = series::UExpansion<algebra::QElem>;
