//! The Carlitz module `C_θ(x) = θx + x^q`: coefficients, torsion values and
//! Goss polynomials.

pub mod coeffs;
pub mod goss;
pub mod torsion;

pub use coeffs::{carlitz_action, carlitz_coeffs, CarlitzCoeffs};
pub use goss::{carlitz_factorials, eval_kpoly, goss_generating, goss_poly, goss_poly_torsion, goss_recursion, kpoly_text, KPoly};
pub use torsion::{torsion_generator, torsion_ring, TorsionContext};
