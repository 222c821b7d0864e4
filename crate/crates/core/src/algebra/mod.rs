//! Exact arithmetic: finite fields, polynomials and rational functions in
//! `θ`, quotient rings, binomials mod `p`, and linear algebra.

pub mod binom;
pub mod ext;
pub mod field;
pub mod linalg;
pub mod poly;
pub mod quotient;
pub mod ratfunc;
pub mod traits;

pub use binom::lucas_binomial;
pub use ext::ConstantExtension;
pub use field::{Field, Gf};
pub use poly::{monics_of_degree, monics_up_to_degree, polys_below_degree, Poly};
pub use quotient::{Generator, QElem, QuotientRing};
pub use ratfunc::RatFunc;
pub use traits::Coeff;
