//! Expansions at the cusp at infinity.

mod aexp;
mod twisted;
mod uexp;

pub use aexp::{AExpansion, AKind};
pub use twisted::TwistedEisenstein;
pub use uexp::{
    descend, evaluate_at_shift, rescale_arg, shift_by_torsion, shift_by_value, shift_sum, to_subparameter, u_of_az,
    ModularMeta, Param, UExpansion,
};
