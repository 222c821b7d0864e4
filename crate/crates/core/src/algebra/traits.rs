use std::fmt::Debug;

use super::ratfunc::RatFunc;
use crate::error::Result;

/// Exact coefficient arithmetic for series and matrices.
///
/// Elements carry their own ring context (field tables, relations), so the
/// additive and multiplicative identities are produced from an existing
/// element rather than out of thin air.
pub trait Coeff: Clone + PartialEq + Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn times(&self, o: &Self) -> Self;
    /// Product with a scalar of the rational function field.
    fn scaled(&self, r: &RatFunc) -> Self;
    /// A scalar of the rational function field, in the ring of `self`.
    fn scalar_like(&self, r: &RatFunc) -> Self;
    fn try_inv(&self) -> Result<Self>;
    fn to_text(&self, var: &str) -> String;
    /// Short description of the coefficient ring, for reports.
    fn ring_descriptor(&self) -> String;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
    fn pow(&self, e: u64) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        acc
    }
}

impl Coeff for RatFunc {
    fn zero_like(&self) -> Self {
        RatFunc::zero(self.field())
    }
    fn one_like(&self) -> Self {
        RatFunc::one(self.field())
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn scaled(&self, r: &RatFunc) -> Self {
        self * r
    }
    fn scalar_like(&self, r: &RatFunc) -> Self {
        r.clone()
    }
    fn try_inv(&self) -> Result<Self> {
        self.inv()
    }
    fn to_text(&self, var: &str) -> String {
        RatFunc::to_text(self, var)
    }
    fn is_one(&self) -> bool {
        RatFunc::is_one(self)
    }
    fn ring_descriptor(&self) -> String {
        format!("F_{}(t)", self.field().order())
    }
}
