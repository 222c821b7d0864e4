//! Rational functions in `θ` over a finite field, kept reduced with a
//! monic denominator so that structural equality is mathematical equality.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use super::field::{Field, Gf};
use super::poly::Poly;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn zero(f: Field) -> RatFunc {
        RatFunc { num: Poly::zero(f), den: Poly::one(f) }
    }
    pub fn one(f: Field) -> RatFunc {
        RatFunc { num: Poly::one(f), den: Poly::one(f) }
    }
    pub fn constant(c: Gf) -> RatFunc {
        RatFunc { num: Poly::constant(c), den: Poly::one(c.field()) }
    }
    pub fn from_poly(p: Poly) -> RatFunc {
        let den = Poly::one(p.field());
        RatFunc { num: p, den }
    }

    /// `num / den`, reduced. Errors on a zero denominator.
    pub fn new(num: Poly, den: Poly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::NotInvertible);
        }
        Ok(RatFunc::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> RatFunc {
        if num.is_zero() {
            return RatFunc::zero(num.field());
        }
        if den.is_one() {
            return RatFunc { num, den };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        if !den.is_monic() {
            let inv = den.lead().inv().unwrap();
            num = num.scale(inv);
            den = den.scale(inv);
        }
        RatFunc { num, den }
    }

    pub fn field(&self) -> Field {
        self.num.field()
    }
    pub fn num(&self) -> &Poly {
        &self.num
    }
    pub fn den(&self) -> &Poly {
        &self.den
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }
    /// The polynomial this equals, if the denominator is trivial.
    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_poly().then_some(&self.num)
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::NotInvertible);
        }
        Ok(RatFunc::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, c: Gf) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero(self.field());
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn pow(&self, e: u64) -> RatFunc {
        RatFunc { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// `self^e` for a signed exponent; errors on `0^{-n}`.
    pub fn powi(&self, e: i64) -> Result<RatFunc> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// Value at `θ = x`; `None` if `x` is a pole.
    pub fn eval(&self, x: Gf) -> Option<Gf> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    pub fn to_text(&self, var: &str) -> String {
        let wrap = |p: &Poly| {
            let s = p.to_text(var);
            if s.contains('+') || s.contains('*') {
                format!("({s})")
            } else {
                s
            }
        };
        if self.den.is_one() {
            self.num.to_text(var)
        } else {
            format!("{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("t"))
    }
}
impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("t"))
    }
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RatFunc", 2)?;
        st.serialize_field("num", &self.num)?;
        st.serialize_field("den", &self.den)?;
        st.end()
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFunc::reduce(&self.num + &o.num, self.den.clone());
        }
        let g = self.den.gcd(&o.den);
        let d1 = self.den.div_exact(&g).unwrap();
        let d2 = o.den.div_exact(&g).unwrap();
        let num = &(&self.num * &d2) + &(&o.num * &d1);
        RatFunc::reduce(num, &d1 * &o.den)
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero(self.field());
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc { num: &self.num * &o.num, den: self.den.clone() };
        }
        // cross-cancel first to keep intermediate degrees small
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = o.den.div_exact(&g1).unwrap();
        let n2 = o.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let inv = den.lead().inv().unwrap();
        RatFunc { num: num.scale(inv), den: den.scale(inv) }
    }
}

impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero; use [`RatFunc::inv`] to handle it.
    fn div(self, o: &RatFunc) -> RatFunc {
        self * &o.inv().expect("rational function division by zero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, o: RatFunc) -> RatFunc {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> RatFunc {
        RatFunc::from_poly(p)
    }
}
