//! Dense polynomials in `θ` over a finite field.
//!
//! The same type serves for `A = F_q[θ]` (over the base field) and for
//! `F_{q^D}[θ]`, the numerators and denominators of [`RatFunc`](super::RatFunc).

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use super::field::{Field, Gf};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct Poly {
    f: Field,
    c: Vec<u32>,
}

impl Poly {
    pub fn from_raw(f: Field, mut c: Vec<u32>) -> Poly {
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { f, c }
    }

    pub fn zero(f: Field) -> Poly {
        Poly { f, c: Vec::new() }
    }
    pub fn one(f: Field) -> Poly {
        Poly { f, c: vec![1] }
    }
    pub fn constant(c: Gf) -> Poly {
        Poly::from_raw(c.field(), vec![c.value()])
    }
    /// The variable `θ`.
    pub fn theta(f: Field) -> Poly {
        Poly { f, c: vec![0, 1] }
    }
    pub fn monomial(c: Gf, deg: usize) -> Poly {
        let mut v = vec![0; deg + 1];
        v[deg] = c.value();
        Poly::from_raw(c.field(), v)
    }
    /// Integer coefficients reduced into the prime field.
    pub fn from_ints(f: Field, coeffs: &[i64]) -> Poly {
        Poly::from_raw(f, coeffs.iter().map(|&x| f.from_int(x)).collect())
    }

    pub fn field(&self) -> Field {
        self.f
    }
    pub fn raw(&self) -> &[u32] {
        &self.c
    }
    pub fn coeff(&self, i: usize) -> Gf {
        self.f.elem(self.c.get(i).copied().unwrap_or(0))
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0] == 1
    }
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }
    /// Degree with `deg 0 = -1` for convenience in comparisons.
    pub fn deg(&self) -> i64 {
        self.c.len() as i64 - 1
    }
    pub fn lead(&self) -> Gf {
        self.f.elem(self.c.last().copied().unwrap_or(0))
    }
    pub fn is_monic(&self) -> bool {
        self.c.last() == Some(&1)
    }
    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// `|a| = q^{deg a}` where `q` is the order of the coefficient field.
    pub fn abs(&self) -> u64 {
        match self.degree() {
            None => 0,
            Some(d) => (self.f.order() as u64).pow(d as u32),
        }
    }

    pub fn scale(&self, s: Gf) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.f);
        }
        Poly { f: self.f, c: self.c.iter().map(|&x| self.f.mul(x, s.value())).collect() }
    }

    pub fn make_monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(self.lead().inv().unwrap())
    }

    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![0; k];
        c.extend_from_slice(&self.c);
        Poly { f: self.f, c }
    }

    pub fn pow(&self, e: u64) -> Poly {
        let mut result = Poly::one(self.f);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let f = self.f;
        if self.c.len() < d.c.len() {
            return (Poly::zero(f), self.clone());
        }
        let dl = d.c.len() - 1;
        let inv = f.inv(*d.c.last().unwrap()).unwrap();
        let mut r = self.c.clone();
        let mut q = vec![0u32; r.len() - dl];
        for top in (dl..r.len()).rev() {
            let c = f.mul(r[top], inv);
            if c == 0 {
                continue;
            }
            q[top - dl] = c;
            let nc = f.neg(c);
            for (j, &dj) in d.c.iter().enumerate() {
                let idx = top - dl + j;
                r[idx] = f.add(r[idx], f.mul(nc, dj));
            }
        }
        r.truncate(dl);
        (Poly::from_raw(f, q), Poly::from_raw(f, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// `(g, s, t)` with `g = s*self + t*other` and `g` monic.
    pub fn xgcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = self.f;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lead().inv().unwrap();
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.f);
        }
        (self * other).div_exact(&self.gcd(other)).unwrap().make_monic()
    }

    /// Inverse modulo `m`, if it exists.
    pub fn inv_mod(&self, m: &Poly) -> Option<Poly> {
        let (g, s, _) = self.rem(m).xgcd(m);
        g.is_one().then(|| s.rem(m))
    }

    pub fn eval(&self, x: Gf) -> Gf {
        debug_assert_eq!(x.field(), self.f);
        let mut acc = 0;
        for &c in self.c.iter().rev() {
            acc = self.f.add(self.f.mul(acc, x.value()), c);
        }
        self.f.elem(acc)
    }

    /// Applies a coefficient map, e.g. an embedding into a larger field.
    pub fn map_coeffs(&self, target: Field, map: impl Fn(u32) -> u32) -> Poly {
        Poly::from_raw(target, self.c.iter().map(|&x| map(x)).collect())
    }

    /// Monic factors of a square-free monic polynomial, sorted by
    /// degree and then by enumeration order.
    pub fn factor_squarefree(&self) -> Result<Vec<Poly>> {
        if !self.is_monic() || self.is_constant() {
            return Err(Error::BadModulus(self.to_string()));
        }
        let mut rest = self.clone();
        let mut out = Vec::new();
        let mut d = 1;
        while rest.degree().unwrap_or(0) > 0 {
            if 2 * d > rest.degree().unwrap() {
                out.push(rest.clone());
                break;
            }
            for m in monics_of_degree(self.f, d) {
                if let Some(qt) = rest.div_exact(&m) {
                    if m.divides(&qt) {
                        return Err(Error::NotSquareFree(self.to_string()));
                    }
                    out.push(m);
                    rest = qt;
                }
            }
            d += 1;
        }
        out.sort();
        Ok(out)
    }

    pub fn is_irreducible(&self) -> bool {
        !self.is_constant()
            && self.make_monic().factor_squarefree().map_or(false, |fs| fs.len() == 1)
    }

    pub fn to_text(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let f = self.f;
        let mut parts = Vec::new();
        for (i, &c) in self.c.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coeff = f.fmt_elem(c);
            let compound = coeff.contains('+');
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            parts.push(match (i, c) {
                (0, _) => coeff,
                (_, 1) => mono,
                _ if compound => format!("({coeff})*{mono}"),
                _ => format!("{coeff}*{mono}"),
            });
        }
        parts.join("+")
    }

    /// Parses literals such as `t^2+2`, `2*t^3 + t + 1` or `t(t+1)`-free
    /// sums of monomials. Coefficients are integers reduced into `F_p`.
    pub fn parse(f: Field, s: &str, var: &str) -> Result<Poly> {
        let bytes: Vec<char> = s.chars().collect();
        let mut pos = 0;
        let mut acc = Poly::zero(f);
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_whitespace() {
                *pos += 1;
            }
        };
        let var_chars: Vec<char> = var.chars().collect();
        let at_var = |pos: usize| -> bool {
            bytes.len() >= pos + var_chars.len() && bytes[pos..pos + var_chars.len()] == var_chars[..]
        };
        let read_int = |pos: &mut usize| -> Option<i64> {
            let start = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            (start < *pos).then(|| bytes[start..*pos].iter().collect::<String>().parse().unwrap())
        };
        skip_ws(&mut pos);
        if pos == bytes.len() {
            return Err(Error::Parse { pos, msg: "empty polynomial literal".into() });
        }
        let mut sign = 1i64;
        if bytes[pos] == '-' {
            sign = -1;
            pos += 1;
        }
        loop {
            skip_ws(&mut pos);
            let mut coeff = 1i64;
            let mut has_coeff = false;
            if let Some(n) = read_int(&mut pos) {
                coeff = n;
                has_coeff = true;
                skip_ws(&mut pos);
                if pos < bytes.len() && bytes[pos] == '*' {
                    pos += 1;
                    skip_ws(&mut pos);
                    if !at_var(pos) {
                        return Err(Error::Parse { pos, msg: format!("expected '{var}'") });
                    }
                }
            }
            let mut exp = 0usize;
            if at_var(pos) {
                pos += var_chars.len();
                exp = 1;
                skip_ws(&mut pos);
                if pos < bytes.len() && bytes[pos] == '^' {
                    pos += 1;
                    skip_ws(&mut pos);
                    exp = read_int(&mut pos)
                        .ok_or(Error::Parse { pos, msg: "expected exponent".into() })?
                        as usize;
                }
            } else if !has_coeff {
                return Err(Error::Parse { pos, msg: format!("expected integer or '{var}'") });
            }
            acc = &acc + &Poly::monomial(f.elem(f.from_int(sign * coeff)), exp);
            skip_ws(&mut pos);
            if pos == bytes.len() {
                break;
            }
            match bytes[pos] {
                '+' => sign = 1,
                '-' => sign = -1,
                c => return Err(Error::Parse { pos, msg: format!("unexpected '{c}'") }),
            }
            pos += 1;
        }
        Ok(acc)
    }
}

/// The `q^d` monic polynomials of degree `d`, in a fixed order: the lower
/// coefficients read as the base-`q` digits of a counter.
pub fn monics_of_degree(f: Field, d: usize) -> Vec<Poly> {
    let q = f.order() as u64;
    let count = q.pow(d as u32);
    (0..count)
        .map(|n| {
            let mut c = digits(n, q, d);
            c.push(1);
            Poly::from_raw(f, c)
        })
        .collect()
}

/// All `q^d` polynomials of degree `< d` (including 0), in counter order.
pub fn polys_below_degree(f: Field, d: usize) -> Vec<Poly> {
    let q = f.order() as u64;
    let count = q.pow(d as u32);
    (0..count).map(|n| Poly::from_raw(f, digits(n, q, d))).collect()
}

/// Monic polynomials of degree `<= d`, grouped by degree.
pub fn monics_up_to_degree(f: Field, d: usize) -> Vec<Poly> {
    (0..=d).flat_map(|k| monics_of_degree(f, k)).collect()
}

fn digits(mut n: u64, q: u64, len: usize) -> Vec<u32> {
    let mut c = Vec::with_capacity(len);
    for _ in 0..len {
        c.push((n % q) as u32);
        n /= q;
    }
    c
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && self.f == other.f
    }
}
impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

/// Degree first, then coefficients from the top down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.c
            .len()
            .cmp(&other.c.len())
            .then_with(|| self.c.iter().rev().cmp(other.c.iter().rev()))
    }
}
impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("t"))
    }
}
impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("t"))
    }
}

/// Little-endian coefficient arrays, one coordinate vector per coefficient.
impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coords: Vec<Vec<u32>> = self.c.iter().map(|&x| self.f.coords(x)).collect();
        coords.serialize(s)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let f = self.f;
        let (long, short) = if self.c.len() >= o.c.len() { (self, o) } else { (o, self) };
        let mut c = long.c.clone();
        for (i, &x) in short.c.iter().enumerate() {
            c[i] = f.add(c[i], x);
        }
        Poly::from_raw(f, c)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &(-o)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { f: self.f, c: self.c.iter().map(|&x| self.f.neg(x)).collect() }
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let f = self.f;
        if self.c.is_empty() || o.c.is_empty() {
            return Poly::zero(f);
        }
        let mut c = vec![0u32; self.c.len() + o.c.len() - 1];
        for (i, &x) in self.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in o.c.iter().enumerate() {
                if y != 0 {
                    c[i + j] = f.add(c[i + j], f.mul(x, y));
                }
            }
        }
        Poly::from_raw(f, c)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Field {
        Field::new(3, 1).unwrap()
    }

    #[test]
    fn enumerations_count_and_order() {
        let f = f3();
        assert_eq!(monics_of_degree(f, 0), vec![Poly::one(f)]);
        let m1: Vec<String> = monics_of_degree(f, 1).iter().map(|p| p.to_string()).collect();
        assert_eq!(m1, vec!["t", "t+1", "t+2"]);
        let f5 = Field::new(5, 1).unwrap();
        assert_eq!(polys_below_degree(f5, 2).len(), 25);
        assert_eq!(polys_below_degree(f5, 2), polys_below_degree(f5, 2));
    }

    #[test]
    fn parse_and_print() {
        let f = f3();
        let p = Poly::parse(f, "t^2 + 2", "t").unwrap();
        assert_eq!(p.to_string(), "t^2+2");
        assert_eq!(Poly::parse(f, "2*t^3+t+4", "t").unwrap().to_string(), "2*t^3+t+1");
        assert_eq!(Poly::parse(f, "x^2-1", "x").unwrap().to_text("x"), "x^2+2");
        let err = Poly::parse(f, "t^2 + ?", "t").unwrap_err();
        assert_eq!(err, Error::Parse { pos: 6, msg: "expected integer or 't'".into() });
    }

    #[test]
    fn division_and_gcd() {
        let f = f3();
        let a = Poly::parse(f, "t^3+2*t+1", "t").unwrap();
        let b = Poly::parse(f, "t^2+1", "t").unwrap();
        let (q, r) = a.divrem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        let g = (&a * &b).gcd(&(&b * &Poly::theta(f)));
        assert_eq!(g, b);
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn factorization() {
        let f = f3();
        let n = Poly::parse(f, "t^2+t", "t").unwrap();
        let fs = n.factor_squarefree().unwrap();
        assert_eq!(fs, vec![Poly::theta(f), Poly::parse(f, "t+1", "t").unwrap()]);
        assert!(Poly::parse(f, "t^2+1", "t").unwrap().is_irreducible());
        assert!(matches!(
            Poly::parse(f, "t^2", "t").unwrap().factor_squarefree(),
            Err(Error::NotSquareFree(_))
        ));
    }
}
