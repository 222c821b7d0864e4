//! Finite fields `F_{p^n}` with table-driven arithmetic.
//!
//! An element is encoded as the integer `sum d_i p^i`, where `d_i` are its
//! coordinates in the power basis `1, y, ..., y^{n-1}` of `F_p[y]/(f)`.
//! Under this encoding `0` and `1` are the same integers in every field of
//! characteristic `p`, and `F_p` sits inside as `0..p`.
//!
//! Tables are built once per `(p, n)` and interned for the life of the
//! process, so a [`Field`] handle is a `Copy` pointer.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};

const MAX_ORDER: u64 = 1 << 16;
const ADD_TABLE_LIMIT: u32 = 1024;

pub struct FieldTables {
    p: u32,
    n: u32,
    order: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Vec<u32>,
    neg: Vec<u32>,
}

/// Handle to an interned finite field.
#[derive(Clone, Copy)]
pub struct Field(&'static FieldTables);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.0, other.0)
    }
}
impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.n.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.n)
    }
}

fn registry() -> &'static Mutex<HashMap<(u32, u32), &'static FieldTables>> {
    static REG: OnceLock<Mutex<HashMap<(u32, u32), &'static FieldTables>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^e`, if it is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while q % p != 0 {
        p += 1;
    }
    let (mut r, mut e) = (q, 0);
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

impl Field {
    /// The field with `p^n` elements.
    pub fn new(p: u32, n: u32) -> Result<Field> {
        if !is_prime(p) || n == 0 || (p as u64).checked_pow(n).map_or(true, |o| o > MAX_ORDER) {
            return Err(Error::InvalidField { p, n });
        }
        let mut reg = registry().lock().expect("field registry poisoned");
        if let Some(t) = reg.get(&(p, n)) {
            return Ok(Field(t));
        }
        let tables: &'static FieldTables = Box::leak(Box::new(FieldTables::build(p, n)));
        reg.insert((p, n), tables);
        Ok(Field(tables))
    }

    /// The field with `q` elements.
    pub fn with_order(q: u32) -> Result<Field> {
        let (p, e) = prime_power(q).ok_or(Error::InvalidField { p: q, n: 1 })?;
        Field::new(p, e)
    }

    pub fn characteristic(self) -> u32 {
        self.0.p
    }
    pub fn degree(self) -> u32 {
        self.0.n
    }
    pub fn order(self) -> u32 {
        self.0.order
    }
    /// Defining polynomial over `F_p`, little-endian and monic.
    pub fn modulus(self) -> &'static [u32] {
        &self.0.modulus
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let t = self.0;
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        if !t.add.is_empty() {
            return t.add[(a * t.order + b) as usize];
        }
        if t.p == 2 {
            return a ^ b;
        }
        digitwise(t.p, a, b, |x, y| (x + y) % t.p)
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        self.0.neg[a as usize]
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = self.0;
        t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
    }

    pub fn inv(self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let t = self.0;
        let m = t.order - 1;
        Some(t.exp[((m - t.log[a as usize]) % m) as usize])
    }

    pub fn pow(self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let t = self.0;
        let m = (t.order - 1) as u64;
        t.exp[((t.log[a as usize] as u64 * (e % m)) % m) as usize]
    }

    /// Reduction of an integer into the prime field.
    pub fn from_int(self, n: i64) -> u32 {
        n.rem_euclid(self.0.p as i64) as u32
    }

    pub fn elem(self, v: u32) -> Gf {
        debug_assert!(v < self.order());
        Gf { v, f: self }
    }
    pub fn zero(self) -> Gf {
        self.elem(0)
    }
    pub fn one(self) -> Gf {
        self.elem(1)
    }

    /// A fixed generator of the multiplicative group.
    pub fn generator(self) -> u32 {
        self.0.exp[1]
    }

    /// Coordinates of `v` in the power basis, little-endian.
    pub fn coords(self, v: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.0.n as usize);
        let mut r = v;
        for _ in 0..self.0.n {
            out.push(r % self.0.p);
            r /= self.0.p;
        }
        out
    }

    pub fn from_coords(self, c: &[u32]) -> u32 {
        c.iter().rev().fold(0, |acc, &d| acc * self.0.p + d % self.0.p)
    }

    pub fn elements(self) -> impl Iterator<Item = u32> {
        0..self.0.order
    }

    /// Renders an element as a polynomial in the generator symbol `a`.
    pub fn fmt_elem(self, v: u32) -> String {
        if self.0.n == 1 || v < self.0.p {
            return v.to_string();
        }
        let mut terms = Vec::new();
        for (i, d) in self.coords(v).into_iter().enumerate().rev() {
            if d == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "a".to_string(),
                _ => format!("a^{i}"),
            };
            terms.push(match (d, i) {
                (_, 0) => d.to_string(),
                (1, _) => mono,
                _ => format!("{d}*{mono}"),
            });
        }
        terms.join("+")
    }
}

fn digitwise(p: u32, a: u32, b: u32, op: impl Fn(u32, u32) -> u32) -> u32 {
    let (mut a, mut b, mut out, mut scale) = (a, b, 0, 1);
    while a > 0 || b > 0 {
        out += op(a % p, b % p) * scale;
        a /= p;
        b /= p;
        scale *= p;
    }
    out
}

// Dense polynomial helpers over F_p used only while building tables.
fn fp_trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let mut r: Vec<u32> = prod.into_iter().map(|x| x as u32).collect();
    fp_rem(&mut r, m, p);
    r
}

fn fp_rem(r: &mut Vec<u32>, m: &[u32], p: u32) {
    fp_trim(r);
    let dm = m.len() - 1;
    let inv_lead = fp_inv(m[dm], p);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = (r[top] as u64 * inv_lead as u64 % p as u64) as u32;
        if c != 0 {
            for (j, &mj) in m.iter().enumerate() {
                let idx = top - dm + j;
                r[idx] = ((r[idx] as u64 + (p - c) as u64 * mj as u64) % p as u64) as u32;
            }
        }
        r.pop();
        fp_trim(r);
    }
}

fn fp_inv(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let (mut b, mut e) = (a as u64 % p as u64, p as u64 - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

fn fp_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    fp_trim(&mut x);
    fp_trim(&mut y);
    while !y.is_empty() {
        fp_rem(&mut x, &y, p);
        std::mem::swap(&mut x, &mut y);
    }
    x
}

fn fp_powmod(base: &[u32], e: u64, m: &[u32], p: u32) -> Vec<u32> {
    let mut result = vec![1];
    let mut b = base.to_vec();
    fp_rem(&mut b, m, p);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = fp_mulmod(&result, &b, m, p);
        }
        b = fp_mulmod(&b, &b, m, p);
        e >>= 1;
    }
    result
}

/// Ben-Or irreducibility test over `F_p`.
fn fp_irreducible(f: &[u32], p: u32) -> bool {
    let n = f.len() - 1;
    if n == 1 {
        return true;
    }
    let x = vec![0, 1];
    let mut xp = x.clone();
    for _ in 1..=n / 2 {
        xp = fp_powmod(&xp, p as u64, f, p);
        let mut diff = xp.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        fp_trim(&mut diff);
        if fp_gcd(f, &diff, p).len() != 1 {
            return false;
        }
    }
    true
}

/// The defining polynomial: fewest nonzero lower coefficients first, then
/// the smallest coefficient vector read as a base-`p` integer.
fn choose_modulus(p: u32, n: u32) -> Vec<u32> {
    let count = (p as u64).pow(n);
    for weight in 0..=n {
        for code in 0..count {
            let mut f: Vec<u32> = Vec::with_capacity(n as usize + 1);
            let mut r = code;
            for _ in 0..n {
                f.push((r % p as u64) as u32);
                r /= p as u64;
            }
            if f.iter().filter(|&&c| c != 0).count() as u32 != weight {
                continue;
            }
            f.push(1);
            if fp_irreducible(&f, p) {
                return f;
            }
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FieldTables {
    fn build(p: u32, n: u32) -> FieldTables {
        let order = p.pow(n);
        let modulus = choose_modulus(p, n);
        let decode = |v: u32| -> Vec<u32> {
            let mut c = Vec::new();
            let mut r = v;
            for _ in 0..n {
                c.push(r % p);
                r /= p;
            }
            fp_trim(&mut c);
            c
        };
        let encode = |c: &[u32]| -> u32 { c.iter().rev().fold(0, |acc, &d| acc * p + d) };
        let m = order - 1;
        let mut exp = vec![0u32; 2 * m as usize];
        let mut log = vec![0u32; order as usize];
        let mut found = false;
        for g in 1..order {
            let gc = decode(g);
            let mut cur = vec![1u32];
            let mut k = 0u32;
            loop {
                let v = encode(&cur);
                if k > 0 && v == 1 {
                    break;
                }
                exp[k as usize] = v;
                k += 1;
                if k > m {
                    break;
                }
                cur = fp_mulmod(&cur, &gc, &modulus, p);
            }
            if k == m {
                found = true;
                break;
            }
        }
        assert!(found || order == 2, "no multiplicative generator found");
        if order == 2 {
            exp[0] = 1;
        }
        for i in 0..m {
            let v = exp[i as usize];
            log[v as usize] = i;
            exp[(i + m) as usize] = v;
        }
        let neg = (0..order).map(|v| digitwise(p, v, 0, |x, _| (p - x) % p)).collect();
        let add = if order <= ADD_TABLE_LIMIT {
            let mut t = vec![0u32; (order * order) as usize];
            for a in 0..order {
                for b in 0..order {
                    t[(a * order + b) as usize] = digitwise(p, a, b, |x, y| (x + y) % p);
                }
            }
            t
        } else {
            Vec::new()
        };
        FieldTables { p, n, order, modulus, exp, log, add, neg }
    }
}

/// A single field element carrying its field.
#[derive(Clone, Copy)]
pub struct Gf {
    pub(crate) v: u32,
    pub(crate) f: Field,
}

impl Gf {
    pub fn value(self) -> u32 {
        self.v
    }
    pub fn field(self) -> Field {
        self.f
    }
    pub fn is_zero(self) -> bool {
        self.v == 0
    }
    pub fn is_one(self) -> bool {
        self.v == 1
    }
    pub fn inv(self) -> Option<Gf> {
        self.f.inv(self.v).map(|v| Gf { v, f: self.f })
    }
    pub fn pow(self, e: u64) -> Gf {
        Gf { v: self.f.pow(self.v, e), f: self.f }
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v && self.f == other.f
    }
}
impl Eq for Gf {}

impl Hash for Gf {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.v.hash(state);
    }
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.f.fmt_elem(self.v))
    }
}
impl fmt::Display for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.f.fmt_elem(self.v))
    }
}

impl Add for Gf {
    type Output = Gf;
    fn add(self, o: Gf) -> Gf {
        Gf { v: self.f.add(self.v, o.v), f: self.f }
    }
}
impl Sub for Gf {
    type Output = Gf;
    fn sub(self, o: Gf) -> Gf {
        Gf { v: self.f.sub(self.v, o.v), f: self.f }
    }
}
impl Mul for Gf {
    type Output = Gf;
    fn mul(self, o: Gf) -> Gf {
        Gf { v: self.f.mul(self.v, o.v), f: self.f }
    }
}
impl Div for Gf {
    type Output = Gf;
    fn div(self, o: Gf) -> Gf {
        self * o.inv().expect("division by zero in finite field")
    }
}
impl Neg for Gf {
    type Output = Gf;
    fn neg(self) -> Gf {
        Gf { v: self.f.neg(self.v), f: self.f }
    }
}
