//! The constant field `F_{q^D}` over which all `θ`-rational functions live,
//! together with the embedding of `F_q` and root selection for primes of `A`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use super::field::{prime_power, Field, Gf};
use super::poly::Poly;
use crate::error::{Error, Result};

struct ExtData {
    base: Field,
    ext: Field,
    degree: u32,
    embed: Vec<u32>,
}

/// Handle to an interned pair `F_q ⊂ F_{q^D}`.
#[derive(Clone, Copy)]
pub struct ConstantExtension(&'static ExtData);

impl PartialEq for ConstantExtension {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.0, other.0)
    }
}
impl Eq for ConstantExtension {}

impl fmt::Debug for ConstantExtension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} over F_{}", self.q(), self.0.degree, self.q())
    }
}

fn registry() -> &'static Mutex<HashMap<(u32, u32), &'static ExtData>> {
    static REG: OnceLock<Mutex<HashMap<(u32, u32), &'static ExtData>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

fn lcm(a: u32, b: u32) -> u32 {
    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

impl ConstantExtension {
    /// `F_{q^D}` over `F_q`.
    pub fn new(q: u32, degree: u32) -> Result<ConstantExtension> {
        let (p, e) = prime_power(q).ok_or(Error::InvalidField { p: q, n: 1 })?;
        if degree == 0 {
            return Err(Error::InvalidField { p, n: 0 });
        }
        let mut reg = registry().lock().expect("extension registry poisoned");
        if let Some(d) = reg.get(&(q, degree)) {
            return Ok(ConstantExtension(d));
        }
        let base = Field::new(p, e)?;
        let ext = Field::new(p, e * degree)?;
        let embed = embedding(base, ext);
        let data: &'static ExtData = Box::leak(Box::new(ExtData { base, ext, degree, embed }));
        reg.insert((q, degree), data);
        Ok(ConstantExtension(data))
    }

    /// The smallest extension containing a root of every given prime.
    pub fn for_primes<'a>(q: u32, primes: impl IntoIterator<Item = &'a Poly>) -> Result<ConstantExtension> {
        let d = primes.into_iter().map(|p| p.degree().unwrap_or(1).max(1) as u32).fold(1, lcm);
        ConstantExtension::new(q, d)
    }

    pub fn q(self) -> u32 {
        self.0.base.order()
    }
    pub fn base(self) -> Field {
        self.0.base
    }
    pub fn ext(self) -> Field {
        self.0.ext
    }
    pub fn degree(self) -> u32 {
        self.0.degree
    }

    /// Image of a base-field element.
    pub fn embed(self, v: Gf) -> Gf {
        debug_assert_eq!(v.field(), self.0.base);
        self.0.ext.elem(self.0.embed[v.value() as usize])
    }

    /// A polynomial over `F_q` viewed over `F_{q^D}`.
    pub fn lift(self, a: &Poly) -> Poly {
        if self.0.base == self.0.ext {
            return a.clone();
        }
        a.map_coeffs(self.0.ext, |x| self.0.embed[x as usize])
    }

    /// Whether `x` lies in the image of `F_q`, and its preimage.
    pub fn restrict(self, x: Gf) -> Option<Gf> {
        self.0.embed.iter().position(|&v| v == x.value()).map(|i| self.0.base.elem(i as u32))
    }

    /// The root of `a` with the smallest encoding; errors if `a` has no
    /// root in `F_{q^D}`.
    pub fn root_of(self, a: &Poly) -> Result<Gf> {
        let la = self.lift(a);
        self.0
            .ext
            .elements()
            .map(|v| self.0.ext.elem(v))
            .find(|&x| la.eval(x).is_zero())
            .ok_or_else(|| Error::Precondition(format!("{a} has no root in the constant field")))
    }
}

/// Sends the generator of `base` to the smallest root of its defining
/// polynomial inside `ext`.
fn embedding(base: Field, ext: Field) -> Vec<u32> {
    if base == ext || base.degree() == 1 {
        return (0..base.order()).collect();
    }
    let p = base.characteristic();
    let m: Vec<u32> = base.modulus().to_vec();
    let eval = |x: u32| {
        m.iter().rev().fold(0u32, |acc, &c| ext.add(ext.mul(acc, x), c))
    };
    let r = ext.elements().find(|&x| eval(x) == 0).expect("subfield generator has a root");
    (0..base.order())
        .map(|v| {
            let coords = base.coords(v);
            coords
                .iter()
                .rev()
                .fold(0u32, |acc, &c| ext.add(ext.mul(acc, r), c % p))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedding_is_a_ring_map() {
        let ce = ConstantExtension::new(9, 2).unwrap();
        let b = ce.base();
        for x in b.elements() {
            for y in b.elements() {
                let (x, y) = (b.elem(x), b.elem(y));
                assert_eq!(ce.embed(x * y), ce.embed(x) * ce.embed(y));
                assert_eq!(ce.embed(x + y), ce.embed(x) + ce.embed(y));
            }
            let x = b.elem(x);
            assert_eq!(ce.embed(x).pow(3), ce.embed(x.pow(3)));
        }
    }

    #[test]
    fn roots_of_primes() {
        let ce = ConstantExtension::new(3, 2).unwrap();
        let p = Poly::parse(ce.base(), "t^2+1", "t").unwrap();
        let z = ce.root_of(&p).unwrap();
        assert!(ce.lift(&p).eval(z).is_zero());
        let c3 = ConstantExtension::new(3, 1).unwrap();
        assert!(c3.root_of(&p).is_err());
        assert_eq!(c3.root_of(&Poly::theta(c3.base())).unwrap().value(), 0);
    }
}
