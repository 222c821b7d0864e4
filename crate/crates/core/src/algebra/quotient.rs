//! Multivariate quotient rings `K[x_1..x_r]/(Φ_1(x_1), .., Φ_r(x_r))` over
//! `K = F_{q^D}(θ)`, with one monic univariate relation per generator.
//!
//! Elements are dense arrays of residue coefficients in mixed radix
//! `(deg Φ_1, .., deg Φ_r)`, the first generator varying fastest. With no
//! generators the ring is `K` itself, which lets rational-function data be
//! handled by the same code as torsion data.

use std::fmt;
use std::sync::Arc;

use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use super::ext::ConstantExtension;
use super::linalg;
use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::traits::Coeff;
use crate::error::{Error, Result};

/// One generator: a label identifying it across rings, and its relation.
#[derive(Clone, Debug)]
pub struct Generator {
    pub label: Poly,
    pub degree: usize,
    /// `x^degree = sum rule[j].1 * x^{rule[j].0}`.
    pub rule: Vec<(usize, RatFunc)>,
}

impl Generator {
    /// From a monic relation given by its lower terms
    /// `x^degree + sum c_j x^j`.
    pub fn from_relation(label: Poly, degree: usize, lower: Vec<(usize, RatFunc)>) -> Generator {
        let rule = lower.into_iter().filter(|(_, c)| !c.is_zero()).map(|(j, c)| (j, -&c)).collect();
        Generator { label, degree, rule }
    }
}

pub struct QuotientRing {
    ce: ConstantExtension,
    gens: Vec<Generator>,
    dims: Vec<usize>,
    strides: Vec<usize>,
    size: usize,
    edims: Vec<usize>,
    estrides: Vec<usize>,
    esize: usize,
    ext_offset: Vec<usize>,
}

impl fmt::Debug for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.gens.iter().map(|g| g.label.to_string()).collect();
        write!(f, "QuotientRing[{:?}; {}]", self.ce, labels.join(", "))
    }
}

impl PartialEq for QuotientRing {
    fn eq(&self, other: &Self) -> bool {
        self.ce == other.ce
            && self.gens.len() == other.gens.len()
            && self.gens.iter().zip(&other.gens).all(|(a, b)| a.label == b.label)
    }
}

impl QuotientRing {
    pub fn new(ce: ConstantExtension, gens: Vec<Generator>) -> Arc<QuotientRing> {
        let dims: Vec<usize> = gens.iter().map(|g| g.degree).collect();
        let mut strides = Vec::with_capacity(dims.len());
        let mut size = 1;
        for &d in &dims {
            strides.push(size);
            size *= d;
        }
        let edims: Vec<usize> = dims.iter().map(|&d| (2 * d).saturating_sub(1).max(1)).collect();
        let mut estrides = Vec::with_capacity(dims.len());
        let mut esize = 1;
        for &d in &edims {
            estrides.push(esize);
            esize *= d;
        }
        let ext_offset = (0..size)
            .map(|idx| {
                (0..dims.len()).map(|i| (idx / strides[i]) % dims[i] * estrides[i]).sum()
            })
            .collect();
        Arc::new(QuotientRing { ce, gens, dims, strides, size, edims, estrides, esize, ext_offset })
    }

    /// The ring with no generators, i.e. `K` itself.
    pub fn scalars(ce: ConstantExtension) -> Arc<QuotientRing> {
        QuotientRing::new(ce, Vec::new())
    }

    pub fn constants(&self) -> ConstantExtension {
        self.ce
    }
    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }
    pub fn labels(&self) -> Vec<Poly> {
        self.gens.iter().map(|g| g.label.clone()).collect()
    }
    pub fn dimension(&self) -> usize {
        self.size
    }
    pub fn position(&self, label: &Poly) -> Option<usize> {
        self.gens.iter().position(|g| &g.label == label)
    }

    fn exponents(&self, idx: usize) -> Vec<usize> {
        (0..self.dims.len()).map(|i| (idx / self.strides[i]) % self.dims[i]).collect()
    }
    fn index(&self, exps: &[usize]) -> usize {
        exps.iter().zip(&self.strides).map(|(e, s)| e * s).sum()
    }
}

/// Element of a [`QuotientRing`].
#[derive(Clone)]
pub struct QElem {
    ring: Arc<QuotientRing>,
    c: Vec<RatFunc>,
}

impl QElem {
    pub fn zero(ring: &Arc<QuotientRing>) -> QElem {
        let z = RatFunc::zero(ring.ce.ext());
        QElem { ring: ring.clone(), c: vec![z; ring.size] }
    }
    pub fn one(ring: &Arc<QuotientRing>) -> QElem {
        QElem::from_k(ring, RatFunc::one(ring.ce.ext()))
    }
    pub fn from_k(ring: &Arc<QuotientRing>, r: RatFunc) -> QElem {
        let mut x = QElem::zero(ring);
        x.c[0] = r;
        x
    }
    /// The `i`-th generator.
    pub fn generator(ring: &Arc<QuotientRing>, i: usize) -> QElem {
        let mut x = QElem::zero(ring);
        let mut exps = vec![0; ring.dims.len()];
        if ring.dims[i] == 1 {
            // degree-one relation x = rule
            let (_, r) = ring.gens[i].rule.first().cloned().unwrap_or((0, RatFunc::zero(ring.ce.ext())));
            x.c[0] = r;
            return x;
        }
        exps[i] = 1;
        x.c[ring.index(&exps)] = RatFunc::one(ring.ce.ext());
        x
    }
    pub fn from_coeffs(ring: &Arc<QuotientRing>, c: Vec<RatFunc>) -> Result<QElem> {
        if c.len() != ring.size {
            return Err(Error::RingMismatch(format!("{} coefficients for dimension {}", c.len(), ring.size)));
        }
        Ok(QElem { ring: ring.clone(), c })
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }
    pub fn coeffs(&self) -> &[RatFunc] {
        &self.c
    }
    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
    pub fn is_one(&self) -> bool {
        self.as_scalar().map_or(false, |r| r.is_one())
    }
    /// The `K`-scalar this equals, if no generator occurs.
    pub fn as_scalar(&self) -> Option<&RatFunc> {
        self.c[1..].iter().all(|x| x.is_zero()).then_some(&self.c[0])
    }

    fn same_ring(&self, o: &QElem) {
        debug_assert!(
            Arc::ptr_eq(&self.ring, &o.ring) || *self.ring == *o.ring,
            "ring mismatch: {:?} vs {:?}",
            self.ring,
            o.ring
        );
    }

    pub fn add(&self, o: &QElem) -> QElem {
        self.same_ring(o);
        QElem { ring: self.ring.clone(), c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }
    pub fn sub(&self, o: &QElem) -> QElem {
        self.same_ring(o);
        QElem { ring: self.ring.clone(), c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect() }
    }
    pub fn neg(&self) -> QElem {
        QElem { ring: self.ring.clone(), c: self.c.iter().map(|a| -a).collect() }
    }
    pub fn scale(&self, r: &RatFunc) -> QElem {
        if r.is_zero() {
            return QElem::zero(&self.ring);
        }
        QElem { ring: self.ring.clone(), c: self.c.iter().map(|a| if a.is_zero() { a.clone() } else { a * r }).collect() }
    }

    pub fn mul(&self, o: &QElem) -> QElem {
        self.same_ring(o);
        let ring = &self.ring;
        if ring.size == 1 {
            return QElem { ring: ring.clone(), c: vec![&self.c[0] * &o.c[0]] };
        }
        let zero = RatFunc::zero(ring.ce.ext());
        let nz = |x: &QElem| -> Vec<usize> { (0..ring.size).filter(|&i| !x.c[i].is_zero()).collect() };
        let (na, nb) = (nz(self), nz(o));
        if na.is_empty() || nb.is_empty() {
            return QElem::zero(ring);
        }
        if na == [0] {
            return o.scale(&self.c[0]);
        }
        if nb == [0] {
            return self.scale(&o.c[0]);
        }
        let mut buf = vec![zero.clone(); ring.esize];
        for &i in &na {
            for &j in &nb {
                let k = ring.ext_offset[i] + ring.ext_offset[j];
                let p = &self.c[i] * &o.c[j];
                buf[k] = &buf[k] + &p;
            }
        }
        for (axis, g) in ring.gens.iter().enumerate() {
            let (d, es, ed) = (g.degree, ring.estrides[axis], ring.edims[axis]);
            for e in (d..ed).rev() {
                for pos in 0..ring.esize {
                    if (pos / es) % ed != e || buf[pos].is_zero() {
                        continue;
                    }
                    let c = std::mem::replace(&mut buf[pos], zero.clone());
                    let base = pos - e * es;
                    for (j, r) in &g.rule {
                        let t = base + (e - d + j) * es;
                        buf[t] = &buf[t] + &(&c * r);
                    }
                }
            }
        }
        let c = (0..ring.size).map(|i| std::mem::replace(&mut buf[ring.ext_offset[i]], zero.clone())).collect();
        QElem { ring: ring.clone(), c }
    }

    pub fn pow(&self, e: u64) -> QElem {
        Coeff::pow(self, e)
    }

    /// Multiplicative inverse, by solving the linear system of
    /// multiplication by `self` over `K`.
    pub fn inv(&self) -> Result<QElem> {
        let ring = &self.ring;
        if self.is_zero() {
            return Err(Error::NotInvertible);
        }
        if ring.size == 1 {
            return Ok(QElem::from_k(ring, self.c[0].inv()?));
        }
        let n = ring.size;
        let cols: Vec<QElem> = (0..n)
            .map(|j| {
                let mut e = QElem::zero(ring);
                e.c[j] = RatFunc::one(ring.ce.ext());
                self.mul(&e)
            })
            .collect();
        let a: Vec<Vec<RatFunc>> = (0..n).map(|i| cols.iter().map(|col| col.c[i].clone()).collect()).collect();
        let mut b = vec![RatFunc::zero(ring.ce.ext()); n];
        b[0] = RatFunc::one(ring.ce.ext());
        match linalg::solve(&a, &b)? {
            Some(y) => Ok(QElem { ring: ring.clone(), c: y }),
            None => Err(Error::NotInvertible),
        }
    }

    /// The same element viewed in a ring with more generators. Every
    /// generator of the source ring must occur in the target.
    pub fn embed_into(&self, target: &Arc<QuotientRing>) -> Result<QElem> {
        if Arc::ptr_eq(&self.ring, target) {
            return Ok(self.clone());
        }
        if target.ce != self.ring.ce {
            return Err(Error::RingMismatch("different constant fields".into()));
        }
        let map: Vec<usize> = self
            .ring
            .gens
            .iter()
            .map(|g| target.position(&g.label).ok_or_else(|| Error::RingMismatch(format!("target lacks generator for {}", g.label))))
            .collect::<Result<_>>()?;
        let mut out = QElem::zero(target);
        for (idx, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let exps = self.ring.exponents(idx);
            let mut texps = vec![0; target.dims.len()];
            for (i, &t) in map.iter().enumerate() {
                texps[t] = exps[i];
            }
            out.c[target.index(&texps)] = c.clone();
        }
        Ok(out)
    }

    /// The same element in a ring with fewer generators; fails if a dropped
    /// generator actually occurs.
    pub fn restrict_to(&self, target: &Arc<QuotientRing>) -> Result<QElem> {
        if Arc::ptr_eq(&self.ring, target) {
            return Ok(self.clone());
        }
        let map: Vec<Option<usize>> = self.ring.gens.iter().map(|g| target.position(&g.label)).collect();
        let mut out = QElem::zero(target);
        for (idx, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let exps = self.ring.exponents(idx);
            let mut texps = vec![0; target.dims.len()];
            for (i, m) in map.iter().enumerate() {
                match m {
                    Some(t) => texps[*t] = exps[i],
                    None if exps[i] == 0 => {}
                    None => {
                        return Err(Error::RingMismatch(format!(
                            "element depends on the generator for {}",
                            self.ring.gens[i].label
                        )))
                    }
                }
            }
            out.c[target.index(&texps)] = c.clone();
        }
        Ok(out)
    }

    /// Ring endomorphism sending generator `i` to `images[i]`.
    pub fn substitute(&self, images: &[QElem]) -> QElem {
        let ring = &self.ring;
        let powers: Vec<Vec<QElem>> = ring
            .gens
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let mut v = vec![QElem::one(ring)];
                for _ in 1..g.degree {
                    let next = v.last().unwrap().mul(&images[i]);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = QElem::zero(ring);
        for (idx, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let exps = ring.exponents(idx);
            let mut term = QElem::from_k(ring, c.clone());
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&powers[i][e]);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    pub fn to_text(&self, var: &str) -> String {
        let ring = &self.ring;
        let mut parts = Vec::new();
        for (idx, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let exps = ring.exponents(idx);
            let mono: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let name = if ring.gens.len() == 1 { "l".to_string() } else { format!("l{}", i + 1) };
                    if e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            let ct = c.to_text(var);
            parts.push(if mono.is_empty() {
                ct
            } else if c.is_one() {
                mono.join("*")
            } else if (ct.contains('+') || ct.contains('/')) && !ct.starts_with('(') {
                format!("({ct})*{}", mono.join("*"))
            } else {
                format!("{ct}*{}", mono.join("*"))
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl PartialEq for QElem {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && (Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring)
    }
}

impl fmt::Debug for QElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("t"))
    }
}
impl fmt::Display for QElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("t"))
    }
}

/// Sparse list of `{exp, coeff}` terms.
impl Serialize for QElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Term<'a>(Vec<usize>, &'a RatFunc);
        impl Serialize for Term<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut st = s.serialize_struct("Term", 2)?;
                st.serialize_field("exp", &self.0)?;
                st.serialize_field("coeff", self.1)?;
                st.end()
            }
        }
        let nz: Vec<usize> = (0..self.c.len()).filter(|&i| !self.c[i].is_zero()).collect();
        let mut seq = s.serialize_seq(Some(nz.len()))?;
        for i in nz {
            seq.serialize_element(&Term(self.ring.exponents(i), &self.c[i]))?;
        }
        seq.end()
    }
}

impl Coeff for QElem {
    fn zero_like(&self) -> Self {
        QElem::zero(&self.ring)
    }
    fn one_like(&self) -> Self {
        QElem::one(&self.ring)
    }
    fn is_zero(&self) -> bool {
        QElem::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn scaled(&self, r: &RatFunc) -> Self {
        self.scale(r)
    }
    fn scalar_like(&self, r: &RatFunc) -> Self {
        QElem::from_k(&self.ring, r.clone())
    }
    fn try_inv(&self) -> Result<Self> {
        self.inv()
    }
    fn to_text(&self, var: &str) -> String {
        QElem::to_text(self, var)
    }
    fn ring_descriptor(&self) -> String {
        let labels: Vec<String> = self.ring.gens.iter().map(|g| format!("l[{}]", g.label)).collect();
        let k = format!("F_{}(t)", self.ring.ce.ext().order());
        if labels.is_empty() {
            k
        } else {
            format!("{k}[{}]", labels.join(", "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// `λ^2 = -θ` over `F_3(θ)`: the `θ`-torsion ring for `q = 3`.
    fn ring_theta() -> Arc<QuotientRing> {
        let ce = ConstantExtension::new(3, 1).unwrap();
        let f = ce.ext();
        let theta = RatFunc::from_poly(Poly::theta(f));
        QuotientRing::new(ce, vec![Generator::from_relation(Poly::theta(ce.base()), 2, vec![(0, theta)])])
    }

    fn two_gen() -> Arc<QuotientRing> {
        let ce = ConstantExtension::new(3, 1).unwrap();
        let f = ce.ext();
        let theta = RatFunc::from_poly(Poly::theta(f));
        let tp1 = RatFunc::from_poly(Poly::parse(f, "t+1", "t").unwrap());
        QuotientRing::new(
            ce,
            vec![
                Generator::from_relation(Poly::theta(ce.base()), 2, vec![(0, theta)]),
                Generator::from_relation(Poly::parse(ce.base(), "t+1", "t").unwrap(), 2, vec![(0, tp1)]),
            ],
        )
    }

    #[test]
    fn inverse_of_torsion_generator() {
        let r = ring_theta();
        let l = QElem::generator(&r, 0);
        let f = r.constants().ext();
        let minus_inv_theta = RatFunc::new(Poly::from_ints(f, &[-1]), Poly::theta(f)).unwrap();
        assert_eq!(l.inv().unwrap(), l.scale(&minus_inv_theta));
        assert_eq!(QElem::one(&r).inv().unwrap(), QElem::one(&r));
        assert_eq!(QElem::zero(&r).inv().unwrap_err(), Error::NotInvertible);
        assert_eq!(l.mul(&l), QElem::from_k(&r, -&RatFunc::from_poly(Poly::theta(f))));
    }

    #[test]
    fn embed_and_restrict() {
        let r1 = ring_theta();
        let r2 = two_gen();
        let l = QElem::generator(&r1, 0);
        let e = l.embed_into(&r2).unwrap();
        assert_eq!(e, QElem::generator(&r2, 0));
        assert_eq!(e.restrict_to(&r1).unwrap(), l);
        let m = QElem::generator(&r2, 1);
        assert!(m.restrict_to(&r1).is_err());
        // (l1 l2)^2 = θ(θ+1)
        let f = r2.constants().ext();
        let prod = e.mul(&m);
        let sq = prod.mul(&prod);
        assert_eq!(sq.as_scalar().unwrap(), &RatFunc::from_poly(Poly::parse(f, "t^2+t", "t").unwrap()));
    }

    fn arb_elem(ring: Arc<QuotientRing>) -> impl Strategy<Value = QElem> {
        let n = ring.dimension();
        let f = ring.constants().ext();
        proptest::collection::vec((proptest::collection::vec(0i64..3, 0..4), 0i64..3), n).prop_map(move |cs| {
            let c = cs
                .into_iter()
                .map(|(num, d)| {
                    let den = Poly::from_ints(f, &[d, 1]);
                    RatFunc::new(Poly::from_ints(f, &num), den).unwrap()
                })
                .collect();
            QElem::from_coeffs(&ring, c).unwrap()
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_elem(two_gen()), b in arb_elem(two_gen()), c in arb_elem(two_gen())) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            let one = QElem::one(a.ring());
            prop_assert_eq!(a.mul(&one), a.clone());
        }

        #[test]
        fn inverse_when_defined(a in arb_elem(two_gen())) {
            if let Ok(b) = a.inv() {
                prop_assert_eq!(a.mul(&b), QElem::one(a.ring()));
            }
        }

        #[test]
        fn representatives_are_canonical(a in arb_elem(ring_theta()), b in arb_elem(ring_theta())) {
            // reducing an already reduced product again changes nothing
            let p = a.mul(&b);
            prop_assert_eq!(p.mul(&QElem::one(p.ring())), p);
        }
    }
}
