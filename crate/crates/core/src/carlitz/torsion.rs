//! Carlitz torsion: the values `exp_C(π̃β/𝔫) = C_β(λ_𝔫)` as exact elements of
//! a quotient ring with one generator per prime factor of `𝔫`.

use std::sync::Arc;

use serde::Serialize;

use super::coeffs::{carlitz_action, carlitz_coeffs};
use crate::algebra::{polys_below_degree, ConstantExtension, Generator, Poly, QElem, QuotientRing, RatFunc};
use crate::error::{Error, Result};

/// `Φ_𝔭(x) = C_𝔭(x)/x` as a ring generator labelled by `𝔭`.
pub fn torsion_generator(ce: ConstantExtension, prime: &Poly) -> Generator {
    let q = ce.q() as usize;
    let coeffs = carlitz_coeffs(prime);
    let d = coeffs.len() - 1;
    let lower = coeffs[..d]
        .iter()
        .enumerate()
        .map(|(i, c)| (q.pow(i as u32) - 1, RatFunc::from_poly(ce.lift(c))))
        .collect();
    Generator::from_relation(prime.clone(), q.pow(d as u32) - 1, lower)
}

/// The ring `K[λ_𝔭 : 𝔭 ∈ primes]` with the Carlitz relations.
pub fn torsion_ring(ce: ConstantExtension, primes: &[Poly]) -> Arc<QuotientRing> {
    QuotientRing::new(ce, primes.iter().map(|p| torsion_generator(ce, p)).collect())
}

/// Monic square-free modulus with its torsion values.
#[derive(Clone, Debug)]
pub struct TorsionContext {
    ce: ConstantExtension,
    modulus: Poly,
    primes: Vec<Poly>,
    ring: Arc<QuotientRing>,
    lambda: QElem,
    /// `C_{θ^j}(λ_𝔫)` for `j < deg 𝔫`.
    mu: Vec<QElem>,
}

#[derive(Serialize)]
struct RelationText {
    prime: String,
    relation: String,
}

impl TorsionContext {
    /// Context in a fresh ring with exactly the primes of `modulus`.
    pub fn new(ce: ConstantExtension, modulus: &Poly) -> Result<TorsionContext> {
        let primes = modulus.factor_squarefree()?;
        let ring = torsion_ring(ce, &primes);
        TorsionContext::build(ce, modulus, primes, ring)
    }

    /// Context inside an existing ring that already has a generator for
    /// every prime factor of `modulus`.
    pub fn in_ring(ring: &Arc<QuotientRing>, modulus: &Poly) -> Result<TorsionContext> {
        let primes = modulus.factor_squarefree()?;
        for p in &primes {
            if ring.position(p).is_none() {
                return Err(Error::RingMismatch(format!("ring lacks the generator for {p}")));
            }
        }
        TorsionContext::build(ring.constants(), modulus, primes, ring.clone())
    }

    fn build(ce: ConstantExtension, modulus: &Poly, primes: Vec<Poly>, ring: Arc<QuotientRing>) -> Result<TorsionContext> {
        if modulus.field() != ce.base() {
            return Err(Error::BadModulus(format!("{modulus} is not over the base field")));
        }
        let mut lambda = QElem::zero(&ring);
        for p in &primes {
            let cofactor = modulus.div_exact(p).unwrap();
            let c = cofactor.inv_mod(p).ok_or_else(|| Error::NotSquareFree(modulus.to_string()))?;
            let li = QElem::generator(&ring, ring.position(p).unwrap());
            lambda = lambda.add(&carlitz_action(ce, &c, &li));
        }
        let theta = RatFunc::from_poly(Poly::theta(ce.ext()));
        let q = ce.q() as u64;
        let d = modulus.degree().unwrap();
        let mut mu = vec![lambda.clone()];
        for _ in 1..d {
            let last = mu.last().unwrap();
            let next = last.scale(&theta).add(&last.pow(q));
            mu.push(next);
        }
        Ok(TorsionContext { ce, modulus: modulus.clone(), primes, ring, lambda, mu })
    }

    pub fn constants(&self) -> ConstantExtension {
        self.ce
    }
    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }
    pub fn primes(&self) -> &[Poly] {
        &self.primes
    }
    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }
    /// `λ_𝔫 = exp_C(π̃/𝔫)`.
    pub fn lambda(&self) -> &QElem {
        &self.lambda
    }
    /// The generator `λ_𝔭` for a prime factor `𝔭`.
    pub fn prime_generator(&self, prime: &Poly) -> Option<QElem> {
        self.ring.position(prime).map(|i| QElem::generator(&self.ring, i))
    }

    /// All residues `β` with `deg β < deg 𝔫`, in enumeration order.
    pub fn residues(&self) -> Vec<Poly> {
        polys_below_degree(self.ce.base(), self.modulus.degree().unwrap())
    }

    /// `exp_C(π̃β/𝔫) = C_β(λ_𝔫)`.
    pub fn exp_value(&self, beta: &Poly) -> QElem {
        let b = beta.rem(&self.modulus);
        let mut acc = QElem::zero(&self.ring);
        for (j, m) in self.mu.iter().enumerate() {
            let c = b.coeff(j);
            if !c.is_zero() {
                acc = acc.add(&m.scale(&RatFunc::constant(self.ce.embed(c))));
            }
        }
        acc
    }

    /// The Galois automorphism `λ_𝔭 ↦ C_b(λ_𝔭)` on the primes of this
    /// context; other generators of the ring are fixed.
    pub fn galois(&self, x: &QElem, b: &Poly) -> QElem {
        let ring = x.ring();
        let images: Vec<QElem> = (0..ring.generators().len())
            .map(|i| {
                let g = QElem::generator(ring, i);
                if self.primes.contains(&ring.generators()[i].label) {
                    carlitz_action(self.ce, b, &g)
                } else {
                    g
                }
            })
            .collect();
        x.substitute(&images)
    }

    /// Relations in text form, for reports.
    pub fn relations_json(&self, var: &str) -> serde_json::Value {
        let rels: Vec<RelationText> = self
            .primes
            .iter()
            .map(|p| {
                let c = carlitz_coeffs(p);
                let q = self.ce.q() as usize;
                let mut terms = vec![format!("x^{}", q.pow((c.len() - 1) as u32) - 1)];
                for (i, ci) in c[..c.len() - 1].iter().enumerate().rev() {
                    let e = q.pow(i as u32) - 1;
                    let mono = match e {
                        0 => String::new(),
                        1 => "*x".into(),
                        _ => format!("*x^{e}"),
                    };
                    terms.push(format!("({}){mono}", ci.to_text(var)));
                }
                RelationText { prime: p.to_text(var), relation: terms.join("+") }
            })
            .collect();
        serde_json::to_value(rels).expect("relations serialize")
    }
}
