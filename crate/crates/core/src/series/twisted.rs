//! Eisenstein series with character of prime level, normalized as
//! `sum_a w_a (𝔭^k/π̃^k) E_{(0,a)}`: a constant term plus
//! `sum_{c ≠ 0} sum_a w_a G_k(u(cz + a/𝔭))`.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::uexp::{u_of_az, ModularMeta, UExpansion};
use crate::algebra::{lucas_binomial, monics_up_to_degree, Poly, QElem, RatFunc};
use crate::carlitz::{eval_kpoly, goss_poly, TorsionContext};
use crate::characters::{weighted_power_sums, DirichletCharacter};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct TwistedEisenstein {
    k: usize,
    ctx: TorsionContext,
    /// `(a, w_a)` over the units `a` mod `𝔭`.
    weights: Vec<(Poly, RatFunc)>,
    meta: Option<ModularMeta>,
}

fn units(ctx: &TorsionContext) -> Vec<Poly> {
    ctx.residues().into_iter().filter(|a| !a.is_zero()).collect()
}

impl TwistedEisenstein {
    /// `(𝔭^k/π̃^k) E_χ^{(k)}`, with weights `χ^{-1}(a)`.
    pub fn new(chi: &DirichletCharacter, k: usize, ctx: &TorsionContext) -> Result<TwistedEisenstein> {
        let ce = ctx.constants();
        let q1 = ce.q() as u64 - 1;
        if ctx.primes().len() != 1 || ctx.primes()[0] != *ctx.modulus() {
            return Err(Error::Precondition(format!("level {} is not prime", ctx.modulus())));
        }
        if !chi.is_trivial() && chi.conductor() != *ctx.modulus() {
            return Err(Error::ConductorMismatch);
        }
        if (chi.sign() + k as u64) % q1 != 0 {
            return Err(Error::SignMismatch { sign: chi.sign() as u32, weight: k as u32 });
        }
        let inv = chi.inverse();
        let weights = units(ctx).into_iter().map(|a| {
            let w = inv.eval_k(&a);
            (a, w)
        });
        let meta = ModularMeta { weight: k as u64, typ: 0, level: ctx.modulus().clone(), nebentypus: chi.clone() };
        Ok(TwistedEisenstein { k, ctx: ctx.clone(), weights: weights.collect(), meta: Some(meta) })
    }

    /// `sum_a w_a (𝔭^k/π̃^k) E_{(0,a)}` for arbitrary weights on the units.
    pub fn from_weights(k: usize, ctx: &TorsionContext, weights: Vec<(Poly, RatFunc)>, meta: Option<ModularMeta>) -> TwistedEisenstein {
        TwistedEisenstein { k, ctx: ctx.clone(), weights, meta }
    }

    pub fn weight(&self) -> usize {
        self.k
    }
    pub fn context(&self) -> &TorsionContext {
        &self.ctx
    }
    pub fn weights(&self) -> &[(Poly, RatFunc)] {
        &self.weights
    }
    pub fn meta(&self) -> Option<&ModularMeta> {
        self.meta.as_ref()
    }
    pub fn weight_of(&self, a: &Poly) -> RatFunc {
        let a = a.rem(self.ctx.modulus());
        self.weights
            .iter()
            .find(|(b, _)| *b == a)
            .map(|(_, w)| w.clone())
            .unwrap_or_else(|| RatFunc::zero(self.ctx.constants().ext()))
    }

    /// `sum_a w_a G_k(1/exp_value(a))`.
    pub fn constant_term(&self) -> Result<QElem> {
        let g = goss_poly(self.ctx.constants(), self.k)?;
        let mut acc = QElem::zero(self.ctx.ring());
        for (a, w) in &self.weights {
            if w.is_zero() {
                continue;
            }
            let x = self.ctx.exp_value(a).inv()?;
            acc = acc.add(&eval_kpoly(&g, &x).scale(w));
        }
        Ok(acc)
    }

    /// Weights after folding `c = εc'` onto monic `c'`:
    /// `w'_a = sum_{ε ∈ F_q^×} ε^{-k} w_{εa}`.
    pub fn folded_weights(&self) -> Vec<(Poly, RatFunc)> {
        let ce = self.ctx.constants();
        let base = ce.base();
        let q1 = ce.q() as u64 - 1;
        units(&self.ctx)
            .into_iter()
            .map(|a| {
                let mut acc = RatFunc::zero(ce.ext());
                for e in base.elements().filter(|&e| e != 0) {
                    let eps = base.elem(e);
                    let w = self.weight_of(&a.scale(eps));
                    if w.is_zero() {
                        continue;
                    }
                    let factor = ce.embed(eps).pow((q1 - self.k as u64 % q1) % q1);
                    acc = &acc + &w.scale(factor);
                }
                (a, acc)
            })
            .collect()
    }

    /// `h(X) = sum_a w'_a G_k(X/(λ_a X + 1))` to precision `n`.
    fn folded_kernel(&self, n: usize) -> Result<UExpansion<QElem>> {
        let ce = self.ctx.constants();
        let p = ce.ext().characteristic();
        let g = goss_poly(ce, self.k)?;
        let sums = weighted_power_sums(&self.ctx, &self.folded_weights(), n);
        let ring = self.ctx.ring();
        let mut h = vec![QElem::zero(ring); n];
        for (j, gj) in g.iter().enumerate() {
            if gj.is_zero() {
                continue;
            }
            for (m, slot) in h.iter_mut().enumerate().skip(j) {
                let b = lucas_binomial(-(j as i64), (m - j) as u64, p);
                if b == 0 || sums[m - j].is_zero() {
                    continue;
                }
                let c = gj.scale(ce.ext().elem(b));
                *slot = slot.add(&sums[m - j].scale(&c));
            }
        }
        Ok(UExpansion::new(QElem::zero(ring), h))
    }

    /// The `u`-expansion to precision `n`: the constant term plus
    /// `sum_{c monic, |c| < n} h(u(cz))`.
    pub fn render(&self, n: usize) -> Result<UExpansion<QElem>> {
        let ce = self.ctx.constants();
        let mut acc = UExpansion::constant(self.constant_term()?, n);
        if n == 0 {
            return Ok(acc);
        }
        let h = self.folded_kernel(n)?;
        let mut d = 0;
        while (ce.q() as usize).pow(d as u32) < n {
            d += 1;
        }
        for c in monics_up_to_degree(ce.base(), d) {
            if c.abs() as usize >= n {
                continue;
            }
            acc = acc.add(&h.compose_k(&u_of_az(ce, &c, n)?)?);
        }
        Ok(acc.with_meta(self.meta.clone()))
    }
}

impl Serialize for TwistedEisenstein {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("TwistedEisenstein", 4)?;
        st.serialize_field("weight", &self.k)?;
        st.serialize_field("level", &self.ctx.modulus().to_string())?;
        let w: Vec<(String, String)> = self.weights.iter().map(|(a, w)| (a.to_string(), w.to_string())).collect();
        st.serialize_field("weights", &w)?;
        st.serialize_field("meta", &self.meta)?;
        st.end()
    }
}
