//! A-expansions `sum_{a monic} c_a u(az)^i` and `sum_{a monic} c_a G_k(u(az))`.

use std::collections::BTreeMap;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use super::uexp::{u_of_az, ModularMeta, UExpansion};
use crate::algebra::{monics_up_to_degree, ConstantExtension, Poly, RatFunc};
use crate::carlitz::{goss_poly, KPoly};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AKind {
    /// `u(az)^i`.
    Power(usize),
    /// `G_k(u(az))`.
    Goss(usize),
}

#[derive(Clone, Debug)]
pub struct AExpansion {
    ce: ConstantExtension,
    kind: AKind,
    meta: ModularMeta,
    coeffs: BTreeMap<Poly, RatFunc>,
    d_bound: usize,
}

impl AExpansion {
    /// Coefficients `c(a)` for every monic `a` of degree `<= d_bound`.
    pub fn from_fn(
        ce: ConstantExtension,
        kind: AKind,
        meta: ModularMeta,
        d_bound: usize,
        c: impl Fn(&Poly) -> RatFunc,
    ) -> AExpansion {
        let coeffs = monics_up_to_degree(ce.base(), d_bound).into_iter().map(|a| {
            let v = c(&a);
            (a, v)
        });
        AExpansion { ce, kind, meta, coeffs: coeffs.collect(), d_bound }
    }

    pub fn from_map(
        ce: ConstantExtension,
        kind: AKind,
        meta: ModularMeta,
        d_bound: usize,
        coeffs: BTreeMap<Poly, RatFunc>,
    ) -> AExpansion {
        AExpansion { ce, kind, meta, coeffs, d_bound }
    }

    pub fn constants(&self) -> ConstantExtension {
        self.ce
    }
    pub fn kind(&self) -> AKind {
        self.kind
    }
    pub fn meta(&self) -> &ModularMeta {
        &self.meta
    }
    pub fn d_bound(&self) -> usize {
        self.d_bound
    }
    pub fn coeffs(&self) -> &BTreeMap<Poly, RatFunc> {
        &self.coeffs
    }
    /// `c_a`, zero when `a` is outside the stored map.
    pub fn coeff(&self, a: &Poly) -> RatFunc {
        self.coeffs.get(a).cloned().unwrap_or_else(|| RatFunc::zero(self.ce.ext()))
    }

    /// `G_k` for Goss type, `X^i` for power type.
    pub fn kernel(&self) -> Result<KPoly> {
        match self.kind {
            AKind::Power(i) => {
                let mut p = vec![RatFunc::zero(self.ce.ext()); i + 1];
                p[i] = RatFunc::one(self.ce.ext());
                Ok(p)
            }
            AKind::Goss(k) => goss_poly(self.ce, k),
        }
    }

    /// Lowest `X`-exponent of the kernel: the term at `a` starts at
    /// `u^{j_min |a|}`.
    pub fn j_min(&self) -> Result<usize> {
        let ker = self.kernel()?;
        ker.iter().position(|c| !c.is_zero()).ok_or_else(|| Error::Internal("zero kernel".into()))
    }

    /// The largest precision the stored coefficients determine.
    pub fn max_precision(&self) -> Result<usize> {
        Ok(self.j_min()? * (self.ce.q() as usize).pow(self.d_bound as u32 + 1))
    }

    /// Same expansion with each coefficient transformed.
    pub fn map_coeffs(&self, f: impl Fn(&Poly, &RatFunc) -> RatFunc) -> AExpansion {
        let coeffs = self.coeffs.iter().map(|(a, c)| (a.clone(), f(a, c))).collect();
        AExpansion { coeffs, ..self.clone() }
    }

    pub fn with_meta(mut self, meta: ModularMeta) -> AExpansion {
        self.meta = meta;
        self
    }

    /// `sum_a c_a P(u(az))` to precision `n`.
    pub fn render(&self, n: usize) -> Result<UExpansion<RatFunc>> {
        let have = self.max_precision()?;
        if have < n {
            return Err(Error::InsufficientDegreeBound { bound: self.d_bound as u32, precision: n });
        }
        let zero = RatFunc::zero(self.ce.ext());
        let ker = self.kernel()?;
        let jmin = self.j_min()?;
        let mut kser = vec![zero.clone(); n];
        for (j, c) in ker.iter().enumerate() {
            if j < n {
                kser[j] = c.clone();
            }
        }
        let kser = UExpansion::new(zero.clone(), kser);
        let mut acc = UExpansion::zeros(zero, n);
        for (a, c) in &self.coeffs {
            if c.is_zero() || (a.abs() as usize) * jmin >= n {
                continue;
            }
            let term = kser.compose_k(&u_of_az(self.ce, a, n)?)?;
            acc = acc.add(&term.scale_k(c));
        }
        Ok(acc.with_meta(Some(self.meta.clone())))
    }
}

struct CoeffMap<'a>(&'a BTreeMap<Poly, RatFunc>);

impl Serialize for CoeffMap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (a, c) in self.0 {
            m.serialize_entry(&a.to_string(), &c.to_string())?;
        }
        m.end()
    }
}

impl Serialize for AExpansion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AExpansion", 4)?;
        let kind = match self.kind {
            AKind::Power(i) => format!("u(az)^{i}"),
            AKind::Goss(k) => format!("G_{k}(u(az))"),
        };
        st.serialize_field("kind", &kind)?;
        st.serialize_field("meta", &self.meta)?;
        st.serialize_field("d_bound", &self.d_bound)?;
        st.serialize_field("coeffs", &CoeffMap(&self.coeffs))?;
        st.end()
    }
}
