//! Truncated expansions `sum_{l < N} c_l u^l` and the substitution calculus:
//! `u(az)`, translation by torsion points, and passage to the parameter
//! `v = u(z/𝔮)` and back.

use std::fmt;
use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::algebra::{lucas_binomial, Coeff, ConstantExtension, Gf, Poly, QElem, QuotientRing, RatFunc};
use crate::carlitz::{carlitz_coeffs, TorsionContext};
use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};

/// Which uniformizer a series is written in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Param {
    /// `u = 1/exp_C(π̃z)`.
    U,
    /// `v = u(z/𝔮)`.
    Sub(Poly),
}

/// Weight, type, level and nebentypus of a form in `M_k^m(𝔪, ψ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularMeta {
    pub weight: u64,
    /// The type as an integer representative; only its class mod `q - 1`
    /// is intrinsic, but the slash scalars use the representative.
    pub typ: u64,
    pub level: Poly,
    pub nebentypus: DirichletCharacter,
}

impl ModularMeta {
    pub fn level_one(ce: ConstantExtension, weight: u64, typ: u64) -> ModularMeta {
        ModularMeta {
            weight,
            typ: typ % (ce.q() as u64 - 1),
            level: Poly::one(ce.base()),
            nebentypus: DirichletCharacter::trivial(ce),
        }
    }
}

impl Serialize for ModularMeta {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ModularMeta", 4)?;
        st.serialize_field("weight", &self.weight)?;
        st.serialize_field("type", &self.typ)?;
        st.serialize_field("level", &self.level.to_string())?;
        st.serialize_field("nebentypus", &self.nebentypus)?;
        st.end()
    }
}

#[derive(Clone, Debug)]
pub struct UExpansion<R: Coeff> {
    zero: R,
    coeffs: Vec<R>,
    param: Param,
    meta: Option<ModularMeta>,
}

impl<R: Coeff> PartialEq for UExpansion<R> {
    /// Coefficients and parameter; metadata is bookkeeping and not compared.
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.param == other.param
    }
}

impl<R: Coeff> UExpansion<R> {
    pub fn new(zero: R, coeffs: Vec<R>) -> UExpansion<R> {
        UExpansion { zero, coeffs, param: Param::U, meta: None }
    }
    pub fn zeros(zero: R, n: usize) -> UExpansion<R> {
        let coeffs = vec![zero.clone(); n];
        UExpansion::new(zero, coeffs)
    }
    /// `u^i` to precision `n`.
    pub fn monomial(one: R, i: usize, n: usize) -> UExpansion<R> {
        let mut s = UExpansion::zeros(one.zero_like(), n);
        if i < n {
            s.coeffs[i] = one;
        }
        s
    }
    pub fn constant(c: R, n: usize) -> UExpansion<R> {
        let mut s = UExpansion::zeros(c.zero_like(), n);
        if n > 0 {
            s.coeffs[0] = c;
        }
        s
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }
    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }
    pub fn coeff(&self, i: usize) -> &R {
        &self.coeffs[i]
    }
    pub fn zero_elem(&self) -> &R {
        &self.zero
    }
    pub fn param(&self) -> &Param {
        &self.param
    }
    pub fn meta(&self) -> Option<&ModularMeta> {
        self.meta.as_ref()
    }
    pub fn with_meta(mut self, meta: Option<ModularMeta>) -> Self {
        self.meta = meta;
        self
    }
    pub fn with_param(mut self, param: Param) -> Self {
        self.param = param;
        self
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
    /// Index of the first nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }
    pub fn truncate(mut self, n: usize) -> Self {
        self.coeffs.truncate(n);
        self
    }

    fn same_shape(&self, o: &Self) -> usize {
        debug_assert_eq!(self.param, o.param, "series in different parameters");
        self.precision().min(o.precision())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.same_shape(o);
        let coeffs = (0..n).map(|i| self.coeffs[i].plus(&o.coeffs[i])).collect();
        UExpansion { zero: self.zero.clone(), coeffs, param: self.param.clone(), meta: self.meta.clone() }
    }
    pub fn sub(&self, o: &Self) -> Self {
        let n = self.same_shape(o);
        let coeffs = (0..n).map(|i| self.coeffs[i].minus(&o.coeffs[i])).collect();
        UExpansion { zero: self.zero.clone(), coeffs, param: self.param.clone(), meta: self.meta.clone() }
    }
    pub fn neg(&self) -> Self {
        self.map_same(|c| c.negated())
    }
    pub fn scale(&self, c: &R) -> Self {
        self.map_same(|x| if x.is_zero() { x.clone() } else { x.times(c) })
    }
    pub fn scale_k(&self, c: &RatFunc) -> Self {
        self.map_same(|x| if x.is_zero() { x.clone() } else { x.scaled(c) })
    }
    fn map_same(&self, f: impl Fn(&R) -> R) -> Self {
        UExpansion {
            zero: self.zero.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
            param: self.param.clone(),
            meta: self.meta.clone(),
        }
    }

    /// Coefficient map into another ring.
    pub fn map<S: Coeff>(&self, zero: S, f: impl Fn(&R) -> S) -> UExpansion<S> {
        UExpansion { zero, coeffs: self.coeffs.iter().map(f).collect(), param: self.param.clone(), meta: self.meta.clone() }
    }

    /// Truncated product; zero coefficients are skipped.
    pub fn mul(&self, o: &Self) -> Self {
        let n = self.same_shape(o);
        let mut out = vec![self.zero.clone(); n];
        let nz: Vec<usize> = (0..n).filter(|&j| !o.coeffs[j].is_zero()).collect();
        for i in 0..n {
            let a = &self.coeffs[i];
            if a.is_zero() {
                continue;
            }
            for &j in &nz {
                if i + j >= n {
                    break;
                }
                out[i + j] = out[i + j].plus(&a.times(&o.coeffs[j]));
            }
        }
        UExpansion { zero: self.zero.clone(), coeffs: out, param: self.param.clone(), meta: None }
    }

    /// Product with a series over `K`.
    pub fn mul_k(&self, o: &UExpansion<RatFunc>) -> Self {
        let n = self.precision().min(o.precision());
        let mut out = vec![self.zero.clone(); n];
        let nz: Vec<usize> = (0..n).filter(|&j| !o.coeffs[j].is_zero()).collect();
        for i in 0..n {
            let a = &self.coeffs[i];
            if a.is_zero() {
                continue;
            }
            for &j in &nz {
                if i + j >= n {
                    break;
                }
                out[i + j] = out[i + j].plus(&a.scaled(&o.coeffs[j]));
            }
        }
        UExpansion { zero: self.zero.clone(), coeffs: out, param: self.param.clone(), meta: None }
    }

    /// `sum_i c_i inner^i` for `inner` over `K` with zero constant term;
    /// the result has the precision of `inner`.
    pub fn compose_k(&self, inner: &UExpansion<RatFunc>) -> Result<Self> {
        let n = inner.precision();
        let ord = inner.order().unwrap_or(n);
        if ord == 0 {
            return Err(Error::Precondition("substituted series must vanish at u = 0".into()));
        }
        let mut acc = vec![self.zero.clone(); n];
        let one = inner.coeffs.first().map(|c| c.one_like());
        let Some(one) = one else { return Ok(self.clone().truncate(0)) };
        let mut power = UExpansion::monomial(one, 0, n).with_param(inner.param.clone());
        for (i, c) in self.coeffs.iter().enumerate() {
            if i * ord >= n {
                break;
            }
            if i > 0 {
                power = power.mul(inner);
            }
            if c.is_zero() {
                continue;
            }
            for (j, p) in power.coeffs.iter().enumerate() {
                if !p.is_zero() {
                    acc[j] = acc[j].plus(&c.scaled(p));
                }
            }
        }
        if self.precision() * ord < n && n > 0 {
            // terms beyond the known coefficients would reach below n
            acc.truncate(self.precision() * ord);
        }
        Ok(UExpansion { zero: self.zero.clone(), coeffs: acc, param: inner.param.clone(), meta: self.meta.clone() })
    }

    pub fn to_text(&self, var: &str) -> String {
        let sym = match &self.param {
            Param::U => "u".to_string(),
            Param::Sub(_) => "v".to_string(),
        };
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => sym.clone(),
                _ => format!("{sym}^{i}"),
            };
            let ct = c.to_text(var);
            parts.push(if i == 0 {
                ct
            } else if c.is_one() {
                mono
            } else if ct.contains(' ') || ct.contains('+') || ct.contains('/') {
                format!("({ct})*{mono}")
            } else {
                format!("{ct}*{mono}")
            });
        }
        parts.push(format!("O({sym}^{})", self.precision()));
        parts.join(" + ")
    }
}

impl UExpansion<RatFunc> {
    /// The series in the ring `ring`, coefficients as scalars.
    pub fn lift(&self, ring: &Arc<QuotientRing>) -> UExpansion<QElem> {
        self.map(QElem::zero(ring), |c| QElem::from_k(ring, c.clone()))
    }

    /// Multiplicative inverse of a series with unit constant term.
    pub fn inverse(&self) -> Result<UExpansion<RatFunc>> {
        let n = self.precision();
        if n == 0 {
            return Ok(self.clone());
        }
        let c0inv = self.coeffs[0].inv()?;
        let mut out = vec![self.zero.clone(); n];
        out[0] = c0inv.clone();
        for k in 1..n {
            let mut s = self.zero.clone();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() && !out[k - j].is_zero() {
                    s = &s + &(&self.coeffs[j] * &out[k - j]);
                }
            }
            out[k] = -&(&s * &c0inv);
        }
        Ok(UExpansion { zero: self.zero.clone(), coeffs: out, param: self.param.clone(), meta: None })
    }
}

impl UExpansion<QElem> {
    pub fn ring(&self) -> &Arc<QuotientRing> {
        self.zero.ring()
    }
    pub fn embed_into(&self, ring: &Arc<QuotientRing>) -> Result<UExpansion<QElem>> {
        let coeffs = self.coeffs.iter().map(|c| c.embed_into(ring)).collect::<Result<_>>()?;
        Ok(UExpansion { zero: QElem::zero(ring), coeffs, param: self.param.clone(), meta: self.meta.clone() })
    }
    pub fn restrict_to(&self, ring: &Arc<QuotientRing>) -> Result<UExpansion<QElem>> {
        let coeffs = self.coeffs.iter().map(|c| c.restrict_to(ring)).collect::<Result<_>>()?;
        Ok(UExpansion { zero: QElem::zero(ring), coeffs, param: self.param.clone(), meta: self.meta.clone() })
    }
    /// The series over `K`, if no torsion generator occurs.
    pub fn to_scalars(&self) -> Result<UExpansion<RatFunc>> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.as_scalar().cloned().ok_or_else(|| Error::RingMismatch("coefficient is not in K".into())))
            .collect::<Result<Vec<_>>>()?;
        let zero = RatFunc::zero(self.ring().constants().ext());
        Ok(UExpansion { zero, coeffs, param: self.param.clone(), meta: self.meta.clone() })
    }
}

impl<R: Coeff + Serialize> Serialize for UExpansion<R> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("UExpansion", 5)?;
        st.serialize_field("ring", &self.zero.ring_descriptor())?;
        st.serialize_field(
            "param",
            &match &self.param {
                Param::U => "u".to_string(),
                Param::Sub(q) => format!("u_[{q}]"),
            },
        )?;
        st.serialize_field("N", &self.precision())?;
        st.serialize_field("coeffs", &self.coeffs)?;
        st.serialize_field("meta", &self.meta)?;
        st.end()
    }
}

impl<R: Coeff> fmt::Display for UExpansion<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("t"))
    }
}

fn constant_k(c: Gf) -> RatFunc {
    RatFunc::constant(c)
}

/// `u(az) = u^{|a|} / sum_i [a]_i u^{|a| - q^i}` to precision `n`.
pub fn u_of_az(ce: ConstantExtension, a: &Poly, n: usize) -> Result<UExpansion<RatFunc>> {
    let d = a.degree().ok_or_else(|| Error::Precondition("u(az) needs a nonzero a".into()))?;
    let f = ce.ext();
    let q = ce.q() as usize;
    let abs = q.pow(d as u32);
    let zero = RatFunc::zero(f);
    if abs >= n {
        let mut s = UExpansion::zeros(zero, n);
        let _ = &mut s;
        return Ok(s);
    }
    let m = n - abs;
    let mut den = vec![zero.clone(); m];
    for (i, c) in carlitz_coeffs(a).iter().enumerate() {
        let e = abs - q.pow(i as u32);
        if e < m {
            den[e] = RatFunc::from_poly(ce.lift(c));
        }
    }
    let inv = UExpansion::new(zero.clone(), den).inverse()?;
    let mut coeffs = vec![zero; abs];
    coeffs.extend(inv.coeffs);
    Ok(UExpansion::new(RatFunc::zero(f), coeffs))
}

/// `f(az)`: substitutes `u ↦ u(az)`; same precision as `f`.
pub fn rescale_arg<R: Coeff>(ce: ConstantExtension, f: &UExpansion<R>, a: &Poly) -> Result<UExpansion<R>> {
    let inner = u_of_az(ce, a, f.precision())?.with_param(f.param.clone());
    let mut out = f.compose_k(&inner)?;
    out.meta = f.meta.clone();
    Ok(out)
}

/// `sum_i c_i (u/(1 + μu))^i`, i.e. the coefficient of `u^n` is
/// `sum_i c_i C(-i, n-i) μ^{n-i}`, given the powers `mu_pow[j] = μ^j`.
fn shift_with_powers(f: &UExpansion<QElem>, mu_pow: &[QElem]) -> UExpansion<QElem> {
    let n = f.precision();
    let ring = f.ring().clone();
    let p = ring.constants().ext().characteristic();
    let fe = ring.constants().ext();
    let mut out = vec![QElem::zero(&ring); n];
    for (i, c) in f.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for m in i..n {
            let b = lucas_binomial(-(i as i64), (m - i) as u64, p);
            if b == 0 || mu_pow[m - i].is_zero() {
                continue;
            }
            let term = c.mul(&mu_pow[m - i]).scale(&constant_k(fe.elem(b)));
            out[m] = out[m].add(&term);
        }
    }
    UExpansion { zero: QElem::zero(&ring), coeffs: out, param: f.param.clone(), meta: f.meta.clone() }
}

/// Substitutes `u ↦ u/(μu + 1)`, i.e. translates the argument by the
/// torsion point whose exponential value is `μ`.
pub fn shift_by_value(f: &UExpansion<QElem>, mu: &QElem) -> UExpansion<QElem> {
    let n = f.precision();
    let mut pw = Vec::with_capacity(n);
    let mut cur = QElem::one(mu.ring());
    for j in 0..n {
        if j > 0 {
            cur = cur.mul(mu);
        }
        pw.push(cur.clone());
    }
    shift_with_powers(f, &pw)
}

/// `f(z + β/𝔫)`: substitutes `u ↦ u/(exp_value(β) u + 1)`. The series
/// is moved into the context ring first.
pub fn shift_by_torsion(f: &UExpansion<QElem>, beta: &Poly, ctx: &TorsionContext) -> Result<UExpansion<QElem>> {
    let g = f.embed_into(ctx.ring())?;
    Ok(shift_by_value(&g, &ctx.exp_value(beta)))
}

/// `sum_β w_β f(z + β/𝔫)` from the weighted power sums
/// `sums[j] = sum_β w_β exp_value(β)^j` (see
/// [`weighted_power_sums`](crate::characters::weighted_power_sums)).
pub fn shift_sum(f: &UExpansion<QElem>, sums: &[QElem]) -> Result<UExpansion<QElem>> {
    if sums.len() < f.precision() {
        return Err(Error::PrecisionTooSmall { have: sums.len(), need: f.precision() });
    }
    let ring = sums[0].ring();
    let g = f.embed_into(ring)?;
    Ok(shift_with_powers(&g, sums))
}

/// `f(z)` written in `v = u(z/𝔮)` to precision `n_v`, using
/// `u = v^{|𝔮|} / sum_i [𝔮]_i v^{|𝔮|-q^i}`.
pub fn to_subparameter<R: Coeff>(ce: ConstantExtension, f: &UExpansion<R>, qq: &Poly, n_v: usize) -> Result<UExpansion<R>> {
    let inner = u_of_az(ce, qq, n_v)?.with_param(Param::Sub(qq.clone()));
    let mut out = f.compose_k(&inner)?;
    out.meta = f.meta.clone();
    Ok(out)
}

/// `f((z+β)/𝔮)` as a series in `v = u(z/𝔮)`: the coefficients of `f`
/// with `u` renamed `v`, translated by `exp_C(π̃β/𝔮)`.
pub fn evaluate_at_shift(f: &UExpansion<QElem>, beta: &Poly, ctx_q: &TorsionContext) -> Result<UExpansion<QElem>> {
    let renamed = f.clone().with_param(Param::Sub(ctx_q.modulus().clone()));
    shift_by_torsion(&renamed, beta, ctx_q)
}

/// Inverts [`to_subparameter`]: finds `c` with `sum c_i u^i = g` where
/// `u` is the series of `u(z)` in `v`. The result has precision
/// `floor(N_v / |𝔮|)`; a nonzero residual below `N_v` is an error.
pub fn descend<R: Coeff>(ce: ConstantExtension, g: &UExpansion<R>, qq: &Poly) -> Result<UExpansion<R>> {
    let nv = g.precision();
    let abs = qq.abs() as usize;
    let u_in_v = u_of_az(ce, qq, nv)?;
    let lead = if abs < nv { u_in_v.coeffs[abs].clone() } else { RatFunc::one(ce.ext()) };
    let lead_inv = lead.inv()?;
    let mut resid: Vec<R> = g.coeffs.clone();
    let mut out = Vec::new();
    let mut power = UExpansion::monomial(RatFunc::one(ce.ext()), 0, nv);
    let mut lead_pow = RatFunc::one(ce.ext());
    let mut lead_pow_inv = RatFunc::one(ce.ext());
    let mut i = 0;
    while i * abs < nv {
        if i > 0 {
            power = power.mul(&u_in_v);
            lead_pow = &lead_pow * &lead;
            lead_pow_inv = &lead_pow_inv * &lead_inv;
        }
        let c = resid[i * abs].scaled(&lead_pow_inv);
        if !c.is_zero() {
            for (j, p) in power.coeffs.iter().enumerate() {
                if !p.is_zero() {
                    resid[j] = resid[j].minus(&c.scaled(p));
                }
            }
        }
        out.push(c);
        i += 1;
    }
    let _ = lead_pow;
    if let Some(j) = resid.iter().position(|r| !r.is_zero()) {
        return Err(Error::NotDescendable(format!("residual at v^{j}")));
    }
    out.truncate(nv / abs);
    Ok(UExpansion { zero: g.zero.clone(), coeffs: out, param: Param::U, meta: g.meta.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::monics_up_to_degree;

    fn ce3() -> ConstantExtension {
        ConstantExtension::new(3, 1).unwrap()
    }
    fn k(ce: ConstantExtension, s: &str) -> RatFunc {
        RatFunc::from_poly(Poly::parse(ce.ext(), s, "t").unwrap())
    }
    fn u(ce: ConstantExtension, n: usize) -> UExpansion<RatFunc> {
        UExpansion::monomial(RatFunc::one(ce.ext()), 1, n)
    }

    #[test]
    fn u_of_theta_is_geometric() {
        let ce = ce3();
        let s = u_of_az(ce, &Poly::theta(ce.base()), 12).unwrap();
        // u^3 (1 - θu^2 + θ^2u^4 - ..)
        let mut expect = vec![RatFunc::zero(ce.ext()); 12];
        let mut c = RatFunc::one(ce.ext());
        let mt = -&k(ce, "t");
        for j in 0..5 {
            expect[3 + 2 * j] = c.clone();
            c = &c * &mt;
        }
        assert_eq!(s.coeffs(), &expect[..]);
        assert_eq!(u_of_az(ce, &Poly::one(ce.base()), 5).unwrap(), u(ce, 5));
        assert!(u_of_az(ce, &Poly::zero(ce.base()), 5).is_err());
    }

    #[test]
    fn u_of_az_orders_and_multiplicativity() {
        let ce = ce3();
        let n = 40;
        for a in monics_up_to_degree(ce.base(), 3) {
            let s = u_of_az(ce, &a, 100).unwrap();
            assert_eq!(s.order(), Some(a.abs() as usize));
        }
        let small = monics_up_to_degree(ce.base(), 2);
        for a in &small[..6] {
            for b in &small[..6] {
                let lhs = u_of_az(ce, &(a * b), n).unwrap();
                let rhs = rescale_arg(ce, &u_of_az(ce, a, n).unwrap(), b).unwrap();
                assert_eq!(lhs, rhs, "a={a} b={b}");
            }
        }
        // nonmonic argument: u(2z) = 2^{-1} u(z)
        let two = Poly::from_ints(ce.base(), &[2]);
        assert_eq!(u_of_az(ce, &two, 6).unwrap(), u(ce, 6).scale_k(&k(ce, "2")));
    }

    #[test]
    fn shift_identities() {
        let ce = ce3();
        let n = 10;
        let ctx = TorsionContext::new(ce, &Poly::parse(ce.base(), "t^2+1", "t").unwrap()).unwrap();
        let f = u(ce, n).lift(ctx.ring());
        let zero = Poly::zero(ce.base());
        assert_eq!(shift_by_torsion(&f, &zero, &ctx).unwrap(), f);
        let b1 = Poly::parse(ce.base(), "t+2", "t").unwrap();
        let b2 = Poly::parse(ce.base(), "2*t", "t").unwrap();
        let s1 = shift_by_torsion(&shift_by_torsion(&f, &b1, &ctx).unwrap(), &b2, &ctx).unwrap();
        let s12 = shift_by_torsion(&f, &(&b1 + &b2), &ctx).unwrap();
        assert_eq!(s1, s12);
        // u -> u - λu^2 + λ^2u^3 - ..
        let lam = ctx.exp_value(&b1);
        let s = shift_by_torsion(&f, &b1, &ctx).unwrap();
        assert_eq!(s.coeff(2), &lam.neg());
        assert_eq!(s.coeff(3), &lam.mul(&lam));
        // ring homomorphism on products
        let g = u_of_az(ce, &Poly::theta(ce.base()), n).unwrap().add(&u(ce, n)).lift(ctx.ring());
        let h = f.mul(&g).add(&g);
        let lhs = shift_by_torsion(&f.mul(&h), &b1, &ctx).unwrap();
        let rhs = shift_by_torsion(&f, &b1, &ctx).unwrap().mul(&shift_by_torsion(&h, &b1, &ctx).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn subparameter_roundtrip() {
        let ce = ce3();
        let qq = Poly::parse(ce.base(), "t+1", "t").unwrap();
        let f = u_of_az(ce, &Poly::theta(ce.base()), 10).unwrap().add(&u(ce, 10));
        let g = to_subparameter(ce, &f, &qq, 30).unwrap();
        assert_eq!(g.order(), Some(3));
        let back = descend(ce, &g, &qq).unwrap();
        assert_eq!(back, f);
        let v = UExpansion::monomial(RatFunc::one(ce.ext()), 1, 30).with_param(Param::Sub(qq.clone()));
        assert!(matches!(descend(ce, &v, &qq), Err(Error::NotDescendable(_))));
        let c = UExpansion::constant(k(ce, "t"), 5);
        assert_eq!(descend(ce, &to_subparameter(ce, &c, &qq, 15).unwrap(), &qq).unwrap(), c);
    }

    #[test]
    fn beta_sum_of_u_descends_and_is_free_of_torsion() {
        let ce = ce3();
        let qq = Poly::theta(ce.base());
        let ctx = TorsionContext::new(ce, &qq).unwrap();
        let n = 18;
        let f = u(ce, n).lift(ctx.ring());
        let mut acc = UExpansion::zeros(QElem::zero(ctx.ring()), n).with_param(Param::Sub(qq.clone()));
        for beta in ctx.residues() {
            acc = acc.add(&evaluate_at_shift(&f, &beta, &ctx).unwrap());
        }
        let d = descend(ce, &acc, &qq).unwrap();
        assert_eq!(d.precision(), 6);
        assert!(d.to_scalars().is_ok());
    }

    #[test]
    fn precision_is_honest() {
        let ce = ce3();
        let a = Poly::parse(ce.base(), "t^2+t", "t").unwrap();
        let lo = u_of_az(ce, &a, 20).unwrap();
        let hi = u_of_az(ce, &a, 40).unwrap();
        assert_eq!(lo, hi.clone().truncate(20));
        let f = hi.add(&u(ce, 40));
        let r_lo = rescale_arg(ce, &f.clone().truncate(20), &Poly::theta(ce.base())).unwrap();
        let r_hi = rescale_arg(ce, &f, &Poly::theta(ce.base())).unwrap();
        assert_eq!(r_lo, r_hi.truncate(20));
    }
}
