//! Dirichlet characters `a ↦ ∏ a(ζ_i)^{e_i}` of square-free modulus, their
//! convolutions, Gauss–Thakur sums and the sums `s(χ, k)`.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::algebra::{lucas_binomial, polys_below_degree, ConstantExtension, Gf, Poly, QElem, RatFunc};
use crate::carlitz::{carlitz_action, TorsionContext};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharFactor {
    pub prime: Poly,
    pub zeta: Gf,
    pub exponent: u64,
}

impl CharFactor {
    /// `|𝔭| - 1`, the order of `(A/𝔭)^×`.
    pub fn group_order(&self) -> u64 {
        self.prime.abs() - 1
    }
}

/// A character on `A`, given per prime by a root `ζ` and an exponent.
///
/// Factors are sorted by prime; a factor with exponent 0 contributes 1
/// everywhere (`0^0 = 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirichletCharacter {
    ce: ConstantExtension,
    factors: Vec<CharFactor>,
}

impl DirichletCharacter {
    pub fn trivial(ce: ConstantExtension) -> DirichletCharacter {
        DirichletCharacter { ce, factors: Vec::new() }
    }

    /// Character with the canonical root of each prime.
    pub fn new(ce: ConstantExtension, parts: &[(Poly, u64)]) -> Result<DirichletCharacter> {
        let with_roots = parts
            .iter()
            .map(|(p, e)| Ok((p.clone(), ce.root_of(p)?, *e)))
            .collect::<Result<Vec<_>>>()?;
        DirichletCharacter::with_roots(ce, with_roots)
    }

    /// Character with explicitly chosen roots.
    pub fn with_roots(ce: ConstantExtension, parts: Vec<(Poly, Gf, u64)>) -> Result<DirichletCharacter> {
        let mut factors: Vec<CharFactor> = Vec::new();
        for (prime, zeta, e) in parts {
            if prime.field() != ce.base() || !prime.is_monic() || !prime.is_irreducible() {
                return Err(Error::NotIrreducible(prime.to_string()));
            }
            if !ce.lift(&prime).eval(zeta).is_zero() {
                return Err(Error::Precondition(format!("ζ is not a root of {prime}")));
            }
            let ord = prime.abs() - 1;
            if let Some(f) = factors.iter_mut().find(|f| f.prime == prime) {
                if f.zeta != zeta {
                    return Err(Error::Precondition(format!("two roots given for {prime}")));
                }
                f.exponent = (f.exponent + e) % ord;
            } else {
                factors.push(CharFactor { prime, zeta, exponent: e % ord });
            }
        }
        factors.sort_by(|a, b| a.prime.cmp(&b.prime));
        Ok(DirichletCharacter { ce, factors })
    }

    /// `χ_ζ : a ↦ a(ζ)` for the canonical root of `prime`.
    pub fn chi_zeta(ce: ConstantExtension, prime: &Poly) -> Result<DirichletCharacter> {
        DirichletCharacter::new(ce, &[(prime.clone(), 1)])
    }

    /// All characters modulo a square-free `modulus` (canonical roots),
    /// ordered by exponent vector.
    pub fn all_mod(ce: ConstantExtension, modulus: &Poly) -> Result<Vec<DirichletCharacter>> {
        let primes = modulus.factor_squarefree()?;
        let mut out = vec![Vec::new()];
        for p in &primes {
            let ord = p.abs() - 1;
            out = out
                .into_iter()
                .flat_map(|v: Vec<(Poly, u64)>| {
                    (0..ord).map(move |e| {
                        let mut w = v.clone();
                        w.push((p.clone(), e));
                        w
                    })
                })
                .collect();
        }
        out.into_iter().map(|parts| DirichletCharacter::new(ce, &parts)).collect()
    }

    /// The primitive characters of conductor `modulus`.
    pub fn primitive_mod(ce: ConstantExtension, modulus: &Poly) -> Result<Vec<DirichletCharacter>> {
        Ok(DirichletCharacter::all_mod(ce, modulus)?.into_iter().filter(|c| c.is_primitive()).collect())
    }

    pub fn constants(&self) -> ConstantExtension {
        self.ce
    }
    pub fn factors(&self) -> &[CharFactor] {
        &self.factors
    }

    /// Product of the primes carrying a factor (including exponent 0).
    pub fn modulus(&self) -> Poly {
        self.factors.iter().fold(Poly::one(self.ce.base()), |acc, f| &acc * &f.prime)
    }

    /// Product of the primes with nonzero exponent.
    pub fn conductor(&self) -> Poly {
        self.factors
            .iter()
            .filter(|f| f.exponent > 0)
            .fold(Poly::one(self.ce.base()), |acc, f| &acc * &f.prime)
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.iter().all(|f| f.exponent == 0)
    }

    /// Every factor has a nonzero exponent.
    pub fn is_primitive(&self) -> bool {
        self.factors.iter().all(|f| f.exponent > 0)
    }

    /// `s_χ = (sum e_i) mod (q-1)`.
    pub fn sign(&self) -> u64 {
        let m = self.ce.q() as u64 - 1;
        self.factors.iter().map(|f| f.exponent % m).sum::<u64>() % m
    }

    pub fn eval(&self, a: &Poly) -> Gf {
        let la = self.ce.lift(a);
        let mut acc = self.ce.ext().one();
        for f in &self.factors {
            if f.exponent == 0 {
                continue;
            }
            acc = acc * la.eval(f.zeta).pow(f.exponent);
        }
        acc
    }

    /// `χ(a)` as a constant rational function.
    pub fn eval_k(&self, a: &Poly) -> RatFunc {
        RatFunc::constant(self.eval(a))
    }

    pub fn inverse(&self) -> DirichletCharacter {
        let factors = self
            .factors
            .iter()
            .map(|f| {
                let ord = f.group_order();
                CharFactor { exponent: (ord - f.exponent % ord) % ord, ..f.clone() }
            })
            .collect();
        DirichletCharacter { ce: self.ce, factors }
    }

    /// Pointwise product; factors at a shared prime must use the same root.
    pub fn mul(&self, other: &DirichletCharacter) -> Result<DirichletCharacter> {
        let parts = self
            .factors
            .iter()
            .chain(&other.factors)
            .map(|f| (f.prime.clone(), f.zeta, f.exponent))
            .collect();
        DirichletCharacter::with_roots(self.ce, parts)
    }

    pub fn pow(&self, n: u64) -> DirichletCharacter {
        let factors = self
            .factors
            .iter()
            .map(|f| CharFactor { exponent: (f.exponent * n) % f.group_order(), ..f.clone() })
            .collect();
        DirichletCharacter { ce: self.ce, factors }
    }

    /// Text literal accepted by [`DirichletCharacter::parse`].
    pub fn to_literal(&self, var: &str) -> String {
        if self.factors.is_empty() {
            return "chi{}".into();
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|f| format!("p={}; zeta={}; e={}", f.prime.to_text(var), f.zeta.value(), f.exponent))
            .collect();
        format!("chi{{{}}}", parts.join("; "))
    }

    /// Parses `chi{p=t^2+2; zeta=auto; e=5}`; several `p=..; e=..` groups
    /// give a character of composite modulus. `zeta` is `auto` (canonical
    /// root) or the integer encoding of a root in the constant field.
    pub fn parse(ce: ConstantExtension, s: &str, var: &str) -> Result<DirichletCharacter> {
        let t = s.trim();
        let body = t
            .strip_prefix("chi{")
            .and_then(|r| r.strip_suffix('}'))
            .ok_or(Error::Parse { pos: 0, msg: "expected chi{...}".into() })?;
        let offset = t.len() - t.strip_prefix("chi{").unwrap().len();
        let mut parts: Vec<(Poly, Option<u32>, Option<u64>)> = Vec::new();
        let mut pos = offset;
        for item in body.split(';') {
            let here = pos + (item.len() - item.trim_start().len());
            pos += item.len() + 1;
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            let (key, val) = item
                .split_once('=')
                .ok_or(Error::Parse { pos: here, msg: format!("expected key=value, found '{item}'") })?;
            let vpos = here + key.len() + 1 + (val.len() - val.trim_start().len());
            let val = val.trim();
            match key.trim() {
                "p" => {
                    let p = Poly::parse(ce.base(), val, var).map_err(|e| match e {
                        Error::Parse { pos, msg } => Error::Parse { pos: vpos + pos, msg },
                        other => other,
                    })?;
                    parts.push((p, None, None));
                }
                "zeta" => {
                    let last = parts.last_mut().ok_or(Error::Parse { pos: here, msg: "zeta before p".into() })?;
                    if val != "auto" {
                        let v: u32 = val
                            .parse()
                            .map_err(|_| Error::Parse { pos: vpos, msg: format!("bad root '{val}'") })?;
                        if v >= ce.ext().order() {
                            return Err(Error::Parse { pos: vpos, msg: format!("root {v} outside the constant field") });
                        }
                        last.1 = Some(v);
                    }
                }
                "e" => {
                    let last = parts.last_mut().ok_or(Error::Parse { pos: here, msg: "e before p".into() })?;
                    last.2 = Some(
                        val.parse().map_err(|_| Error::Parse { pos: vpos, msg: format!("bad exponent '{val}'") })?,
                    );
                }
                other => return Err(Error::Parse { pos: here, msg: format!("unknown key '{other}'") }),
            }
        }
        let with_roots = parts
            .into_iter()
            .map(|(p, z, e)| {
                let zeta = match z {
                    Some(v) => ce.ext().elem(v),
                    None => ce.root_of(&p)?,
                };
                Ok((p, zeta, e.unwrap_or(1)))
            })
            .collect::<Result<Vec<_>>>()?;
        DirichletCharacter::with_roots(ce, with_roots)
    }
}

impl fmt::Display for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_literal("t"))
    }
}

impl Serialize for DirichletCharacter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct F {
            prime: String,
            zeta: u32,
            exponent: u64,
        }
        let fs: Vec<F> = self
            .factors
            .iter()
            .map(|f| F { prime: f.prime.to_string(), zeta: f.zeta.value(), exponent: f.exponent })
            .collect();
        let mut st = s.serialize_struct("DirichletCharacter", 4)?;
        st.serialize_field("conductor", &self.conductor().to_string())?;
        st.serialize_field("factors", &fs)?;
        st.serialize_field("sign", &self.sign())?;
        st.serialize_field("primitive", &self.is_primitive())?;
        st.end()
    }
}

fn check_pair(a: &DirichletCharacter, b: &DirichletCharacter) -> Result<()> {
    if a.modulus() != b.modulus() || a.factors.iter().zip(&b.factors).any(|(x, y)| x.zeta != y.zeta) {
        return Err(Error::ConductorMismatch);
    }
    if !a.is_primitive() || !b.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    Ok(())
}

/// `(χ_1 * χ_2)(δ) = sum_{|a| < |𝔫|} χ_1(a) χ_2(δ - a)`, by brute force.
pub fn convolve(chi1: &DirichletCharacter, chi2: &DirichletCharacter, delta: &Poly) -> Result<Gf> {
    check_pair(chi1, chi2)?;
    let n = chi1.modulus();
    let mut acc = chi1.ce.ext().zero();
    for a in polys_below_degree(chi1.ce.base(), n.degree().unwrap()) {
        acc = acc + chi1.eval(&a) * chi2.eval(&(delta - &a));
    }
    Ok(acc)
}

/// `∏_i (-1)^{1-j_i} C(k_i, |𝔭_i|-1-j_i)` where `j_i`, `k_i` are the
/// exponents of `χ_1`, `χ_2`.
pub fn jacobi_factor(chi1: &DirichletCharacter, chi2: &DirichletCharacter) -> Result<Gf> {
    check_pair(chi1, chi2)?;
    let ce = chi1.ce;
    let p = ce.base().characteristic();
    let mut acc = ce.ext().one();
    for (f1, f2) in chi1.factors.iter().zip(&chi2.factors) {
        let (j, k) = (f1.exponent, f2.exponent);
        let b = lucas_binomial(k as i64, f1.group_order() - j, p);
        let mut v = ce.ext().elem(b);
        if (1 + j) % 2 == 1 {
            v = -v;
        }
        acc = acc * v;
    }
    Ok(acc)
}

fn require_modulus(chi: &DirichletCharacter, ctx: &TorsionContext) -> Result<()> {
    if &chi.modulus() != ctx.modulus() {
        return Err(Error::ConductorMismatch);
    }
    Ok(())
}

/// `g(χ_{ζ^{q^j}}) = sum_{δ≠0, deg δ < deg 𝔭} δ(ζ)^{-q^j} C_δ(λ_𝔭)`.
fn basic_gauss_sum(ctx: &TorsionContext, factor: &CharFactor, j: u32) -> QElem {
    let ce = ctx.constants();
    let lam = ctx.prime_generator(&factor.prime).expect("prime of the context");
    let qj = (ce.q() as u64).pow(j);
    let mut acc = QElem::zero(ctx.ring());
    for delta in polys_below_degree(ce.base(), factor.prime.degree().unwrap()) {
        if delta.is_zero() {
            continue;
        }
        let w = ce.lift(&delta).eval(factor.zeta).pow(qj).inv().unwrap();
        acc = acc.add(&carlitz_action(ce, &delta, &lam).scale(&RatFunc::constant(w)));
    }
    acc
}

/// The Gauss–Thakur sum: the product over primes and base-`q` digits
/// `e_i = sum_j e_ij q^j` of `g(χ_{ζ_i^{q^j}})^{e_ij}`.
pub fn gauss_thakur(chi: &DirichletCharacter, ctx: &TorsionContext) -> Result<QElem> {
    if chi.is_trivial() {
        return Ok(QElem::one(ctx.ring()));
    }
    if !chi.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    require_modulus(chi, ctx)?;
    let q = ctx.constants().q() as u64;
    let mut acc = QElem::one(ctx.ring());
    for f in &chi.factors {
        let mut e = f.exponent;
        let mut j = 0;
        while e > 0 {
            let d = e % q;
            if d > 0 {
                acc = acc.mul(&basic_gauss_sum(ctx, f, j).pow(d));
            }
            e /= q;
            j += 1;
        }
    }
    Ok(acc)
}

/// `S_k = sum_β w(β) exp_value(β)^k` for `k = 0..=kmax`, skipping
/// zero weights.
pub fn weighted_power_sums(ctx: &TorsionContext, weights: &[(Poly, RatFunc)], kmax: usize) -> Vec<QElem> {
    let mut out = vec![QElem::zero(ctx.ring()); kmax + 1];
    for (beta, w) in weights {
        if w.is_zero() {
            continue;
        }
        let x = ctx.exp_value(beta);
        let mut p = QElem::one(ctx.ring());
        for (k, slot) in out.iter_mut().enumerate() {
            if k > 0 {
                p = p.mul(&x);
            }
            *slot = slot.add(&p.scale(w));
        }
    }
    out
}

/// Weights `χ^{-1}(β)` over all residues mod the context modulus.
pub fn inverse_weights(chi: &DirichletCharacter, ctx: &TorsionContext) -> Vec<(Poly, RatFunc)> {
    let inv = chi.inverse();
    ctx.residues().into_iter().map(|b| {
        let w = inv.eval_k(&b);
        (b, w)
    }).collect()
}

/// `s(χ, k) = sum_β χ^{-1}(β) exp_value(β)^k` for `k = 0..=kmax`.
pub fn char_sums(chi: &DirichletCharacter, ctx: &TorsionContext, kmax: usize) -> Result<Vec<QElem>> {
    require_modulus(chi, ctx)?;
    Ok(weighted_power_sums(ctx, &inverse_weights(chi, ctx), kmax))
}

/// `s(χ, k)` for a single `k`.
pub fn char_sum_s(chi: &DirichletCharacter, k: usize, ctx: &TorsionContext) -> Result<QElem> {
    Ok(char_sums(chi, ctx, k)?.swap_remove(k))
}

#[cfg(test)]
mod tests {
    use super::*;
        use proptest::prelude::*;

    fn ce(q: u32, d: u32) -> ConstantExtension {
        ConstantExtension::new(q, d).unwrap()
    }
    fn p(c: ConstantExtension, s: &str) -> Poly {
        Poly::parse(c.base(), s, "t").unwrap()
    }

    #[test]
    fn evaluation_basics() {
        let c = ce(3, 2);
        let pr = p(c, "t^2+1");
        let chi = DirichletCharacter::chi_zeta(c, &pr).unwrap();
        let zeta = chi.factors()[0].zeta;
        assert_eq!(chi.eval(&Poly::theta(c.base())), zeta);
        assert!(chi.eval(&pr).is_zero());
        let triv = DirichletCharacter::trivial(c);
        assert!(triv.eval(&pr).is_one());
        assert_eq!(triv.sign(), 0);
        // exponent 0 on a prime still gives 1 at multiples of that prime
        let zero_exp = DirichletCharacter::new(c, &[(pr.clone(), 0)]).unwrap();
        assert!(zero_exp.eval(&pr).is_one());
    }

    #[test]
    fn signs() {
        let c = ce(3, 1);
        let two = DirichletCharacter::new(c, &[(p(c, "t"), 1), (p(c, "t+1"), 2)]).unwrap();
        assert_eq!(two.sign(), 1);
        let c5 = ce(5, 2);
        let chi = DirichletCharacter::new(c5, &[(p(c5, "t^2+2"), 7)]).unwrap();
        assert_eq!(chi.sign(), 3);
        for a in c5.base().elements().skip(1) {
            let a = c5.base().elem(a);
            assert_eq!(chi.eval(&Poly::constant(a)), c5.embed(a).pow(chi.sign()));
        }
    }

    #[test]
    fn literal_roundtrip_and_errors() {
        let c = ce(5, 2);
        let chi = DirichletCharacter::parse(c, "chi{p=t^2+2; zeta=auto; e=5}", "t").unwrap();
        assert_eq!(chi.factors()[0].exponent, 5);
        assert_eq!(DirichletCharacter::parse(c, &chi.to_literal("t"), "t").unwrap(), chi);
        let c3 = ce(3, 1);
        let two = DirichletCharacter::parse(c3, "chi{p=t; e=1; p=t+1; e=1}", "t").unwrap();
        assert_eq!(two.modulus(), p(c3, "t^2+t"));
        let err = DirichletCharacter::parse(c, "chi{p=t^2+?; e=1}", "t").unwrap_err();
        assert!(matches!(err, Error::Parse { pos: 10, .. }), "{err:?}");
        assert!(DirichletCharacter::parse(c, "chi{q=1}", "t").is_err());
    }

    #[test]
    fn convolution_small_cases() {
        let c = ce(3, 1);
        let chi = DirichletCharacter::chi_zeta(c, &Poly::theta(c.base())).unwrap();
        for d in polys_below_degree(c.base(), 1) {
            assert!(convolve(&chi, &chi, &d).unwrap().is_one());
        }
        assert!(jacobi_factor(&chi, &chi).unwrap().is_one());
        let c5 = ce(5, 2);
        let chi5 = DirichletCharacter::chi_zeta(c5, &p(c5, "t^2+2")).unwrap();
        for d in polys_below_degree(c5.base(), 2) {
            assert!(convolve(&chi5, &chi5, &d).unwrap().is_zero());
        }
        assert!(jacobi_factor(&chi5, &chi5).unwrap().is_zero());
        let other = DirichletCharacter::chi_zeta(c, &p(c, "t+1")).unwrap();
        assert_eq!(convolve(&chi, &other, &Poly::zero(c.base())).unwrap_err(), Error::ConductorMismatch);
    }

    #[test]
    fn gauss_thakur_theta() {
        let c = ce(3, 1);
        let ctx = TorsionContext::new(c, &Poly::theta(c.base())).unwrap();
        let chi = DirichletCharacter::chi_zeta(c, &Poly::theta(c.base())).unwrap();
        let g = gauss_thakur(&chi, &ctx).unwrap();
        let f = c.ext();
        assert_eq!(g, ctx.lambda().scale(&RatFunc::constant(f.elem(2))));
        assert_eq!(g.mul(&g), QElem::from_k(ctx.ring(), RatFunc::from_poly(Poly::from_ints(f, &[0, -1]))));
        assert!(gauss_thakur(&DirichletCharacter::trivial(c), &ctx).unwrap().is_one());
    }

    #[test]
    fn gauss_thakur_is_an_eigenvector() {
        for (q, d, m) in [(3, 2, "t^2+1"), (3, 1, "t^2+t"), (5, 1, "t+1")] {
            let c = ce(q, d);
            let n = p(c, m);
            let ctx = TorsionContext::new(c, &n).unwrap();
            for chi in DirichletCharacter::primitive_mod(c, &n).unwrap() {
                let g = gauss_thakur(&chi, &ctx).unwrap();
                assert!(!g.is_zero());
                for b in polys_below_degree(c.base(), n.degree().unwrap()) {
                    if !b.gcd(&n).is_one() {
                        continue;
                    }
                    let lhs = ctx.galois(&g, &b);
                    assert_eq!(lhs, g.scale(&chi.eval_k(&b)), "{chi} b={b}");
                }
            }
        }
    }

    #[test]
    fn char_sums_vanish_off_sign_and_at_zero() {
        let c = ce(3, 2);
        let n = p(c, "t^2+1");
        let ctx = TorsionContext::new(c, &n).unwrap();
        for chi in DirichletCharacter::primitive_mod(c, &n).unwrap() {
            let s = char_sums(&chi, &ctx, 8).unwrap();
            assert!(s[0].is_zero());
            for (k, v) in s.iter().enumerate() {
                if (k as u64) % 2 != chi.sign() {
                    assert!(v.is_zero(), "{chi} k={k}");
                }
            }
        }
    }

    #[test]
    fn sign_class_counts() {
        for (q, m) in [(3u32, "t^2+1"), (5, "t+2"), (3, "t")] {
            let c = ce(q, 2);
            let pr = p(c, m);
            let all = DirichletCharacter::all_mod(c, &pr).unwrap();
            for k in 0..(q as u64 - 1) {
                let target = (q as u64 - 1 - k % (q as u64 - 1)) % (q as u64 - 1);
                let count = all.iter().filter(|x| x.sign() == target).count() as u64;
                assert_eq!(count, (pr.abs() - 1) / (q as u64 - 1));
            }
        }
    }

    proptest! {
        #[test]
        fn multiplicative_and_sign_law(a in proptest::collection::vec(0i64..3, 0..5),
                                       b in proptest::collection::vec(0i64..3, 0..5),
                                       e1 in 0u64..8, e2 in 0u64..2) {
            let c = ce(3, 2);
            let f = c.base();
            let chi = DirichletCharacter::new(c, &[(p(c, "t^2+1"), e1), (p(c, "t+1"), e2)]).unwrap();
            let (a, b) = (Poly::from_ints(f, &a), Poly::from_ints(f, &b));
            prop_assert_eq!(chi.eval(&(&a * &b)), chi.eval(&a) * chi.eval(&b));
            for v in 1..3u32 {
                let cst = f.elem(v);
                prop_assert_eq!(chi.eval(&a.scale(cst)), c.embed(cst).pow(chi.sign()) * chi.eval(&a));
            }
            let inv = chi.inverse();
            if a.gcd(&chi.modulus()).is_one() {
                prop_assert!((chi.eval(&a) * inv.eval(&a)).is_one());
            }
        }
    }
}
