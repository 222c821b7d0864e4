//! Character twists, Hecke operators on `u`-expansions, and the exact Hecke
//! action on A-expansions and on Eisenstein series with character.

use std::collections::BTreeMap;

use crate::algebra::{lucas_binomial, monics_up_to_degree, ConstantExtension, Poly, QElem, RatFunc};
use crate::carlitz::TorsionContext;
use crate::characters::{char_sums, gauss_thakur, weighted_power_sums, DirichletCharacter};
use crate::error::{Error, Result};
use crate::series::{descend, rescale_arg, shift_sum, AExpansion, AKind, ModularMeta, Param, TwistedEisenstein, UExpansion};

fn kpoly(ce: ConstantExtension, a: &Poly) -> RatFunc {
    RatFunc::from_poly(ce.lift(a))
}

fn check_modulus(chi: &DirichletCharacter, ctx: &TorsionContext) -> Result<()> {
    if chi.factors().is_empty() || chi.modulus() == *ctx.modulus() {
        Ok(())
    } else {
        Err(Error::ConductorMismatch)
    }
}

/// Weight, type, level and nebentypus after twisting by `χ` mod `𝔫`:
/// type `m + s_χ`, level `lcm(𝔪, 𝔫^2)`, nebentypus `ψχ^2`. The type is
/// kept as an integer (not reduced mod `q-1`) since the slash scalars
/// `𝔫^{2m-k}` depend on the representative.
pub fn twisted_meta(meta: &ModularMeta, chi: &DirichletCharacter, modulus: &Poly) -> Result<ModularMeta> {
    Ok(ModularMeta {
        weight: meta.weight,
        typ: meta.typ + chi.sign(),
        level: meta.level.lcm(&modulus.pow(2)),
        nebentypus: meta.nebentypus.mul(&chi.pow(2))?,
    })
}

/// `𝔫^{2m-k} sum_β χ^{-1}(β) f(z + β/𝔫)`.
pub fn twist_raw(f: &UExpansion<QElem>, chi: &DirichletCharacter, ctx: &TorsionContext) -> Result<UExpansion<QElem>> {
    let meta = f.meta().ok_or(Error::MissingMetadata)?.clone();
    check_modulus(chi, ctx)?;
    let ce = ctx.constants();
    let n = f.precision();
    let sums = char_sums(chi, ctx, n.saturating_sub(1))?;
    let scale = kpoly(ce, ctx.modulus()).powi(2 * meta.typ as i64 - meta.weight as i64)?;
    let out = shift_sum(f, &sums)?.scale_k(&scale);
    Ok(out.with_meta(Some(twisted_meta(&meta, chi, ctx.modulus())?)))
}

/// `𝔫^{k-2m-1} g(χ^{-1})` times [`twist_raw`]; `χ` must be primitive.
pub fn twist_normalized(f: &UExpansion<QElem>, chi: &DirichletCharacter, ctx: &TorsionContext) -> Result<UExpansion<QElem>> {
    if !chi.is_primitive() || chi.is_trivial() {
        return Err(Error::NotPrimitive);
    }
    let meta = f.meta().ok_or(Error::MissingMetadata)?;
    let ce = ctx.constants();
    let g = gauss_thakur(&chi.inverse(), ctx)?;
    let scale = kpoly(ce, ctx.modulus()).powi(meta.weight as i64 - 2 * meta.typ as i64 - 1)?;
    let raw = twist_raw(f, chi, ctx)?;
    Ok(raw.scale(&g.scale(&scale)))
}

/// `u^i sum_{ℓ ≡ s_χ} C(-i, ℓ) (g(χ^{-1})/𝔫) s(χ, ℓ) u^ℓ` to precision `n`.
pub fn twist_monomial_closed(i: usize, chi: &DirichletCharacter, ctx: &TorsionContext, n: usize) -> Result<UExpansion<QElem>> {
    if !chi.is_primitive() || chi.is_trivial() {
        return Err(Error::NotPrimitive);
    }
    let ce = ctx.constants();
    let p = ce.ext().characteristic();
    let q1 = ce.q() as usize - 1;
    let s = chi.sign() as usize;
    let g = gauss_thakur(&chi.inverse(), ctx)?.scale(&kpoly(ce, ctx.modulus()).inv()?);
    let sums = char_sums(chi, ctx, n)?;
    let ring = ctx.ring();
    let mut c = vec![QElem::zero(ring); n];
    for l in 1..n {
        if i + l >= n {
            break;
        }
        if l % q1 != s % q1 {
            continue;
        }
        let b = lucas_binomial(-(i as i64), l as u64, p);
        if b == 0 {
            continue;
        }
        c[i + l] = sums[l].mul(&g).scale(&RatFunc::constant(ce.ext().elem(b)));
    }
    if i < n {
        // ℓ = 0 term: s(χ, 0) = 0 for nontrivial χ
        c[i] = sums[0].mul(&g);
    }
    Ok(UExpansion::new(QElem::zero(ring), c))
}

/// `S_m = sum_{|β| < |𝔮|} exp_C(π̃β/𝔮)^m` for `m < n`, checked to lie in `K`.
pub fn torsion_power_sums(ce: ConstantExtension, qq: &Poly, n: usize) -> Result<Vec<RatFunc>> {
    let ctx = TorsionContext::new(ce, qq)?;
    let w: Vec<(Poly, RatFunc)> = ctx.residues().into_iter().map(|b| (b, RatFunc::one(ce.ext()))).collect();
    weighted_power_sums(&ctx, &w, n.saturating_sub(1))
        .into_iter()
        .map(|s| s.as_scalar().cloned().ok_or_else(|| Error::Internal(format!("power sum over {qq}-torsion is not in K"))))
        .collect()
}

/// `T_𝔮 f = ψ(𝔮) 𝔮^k f(𝔮z) + sum_β f((z+β)/𝔮)`. The output precision is
/// `floor(N/|𝔮|)`.
pub fn hecke_u(f: &UExpansion<QElem>, qq: &Poly) -> Result<UExpansion<QElem>> {
    let meta = f.meta().ok_or(Error::MissingMetadata)?.clone();
    if !qq.is_monic() || !qq.is_irreducible() {
        return Err(Error::NotIrreducible(qq.to_string()));
    }
    if qq.divides(&meta.level) {
        return Err(Error::LevelPrime(format!("{qq} divides the level {}", meta.level)));
    }
    let ring = f.ring().clone();
    let ce = ring.constants();
    let n = f.precision();
    let abs = qq.abs() as usize;
    if n < abs {
        return Err(Error::PrecisionTooSmall { have: n, need: abs });
    }
    let out_n = n / abs;
    let sums: Vec<QElem> = torsion_power_sums(ce, qq, n)?.into_iter().map(|s| QElem::from_k(&ring, s)).collect();
    let renamed = f.clone().with_param(Param::Sub(qq.clone()));
    let beta_sum = descend(ce, &shift_sum(&renamed, &sums)?, qq)?;
    let factor = kpoly(ce, &qq.pow(meta.weight)).scale(meta.nebentypus.eval(qq));
    let dil = rescale_arg(ce, f, qq)?.truncate(out_n).scale_k(&factor);
    Ok(dil.add(&beta_sum.truncate(out_n)).with_meta(Some(meta)))
}

/// Hecke action on coefficient maps:
/// `c'_a = 𝔮^g c_a [(a,𝔮) = 1] + 𝔮^k ψ(𝔮) c_{a/𝔮} [𝔮 | a]`, with `g` the
/// Goss index (`i` for power type, `k` for Goss type).
pub fn hecke_a(f: &AExpansion, qq: &Poly) -> Result<AExpansion> {
    let meta = f.meta().clone();
    if qq.divides(&meta.level) {
        return Err(Error::LevelPrime(format!("{qq} divides the level {}", meta.level)));
    }
    let ce = f.constants();
    let g = match f.kind() {
        AKind::Power(i) if i <= ce.q() as usize => i,
        AKind::Power(i) => return Err(Error::Unsupported(format!("power type u(az)^{i} beyond q"))),
        AKind::Goss(k) => k,
    };
    let qg = kpoly(ce, &qq.pow(g as u64));
    let qk = kpoly(ce, &qq.pow(meta.weight)).scale(meta.nebentypus.eval(qq));
    let mut coeffs = BTreeMap::new();
    for a in monics_up_to_degree(ce.base(), f.d_bound()) {
        let c = match a.div_exact(qq) {
            Some(b) => &qk * &f.coeff(&b),
            None => &qg * &f.coeff(&a),
        };
        coeffs.insert(a, c);
    }
    Ok(AExpansion::from_map(ce, f.kind(), meta, f.d_bound(), coeffs))
}

/// `T_𝔮 sum_a w_a E_{(0,a)} = 𝔮^k sum_a w_a E_{(0,𝔮a)}`.
pub fn hecke_twisted(t: &TwistedEisenstein, qq: &Poly) -> Result<TwistedEisenstein> {
    let ctx = t.context();
    let p = ctx.modulus();
    if qq == p {
        return Err(Error::LevelPrime(format!("{qq} is the level")));
    }
    let ce = ctx.constants();
    let qinv = qq.inv_mod(p).ok_or_else(|| Error::LevelPrime(format!("{qq} is not a unit mod {p}")))?;
    let qk = kpoly(ce, &qq.pow(t.weight() as u64));
    let weights = t
        .weights()
        .iter()
        .map(|(b, _)| {
            let w = t.weight_of(&(&qinv * b));
            (b.clone(), &qk * &w)
        })
        .collect();
    Ok(TwistedEisenstein::from_weights(t.weight(), ctx, weights, t.meta().cloned()))
}

/// `sum_{|δ| < |𝔫|} f(z + δ/𝔫) = 𝔫^i sum_{(a,𝔫)=1} c_a u(a𝔫z)^i` for power
/// type `i <= q`.
pub fn delta_sum(f: &AExpansion, modulus: &Poly) -> Result<AExpansion> {
    let ce = f.constants();
    let i = match f.kind() {
        AKind::Power(i) if i >= 1 && i <= ce.q() as usize => i,
        k => return Err(Error::Unsupported(format!("δ-sum of {k:?} needs G_{{𝔫,i}} beyond i = q"))),
    };
    let d = modulus.degree().ok_or_else(|| Error::BadModulus("zero".into()))?;
    let scale = kpoly(ce, &modulus.pow(i as u64));
    let mut coeffs = BTreeMap::new();
    for b in monics_up_to_degree(ce.base(), f.d_bound() + d) {
        let c = match b.div_exact(modulus) {
            Some(a) if a.gcd(modulus).is_one() => &scale * &f.coeff(&a),
            _ => RatFunc::zero(ce.ext()),
        };
        coeffs.insert(b, c);
    }
    Ok(AExpansion::from_map(ce, f.kind(), f.meta().clone(), f.d_bound() + d, coeffs))
}
