//! Named forms, eigensystem checks, the congruences between Eisenstein
//! series and `f_s`, the Eisenstein rank count and local L-factors.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::{linalg, monics_of_degree, monics_up_to_degree, polys_below_degree, Coeff, ConstantExtension, Gf, Poly, QElem, QuotientRing, RatFunc};
use crate::carlitz::{goss_poly, torsion_ring, KPoly, TorsionContext};
use crate::characters::{gauss_thakur, DirichletCharacter};
use crate::error::{Error, Result};
use crate::operators::{hecke_a, hecke_twisted, hecke_u, twist_normalized, twist_raw};
use crate::series::{rescale_arg, shift_by_value, u_of_az, AExpansion, AKind, ModularMeta, Param, TwistedEisenstein, UExpansion};

#[derive(Clone, Debug)]
pub enum FormSpec {
    /// `f_s = sum_a a^{1+s(q-1)} u(az)`, `s >= 1`.
    PetrovFs(u64),
    Delta,
    /// `E = sum_a a u(az)`, quasi-modular.
    FalseEisenstein,
    /// `E_𝔭 = E(z) - 𝔭E(𝔭z)`.
    EisensteinEp(Poly),
    /// `Ê_χ^{(k)} = sum_c χ^{-1}(c) G_k(u(cz))`.
    FrickeEis { chi: DirichletCharacter, k: usize },
    /// `Ẽ_χ^{(k)}`, see [`TwistedEisenstein`].
    TwistedEis { chi: DirichletCharacter, k: usize },
    RawTwistOf(Box<FormSpec>, DirichletCharacter),
    NormalizedTwistOf(Box<FormSpec>, DirichletCharacter),
}

impl FormSpec {
    /// Name with polynomials and characters written in `var`.
    pub fn label(&self, var: &str) -> String {
        match self {
            FormSpec::PetrovFs(s) => format!("f_{s}"),
            FormSpec::Delta => "Delta".into(),
            FormSpec::FalseEisenstein => "E".into(),
            FormSpec::EisensteinEp(p) => format!("E_[{}]", p.to_text(var)),
            FormSpec::FrickeEis { chi, k } => format!("Ehat[{}]^({k})", chi.to_literal(var)),
            FormSpec::TwistedEis { chi, k } => format!("Etilde[{}]^({k})", chi.to_literal(var)),
            FormSpec::RawTwistOf(g, chi) => format!("rawtwist({}, {})", g.label(var), chi.to_literal(var)),
            FormSpec::NormalizedTwistOf(g, chi) => format!("twist({}, {})", g.label(var), chi.to_literal(var)),
        }
    }
}

impl fmt::Display for FormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label("t"))
    }
}

/// What [`build`] produces.
#[derive(Clone, Debug)]
pub enum Built {
    A(AExpansion),
    Twisted(TwistedEisenstein),
    U(UExpansion<QElem>),
}

impl Built {
    /// The `u`-expansion to precision `n`; A-expansions land in the scalar
    /// ring.
    pub fn render(&self, n: usize) -> Result<UExpansion<QElem>> {
        match self {
            Built::A(a) => Ok(a.render(n)?.lift(&QuotientRing::scalars(a.constants()))),
            Built::Twisted(t) => t.render(n),
            Built::U(u) => {
                if u.precision() < n {
                    return Err(Error::PrecisionTooSmall { have: u.precision(), need: n });
                }
                Ok(u.clone().truncate(n))
            }
        }
    }
}

fn kval(ce: ConstantExtension, a: &Poly) -> RatFunc {
    RatFunc::from_poly(ce.lift(a))
}

fn check_sign(chi: &DirichletCharacter, k: usize) -> Result<()> {
    let q1 = chi.constants().q() as u64 - 1;
    if (chi.sign() + k as u64) % q1 != 0 {
        return Err(Error::SignMismatch { sign: chi.sign() as u32, weight: k as u32 });
    }
    Ok(())
}

fn kernel_jmin(ce: ConstantExtension, kind: AKind) -> Result<usize> {
    match kind {
        AKind::Power(i) => Ok(i),
        AKind::Goss(k) => goss_poly(ce, k)?.iter().position(|c| !c.is_zero()).ok_or_else(|| Error::Internal("zero Goss polynomial".into())),
    }
}

/// Smallest degree bound whose A-expansion determines `n` coefficients.
pub fn degree_bound_for(ce: ConstantExtension, kind: AKind, n: usize) -> Result<usize> {
    let j = kernel_jmin(ce, kind)?;
    let q = ce.q() as usize;
    let mut d = 0;
    while j * q.pow(d as u32 + 1) < n {
        d += 1;
    }
    Ok(d)
}

impl FormSpec {
    /// The constants the form lives over: those of its character, if any.
    pub fn constants(&self, ce: ConstantExtension) -> ConstantExtension {
        match self {
            FormSpec::FrickeEis { chi, .. } | FormSpec::TwistedEis { chi, .. } => chi.constants(),
            FormSpec::RawTwistOf(_, chi) | FormSpec::NormalizedTwistOf(_, chi) => chi.constants(),
            _ => ce,
        }
    }

    pub fn meta(&self, ce: ConstantExtension) -> Result<ModularMeta> {
        let ce = self.constants(ce);
        let q = ce.q() as u64;
        Ok(match self {
            FormSpec::PetrovFs(s) => ModularMeta::level_one(ce, 2 + s * (q - 1), 1),
            FormSpec::Delta => ModularMeta::level_one(ce, q * q - 1, 0),
            FormSpec::FalseEisenstein => ModularMeta::level_one(ce, 2, 1),
            FormSpec::EisensteinEp(p) => ModularMeta { level: p.clone(), ..ModularMeta::level_one(ce, 2, 1) },
            FormSpec::FrickeEis { chi, k } => ModularMeta {
                weight: *k as u64,
                typ: *k as u64,
                level: chi.modulus(),
                nebentypus: chi.inverse(),
            },
            FormSpec::TwistedEis { chi, k } => ModularMeta {
                weight: *k as u64,
                typ: 0,
                level: chi.modulus(),
                nebentypus: chi.clone(),
            },
            FormSpec::RawTwistOf(g, chi) | FormSpec::NormalizedTwistOf(g, chi) => {
                crate::operators::twisted_meta(&g.meta(ce)?, chi, &chi.modulus())?
            }
        })
    }

    /// The A-expansion of a catalog form, with coefficients for all monics
    /// of degree `<= d_bound`.
    pub fn build_a(&self, ce: ConstantExtension, d_bound: usize) -> Result<AExpansion> {
        let ce = self.constants(ce);
        let q = ce.q() as u64;
        let meta = self.meta(ce)?;
        Ok(match self {
            FormSpec::PetrovFs(0) => {
                return Err(Error::Precondition("f_0 is the false Eisenstein series; use s >= 1".into()))
            }
            FormSpec::PetrovFs(s) => AExpansion::from_fn(ce, AKind::Power(1), meta, d_bound, |a| kval(ce, &a.pow(1 + s * (q - 1)))),
            FormSpec::Delta => AExpansion::from_fn(ce, AKind::Power(q as usize - 1), meta, d_bound, |a| kval(ce, &a.pow(q * (q - 1)))),
            FormSpec::FalseEisenstein => AExpansion::from_fn(ce, AKind::Power(1), meta, d_bound, |a| kval(ce, a)),
            FormSpec::EisensteinEp(p) => {
                if !p.is_monic() || !p.is_irreducible() {
                    return Err(Error::NotIrreducible(p.to_string()));
                }
                AExpansion::from_fn(ce, AKind::Power(1), meta, d_bound, |a| {
                    if a.gcd(p).is_one() {
                        kval(ce, a)
                    } else {
                        RatFunc::zero(ce.ext())
                    }
                })
            }
            FormSpec::FrickeEis { chi, k } => {
                if !chi.is_trivial() && !chi.is_primitive() {
                    return Err(Error::NotPrimitive);
                }
                check_sign(chi, *k)?;
                let inv = chi.inverse();
                let m = chi.modulus();
                // forced to vanish on c not coprime to 𝔭, also for trivial χ
                AExpansion::from_fn(ce, AKind::Goss(*k), meta, d_bound, |c| {
                    if c.gcd(&m).is_one() {
                        inv.eval_k(c)
                    } else {
                        RatFunc::zero(ce.ext())
                    }
                })
            }
            _ => return Err(Error::Unsupported(format!("{self} has no A-expansion"))),
        })
    }

    /// Builds the form at precision `n`: A-expansions get the smallest
    /// sufficient degree bound, twists are applied to the rendered inner
    /// form.
    pub fn build(&self, ce: ConstantExtension, n: usize) -> Result<Built> {
        let ce = self.constants(ce);
        match self {
            FormSpec::TwistedEis { chi, k } => {
                let ctx = TorsionContext::new(ce, &chi.modulus())?;
                Ok(Built::Twisted(TwistedEisenstein::new(chi, *k, &ctx)?))
            }
            FormSpec::RawTwistOf(g, chi) | FormSpec::NormalizedTwistOf(g, chi) => {
                let ctx = TorsionContext::new(ce, &chi.modulus())?;
                let f = g.build(ce, n)?.render(n)?;
                let out = match self {
                    FormSpec::RawTwistOf(..) => twist_raw(&f, chi, &ctx)?,
                    _ => twist_normalized(&f, chi, &ctx)?,
                };
                Ok(Built::U(out))
            }
            _ => {
                let kind = match self {
                    FormSpec::Delta => AKind::Power(ce.q() as usize - 1),
                    FormSpec::FrickeEis { k, .. } => AKind::Goss(*k),
                    _ => AKind::Power(1),
                };
                Ok(Built::A(self.build_a(ce, degree_bound_for(ce, kind, n)?)?))
            }
        }
    }
}

/// `sum_a χ^{-1}(a) G_k(1/exp_value(a))`, checked nonzero and in the
/// `χ`-eigenspace of the Galois action.
pub fn eis_constant_term(chi: &DirichletCharacter, k: usize, ctx: &TorsionContext) -> Result<QElem> {
    let c = TwistedEisenstein::new(chi, k, ctx)?.constant_term()?;
    if c.is_zero() {
        return Err(Error::Internal(format!("constant term vanishes for {chi}, k = {k}")));
    }
    for b in ctx.residues().into_iter().filter(|b| b.gcd(ctx.modulus()).is_one()) {
        if ctx.galois(&c, &b) != c.scale(&chi.eval_k(&b)) {
            return Err(Error::Internal(format!("constant term is not a {chi}-eigenvector at b = {b}")));
        }
    }
    Ok(c)
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub params: BTreeMap<String, String>,
    pub precision: usize,
    pub pass: bool,
    /// First discrepancy, if any.
    pub witness: Option<String>,
}

impl VerificationReport {
    pub fn new(identity: &str, params: &[(&str, String)], precision: usize, witness: Option<String>) -> VerificationReport {
        VerificationReport {
            identity: identity.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            precision,
            pass: witness.is_none(),
            witness,
        }
    }
}

/// Index and both sides of the first differing coefficient.
pub fn first_difference<R: Coeff + PartialEq>(a: &UExpansion<R>, b: &UExpansion<R>) -> Option<String> {
    let n = a.precision().max(b.precision());
    let zero = a.zero_elem();
    for i in 0..n {
        let x = a.coeffs().get(i).unwrap_or(zero);
        let y = b.coeffs().get(i).unwrap_or(zero);
        if x != y {
            return Some(format!("u^{i}: {} != {}", x.to_text("t"), y.to_text("t")));
        }
    }
    None
}

/// The eigenvalue the catalog predicts for `T_𝔮`.
pub fn expected_eigenvalue(spec: &FormSpec, ce: ConstantExtension, qq: &Poly) -> Result<RatFunc> {
    let ce = spec.constants(ce);
    let q = ce.q() as u64;
    let qk = |k: u64| kval(ce, &qq.pow(k));
    Ok(match spec {
        FormSpec::PetrovFs(_) | FormSpec::FalseEisenstein | FormSpec::EisensteinEp(_) => qk(1),
        FormSpec::Delta => qk(q - 1),
        FormSpec::FrickeEis { k, .. } => qk(*k as u64),
        FormSpec::TwistedEis { chi, k } => qk(*k as u64).scale(chi.eval(qq)),
        FormSpec::RawTwistOf(g, chi) | FormSpec::NormalizedTwistOf(g, chi) => expected_eigenvalue(g, ce, qq)?.scale(chi.eval(qq)),
    })
}

/// Applies `T_𝔮` with the engine matching the built object and compares
/// with the expected eigenvalue times the form. For `u`-expansions the
/// input is built at `n|𝔮|` so the output has precision `n`.
pub fn verify_eigensystem(spec: &FormSpec, ce: ConstantExtension, qq: &Poly, n: usize) -> Result<VerificationReport> {
    let ce = spec.constants(ce);
    let lam = expected_eigenvalue(spec, ce, qq)?;
    let is_u = matches!(spec, FormSpec::RawTwistOf(..) | FormSpec::NormalizedTwistOf(..));
    let built = spec.build(ce, if is_u { n * qq.abs() as usize } else { n })?;
    let witness = match &built {
        Built::A(f) => {
            let t = hecke_a(f, qq)?;
            t.coeffs().iter().find_map(|(a, c)| {
                let want = &lam * &f.coeff(a);
                (*c != want).then(|| format!("c_{a}: {} != {}", c.to_text("t"), want.to_text("t")))
            })
        }
        Built::Twisted(e) => {
            let t = hecke_twisted(e, qq)?;
            t.weights().iter().find_map(|(a, w)| {
                let want = &lam * &e.weight_of(a);
                (*w != want).then(|| format!("w_{a}: {} != {}", w.to_text("t"), want.to_text("t")))
            })
        }
        Built::U(f) => {
            let t = hecke_u(f, qq)?;
            first_difference(&t, &f.clone().truncate(t.precision()).scale_k(&lam))
        }
    };
    Ok(VerificationReport::new(
        "hecke-eigensystem",
        &[("form", spec.to_string()), ("q", ce.q().to_string()), ("prime", qq.to_string()), ("eigenvalue", lam.to_text("t"))],
        n,
        witness,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CongruenceKind {
    /// `Ê_{χ_{𝔭,s}}^{(1)} ≡ f_s mod (θ - ζ)`.
    SF,
    /// `(g(χ^{-1})/𝔭)(Ẽ(𝔭z) - Ẽ(z)) ≡ ϖ_χ f_s mod (θ - ζ)`.
    TwistedSF,
}

/// `χ_{𝔭,s} = χ_ζ^{|𝔭| - 2 - s(q-1)}`.
pub fn chi_p_s(ce: ConstantExtension, p: &Poly, s: u64) -> Result<DirichletCharacter> {
    let q = ce.q() as u64;
    let e = p.abs() - 2 - s * (q - 1);
    Ok(DirichletCharacter::chi_zeta(ce, p)?.pow(e))
}

fn constants_for(m: &Poly) -> Result<ConstantExtension> {
    let primes = m.factor_squarefree()?;
    ConstantExtension::for_primes(m.field().order(), primes.iter())
}

/// Whether `x` is a polynomial in `θ` vanishing at `θ = ζ`.
fn divisible_at(x: &RatFunc, zeta: Gf) -> bool {
    x.is_poly() && x.num().eval(zeta).is_zero()
}

pub fn congruence_check(kind: CongruenceKind, p: &Poly, s: u64, n: usize) -> Result<VerificationReport> {
    let ce = constants_for(p)?;
    let q = ce.q() as u64;
    if !p.is_irreducible() {
        return Err(Error::NotIrreducible(p.to_string()));
    }
    if s == 0 || p.abs() <= 2 + s * (q - 1) {
        return Err(Error::Precondition(format!("need s >= 1 and |𝔭| > 2 + s(q-1), got |𝔭| = {} and s = {s}", p.abs())));
    }
    let zeta = ce.root_of(p)?;
    let chi = chi_p_s(ce, p, s)?;
    let fs = FormSpec::PetrovFs(s).build(ce, n)?.render(n)?;
    let witness = match kind {
        CongruenceKind::SF => {
            let e = FormSpec::FrickeEis { chi: chi.clone(), k: 1 }.build(ce, n)?.render(n)?;
            (0..n).find_map(|i| {
                let d = e.coeff(i).sub(fs.coeff(i));
                let ok = d.as_scalar().is_some_and(|x| divisible_at(x, zeta));
                (!ok).then(|| format!("u^{i}: {}", d.to_text("t")))
            })
        }
        CongruenceKind::TwistedSF => {
            let ctx = TorsionContext::new(ce, p)?;
            let et = TwistedEisenstein::new(&chi, 1, &ctx)?.render(n)?;
            let g = gauss_thakur(&chi.inverse(), &ctx)?.scale(&kval(ce, p).inv()?);
            let lhs = rescale_arg(ce, &et, p)?.sub(&et).scale(&g);
            let rhs = twist_normalized(&fs.embed_into(ctx.ring())?, &chi, &ctx)?;
            (0..n).find_map(|i| {
                let d = lhs.coeff(i).sub(rhs.coeff(i));
                match d.as_scalar() {
                    None => Some(format!("u^{i}: λ-part survives: {}", d.to_text("t"))),
                    Some(x) if !divisible_at(x, zeta) => Some(format!("u^{i}: {}", x.to_text("t"))),
                    Some(_) => None,
                }
            })
        }
    };
    let name = match kind {
        CongruenceKind::SF => "congruence-sf",
        CongruenceKind::TwistedSF => "congruence-twisted-sf",
    };
    Ok(VerificationReport::new(name, &[("p", p.to_string()), ("s", s.to_string()), ("chi", chi.to_literal("t"))], n, witness))
}

/// `ϖ_χ Ê_χ^{(k)} = (g(χ^{-1})/𝔭)(Ẽ_χ^{(k)}(𝔭z) - Ẽ_χ^{(k)}(z))`.
pub fn ehat_twist_identity(chi: &DirichletCharacter, k: usize, n: usize) -> Result<VerificationReport> {
    let ce = chi.constants();
    let p = chi.modulus();
    let ctx = TorsionContext::new(ce, &p)?;
    let ehat = FormSpec::FrickeEis { chi: chi.clone(), k }.build(ce, n)?.render(n)?;
    let lhs = twist_normalized(&ehat.embed_into(ctx.ring())?, chi, &ctx)?;
    let et = TwistedEisenstein::new(chi, k, &ctx)?.render(n)?;
    let g = gauss_thakur(&chi.inverse(), &ctx)?.scale(&kval(ce, &p).inv()?);
    let rhs = rescale_arg(ce, &et, &p)?.sub(&et).scale(&g);
    Ok(VerificationReport::new(
        "ehat-twist",
        &[("chi", chi.to_literal("t")), ("k", k.to_string())],
        n,
        first_difference(&lhs, &rhs),
    ))
}

/// The characters mod `𝔭` admissible in weight `k`: sign `≡ -k`.
pub fn admissible_characters(ce: ConstantExtension, p: &Poly, k: usize) -> Result<Vec<DirichletCharacter>> {
    Ok(DirichletCharacter::all_mod(ce, p)?.into_iter().filter(|c| check_sign(c, k).is_ok()).collect())
}

/// Rank of `{Ẽ_χ^{(k)}, Ê_χ^{(k)}}` over the admissible `χ` mod `𝔭`,
/// truncated at `n`.
pub fn eisenstein_rank(p: &Poly, k: usize, n: usize) -> Result<usize> {
    if !p.is_monic() || !p.is_irreducible() {
        return Err(Error::NotIrreducible(p.to_string()));
    }
    let ce = constants_for(p)?;
    let ctx = TorsionContext::new(ce, p)?;
    let mut rows = Vec::new();
    for chi in admissible_characters(ce, p, k)? {
        let et = TwistedEisenstein::new(&chi, k, &ctx)?.render(n)?;
        rows.push(et.coeffs().to_vec());
        let eh = FormSpec::FrickeEis { chi, k }.build(ce, n)?.render(n)?.embed_into(ctx.ring())?;
        rows.push(eh.coeffs().to_vec());
    }
    linalg::rank(&rows)
}

/// `2(|𝔭| - 1)/(q - 1)`.
pub fn expected_eisenstein_rank(p: &Poly) -> usize {
    let q = p.field().order() as u64;
    (2 * (p.abs() - 1) / (q - 1)) as usize
}

/// Brute-force check of
/// `sum_β G_k(u(c(z+β)/𝔮 + a/𝔭)) = 𝔮^k G_k(u(cz + a𝔮/𝔭))` (zero when
/// `𝔮 | c`) in the joint `𝔭𝔮`-torsion ring, as series in `v = u(z/𝔮)`,
/// over nonzero `c` of degree `<= 1` and all units `a` mod `𝔭`.
pub fn distribution_lemma_check(p: &Poly, qq: &Poly, k: usize, nv: usize) -> Result<VerificationReport> {
    if p == qq {
        return Err(Error::Precondition("𝔭 and 𝔮 must differ".into()));
    }
    let ce = ConstantExtension::for_primes(p.field().order(), [p, qq])?;
    let ring = torsion_ring(ce, &[p.clone(), qq.clone()]);
    let ctx_p = TorsionContext::in_ring(&ring, p)?;
    let ctx_q = TorsionContext::in_ring(&ring, qq)?;
    let g = goss_poly(ce, k)?;
    let mut gser = vec![QElem::zero(&ring); nv];
    for (j, c) in g.iter().enumerate().take(nv) {
        gser[j] = QElem::from_k(&ring, c.clone());
    }
    let gser = UExpansion::new(QElem::zero(&ring), gser);
    let sub = Param::Sub(qq.clone());
    let qk = kval(ce, &qq.pow(k as u64));
    let mut witness = None;
    'outer: for c in polys_below_degree(ce.base(), 2).into_iter().filter(|c| !c.is_zero()) {
        let x = u_of_az(ce, &c, nv)?.with_param(sub.clone());
        let y = u_of_az(ce, &(&c * qq), nv)?.with_param(sub.clone());
        for a in ctx_p.residues().into_iter().filter(|a| !a.is_zero()) {
            let lam_a = ctx_p.exp_value(&a);
            let mut lhs = UExpansion::zeros(QElem::zero(&ring), nv).with_param(sub.clone());
            for beta in ctx_q.residues() {
                let mu = ctx_q.exp_value(&(&c * &beta)).add(&lam_a);
                lhs = lhs.add(&shift_by_value(&gser, &mu).compose_k(&x)?);
            }
            let rhs = if c.gcd(qq).is_one() {
                let nu = ctx_p.exp_value(&(&a * qq));
                shift_by_value(&gser, &nu).compose_k(&y)?.scale_k(&qk)
            } else {
                UExpansion::zeros(QElem::zero(&ring), nv).with_param(sub.clone())
            };
            if let Some(w) = first_difference(&lhs, &rhs) {
                witness = Some(format!("c = {c}, a = {a}: {w}"));
                break 'outer;
            }
        }
    }
    Ok(VerificationReport::new(
        "distribution-lemma",
        &[("p", p.to_string()), ("prime", qq.to_string()), ("k", k.to_string())],
        nv,
        witness,
    ))
}

/// `1 - λx`, the inverse local factor at a prime with eigenvalue `λ`.
pub fn local_l_factor(lambda: &RatFunc) -> KPoly {
    let one = RatFunc::one(lambda.field());
    if lambda.is_zero() {
        vec![one]
    } else {
        vec![one, -lambda]
    }
}

/// Eigenvalues and local factors of a catalog form at every monic prime
/// of degree `<= max_deg` coprime to its level, each verified.
pub fn local_factor_table(spec: &FormSpec, ce: ConstantExtension, max_deg: usize, n: usize) -> Result<Vec<(Poly, RatFunc, VerificationReport)>> {
    let ce = spec.constants(ce);
    let level = spec.meta(ce)?.level;
    let mut out = Vec::new();
    for d in 1..=max_deg {
        for qq in monics_of_degree(ce.base(), d) {
            if !qq.is_irreducible() || qq.divides(&level) {
                continue;
            }
            let rep = verify_eigensystem(spec, ce, &qq, n)?;
            out.push((qq.clone(), expected_eigenvalue(spec, ce, &qq)?, rep));
        }
    }
    Ok(out)
}

/// The pairs `(j, i)` with `1 <= i, j <= range` for which
/// `sum_β β(ζ)^{|𝔫|-1-i} exp_value(β)^j != 0`, in row order.
pub fn nonzero_pairs(modulus: &Poly, range: usize) -> Result<Vec<(usize, usize)>> {
    if !modulus.is_monic() || !modulus.is_irreducible() {
        return Err(Error::NotIrreducible(modulus.to_string()));
    }
    let ce = constants_for(modulus)?;
    let ctx = TorsionContext::new(ce, modulus)?;
    let zeta = ce.root_of(modulus)?;
    let order = modulus.abs() as usize;
    if range >= order {
        return Err(Error::Precondition(format!("range {range} must stay below |𝔫| = {order}")));
    }
    let betas: Vec<Poly> = ctx.residues().into_iter().filter(|b| !b.is_zero()).collect();
    let at_zeta: Vec<Gf> = betas.iter().map(|b| ce.lift(b).eval(zeta)).collect();
    let mut powers: Vec<QElem> = betas.iter().map(|b| ctx.exp_value(b)).collect();
    let bases = powers.clone();
    let mut out = Vec::new();
    for j in 1..=range {
        if j > 1 {
            for (p, b) in powers.iter_mut().zip(&bases) {
                *p = p.mul(b);
            }
        }
        for i in 1..=range {
            let e = (order - 1 - i) as u64;
            let mut acc = QElem::zero(ctx.ring());
            for (p, z) in powers.iter().zip(&at_zeta) {
                let w = z.pow(e);
                if !w.is_zero() {
                    acc = acc.add(&p.scale(&RatFunc::constant(w)));
                }
            }
            if !acc.is_zero() {
                out.push((j, i));
            }
        }
    }
    Ok(out)
}

/// Monic primes of degree `1..=max_deg`.
pub fn primes_up_to(ce: ConstantExtension, max_deg: usize) -> Vec<Poly> {
    monics_up_to_degree(ce.base(), max_deg).into_iter().filter(|p| p.degree().unwrap_or(0) >= 1 && p.is_irreducible()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;

    fn poly(q: u32, s: &str) -> Poly {
        Poly::parse(Field::with_order(q).unwrap(), s, "t").unwrap()
    }

    #[test]
    fn catalog_basics() {
        let ce = ConstantExtension::new(3, 1).unwrap();
        assert!(FormSpec::PetrovFs(0).build(ce, 9).is_err());
        let p = poly(3, "t");
        let ep = FormSpec::EisensteinEp(p.clone()).build_a(ce, 2).unwrap();
        assert!(ep.coeff(&p).is_zero());
        let d = FormSpec::Delta.build(ce, 18).unwrap().render(18).unwrap();
        assert_eq!(d.order(), Some(2));
        for s in [FormSpec::PetrovFs(1), FormSpec::FalseEisenstein, FormSpec::EisensteinEp(p)] {
            assert_eq!(s.build(ce, 9).unwrap().render(9).unwrap().order(), Some(1));
        }
    }

    #[test]
    fn fricke_eis_coefficients_and_sign() {
        let p = poly(3, "t^2+1");
        let ce = constants_for(&p).unwrap();
        let chi = DirichletCharacter::chi_zeta(ce, &p).unwrap();
        let f = FormSpec::FrickeEis { chi: chi.clone(), k: 1 }.build_a(ce, 2).unwrap();
        for (c, v) in f.coeffs() {
            assert_eq!(*v, chi.inverse().eval_k(c));
        }
        assert!(matches!(FormSpec::FrickeEis { chi: chi.clone(), k: 2 }.build_a(ce, 1), Err(Error::SignMismatch { .. })));
        assert!(matches!(FormSpec::TwistedEis { chi, k: 2 }.build(ce, 9), Err(Error::SignMismatch { .. })));
    }

    #[test]
    fn l_factor() {
        let ce = ConstantExtension::new(3, 1).unwrap();
        assert_eq!(local_l_factor(&RatFunc::zero(ce.ext())).len(), 1);
        let t = kval(ce, &poly(3, "t"));
        assert_eq!(local_l_factor(&t), vec![RatFunc::one(ce.ext()), -&t]);
    }

    #[test]
    fn congruence_precondition() {
        assert!(matches!(congruence_check(CongruenceKind::SF, &poly(3, "t"), 1, 9), Err(Error::Precondition(_))));
    }

    #[test]
    fn small_table() {
        assert!(nonzero_pairs(&poly(5, "t^2+2"), 0).unwrap().is_empty());
    }
}
