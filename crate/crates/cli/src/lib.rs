//! The `drinfeld` command line: the nonvanishing table, expansions, twists,
//! Hecke images and the verification suites.

use std::fmt::Write as _;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use drinfeld_core::algebra::{polys_below_degree, ConstantExtension, Field, Poly, QElem, QuotientRing};
use drinfeld_core::carlitz::TorsionContext;
use drinfeld_core::characters::{convolve, jacobi_factor, DirichletCharacter};
use drinfeld_core::forms::{
    admissible_characters, congruence_check, eisenstein_rank, expected_eisenstein_rank, first_difference, nonzero_pairs,
    primes_up_to, verify_eigensystem, CongruenceKind, FormSpec, VerificationReport,
};
use drinfeld_core::operators::{hecke_u, twist_monomial_closed, twist_normalized, twist_raw};
use drinfeld_core::series::{ModularMeta, UExpansion};

/// The nonzero pairs for `q = 5`, `𝔫 = θ^2 + 2`, range 23, row by row.
pub const REFERENCE_PAIRS: &[(usize, &[usize])] = &[
    (1, &[1, 5]),
    (2, &[2, 6, 10]),
    (3, &[3, 7, 11, 15]),
    (4, &[4, 8, 12, 16, 20]),
    (5, &[1, 5]),
    (6, &[2, 6, 10]),
    (7, &[3, 7, 11, 15]),
    (8, &[4, 8, 12, 16, 20]),
    (9, &[1, 5, 9, 13, 17, 21]),
    (10, &[2, 6, 10]),
    (11, &[3, 7, 11, 15]),
    (12, &[4, 8, 12, 16, 20]),
    (13, &[1, 5, 9, 13, 17, 21]),
    (14, &[2, 6, 10, 14, 18, 22]),
    (15, &[3, 7, 11, 15]),
    (16, &[4, 8, 12, 16, 20]),
    (17, &[1, 5, 9, 13, 17, 21]),
    (18, &[2, 6, 10, 14, 18, 22]),
    (19, &[3, 7, 11, 15, 19, 23]),
    (20, &[4, 8, 12, 16, 20]),
    (21, &[1, 5, 9, 13, 17, 21]),
    (22, &[2, 6, 10, 14, 18, 22]),
    (23, &[3, 7, 11, 15, 19, 23]),
];

pub fn reference_pairs() -> Vec<(usize, usize)> {
    REFERENCE_PAIRS.iter().flat_map(|(j, is)| is.iter().map(move |&i| (*j, i))).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    Eigen,
    TwistCommute,
    Convolution,
    Normproj,
    Congruence,
    Rank,
    Table,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormName {
    /// f_s (choose s with --s).
    Fs,
    Delta,
    /// The false Eisenstein series E.
    E,
    /// E_p for the prime given by --modulus.
    Ep,
    /// Ehat_chi of weight --weight.
    Ehat,
    /// Etilde_chi of weight --weight.
    Etilde,
    /// u^i with metadata from --weight and --type.
    Monomial,
}

#[derive(Debug, Parser)]
#[command(name = "drinfeld", version, about = "Exact u-expansions, twists and Hecke operators for Drinfeld modular forms")]
pub struct Cli {
    /// Size of the constant field (default 5 for the table, 3 otherwise).
    #[arg(long, global = true)]
    pub q: Option<u32>,
    /// Symbol for θ in polynomial literals and output.
    #[arg(long, global = true, default_value = "t")]
    pub var: String,
    /// Number of u-expansion coefficients.
    #[arg(long, global = true, default_value_t = 30)]
    pub precision: usize,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Modulus of the character, or the prime level.
    #[arg(long, global = true)]
    pub modulus: Option<String>,
    /// A character literal such as `chi{p=t^2+1; zeta=auto; e=3}`, or
    /// comma-separated exponents for the primes of --modulus.
    #[arg(long = "char", global = true)]
    pub chi: Option<String>,
    /// Weight of Ehat/Etilde/monomial forms; upper weight in the eigen and rank suites
    #[arg(long, global = true)]
    pub weight: Option<usize>,
    /// Type of the monomial form
    #[arg(long = "type", global = true)]
    pub typ: Option<u64>,
    /// Index s of f_s
    #[arg(long, global = true)]
    pub s: Option<u64>,
    /// Largest degree of the primes used for Hecke operators.
    #[arg(long, global = true)]
    pub hecke_degree_bound: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Pairs (j, i) with sum_β β(ζ)^{|n|-1-i} exp(π̃β/n)^j nonzero.
    Table {
        #[arg(long, default_value_t = 23)]
        range: usize,
    },
    /// Run verification suites; exit status 0 iff every check passes.
    Verify {
        #[arg(long, value_enum, required = true)]
        suite: Vec<Suite>,
    },
    /// Print a u-expansion.
    Expand {
        #[arg(long, value_enum, default_value = "fs")]
        form: FormName,
        #[arg(long, default_value_t = 1)]
        power: usize,
    },
    /// Print the normalized (or raw) twist of a form by --char.
    Twist {
        #[arg(long, value_enum, default_value = "fs")]
        form: FormName,
        #[arg(long, default_value_t = 1)]
        power: usize,
        #[arg(long)]
        raw: bool,
    },
    /// Print T_q of a form; the input is built at precision N|q|.
    Hecke {
        #[arg(long, value_enum, default_value = "fs")]
        form: FormName,
        #[arg(long, default_value_t = 1)]
        power: usize,
        /// The prime q.
        #[arg(long)]
        prime: String,
    },
}

/// Rendered output and whether every check passed.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub ok: bool,
}

/// Caps rayon's pool at `DRINFELD_THREADS` when set.
pub fn init_threads() {
    if let Some(n) = std::env::var("DRINFELD_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn field(q: u32) -> Result<Field> {
    Field::with_order(q).map_err(|e| anyhow!("--q {q}: {e}"))
}

fn parse_poly(q: u32, s: &str, var: &str) -> Result<Poly> {
    Poly::parse(field(q)?, s, var).map_err(|e| anyhow!("polynomial '{s}': {e}"))
}

fn constants(q: u32, moduli: &[&Poly]) -> Result<ConstantExtension> {
    let mut primes = Vec::new();
    for m in moduli {
        for p in m.factor_squarefree()? {
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
    }
    Ok(ConstantExtension::for_primes(q, primes.iter())?)
}

impl Cli {
    fn q_or(&self, default: u32) -> u32 {
        self.q.unwrap_or(default)
    }

    /// --modulus, or `default` written in `t` with the chosen symbol
    /// substituted.
    fn modulus_or(&self, q: u32, default: &str) -> Result<Poly> {
        match &self.modulus {
            Some(m) => parse_poly(q, m, &self.var),
            None => parse_poly(q, &default.replace('t', &self.var), &self.var),
        }
    }

    /// The character given by --char modulo `m`; defaults to exponent 1 at
    /// every prime.
    fn character(&self, ce: ConstantExtension, m: &Poly) -> Result<DirichletCharacter> {
        let lit = self.chi.as_deref().unwrap_or("").trim();
        if lit.starts_with("chi{") {
            let chi = DirichletCharacter::parse(ce, lit, &self.var).map_err(|e| anyhow!("--char: {e}"))?;
            if chi.modulus() != *m {
                bail!("--char has modulus {}, expected {}", chi.modulus().to_text(&self.var), m.to_text(&self.var));
            }
            return Ok(chi);
        }
        let primes = m.factor_squarefree()?;
        let exps: Vec<u64> = if lit.is_empty() {
            vec![1; primes.len()]
        } else {
            lit.split(',').map(|x| x.trim().parse::<u64>().with_context(|| format!("--char exponent '{x}'"))).collect::<Result<_>>()?
        };
        if exps.len() != primes.len() {
            bail!("--char needs {} exponents for the primes of {}", primes.len(), m.to_text(&self.var));
        }
        let parts: Vec<(Poly, u64)> = primes.into_iter().zip(exps).collect();
        Ok(DirichletCharacter::new(ce, &parts)?)
    }

    /// The chosen form as a catalog spec or a bare monomial.
    fn form(&self, name: FormName, power: usize, q: u32, extra: &[&Poly]) -> Result<(Target, ConstantExtension)> {
        let needs_modulus = matches!(name, FormName::Ep | FormName::Ehat | FormName::Etilde);
        let m = if needs_modulus || self.modulus.is_some() { Some(self.modulus_or(q, "t")?) } else { None };
        let mut moduli: Vec<&Poly> = extra.to_vec();
        if let Some(m) = &m {
            moduli.push(m);
        }
        let ce = constants(q, &moduli)?;
        let k = self.weight.unwrap_or(1);
        let spec = match name {
            FormName::Fs => FormSpec::PetrovFs(self.s.unwrap_or(1)),
            FormName::Delta => FormSpec::Delta,
            FormName::E => FormSpec::FalseEisenstein,
            FormName::Ep => FormSpec::EisensteinEp(m.clone().unwrap()),
            FormName::Ehat => FormSpec::FrickeEis { chi: self.character(ce, m.as_ref().unwrap())?, k },
            FormName::Etilde => FormSpec::TwistedEis { chi: self.character(ce, m.as_ref().unwrap())?, k },
            FormName::Monomial => {
                let meta = ModularMeta::level_one(ce, self.weight.unwrap_or(2) as u64, self.typ.unwrap_or(1));
                return Ok((Target::Monomial(power, meta), ce));
            }
        };
        Ok((Target::Spec(spec), ce))
    }
}

enum Target {
    Spec(FormSpec),
    Monomial(usize, ModularMeta),
}

impl Target {
    fn label(&self, var: &str) -> String {
        match self {
            Target::Spec(s) => s.label(var),
            Target::Monomial(i, _) => format!("u^{i}"),
        }
    }

    fn render(&self, ce: ConstantExtension, n: usize) -> Result<UExpansion<QElem>> {
        Ok(match self {
            Target::Spec(s) => s.build(ce, n)?.render(n)?,
            Target::Monomial(i, meta) => {
                UExpansion::monomial(QElem::one(&QuotientRing::scalars(ce)), *i, n).with_meta(Some(meta.clone()))
            }
        })
    }
}

pub fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Table { range } => cmd_table(cli, *range),
        Command::Verify { suite } => cmd_verify(cli, suite),
        Command::Expand { form, power } => {
            let q = cli.q_or(3);
            let (t, ce) = cli.form(*form, *power, q, &[])?;
            let f = t.render(ce, cli.precision)?;
            Ok(Output { text: emit_series(cli, &t.label(&cli.var), &f), ok: true })
        }
        Command::Twist { form, power, raw } => {
            let q = cli.q_or(3);
            let m = cli.modulus_or(q, "t")?;
            let (t, ce) = cli.form(*form, *power, q, &[&m])?;
            let chi = cli.character(ce, &m)?;
            let ctx = TorsionContext::new(ce, &m)?;
            let f = t.render(ce, cli.precision)?;
            let out = if *raw { twist_raw(&f, &chi, &ctx)? } else { twist_normalized(&f, &chi, &ctx)? };
            let label = format!("{}({}, {})", if *raw { "rawtwist" } else { "twist" }, t.label(&cli.var), chi.to_literal(&cli.var));
            Ok(Output { text: emit_series(cli, &label, &out), ok: true })
        }
        Command::Hecke { form, power, prime } => {
            let q = cli.q_or(3);
            let qq = parse_poly(q, prime, &cli.var)?;
            if !qq.is_monic() || !qq.is_irreducible() {
                bail!("--prime {prime} is not a monic irreducible polynomial");
            }
            let (t, ce) = cli.form(*form, *power, q, &[])?;
            let big = cli.precision * qq.abs() as usize;
            if big > 2000 {
                eprintln!("warning: Hecke input precision {big} = N|q| is large");
            }
            let f = t.render(ce, big)?;
            let out = hecke_u(&f, &qq)?;
            let label = format!("T_[{}] {}", qq.to_text(&cli.var), t.label(&cli.var));
            Ok(Output { text: emit_series(cli, &label, &out), ok: true })
        }
    }
}

fn emit_series(cli: &Cli, label: &str, f: &UExpansion<QElem>) -> String {
    let var = &cli.var;
    match cli.format {
        Format::Text => format!("{label} = {}\n", f.to_text(var)),
        Format::Json => {
            let coeffs: Vec<String> = f.coeffs().iter().map(|c| c.to_text(var)).collect();
            let v = json!({ "form": label, "precision": f.precision(), "meta": f.meta(), "coeffs": coeffs });
            format!("{v}\n")
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["index", "coefficient"]).unwrap();
            for (i, c) in f.coeffs().iter().enumerate() {
                w.write_record([i.to_string(), c.to_text(var)]).unwrap();
            }
            String::from_utf8(w.into_inner().unwrap()).unwrap()
        }
    }
}

fn cmd_table(cli: &Cli, range: usize) -> Result<Output> {
    let q = cli.q_or(5);
    let m = cli.modulus_or(q, "t^2+2")?;
    let pairs = if range == 0 { Vec::new() } else { nonzero_pairs(&m, range)? };
    Ok(Output { text: format_table(cli.format, q, &m.to_text(&cli.var), range, &pairs), ok: true })
}

/// Row-grouped by `j`: `[j, i]` entries separated by commas, the last
/// row closed by a period.
pub fn format_table(format: Format, q: u32, modulus: &str, range: usize, pairs: &[(usize, usize)]) -> String {
    match format {
        Format::Text => {
            if pairs.is_empty() {
                return String::new();
            }
            let mut rows: Vec<Vec<String>> = Vec::new();
            let mut last = None;
            for (j, i) in pairs {
                if last != Some(*j) {
                    rows.push(Vec::new());
                    last = Some(*j);
                }
                rows.last_mut().unwrap().push(format!("[{j}, {i}]"));
            }
            let mut out = String::from("[j,i]:\n\n");
            let n = rows.len();
            for (r, row) in rows.iter().enumerate() {
                let end = if r + 1 == n { "." } else { "," };
                let _ = writeln!(out, "{}{end}", row.join(", "));
            }
            out
        }
        Format::Json => {
            let v = json!({ "q": q, "modulus": modulus, "range": range, "pairs": pairs });
            format!("{v}\n")
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["j", "i"]).unwrap();
            for (j, i) in pairs {
                w.write_record([j.to_string(), i.to_string()]).unwrap();
            }
            String::from_utf8(w.into_inner().unwrap()).unwrap()
        }
    }
}

type Job = Box<dyn Fn() -> Result<VerificationReport> + Send + Sync>;

fn job(f: impl Fn() -> Result<VerificationReport> + Send + Sync + 'static) -> Job {
    Box::new(f)
}

fn cmd_verify(cli: &Cli, suites: &[Suite]) -> Result<Output> {
    let mut chosen: Vec<Suite> = if suites.contains(&Suite::All) {
        vec![Suite::Eigen, Suite::TwistCommute, Suite::Convolution, Suite::Normproj, Suite::Congruence, Suite::Rank, Suite::Table]
    } else {
        suites.to_vec()
    };
    chosen.sort();
    chosen.dedup();
    let mut jobs: Vec<(Suite, Job)> = Vec::new();
    for s in chosen {
        for j in suite_jobs(cli, s)? {
            jobs.push((s, j));
        }
    }
    // collect keeps the job order, whatever the completion order
    let reports: Vec<VerificationReport> = jobs
        .par_iter()
        .map(|(s, j)| {
            j().unwrap_or_else(|e| VerificationReport::new(suite_name(*s), &[], 0, Some(format!("error: {e}"))))
        })
        .collect();
    let ok = reports.iter().all(|r| r.pass);
    Ok(Output { text: format_reports(cli.format, &reports), ok })
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Eigen => "eigen",
        Suite::TwistCommute => "twist-commute",
        Suite::Convolution => "convolution",
        Suite::Normproj => "normproj",
        Suite::Congruence => "congruence",
        Suite::Rank => "rank",
        Suite::Table => "table",
        Suite::All => "all",
    }
}

fn params_text(r: &VerificationReport) -> String {
    r.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
}

pub fn format_reports(format: Format, reports: &[VerificationReport]) -> String {
    match format {
        Format::Text => {
            let mut out = String::new();
            for r in reports {
                let status = if r.pass { "PASS" } else { "FAIL" };
                let _ = write!(out, "{status} {} [{}] N={}", r.identity, params_text(r), r.precision);
                if let Some(w) = &r.witness {
                    let _ = write!(out, " witness: {w}");
                }
                out.push('\n');
            }
            let passed = reports.iter().filter(|r| r.pass).count();
            let _ = writeln!(out, "{passed}/{} checks passed", reports.len());
            out
        }
        Format::Json => reports.iter().map(|r| serde_json::to_string(r).unwrap() + "\n").collect(),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["identity", "params", "precision", "pass", "witness"]).unwrap();
            for r in reports {
                w.write_record([
                    r.identity.clone(),
                    params_text(r),
                    r.precision.to_string(),
                    r.pass.to_string(),
                    r.witness.clone().unwrap_or_default(),
                ])
                .unwrap();
            }
            String::from_utf8(w.into_inner().unwrap()).unwrap()
        }
    }
}

fn suite_jobs(cli: &Cli, suite: Suite) -> Result<Vec<Job>> {
    let var = cli.var.clone();
    let n = cli.precision;
    let mut jobs = Vec::new();
    match suite {
        Suite::Eigen => {
            let q = cli.q_or(3);
            let p = cli.modulus_or(q, "t^2+1")?;
            if !p.is_irreducible() {
                bail!("eigen suite: --modulus must be prime");
            }
            let base = ConstantExtension::new(q, 1)?;
            let cp = constants(q, &[&p])?;
            let mut specs: Vec<(FormSpec, ConstantExtension)> = match cli.s {
                Some(s) => vec![(FormSpec::PetrovFs(s), base)],
                None => (1..=3).map(|s| (FormSpec::PetrovFs(s), base)).collect(),
            };
            specs.push((FormSpec::Delta, base));
            specs.push((FormSpec::EisensteinEp(p.clone()), base));
            for k in 1..=cli.weight.unwrap_or(3) {
                for chi in admissible_characters(cp, &p, k)? {
                    specs.push((FormSpec::FrickeEis { chi: chi.clone(), k }, cp));
                    specs.push((FormSpec::TwistedEis { chi, k }, cp));
                }
            }
            let primes = primes_up_to(base, cli.hecke_degree_bound.unwrap_or(2));
            for (spec, ce) in specs {
                let level = spec.meta(ce)?.level;
                for qq in primes.iter().filter(|qq| !qq.divides(&level)).cloned() {
                    let spec = spec.clone();
                    jobs.push(job(move || Ok(verify_eigensystem(&spec, ce, &qq, n)?)));
                }
            }
        }
        Suite::TwistCommute => {
            let q = cli.q_or(3);
            let m = cli.modulus_or(q, "t+1")?;
            let ce = constants(q, &[&m])?;
            let s = cli.s.unwrap_or(1);
            let chis = match &cli.chi {
                Some(_) => vec![cli.character(ce, &m)?],
                None => DirichletCharacter::primitive_mod(ce, &m)?,
            };
            let primes = primes_up_to(ce, cli.hecke_degree_bound.unwrap_or(1));
            for chi in chis {
                for qq in primes.iter().filter(|qq| qq.gcd(&m).is_one()).cloned() {
                    let (chi, m, var) = (chi.clone(), m.clone(), var.clone());
                    jobs.push(job(move || {
                        let ctx = TorsionContext::new(ce, &m)?;
                        let big = n * qq.abs() as usize;
                        let f = FormSpec::PetrovFs(s).build(ce, big)?.render(big)?;
                        let lhs = hecke_u(&twist_raw(&f, &chi, &ctx)?, &qq)?;
                        let rhs = twist_raw(&hecke_u(&f, &qq)?, &chi, &ctx)?.scale_k(&chi.eval_k(&qq));
                        Ok(VerificationReport::new(
                            "twist-hecke-commutation",
                            &[("form", format!("f_{s}")), ("chi", chi.to_literal(&var)), ("prime", qq.to_text(&var))],
                            lhs.precision(),
                            first_difference(&lhs, &rhs),
                        ))
                    }));
                }
            }
        }
        Suite::Convolution => {
            let q = cli.q_or(3);
            let moduli: Vec<Poly> = match &cli.modulus {
                Some(s) => vec![parse_poly(q, s, &var)?],
                None => {
                    let mut v = vec![parse_poly(q, "t", "t")?];
                    let t2 = parse_poly(q, "t^2+1", "t")?;
                    if t2.is_irreducible() {
                        v.push(t2);
                    }
                    v.push(parse_poly(q, "t^2+t", "t")?);
                    v
                }
            };
            for m in moduli {
                let var = var.clone();
                jobs.push(job(move || {
                    let ce = constants(q, &[&m])?;
                    let prims = DirichletCharacter::primitive_mod(ce, &m)?;
                    let mut witness = None;
                    'outer: for c1 in &prims {
                        for c2 in &prims {
                            let prod = c1.mul(c2)?;
                            let j = jacobi_factor(c1, c2)?;
                            for d in polys_below_degree(ce.base(), m.degree().unwrap()) {
                                if convolve(c1, c2, &d)? != prod.eval(&d) * j {
                                    witness = Some(format!("{} * {} at {}", c1.to_literal(&var), c2.to_literal(&var), d.to_text(&var)));
                                    break 'outer;
                                }
                            }
                        }
                    }
                    Ok(VerificationReport::new(
                        "convolution",
                        &[("q", q.to_string()), ("modulus", m.to_text(&var)), ("pairs", (prims.len() * prims.len()).to_string())],
                        0,
                        witness,
                    ))
                }));
            }
        }
        Suite::Normproj => {
            let q = cli.q_or(3);
            let m = cli.modulus_or(q, "t")?;
            let ce = constants(q, &[&m])?;
            let chis = match &cli.chi {
                Some(_) => vec![cli.character(ce, &m)?],
                None => DirichletCharacter::primitive_mod(ce, &m)?,
            };
            for chi in chis {
                let (chi2, m2, var2) = (chi.clone(), m.clone(), var.clone());
                jobs.push(job(move || {
                    let ctx = TorsionContext::new(ce, &m2)?;
                    let meta = ModularMeta::level_one(ce, 4, 1);
                    let mut witness = None;
                    for i in 1..=5 {
                        let u = UExpansion::monomial(QElem::one(ctx.ring()), i, n).with_meta(Some(meta.clone()));
                        let a = twist_normalized(&u, &chi2, &ctx)?;
                        let b = twist_monomial_closed(i, &chi2, &ctx, n)?;
                        if let Some(w) = first_difference(&a, &b) {
                            witness = Some(format!("i = {i}: {w}"));
                            break;
                        }
                    }
                    Ok(VerificationReport::new("normalized-twist-closed-form", &[("chi", chi2.to_literal(&var2)), ("i", "1..5".into())], n, witness))
                }));
                let (m2, var2) = (m.clone(), var.clone());
                jobs.push(job(move || {
                    let ctx = TorsionContext::new(ce, &m2)?;
                    let f = FormSpec::PetrovFs(1).build(ce, n)?.render(n)?;
                    let t = twist_normalized(&f, &chi, &ctx)?;
                    let witness = t.coeffs().iter().enumerate().find_map(|(i, c)| {
                        let ok = c.as_scalar().is_some_and(|x| x.is_poly());
                        (!ok).then(|| format!("u^{i}: {}", c.to_text(&var2)))
                    });
                    Ok(VerificationReport::new("normalized-twist-integrality", &[("form", "f_1".into()), ("chi", chi.to_literal(&var2))], n, witness))
                }));
            }
        }
        Suite::Congruence => {
            let q = cli.q_or(3);
            let p = cli.modulus_or(q, "t^2+1")?;
            let s = cli.s.unwrap_or(1);
            for kind in [CongruenceKind::SF, CongruenceKind::TwistedSF] {
                let p = p.clone();
                jobs.push(job(move || Ok(congruence_check(kind, &p, s, n)?)));
            }
        }
        Suite::Rank => {
            let q = cli.q_or(3);
            let p = cli.modulus_or(q, "t^2+1")?;
            let prec = n.max(4 * p.abs() as usize);
            for k in 1..=cli.weight.unwrap_or(3) {
                let (p, var) = (p.clone(), var.clone());
                jobs.push(job(move || {
                    let r = eisenstein_rank(&p, k, prec)?;
                    let want = expected_eisenstein_rank(&p);
                    let witness = (r != want).then(|| format!("rank {r}, expected {want}"));
                    Ok(VerificationReport::new("eisenstein-rank", &[("p", p.to_text(&var)), ("k", k.to_string()), ("rank", r.to_string())], prec, witness))
                }));
            }
        }
        Suite::Table => {
            jobs.push(job(move || {
                let m = parse_poly(5, "t^2+2", "t")?;
                let got = nonzero_pairs(&m, 23)?;
                let want = reference_pairs();
                let witness = (got != want).then(|| {
                    let extra: Vec<_> = got.iter().filter(|p| !want.contains(p)).collect();
                    let missing: Vec<_> = want.iter().filter(|p| !got.contains(p)).collect();
                    format!("extra {extra:?}, missing {missing:?}")
                });
                Ok(VerificationReport::new("nonvanishing-table", &[("q", "5".into()), ("modulus", "t^2+2".into()), ("range", "23".into())], 0, witness))
            }));
        }
        Suite::All => unreachable!("expanded by the caller"),
    }
    Ok(jobs)
}
