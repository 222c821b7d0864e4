//! Goss polynomials `G_k` of the lattice `π̃A` (normalized so that
//! `G_k(u(z)) = π̃^{-k} sum_{a∈A} (z-a)^{-k}`), and of finite `F_q`-lattices
//! for checking the defining property exactly.

use crate::algebra::{ConstantExtension, Poly, RatFunc};
use crate::error::{Error, Result};

/// A polynomial in `X` with rational-function coefficients, lowest degree first.
pub type KPoly = Vec<RatFunc>;

/// Carlitz factorials `D_0 .. D_n`: `D_0 = 1`, `D_i = (θ^{q^i} - θ) D_{i-1}^q`.
pub fn carlitz_factorials(ce: ConstantExtension, n: usize) -> Vec<Poly> {
    let f = ce.ext();
    let q = ce.q() as u64;
    let theta = Poly::theta(f);
    let mut out = vec![Poly::one(f)];
    for i in 1..=n {
        let t = &theta.pow(q.pow(i as u32)) - &theta;
        let next = &t * &out[i - 1].pow(q);
        out.push(next);
    }
    out
}

/// Coefficients `α_1, α_2, ..` of `exp_C(z) = z + sum α_i z^{q^i}` that
/// can matter for `G_k` with `k <= kmax`.
fn exp_coefficients(ce: ConstantExtension, kmax: usize) -> Vec<RatFunc> {
    let q = ce.q() as usize;
    let mut n = 0;
    while q.pow(n as u32 + 1) <= kmax {
        n += 1;
    }
    let f = ce.ext();
    let d = carlitz_factorials(ce, n);
    (1..=n).map(|i| RatFunc::new(Poly::one(f), d[i].clone()).unwrap()).collect()
}

/// `G_1 .. G_kmax` for the lattice whose exponential is
/// `z + sum_i alphas[i-1] z^{q^i}`, by the recursion
/// `G_k = X (G_{k-1} + α_1 G_{k-q} + α_2 G_{k-q^2} + ..)`.
/// Index 0 of the result is unused (the zero polynomial).
pub fn goss_recursion_with(ce: ConstantExtension, alphas: &[RatFunc], kmax: usize) -> Vec<KPoly> {
    let f = ce.ext();
    let q = ce.q() as usize;
    let zero = RatFunc::zero(f);
    let mut g: Vec<KPoly> = vec![Vec::new()];
    for k in 1..=kmax {
        if k <= q {
            let mut p = vec![zero.clone(); k + 1];
            p[k] = RatFunc::one(f);
            g.push(p);
            continue;
        }
        let mut acc = vec![zero.clone(); k + 1];
        let mut add = |src: &KPoly, c: Option<&RatFunc>| {
            for (j, x) in src.iter().enumerate() {
                if !x.is_zero() {
                    let v = match c {
                        Some(c) => x * c,
                        None => x.clone(),
                    };
                    acc[j + 1] = &acc[j + 1] + &v;
                }
            }
        };
        add(&g[k - 1], None);
        let mut qi = q;
        for a in alphas {
            if qi >= k {
                break;
            }
            add(&g[k - qi], Some(a));
            qi *= q;
        }
        while acc.last().map_or(false, |x| x.is_zero()) {
            acc.pop();
        }
        g.push(acc);
    }
    g
}

/// `G_1 .. G_kmax` for `π̃A` by the recursion.
pub fn goss_recursion(ce: ConstantExtension, kmax: usize) -> Vec<KPoly> {
    goss_recursion_with(ce, &exp_coefficients(ce, kmax), kmax)
}

/// `G_k(X) = X sum_{j>=0} X^j [y^{k-1}] e(y)^j` with `e(y) = sum y^{q^i}/D_i`.
pub fn goss_generating(ce: ConstantExtension, k: usize) -> KPoly {
    let f = ce.ext();
    let q = ce.q() as usize;
    let zero = RatFunc::zero(f);
    let alphas = exp_coefficients(ce, k);
    // e(y) truncated at y^k
    let mut e = vec![zero.clone(); k];
    if k > 1 {
        e[1] = RatFunc::one(f);
    }
    let mut qi = q;
    for a in &alphas {
        if qi < k {
            e[qi] = a.clone();
        }
        qi *= q;
    }
    let mut out = vec![zero.clone(); k + 1];
    let mut power = vec![zero.clone(); k];
    power[0] = RatFunc::one(f);
    for j in 0..k {
        out[j + 1] = power[k - 1].clone();
        let mut next = vec![zero.clone(); k];
        for (a, x) in power.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in e.iter().enumerate() {
                if a + b < k && !y.is_zero() {
                    next[a + b] = &next[a + b] + &(x * y);
                }
            }
        }
        power = next;
    }
    while out.last().map_or(false, |x| x.is_zero()) {
        out.pop();
    }
    out
}

/// `G_k` for `π̃A`, computed by both constructions; a disagreement is
/// reported as an internal error.
pub fn goss_poly(ce: ConstantExtension, k: usize) -> Result<KPoly> {
    if k == 0 {
        return Err(Error::Precondition("Goss polynomials are indexed by k >= 1".into()));
    }
    let mut rec = goss_recursion(ce, k);
    let r = rec.swap_remove(k);
    if r != goss_generating(ce, k) {
        return Err(Error::Internal(format!("Goss polynomial G_{k}: recursion and generating function disagree")));
    }
    Ok(r)
}

/// `G_{i,𝔫}` for the torsion lattice, known in closed form `X^i` for
/// `1 <= i <= q`; larger `i` is not supported.
pub fn goss_poly_torsion(ce: ConstantExtension, modulus: &Poly, i: usize) -> Result<KPoly> {
    let q = ce.q() as usize;
    if i == 0 || i > q {
        return Err(Error::Unsupported(format!("G_{{{i},{modulus}}} outside 1..={q}")));
    }
    let f = ce.ext();
    let mut p = vec![RatFunc::zero(f); i + 1];
    p[i] = RatFunc::one(f);
    Ok(p)
}

/// Evaluates a `KPoly` by Horner's rule.
pub fn eval_kpoly<R: crate::algebra::Coeff>(p: &KPoly, x: &R) -> R {
    let mut acc = x.zero_like();
    for c in p.iter().rev() {
        acc = acc.times(x).plus(&x.scalar_like(c));
    }
    acc
}

/// Text form `c_j*X^j + ..` with highest degree first.
pub fn kpoly_text(p: &KPoly, var: &str) -> String {
    let mut parts = Vec::new();
    for (j, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match j {
            0 => String::new(),
            1 => "X".into(),
            _ => format!("X^{j}"),
        };
        let ct = c.to_text(var);
        parts.push(match (j, c.is_one()) {
            (0, _) => ct,
            (_, true) => mono,
            _ if ct.contains('+') && !ct.starts_with('(') => format!("({ct})*{mono}"),
            _ => format!("{ct}*{mono}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}
