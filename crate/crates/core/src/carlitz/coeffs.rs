use crate::algebra::{Coeff, ConstantExtension, Poly, RatFunc};

/// The additive polynomial `C_a(x) = sum_i [a]_i x^{q^i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CarlitzCoeffs {
    pub a: Poly,
    /// `[a]_0 .. [a]_{deg a}`, polynomials over the field of `a`.
    pub coeffs: Vec<Poly>,
}

impl CarlitzCoeffs {
    pub fn of(a: &Poly) -> CarlitzCoeffs {
        CarlitzCoeffs { a: a.clone(), coeffs: carlitz_coeffs(a) }
    }

    /// Coefficients of `C_a ∘ C_b`: `[ab]_k = sum_{i+j=k} [a]_i [b]_j^{q^i}`.
    pub fn compose(&self, other: &CarlitzCoeffs) -> Vec<Poly> {
        let f = self.a.field();
        let q = f.order() as u64;
        let n = self.coeffs.len() + other.coeffs.len();
        let mut out = vec![Poly::zero(f); n.saturating_sub(1)];
        for (i, ai) in self.coeffs.iter().enumerate() {
            for (j, bj) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(ai * &bj.pow(q.pow(i as u32)));
            }
        }
        while out.last().map_or(false, |p| p.is_zero()) {
            out.pop();
        }
        out
    }
}

/// `[a]_0 .. [a]_{deg a}` (empty for `a = 0`).
///
/// Built from `[θ^{j+1}]_i = θ [θ^j]_i + [θ^j]_{i-1}^q` and linearity in `a`.
pub fn carlitz_coeffs(a: &Poly) -> Vec<Poly> {
    let f = a.field();
    let q = f.order() as u64;
    let Some(d) = a.degree() else { return Vec::new() };
    let theta = Poly::theta(f);
    let mut out = vec![Poly::zero(f); d + 1];
    let mut cur = vec![Poly::one(f)];
    for j in 0..=d {
        let c = a.coeff(j);
        if !c.is_zero() {
            for (i, x) in cur.iter().enumerate() {
                out[i] = &out[i] + &x.scale(c);
            }
        }
        if j < d {
            let mut next = vec![Poly::zero(f); cur.len() + 1];
            for (i, x) in cur.iter().enumerate() {
                next[i] = &next[i] + &(&theta * x);
                next[i + 1] = x.pow(q);
            }
            cur = next;
        }
    }
    out
}

/// `C_a(x)` for `x` in any coefficient ring over `K`.
pub fn carlitz_action<R: Coeff>(ce: ConstantExtension, a: &Poly, x: &R) -> R {
    let q = ce.q() as u64;
    let mut acc = x.zero_like();
    let mut xp = x.clone();
    for (i, c) in carlitz_coeffs(a).iter().enumerate() {
        if i > 0 {
            xp = xp.pow(q);
        }
        if !c.is_zero() {
            acc = acc.plus(&xp.scaled(&RatFunc::from_poly(ce.lift(c))));
        }
    }
    acc
}
