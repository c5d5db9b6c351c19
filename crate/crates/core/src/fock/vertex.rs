//! Vertex operators `Γ_±(m)` and `G_±`, built as exponentials of currents
//! and, independently, through the interlacing (transfer-matrix) action.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::{add_horizontal_strips, remove_horizontal_strips, Partition};
use crate::qalg::{geometric, rat, ratio, QSeries, TPoly, EXACT};

use super::bilinear::Bilinear;
use super::state::BasisState;
use super::vector::{Coeff, FockVector};

/// Exponentials of the form `exp(Σ_k a_k J_{±k})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Vertex {
    /// `Γ_-(m) = exp(Σ q^{k(m+1/2)} J_{-k} / k)`.
    GammaMinus(i64),
    /// `Γ_+(m) = exp(Σ q^{-k(m+1/2)} J_k / k)`.
    GammaPlus(i64),
    /// `G_- = exp(Σ q^{k/2} / (k(1-q^k)) J_{-k})`.
    GMinus,
    /// `G_+ = exp(Σ q^{k/2} / (k(1-q^k)) J_k)`.
    GPlus,
    GMinusInv,
    GPlusInv,
}

impl Vertex {
    /// True when the operator raises the degree of kets.
    pub fn raising(self) -> bool {
        matches!(self, Vertex::GammaMinus(_) | Vertex::GMinus | Vertex::GMinusInv)
    }

    /// Coefficient `a_k` of `J_{∓k}` in the exponent, on the window `window`.
    pub fn coeff(self, k: u32, window: i64) -> QSeries {
        let k = k as i64;
        match self {
            Vertex::GammaMinus(m) => QSeries::monomial(ratio(1, k), k * (2 * m + 1), EXACT),
            Vertex::GammaPlus(m) => QSeries::monomial(ratio(1, k), -k * (2 * m + 1), EXACT),
            Vertex::GMinus | Vertex::GPlus => geometric(k, 2 * k, window).scale(&ratio(1, k)),
            Vertex::GMinusInv | Vertex::GPlusInv => geometric(k, 2 * k, window).scale(&ratio(-1, k)),
        }
    }

    /// Lower bound on `val_u` per unit of degree change, if one exists.
    pub fn slope(self) -> i64 {
        match self {
            Vertex::GammaMinus(m) => 2 * m + 1,
            Vertex::GammaPlus(m) => -(2 * m + 1),
            _ => 1,
        }
    }

    /// Transpose with respect to the orthonormal basis.
    pub fn transpose(self) -> Vertex {
        match self {
            Vertex::GammaMinus(m) => Vertex::GammaPlus(-m - 1),
            Vertex::GammaPlus(m) => Vertex::GammaMinus(-m - 1),
            Vertex::GMinus => Vertex::GPlus,
            Vertex::GPlus => Vertex::GMinus,
            Vertex::GMinusInv => Vertex::GPlusInv,
            Vertex::GPlusInv => Vertex::GMinusInv,
        }
    }

    /// Applies the operator by its exponential.
    ///
    /// Raising operators keep components up to degree `cap`; lowering
    /// operators need a complete input. Coefficients are truncated at
    /// `prune` when given, which is sound whenever every later factor has
    /// nonnegative valuation.
    pub fn apply<C: Coeff>(self, v: &FockVector<C>, cap: u32, window: i64, prune: Option<i64>) -> Result<FockVector<C>> {
        if self.raising() {
            Ok(exp_raising(v, |k| self.coeff(k, window), cap, prune))
        } else {
            if v.cutoff().is_some() {
                return Err(Error::InvalidParameter(format!("{self} needs a vector known in every degree")));
            }
            Ok(exp_lowering(v, |k| self.coeff(k, window), prune))
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::GammaMinus(m) => write!(f, "Γ_-({m})"),
            Vertex::GammaPlus(m) => write!(f, "Γ_+({m})"),
            Vertex::GMinus => write!(f, "G_-"),
            Vertex::GPlus => write!(f, "G_+"),
            Vertex::GMinusInv => write!(f, "G_-^-1"),
            Vertex::GPlusInv => write!(f, "G_+^-1"),
        }
    }
}

/// `exp(Σ_k a_k J_{-k}) v`, keeping degrees up to `cap`.
///
/// With `P_n` the part raising the degree by `n`, commutativity of the
/// currents gives `n P_n = Σ_k k a_k J_{-k} P_{n-k}`.
pub fn exp_raising<C: Coeff>(
    v: &FockVector<C>,
    coeff: impl Fn(u32) -> QSeries,
    cap: u32,
    prune: Option<i64>,
) -> FockVector<C> {
    let mut input = v.restrict_degree(cap);
    input.set_cutoff(Some(cap));
    let Some(min_deg) = input.entries().map(|(k, _)| k.degree()).min() else {
        let mut out = input;
        out.set_cutoff(Some(cap.min(v.cutoff().unwrap_or(cap))));
        return out;
    };
    let steps = cap - min_deg;
    exp_series(&input, coeff, steps, 1, prune, Some(cap))
}

/// `exp(Σ_k a_k J_k) v` for a vector known in every degree.
pub fn exp_lowering<C: Coeff>(v: &FockVector<C>, coeff: impl Fn(u32) -> QSeries, prune: Option<i64>) -> FockVector<C> {
    let steps = v.max_degree().unwrap_or(0);
    exp_series(v, coeff, steps, -1, prune, None)
}

fn exp_series<C: Coeff>(
    v: &FockVector<C>,
    coeff: impl Fn(u32) -> QSeries,
    steps: u32,
    dir: i64,
    prune: Option<i64>,
    cap: Option<u32>,
) -> FockVector<C> {
    let weights: Vec<QSeries> = (1..=steps).map(|k| coeff(k).scale(&rat(k as i64))).collect();
    let mut parts: Vec<FockVector<C>> = vec![v.clone()];
    let mut total = v.clone();
    total.set_cutoff(cap);
    for n in 1..=steps as usize {
        let mut acc = FockVector::zero(v.charge());
        acc.set_cutoff(cap);
        for k in 1..=n {
            let prev = &parts[n - k];
            if prev.is_empty() {
                continue;
            }
            let moved = Bilinear::J(-dir * k as i64).apply(prev).mul_series(&weights[k - 1]);
            acc.add_assign(&moved);
        }
        let mut next = acc.scale(&ratio(1, n as i64));
        if let Some(t) = prune {
            next.prune(t);
        }
        total.add_assign(&next);
        parts.push(next);
    }
    if let Some(t) = prune {
        total.prune(t);
    }
    total.set_cutoff(combine_cutoff(v.cutoff(), cap));
    total
}

fn combine_cutoff(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    }
}

/// `Γ_-(m)` and `Γ_+(m)` through interlacing:
/// `Γ_-(m)|λ⟩ = Σ_{μ≻λ} u^{(2m+1)|μ/λ|} |μ⟩` (degrees up to `cap`) and
/// `Γ_+(m)|μ⟩ = Σ_{λ≺μ} u^{-(2m+1)|μ/λ|} |λ⟩`.
pub fn gamma_interlacing<C: Coeff>(op: Vertex, v: &FockVector<C>, cap: u32) -> Result<FockVector<C>> {
    let mut out = FockVector::zero(v.charge());
    match op {
        Vertex::GammaMinus(m) => {
            out.set_cutoff(combine_cutoff(v.cutoff(), Some(cap)));
            for (lambda, c) in v.entries() {
                let d = lambda.degree();
                if d > cap {
                    continue;
                }
                for mu in add_horizontal_strips(lambda, cap - d) {
                    let r = (mu.degree() - d) as i64;
                    out.add_term(mu, c.mul_series(&QSeries::u_pow((2 * m + 1) * r, EXACT)));
                }
            }
        }
        Vertex::GammaPlus(m) => {
            if v.cutoff().is_some() {
                return Err(Error::InvalidParameter("Γ_+ needs a vector known in every degree".into()));
            }
            for (mu, c) in v.entries() {
                for lambda in remove_horizontal_strips(mu) {
                    let r = (mu.degree() - lambda.degree()) as i64;
                    out.add_term(lambda, c.mul_series(&QSeries::u_pow(-(2 * m + 1) * r, EXACT)));
                }
            }
        }
        other => return Err(Error::InvalidParameter(format!("{other} has no interlacing action"))),
    }
    Ok(out)
}

/// `G_- v` as the product of transfer matrices `Γ_-(0) Γ_-(1) ⋯`, truncated
/// at `u^t`; factors with `2m + 1 > t` act trivially there.
pub fn g_minus_transfer<C: Coeff>(v: &FockVector<C>, cap: u32, t: i64) -> FockVector<C> {
    let mut cur = v.restrict_degree(cap);
    cur.prune(t);
    let mut m = 0;
    while 2 * m + 1 <= t {
        cur = gamma_interlacing(Vertex::GammaMinus(m), &cur, cap).expect("raising");
        cur.prune(t);
        m += 1;
    }
    cur.set_cutoff(Some(cap));
    cur
}

/// `G_-|p⟩ = Σ_λ s_λ(q^ρ)|λ;p⟩` by the exponential route, degrees up to
/// `cap`, coefficients on the window `window`.
pub fn g_minus_vacuum(p: i64, cap: u32, window: i64) -> FockVector {
    let vac = FockVector::basis(&BasisState::vacuum(p));
    exp_raising(&vac, |k| Vertex::GMinus.coeff(k, window), cap, Some(window))
}

/// `⟨p|G_+` as a ket: the transpose of `G_+` is `G_-`.
pub fn vacuum_g_plus(p: i64, cap: u32, window: i64) -> FockVector {
    g_minus_vacuum(p, cap, window)
}

/// Diagonal entry of `e^{H(t)}`, `exp(Σ_{k≤K} t_k Φ_k(λ,p))`, with `t_k`
/// the variable `offset + k - 1` of an `nvars`-variable block.
pub fn diag_exp_h(state: &BasisState, couplings: usize, t_deg: u32, nvars: usize, offset: usize) -> TPoly {
    let mut h = TPoly::zero(nvars, t_deg);
    for k in 1..=couplings {
        let phi = Bilinear::H(k as u32).eigenvalue(state);
        h.add_assign_ref(&TPoly::var(nvars, t_deg, offset + k - 1, phi));
    }
    h.exp().expect("every term carries a coupling")
}

/// Basis of the charge-`p` sector up to degree `d`.
pub fn basis_up_to(p: i64, d: u32) -> Vec<BasisState> {
    crate::partitions::partitions_up_to(d).into_iter().map(|l| BasisState::new(l, p)).collect()
}

/// Entry `⟨μ|G_-|λ⟩ = s_{μ/λ}(q^ρ)` read from a transfer-route vector.
pub fn skew_entry(g_lambda: &FockVector, mu: &Partition) -> QSeries {
    g_lambda.coeff(mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schur::principal_schur_hook;

    #[test]
    fn gamma_minus_zero_on_vacuum_is_single_rows() {
        let v = FockVector::basis(&BasisState::vacuum(0));
        let out = gamma_interlacing(Vertex::GammaMinus(0), &v, 5).unwrap();
        assert_eq!(out.len(), 6);
        for r in 0..=5u32 {
            let shape = Partition::new(if r == 0 { vec![] } else { vec![r] }).unwrap();
            assert_eq!(out.coeff(&shape), QSeries::u_pow(r as i64, EXACT));
        }
    }

    #[test]
    fn gamma_routes_agree_small() {
        for m in -2..=2 {
            for lambda in crate::partitions::partitions_up_to(4) {
                let v = FockVector::basis(&BasisState::new(lambda.clone(), 1));
                let a = Vertex::GammaMinus(m).apply(&v, 6, EXACT, None).unwrap();
                let b = gamma_interlacing(Vertex::GammaMinus(m), &v, 6).unwrap();
                assert_eq!(a.entries().collect::<Vec<_>>(), b.entries().collect::<Vec<_>>(), "Γ_-({m}) {lambda}");
                let a = Vertex::GammaPlus(m).apply(&v, 0, EXACT, None).unwrap();
                let b = gamma_interlacing(Vertex::GammaPlus(m), &v, 0).unwrap();
                assert_eq!(a.entries().collect::<Vec<_>>(), b.entries().collect::<Vec<_>>(), "Γ_+({m}) {lambda}");
            }
        }
    }

    #[test]
    fn g_minus_reproduces_schur_values() {
        let n = 14;
        let v = g_minus_vacuum(0, 5, n);
        let w = g_minus_transfer(&FockVector::basis(&BasisState::vacuum(0)), 5, n);
        for lambda in crate::partitions::partitions_up_to(5) {
            let s = principal_schur_hook(&lambda, n);
            assert!(v.coeff(&lambda).agree(&s).is_ok(), "{lambda}");
            assert!(w.coeff(&lambda).agree(&s).is_ok(), "{lambda}");
        }
    }

    #[test]
    fn g_and_inverse_cancel() {
        let n = 10;
        let v = FockVector::basis(&BasisState::new(Partition::new(vec![2, 1]).unwrap(), 0));
        let down = Vertex::GPlus.apply(&v, 0, n, None).unwrap();
        let back = Vertex::GPlusInv.apply(&down, 0, n, None).unwrap();
        for (k, c) in back.entries() {
            let expect = if k == v.entries().next().unwrap().0 { QSeries::one(n) } else { QSeries::zero(n) };
            assert!(c.agree(&expect).is_ok(), "{k}: {c}");
        }
    }

    #[test]
    fn diag_exp_h_single_box() {
        let st = BasisState::new(Partition::new(vec![1]).unwrap(), 0);
        let e = diag_exp_h(&st, 1, 1, 1, 0);
        assert_eq!(e.coeff_t(&[0]), QSeries::one(EXACT));
        assert_eq!(e.coeff_t(&[1]), QSeries::from_ints(0, &[-1, 0, 1], EXACT));
    }
}
