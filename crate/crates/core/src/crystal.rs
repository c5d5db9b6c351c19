//! Partition functions of the melting crystal: the undeformed generating
//! functions, the external potentials `Φ_k(λ,p)`, and the deformed
//! partition function `Z_p(t)` (optionally weighted by `Q^{|λ|}`) by a Schur
//! sum and by a free-fermion expectation value.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{diag_exp_h, g_minus_vacuum, BasisState};
use crate::partitions::{enumerate_plane_partitions, partitions_up_to, Partition};
use crate::qalg::{geometric, rat, QSeries, TPoly, EXACT};
use crate::schur::{principal_schur_hook, schur_valuation};

/// Largest volume accepted by the direct plane-partition route.
pub const DIRECT_MAX: u32 = 12;

/// `Φ_k(λ,p) = Σ_i (q^{k(p+λ_i-i+1)} - q^{k(p-i+1)}) + q^k(1-q^{pk})/(1-q^k)`.
///
/// The sum runs over the rows of `λ` (later terms cancel) and the rational
/// part is a finite geometric sum, so the result is an exact Laurent
/// polynomial.
pub fn phi(k: u32, lambda: &Partition, p: i64) -> QSeries {
    let k = k as i64;
    let mut terms: Vec<(i64, crate::Rational)> = Vec::new();
    for (i, &part) in lambda.parts().iter().enumerate() {
        let i = i as i64 + 1;
        terms.push((2 * k * (p + part as i64 - i + 1), rat(1)));
        terms.push((2 * k * (p - i + 1), rat(-1)));
    }
    let tail = vacuum_potential(k, p);
    QSeries::from_terms(terms, EXACT).add_ref(&tail)
}

/// `q^k(1-q^{pk})/(1-q^k)` as a Laurent polynomial, checked by
/// multiplying back with the denominator.
fn vacuum_potential(k: i64, p: i64) -> QSeries {
    let terms: Vec<(i64, crate::Rational)> = if p >= 0 {
        (1..=p).map(|j| (2 * j * k, rat(1))).collect()
    } else {
        (p + 1..=0).map(|j| (2 * j * k, rat(-1))).collect()
    };
    let sum = QSeries::from_terms(terms, EXACT);
    let numerator = QSeries::from_terms([(2 * k, rat(1)), (2 * k + 2 * p * k, rat(-1))], EXACT);
    let denominator = QSeries::from_terms([(0, rat(1)), (2 * k, rat(-1))], EXACT);
    debug_assert!(sum.mul_ref(&denominator).agree(&numerator).is_ok());
    sum
}

/// `∏_{n≥1} (1-q^n)^{-1}` through `u^{n_u}`.
pub fn z2d(n_u: i64) -> QSeries {
    let mut acc = QSeries::one(n_u.max(0));
    for n in 1..=(n_u / 2) {
        acc = acc.mul_ref(&geometric(0, 2 * n, n_u));
    }
    acc.truncate(n_u)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Z3dRoute {
    /// `∏ (1-q^n)^{-n}`.
    Product,
    /// `Σ_λ s_λ(q^ρ)^2`.
    SchurSum,
    /// Direct enumeration of plane partitions by volume.
    Direct,
}

/// The MacMahon function through `u^{n_u}` by the chosen route.
pub fn z3d(n_u: i64, route: Z3dRoute) -> Result<QSeries> {
    let n_u = n_u.max(0);
    match route {
        Z3dRoute::Product => {
            let mut acc = QSeries::one(n_u);
            for n in 1..=(n_u / 2) {
                let g = geometric(0, 2 * n, n_u);
                for _ in 0..n {
                    acc = acc.mul_ref(&g);
                }
            }
            Ok(acc.truncate(n_u))
        }
        Z3dRoute::SchurSum => {
            // val_u(s_λ^2) = 2(2n(λ)+|λ|) ≥ 2|λ|, so |λ| ≤ n_u/2 suffices.
            let max = (n_u / 2) as u32;
            let parts: Vec<Partition> =
                partitions_up_to(max).into_iter().filter(|l| 2 * schur_valuation(l) <= n_u).collect();
            let sum = parts
                .par_iter()
                .map(|l| {
                    let s = principal_schur_hook(l, n_u - schur_valuation(l));
                    s.mul_ref(&s)
                })
                .reduce(|| QSeries::zero(EXACT), |a, b| a.add_ref(&b));
            Ok(sum.add_ref(&QSeries::zero(n_u)).truncate(n_u))
        }
        Z3dRoute::Direct => {
            let max = (n_u / 2) as u32;
            if max > DIRECT_MAX {
                return Err(Error::InvalidParameter(format!(
                    "direct enumeration is limited to volume {DIRECT_MAX} (u-order {})",
                    2 * DIRECT_MAX + 1
                )));
            }
            let counts = enumerate_plane_partitions(max);
            let terms = counts.iter().enumerate().map(|(n, v)| (2 * n as i64, rat(v.len() as i64)));
            Ok(QSeries::from_terms(terms, n_u))
        }
    }
}

/// Parameters of the deformed partition function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ZpConfig {
    pub p: i64,
    /// Number of couplings `t_1..t_K`.
    pub couplings: usize,
    /// Total t-degree kept.
    pub t_deg: u32,
    /// Coefficients are computed through `u^{n_u}`.
    pub n_u: i64,
    /// Weight each `λ` by `Q^{|λ|}`.
    pub with_q: bool,
}

impl ZpConfig {
    /// Lower bound on `val_u` of every t-coefficient of `e^{Σ t_k Φ_k(λ,p)}`
    /// for a partition with `len` rows: `Φ_k` has valuation at least
    /// `2k·min(0, p+1-len)`.
    fn potential_floor(&self, len: i64) -> i64 {
        2 * self.couplings as i64 * self.t_deg as i64 * (self.p + 1 - len).min(0)
    }

    /// Largest `|λ|` that can contribute through `u^{n_u}`, from
    /// `val_u(s_λ^2 e^Φ) ≥ 2ℓ(ℓ-1) + 2|λ| + potential_floor(ℓ)`.
    pub fn max_degree(&self) -> u32 {
        // The bound is convex in ℓ with its minimum below this range.
        let top = 2 * self.couplings as i64 * self.t_deg as i64 + self.p.abs() + 2;
        let c_min = (0..=top).map(|len| 2 * len * (len - 1) + self.potential_floor(len)).min().unwrap_or(0);
        ((self.n_u - c_min).max(0) / 2) as u32
    }

    fn validate(&self) -> Result<()> {
        if self.couplings == 0 {
            return Err(Error::InvalidParameter("at least one coupling is required".into()));
        }
        if self.n_u < 0 {
            return Err(Error::InvalidParameter("the u-order must be nonnegative".into()));
        }
        Ok(())
    }

    fn q_weight(&self, lambda: &Partition, c: QSeries) -> TPoly {
        let n = if self.with_q { lambda.degree() } else { 0 };
        TPoly::q_power(self.couplings, self.t_deg, n, c)
    }

    /// `val_u(s_λ^2) + potential_floor`, a lower bound for the whole term.
    fn term_floor(&self, lambda: &Partition) -> i64 {
        2 * schur_valuation(lambda) + self.potential_floor(lambda.len() as i64)
    }
}

/// `e^{Σ_k t_k Φ_k(λ,p)}` from the closed form of the potentials.
pub fn potential_weight(lambda: &Partition, cfg: &ZpConfig) -> TPoly {
    let mut h = TPoly::zero(cfg.couplings, cfg.t_deg);
    for k in 1..=cfg.couplings {
        h.add_assign_ref(&TPoly::var(cfg.couplings, cfg.t_deg, k - 1, phi(k as u32, lambda, cfg.p)));
    }
    h.exp().expect("every term carries a coupling")
}

fn finish(sum: TPoly, cfg: &ZpConfig) -> Result<TPoly> {
    let out = sum.truncate_q(cfg.n_u);
    if out.window() < cfg.n_u {
        return Err(Error::WindowTooSmall(format!("Z_p certified only through u^{}", out.window())));
    }
    Ok(out)
}

/// `Z_p(t) = Σ_λ s_λ(q^ρ)^2 [Q^{|λ|}] e^{Σ t_k Φ_k(λ,p)}` through `u^{n_u}`.
pub fn zp(cfg: &ZpConfig) -> Result<TPoly> {
    cfg.validate()?;
    let lambdas: Vec<Partition> =
        partitions_up_to(cfg.max_degree()).into_iter().filter(|l| cfg.term_floor(l) <= cfg.n_u).collect();
    let zero = || {
        let mut z = TPoly::zero(cfg.couplings, cfg.t_deg);
        z.add_assign_ref(&TPoly::constant(cfg.couplings, cfg.t_deg, QSeries::zero(cfg.n_u)));
        z
    };
    let sum = lambdas
        .par_iter()
        .map(|l| {
            let floor = cfg.potential_floor(l.len() as i64);
            let s = principal_schur_hook(l, cfg.n_u - schur_valuation(l) - floor);
            potential_weight(l, cfg).mul_ref(&cfg.q_weight(l, s.mul_ref(&s)))
        })
        .reduce(zero, |a, b| a.add_ref(&b));
    finish(sum, cfg)
}

/// `Z_p(t) = ⟨p|G_+ [Q^{L_0}] e^{H(t)} G_-|p⟩` with `H(t) = Σ t_k H_k`.
///
/// `G_-|p⟩` comes from the exponential of currents; `⟨p|G_+` is its
/// transpose; `e^{H(t)}` is diagonal with the eigenvalues of the fermion
/// bilinears `H_k`. The constant `Q^{p(p+1)/2}` from `L_0` is dropped.
pub fn zp_fermionic(cfg: &ZpConfig) -> Result<TPoly> {
    cfg.validate()?;
    let cap = cfg.max_degree();
    // a_λ needs the window n_u - val(a_λ) - potential_floor, and val(a_λ) ≥ ℓ^2.
    let extra = (0..=cap as i64).map(|len| -cfg.potential_floor(len) - len * len).max().unwrap_or(0).max(0);
    let window = cfg.n_u + extra;
    let g = g_minus_vacuum(cfg.p, cap, window);
    let entries: Vec<(&Partition, &QSeries)> = g.entries().collect();
    let zero = || {
        let mut z = TPoly::zero(cfg.couplings, cfg.t_deg);
        z.add_assign_ref(&TPoly::constant(cfg.couplings, cfg.t_deg, QSeries::zero(cfg.n_u)));
        z
    };
    let sum = entries
        .par_iter()
        .filter(|(l, _)| cfg.term_floor(l) <= cfg.n_u)
        .map(|(l, a)| {
            let st = BasisState::new((*l).clone(), cfg.p);
            let diag = diag_exp_h(&st, cfg.couplings, cfg.t_deg, cfg.couplings, 0);
            diag.mul_ref(&cfg.q_weight(l, a.mul_ref(a)))
        })
        .reduce(zero, |a, b| a.add_ref(&b));
    finish(sum, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn phi_examples() {
        assert!(phi(3, &Partition::empty(), 0).is_zero());
        assert_eq!(phi(1, &part(&[1]), 0), QSeries::from_ints(0, &[-1, 0, 1], EXACT));
        assert_eq!(phi(1, &Partition::empty(), -1), QSeries::from_ints(0, &[-1], EXACT));
    }

    #[test]
    fn z2d_counts() {
        let z = z2d(12);
        assert_eq!(z.coeff(8), Some(rat(5)));
        assert_eq!(z.coeff(12), Some(rat(11)));
        assert_eq!(z.coeff(7), Some(rat(0)));
    }

    #[test]
    fn z3d_routes_agree() {
        let a = z3d(14, Z3dRoute::Product).unwrap();
        let b = z3d(14, Z3dRoute::SchurSum).unwrap();
        let c = z3d(14, Z3dRoute::Direct).unwrap();
        assert_eq!(a.agree(&b), Ok(14));
        assert_eq!(a.agree(&c), Ok(14));
        assert_eq!(a, QSeries::from_ints(0, &[1, 0, 1, 0, 3, 0, 6, 0, 13, 0, 24, 0, 48, 0, 86], 14));
        assert!(z3d(40, Z3dRoute::Direct).is_err());
    }

    #[test]
    fn zp_at_zero_coupling_is_macmahon() {
        let mac = z3d(12, Z3dRoute::Product).unwrap();
        for p in -1..=1 {
            let cfg = ZpConfig { p, couplings: 2, t_deg: 2, n_u: 12, with_q: false };
            let z = zp(&cfg).unwrap();
            assert!(z.coeff_t(&[0, 0]).agree(&mac).is_ok());
        }
    }

    #[test]
    fn zp_linear_term_is_weighted_sum() {
        let cfg = ZpConfig { p: 0, couplings: 1, t_deg: 1, n_u: 12, with_q: false };
        let z = zp(&cfg).unwrap();
        let mut oracle = QSeries::zero(EXACT);
        for l in partitions_up_to(8) {
            let s = principal_schur_hook(&l, 30);
            oracle = oracle.add_ref(&s.mul_ref(&s).mul_ref(&phi(1, &l, 0)));
        }
        assert_eq!(z.coeff_t(&[1]).agree(&oracle.truncate(12)), Ok(12));
    }

    #[test]
    fn zp_routes_agree_small() {
        for p in -1..=1 {
            for with_q in [false, true] {
                let cfg = ZpConfig { p, couplings: 2, t_deg: 2, n_u: 10, with_q };
                let a = zp(&cfg).unwrap();
                let b = zp_fermionic(&cfg).unwrap();
                assert!(a.agree(&b).is_ok(), "p={p} Q={with_q}");
            }
        }
    }

    #[test]
    fn q_grading() {
        let cfg = ZpConfig { p: 0, couplings: 1, t_deg: 1, n_u: 12, with_q: true };
        let z = zp(&cfg).unwrap();
        let mut s2 = QSeries::zero(EXACT);
        for l in crate::partitions::partitions_of(2) {
            let s = principal_schur_hook(&l, 20);
            s2 = s2.add_ref(&s.mul_ref(&s));
        }
        let c = z.coeff(&crate::qalg::Monomial { t: vec![0], q: 2 });
        assert!(c.agree(&s2.truncate(12)).is_ok());
    }
}
