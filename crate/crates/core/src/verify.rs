//! Verification suites grouping the identity checks, with negative controls
//! that must fail.

use serde::Serialize;

use crate::crystal::{phi, z2d, z3d, zp, zp_fermionic, Z3dRoute, ZpConfig, DIRECT_MAX};
use crate::error::{Error, Result};
use crate::fock::{basis_up_to, Bilinear, FockVector};
use crate::partitions::{enumerate_plane_partitions, partitions_of, partitions_up_to, PlanePartition};
use crate::qalg::{geometric, rat, QSeries, TPoly, EXACT};
use crate::report::{CheckReport, Window};
use crate::schur::{principal_schur_hook, principal_schur_tableau};
use crate::symmetry::{
    check_anticommutators, check_field_conjugation, check_g_plus_rows, check_h_conjugation, check_heisenberg,
    check_qtorus, check_shift_symmetry, check_shift_symmetry_unshifted, check_vertex_routes, check_w_conjugation,
    compare_vectors,
};
use crate::toda::{
    check_1d_dependence, check_identity_tau, check_reduction, check_three_forms, check_zp_tau, GElement, TodaConfig,
};

/// Degree window on which the two constructions of `Γ_±` are compared.
pub const VERTEX_DEGREE: u32 = 10;

pub const SUITES: [&str; 6] = ["rings", "combinatorics", "fock", "symmetry", "crystal", "toda"];

/// Sizes shared by the suites.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyConfig {
    pub charges: Vec<i64>,
    pub couplings: usize,
    pub t_deg: u32,
    /// Series are compared through `u^{n_u}`.
    pub n_u: i64,
    /// Degree of the Fock states in operator checks.
    pub degree: u32,
    /// `None` runs both with and without `Q`.
    pub with_q: Option<bool>,
    /// Restricts the reduction checks to one element.
    pub g: Option<GElement>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { charges: vec![-1, 0, 1], couplings: 2, t_deg: 2, n_u: 24, degree: 3, with_q: None, g: None }
    }
}

impl VerifyConfig {
    fn q_modes(&self) -> Vec<bool> {
        self.with_q.map_or(vec![false, true], |q| vec![q])
    }

    fn zp(&self, p: i64, with_q: bool) -> ZpConfig {
        ZpConfig { p, couplings: self.couplings, t_deg: self.t_deg, n_u: self.n_u, with_q }
    }

    fn toda(&self, p: i64) -> TodaConfig {
        TodaConfig { p, couplings: self.couplings, t_deg: self.t_deg, n_u: self.n_u, degree: self.degree }
    }
}

/// Runs the named suite (`all` runs every suite).
pub fn run_suite(name: &str, cfg: &VerifyConfig) -> Result<Vec<CheckReport>> {
    Ok(match name {
        "rings" => rings(cfg),
        "combinatorics" => combinatorics(cfg),
        "fock" => fock(cfg),
        "symmetry" => symmetry(cfg),
        "crystal" => crystal(cfg),
        "toda" => toda(cfg),
        "all" => SUITES.iter().flat_map(|s| run_suite(s, cfg).expect("known suite")).collect(),
        other => return Err(Error::InvalidParameter(format!("unknown suite `{other}`"))),
    })
}

fn window(degree: u32, u_order: i64) -> Window {
    Window { degree, u_order }
}

fn catch(r: CheckReport, body: impl FnOnce(&mut CheckReport) -> Result<()>) -> CheckReport {
    let mut r = r;
    match body(&mut r) {
        Ok(()) => r,
        Err(e) => r.errored(&e),
    }
}

/// `a · a^{-1} = 1` for a few units, including the Euler product.
pub fn check_inverses(n_u: i64) -> CheckReport {
    catch(CheckReport::new("inverses", "series inverse", window(0, n_u)), |r| {
        let units = [
            QSeries::from_ints(0, &[1, -1, 0, 3, 0, 0, -2], EXACT),
            QSeries::from_ints(-3, &[2, 0, 1], EXACT),
            z2d(n_u),
        ];
        for (i, a) in units.iter().enumerate() {
            r.compare(format!("unit {i}"), &a.mul_ref(&a.inv_to(n_u - a.val_bound())?), &QSeries::one(EXACT));
        }
        for k in 1..=4 {
            let one_minus = QSeries::from_terms([(0, rat(1)), (2 * k, rat(-1))], EXACT);
            r.compare(format!("(1-q^{k}) geometric"), &one_minus.mul_ref(&geometric(0, 2 * k, n_u)), &QSeries::one(EXACT));
        }
        Ok(())
    })
}

fn sample_couplings(couplings: usize, t_deg: u32, n_u: i64, offset: i64) -> (TPoly, TPoly) {
    let mut a = TPoly::zero(couplings, t_deg);
    let mut b = TPoly::zero(couplings, t_deg);
    for k in 0..couplings {
        let kk = k as i64 + 1;
        a.add_assign_ref(&TPoly::var(couplings, t_deg, k, geometric(2 * kk, 2 * kk, n_u)));
        b.add_assign_ref(&TPoly::var(couplings, t_deg, k, QSeries::from_ints(-kk - offset, &[1, 0, -1], EXACT)));
    }
    (a, b)
}

/// `exp(a + b) = exp(a) exp(b)` for coupling-linear `a`, `b`; with
/// `control` the right side is `exp(a)^2`, which must fail.
pub fn check_exp_additive(couplings: usize, t_deg: u32, n_u: i64, control: bool) -> CheckReport {
    let name = if control { "exp_additive_control" } else { "exp_additive" };
    let r = CheckReport::new(name, "exponential of a sum", window(0, n_u)).expecting_failure(control);
    catch(r, |r| {
        let (a, b) = sample_couplings(couplings, t_deg, n_u + 8, 0);
        let lhs = a.add_ref(&b).exp()?.truncate_q(n_u);
        let rhs = if control { a.exp()?.mul_ref(&a.exp()?) } else { a.exp()?.mul_ref(&b.exp()?) };
        r.compare_tpoly("exp(a+b)", &lhs, &rhs.truncate_q(n_u));
        Ok(())
    })
}

/// Computing at a larger window and truncating agrees with computing at
/// the smaller window.
pub fn check_truncation_consistency(n_u: i64) -> CheckReport {
    catch(CheckReport::new("truncation_consistency", "windows are consistent", window(0, n_u / 2)), |r| {
        for m in [n_u / 2, n_u / 2 + 1] {
            r.compare(format!("z2d at u^{m}"), &z2d(n_u).truncate(m), &z2d(m));
            r.compare(format!("z3d at u^{m}"), &z3d(n_u, Z3dRoute::Product)?.truncate(m), &z3d(m, Z3dRoute::Product)?);
        }
        Ok(())
    })
}

fn rings(cfg: &VerifyConfig) -> Vec<CheckReport> {
    vec![
        check_inverses(cfg.n_u),
        check_exp_additive(cfg.couplings, cfg.t_deg, cfg.n_u, false),
        check_truncation_consistency(cfg.n_u),
        check_exp_additive(cfg.couplings, cfg.t_deg, cfg.n_u, true),
    ]
}

/// Coefficients of the Euler product through `q^{n_max}` against the
/// number of partitions.
pub fn check_partition_counts(n_max: u32) -> CheckReport {
    let mut r = CheckReport::new("partition_counts", "Euler product vs partitions", window(0, 2 * n_max as i64));
    let z = z2d(2 * n_max as i64);
    for n in 0..=n_max {
        let count = QSeries::monomial(rat(partitions_of(n).len() as i64), 2 * n as i64, EXACT);
        let coeff = QSeries::monomial(z.coeff(2 * n as i64).unwrap_or_default(), 2 * n as i64, EXACT);
        r.compare(format!("q^{n}"), &coeff, &count);
    }
    r
}

/// Coefficients of the MacMahon function through `q^{n_max}` against the
/// number of plane partitions.
pub fn check_plane_partition_counts(n_max: u32) -> CheckReport {
    let r = CheckReport::new("plane_partition_counts", "MacMahon vs plane partitions", window(0, 2 * n_max as i64));
    catch(r, |r| {
        let z = z3d(2 * n_max as i64, Z3dRoute::Product)?;
        for (n, pps) in enumerate_plane_partitions(n_max).iter().enumerate() {
            let count = QSeries::monomial(rat(pps.len() as i64), 2 * n as i64, EXACT);
            let coeff = QSeries::monomial(z.coeff(2 * n as i64).unwrap_or_default(), 2 * n as i64, EXACT);
            r.compare(format!("q^{n}"), &coeff, &count);
        }
        Ok(())
    })
}

/// `s_λ(q^ρ)` by the hook formula and by semistandard tableaux for all
/// `|λ| ≤ max_size`; with `conjugate` the tableau side uses `λ'`, which must
/// fail.
pub fn check_schur_routes(max_size: u32, n_u: i64, conjugate: bool) -> CheckReport {
    let name = if conjugate { "schur_conjugate_control" } else { "schur_hook_vs_tableau" };
    let mut r = CheckReport::new(name, "principal Schur specialization", window(max_size, n_u)).expecting_failure(conjugate);
    for l in partitions_up_to(max_size) {
        let other = if conjugate { l.conjugate() } else { l.clone() };
        r.compare(format!("s_{l}"), &principal_schur_hook(&l, n_u), &principal_schur_tableau(&other, n_u));
    }
    r
}

/// `Σ s_λ(q^ρ)^2` against the MacMahon product and direct enumeration.
pub fn check_schur_square_sum(n_u: i64) -> CheckReport {
    catch(CheckReport::new("schur_square_sum", "Cauchy identity at q^ρ", window(0, n_u)), |r| {
        let sum = z3d(n_u, Z3dRoute::SchurSum)?;
        r.compare("vs product", &sum, &z3d(n_u, Z3dRoute::Product)?);
        if n_u / 2 <= DIRECT_MAX as i64 {
            r.compare("vs enumeration", &sum, &z3d(n_u, Z3dRoute::Direct)?);
        }
        Ok(())
    })
}

/// Plane partitions and their interlacing diagonal slices correspond
/// bijectively, preserving volume.
pub fn check_slices(max_volume: u32) -> CheckReport {
    let r = CheckReport::new("diagonal_slices", "plane partitions as interlacing chains", window(max_volume, 0));
    catch(r, |r| {
        for pp in enumerate_plane_partitions(max_volume).into_iter().flatten() {
            let slices = pp.diagonal_slices();
            r.require(format!("chain {pp:?}"), slices.is_interlacing_chain(), "not interlacing");
            r.require(format!("volume {pp:?}"), slices.total_degree() == pp.volume(), slices.total_degree());
            let back: PlanePartition = PlanePartition::from_slices(&slices)?;
            r.require(format!("round trip {pp:?}"), back == pp, format!("{back:?}"));
        }
        Ok(())
    })
}

fn combinatorics(cfg: &VerifyConfig) -> Vec<CheckReport> {
    let n = (cfg.n_u / 2).max(0) as u32;
    vec![
        check_partition_counts(n),
        check_plane_partition_counts(n.min(DIRECT_MAX)),
        check_schur_routes(8, 40, false),
        check_schur_square_sum(cfg.n_u.min(2 * DIRECT_MAX as i64)),
        check_slices(8),
        check_schur_routes(4, 12, true),
    ]
}

/// `H_k|λ;p⟩ = Φ_k(λ,p)|λ;p⟩` for `k ≤ max_k`, `|λ| ≤ d`; with `phi_offset`
/// nonzero the eigenvalue is taken at `p + phi_offset`, which must fail.
pub fn check_h_eigenvalues(max_k: u32, d: u32, p: i64, phi_offset: i64) -> CheckReport {
    let name = if phi_offset == 0 { "h_eigenvalues" } else { "h_eigenvalues_control" };
    let mut r = CheckReport::new(name, "H_k eigenvalues", window(d, 0))
        .param("max_k", max_k)
        .param("p", p)
        .expecting_failure(phi_offset != 0);
    for st in basis_up_to(p, d) {
        let v = FockVector::basis(&st);
        for k in 1..=max_k {
            let lhs = Bilinear::H(k).apply(&v);
            let rhs = v.mul_series(&phi(k, &st.shape, p + phi_offset));
            compare_vectors(&mut r, &format!("H_{k}|{st}>"), &lhs, &rhs, None);
        }
    }
    r
}

fn fock(cfg: &VerifyConfig) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for p in -2..=2 {
        out.push(check_h_eigenvalues(4, 6, p, 0));
    }
    for &p in &cfg.charges {
        out.push(check_heisenberg(3, cfg.degree + 1, p));
        out.push(check_anticommutators(3, cfg.degree + 1, p));
        for m in -3..=3 {
            out.push(check_vertex_routes(m, VERTEX_DEGREE, p));
        }
        out.push(check_g_plus_rows(6, cfg.n_u, p));
    }
    out.push(check_h_eigenvalues(2, 3, 0, 1));
    out
}

fn symmetry(cfg: &VerifyConfig) -> Vec<CheckReport> {
    let (d, n) = (cfg.degree, cfg.n_u);
    let mut out = Vec::new();
    for &p in &cfg.charges {
        out.push(check_qtorus(3, 3, d, n, p));
        for k in 1..=3 {
            for m in -3..=3 {
                out.push(check_shift_symmetry(k, m, d, n, p));
            }
        }
        for k in 1..=2 {
            out.push(check_w_conjugation(k, d, p));
        }
        for k in 1..=2 {
            out.push(check_h_conjugation(k, d, n, p));
        }
        out.push(check_field_conjugation(2, 2, d, n, p));
    }
    out.push(check_shift_symmetry_unshifted(1, 0, d.min(2), n, 0).expecting_failure(true));
    out
}

/// `Z_p` as a sum over partitions against the free-fermion expectation;
/// with `charge_offset` the fermionic side is taken at `p + offset`.
pub fn check_zp_routes(cfg: &ZpConfig, charge_offset: i64) -> CheckReport {
    let name = if charge_offset == 0 { "zp_routes" } else { "zp_routes_control" };
    let r = CheckReport::new(name, "Z_p combinatorial vs fermionic", window(cfg.max_degree(), cfg.n_u))
        .param("p", cfg.p)
        .param("K", cfg.couplings as u64)
        .param("t_deg", cfg.t_deg)
        .param("with_Q", cfg.with_q)
        .expecting_failure(charge_offset != 0);
    catch(r, |r| {
        let shifted = ZpConfig { p: cfg.p + charge_offset, ..*cfg };
        r.compare_tpoly("Z_p", &zp(cfg)?, &zp_fermionic(&shifted)?);
        Ok(())
    })
}

/// `Z_p(0)` is the MacMahon function (up to the `Q`-grading).
pub fn check_zp_at_zero(cfg: &ZpConfig) -> CheckReport {
    let r = CheckReport::new("zp_at_zero", "Z_p at zero coupling", window(0, cfg.n_u)).param("p", cfg.p);
    catch(r, |r| {
        let cfg = ZpConfig { with_q: false, ..*cfg };
        let z = zp(&cfg)?;
        r.compare("t^0", &z.coeff_t(&vec![0; cfg.couplings]), &z3d(cfg.n_u, Z3dRoute::Product)?);
        Ok(())
    })
}

fn crystal(cfg: &VerifyConfig) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for &p in &cfg.charges {
        out.push(check_zp_at_zero(&cfg.zp(p, false)));
        for q in cfg.q_modes() {
            out.push(check_zp_routes(&cfg.zp(p, q), 0));
        }
    }
    let small = ZpConfig { p: 0, couplings: 1, t_deg: 1, n_u: cfg.n_u.min(12), with_q: false };
    out.push(check_zp_routes(&small, 1));
    out
}

/// Elements `g` with the outcome expected of `J_k g = g J_{-k}`.
pub const REDUCTION_CASES: [(GElement, bool); 4] = [
    (GElement::Melting, true),
    (GElement::FiveDim, true),
    (GElement::TopVertex { use_k: false }, false),
    (GElement::Hurwitz { use_k: false }, false),
];

fn toda(cfg: &VerifyConfig) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for &p in &cfg.charges {
        for q in cfg.q_modes() {
            out.push(check_zp_tau(&cfg.zp(p, q)));
        }
        let t = cfg.toda(p);
        out.push(check_three_forms(&t));
        out.push(check_identity_tau(&t));
        let cases = match cfg.g {
            Some(g) => vec![(g, g.is_reduced())],
            None => REDUCTION_CASES.to_vec(),
        };
        for (g, reduced) in cases {
            out.push(check_reduction(g, 3, &t).expecting_failure(!reduced));
            out.push(check_1d_dependence(g, &t).expecting_failure(!reduced));
        }
        if cfg.g.is_none() {
            out.push(check_1d_dependence(GElement::Identity, &t).expecting_failure(true));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        let cfg = VerifyConfig { charges: vec![0], couplings: 1, t_deg: 2, n_u: 8, degree: 2, with_q: None, g: None };
        for name in ["rings", "combinatorics", "crystal", "toda"] {
            for r in run_suite(name, &cfg).unwrap() {
                assert!(r.ok(), "{r}");
            }
        }
    }

    #[test]
    fn controls_fail_as_expected() {
        let r = check_h_eigenvalues(1, 2, 0, 1);
        assert!(!r.pass && r.ok());
        let r = check_exp_additive(1, 2, 6, true);
        assert!(!r.pass && r.ok());
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(run_suite("nope", &VerifyConfig::default()).is_err());
    }
}
