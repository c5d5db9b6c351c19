//! Operators on a degree-windowed Fock space and vacuum expectation values
//! with a certified window.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qalg::{QSeries, EXACT};

use super::bilinear::Bilinear;
use super::state::BasisState;
use super::vector::FockVector;
use super::vertex::{basis_up_to, Vertex};

/// Charge-preserving operators used in expectation values.
#[derive(Clone, Debug, Serialize)]
pub enum FockOperator {
    Identity,
    Scalar(QSeries),
    Bilinear(Bilinear),
    Vertex(Vertex),
    /// `u^{factor · X}` for a diagonal bilinear `X` (`W`, `L_0` or `K'`);
    /// `q^{W/2}` is `factor = 1` with `X = W`.
    QPower { op: Bilinear, factor: i64 },
}

/// Bound on the valuation of matrix entries as a function of the degree
/// change, used to bound the contribution of truncated paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Profile {
    /// Moves degree by exactly `shift`; entries have `val_u ≥ val_lo`.
    Shift { shift: i64, val_lo: i64 },
    /// Moves degree in one direction; entries moving by `d` have
    /// `val_u ≥ slope · d`.
    Graded { raising: bool, slope: i64 },
    /// No uniform bound; exact only on the stored window.
    WindowOnly,
}

impl FockOperator {
    pub fn profile(&self) -> Profile {
        match self {
            FockOperator::Identity => Profile::Shift { shift: 0, val_lo: 0 },
            FockOperator::Scalar(s) => Profile::Shift { shift: 0, val_lo: s.val_bound() },
            FockOperator::Bilinear(b) => match b {
                Bilinear::J(m) => Profile::Shift { shift: -m, val_lo: 0 },
                Bilinear::W | Bilinear::L0 | Bilinear::KPrime => Profile::Shift { shift: 0, val_lo: 0 },
                _ => Profile::WindowOnly,
            },
            FockOperator::Vertex(v) => Profile::Graded { raising: v.raising(), slope: v.slope() },
            FockOperator::QPower { .. } => Profile::WindowOnly,
        }
    }

    pub fn transpose(&self) -> FockOperator {
        match self {
            FockOperator::Bilinear(b) => FockOperator::Bilinear(b.transpose()),
            FockOperator::Vertex(v) => FockOperator::Vertex(v.transpose()),
            other => other.clone(),
        }
    }

    /// Ket action keeping degrees up to `cap`, with series coefficients on
    /// the window `window`.
    pub fn apply(&self, v: &FockVector, cap: u32, window: i64) -> Result<FockVector> {
        Ok(match self {
            FockOperator::Identity => v.clone(),
            FockOperator::Scalar(s) => v.mul_series(s),
            FockOperator::Bilinear(b) => {
                let mut out = b.apply(v);
                out.set_cutoff(Some(cap));
                out
            }
            FockOperator::Vertex(x) => x.apply(v, cap, window, None)?,
            FockOperator::QPower { op, factor } => {
                let mut out = FockVector::zero(v.charge());
                out.set_cutoff(v.cutoff());
                for (k, c) in v.entries() {
                    let e = diagonal_value(*op, &BasisState::new(k.clone(), v.charge()))?;
                    out.add_term(k.clone(), c.shift(factor * e));
                }
                out
            }
        })
    }

    /// Bra action `⟨v| ↦ ⟨v|O`, computed as the transpose acting on kets.
    pub fn apply_bra(&self, v: &FockVector, cap: u32, window: i64) -> Result<FockVector> {
        self.transpose().apply(v, cap, window)
    }

    /// Sparse matrix on the states of degree at most `d`, as
    /// `(row, column, entry)` triples.
    pub fn matrix(&self, charge: i64, d: u32, window: i64) -> Result<Vec<(BasisState, BasisState, QSeries)>> {
        let mut out = Vec::new();
        for col in basis_up_to(charge, d) {
            let image = self.apply(&FockVector::basis(&col), d, window)?;
            for (k, c) in image.entries() {
                if k.degree() <= d {
                    out.push((BasisState::new(k.clone(), charge), col.clone(), c.clone()));
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for FockOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FockOperator::Identity => write!(f, "1"),
            FockOperator::Scalar(s) => write!(f, "({s})"),
            FockOperator::Bilinear(b) => write!(f, "{b}"),
            FockOperator::Vertex(v) => write!(f, "{v}"),
            FockOperator::QPower { op, factor } => write!(f, "u^({factor}{op})"),
        }
    }
}

fn diagonal_value(op: Bilinear, state: &BasisState) -> Result<i64> {
    match op {
        Bilinear::W => Ok(super::bilinear::w_value(state)),
        Bilinear::L0 => Ok(super::bilinear::l0_value(state)),
        Bilinear::KPrime => Ok(super::bilinear::k_prime_value(state)),
        other => Err(Error::InvalidParameter(format!("{other} has no integer spectrum"))),
    }
}

/// Lower bound on the valuation contributed by a path entering the
/// remaining operators at a degree above the cutoff and ending in the
/// vacuum. Degrees are clamped at `top`, which stands for "at least `top`".
struct EscapeCost {
    top: usize,
    /// `cost[i][d]`: minimal cost when entering `ops[..i]` (applied from
    /// `i - 1` down to `0`) at clamped degree `d`; `None` if unbounded.
    cost: Vec<Vec<Option<i64>>>,
}

const UNREACHABLE: i64 = i64::MAX / 4;

impl EscapeCost {
    fn new(ops: &[FockOperator], cap: u32) -> EscapeCost {
        let shifts: i64 = ops
            .iter()
            .map(|o| match o.profile() {
                Profile::Shift { shift, .. } => shift.abs(),
                _ => 0,
            })
            .sum();
        let top = cap as usize + shifts as usize + 1;
        let mut cost = Vec::with_capacity(ops.len() + 1);
        let mut cur: Vec<Option<i64>> = (0..=top).map(|d| Some(if d == 0 { 0 } else { UNREACHABLE })).collect();
        cost.push(cur.clone());
        for op in ops.iter() {
            let mut next: Vec<Option<i64>> = vec![Some(UNREACHABLE); top + 1];
            for (d, slot) in next.iter_mut().enumerate() {
                *slot = step(op.profile(), d, top, &cur);
            }
            cur = next;
            cost.push(cur.clone());
        }
        EscapeCost { top, cost }
    }

    fn at(&self, remaining: usize, degree: u32) -> Option<i64> {
        self.cost[remaining][(degree as usize).min(self.top)]
    }
}

/// Cost of entering `op` at clamped degree `d` given costs after it.
fn step(profile: Profile, d: usize, top: usize, after: &[Option<i64>]) -> Option<i64> {
    let mut best = UNREACHABLE;
    let mut consider = |target: usize, c: i64, after: &[Option<i64>]| -> bool {
        match after[target] {
            None => false,
            Some(a) => {
                if a < UNREACHABLE {
                    best = best.min(a + c);
                }
                true
            }
        }
    };
    match profile {
        Profile::WindowOnly => {
            if after.iter().any(|a| a.is_some_and(|x| x < UNREACHABLE)) {
                return None;
            }
        }
        Profile::Shift { shift, val_lo } => {
            let targets: Vec<i64> = if d == top {
                ((top as i64 + shift).min(top as i64)..=top as i64).collect()
            } else {
                vec![(d as i64 + shift).min(top as i64)]
            };
            for t in targets.into_iter().filter(|&t| t >= 0) {
                if !consider(t as usize, val_lo, after) {
                    return None;
                }
            }
        }
        Profile::Graded { raising, slope } => {
            if slope <= 0 {
                return None;
            }
            let range: Vec<usize> = if raising { (d..=top).collect() } else { (0..=d).collect() };
            for t in range {
                let c = slope * (t as i64 - d as i64).abs();
                if !consider(t, c, after) {
                    return None;
                }
            }
        }
    }
    Some(best)
}

/// `⟨p|O_1 ⋯ O_n|p⟩` with every returned coefficient exact through `u^{n_u}`.
///
/// The ket is propagated from the right with a degree cutoff; paths through
/// dropped components are bounded using the operator profiles, and the
/// cutoff is raised until the bound clears the requested window.
pub fn expectation(p: i64, ops: &[FockOperator], n_u: i64) -> Result<QSeries> {
    let mut cap = (n_u.max(0) / 2 + 1) as u32;
    let limit = (n_u.max(0) + 8) as u32 * 2;
    let mut window = n_u.max(0);
    loop {
        let result = expectation_at(p, ops, cap, window)?;
        if result.trunc() >= n_u {
            return Ok(result.truncate(n_u));
        }
        if cap >= limit {
            return Err(Error::WindowTooSmall(format!(
                "expectation certified only through u^{} (requested u^{n_u})",
                result.trunc()
            )));
        }
        cap += 2;
        window += 2;
    }
}

/// One propagation pass at a fixed degree cutoff and coefficient window.
pub fn expectation_at(p: i64, ops: &[FockOperator], cap: u32, window: i64) -> Result<QSeries> {
    let escape = EscapeCost::new(ops, cap);
    let mut bound = EXACT;
    let mut v = FockVector::basis(&BasisState::vacuum(p));
    for i in (0..ops.len()).rev() {
        let op = &ops[i];
        let mut input = v.clone();
        input.forget_cutoff();
        let out = match op {
            FockOperator::Vertex(x) if x.raising() => x.apply(&input, cap, window, None)?,
            FockOperator::Vertex(x) => super::vertex::exp_lowering(&input, |k| x.coeff(k, window), None),
            FockOperator::Bilinear(b) => b.apply(&input),
            _ => op.apply(&input, cap, window)?,
        };
        // Components above the cutoff are dropped (or never generated);
        // bound what they could contribute downstream.
        match op.profile() {
            Profile::Graded { raising: true, slope } => {
                if slope <= 0 && !input.is_empty() {
                    return Err(Error::UnboundedWindow("a raising operator with nonpositive valuation slope"));
                }
                for (k, c) in input.entries() {
                    let d = k.degree();
                    for e in (cap + 1).max(d)..=escape.top as u32 {
                        let step = slope * (e - d) as i64;
                        bound = bound.min(add_cost(c.val_bound(), step, escape.at(i, e))?);
                    }
                }
            }
            _ => {
                for (k, c) in out.entries().filter(|(k, _)| k.degree() > cap) {
                    bound = bound.min(add_cost(c.val_bound(), 0, escape.at(i, k.degree()))?);
                }
            }
        }
        v = out.restrict_degree(cap);
    }
    let result = v.coeff(&crate::partitions::Partition::empty());
    let limit = if bound == EXACT { EXACT } else { bound - 1 };
    Ok(result.truncate(limit))
}

fn add_cost(val: i64, step: i64, rest: Option<i64>) -> Result<i64> {
    match rest {
        None => Err(Error::UnboundedWindow("a truncated path through an operator without a valuation profile")),
        Some(r) if r >= UNREACHABLE => Ok(EXACT),
        Some(r) => Ok(if val == EXACT { EXACT } else { val + step + r }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalg::QSeries;

    #[test]
    fn identity_expectation_is_one() {
        for p in -1..=1 {
            let r = expectation(p, &[FockOperator::Identity], 10).unwrap();
            assert!(r.agree(&QSeries::one(10)).is_ok());
        }
    }

    #[test]
    fn current_pair_expectation() {
        let ops = [FockOperator::Bilinear(Bilinear::J(1)), FockOperator::Bilinear(Bilinear::J(-1))];
        let r = expectation(0, &ops, 6).unwrap();
        assert!(r.agree(&QSeries::one(6)).is_ok());
    }

    #[test]
    fn g_sandwich_is_macmahon() {
        let n = 12;
        let ops = [FockOperator::Vertex(Vertex::GPlus), FockOperator::Vertex(Vertex::GMinus)];
        let r = expectation(0, &ops, n).unwrap();
        // 1 + q + 3q^2 + 6q^3 + 13q^4 + 24q^5 + 48q^6
        let expect = QSeries::from_ints(0, &[1, 0, 1, 0, 3, 0, 6, 0, 13, 0, 24, 0, 48], n);
        assert_eq!(r, expect);
    }

    #[test]
    fn unbounded_profile_is_an_error() {
        let ops = [
            FockOperator::Vertex(Vertex::GPlus),
            FockOperator::Bilinear(Bilinear::H(1)),
            FockOperator::Vertex(Vertex::GMinus),
        ];
        assert!(expectation(0, &ops, 6).is_err());
    }
}
