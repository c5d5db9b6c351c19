//! Fermion bilinears `Σ_n f(n) :ψ_{m-n} ψ*_n:`.
//!
//! The summand with index `n` moves a particle from position `s = n - 1` to
//! `s - m`, so for `m != 0` the operator acts by single-particle moves with
//! coefficient `f(s + 1)`. The `m = 0` part is diagonal; normal ordering
//! against the charge-0 vacuum gives the eigenvalue
//! `Σ_{occupied s ≥ 0} f(s+1) - Σ_{empty s < 0} f(s+1)`.

use std::fmt;

use serde::Serialize;

use crate::qalg::{rat, QSeries, Rational, EXACT};

use super::state::BasisState;
use super::vector::{Coeff, FockVector};

/// The bilinear operators used throughout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Bilinear {
    /// Current mode `J_m`, `f(n) = 1`.
    J(i64),
    /// `H_k = V^{(k)}_0`, `f(n) = q^{kn}`.
    H(u32),
    /// `V^{(k)}_m`, `f(n) = q^{kn - km/2}`.
    V { k: u32, m: i64 },
    /// `W = Σ n^2 :ψ_{-n} ψ*_n:`.
    W,
    /// `L_0 = Σ n :ψ_{-n} ψ*_n:`.
    L0,
    /// `K' = W - L_0`, i.e. `Σ (n - 1/2)^2 :ψ_{-n}ψ*_n:` with the sector
    /// scalar `p/4` removed.
    KPrime,
}

impl Bilinear {
    /// `m` in `:ψ_{m-n} ψ*_n:`; the ket degree changes by `-m`.
    pub fn mode(self) -> i64 {
        match self {
            Bilinear::J(m) | Bilinear::V { m, .. } => m,
            _ => 0,
        }
    }

    /// `f(n)` as a monomial `c · u^e`.
    fn weight(self, n: i64) -> (Rational, i64) {
        match self {
            Bilinear::J(_) => (rat(1), 0),
            Bilinear::H(k) => (rat(1), 2 * k as i64 * n),
            Bilinear::V { k, m } => (rat(1), 2 * k as i64 * n - k as i64 * m),
            Bilinear::W => (rat(n * n), 0),
            Bilinear::L0 => (rat(n), 0),
            Bilinear::KPrime => (rat(n * n - n), 0),
        }
    }

    /// Diagonal eigenvalue on `state` (only meaningful for `mode() == 0`).
    pub fn eigenvalue(self, state: &BasisState) -> QSeries {
        debug_assert_eq!(self.mode(), 0);
        let floor = state.filled_floor();
        let top = state.charge + state.shape.part(1) as i64;
        let mut terms: Vec<(i64, Rational)> = Vec::new();
        for s in (floor + 1).min(0)..=top.max(0) {
            let occ = state.is_occupied(s);
            if s >= 0 && occ {
                let (c, e) = self.weight(s + 1);
                terms.push((e, c));
            } else if s < 0 && !occ {
                let (c, e) = self.weight(s + 1);
                terms.push((e, -c));
            }
        }
        QSeries::from_terms(terms, EXACT)
    }

    /// Exact action on a basis state.
    pub fn apply_state(self, state: &BasisState) -> FockVector {
        let m = self.mode();
        if m == 0 {
            let ev = self.eigenvalue(state);
            return if ev.is_zero() { FockVector::zero(state.charge) } else { FockVector::from_state(state, ev) };
        }
        let mut out = FockVector::zero(state.charge);
        // Targets must be empty, and every empty position lies above the
        // filled floor.
        let lo = state.filled_floor() + 1 - m.abs();
        for s in state.occupied_from(lo) {
            let t = s - m;
            if let Some((sign, next)) = state.move_particle(s, t) {
                let (c, e) = self.weight(s + 1);
                let c = if sign < 0 { -c } else { c };
                out.add_term(next.shape, QSeries::monomial(c, e, EXACT));
            }
        }
        out
    }

    /// Linear extension of [`Bilinear::apply_state`] over any coefficient ring.
    pub fn apply<C: Coeff>(self, v: &FockVector<C>) -> FockVector<C> {
        let mut out = FockVector::zero(v.charge());
        for (shape, c) in v.entries() {
            let image = self.apply_state(&BasisState::new(shape.clone(), v.charge()));
            for (k, x) in image.entries() {
                out.add_term(k.clone(), c.mul_series(x));
            }
        }
        // Absent inputs are only known to vanish modulo the floor; their
        // images keep that bound when every weight has nonnegative valuation.
        if v.floor() != EXACT {
            let keeps = matches!(self, Bilinear::J(_) | Bilinear::W | Bilinear::L0 | Bilinear::KPrime);
            out.lower_floor(if keeps { v.floor() } else { i64::MIN / 4 });
        }
        // Output degree `e` reads input degree `e + m`.
        out.set_cutoff(v.cutoff().map(|d| (d as i64 - self.mode()).max(0) as u32));
        out
    }

    /// Transpose with respect to the orthonormal basis.
    pub fn transpose(self) -> Bilinear {
        match self {
            Bilinear::J(m) => Bilinear::J(-m),
            Bilinear::V { k, m } => Bilinear::V { k, m: -m },
            other => other,
        }
    }
}

impl fmt::Display for Bilinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bilinear::J(m) => write!(f, "J_{m}"),
            Bilinear::H(k) => write!(f, "H_{k}"),
            Bilinear::V { k, m } => write!(f, "V^({k})_{m}"),
            Bilinear::W => write!(f, "W"),
            Bilinear::L0 => write!(f, "L_0"),
            Bilinear::KPrime => write!(f, "K'"),
        }
    }
}

/// Integer eigenvalue of `W` on `state`.
pub fn w_value(state: &BasisState) -> i64 {
    integral_eigenvalue(Bilinear::W, state)
}

/// Integer eigenvalue of `L_0` on `state`: `|λ| + p(p+1)/2`.
pub fn l0_value(state: &BasisState) -> i64 {
    integral_eigenvalue(Bilinear::L0, state)
}

/// Integer eigenvalue of `K' = W - L_0`.
pub fn k_prime_value(state: &BasisState) -> i64 {
    integral_eigenvalue(Bilinear::KPrime, state)
}

fn integral_eigenvalue(op: Bilinear, state: &BasisState) -> i64 {
    let ev = op.eigenvalue(state);
    match ev.coeff(0) {
        Some(c) => {
            assert!(c.is_integer());
            i64::try_from(c.to_integer()).expect("eigenvalue fits in i64")
        }
        None => unreachable!("exact series"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::Partition;

    fn st(parts: &[u32], p: i64) -> BasisState {
        BasisState::new(Partition::new(parts.to_vec()).unwrap(), p)
    }

    #[test]
    fn raising_current_on_vacuum() {
        for p in -2..=2 {
            let v = Bilinear::J(-1).apply_state(&BasisState::vacuum(p));
            assert_eq!(v.len(), 1);
            assert_eq!(v.coeff(&Partition::new(vec![1]).unwrap()), QSeries::one(EXACT));
        }
    }

    #[test]
    fn lowering_current_kills_vacuum() {
        for m in 1..4 {
            assert!(Bilinear::J(m).apply_state(&BasisState::vacuum(0)).is_empty());
        }
    }

    #[test]
    fn w_on_vacua() {
        for p in -4i64..=4 {
            assert_eq!(w_value(&BasisState::vacuum(p)), p * (p + 1) * (2 * p + 1) / 6);
            assert_eq!(l0_value(&BasisState::vacuum(p)), p * (p + 1) / 2);
        }
    }

    #[test]
    fn l0_grades_by_degree() {
        let s = st(&[3, 1, 1], 2);
        assert_eq!(l0_value(&s), 5 + 3);
    }

    #[test]
    fn h_eigenvalue_single_box() {
        // Φ_1((1), 0) = q - 1.
        let ev = Bilinear::H(1).eigenvalue(&st(&[1], 0));
        assert_eq!(ev, QSeries::from_ints(0, &[-1, 0, 1], EXACT));
        // Φ_1(∅, -1) = -1.
        assert_eq!(Bilinear::H(1).eigenvalue(&BasisState::vacuum(-1)), QSeries::from_ints(0, &[-1], EXACT));
    }
}
