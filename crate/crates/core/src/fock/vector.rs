//! Finite linear combinations of basis states at a fixed charge.

use std::collections::BTreeMap;
use std::fmt::Debug;

use serde::Serialize;

use crate::partitions::Partition;
use crate::qalg::{QSeries, Rational, TPoly, EXACT};

use super::state::{BasisState, Fermion};

/// Coefficient ring of a Fock vector.
pub trait Coeff: Clone + Debug + Send + Sync {
    fn is_zero(&self) -> bool;
    /// Window on which the value is exact (used when a zero is dropped).
    fn window(&self) -> i64;
    fn add_assign(&mut self, other: &Self);
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    fn mul_series(&self, s: &QSeries) -> Self;
    /// Shrinks the window to `u^t`.
    fn truncate(&self, t: i64) -> Self;
}

impl Coeff for QSeries {
    fn is_zero(&self) -> bool {
        QSeries::is_zero(self)
    }
    fn window(&self) -> i64 {
        self.trunc()
    }
    fn add_assign(&mut self, other: &Self) {
        self.add_assign_ref(other)
    }
    fn mul(&self, other: &Self) -> Self {
        self.mul_ref(other)
    }
    fn scale(&self, r: &Rational) -> Self {
        QSeries::scale(self, r)
    }
    fn mul_series(&self, s: &QSeries) -> Self {
        self.mul_ref(s)
    }
    fn truncate(&self, t: i64) -> Self {
        QSeries::truncate(self, t)
    }
}

impl Coeff for TPoly {
    fn is_zero(&self) -> bool {
        self.is_empty()
    }
    fn window(&self) -> i64 {
        TPoly::window(self)
    }
    fn add_assign(&mut self, other: &Self) {
        self.add_assign_ref(other)
    }
    fn mul(&self, other: &Self) -> Self {
        self.mul_ref(other)
    }
    fn scale(&self, r: &Rational) -> Self {
        self.scale_rational(r)
    }
    fn mul_series(&self, s: &QSeries) -> Self {
        self.scale_series(s)
    }
    fn truncate(&self, t: i64) -> Self {
        self.truncate_q(t)
    }
}

/// Vector in the charge-`charge` sector.
///
/// States missing from `entries` have coefficient zero modulo `u^{floor}`
/// (the floor is finite only after pruning); `cutoff` records that
/// components above that degree were not computed.
#[derive(Clone, Debug, Serialize)]
pub struct FockVector<C = QSeries> {
    charge: i64,
    entries: BTreeMap<Partition, C>,
    floor: i64,
    cutoff: Option<u32>,
}

impl<C: Coeff> FockVector<C> {
    pub fn zero(charge: i64) -> Self {
        FockVector { charge, entries: BTreeMap::new(), floor: EXACT, cutoff: None }
    }

    pub fn from_state(state: &BasisState, c: C) -> Self {
        let mut v = Self::zero(state.charge);
        v.add_term(state.shape.clone(), c);
        v
    }

    pub fn charge(&self) -> i64 {
        self.charge
    }

    pub fn floor(&self) -> i64 {
        self.floor
    }

    pub fn cutoff(&self) -> Option<u32> {
        self.cutoff
    }

    pub fn set_cutoff(&mut self, cutoff: Option<u32>) {
        self.cutoff = match (self.cutoff, cutoff) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        if let Some(d) = self.cutoff {
            self.entries.retain(|k, _| k.degree() <= d);
        }
    }

    /// Declares every degree known (used when a truncation is accounted for
    /// separately).
    pub fn forget_cutoff(&mut self) {
        self.cutoff = None;
    }

    pub fn lower_floor(&mut self, floor: i64) {
        self.floor = self.floor.min(floor);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, shape: &Partition) -> Option<&C> {
        self.entries.get(shape)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Partition, &C)> {
        self.entries.iter()
    }

    pub fn states(&self) -> impl Iterator<Item = BasisState> + '_ {
        self.entries.keys().map(|k| BasisState::new(k.clone(), self.charge))
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.entries.keys().map(Partition::degree).max()
    }

    /// Adds `c` to the coefficient of `shape`. A zero is dropped only when
    /// its window is no smaller than the floor.
    pub fn add_term(&mut self, shape: Partition, c: C) {
        if self.cutoff.is_some_and(|d| shape.degree() > d) {
            return;
        }
        match self.entries.entry(shape) {
            std::collections::btree_map::Entry::Vacant(v) => {
                let c = if c.window() > self.floor { c.truncate(self.floor) } else { c };
                if !(c.is_zero() && c.window() >= self.floor) {
                    v.insert(c);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign(&c);
                if o.get().is_zero() && o.get().window() >= self.floor {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.charge, other.charge, "charge sectors differ");
        self.floor = self.floor.min(other.floor);
        for (k, c) in &other.entries {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map(|c| c.scale(r))
    }

    pub fn mul_series(&self, s: &QSeries) -> Self {
        let mut out = self.map(|c| c.mul_series(s));
        if self.floor != EXACT {
            out.floor = crate::qalg::series::window_add(self.floor, s.val_bound());
        }
        out
    }

    /// Applies `f` entrywise, keeping floor and cutoff.
    pub fn map(&self, f: impl Fn(&C) -> C) -> Self {
        let mut out = FockVector { charge: self.charge, entries: BTreeMap::new(), floor: self.floor, cutoff: self.cutoff };
        for (k, c) in &self.entries {
            out.add_term(k.clone(), f(c));
        }
        out
    }

    /// Coefficient of `shape`, with the floor window for absent states.
    pub fn coeff_or(&self, shape: &Partition, zero: impl Fn(i64) -> C) -> C {
        self.entries.get(shape).cloned().unwrap_or_else(|| zero(self.floor))
    }

    /// Components of exactly degree `d`.
    pub fn homogeneous(&self, d: u32) -> Self {
        let mut out = Self::zero(self.charge);
        out.floor = self.floor;
        for (k, c) in self.entries.iter().filter(|(k, _)| k.degree() == d) {
            out.entries.insert(k.clone(), c.clone());
        }
        out
    }

    /// Restriction to degrees at most `d`.
    pub fn restrict_degree(&self, d: u32) -> Self {
        let mut out = self.clone();
        out.entries.retain(|k, _| k.degree() <= d);
        out
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.entries.keys().map(Partition::degree).collect();
        d.sort_unstable();
        d.dedup();
        d
    }
}

impl<C: Coeff> FockVector<C> {
    /// Truncates every entry to `u^t` and drops entries vanishing there.
    pub fn prune(&mut self, t: i64) {
        let entries = std::mem::take(&mut self.entries);
        self.floor = self.floor.min(t);
        for (k, c) in entries {
            let c = c.truncate(t);
            if !c.is_zero() {
                self.entries.insert(k, c);
            }
        }
    }
}

impl<C: Coeff> FockVector<C> {
    /// Applies a fermion mode. Creating at `s` shifts every degree by
    /// `s - p` and annihilating at `s` by `p - 1 - s`, so a cutoff moves
    /// uniformly.
    pub fn apply_fermion(&self, f: Fermion) -> Self {
        let p = self.charge;
        let shift = match f {
            Fermion::Psi(m) => -m - 1 - p,
            Fermion::PsiStar(n) => p - n,
        };
        let mut out = FockVector { charge: p + f.charge_shift(), entries: BTreeMap::new(), floor: self.floor, cutoff: None };
        for (k, c) in &self.entries {
            if let Some((sign, next)) = BasisState::new(k.clone(), p).apply_fermion(f) {
                let c = if sign < 0 { c.scale(&Rational::from_integer((-1).into())) } else { c.clone() };
                out.add_term(next.shape, c);
            }
        }
        out.cutoff = self.cutoff.map(|d| (d as i64 + shift).max(0) as u32);
        out
    }
}

impl FockVector<QSeries> {
    pub fn basis(state: &BasisState) -> Self {
        Self::from_state(state, QSeries::one(EXACT))
    }

    pub fn coeff(&self, shape: &Partition) -> QSeries {
        self.coeff_or(shape, QSeries::zero)
    }

    /// Smallest window over stored entries and the floor.
    pub fn window(&self) -> i64 {
        self.entries.values().map(QSeries::trunc).fold(self.floor, i64::min)
    }
}
