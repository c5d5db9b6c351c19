//! Basis states `|λ;p⟩` in the occupied-position (Maya diagram) encoding.
//!
//! Particle positions are `s_i = λ_i - i + p`. `ψ_m` creates a particle at
//! position `-m-1` and `ψ*_n` removes one at `n-1`; both carry the sign
//! `(-1)^{#occupied positions above}`. With this rule the product formula
//! `|λ;p⟩ = ψ_{-s_1-1} ⋯ ψ_{-s_n-1} ψ*_{p-n+1} ⋯ ψ*_{p} |p⟩` holds with sign `+`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::partitions::Partition;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BasisState {
    pub charge: i64,
    pub shape: Partition,
}

/// A fermion mode operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fermion {
    /// `ψ_m`, creating at position `-m-1`.
    Psi(i64),
    /// `ψ*_n`, annihilating at position `n-1`.
    PsiStar(i64),
}

impl Fermion {
    pub fn charge_shift(self) -> i64 {
        match self {
            Fermion::Psi(_) => 1,
            Fermion::PsiStar(_) => -1,
        }
    }
}

impl BasisState {
    pub fn new(shape: Partition, charge: i64) -> Self {
        BasisState { charge, shape }
    }

    pub fn vacuum(charge: i64) -> Self {
        BasisState { charge, shape: Partition::empty() }
    }

    pub fn degree(&self) -> u32 {
        self.shape.degree()
    }

    /// The top `n` occupied positions, in decreasing order.
    pub fn positions(&self, n: usize) -> Vec<i64> {
        (1..=n).map(|i| self.shape.part(i) as i64 - i as i64 + self.charge).collect()
    }

    /// Every position `<= floor` is occupied.
    pub fn filled_floor(&self) -> i64 {
        self.charge - self.shape.len() as i64 - 1
    }

    pub fn is_occupied(&self, s: i64) -> bool {
        if s <= self.filled_floor() {
            return true;
        }
        self.positions(self.shape.len()).contains(&s)
    }

    /// Number of occupied positions strictly above `s`.
    pub fn count_above(&self, s: i64) -> usize {
        let n = self.shape.len() + (self.filled_floor() - s).max(0) as usize + 1;
        self.positions(n).into_iter().filter(|&x| x > s).count()
    }

    /// Occupied positions at or above `lo`, decreasing.
    pub fn occupied_from(&self, lo: i64) -> Vec<i64> {
        let n = self.shape.len() + (self.filled_floor() - lo + 1).max(0) as usize;
        self.positions(n).into_iter().filter(|&x| x >= lo).collect()
    }

    /// Empty positions at or below `hi`, increasing. All lie above the filled floor.
    pub fn empty_up_to(&self, hi: i64) -> Vec<i64> {
        ((self.filled_floor() + 1)..=hi).filter(|&s| !self.is_occupied(s)).collect()
    }

    /// Rebuilds a state from a decreasing list of top positions whose tail
    /// continues as a filled sea directly below the last entry.
    fn from_positions(pos: &[i64], charge: i64) -> BasisState {
        let parts: Vec<u32> = pos
            .iter()
            .enumerate()
            .map(|(i, &s)| {
                let part = s + (i as i64 + 1) - charge;
                debug_assert!(part >= 0, "inconsistent positions");
                part as u32
            })
            .collect();
        BasisState { charge, shape: Partition::from_parts_unchecked(parts) }
    }

    fn window_positions(&self, s: i64) -> Vec<i64> {
        let n = self.shape.len() + (self.charge - s).max(0) as usize + 2;
        self.positions(n)
    }

    /// Adds a particle at `s`. Returns the sign and the new state.
    pub fn create(&self, s: i64) -> Option<(i32, BasisState)> {
        let mut pos = self.window_positions(s);
        if pos.contains(&s) {
            return None;
        }
        let above = pos.iter().filter(|&&x| x > s).count();
        pos.insert(above, s);
        Some((parity(above), Self::from_positions(&pos, self.charge + 1)))
    }

    /// Removes the particle at `s`. Returns the sign and the new state.
    pub fn annihilate(&self, s: i64) -> Option<(i32, BasisState)> {
        let mut pos = self.window_positions(s);
        let idx = pos.iter().position(|&x| x == s)?;
        pos.remove(idx);
        Some((parity(idx), Self::from_positions(&pos, self.charge - 1)))
    }

    /// Moves the particle at `from` to the empty position `to`; the sign is
    /// `(-1)^{#occupied strictly between}`.
    pub fn move_particle(&self, from: i64, to: i64) -> Option<(i32, BasisState)> {
        if from == to {
            return self.is_occupied(from).then(|| (1, self.clone()));
        }
        let (s1, st) = self.annihilate(from)?;
        let (s2, out) = st.create(to)?;
        Some((s1 * s2, BasisState { charge: self.charge, shape: out.shape }))
    }

    /// Applies a single fermion mode.
    pub fn apply_fermion(&self, f: Fermion) -> Option<(i32, BasisState)> {
        match f {
            Fermion::Psi(m) => self.create(-m - 1),
            Fermion::PsiStar(n) => self.annihilate(n - 1),
        }
    }
}

impl fmt::Display for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{};{}>", self.shape, self.charge)
    }
}

fn parity(n: usize) -> i32 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `⟨λ;p|μ;q⟩ = δ_{pq} δ_{λμ}`.
pub fn basis_inner(bra: &BasisState, ket: &BasisState) -> u8 {
    u8::from(bra == ket)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(parts: &[u32], p: i64) -> BasisState {
        BasisState::new(Partition::new(parts.to_vec()).unwrap(), p)
    }

    #[test]
    fn inner_products() {
        assert_eq!(basis_inner(&st(&[], 0), &st(&[], 0)), 1);
        assert_eq!(basis_inner(&st(&[1], 0), &st(&[], 0)), 0);
        assert_eq!(basis_inner(&st(&[], 1), &st(&[], 0)), 0);
    }

    #[test]
    fn vacuum_conditions() {
        for p in -3..=3 {
            let vac = BasisState::vacuum(p);
            for m in -p..(-p + 6) {
                assert!(vac.apply_fermion(Fermion::Psi(m)).is_none());
            }
            for m in (p + 1)..(p + 7) {
                assert!(vac.apply_fermion(Fermion::PsiStar(m)).is_none());
            }
        }
    }

    #[test]
    fn product_formula_has_positive_sign() {
        for p in -2..=2 {
            for shape in [&[1][..], &[2, 1], &[3, 3, 1], &[1, 1, 1, 1]] {
                let target = st(shape, p);
                let n = shape.len() as i64;
                let mut state = BasisState::vacuum(p);
                let mut sign = 1;
                for j in (p - n + 1..=p).rev() {
                    let (s, next) = state.apply_fermion(Fermion::PsiStar(j)).unwrap();
                    sign *= s;
                    state = next;
                }
                for i in (1..=n).rev() {
                    let s_i = shape[(i - 1) as usize] as i64 - i + p;
                    let (s, next) = state.apply_fermion(Fermion::Psi(-s_i - 1)).unwrap();
                    sign *= s;
                    state = next;
                }
                assert_eq!((sign, state), (1, target));
            }
        }
    }

    #[test]
    fn moves_and_degree() {
        let vac = BasisState::vacuum(0);
        let (sign, up) = vac.move_particle(-1, 0).unwrap();
        assert_eq!((sign, up), (1, st(&[1], 0)));
        // Moving the particle at -2 over the one at -1 to 0 yields (1,1) with a sign.
        let (sign, s) = vac.move_particle(-2, 0).unwrap();
        assert_eq!((sign, s), (-1, st(&[1, 1], 0)));
        assert!(vac.move_particle(-1, -2).is_none());
    }

    #[test]
    fn occupancy_queries() {
        let s = st(&[2, 1], 0);
        assert_eq!(s.positions(3), vec![1, -1, -3]);
        assert!(s.is_occupied(-4));
        assert!(!s.is_occupied(-2));
        assert_eq!(s.count_above(-2), 2);
        assert_eq!(s.empty_up_to(2), vec![-2, 0, 2]);
        assert_eq!(s.occupied_from(-4), vec![1, -1, -3, -4]);
    }
}
