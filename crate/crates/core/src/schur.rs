//! Principal specialization `s_λ(q^ρ)`, `q^ρ = (q^{1/2}, q^{3/2}, …)`.
//!
//! Two independent routes: the hook-length product and a direct sum over
//! semi-standard tableaux where an entry `m` weighs `q^{m - 1/2} = u^{2m-1}`.

use crate::partitions::{hooks_and_n, Partition};
use crate::qalg::{geometric, QSeries, Rational};

/// Lowest u-exponent of `s_λ(q^ρ)`, namely `2 n(λ) + |λ|`.
pub fn schur_valuation(lambda: &Partition) -> i64 {
    2 * lambda.n_value() as i64 + lambda.degree() as i64
}

/// `q^{n(λ)+|λ|/2} ∏ (1 - q^{h})^{-1}` expanded through `u^{n_u}`.
pub fn principal_schur_hook(lambda: &Partition, n_u: i64) -> QSeries {
    let (hooks, _) = hooks_and_n(lambda);
    let v = schur_valuation(lambda);
    let rel = n_u - v;
    if rel < 0 {
        return QSeries::zero(n_u);
    }
    let mut acc = QSeries::one(rel);
    for h in hooks {
        acc = acc.mul_ref(&geometric(0, 2 * h as i64, rel));
    }
    acc.shift(v)
}

/// Sum over semi-standard tableaux of shape `λ` of `∏ u^{2·entry - 1}`,
/// keeping tableaux whose weight is at most `n_u`.
pub fn principal_schur_tableau(lambda: &Partition, n_u: i64) -> QSeries {
    if n_u < 0 {
        return QSeries::zero(n_u);
    }
    let max_entry = ((n_u + 1) as u64).div_ceil(2) as u32;
    let shape: Vec<usize> = lambda.parts().iter().map(|&p| p as usize).collect();
    let cells: Vec<(usize, usize)> =
        shape.iter().enumerate().flat_map(|(i, &len)| (0..len).map(move |j| (i, j))).collect();
    let mut counts = vec![0u64; n_u as usize + 1];
    let mut grid: Vec<Vec<u32>> = shape.iter().map(|&len| vec![0; len]).collect();
    // Lower bound on the weight of the boxes from `idx` onward: an entry in
    // row i is at least i + 1.
    let mut tail_min = vec![0i64; cells.len() + 1];
    for idx in (0..cells.len()).rev() {
        tail_min[idx] = tail_min[idx + 1] + 2 * (cells[idx].0 as i64 + 1) - 1;
    }
    fill(0, 0, &cells, &tail_min, max_entry, n_u, &mut grid, &mut counts);
    let terms = counts
        .into_iter()
        .enumerate()
        .filter(|(_, c)| *c > 0)
        .map(|(e, c)| (e as i64, Rational::from_integer(c.into())));
    QSeries::from_terms(terms, n_u)
}

#[allow(clippy::too_many_arguments)]
fn fill(
    idx: usize,
    weight: i64,
    cells: &[(usize, usize)],
    tail_min: &[i64],
    max_entry: u32,
    n_u: i64,
    grid: &mut Vec<Vec<u32>>,
    counts: &mut [u64],
) {
    if idx == cells.len() {
        counts[weight as usize] += 1;
        return;
    }
    let (i, j) = cells[idx];
    let left = if j > 0 { grid[i][j - 1] } else { 1 };
    let above = if i > 0 { grid[i - 1][j] + 1 } else { 1 };
    let rest = tail_min[idx + 1];
    for e in left.max(above)..=max_entry {
        let w = weight + 2 * e as i64 - 1;
        if w + rest > n_u {
            break;
        }
        grid[i][j] = e;
        fill(idx + 1, w, cells, tail_min, max_entry, n_u, grid, counts);
    }
    grid[i][j] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalg::EXACT;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn empty_shape_is_one() {
        assert_eq!(principal_schur_hook(&Partition::empty(), 10), QSeries::one(10));
        assert_eq!(principal_schur_tableau(&Partition::empty(), 10), QSeries::one(10));
    }

    #[test]
    fn single_box() {
        let expect = QSeries::from_ints(1, &[1, 0, 1, 0, 1, 0, 1, 0, 1], 9);
        assert_eq!(principal_schur_hook(&p(&[1]), 9), expect);
        assert_eq!(principal_schur_tableau(&p(&[1]), 9), expect);
    }

    #[test]
    fn row_of_two() {
        // q / ((1-q)(1-q^2)) = q + q^2 + 2q^3 + 2q^4 + 3q^5 + ...
        let s = principal_schur_hook(&p(&[2]), 10);
        let expect = QSeries::from_ints(2, &[1, 0, 1, 0, 2, 0, 2, 0, 3], 10);
        assert_eq!(s, expect);
    }

    #[test]
    fn routes_agree_on_small_shapes() {
        for shape in [&[1, 1][..], &[2, 1], &[3], &[2, 2], &[3, 1, 1]] {
            let l = p(shape);
            assert_eq!(principal_schur_hook(&l, 24), principal_schur_tableau(&l, 24), "{l}");
        }
    }

    #[test]
    fn window_below_valuation() {
        let s = principal_schur_hook(&p(&[2, 2]), 3);
        assert!(s.is_zero());
        assert_eq!(s.trunc(), 3);
        assert_ne!(s.trunc(), EXACT);
    }
}
