use proptest::prelude::*;

use melting_crystal::crystal::{z3d, Z3dRoute};
use melting_crystal::partitions::{partitions_up_to, PlanePartition};
use melting_crystal::qalg::{geometric, Monomial, EXACT};
use melting_crystal::schur::{principal_schur_hook, principal_schur_tableau};
use melting_crystal::toda::{GElement, GMatrix};
use melting_crystal::{Partition, QSeries};

fn series(max_len: usize) -> impl Strategy<Value = QSeries> {
    (-4i64..4, prop::collection::vec(-5i64..=5, 0..max_len), 4i64..16)
        .prop_map(|(min, coeffs, trunc)| QSeries::from_ints(min, &coeffs, trunc))
}

fn partition(max_size: u32) -> impl Strategy<Value = Partition> {
    let all = partitions_up_to(max_size);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

/// Random plane partition: entries sorted down rows and columns.
fn plane_partition() -> impl Strategy<Value = PlanePartition> {
    (1usize..4, 1usize..4)
        .prop_flat_map(|(r, c)| prop::collection::vec(0u32..4, r * c).prop_map(move |v| (r, c, v)))
        .prop_map(|(r, c, mut v)| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            let mut rows: Vec<Vec<u32>> = v.chunks(c).map(<[u32]>::to_vec).collect();
            for j in 0..c {
                let mut col: Vec<u32> = (0..r).map(|i| rows[i][j]).collect();
                col.sort_unstable_by(|a, b| b.cmp(a));
                for i in 0..r {
                    rows[i][j] = col[i];
                }
            }
            for row in &mut rows {
                row.sort_unstable_by(|a, b| b.cmp(a));
            }
            PlanePartition::new(rows).expect("sorted rows and columns form a plane partition")
        })
}

/// `h_n(q^ρ) = u^n / ∏_{i<=n} (1 - q^i)`.
fn h_principal(n: i64, n_u: i64) -> QSeries {
    if n < 0 {
        return QSeries::zero(EXACT);
    }
    let mut out = QSeries::u_pow(n, n_u);
    for i in 1..=n {
        out = out.mul_ref(&geometric(0, 2 * i, n_u));
    }
    out
}

fn det(m: &[Vec<QSeries>]) -> QSeries {
    match m.len() {
        0 => QSeries::one(EXACT),
        1 => m[0][0].clone(),
        n => {
            let mut acc = QSeries::zero(EXACT);
            for j in 0..n {
                let minor: Vec<Vec<QSeries>> =
                    m[1..].iter().map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect()).collect();
                let term = m[0][j].mul_ref(&det(&minor));
                acc = if j % 2 == 0 { acc.add_ref(&term) } else { acc.sub_ref(&term) };
            }
            acc
        }
    }
}

/// Skew Schur function at `q^ρ` by Jacobi-Trudi.
fn skew_schur(lambda: &Partition, mu: &Partition, n_u: i64) -> QSeries {
    if !lambda.contains(mu) {
        return QSeries::zero(EXACT);
    }
    let n = lambda.len();
    let m: Vec<Vec<QSeries>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| h_principal(lambda.part(i + 1) as i64 - mu.part(j + 1) as i64 - i as i64 + j as i64, n_u))
                .collect()
        })
        .collect();
    det(&m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in series(8), b in series(8), c in series(8)) {
        prop_assert!(a.add_ref(&b).agree(&b.add_ref(&a)).is_ok());
        prop_assert!(a.mul_ref(&b).agree(&b.mul_ref(&a)).is_ok());
        prop_assert!(a.mul_ref(&b).mul_ref(&c).agree(&a.mul_ref(&b.mul_ref(&c))).is_ok());
        let lhs = a.mul_ref(&b.add_ref(&c));
        let rhs = a.mul_ref(&b).add_ref(&a.mul_ref(&c));
        prop_assert!(lhs.agree(&rhs).is_ok());
        prop_assert!(a.sub_ref(&a).is_zero());
    }

    #[test]
    fn inverse_is_inverse(mut coeffs in prop::collection::vec(-3i64..=3, 1..6), trunc in 0i64..16) {
        coeffs[0] = 1;
        let a = QSeries::from_ints(0, &coeffs, trunc);
        let prod = a.mul_ref(&a.inv().unwrap());
        prop_assert!(prod.agree(&QSeries::one(trunc)).is_ok());
    }

    #[test]
    fn truncation_is_monotone(lambda in partition(6), n in 0i64..24) {
        let small = principal_schur_hook(&lambda, n);
        let large = principal_schur_hook(&lambda, n + 6);
        prop_assert_eq!(small.agree(&large), Ok(n));
        prop_assert!(large.truncate(n).agree(&small).is_ok());
    }

    #[test]
    fn schur_routes_agree(lambda in partition(6)) {
        let a = principal_schur_hook(&lambda, 24);
        let b = principal_schur_tableau(&lambda, 24);
        prop_assert!(a.agree(&b).is_ok());
    }

    #[test]
    fn slices_round_trip(pi in plane_partition()) {
        let slices = pi.diagonal_slices();
        prop_assert!(slices.is_interlacing_chain());
        prop_assert_eq!(slices.total_degree(), pi.volume());
        prop_assert_eq!(PlanePartition::from_slices(&slices).unwrap(), pi);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn middle_block_is_skew_cauchy(alpha in partition(3), beta in partition(3)) {
        let t = 12;
        let g = GMatrix::build(GElement::TopVertex { use_k: false }, 0, 3, t).unwrap();
        let shift = g.side_weight(&alpha) + g.side_weight(&beta);
        let entry = g.entry(&alpha, &beta).unwrap().coeff(&Monomial::one(0)).shift(-shift);
        let mut sum = QSeries::zero(EXACT);
        for tau in partitions_up_to(3) {
            sum = sum.add_ref(&skew_schur(&alpha, &tau, t).mul_ref(&skew_schur(&beta, &tau, t)));
        }
        let oracle = z3d(t, Z3dRoute::Product).unwrap().mul_ref(&sum);
        prop_assert!(entry.agree(&oracle).is_ok(), "{} vs {}", entry, oracle);
    }

    #[test]
    fn h_is_single_row_schur(n in 0u32..6) {
        let row = if n == 0 { Partition::empty() } else { Partition::new(vec![n]).unwrap() };
        prop_assert!(h_principal(n as i64, 20).agree(&principal_schur_hook(&row, 20)).is_ok());
    }
}

