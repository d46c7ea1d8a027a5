use clustersing::quiver::{dynkin_seed, is_finite_type, DynkinType, ExchangeMatrix, FiniteTypeStatus, Quiver};
use proptest::prelude::*;

/// A random skew-symmetrizable matrix: `d_i b_ij = -d_j b_ji` by construction.
fn symmetrizable() -> impl Strategy<Value = ExchangeMatrix> {
    (2usize..6).prop_flat_map(|n| {
        (prop::collection::vec(1i64..4, n), prop::collection::vec(-2i64..3, n * (n - 1) / 2)).prop_map(move |(d, ks)| {
            let mut b = vec![vec![0i64; n]; n];
            let mut it = ks.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    let k = it.next().unwrap();
                    let g = gcd(d[i], d[j]);
                    b[i][j] = k * d[j] / g;
                    b[j][i] = -k * d[i] / g;
                }
            }
            ExchangeMatrix::new(b).unwrap()
        })
    })
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn random_quiver() -> impl Strategy<Value = Quiver> {
    (2usize..7).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n, 1u32..3), 0..2 * n).prop_map(move |raw| {
            let mut arrows = Vec::new();
            for (i, j, m) in raw {
                if i != j && !arrows.iter().any(|&(a, b, _)| (a, b) == (i, j) || (a, b) == (j, i)) {
                    arrows.push((i, j, m));
                }
            }
            Quiver::new(n, &arrows).unwrap()
        })
    })
}

fn symmetrizes(b: &ExchangeMatrix, d: &[i64]) -> bool {
    let n = b.rank();
    (0..n).all(|i| (0..n).all(|j| d[i] * b.get(i, j) == -d[j] * b.get(j, i)))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 500, ..ProptestConfig::default() })]

    #[test]
    fn matrix_mutation_is_an_involution(b in symmetrizable(), k in 0usize..6) {
        let k = k % b.rank();
        prop_assert_eq!(b.mutate(k).unwrap().mutate(k).unwrap(), b);
    }

    #[test]
    fn quiver_and_matrix_mutation_commute(q in random_quiver(), k in 0usize..7) {
        let k = k % q.vertex_count();
        let via_matrix = Quiver::from_matrix(&q.to_matrix().mutate(k).unwrap()).unwrap();
        prop_assert_eq!(q.mutate(k).unwrap(), via_matrix);
        prop_assert_eq!(q.mutate(k).unwrap().mutate(k).unwrap(), q);
    }

    #[test]
    fn symmetrizer_survives_mutation(b in symmetrizable(), seq in prop::collection::vec(0usize..6, 0..8)) {
        let d = b.symmetrizer().unwrap().to_vec();
        prop_assert!(symmetrizes(&b, &d));
        let seq: Vec<usize> = seq.into_iter().map(|k| k % b.rank()).collect();
        let m = b.mutate_sequence(&seq).unwrap();
        prop_assert_eq!(m.symmetrizer().unwrap(), &d[..]);
        prop_assert!(symmetrizes(&m, &d));
        prop_assert!(m.is_skew_symmetric() == b.is_skew_symmetric());
    }

    #[test]
    fn cartan_counterpart_shape(b in symmetrizable()) {
        let a = b.cartan_counterpart();
        for i in 0..b.rank() {
            for j in 0..b.rank() {
                let e = a.entries()[i][j];
                if i == j { prop_assert_eq!(e, 2); } else { prop_assert_eq!(e, -b.get(i, j).abs()); }
            }
        }
    }
}

fn paper_seeds() -> Vec<(DynkinType, usize)> {
    let mut out = Vec::new();
    out.extend((1..=9).map(|n| (DynkinType::A, n)));
    out.extend((2..=6).map(|n| (DynkinType::B, n)));
    out.extend((3..=6).map(|n| (DynkinType::C, n)));
    out.extend((4..=8).map(|n| (DynkinType::D, n)));
    out.extend([(DynkinType::E6, 6), (DynkinType::E7, 7), (DynkinType::E8, 8), (DynkinType::F4, 4), (DynkinType::G2, 2)]);
    out
}

#[test]
fn paper_seeds_are_involutive_and_finite() {
    for (kind, n) in paper_seeds() {
        let s = dynkin_seed(kind, n).unwrap();
        for k in 0..n {
            assert_eq!(s.matrix.mutate(k).unwrap().mutate(k).unwrap(), s.matrix, "{kind} {n} at {k}");
        }
        assert!(s.matrix.cartan_counterpart().is_finite_type(), "{kind} {n}");
        assert!(matches!(is_finite_type(&s.matrix, 10).unwrap(), FiniteTypeStatus::Finite { .. }));
    }
    for n in 3..=6 {
        let s = dynkin_seed(DynkinType::Star, n).unwrap();
        for k in 0..n {
            assert_eq!(s.matrix.mutate(k).unwrap().mutate(k).unwrap(), s.matrix);
        }
    }
}

#[test]
fn rank_out_of_range_is_rejected() {
    assert!(dynkin_seed(DynkinType::D, 3).is_err());
    assert!(dynkin_seed(DynkinType::C, 2).is_err());
    assert!(dynkin_seed(DynkinType::E6, 7).is_err());
    assert!(ExchangeMatrix::new(vec![vec![0, 1], vec![-1, 0]]).unwrap().mutate(2).is_err());
}
