use clustersing::groebner::GbConfig;
use clustersing::quiver::{dynkin_seed, DynkinType, ExchangeMatrix};
use clustersing::seed::{check_laurent, explore_exchange_graph, lower_bound_presentation, Seed, DEFAULT_EXPLORATION_BUDGET};
use clustersing::FieldSpec;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A random acyclic quiver with simple arrows, all pointing up a random vertex order.
fn random_acyclic(rng: &mut ChaCha8Rng, n: usize) -> ExchangeMatrix {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut b = vec![vec![0i64; n]; n];
    for a in 0..n {
        for c in a + 1..n {
            if rng.gen_bool(0.5) {
                let (i, j) = (order[a], order[c]);
                b[i][j] = 1;
                b[j][i] = -1;
            }
        }
    }
    ExchangeMatrix::new(b).unwrap()
}

#[test]
fn laurent_on_random_acyclic_quivers() {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_611);
    for run in 0..100 {
        let n = rng.gen_range(2..=5);
        let b = random_acyclic(&mut rng, n);
        let len = rng.gen_range(0..=8);
        let seq: Vec<usize> = (0..len).map(|_| rng.gen_range(0..n)).collect();
        let seed = Seed::initial(FieldSpec::rationals(), b.clone());
        let witness = check_laurent(&seed, &seq).unwrap();
        assert!(witness.is_none(), "run {run}: {b} along {seq:?} gives {witness:?}");
    }
}

fn small_matrix() -> impl Strategy<Value = ExchangeMatrix> {
    (2usize..5).prop_flat_map(|n| {
        prop::collection::vec(-1i64..2, n * (n - 1) / 2).prop_map(move |ks| {
            let mut b = vec![vec![0i64; n]; n];
            let mut it = ks.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    let k = it.next().unwrap();
                    b[i][j] = k;
                    b[j][i] = -k;
                }
            }
            ExchangeMatrix::new(b).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, ..ProptestConfig::default() })]

    #[test]
    fn seed_mutation_is_an_involution(b in small_matrix(), walk in prop::collection::vec(0usize..4, 0..4), k in 0usize..4) {
        let n = b.rank();
        let walk: Vec<usize> = walk.into_iter().map(|v| v % n).collect();
        let s = Seed::initial(FieldSpec::rationals(), b).mutate_sequence(&walk).unwrap();
        let k = k % n;
        prop_assert_eq!(s.mutate(k).unwrap().mutate(k).unwrap(), s);
    }
}

#[test]
fn paper_seeds_are_involutive() {
    for (kind, n) in [(DynkinType::A, 4), (DynkinType::B, 3), (DynkinType::C, 3), (DynkinType::D, 4), (DynkinType::G2, 2), (DynkinType::F4, 4)] {
        let s = Seed::initial(FieldSpec::rationals(), dynkin_seed(kind, n).unwrap().matrix);
        for k in 0..n {
            assert_eq!(s.mutate(k).unwrap().mutate(k).unwrap(), s);
        }
    }
}

#[test]
fn small_dynkin_graphs_close_up() {
    let cases = [
        (DynkinType::A, 1, 2, 2),
        (DynkinType::A, 2, 5, 5),
        (DynkinType::A, 3, 9, 14),
        (DynkinType::A, 4, 14, 42),
        (DynkinType::B, 2, 6, 6),
        (DynkinType::B, 3, 12, 20),
        (DynkinType::C, 3, 12, 20),
        (DynkinType::D, 4, 16, 50),
        (DynkinType::G2, 2, 8, 8),
    ];
    for (kind, n, variables, seeds) in cases {
        let s = Seed::initial(FieldSpec::rationals(), dynkin_seed(kind, n).unwrap().matrix);
        let r = explore_exchange_graph(&s, DEFAULT_EXPLORATION_BUDGET).unwrap();
        assert!(r.complete, "{kind} {n}");
        assert!(r.non_laurent.is_empty(), "{kind} {n}");
        assert_eq!(r.cluster_variables.len(), variables, "{kind} {n}");
        assert_eq!(r.seeds, seeds, "{kind} {n}");
    }
}

#[test]
fn rank_four_graphs_close_up() {
    for kind in [DynkinType::B, DynkinType::C, DynkinType::F4] {
        let s = Seed::initial(FieldSpec::rationals(), dynkin_seed(kind, 4).unwrap().matrix);
        let r = explore_exchange_graph(&s, DEFAULT_EXPLORATION_BUDGET).unwrap();
        assert!(r.complete && r.non_laurent.is_empty(), "{kind}");
    }
}

#[test]
fn lower_bound_generators_are_a_groebner_basis() {
    let cfg = GbConfig::default();
    let mut cases: Vec<(DynkinType, usize)> = (1..=5).map(|n| (DynkinType::A, n)).collect();
    cases.extend([(DynkinType::B, 3), (DynkinType::C, 3), (DynkinType::D, 4)]);
    for field in [FieldSpec::rationals(), FieldSpec::prime(2)] {
        for &(kind, n) in &cases {
            let p = lower_bound_presentation(field, &dynkin_seed(kind, n).unwrap().matrix);
            assert!(p.acyclic);
            assert!(p.is_groebner_basis(&cfg).unwrap(), "{kind} {n} over {field}");
        }
    }
}

#[test]
fn star_lower_bound_generators() {
    let p = lower_bound_presentation(FieldSpec::rationals(), &dynkin_seed(DynkinType::Star, 4).unwrap().matrix);
    let ring = clustersing::PolyRing::new(FieldSpec::rationals(), &p.names);
    assert_eq!(p.generators[0], ring.p("x1*y1 - x4 - 1"));
    assert_eq!(p.generators[3], ring.p("x4*y4 - x1*x2 - x3"));
}
