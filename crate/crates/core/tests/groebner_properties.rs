use clustersing::groebner::{
    buchberger, eliminate, ideal_dimension, ideal_membership, minors, Dimension, GbConfig, Ideal, MonomialOrder,
};
use clustersing::poly::{var_names, Exponent};
use clustersing::presentations::reduced_presentation;
use clustersing::quiver::DynkinType;
use clustersing::{FieldElem, FieldSpec, MultiPoly, PolyRing, VarNames};
use proptest::prelude::*;

const NVARS: usize = 3;

fn names() -> VarNames {
    var_names(&["x", "y", "z"])
}

fn field_strategy() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![Just(FieldSpec::rationals()), Just(FieldSpec::prime(2)), Just(FieldSpec::prime(3)), Just(FieldSpec::prime(5))]
}

type RawPoly = Vec<([u32; NVARS], i64)>;

fn raw_poly(max_exp: u32, max_terms: usize) -> impl Strategy<Value = RawPoly> {
    prop::collection::vec(([0..=max_exp, 0..=max_exp, 0..=max_exp], -3i64..4), 1..=max_terms)
}

fn build(field: FieldSpec, raw: &RawPoly, max_degree: u32) -> MultiPoly {
    let terms: Vec<(Exponent, FieldElem)> = raw
        .iter()
        .filter(|(e, _)| e.iter().sum::<u32>() <= max_degree)
        .map(|(e, c)| (Exponent::from_slice(e), field.from_i64(*c)))
        .collect();
    MultiPoly::from_terms(field, names(), terms)
}

fn ideal_of(field: FieldSpec, raws: &[RawPoly], max_degree: u32) -> Option<Ideal> {
    let gens: Vec<MultiPoly> = raws.iter().map(|r| build(field, r, max_degree)).filter(|p| !p.is_zero()).collect();
    if gens.is_empty() {
        return None;
    }
    Ideal::new(field, names(), gens).ok()
}

fn monomials_up_to(d: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    for a in 0..=d {
        for b in 0..=d - a {
            for c in 0..=d - a - b {
                out.push(Exponent::from_slice(&[a, b, c]));
            }
        }
    }
    out
}

/// Rank of a dense matrix over the field by Gaussian elimination.
fn rank(mut rows: Vec<Vec<FieldElem>>) -> usize {
    let mut r = 0;
    let cols = rows.first().map_or(0, |row| row.len());
    for c in 0..cols {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, pivot);
        let inv = rows[r][c].inv().unwrap();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].mul(&inv);
                for j in c..cols {
                    let v = rows[i][j].sub(&factor.mul(&rows[r][j]));
                    rows[i][j] = v;
                }
            }
        }
        r += 1;
    }
    r
}

/// Whether `f = Σ c_i g_i` with every `deg c_i ≤ bound`, by linear algebra on coefficients.
fn syzygy_search(f: &MultiPoly, gens: &[MultiPoly], bound: u32) -> bool {
    let multipliers = monomials_up_to(bound);
    let mut columns: Vec<MultiPoly> = Vec::new();
    for g in gens {
        for m in &multipliers {
            columns.push(g.mul_monomial(m));
        }
    }
    let mut rows_index: std::collections::BTreeSet<Exponent> = f.terms().map(|(e, _)| e.clone()).collect();
    for c in &columns {
        rows_index.extend(c.terms().map(|(e, _)| e.clone()));
    }
    let build_rows = |with_target: bool| -> Vec<Vec<FieldElem>> {
        rows_index
            .iter()
            .map(|e| {
                let mut row: Vec<FieldElem> = columns.iter().map(|c| c.coefficient(e)).collect();
                if with_target {
                    row.push(f.coefficient(e));
                }
                row
            })
            .collect()
    };
    rank(build_rows(false)) == rank(build_rows(true))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn bases_are_reduced_and_closed_under_s_pairs(
        field in field_strategy(),
        raws in prop::collection::vec(raw_poly(2, 3), 1..4),
        lex in any::<bool>(),
    ) {
        let Some(ideal) = ideal_of(field, &raws, 3) else { return Ok(()) };
        let order = if lex { MonomialOrder::Lex } else { MonomialOrder::DegRevLex };
        let gb = buchberger(&ideal, &order).unwrap();
        prop_assert!(gb.verify().unwrap());
        for g in ideal.generators() {
            prop_assert!(ideal_membership(g, &gb).unwrap());
        }
    }

    #[test]
    fn membership_agrees_with_syzygy_search(
        field in field_strategy(),
        raws in prop::collection::vec(raw_poly(2, 3), 1..3),
        cofactors in prop::collection::vec(raw_poly(1, 3), 2),
        noise in raw_poly(3, 2),
        add_noise in any::<bool>(),
    ) {
        let Some(ideal) = ideal_of(field, &raws, 3) else { return Ok(()) };
        let gb = buchberger(&ideal, &MonomialOrder::DegRevLex).unwrap();
        let mut f = MultiPoly::zero(field, names());
        for (g, c) in ideal.generators().iter().zip(&cofactors) {
            f = f.add(&g.mul(&build(field, c, 1)));
        }
        if add_noise {
            f = f.add(&build(field, &noise, 3));
        }
        let found = syzygy_search(&f, ideal.generators(), 2);
        let member = ideal_membership(&f, &gb).unwrap();
        if found {
            prop_assert!(member);
        }
        if !add_noise {
            prop_assert!(found && member);
        }
        if !member {
            prop_assert!(!found);
        }
    }

    #[test]
    fn eliminants_lie_in_the_ideal(
        field in field_strategy(),
        raws in prop::collection::vec(raw_poly(2, 3), 1..4),
        drop in 0..NVARS,
    ) {
        let Some(ideal) = ideal_of(field, &raws, 3) else { return Ok(()) };
        let cfg = GbConfig::default();
        let elim = eliminate(&ideal, &[drop], &cfg).unwrap();
        let kept: Vec<usize> = (0..NVARS).filter(|&v| v != drop).collect();
        prop_assert_eq!(elim.nvars(), kept.len());
        let back = elim.embed(names(), &kept);
        let gb = buchberger(&ideal, &MonomialOrder::DegRevLex).unwrap();
        for g in back.generators() {
            prop_assert_eq!(g.degree_in(drop), 0);
            prop_assert!(ideal_membership(g, &gb).unwrap());
        }
    }

    #[test]
    fn products_of_distinct_linear_forms_are_hypersurfaces(
        field in field_strategy(),
        forms in prop::collection::btree_set(([0i64..3, 0i64..3, 0i64..3], 0i64..3), 1..4),
    ) {
        let mut f = MultiPoly::one(field, names());
        let mut used = Vec::new();
        for (coeffs, c) in &forms {
            let mut l = MultiPoly::from_int(field, names(), *c);
            for (v, k) in coeffs.iter().enumerate() {
                l = l.add(&MultiPoly::var(field, names(), v).scale(&field.from_i64(*k)));
            }
            if l.is_constant() || used.iter().any(|u: &MultiPoly| u.monic() == l.monic()) {
                continue;
            }
            used.push(l.clone());
            f = f.mul(&l);
        }
        if used.is_empty() {
            return Ok(());
        }
        let dim = ideal_dimension(&Ideal::new(field, names(), vec![f]).unwrap(), &GbConfig::default()).unwrap();
        prop_assert_eq!(dim, Dimension::Dim(NVARS - 1));
    }
}

#[test]
fn presentation_hypersurfaces_have_codimension_one() {
    let cfg = GbConfig::default();
    for field in [FieldSpec::rationals(), FieldSpec::prime(2), FieldSpec::prime(3)] {
        for (kind, n) in [(DynkinType::A, 3), (DynkinType::A, 6), (DynkinType::C, 4), (DynkinType::F4, 4), (DynkinType::G2, 2)] {
            let p = reduced_presentation(kind, n, field).unwrap();
            let nvars = p.names().len();
            assert_eq!(ideal_dimension(&p.ideal, &cfg).unwrap(), Dimension::Dim(nvars - 1), "{}", p.label());
        }
    }
}

#[test]
fn minors_of_small_matrices() {
    let ring = PolyRing::new(FieldSpec::rationals(), &["a", "b", "c"]);
    let diag = vec![
        vec![ring.p("a"), ring.zero(), ring.zero()],
        vec![ring.zero(), ring.p("b"), ring.zero()],
        vec![ring.zero(), ring.zero(), ring.p("c")],
    ];
    let two: Vec<MultiPoly> = minors(&diag, 2).unwrap().into_iter().filter(|m| !m.is_zero()).collect();
    assert_eq!(two, vec![ring.p("a*b"), ring.p("a*c"), ring.p("b*c")]);
    assert_eq!(minors(&diag, 3).unwrap(), vec![ring.p("a*b*c")]);
    assert_eq!(minors(&diag, 1).unwrap(), vec![ring.p("a"), ring.p("b"), ring.p("c")]);
    assert!(minors(&diag, 4).unwrap().is_empty());
}
