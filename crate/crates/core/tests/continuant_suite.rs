use clustersing::blowup::point_blowup_is_smooth;
use clustersing::continuant::{continuant_det_oracle, continuant_identities, odd_scaling_identity, standard_continuant, standard_ring};
use clustersing::groebner::{GbConfig, Ideal};
use clustersing::singularity::{deformed_continuant_sing, Verdict};
use clustersing::{FieldSpec, MultiPoly};

fn fields() -> [FieldSpec; 4] {
    [FieldSpec::rationals(), FieldSpec::prime(2), FieldSpec::prime(3), FieldSpec::prime(5)]
}

#[test]
fn recursion_matches_the_determinant() {
    for field in [FieldSpec::rationals(), FieldSpec::prime(2)] {
        for n in 1..=10 {
            assert_eq!(continuant_det_oracle(field, n).unwrap(), standard_continuant(field, n), "n = {n}");
        }
    }
}

#[test]
fn identity_families_up_to_twelve() {
    for field in [FieldSpec::rationals(), FieldSpec::prime(2)] {
        for n in 0..=12 {
            let r = continuant_identities(field, n).unwrap();
            assert!(r.all_hold(), "{r:?}");
        }
    }
}

#[test]
fn scaling_of_odd_continuants() {
    for m in 0..=4 {
        assert!(odd_scaling_identity(FieldSpec::rationals(), m).unwrap());
    }
}

#[test]
fn deformation_table() {
    let cfg = GbConfig::default();
    for field in fields() {
        for n in 1..=9 {
            for sign in [1i64, -1] {
                let lambda = field.from_i64(sign);
                let v = deformed_continuant_sing(n, &lambda, &cfg).unwrap();
                assert!(v.matches, "{v:?}");
                let m = n / 2;
                let special = n % 2 == 0 && lambda == field.from_i64(if m % 2 == 1 { 1 } else { -1 });
                assert_eq!(v.computed == Verdict::Singular, special, "n = {n}, λ = {lambda} over {field}");
            }
        }
    }
}

#[test]
fn odd_deformations_are_smooth() {
    let cfg = GbConfig::default();
    for p in [2u64, 3, 5] {
        let field = FieldSpec::prime(p);
        for n in (1..=9).step_by(2) {
            for c in 1..p {
                let v = deformed_continuant_sing(n, &field.from_i64(c as i64), &cfg).unwrap();
                assert_eq!(v.computed, Verdict::Smooth, "n = {n}, λ = {c} mod {p}");
            }
        }
    }
}

#[test]
fn origin_blowup_smooths_the_a1_deformation() {
    let cfg = GbConfig::default();
    let field = FieldSpec::rationals();
    let names = standard_ring(6);
    let f = standard_continuant(field, 6).add(&MultiPoly::one(field, names.clone()));
    let ideal = Ideal::new(field, names, vec![f]).unwrap();
    assert!(point_blowup_is_smooth(&ideal, &vec![field.zero(); 6], &cfg).unwrap());
}
