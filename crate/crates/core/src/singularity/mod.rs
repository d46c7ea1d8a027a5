//! Singular loci by the Jacobian criterion, comparison with predicted components, local
//! certificates, and the checks of the classification theorems.

mod certificate;
mod scripts;
mod theorems;

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::field::{FieldElem, FieldSpec};
use crate::groebner::{
    buchberger_with, dimension_of_basis, ideal_dimension, intersect, jacobian, minors, Dimension, GbConfig,
    GroebnerBasis, Ideal, IdealJson, MonomialOrder, RadicalTester,
};
use crate::poly::{Exponent, MultiPoly};
use crate::presentations::Presentation;

pub use certificate::{
    certify_a1, recognize_model, A1Certificate, CertificateCheck, LocalCertificate, ModelKind, Patch,
};
pub use scripts::{
    local_certificates, predicted_locus, star_generic_certificate, star_origin_certificate, theorem_a_branch, Branch,
    PredictedLocus,
};
pub use theorems::{
    brute_force_check, cn_char2_identification, default_theorem_a_cells, deformed_continuant_sing, small_presentations,
    theorem_c_components, verify_theorem_a, verify_theorem_c, BruteForceReport, CertificateSummary, CnIdentification,
    DeformationVerdict, TheoremACell, TheoremAReport, TheoremCReport, TheoremCRow,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Smooth,
    Singular,
}

/// Outcome of comparing a computed singular locus with a list of predicted components.
#[derive(Clone, Debug, Serialize)]
pub struct PredictionMatch {
    pub components: usize,
    /// Every point of the computed locus lies on some predicted component.
    pub locus_in_union: bool,
    /// Every predicted component lies in the computed locus, one flag per component.
    pub component_in_locus: Vec<bool>,
    pub matches: bool,
}

#[derive(Clone, Debug)]
pub struct SingularLocusReport {
    pub label: String,
    pub field: FieldSpec,
    pub codimension: usize,
    pub sing_ideal: Ideal,
    pub basis: GroebnerBasis,
    pub verdict: Verdict,
    pub dimension: Dimension,
    pub predicted: Option<PredictionMatch>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SingularLocusJson {
    pub label: String,
    pub field: FieldSpec,
    pub codimension: usize,
    pub verdict: Verdict,
    pub dimension: Dimension,
    pub sing_basis: IdealJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted: Option<PredictionMatch>,
}

impl SingularLocusReport {
    pub fn to_json(&self) -> SingularLocusJson {
        SingularLocusJson {
            label: self.label.clone(),
            field: self.field,
            codimension: self.codimension,
            verdict: self.verdict,
            dimension: self.dimension,
            sing_basis: self.basis.as_ideal().to_json(),
            predicted: self.predicted.clone(),
        }
    }

    pub fn is_smooth(&self) -> bool {
        self.verdict == Verdict::Smooth
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!("# Singular locus of {} over {}\n\n", self.label, self.field);
        s += &format!("- codimension: {}\n- verdict: {:?}\n- dimension of the singular locus: {}\n", self.codimension, self.verdict, self.dimension);
        if !self.is_smooth() {
            s += "\nReduced Gröbner basis of the singular ideal:\n\n";
            for g in self.basis.basis() {
                s += &format!("- `{g}`\n");
            }
        }
        if let Some(p) = &self.predicted {
            s += &format!(
                "\nPredicted components: {}; locus inside union: {}; components inside locus: {:?}; match: {}\n",
                p.components, p.locus_in_union, p.component_in_locus, p.matches
            );
        }
        s
    }
}

/// Generators plus all `codim × codim` minors of their Jacobian, zero minors and
/// repeated minors (up to scalar) removed.
pub fn jacobian_ideal(ideal: &Ideal, codim: usize) -> Result<Ideal> {
    let vars: Vec<usize> = (0..ideal.nvars()).collect();
    let jac = jacobian(ideal.generators(), &vars)?;
    let mut seen = BTreeSet::new();
    let mut gens: Vec<MultiPoly> = ideal.generators().to_vec();
    if codim == 0 {
        return Ideal::new(ideal.field(), ideal.names().clone(), gens);
    }
    for m in minors(&jac, codim)? {
        if m.is_zero() {
            continue;
        }
        if seen.insert(m.monic().to_string()) {
            gens.push(m);
        }
    }
    Ideal::new(ideal.field(), ideal.names().clone(), gens)
}

/// Singular locus of a reduced equidimensional `V(ideal)` of the given dimension. When the
/// generator count equals the codimension this is the complete-intersection criterion.
pub fn singular_locus_of(label: &str, ideal: &Ideal, dimension: usize, cfg: &GbConfig) -> Result<SingularLocusReport> {
    let n = ideal.nvars();
    if dimension > n {
        return Err(AlgebraError::Invalid(format!("dimension {dimension} exceeds {n} variables")));
    }
    let codim = n - dimension;
    let sing_ideal = jacobian_ideal(ideal, codim)?;
    let basis = buchberger_with(&sing_ideal, &MonomialOrder::DegRevLex, cfg)?;
    let verdict = if basis.is_unit() { Verdict::Smooth } else { Verdict::Singular };
    let dimension = dimension_of_basis(&basis);
    Ok(SingularLocusReport {
        label: label.to_string(),
        field: ideal.field(),
        codimension: codim,
        sing_ideal,
        basis,
        verdict,
        dimension,
        predicted: None,
    })
}

/// Jacobian criterion for a presentation, after checking that it is a complete intersection
/// of its stated codimension.
pub fn singular_locus(p: &Presentation, cfg: &GbConfig) -> Result<SingularLocusReport> {
    let n = p.names().len();
    let c = p.codimension();
    match ideal_dimension(&p.ideal, cfg)? {
        Dimension::Dim(d) if d + c == n => {}
        other => {
            return Err(AlgebraError::Unsupported(format!(
                "{} is not a complete intersection: {} generators in {} variables, dimension {}",
                p.label(),
                c,
                n,
                other
            )))
        }
    }
    singular_locus_of(&p.label(), &p.ideal, n - c, cfg)
}

/// Variable sets when every generator of every ideal is a single variable.
fn as_coordinate_sets(ideals: &[Ideal]) -> Option<Vec<Vec<usize>>> {
    ideals
        .iter()
        .map(|i| {
            i.generators()
                .iter()
                .map(|g| {
                    let mut terms = g.terms();
                    let (e, _) = terms.next()?;
                    if terms.next().is_some() || e.iter().sum::<u32>() != 1 {
                        return None;
                    }
                    e.iter().position(|&k| k == 1)
                })
                .collect()
        })
        .collect()
}

/// Generators of `∩ ⟨S_i⟩` for coordinate sets `S_i`: squarefree monomials over the minimal
/// hitting sets.
pub fn coordinate_intersection(field: FieldSpec, names: &crate::poly::VarNames, sets: &[Vec<usize>]) -> Vec<MultiPoly> {
    let mut current: Vec<BTreeSet<usize>> = vec![BTreeSet::new()];
    for s in sets {
        let mut next: Vec<BTreeSet<usize>> = Vec::new();
        for m in &current {
            if m.iter().any(|v| s.contains(v)) {
                next.push(m.clone());
            } else {
                for &v in s {
                    let mut m2 = m.clone();
                    m2.insert(v);
                    next.push(m2);
                }
            }
        }
        next.sort();
        next.dedup();
        let snapshot = next.clone();
        next.retain(|m| !snapshot.iter().any(|o| o != m && o.is_subset(m)));
        current = next;
    }
    current
        .into_iter()
        .map(|m| {
            let mut e = Exponent::from_elem(0, names.len());
            for v in m {
                e[v] = 1;
            }
            MultiPoly::monomial(field, names.clone(), e, field.one())
        })
        .collect()
}

/// Generators of the intersection of the predicted components.
fn union_generators(predicted: &[Ideal], cfg: &GbConfig) -> Result<Vec<MultiPoly>> {
    let first = &predicted[0];
    if let Some(sets) = as_coordinate_sets(predicted) {
        return Ok(coordinate_intersection(first.field(), first.names(), &sets));
    }
    let mut acc = first.clone();
    for p in &predicted[1..] {
        acc = intersect(&acc, p, cfg)?;
    }
    Ok(acc.generators().to_vec())
}

/// Checks `rad(sing) = ∩ predicted` for radical predicted ideals: the intersection lies in the
/// radical of the singular ideal, and each component contains the singular ideal.
pub fn compare_predicted(report: &SingularLocusReport, predicted: &[Ideal], cfg: &GbConfig) -> Result<PredictionMatch> {
    if predicted.is_empty() {
        return Err(AlgebraError::Invalid("no predicted components".into()));
    }
    let union = union_generators(predicted, cfg)?;
    let tester = RadicalTester::new(&report.basis.as_ideal(), cfg)?;
    let mut locus_in_union = true;
    for g in &union {
        if !tester.contains(g)? {
            locus_in_union = false;
            break;
        }
    }
    let mut component_in_locus = Vec::with_capacity(predicted.len());
    for comp in predicted {
        if comp.generators().iter().any(|g| g.is_unit_constant()) {
            component_in_locus.push(true);
            continue;
        }
        let gb = buchberger_with(comp, &MonomialOrder::DegRevLex, cfg)?;
        let mut inside = true;
        for g in report.basis.basis() {
            if !gb.contains(g)? {
                inside = false;
                break;
            }
        }
        component_in_locus.push(inside);
    }
    let matches = locus_in_union && component_in_locus.iter().all(|&b| b);
    Ok(PredictionMatch { components: predicted.len(), locus_in_union, component_in_locus, matches })
}

/// Runs `f` over `items` on a few worker threads; results keep the input order.
pub fn parallel_map<T: Sync, R: Send, F: Fn(&T) -> R + Sync>(items: &[T], f: F) -> Vec<R> {
    let workers = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1).min(items.len().max(1));
    let next = std::sync::atomic::AtomicUsize::new(0);
    let results: Vec<std::sync::Mutex<Option<R>>> = items.iter().map(|_| std::sync::Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                if i >= items.len() {
                    break;
                }
                let r = f(&items[i]);
                *results[i].lock().unwrap() = Some(r);
            });
        }
    });
    results.into_iter().map(|m| m.into_inner().unwrap().expect("every item is processed")).collect()
}

/// Every point of `K^n` for a prime field, in lexicographic order of residues.
pub(crate) fn all_points(field: FieldSpec, n: usize) -> Result<Vec<Vec<FieldElem>>> {
    let elems = field.elements().ok_or_else(|| AlgebraError::Invalid("point enumeration needs a finite field".into()))?;
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * elems.len());
        for p in &out {
            for e in &elems {
                let mut q = p.clone();
                q.push(e.clone());
                next.push(q);
            }
        }
        out = next;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;
    use crate::presentations::reduced_presentation;
    use crate::quiver::DynkinType;

    #[test]
    fn a3_is_singular_at_the_origin() {
        let q = FieldSpec::rationals();
        let p = reduced_presentation(DynkinType::A, 3, q).unwrap();
        let r = singular_locus(&p, &GbConfig::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Singular);
        assert_eq!(r.dimension, Dimension::Dim(0));
        let origin = Ideal::of_variables(q, p.names().clone(), &[0, 1, 2, 3]);
        let m = compare_predicted(&r, &[origin], &GbConfig::default()).unwrap();
        assert!(m.matches, "{m:?}");
    }

    #[test]
    fn f4_is_smooth_everywhere() {
        for field in [FieldSpec::rationals(), FieldSpec::prime(2), FieldSpec::prime(3), FieldSpec::prime(5)] {
            let p = reduced_presentation(DynkinType::F4, 4, field).unwrap();
            let r = singular_locus(&p, &GbConfig::default()).unwrap();
            assert!(r.is_smooth(), "{field}");
            let unit = Ideal::unit(field, p.names().clone());
            assert!(compare_predicted(&r, &[unit], &GbConfig::default()).unwrap().matches);
        }
    }

    #[test]
    fn g2_in_characteristic_three() {
        let f3 = FieldSpec::prime(3);
        let p = reduced_presentation(DynkinType::G2, 2, f3).unwrap();
        let r = singular_locus(&p, &GbConfig::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Singular);
        let ring = PolyRing::new(f3, &["x", "y", "z"]);
        let point = Ideal::from_polys(vec![ring.p("x + 1"), ring.p("y"), ring.p("z + 1")]).unwrap();
        assert!(compare_predicted(&r, &[point], &GbConfig::default()).unwrap().matches);
    }

    #[test]
    fn non_complete_intersection_is_rejected() {
        let q = FieldSpec::rationals();
        let mut p = reduced_presentation(DynkinType::A, 2, q).unwrap();
        let extra = p.generators()[0].clone();
        p.ideal = p.ideal.with_generators(&[extra.mul(&extra)]).unwrap();
        assert!(matches!(singular_locus(&p, &GbConfig::default()), Err(AlgebraError::Unsupported(_))));
    }

    #[test]
    fn wrong_prediction_is_detected() {
        let q = FieldSpec::rationals();
        let p = reduced_presentation(DynkinType::A, 3, q).unwrap();
        let r = singular_locus(&p, &GbConfig::default()).unwrap();
        let axis = Ideal::of_variables(q, p.names().clone(), &[0, 1, 2]);
        let m = compare_predicted(&r, &[axis], &GbConfig::default()).unwrap();
        assert!(m.locus_in_union && !m.component_in_locus[0] && !m.matches);
    }

    #[test]
    fn hitting_set_generators() {
        let q = FieldSpec::rationals();
        let ring = PolyRing::new(q, &["a", "b", "c"]);
        let names = ring.names.clone();
        let gens = coordinate_intersection(q, &names, &[vec![0, 1], vec![1, 2]]);
        let texts: BTreeSet<String> = gens.iter().map(|g| g.to_string()).collect();
        assert_eq!(texts, ["a*c", "b"].iter().map(|s| s.to_string()).collect());
    }

    #[test]
    fn parallel_map_keeps_order() {
        let v: Vec<usize> = (0..50).collect();
        assert_eq!(parallel_map(&v, |x| x * 2), (0..50).map(|x| x * 2).collect::<Vec<_>>());
    }
}
