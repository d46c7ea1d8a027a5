//! Drivers checking the classification over a matrix of types, ranks and characteristics,
//! the star family, the deformed continuants, and an exhaustive point-count oracle.

use std::time::Instant;

use serde::Serialize;

use crate::continuant::{continuant_vars, even_continuant_coordinates, standard_continuant, standard_ring};
use crate::error::{AlgebraError, Result};
use crate::field::{FieldElem, FieldSpec};
use crate::groebner::{eliminate, ideal_dimension, ideals_equal, jacobian, Dimension, GbConfig, Ideal};
use crate::poly::MultiPoly;
use crate::presentations::{reduced_presentation, Presentation};
use crate::quiver::DynkinType;

use super::certificate::{certify_a1, certify_a1_with, A1Certificate, CertificateCheck, ModelKind, Patch};
use super::scripts::{local_certificates, predicted_locus, star_generic_certificate, star_origin_certificate, theorem_a_branch, Branch};
use super::{all_points, certificate::rank_and_kernel, compare_predicted, parallel_map, singular_locus, PredictionMatch, Verdict};

fn field_of(p: u64) -> FieldSpec {
    if p == 0 {
        FieldSpec::rationals()
    } else {
        FieldSpec::prime(p)
    }
}

/// Summary of one replayed certificate.
#[derive(Clone, Debug, Serialize)]
pub struct CertificateSummary {
    pub description: String,
    pub model_kind: ModelKind,
    pub patches: usize,
    pub certified: bool,
}

impl From<&CertificateCheck> for CertificateSummary {
    fn from(c: &CertificateCheck) -> Self {
        CertificateSummary {
            description: c.description.clone(),
            model_kind: c.model_kind.clone(),
            patches: c.patches.len(),
            certified: c.certified,
        }
    }
}

/// One `(type, rank, characteristic)` cell of the Theorem A matrix.
#[derive(Clone, Debug, Serialize)]
pub struct TheoremACell {
    pub label: String,
    pub characteristic: u64,
    pub branch: Branch,
    pub statement: String,
    pub expected: Verdict,
    pub computed: Option<Verdict>,
    pub locus_dimension: Option<Dimension>,
    pub expected_dimension: Option<usize>,
    pub locus_match: Option<PredictionMatch>,
    pub certificates: Vec<CertificateSummary>,
    /// Outcome of the A_1 point certifier where it applies (expected to fail for G_2 over 𝔽_3).
    pub a1_certified: Option<bool>,
    pub a1_failure: Option<String>,
    pub identification: Option<CnIdentification>,
    pub passed: bool,
    pub error: Option<String>,
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremAReport {
    pub cells: Vec<TheoremACell>,
    pub mismatches: usize,
}

impl TheoremAReport {
    pub fn all_passed(&self) -> bool {
        self.mismatches == 0
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::from("| cell | p | branch checked | expected | computed | locus | certificates | result |\n|---|---|---|---|---|---|---|---|\n");
        for c in &self.cells {
            let locus = match &c.locus_match {
                Some(m) => format!("{} component(s), match {}", m.components, m.matches),
                None => "-".into(),
            };
            let certs = if c.certificates.is_empty() {
                "-".to_string()
            } else {
                c.certificates.iter().map(|k| format!("{} ({})", k.model_kind, if k.certified { "ok" } else { "FAILED" })).collect::<Vec<_>>().join("; ")
            };
            let computed = match (&c.computed, &c.error) {
                (Some(v), _) => format!("{v:?}"),
                (None, Some(e)) => format!("error: {e}"),
                _ => "-".into(),
            };
            s += &format!(
                "| {} | {} | {} | {:?} | {} | {} | {} | {} |\n",
                c.label,
                c.characteristic,
                c.statement,
                c.expected,
                computed,
                locus,
                certs,
                if c.passed { "pass" } else { "FAIL" }
            );
        }
        s += &format!("\n{} cell(s), {} mismatch(es)\n", self.cells.len(), self.mismatches);
        s
    }
}

/// The default cells: A 2-9, B 2-6, C 3-6, D 4-8, E6, E7, E8, F4, G2.
pub fn default_theorem_a_cells() -> Vec<(DynkinType, usize)> {
    let mut cells = Vec::new();
    cells.extend((2..=9).map(|n| (DynkinType::A, n)));
    cells.extend((2..=6).map(|n| (DynkinType::B, n)));
    cells.extend((3..=6).map(|n| (DynkinType::C, n)));
    cells.extend((4..=8).map(|n| (DynkinType::D, n)));
    cells.extend([(DynkinType::E6, 6), (DynkinType::E7, 7), (DynkinType::E8, 8), (DynkinType::F4, 4), (DynkinType::G2, 2)]);
    cells
}

fn theorem_a_cell(kind: DynkinType, n: usize, p: u64, cfg: &GbConfig) -> TheoremACell {
    let start = Instant::now();
    let (branch, statement) = theorem_a_branch(kind, n, p);
    let mut cell = TheoremACell {
        label: kind.label(n),
        characteristic: p,
        branch,
        statement: statement.to_string(),
        expected: if branch.is_singular() { Verdict::Singular } else { Verdict::Smooth },
        computed: None,
        locus_dimension: None,
        expected_dimension: None,
        locus_match: None,
        certificates: Vec::new(),
        a1_certified: None,
        a1_failure: None,
        identification: None,
        passed: false,
        error: None,
        millis: 0,
    };
    if let Err(e) = fill_cell(&mut cell, kind, n, p, cfg) {
        cell.error = Some(e.to_string());
        cell.passed = false;
    }
    cell.millis = start.elapsed().as_millis();
    cell
}

fn fill_cell(cell: &mut TheoremACell, kind: DynkinType, n: usize, p: u64, cfg: &GbConfig) -> Result<()> {
    let field = field_of(p);
    let pres = reduced_presentation(kind, n, field)?;
    let report = singular_locus(&pres, cfg)?;
    cell.computed = Some(report.verdict);
    cell.locus_dimension = Some(report.dimension);
    let mut ok = report.verdict == cell.expected;
    if cell.branch.is_singular() {
        let predicted = predicted_locus(&pres, cell.branch)?;
        cell.expected_dimension = predicted.dimension;
        ok &= predicted.dimension.map(Dimension::Dim) == Some(report.dimension);
        let m = compare_predicted(&report, &predicted.components, cfg)?;
        ok &= m.matches;
        cell.locus_match = Some(m);
        for c in local_certificates(&pres, cell.branch)? {
            let check = c.verify(&pres.ideal, cfg)?;
            ok &= check.certified;
            cell.certificates.push((&check).into());
        }
        let origin: Vec<FieldElem> = vec![field.zero(); pres.names().len()];
        match (kind, cell.branch) {
            (DynkinType::A, Branch::OriginA1) => {
                let a1 = certify_a1(&pres, &origin, cfg)?;
                ok &= a1.certified;
                cell.a1_certified = Some(a1.certified);
                cell.a1_failure = a1.failure;
            }
            (DynkinType::G2, Branch::G2CharThree) => {
                let point = vec![field.from_i64(-1), field.zero(), field.from_i64(-1)];
                let a1 = certify_a1(&pres, &point, cfg)?;
                ok &= !a1.certified;
                cell.a1_certified = Some(a1.certified);
                cell.a1_failure = a1.failure;
            }
            (DynkinType::C, Branch::CCharTwo { .. }) => {
                let ident = cn_char2_identification(n, cfg)?;
                ok &= ident.holds();
                cell.identification = Some(ident);
            }
            _ => {}
        }
    }
    cell.passed = ok;
    Ok(())
}

/// Runs the given cells over the given characteristics (0 for ℚ), in parallel.
pub fn verify_theorem_a(cells: &[(DynkinType, usize)], chars: &[u64], cfg: &GbConfig) -> TheoremAReport {
    let mut jobs = Vec::new();
    for &(kind, n) in cells {
        for &p in chars {
            jobs.push((kind, n, p));
        }
    }
    let cells = parallel_map(&jobs, |&(kind, n, p)| theorem_a_cell(kind, n, p, cfg));
    let mismatches = cells.iter().filter(|c| !c.passed).count();
    TheoremAReport { cells, mismatches }
}

/// The identification of the C_n singular locus in characteristic two with the A_(n-2) variety.
#[derive(Clone, Debug, Serialize)]
pub struct CnIdentification {
    pub n: usize,
    /// The radical of the singular ideal is `⟨u_n, z_(n+1), f_(n-2)⟩`.
    pub sing_equals_locus: bool,
    /// Exact membership of `u_n`, `z_(n+1)`, `f_(n-2)` in the Jacobian ideal.
    pub generator_membership: Vec<(String, bool)>,
    /// Membership of their squares, which holds in characteristic two.
    pub squares_in_ideal: bool,
    /// Projecting away `z_n, z_(n+1)` gives exactly the A_(n-2) hypersurface in `z_1..z_(n-1)`.
    pub projection_is_a: bool,
    /// The locus is a graph over its projection.
    pub graph_form: bool,
    pub dimension: Dimension,
    /// Dimension of the A_(n-2) variety, which the locus should share.
    pub dimension_of_a: Dimension,
}

impl CnIdentification {
    pub fn holds(&self) -> bool {
        self.sing_equals_locus
            && self.squares_in_ideal
            && self.projection_is_a
            && self.graph_form
            && self.dimension == self.dimension_of_a
            && self.dimension == Dimension::Dim(self.n - 2)
    }
}

pub fn cn_char2_identification(n: usize, cfg: &GbConfig) -> Result<CnIdentification> {
    let field = FieldSpec::prime(2);
    let pres = reduced_presentation(DynkinType::C, n, field)?;
    let report = singular_locus(&pres, cfg)?;
    let predicted = predicted_locus(&pres, Branch::CCharTwo { odd: n % 2 == 1 })?;
    let locus = &predicted.components[0];
    let m = compare_predicted(&report, &predicted.components, cfg)?;
    let mut generator_membership = Vec::new();
    let mut squares_in_ideal = true;
    for g in locus.generators() {
        generator_membership.push((g.to_string(), report.basis.contains(g)?));
        squares_in_ideal &= report.basis.contains(&g.pow(2))?;
    }
    let names = pres.names().clone();
    let eliminated = eliminate(locus, &[n - 1, n], cfg)?;
    let a = reduced_presentation(DynkinType::A, n - 2, field)?;
    let a_in_locus_ring = Ideal::new(field, eliminated.names().clone(), vec![a.generators()[0].with_names(eliminated.names().clone())])?;
    let projection_is_a = ideals_equal(&eliminated, &a_in_locus_ring, cfg)?;
    let zn = MultiPoly::var(field, names.clone(), n - 1);
    let pn2 = continuant_vars(field, &names, &(0..n - 2).collect::<Vec<_>>());
    let graph = Ideal::new(
        field,
        names.clone(),
        vec![zn.add(&pn2), MultiPoly::var(field, names.clone(), n), locus.generators()[2].clone()],
    )?;
    let graph_form = ideals_equal(&graph, locus, cfg)?;
    Ok(CnIdentification {
        n,
        sing_equals_locus: m.matches,
        generator_membership,
        squares_in_ideal,
        projection_is_a,
        graph_form,
        dimension: ideal_dimension(locus, cfg)?,
        dimension_of_a: ideal_dimension(&a.ideal, cfg)?,
    })
}

/// Variable index sets of the coordinate subspaces making up the `D_(k,l)`: both coordinates of
/// the pairs `k` and `l`, and one coordinate of every other pair.
pub fn theorem_c_components(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for k in 1..n {
        for l in k + 1..n {
            let others: Vec<usize> = (1..n).filter(|&m| m != k && m != l).collect();
            for mask in 0u32..(1 << others.len()) {
                let mut vars = vec![2 * k - 2, 2 * k - 1, 2 * l - 2, 2 * l - 1];
                for (b, &m) in others.iter().enumerate() {
                    vars.push(if mask & (1 << b) == 0 { 2 * m - 2 } else { 2 * m - 1 });
                }
                vars.sort();
                out.push(vars);
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremCRow {
    pub n: usize,
    pub field: FieldSpec,
    pub components: usize,
    pub expected_components: usize,
    pub verdict: Verdict,
    pub locus_match: Option<PredictionMatch>,
    pub component_dimension_ok: bool,
    pub generic_a1: Option<CertificateSummary>,
    pub toric_origin: Option<CertificateSummary>,
    pub passed: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremCReport {
    pub rows: Vec<TheoremCRow>,
}

impl TheoremCReport {
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::from("| n | field | components | expected | locus match | generic A_1 | toric origin | result |\n|---|---|---|---|---|---|---|---|\n");
        for r in &self.rows {
            let flag = |c: &Option<CertificateSummary>| c.as_ref().map_or("-".to_string(), |c| format!("{} ({})", c.model_kind, c.certified));
            s += &format!(
                "| {} | {} | {} | {} | {} | {} | {} | {} |\n",
                r.n,
                r.field,
                r.components,
                r.expected_components,
                r.locus_match.as_ref().map_or("-".to_string(), |m| m.matches.to_string()),
                flag(&r.generic_a1),
                flag(&r.toric_origin),
                if r.passed { "pass" } else { "FAIL" }
            );
        }
        s
    }
}

fn theorem_c_row(n: usize, field: FieldSpec, cfg: &GbConfig) -> Result<TheoremCRow> {
    let expected_components = if n >= 2 { (n - 1) * (n - 2) * (1usize << n) / 16 } else { 0 };
    if n == 2 {
        // The star with two vertices is A_2.
        let pres = reduced_presentation(DynkinType::A, 2, field)?;
        let report = singular_locus(&pres, cfg)?;
        return Ok(TheoremCRow {
            n,
            field,
            components: 0,
            expected_components,
            verdict: report.verdict,
            locus_match: None,
            component_dimension_ok: true,
            generic_a1: None,
            toric_origin: None,
            passed: report.is_smooth() && expected_components == 0,
            error: None,
        });
    }
    let pres = reduced_presentation(DynkinType::Star, n, field)?;
    let report = singular_locus(&pres, cfg)?;
    let sets = theorem_c_components(n);
    let comps: Vec<Ideal> = sets.iter().map(|s| Ideal::of_variables(field, pres.names().clone(), s)).collect();
    let m = compare_predicted(&report, &comps, cfg)?;
    let component_dimension_ok = sets.iter().all(|s| 2 * n - 2 - s.len() == n - 3) && report.dimension == Dimension::Dim(n - 3);
    let (generic_a1, toric_origin) = if n >= 4 {
        let g = star_generic_certificate(&pres)?.verify(&pres.ideal, cfg)?;
        let t = star_origin_certificate(&pres)?.verify(&pres.ideal, cfg)?;
        (Some(CertificateSummary::from(&g)), Some(CertificateSummary::from(&t)))
    } else {
        (None, None)
    };
    let generic_ok = generic_a1.as_ref().map_or(true, |c| {
        c.certified && matches!(c.model_kind, ModelKind::A1 { quadric_vars: 4, with_square: false, .. })
    });
    let toric_ok = toric_origin.as_ref().map_or(true, |c| c.certified && matches!(c.model_kind, ModelKind::Toric { .. }));
    let passed = sets.len() == expected_components && m.matches && component_dimension_ok && generic_ok && toric_ok;
    Ok(TheoremCRow {
        n,
        field,
        components: sets.len(),
        expected_components,
        verdict: report.verdict,
        locus_match: Some(m),
        component_dimension_ok,
        generic_a1,
        toric_origin,
        passed,
        error: None,
    })
}

/// Component count, locus match, generic A_1 and toric certificates of the star family.
pub fn verify_theorem_c(ns: &[usize], field: FieldSpec, cfg: &GbConfig) -> TheoremCReport {
    let rows = parallel_map(ns, |&n| {
        theorem_c_row(n, field, cfg).unwrap_or_else(|e| TheoremCRow {
            n,
            field,
            components: 0,
            expected_components: 0,
            verdict: Verdict::Singular,
            locus_match: None,
            component_dimension_ok: false,
            generic_a1: None,
            toric_origin: None,
            passed: false,
            error: Some(e.to_string()),
        })
    });
    TheoremCReport { rows }
}

/// Exhaustive comparison of the 𝔽_p-points of the computed singular ideal with the points where
/// the generators vanish and the Jacobian matrix drops rank.
#[derive(Clone, Debug, Serialize)]
pub struct BruteForceReport {
    pub label: String,
    pub field: FieldSpec,
    pub points: usize,
    pub singular_points: usize,
    pub locus_points: usize,
    pub agree: bool,
    pub first_mismatch: Option<Vec<String>>,
}

pub fn brute_force_check(pres: &Presentation, cfg: &GbConfig) -> Result<BruteForceReport> {
    let field = pres.field();
    if field.is_rational() {
        return Err(AlgebraError::Invalid("point enumeration needs a finite field".into()));
    }
    let report = singular_locus(pres, cfg)?;
    let n = pres.names().len();
    let codim = pres.codimension();
    let jac = jacobian(pres.generators(), &(0..n).collect::<Vec<_>>())?;
    let points = all_points(field, n)?;
    let mut singular_points = 0;
    let mut locus_points = 0;
    let mut first_mismatch = None;
    for pt in &points {
        let mut on_variety = true;
        for g in pres.generators() {
            if !g.evaluate(pt)?.is_zero() {
                on_variety = false;
                break;
            }
        }
        let singular = on_variety && {
            let mut m = Vec::with_capacity(jac.len());
            for row in &jac {
                let mut r = Vec::with_capacity(n);
                for e in row {
                    r.push(e.evaluate(pt)?);
                }
                m.push(r);
            }
            rank_and_kernel(field, &m).0 < codim
        };
        let mut in_locus = true;
        for g in report.basis.basis() {
            if !g.evaluate(pt)?.is_zero() {
                in_locus = false;
                break;
            }
        }
        singular_points += singular as usize;
        locus_points += in_locus as usize;
        if singular != in_locus && first_mismatch.is_none() {
            first_mismatch = Some(pt.iter().map(|c| c.to_string()).collect());
        }
    }
    Ok(BruteForceReport {
        label: pres.label(),
        field,
        points: points.len(),
        singular_points,
        locus_points,
        agree: first_mismatch.is_none(),
        first_mismatch,
    })
}

/// Every presentation among the default matrix and the small stars with at most `max_vars`
/// variables.
pub fn small_presentations(max_vars: usize) -> Vec<(DynkinType, usize)> {
    let mut out = Vec::new();
    let mut cells = default_theorem_a_cells();
    cells.extend([(DynkinType::A, 1), (DynkinType::B, 2), (DynkinType::Star, 3), (DynkinType::Star, 4), (DynkinType::Star, 5)]);
    for (kind, n) in cells {
        if let Ok(p) = reduced_presentation(kind, n, FieldSpec::prime(2)) {
            if p.names().len() <= max_vars && !out.contains(&(kind, n)) {
                out.push((kind, n));
            }
        }
    }
    out
}

/// Singularity verdict for `V(P_n + λ)`.
#[derive(Clone, Debug, Serialize)]
pub struct DeformationVerdict {
    pub n: usize,
    pub lambda: String,
    pub field: FieldSpec,
    pub expected: Verdict,
    pub computed: Verdict,
    /// The singular locus is exactly the origin.
    pub origin_only: Option<bool>,
    pub a1: Option<A1Certificate>,
    pub matches: bool,
}

/// Jacobian criterion for `V(P_n + λ)` and, when singular, the A_1 certificate at the origin from
/// the pair coordinates.
pub fn deformed_continuant_sing(n: usize, lambda: &FieldElem, cfg: &GbConfig) -> Result<DeformationVerdict> {
    let field = lambda.spec();
    let names = standard_ring(n);
    let f = standard_continuant(field, n).add(&MultiPoly::constant(field, names.clone(), lambda.clone()));
    let ideal = Ideal::new(field, names.clone(), vec![f])?;
    let report = super::singular_locus_of(&format!("P_{n} + {lambda}"), &ideal, n.saturating_sub(1), cfg)?;
    let m = n / 2;
    let special = if m % 2 == 1 { field.one() } else { field.one().neg() };
    let expected = if n % 2 == 0 && n > 0 && *lambda == special { Verdict::Singular } else { Verdict::Smooth };
    let mut verdict = DeformationVerdict {
        n,
        lambda: lambda.to_string(),
        field,
        expected,
        computed: report.verdict,
        origin_only: None,
        a1: None,
        matches: expected == report.verdict,
    };
    if report.verdict == Verdict::Singular {
        let origin = Ideal::of_variables(field, names.clone(), &(0..n).collect::<Vec<_>>());
        let origin_only = ideals_equal(&report.basis.as_ideal(), &origin, cfg)?;
        verdict.origin_only = Some(origin_only);
        verdict.matches &= origin_only;
        if n % 2 == 0 && n > 0 {
            let t = even_continuant_coordinates(field, &names, &(0..n).collect::<Vec<_>>())?;
            let coords: Vec<(String, MultiPoly)> = t.into_iter().enumerate().map(|(i, c)| (format!("t{}", i + 1), c)).collect();
            let model: Vec<String> = (0..m).map(|i| format!("t{}*t{}", 2 * i + 1, 2 * i + 2)).collect();
            let patch = Patch::new(MultiPoly::one(field, names.clone()), coords, &[model.join(" + ")])?;
            let point = vec![field.zero(); n];
            let a1 = certify_a1_with(&ideal, &point, Some(patch), cfg)?;
            verdict.matches &= a1.certified;
            verdict.a1 = Some(a1);
        }
    }
    Ok(verdict)
}
