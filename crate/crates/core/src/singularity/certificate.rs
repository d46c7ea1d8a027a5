//! Local certificates: étale coordinates on an open cover of a locus in which the variety is
//! cut out by a recognizable model, and the A_1 point certificate built on them.

use std::fmt;

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::field::{FieldElem, FieldSpec};
use crate::groebner::{
    determinant, is_unit_ideal, jacobian, saturate, GbConfig, Ideal, LocalizedIdeal, RadicalTester,
};
use crate::poly::{var_names, MultiPoly, VarNames};
use crate::presentations::Presentation;

use super::jacobian_ideal;

/// One chart of a certificate: on `D(unit)`, near the locus, the named coordinates are étale
/// and the variety is the pullback of the model.
#[derive(Clone, Debug)]
pub struct Patch {
    pub unit: MultiPoly,
    pub coordinates: Vec<(String, MultiPoly)>,
    pub model: Vec<MultiPoly>,
}

impl Patch {
    /// Model generators are parsed in the ring of the coordinate names.
    pub fn new(unit: MultiPoly, coordinates: Vec<(String, MultiPoly)>, model: &[String]) -> Result<Patch> {
        let field = unit.field();
        let names = var_names(&coordinates.iter().map(|c| c.0.clone()).collect::<Vec<_>>());
        let model = model.iter().map(|t| MultiPoly::parse(field, names.clone(), t)).collect::<Result<Vec<_>>>()?;
        Ok(Patch { unit, coordinates, model })
    }

    pub fn model_names(&self) -> VarNames {
        var_names(&self.coordinates.iter().map(|c| c.0.clone()).collect::<Vec<_>>())
    }

    /// The model generators pulled back along the coordinates.
    pub fn pullback(&self) -> Result<Vec<MultiPoly>> {
        let images: Vec<MultiPoly> = self.coordinates.iter().map(|c| c.1.clone()).collect();
        self.model.iter().map(|m| m.map_vars(&images)).collect()
    }
}

/// A locus (closed set minus an excluded closed set) covered by patches.
#[derive(Clone, Debug)]
pub struct LocalCertificate {
    pub description: String,
    pub locus: Ideal,
    pub excluded: Option<Ideal>,
    pub patches: Vec<Patch>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelKind {
    /// No nonlinear equation is left.
    Regular { linear: usize, free: usize },
    /// One quadric `Σ x_{2i-1}x_{2i}` plus at most one square, in `quadric_vars` coordinates.
    A1 { quadric_vars: usize, with_square: bool, linear: usize, free: usize },
    /// `z^3 + xy`.
    A2 { linear: usize, free: usize },
    /// `yz + (Σ x_{2i-1}x_{2i})^2` in characteristic two.
    OddCharTwo { pairs: usize, linear: usize, free: usize },
    /// Several homogeneous quadrics.
    QuadraticCone { equations: usize, linear: usize, free: usize },
    /// Binomials `m_0 - m_k` sharing the first monomial.
    Toric { binomials: usize, linear: usize, free: usize },
    Unrecognized,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tail = |f: &mut fmt::Formatter<'_>, linear: usize, free: usize| -> fmt::Result {
            if linear > 0 {
                write!(f, ", cut by {linear} transversal regular hypersurface(s)")?;
            }
            if free > 0 {
                write!(f, ", times A^{free}")?;
            }
            Ok(())
        };
        match self {
            ModelKind::Regular { linear, free } => {
                write!(f, "regular")?;
                tail(f, *linear, *free)
            }
            ModelKind::A1 { quadric_vars, with_square, linear, free } => {
                write!(f, "A_1 in A^{quadric_vars}")?;
                if *with_square {
                    write!(f, " (square plus pairs)")?;
                }
                tail(f, *linear, *free)
            }
            ModelKind::A2 { linear, free } => {
                write!(f, "A_2 (z^3 + xy)")?;
                tail(f, *linear, *free)
            }
            ModelKind::OddCharTwo { pairs, linear, free } => {
                write!(f, "yz + (sum of {pairs} pairs)^2")?;
                tail(f, *linear, *free)
            }
            ModelKind::QuadraticCone { equations, linear, free } => {
                write!(f, "cone of {equations} homogeneous quadrics")?;
                tail(f, *linear, *free)
            }
            ModelKind::Toric { binomials, linear, free } => {
                write!(f, "toric, {binomials} binomials")?;
                tail(f, *linear, *free)
            }
            ModelKind::Unrecognized => write!(f, "unrecognized"),
        }
    }
}

fn single_variable(p: &MultiPoly) -> Option<usize> {
    if p.nterms() != 1 {
        return None;
    }
    let (e, _) = p.terms().next()?;
    if e.iter().sum::<u32>() != 1 {
        return None;
    }
    e.iter().position(|&k| k == 1)
}

/// `Σ` of products of distinct variables and at most one square, every variable used once.
fn pair_form(p: &MultiPoly) -> Option<(usize, bool)> {
    let mut used = vec![false; p.nvars()];
    let mut square = false;
    for (e, _) in p.terms() {
        if e.iter().sum::<u32>() != 2 {
            return None;
        }
        let vars: Vec<usize> = (0..e.len()).filter(|&i| e[i] > 0).collect();
        if vars.len() == 1 {
            if square {
                return None;
            }
            square = true;
        }
        for v in vars {
            if used[v] {
                return None;
            }
            used[v] = true;
        }
    }
    Some((used.iter().filter(|&&u| u).count(), square))
}

fn odd_char_two(p: &MultiPoly) -> Option<usize> {
    if p.field().characteristic() != 2 {
        return None;
    }
    let quad = p.homogeneous_part(2);
    let quartic = p.sub(&quad);
    if quad.nterms() != 1 || pair_form(&quad) != Some((2, false)) {
        return None;
    }
    let (qe, _) = quad.terms().next().unwrap();
    // The quartic must be the square of a pair form avoiding the two quadric variables.
    let mut pairs = Vec::new();
    for (e, _) in quartic.terms() {
        if e.iter().sum::<u32>() != 4 || e.iter().zip(qe.iter()).any(|(&a, &b)| a > 0 && b > 0) {
            return None;
        }
        if e.iter().all(|&k| k == 0 || k == 2) {
            pairs.push(e.iter().map(|&k| k / 2).collect::<Vec<u32>>());
        }
    }
    let names = p.names().clone();
    let field = p.field();
    let root = MultiPoly::sum(
        field,
        names.clone(),
        &pairs
            .iter()
            .map(|e| MultiPoly::monomial(field, names.clone(), e.iter().copied().collect(), field.one()))
            .collect::<Vec<_>>(),
    );
    if pair_form(&root).map(|(_, sq)| sq) != Some(false) || root.mul(&root) != quartic {
        return None;
    }
    Some(pairs.len())
}

fn a2_form(p: &MultiPoly) -> bool {
    if p.nterms() != 2 {
        return false;
    }
    let mut cube = None;
    let mut pair = None;
    for (e, _) in p.terms() {
        let vars: Vec<usize> = (0..e.len()).filter(|&i| e[i] > 0).collect();
        match (vars.len(), e.iter().sum::<u32>()) {
            (1, 3) => cube = Some(vars[0]),
            (2, 2) => pair = Some(vars),
            _ => return false,
        }
    }
    matches!((cube, pair), (Some(c), Some(v)) if !v.contains(&c))
}

fn toric_form(gens: &[MultiPoly]) -> bool {
    let mut common = None;
    for g in gens {
        if g.nterms() != 2 || g.homogeneous_part(2) != *g {
            return false;
        }
        let terms: Vec<_> = g.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
        if !terms[0].1.add(&terms[1].1).is_zero() {
            return false;
        }
        let monos = [terms[0].0.clone(), terms[1].0.clone()];
        match &common {
            None => {
                common = Some(monos.to_vec());
            }
            Some(c) => {
                let shared: Vec<_> = c.iter().filter(|m| monos.contains(m)).cloned().collect();
                if shared.is_empty() {
                    return false;
                }
                common = Some(shared);
            }
        }
    }
    gens.len() >= 2 || common.is_some()
}

/// Classifies model equations in coordinates `w_1..w_N`.
pub fn recognize_model(model: &[MultiPoly], nvars: usize) -> ModelKind {
    let mut linear_vars = Vec::new();
    let mut rest = Vec::new();
    for m in model {
        match single_variable(m) {
            Some(v) => linear_vars.push(v),
            None => rest.push(m.clone()),
        }
    }
    let linear = linear_vars.len();
    if rest.iter().any(|r| r.support().iter().any(|v| linear_vars.contains(v))) {
        return ModelKind::Unrecognized;
    }
    let used: std::collections::BTreeSet<usize> = rest.iter().flat_map(|r| r.support()).collect();
    let free = nvars - linear - used.len();
    match rest.len() {
        0 => ModelKind::Regular { linear, free },
        1 => {
            let r = &rest[0];
            if let Some((k, sq)) = pair_form(r) {
                if k >= 2 || sq {
                    return ModelKind::A1 { quadric_vars: k, with_square: sq, linear, free };
                }
            }
            if a2_form(r) {
                return ModelKind::A2 { linear, free };
            }
            if let Some(pairs) = odd_char_two(r) {
                return ModelKind::OddCharTwo { pairs, linear, free };
            }
            ModelKind::Unrecognized
        }
        k => {
            if toric_form(&rest) {
                return ModelKind::Toric { binomials: k, linear, free };
            }
            if rest.iter().all(|r| r.homogeneous_part(2) == *r) {
                return ModelKind::QuadraticCone { equations: k, linear, free };
            }
            ModelKind::Unrecognized
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PatchCheck {
    pub unit: String,
    pub coordinates: Vec<(String, String)>,
    pub model: Vec<String>,
    pub model_kind: ModelKind,
    pub etale: bool,
    pub coordinates_vanish: bool,
    pub model_in_ideal: bool,
    pub ideal_in_model: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateCheck {
    pub description: String,
    pub locus: Vec<String>,
    pub excluded: Option<Vec<String>>,
    pub locus_in_variety: bool,
    pub coverage: bool,
    pub patches: Vec<PatchCheck>,
    pub model_kind: ModelKind,
    pub certified: bool,
}

impl LocalCertificate {
    /// Replays every patch against the variety `V(ideal)`.
    pub fn verify(&self, ideal: &Ideal, cfg: &GbConfig) -> Result<CertificateCheck> {
        let locus = RadicalTester::new(&self.locus, cfg)?;
        let mut locus_in_variety = !locus.is_empty();
        for g in ideal.generators() {
            if !locus.contains(g)? {
                locus_in_variety = false;
            }
        }
        let units: Vec<MultiPoly> = self.patches.iter().map(|p| p.unit.clone()).collect();
        let cover = self.locus.with_generators(&units)?;
        let coverage = match &self.excluded {
            None => is_unit_ideal(&cover, cfg)?,
            Some(ex) => {
                let t = RadicalTester::new(&cover, cfg)?;
                let mut ok = true;
                for e in ex.generators() {
                    ok &= t.contains(e)?;
                }
                ok
            }
        };
        let mut patches = Vec::new();
        let mut kinds = Vec::new();
        for p in &self.patches {
            let check = verify_patch(p, ideal, &self.locus, &locus, cfg)?;
            kinds.push(check.model_kind.clone());
            patches.push(check);
        }
        let model_kind = if !kinds.is_empty() && kinds.iter().all(|k| *k == kinds[0]) {
            kinds[0].clone()
        } else {
            ModelKind::Unrecognized
        };
        let certified = locus_in_variety
            && coverage
            && model_kind != ModelKind::Unrecognized
            && patches.iter().all(|p| p.etale && p.coordinates_vanish && p.model_in_ideal && p.ideal_in_model);
        Ok(CertificateCheck {
            description: self.description.clone(),
            locus: self.locus.generators().iter().map(|g| g.to_string()).collect(),
            excluded: self.excluded.as_ref().map(|e| e.generators().iter().map(|g| g.to_string()).collect()),
            locus_in_variety,
            coverage,
            patches,
            model_kind,
            certified,
        })
    }
}

fn verify_patch(p: &Patch, ideal: &Ideal, locus_ideal: &Ideal, locus: &RadicalTester, cfg: &GbConfig) -> Result<PatchCheck> {
    let n = ideal.nvars();
    if p.coordinates.len() != n {
        return Err(AlgebraError::Mismatch(format!("{} coordinates for {} variables", p.coordinates.len(), n)));
    }
    let coords: Vec<MultiPoly> = p.coordinates.iter().map(|c| c.1.clone()).collect();
    let jac = jacobian(&coords, &(0..n).collect::<Vec<_>>())?;
    let det = determinant(&jac)?;
    let etale = RadicalTester::new(&locus_ideal.with_generators(&[det])?, cfg)?.contains(&p.unit)?;
    let support: std::collections::BTreeSet<usize> = p.model.iter().flat_map(|m| m.support()).chain(
        p.model.iter().filter_map(single_variable),
    ).collect();
    let mut coordinates_vanish = true;
    for &v in &support {
        coordinates_vanish &= locus.contains(&coords[v])?;
    }
    let pulled = p.pullback()?;
    let local_ideal = LocalizedIdeal::new(ideal, &p.unit, cfg)?;
    let mut model_in_ideal = true;
    for m in &pulled {
        model_in_ideal &= local_ideal.contains(m)?;
    }
    let model_ideal = Ideal::new(ideal.field(), ideal.names().clone(), pulled)?;
    let local_model = LocalizedIdeal::new(&model_ideal, &p.unit, cfg)?;
    let mut ideal_in_model = true;
    for g in ideal.generators() {
        ideal_in_model &= local_model.contains(g)?;
    }
    Ok(PatchCheck {
        unit: p.unit.to_string(),
        coordinates: p.coordinates.iter().map(|(a, b)| (a.clone(), b.to_string())).collect(),
        model: p.model.iter().map(|m| m.to_string()).collect(),
        model_kind: recognize_model(&p.model, n),
        etale,
        coordinates_vanish,
        model_in_ideal,
        ideal_in_model,
    })
}

/// Rank of a matrix over the field and a basis of its kernel.
pub(crate) fn rank_and_kernel(field: FieldSpec, m: &[Vec<FieldElem>]) -> (usize, Vec<Vec<FieldElem>>) {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<FieldElem>> = m.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for j in 0..cols {
            a[r][j] = a[r][j].mul(&inv);
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let v = a[r][j].mul(&f);
                    a[i][j] = a[i][j].sub(&v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut kernel = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![field.zero(); cols];
        v[free] = field.one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = a[i][free].neg();
        }
        kernel.push(v);
    }
    (r, kernel)
}

/// Whether the quadratic form is nondegenerate in the sense of the A_1 normal forms: full
/// polar rank, or in characteristic two polar corank one with the form nonzero on the radical.
pub(crate) fn quadratic_rank(q: &MultiPoly) -> (usize, bool) {
    let n = q.nvars();
    let field = q.field();
    let mut b = vec![vec![field.zero(); n]; n];
    for (e, c) in q.terms() {
        let vars: Vec<usize> = (0..n).filter(|&i| e[i] > 0).collect();
        if vars.len() == 1 {
            b[vars[0]][vars[0]] = c.scale(2);
        } else {
            b[vars[0]][vars[1]] = c.clone();
            b[vars[1]][vars[0]] = c.clone();
        }
    }
    let (rank, kernel) = rank_and_kernel(field, &b);
    let nondegenerate = rank == n
        || (field.characteristic() == 2
            && rank + 1 == n
            && q.evaluate(&kernel[0]).map(|v| !v.is_zero()).unwrap_or(false));
    (rank, nondegenerate)
}

#[derive(Clone, Debug, Serialize)]
pub struct A1Certificate {
    pub point: Vec<String>,
    pub multiplicity: Option<u64>,
    pub quadratic_rank: usize,
    pub isolated: bool,
    pub substitution: Vec<(String, String)>,
    pub normal_form: Option<String>,
    pub model_kind: Option<ModelKind>,
    pub replay: Option<CertificateCheck>,
    pub point_blowup_smooth: Option<bool>,
    pub certified: bool,
    pub failure: Option<String>,
    pub residual: Option<String>,
}

/// A_1 certificate at a rational point of a hypersurface presentation, using the recorded
/// substitution for its type when the translated equation is not already a normal form.
pub fn certify_a1(p: &Presentation, point: &[FieldElem], cfg: &GbConfig) -> Result<A1Certificate> {
    let script = super::scripts::a1_patch(p, point)?;
    certify_a1_with(&p.ideal, point, script, cfg)
}

/// True iff the point is an isolated point of `V(sing)`.
fn isolated_point(sing: &Ideal, point: &[FieldElem], cfg: &GbConfig) -> Result<bool> {
    let field = sing.field();
    let names = sing.names().clone();
    for g in sing.generators() {
        if !g.evaluate(point)?.is_zero() {
            return Ok(false);
        }
    }
    for i in 0..sing.nvars() {
        let lin = MultiPoly::var(field, names.clone(), i).sub(&MultiPoly::constant(field, names.clone(), point[i].clone()));
        let away = saturate(sing, &lin, cfg)?;
        let mut vanishes = true;
        for g in away.generators() {
            if !g.evaluate(point)?.is_zero() {
                vanishes = false;
                break;
            }
        }
        if vanishes {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn certify_a1_with(ideal: &Ideal, point: &[FieldElem], script: Option<Patch>, cfg: &GbConfig) -> Result<A1Certificate> {
    if ideal.generators().len() != 1 {
        return Err(AlgebraError::Unsupported("A_1 certification needs a hypersurface".into()));
    }
    if point.len() != ideal.nvars() {
        return Err(AlgebraError::Mismatch("point dimension".into()));
    }
    let f = &ideal.generators()[0];
    let field = ideal.field();
    let names = ideal.names().clone();
    let sing = jacobian_ideal(ideal, 1)?;
    let isolated = isolated_point(&sing, point, cfg)?;
    let translated = f.translate(point)?;
    let multiplicity = translated.order();
    let quad = translated.homogeneous_part(2);
    let (quadratic_rank, nondegenerate) = quadratic_rank(&quad);
    let mut cert = A1Certificate {
        point: point.iter().map(|c| c.to_string()).collect(),
        multiplicity,
        quadratic_rank,
        isolated,
        substitution: Vec::new(),
        normal_form: None,
        model_kind: None,
        replay: None,
        point_blowup_smooth: None,
        certified: false,
        failure: None,
        residual: None,
    };
    let fail = |mut c: A1Certificate, why: String| {
        c.failure = Some(why);
        c.residual = Some(translated.to_string());
        Ok(c)
    };
    if !isolated {
        return fail(cert, "the point is not an isolated singular point".into());
    }
    match multiplicity {
        Some(2) => {}
        Some(m) if m >= 3 => return fail(cert, format!("multiplicity {m}: the quadratic truncation is zero")),
        _ => return fail(cert, "the point is not a singular point of multiplicity two".into()),
    }
    if !nondegenerate {
        return fail(cert, format!("quadratic part of rank {} in {} variables is degenerate", quadratic_rank, ideal.nvars()));
    }
    let patch = match script {
        Some(p) => p,
        None => {
            if pair_form(&translated).is_none() {
                return fail(cert, "no substitution script and the equation is not in normal form".into());
            }
            let coords: Vec<(String, MultiPoly)> = (0..names.len())
                .map(|i| {
                    let shift = MultiPoly::var(field, names.clone(), i)
                        .sub(&MultiPoly::constant(field, names.clone(), point[i].clone()));
                    (names[i].clone(), shift)
                })
                .collect();
            let model = vec![translated.with_names(names.clone()).to_string()];
            Patch::new(MultiPoly::one(field, names.clone()), coords, &model)?
        }
    };
    let locus = Ideal::of_point(field, names.clone(), point);
    let lc = LocalCertificate { description: "A_1 point".into(), locus, excluded: None, patches: vec![patch.clone()] };
    let check = lc.verify(ideal, cfg)?;
    cert.substitution = patch.coordinates.iter().map(|(a, b)| (a.clone(), b.to_string())).collect();
    cert.normal_form = patch.model.first().map(|m| m.to_string());
    cert.model_kind = Some(check.model_kind.clone());
    let is_a1 = matches!(check.model_kind, ModelKind::A1 { linear: 0, free: 0, .. });
    let replay_ok = check.certified;
    cert.replay = Some(check);
    if !replay_ok || !is_a1 {
        return fail(cert, "the substitution does not replay to an A_1 normal form".into());
    }
    let smooth = crate::blowup::point_blowup_is_smooth(ideal, point, cfg)?;
    cert.point_blowup_smooth = Some(smooth);
    if !smooth {
        return fail(cert, "blowing up the point leaves a singular chart".into());
    }
    cert.certified = true;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;

    #[test]
    fn recognizes_models() {
        let q = FieldSpec::rationals();
        let r = PolyRing::new(q, &["a", "b", "c", "d", "e"]);
        assert_eq!(
            recognize_model(&[r.p("a*b - c*d")], 5),
            ModelKind::A1 { quadric_vars: 4, with_square: false, linear: 0, free: 1 }
        );
        assert_eq!(
            recognize_model(&[r.p("e"), r.p("a^2 + b*c")], 5),
            ModelKind::A1 { quadric_vars: 3, with_square: true, linear: 1, free: 1 }
        );
        assert_eq!(recognize_model(&[r.p("a^3 + b*c")], 5), ModelKind::A2 { linear: 0, free: 2 });
        assert_eq!(recognize_model(&[r.p("a*b - c*d"), r.p("a*b - e^2")], 5), ModelKind::Toric { binomials: 2, linear: 0, free: 0 });
        assert_eq!(recognize_model(&[r.p("a*b + a^3")], 5), ModelKind::Unrecognized);
        assert_eq!(recognize_model(&[r.p("a*b + a*c")], 5), ModelKind::Unrecognized);
        let f2 = FieldSpec::prime(2);
        let r2 = PolyRing::new(f2, &["y", "z", "x1", "x2", "x3", "x4"]);
        assert_eq!(
            recognize_model(&[r2.p("y*z + x1^2*x2^2 + x3^2*x4^2")], 6),
            ModelKind::OddCharTwo { pairs: 2, linear: 0, free: 0 }
        );
    }

    #[test]
    fn quadratic_ranks() {
        let q = FieldSpec::rationals();
        let r = PolyRing::new(q, &["a", "b", "c"]);
        assert_eq!(quadratic_rank(&r.p("a*b + c^2")), (3, true));
        assert_eq!(quadratic_rank(&r.p("a*b + b*c")), (2, false));
        let f2 = FieldSpec::prime(2);
        let r2 = PolyRing::new(f2, &["a", "b", "c"]);
        assert_eq!(quadratic_rank(&r2.p("a*b + c^2")), (2, true));
        assert_eq!(quadratic_rank(&r2.p("a*b")), (2, false));
    }

    #[test]
    fn normal_form_is_certified_trivially() {
        let q = FieldSpec::rationals();
        let r = PolyRing::new(q, &["x", "y"]);
        let ideal = Ideal::from_polys(vec![r.p("x*y")]).unwrap();
        let c = certify_a1_with(&ideal, &[q.zero(), q.zero()], None, &GbConfig::default()).unwrap();
        assert!(c.certified, "{c:?}");
        assert_eq!(c.normal_form.as_deref(), Some("x*y"));
    }

    #[test]
    fn cusp_is_not_certified() {
        let q = FieldSpec::rationals();
        let r = PolyRing::new(q, &["x", "y"]);
        let ideal = Ideal::from_polys(vec![r.p("y^2 - x^3")]).unwrap();
        let c = certify_a1_with(&ideal, &[q.zero(), q.zero()], None, &GbConfig::default()).unwrap();
        assert!(!c.certified);
        assert!(c.failure.unwrap().contains("degenerate"));
        let e8 = Ideal::from_polys(vec![r.p("y^3 - x^5")]).unwrap();
        let c = certify_a1_with(&e8, &[q.zero(), q.zero()], None, &GbConfig::default()).unwrap();
        assert!(c.failure.unwrap().contains("multiplicity 3"));
    }
}
