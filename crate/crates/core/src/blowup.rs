//! Chart-wise blowups, strict transforms, and resolution traces with smoothness verdicts.
//!
//! A center `V(g_1, .., g_k)` is blown up in `k` charts. In chart `i` a generator of the form
//! `x_j - c` with `x_j` not occurring in `g_i` is substituted, `x_j ↦ c + g_i·x_j`; every other
//! generator gets a fresh variable `s` and the relation `g_j - s·g_i`. The strict transform is
//! the saturation by `g_i`, and `g_i` cuts out the exceptional divisor of the chart.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::field::{FieldElem, FieldSpec};
use crate::groebner::{
    buchberger_with, ideal_dimension, ideals_equal, is_unit_ideal, jacobian, minors, prune_generators, saturate,
    Dimension, GbConfig, Ideal, MonomialOrder, RadicalTester,
};
use crate::poly::{var_names, MultiPoly, VarNames};
use crate::presentations::{reduced_presentation, Presentation};
use crate::quiver::DynkinType;
use crate::singularity::{jacobian_ideal, parallel_map, predicted_locus, theorem_a_branch, theorem_c_components, Branch};

/// One chart of a blowup, or the root of a trace.
#[derive(Clone, Debug)]
pub struct BlowupChart {
    pub id: usize,
    pub parent: Option<usize>,
    pub stage: usize,
    pub center_label: String,
    /// Center generators in the parent ring.
    pub center: Vec<MultiPoly>,
    /// Index of the center generator inverted in this chart.
    pub chart_index: usize,
    /// Images of the parent variables.
    pub substitution: Vec<MultiPoly>,
    pub relations: Vec<MultiPoly>,
    /// Equation of the new exceptional divisor.
    pub exceptional: Option<MultiPoly>,
    /// Strict transforms of all exceptional divisors so far.
    pub exceptionals: Vec<MultiPoly>,
    pub ideal: Ideal,
    pub tracked: BTreeMap<String, Ideal>,
    pub empty: bool,
    /// Only the neighbourhood of the new exceptional divisor belongs to the final space.
    pub near_exceptional: bool,
    pub smooth: Option<bool>,
    pub sing_basis: Vec<String>,
    /// The parent was smooth away from the center, so the chart is smooth away from its
    /// exceptional divisor.
    pub smooth_off_exceptional: bool,
    /// Generators whose zero set is the singular locus of the chart, once computed.
    pub sing_support: Option<Ideal>,
    /// For a chart blown up along a disjoint union: smooth away from the union.
    pub residual_smooth: Option<bool>,
    pub children: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChartJson {
    pub id: usize,
    pub parent: Option<usize>,
    pub stage: usize,
    pub center: String,
    pub center_generators: Vec<String>,
    pub chart_generator: Option<String>,
    pub exceptional: Option<String>,
    pub substitution: Vec<(String, String)>,
    pub relations: Vec<String>,
    pub variables: Vec<String>,
    pub ideal: Vec<String>,
    pub empty: bool,
    pub near_exceptional: bool,
    pub smooth: Option<bool>,
    pub sing_basis: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_smooth: Option<bool>,
    pub children: Vec<usize>,
}

impl BlowupChart {
    fn root(ideal: &Ideal, tracked: BTreeMap<String, Ideal>) -> BlowupChart {
        BlowupChart {
            id: 0,
            parent: None,
            stage: 0,
            center_label: "root".into(),
            center: Vec::new(),
            chart_index: 0,
            substitution: Vec::new(),
            relations: Vec::new(),
            exceptional: None,
            exceptionals: Vec::new(),
            ideal: ideal.clone(),
            tracked,
            empty: false,
            near_exceptional: false,
            smooth: None,
            sing_basis: Vec::new(),
            smooth_off_exceptional: false,
            sing_support: None,
            residual_smooth: None,
            children: Vec::new(),
        }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn to_json(&self) -> ChartJson {
        let parent_names: Vec<String> = self.center.first().map(|g| g.names().to_vec()).unwrap_or_default();
        ChartJson {
            id: self.id,
            parent: self.parent,
            stage: self.stage,
            center: self.center_label.clone(),
            center_generators: self.center.iter().map(|g| g.to_string()).collect(),
            chart_generator: self.center.get(self.chart_index).map(|g| g.to_string()),
            exceptional: self.exceptional.as_ref().map(|e| e.to_string()),
            substitution: parent_names
                .iter()
                .zip(&self.substitution)
                .filter(|(v, img)| img.to_string() != **v)
                .map(|(v, img)| (v.clone(), img.to_string()))
                .collect(),
            relations: self.relations.iter().map(|r| r.to_string()).collect(),
            variables: self.ideal.names().to_vec(),
            ideal: self.ideal.generators().iter().map(|g| g.to_string()).collect(),
            empty: self.empty,
            near_exceptional: self.near_exceptional,
            smooth: self.smooth,
            sing_basis: self.sing_basis.clone(),
            residual_smooth: self.residual_smooth,
            children: self.children.clone(),
        }
    }

    /// Recomputes the strict transform from the parent ideal and the stored substitution by
    /// saturation, and for a principal parent also by dividing out the exceptional equation.
    pub fn replay(&self, parent: &Ideal, cfg: &GbConfig) -> Result<bool> {
        let Some(e) = &self.exceptional else { return Ok(true) };
        let mut gens = Vec::new();
        for g in parent.generators() {
            gens.push(g.map_vars(&self.substitution)?);
        }
        gens.extend(self.relations.iter().cloned());
        let total = Ideal::new(parent.field(), self.ideal.names().clone(), gens)?;
        let strict = saturate(&total, e, cfg)?;
        if !ideals_equal(&strict, &self.ideal, cfg)? {
            return Ok(false);
        }
        if parent.generators().len() == 1 && self.relations.is_empty() {
            let divided = divide_out(&parent.generators()[0].map_vars(&self.substitution)?, e)?;
            let divided = Ideal::new(parent.field(), self.ideal.names().clone(), vec![divided])?;
            return ideals_equal(&divided, &strict, cfg);
        }
        Ok(true)
    }
}

/// Generators of a center without zeros and repeats, each made monic.
fn clean_center(center: &[MultiPoly]) -> Vec<MultiPoly> {
    let mut out: Vec<MultiPoly> = Vec::new();
    for g in center {
        if g.is_zero() {
            continue;
        }
        let m = g.monic();
        if !out.contains(&m) {
            out.push(m);
        }
    }
    out
}

/// `Some((x_j, c))` when `g = x_j - c`.
fn shifted_variable(g: &MultiPoly) -> Option<(usize, FieldElem)> {
    let supp = g.support();
    if supp.len() != 1 || g.total_degree() != Some(1) {
        return None;
    }
    let v = supp[0];
    let mut e = crate::poly::Exponent::from_elem(0, g.nvars());
    e[v] = 1;
    if !g.coefficient(&e).is_one() {
        return None;
    }
    Some((v, g.constant_term().neg()))
}

fn fresh_name(names: &[String], stage: usize, j: usize) -> String {
    let mut name = format!("s{stage}_{j}");
    while names.contains(&name) {
        name.push('_');
    }
    name
}

/// A reduced, pruned generating set.
fn tidy(ideal: &Ideal, cfg: &GbConfig) -> Result<Ideal> {
    let gb = buchberger_with(ideal, &MonomialOrder::DegRevLex, cfg)?;
    if gb.is_unit() {
        return Ok(Ideal::unit(ideal.field(), ideal.names().clone()));
    }
    let mut basis = gb.basis().to_vec();
    basis.sort_by_key(|g| (g.total_degree(), g.nterms()));
    let sorted = Ideal::new(ideal.field(), ideal.names().clone(), basis)?;
    Ideal::new(ideal.field(), ideal.names().clone(), prune_generators(&sorted, cfg)?)
}

fn is_unit(ideal: &Ideal) -> bool {
    ideal.generators().iter().any(|g| g.is_unit_constant())
}

/// Strict transform of a principal divisor under a substitution: divide out `g` as often as possible.
fn divide_out(f: &MultiPoly, g: &MultiPoly) -> Result<MultiPoly> {
    let mut cur = f.clone();
    if cur.is_zero() || g.is_constant() {
        return Ok(cur);
    }
    while let Some(q) = cur.exact_div(g)? {
        cur = q;
    }
    Ok(cur)
}

/// Charts of the blowup of `V(parent.ideal)` along `V(center)`.
fn charts_of(
    parent: &BlowupChart,
    center: &[MultiPoly],
    label: &str,
    stage: usize,
    allow_ambient: bool,
    cfg: &GbConfig,
) -> Result<Vec<BlowupChart>> {
    let ideal = &parent.ideal;
    let field = ideal.field();
    let center = clean_center(center);
    if center.is_empty() {
        return Err(AlgebraError::Invalid("the center is the whole space".into()));
    }
    if center.iter().any(|g| g.is_constant()) {
        return Err(AlgebraError::Invalid("the center is empty".into()));
    }
    if !allow_ambient {
        let cz = Ideal::new(field, ideal.names().clone(), center.clone())?;
        let t = RadicalTester::new(&cz, cfg)?;
        for g in ideal.generators() {
            if !t.contains(g)? {
                return Err(AlgebraError::Invalid(format!("center {label} does not lie in the variety")));
            }
        }
    }
    let n = ideal.nvars();
    let mut out = Vec::new();
    for (i, gi) in center.iter().enumerate() {
        let gi_supp = gi.support();
        let mut subst: BTreeMap<usize, FieldElem> = BTreeMap::new();
        let mut fresh: Vec<usize> = Vec::new();
        for (j, gj) in center.iter().enumerate() {
            if j == i {
                continue;
            }
            match shifted_variable(gj) {
                Some((v, c)) if !gi_supp.contains(&v) && !subst.contains_key(&v) => {
                    subst.insert(v, c);
                }
                _ => fresh.push(j),
            }
        }
        let mut names: Vec<String> = ideal.names().to_vec();
        for &j in &fresh {
            let name = fresh_name(&names, stage, j + 1);
            names.push(name);
        }
        let names: VarNames = var_names(&names);
        let map: Vec<usize> = (0..n).collect();
        let g = gi.embed(names.clone(), &map);
        let images: Vec<MultiPoly> = (0..n)
            .map(|v| {
                let x = MultiPoly::var(field, names.clone(), v);
                match subst.get(&v) {
                    Some(c) => MultiPoly::constant(field, names.clone(), c.clone()).add(&g.mul(&x)),
                    None => x,
                }
            })
            .collect();
        let mut relations = Vec::new();
        for (k, &j) in fresh.iter().enumerate() {
            let s = MultiPoly::var(field, names.clone(), n + k);
            relations.push(center[j].map_vars(&images)?.sub(&s.mul(&g)));
        }
        let linear_chart = relations.is_empty() && g.total_degree() == Some(1);
        let transform = |source: &Ideal| -> Result<Ideal> {
            if linear_chart && source.generators().len() == 1 {
                // `g` is irreducible, so saturating a principal ideal divides it out.
                let f = divide_out(&source.generators()[0].map_vars(&images)?, &g)?;
                return Ideal::new(field, names.clone(), vec![f.monic()]);
            }
            let mut gens = Vec::new();
            for p in source.generators() {
                gens.push(p.map_vars(&images)?);
            }
            gens.extend(relations.iter().cloned());
            let total = Ideal::new(field, names.clone(), gens)?;
            tidy(&saturate(&total, &g, cfg)?, cfg)
        };
        let strict = transform(ideal)?;
        let empty = is_unit(&strict);
        let mut tracked = BTreeMap::new();
        if !empty {
            for (name, w) in &parent.tracked {
                if is_unit(w) {
                    continue;
                }
                let t = transform(w)?;
                if !is_unit(&t) {
                    tracked.insert(name.clone(), t);
                }
            }
        }
        let mut exceptionals = Vec::new();
        for e in &parent.exceptionals {
            let img = divide_out(&e.map_vars(&images)?, &g)?;
            if !img.is_constant() {
                exceptionals.push(img);
            }
        }
        exceptionals.push(g.clone());
        let substitution: Vec<MultiPoly> = images.iter().map(|p| p.clone()).collect();
        out.push(BlowupChart {
            id: 0,
            parent: Some(parent.id),
            stage,
            center_label: label.to_string(),
            center: center.clone(),
            chart_index: i,
            substitution: substitution.iter().map(|p| p.with_names(names.clone())).collect(),
            relations,
            exceptional: Some(g),
            exceptionals,
            ideal: strict,
            tracked,
            empty,
            near_exceptional: false,
            smooth: if empty { Some(true) } else { None },
            sing_basis: Vec::new(),
            smooth_off_exceptional: false,
            sing_support: None,
            residual_smooth: None,
            children: Vec::new(),
        });
    }
    Ok(out)
}

/// One chart per center generator, with strict transforms; the center must lie in `V(ideal)`
/// unless `allow_ambient` is set.
pub fn blowup_charts(ideal: &Ideal, center: &[MultiPoly], allow_ambient: bool, cfg: &GbConfig) -> Result<Vec<BlowupChart>> {
    let root = BlowupChart::root(ideal, BTreeMap::new());
    let mut charts = charts_of(&root, center, "center", 1, allow_ambient, cfg)?;
    for (k, c) in charts.iter_mut().enumerate() {
        c.id = k + 1;
    }
    Ok(charts)
}

/// Splits off generators of the form `c*x + r` with `c` a nonzero constant and `x` absent from
/// `r`, substituting `x = -r/c` into the rest. Returns the graph equations and what remains.
fn split_graphs(gens: &[MultiPoly], extra: &mut Vec<MultiPoly>) -> Result<(Vec<MultiPoly>, Vec<MultiPoly>)> {
    let mut rest: Vec<MultiPoly> = gens.to_vec();
    let mut graphs = Vec::new();
    loop {
        let mut found = None;
        'search: for (i, g) in rest.iter().enumerate() {
            for v in g.support() {
                if g.degree_in(v) != 1 {
                    continue;
                }
                let c = g.derivative(v)?;
                if c.is_constant() && !c.is_zero() {
                    found = Some((i, v, c));
                    break 'search;
                }
            }
        }
        let Some((i, v, c)) = found else { break };
        let g = rest.remove(i);
        let x = MultiPoly::var(g.field(), g.names().clone(), v);
        let r = g.sub(&x.mul(&c));
        let value = r.neg().scale(&c.constant_term().inv()?);
        for h in rest.iter_mut().chain(extra.iter_mut()) {
            *h = h.substitute_one(v, &value)?;
        }
        rest.retain(|h| !h.is_zero());
        graphs.push(g);
    }
    Ok((graphs, rest))
}

/// Zero set of the singular locus of a chart: the Jacobian ideal, restricted to the exceptional
/// divisor when the chart is known to be smooth away from it. Graph coordinates are eliminated
/// first, which is an isomorphism and keeps the minors small.
fn singular_support(chart: &BlowupChart, dimension: usize, cfg: &GbConfig) -> Result<Ideal> {
    let field = chart.ideal.field();
    let names = chart.ideal.names().clone();
    if chart.empty || is_unit(&chart.ideal) {
        return Ok(Ideal::unit(field, names));
    }
    let mut extra: Vec<MultiPoly> = match (&chart.exceptional, chart.smooth_off_exceptional) {
        (Some(e), true) => vec![e.clone()],
        _ => Vec::new(),
    };
    let (graphs, rest) = split_graphs(chart.ideal.generators(), &mut extra)?;
    let codim = chart.ideal.nvars() - dimension;
    if graphs.len() > codim {
        return Err(AlgebraError::Invalid(format!("chart {} has more graph equations than its codimension", chart.id)));
    }
    let mut gens = if rest.is_empty() {
        vec![MultiPoly::one(field, names.clone())]
    } else {
        let reduced = Ideal::new(field, names.clone(), rest)?;
        jacobian_ideal(&reduced, codim - graphs.len())?.generators().to_vec()
    };
    gens.extend(extra);
    gens.extend(graphs);
    tidy(&Ideal::new(field, names, gens)?, cfg)
}

/// Computes and stores the smoothness verdict of a chart.
fn settle(chart: &mut BlowupChart, dimension: usize, cfg: &GbConfig) -> Result<bool> {
    let support = singular_support(chart, dimension, cfg)?;
    let smooth = is_unit(&support);
    chart.smooth = Some(smooth);
    chart.sing_basis = if smooth { Vec::new() } else { support.generators().iter().map(|g| g.to_string()).collect() };
    chart.sing_support = Some(support);
    Ok(smooth)
}

/// True iff every generator of `outer` vanishes on `V(support)`.
fn contained_in(support: &Ideal, outer: &[MultiPoly], cfg: &GbConfig) -> Result<bool> {
    if is_unit(support) {
        return Ok(true);
    }
    let t = RadicalTester::new(support, cfg)?;
    for g in outer {
        if !t.contains(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `h` with `g = h^p` in characteristic `p`, when every exponent of `g` is divisible by `p`.
fn frobenius_root(g: &MultiPoly) -> Option<MultiPoly> {
    let p = g.field().characteristic();
    if p == 0 || g.is_constant() {
        return None;
    }
    let p = p as u32;
    if !g.terms().all(|(e, _)| e.iter().all(|&k| k % p == 0)) {
        return None;
    }
    let terms: Vec<(crate::poly::Exponent, FieldElem)> =
        g.terms().map(|(e, c)| (e.iter().map(|&k| k / p).collect(), c.clone())).collect();
    Some(MultiPoly::from_terms(g.field(), g.names().clone(), terms))
}

/// Replaces `p`-th powers among the generators by their roots and tidies again.
fn reduce_powers(ideal: &Ideal, cfg: &GbConfig) -> Result<Ideal> {
    let mut current = ideal.clone();
    loop {
        let mut changed = false;
        let mut gens = Vec::new();
        for g in current.generators() {
            let mut h = g.clone();
            while let Some(r) = frobenius_root(&h) {
                h = r;
                changed = true;
            }
            gens.push(h);
        }
        if !changed {
            return Ok(current);
        }
        current = tidy(&Ideal::new(ideal.field(), ideal.names().clone(), gens)?, cfg)?;
    }
}

/// True iff `V(center)` is regular with `center` its reduced ideal: the Jacobian of the
/// generators has full codimension rank at every point.
pub fn is_regular_center(center: &Ideal, cfg: &GbConfig) -> Result<bool> {
    let d = match ideal_dimension(center, cfg)? {
        Dimension::Dim(d) => d,
        Dimension::Empty => return Ok(true),
    };
    let sing = jacobian_ideal(center, center.nvars() - d)?;
    is_unit_ideal(&sing, cfg)
}

/// A center of a resolution script, resolved per chart.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CenterSpec {
    /// All coordinates of the chart.
    Origin,
    /// The singular locus of the chart.
    SingularLocus,
    /// The strict transform of a tracked subvariety.
    Tracked { name: String },
    /// A deepest nonempty pairwise intersection of the tracked subvarieties.
    Separate { names: Vec<String> },
    /// The union of the strict transforms, which must be pairwise disjoint; each part is blown up
    /// on its own, and only the neighbourhood of its exceptional divisor is kept. Must come last.
    DisjointUnion { names: Vec<String> },
    /// Points where a smooth hypersurface chart meets its exceptional divisors non-transversally.
    NormalCrossings,
}

impl std::fmt::Display for CenterSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CenterSpec::Origin => write!(f, "origin"),
            CenterSpec::SingularLocus => write!(f, "singular locus"),
            CenterSpec::Tracked { name } => write!(f, "strict transform of {name}"),
            CenterSpec::Separate { .. } => write!(f, "deepest intersection of the components"),
            CenterSpec::DisjointUnion { names } => write!(f, "disjoint union of {}", names.join(", ")),
            CenterSpec::NormalCrossings => write!(f, "normal-crossings failure"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ResolutionTrace {
    pub label: String,
    pub field: FieldSpec,
    pub dimension: usize,
    pub script: Vec<CenterSpec>,
    pub charts: Vec<BlowupChart>,
    /// Number of script stages in which some chart was blown up.
    pub stages_used: usize,
    /// Pairwise disjointness of tracked transforms checked after each stage, if requested.
    pub disjointness: Vec<(usize, bool)>,
    pub resolved: bool,
    pub failure: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceJson {
    pub label: String,
    pub field: FieldSpec,
    pub dimension: usize,
    pub script: Vec<CenterSpec>,
    pub stages_used: usize,
    pub leaves: usize,
    pub resolved: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    pub disjointness: Vec<(usize, bool)>,
    pub charts: Vec<ChartJson>,
}

impl ResolutionTrace {
    pub fn leaves(&self) -> impl Iterator<Item = &BlowupChart> {
        self.charts.iter().filter(|c| c.is_leaf())
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves().count()
    }

    pub fn to_json(&self) -> TraceJson {
        TraceJson {
            label: self.label.clone(),
            field: self.field,
            dimension: self.dimension,
            script: self.script.clone(),
            stages_used: self.stages_used,
            leaves: self.leaf_count(),
            resolved: self.resolved,
            failure: self.failure.clone(),
            disjointness: self.disjointness.clone(),
            charts: self.charts.iter().map(|c| c.to_json()).collect(),
        }
    }

    /// One line per chart, indented by depth: id, center, exceptional equation, verdict.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{} over {}: {} after {} stage(s), {} leaves\n",
            self.label,
            self.field,
            if self.resolved { "resolved" } else { "not resolved" },
            self.stages_used,
            self.leaf_count()
        );
        fn walk(t: &ResolutionTrace, id: usize, depth: usize, s: &mut String) {
            let c = &t.charts[id];
            let verdict = if c.empty {
                "empty".to_string()
            } else {
                match (c.smooth, c.residual_smooth) {
                    (_, Some(r)) => format!("split; smooth off the centers: {r}"),
                    (Some(true), _) if c.near_exceptional => "smooth near the exceptional divisor".into(),
                    (Some(true), _) => "smooth".into(),
                    (Some(false), _) => "singular".into(),
                    (None, _) => "blown up".into(),
                }
            };
            let exc = c.exceptional.as_ref().map_or("-".to_string(), |e| e.to_string());
            s.push_str(&format!("{}[{}] {} | E: {} | {}\n", "  ".repeat(depth), c.id, c.center_label, exc, verdict));
            for &k in &c.children {
                walk(t, k, depth + 1, s);
            }
        }
        walk(self, 0, 0, &mut s);
        if let Some(f) = &self.failure {
            s.push_str(&format!("failure: {f}\n"));
        }
        s
    }

    /// Replays every chart from its parent (the structural self-check).
    pub fn replay_all(&self, cfg: &GbConfig) -> Result<bool> {
        for c in &self.charts {
            if let Some(p) = c.parent {
                if !c.replay(&self.charts[p].ideal, cfg)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn pairwise_disjoint(chart: &BlowupChart, names: &[String], cfg: &GbConfig) -> Result<bool> {
    let present: Vec<&Ideal> = names.iter().filter_map(|n| chart.tracked.get(n)).collect();
    for a in 0..present.len() {
        for b in a + 1..present.len() {
            if !is_unit_ideal(&present[a].sum(present[b])?, cfg)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A deepest nonempty intersection of two tracked transforms in the chart.
fn deepest_intersection(chart: &BlowupChart, names: &[String], cfg: &GbConfig) -> Result<Option<Ideal>> {
    let present: Vec<&Ideal> = names.iter().filter_map(|n| chart.tracked.get(n)).collect();
    let mut best: Option<(usize, Ideal)> = None;
    for a in 0..present.len() {
        for b in a + 1..present.len() {
            let s = present[a].sum(present[b])?;
            if let Dimension::Dim(d) = ideal_dimension(&s, cfg)? {
                if best.as_ref().map_or(true, |(bd, _)| d < *bd) {
                    best = Some((d, s));
                }
            }
        }
    }
    match best {
        Some((_, s)) => Ok(Some(tidy(&s, cfg)?)),
        None => Ok(None),
    }
}

/// What happened to one chart at one stage.
struct StageOutcome {
    chart: BlowupChart,
    children: Vec<BlowupChart>,
}

/// Blows up `chart` along `center`, marking children smooth off the exceptional divisor when
/// the chart's singular locus lies in the center.
fn children_along(chart: &BlowupChart, center: &[MultiPoly], label: &str, stage: usize, cfg: &GbConfig) -> Result<Vec<BlowupChart>> {
    let support = chart.sing_support.as_ref().expect("settled before blowing up");
    let inside = contained_in(support, center, cfg)?;
    let mut children = charts_of(chart, center, label, stage, false, cfg)?;
    for c in children.iter_mut() {
        c.smooth_off_exceptional = inside;
    }
    Ok(children)
}

fn run_stage(chart: &BlowupChart, spec: &CenterSpec, stage: usize, dimension: usize, cfg: &GbConfig) -> Result<StageOutcome> {
    let mut chart = chart.clone();
    let smooth = settle(&mut chart, dimension, cfg)?;
    if smooth && *spec != CenterSpec::NormalCrossings {
        return Ok(StageOutcome { chart, children: Vec::new() });
    }
    let label = spec.to_string();
    let center: Option<Vec<MultiPoly>> = match spec {
        CenterSpec::Origin => Some((0..chart.ideal.nvars()).map(|v| MultiPoly::var(chart.ideal.field(), chart.ideal.names().clone(), v)).collect()),
        CenterSpec::SingularLocus => match &chart.sing_support {
            Some(s) => Some(reduce_powers(s, cfg)?.generators().to_vec()),
            None => None,
        },
        CenterSpec::Tracked { name } => chart.tracked.get(name).map(|w| w.generators().to_vec()),
        CenterSpec::Separate { names } => deepest_intersection(&chart, names, cfg)?.map(|w| w.generators().to_vec()),
        CenterSpec::NormalCrossings => {
            if !smooth {
                return Err(AlgebraError::Invalid(format!("chart {} is still singular", chart.id)));
            }
            snc_failure_locus(&chart, cfg)?.map(|w| w.generators().to_vec())
        }
        CenterSpec::DisjointUnion { names } => {
            if !pairwise_disjoint(&chart, names, cfg)? {
                return Err(AlgebraError::Invalid(format!("the components {} meet in chart {}", names.join(", "), chart.id)));
            }
            let parts: Vec<(String, Ideal)> = names.iter().filter_map(|n| chart.tracked.get(n).map(|w| (n.clone(), w.clone()))).collect();
            if parts.is_empty() {
                return Ok(StageOutcome { chart, children: Vec::new() });
            }
            for (name, w) in &parts {
                if !is_regular_center(w, cfg)? {
                    return Err(AlgebraError::Invalid(format!("{name} is not regular in chart {}", chart.id)));
                }
            }
            // Away from the union the chart must already be smooth.
            let mut union = parts[0].1.clone();
            for (_, w) in &parts[1..] {
                union = crate::groebner::intersect(&union, w, cfg)?;
            }
            let support = chart.sing_support.clone().expect("settled");
            chart.residual_smooth = Some(contained_in(&support, union.generators(), cfg)?);
            let mut children = Vec::new();
            for (name, w) in parts {
                let mut part = charts_of(&chart, w.generators(), &format!("strict transform of {name}"), stage, false, cfg)?;
                for c in part.iter_mut() {
                    c.near_exceptional = true;
                    c.smooth_off_exceptional = true;
                }
                children.extend(part);
            }
            return Ok(StageOutcome { chart, children });
        }
    };
    let mut children = Vec::new();
    if let Some(center) = center {
        if !center.iter().any(|g| g.is_unit_constant()) {
            let ideal = Ideal::new(chart.ideal.field(), chart.ideal.names().clone(), center.clone())?;
            if !is_regular_center(&ideal, cfg)? {
                return Err(AlgebraError::Invalid(format!("the center {label} is not regular in chart {}", chart.id)));
            }
            children = children_along(&chart, &center, &label, stage, cfg)?;
        }
    }
    Ok(StageOutcome { chart, children })
}

/// Runs a resolution script chart by chart. Charts that are already smooth become leaves.
pub fn run_resolution(
    label: &str,
    ideal: &Ideal,
    dimension: usize,
    tracked: Vec<(String, Ideal)>,
    script: &[CenterSpec],
    check_disjoint: Option<Vec<String>>,
    cfg: &GbConfig,
) -> Result<ResolutionTrace> {
    if let Some(pos) = script.iter().position(|s| matches!(s, CenterSpec::DisjointUnion { .. })) {
        if pos + 1 != script.len() {
            return Err(AlgebraError::Invalid("a disjoint-union center must be the last stage".into()));
        }
    }
    let root = BlowupChart::root(ideal, tracked.into_iter().collect());
    let mut charts = vec![root];
    let mut frontier = vec![0usize];
    let mut stages_used = 0;
    let mut disjointness = Vec::new();
    for (k, spec) in script.iter().enumerate() {
        let stage = k + 1;
        let outcomes = parallel_map(&frontier, |&id| run_stage(&charts[id], spec, stage, dimension, cfg));
        let mut next = Vec::new();
        let mut blew_up = false;
        for (&id, outcome) in frontier.iter().zip(outcomes) {
            let o = outcome?;
            charts[id] = o.chart;
            if charts[id].smooth == Some(true) && o.children.is_empty() {
                if script[stage..].contains(&CenterSpec::NormalCrossings) {
                    next.push(id);
                }
                continue;
            }
            if o.children.is_empty() {
                next.push(id);
                continue;
            }
            blew_up = true;
            charts[id].smooth = None;
            for mut c in o.children {
                c.id = charts.len();
                charts[id].children.push(c.id);
                if !c.empty && !c.near_exceptional {
                    next.push(c.id);
                }
                charts.push(c);
            }
        }
        if blew_up {
            stages_used += 1;
        }
        if let Some(names) = &check_disjoint {
            if k == 0 {
                let mut ok = true;
                for &id in &next {
                    ok &= pairwise_disjoint(&charts[id], names, cfg)?;
                }
                disjointness.push((stage, ok));
            }
        }
        frontier = next;
    }
    // Final verdicts for the remaining leaves.
    let pending: Vec<usize> = charts.iter().filter(|c| c.is_leaf() && !c.empty && c.smooth.is_none()).map(|c| c.id).collect();
    let settled = parallel_map(&pending, |&id| {
        let mut c = charts[id].clone();
        settle(&mut c, dimension, cfg).map(|_| c)
    });
    for (&id, c) in pending.iter().zip(settled) {
        charts[id] = c?;
    }
    let mut failure = None;
    for c in &charts {
        if c.is_leaf() && !c.empty && c.smooth != Some(true) {
            failure = Some(format!("chart {} is singular along V({})", c.id, c.sing_basis.join(", ")));
            break;
        }
        if c.residual_smooth == Some(false) {
            failure = Some(format!("chart {} is singular away from the blown-up components", c.id));
            break;
        }
    }
    Ok(ResolutionTrace {
        label: label.to_string(),
        field: ideal.field(),
        dimension,
        script: script.to_vec(),
        charts,
        stages_used,
        disjointness,
        resolved: failure.is_none(),
        failure,
    })
}

/// Whether blowing up a point of a variety gives smooth charts.
pub fn point_blowup_is_smooth(ideal: &Ideal, point: &[FieldElem], cfg: &GbConfig) -> Result<bool> {
    let dimension = match ideal_dimension(ideal, cfg)? {
        Dimension::Dim(d) => d,
        Dimension::Empty => return Ok(true),
    };
    let mut root = BlowupChart::root(ideal, BTreeMap::new());
    settle(&mut root, dimension, cfg)?;
    let center = Ideal::of_point(ideal.field(), ideal.names().clone(), point);
    for mut c in children_along(&root, center.generators(), "point", 1, cfg)? {
        if !settle(&mut c, dimension, cfg)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Simple normal crossings of the strict transform with the exceptional divisors in every leaf of
/// a hypersurface trace.
pub fn snc_check_hypersurface(trace: &ResolutionTrace, cfg: &GbConfig) -> Result<bool> {
    for c in trace.leaves() {
        if c.empty {
            continue;
        }
        if snc_failure_locus(c, cfg)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The reduced locus where a hypersurface chart and its exceptional divisors fail to cross
/// normally, or `None` when they do.
pub fn snc_failure_locus(c: &BlowupChart, cfg: &GbConfig) -> Result<Option<Ideal>> {
    if !c.relations.is_empty() || c.ideal.generators().len() != 1 {
        return Err(AlgebraError::Unsupported(format!("chart {} is not a hypersurface in affine space", c.id)));
    }
    let mut divisors = vec![c.ideal.generators()[0].clone()];
    divisors.extend(c.exceptionals.iter().cloned());
    let vars: Vec<usize> = (0..c.ideal.nvars()).collect();
    let mut failure: Option<Ideal> = None;
    for mask in 1u32..(1 << divisors.len()) {
        let subset: Vec<MultiPoly> = (0..divisors.len()).filter(|i| mask & (1 << i) != 0).map(|i| divisors[i].clone()).collect();
        let jac = jacobian(&subset, &vars)?;
        let mut gens = subset.clone();
        gens.extend(minors(&jac, subset.len())?.into_iter().filter(|m| !m.is_zero()));
        let bad = Ideal::new(c.ideal.field(), c.ideal.names().clone(), gens)?;
        if is_unit_ideal(&bad, cfg)? {
            continue;
        }
        failure = Some(match failure {
            None => bad,
            Some(f) => crate::groebner::intersect(&f, &bad, cfg)?,
        });
    }
    match failure {
        None => Ok(None),
        Some(f) => Ok(Some(reduce_powers(&tidy(&f, cfg)?, cfg)?)),
    }
}

/// The resolution script for a presentation: tracked subvarieties, centers, and the names whose
/// transforms must be pairwise disjoint after the first stage.
pub struct ResolutionPlan {
    pub presentation: Presentation,
    pub tracked: Vec<(String, Ideal)>,
    pub script: Vec<CenterSpec>,
    pub disjoint: Option<Vec<String>>,
}

pub fn resolution_plan(kind: DynkinType, n: usize, field: FieldSpec) -> Result<ResolutionPlan> {
    let presentation = reduced_presentation(kind, n, field)?;
    let names = presentation.names().clone();
    if kind == DynkinType::Star {
        let sets = theorem_c_components(n);
        let tracked: Vec<(String, Ideal)> = sets
            .iter()
            .map(|s| {
                let label: Vec<String> = s.iter().map(|&v| names[v].clone()).collect();
                (format!("V({})", label.join(",")), Ideal::of_variables(field, names.clone(), s))
            })
            .collect();
        let comp_names: Vec<String> = tracked.iter().map(|t| t.0.clone()).collect();
        let mut script = vec![CenterSpec::Origin];
        for _ in 4..n {
            script.push(CenterSpec::Separate { names: comp_names.clone() });
        }
        script.push(CenterSpec::DisjointUnion { names: comp_names });
        return Ok(ResolutionPlan { presentation, tracked, script, disjoint: None });
    }
    let (branch, _) = theorem_a_branch(kind, n, field.characteristic());
    let predicted = predicted_locus(&presentation, branch)?;
    let sing = || vec![("Sing".to_string(), predicted.components[0].clone())];
    let tracked_sing = || vec![CenterSpec::Tracked { name: "Sing".into() }];
    let plan = match branch {
        Branch::Regular => ResolutionPlan { presentation, tracked: Vec::new(), script: Vec::new(), disjoint: None },
        Branch::OriginA1 if kind == DynkinType::A => {
            ResolutionPlan { presentation, tracked: Vec::new(), script: vec![CenterSpec::Origin], disjoint: None }
        }
        Branch::OriginA1 | Branch::BShiftedPoint | Branch::E7CharTwo | Branch::DSingle | Branch::CCharTwo { odd: false } => {
            ResolutionPlan { presentation, tracked: sing(), script: tracked_sing(), disjoint: None }
        }
        Branch::CCharTwo { odd: true } => ResolutionPlan {
            presentation,
            tracked: sing(),
            script: vec![CenterSpec::Origin, CenterSpec::Tracked { name: "Sing".into() }, CenterSpec::SingularLocus],
            disjoint: None,
        },
        Branch::G2CharThree => ResolutionPlan {
            presentation,
            tracked: sing(),
            script: vec![CenterSpec::Tracked { name: "Sing".into() }, CenterSpec::NormalCrossings],
            disjoint: None,
        },
        Branch::DFive => {
            let labels: Vec<String> = if n == 4 {
                vec!["Y0a".into(), "Y0b".into(), "Y1".into(), "Y2".into(), "Y3".into(), "Y4".into()]
            } else {
                vec!["Y0".into(), "Y1".into(), "Y2".into(), "Y3".into(), "Y4".into()]
            };
            let tracked: Vec<(String, Ideal)> = labels.iter().cloned().zip(predicted.components.iter().cloned()).collect();
            ResolutionPlan {
                presentation,
                tracked,
                script: vec![CenterSpec::Origin, CenterSpec::DisjointUnion { names: labels.clone() }],
                disjoint: Some(labels),
            }
        }
    };
    Ok(plan)
}

/// Runs the resolution script of a presentation.
pub fn resolve(kind: DynkinType, n: usize, field: FieldSpec, cfg: &GbConfig) -> Result<ResolutionTrace> {
    let plan = resolution_plan(kind, n, field)?;
    let p = &plan.presentation;
    let dimension = p.names().len() - p.codimension();
    run_resolution(&p.label(), &p.ideal, dimension, plan.tracked, &plan.script, plan.disjoint, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;

    fn cfg() -> GbConfig {
        GbConfig::default()
    }

    #[test]
    fn cone_chart_divides_out() {
        let q = FieldSpec::rationals();
        let r = PolyRing::new(q, &["x", "y", "z", "w"]);
        let ideal = Ideal::from_polys(vec![r.p("x*y + z*w")]).unwrap();
        let origin: Vec<MultiPoly> = (0..4).map(|i| r.var(i)).collect();
        let charts = blowup_charts(&ideal, &origin, false, &cfg()).unwrap();
        assert_eq!(charts.len(), 4);
        assert_eq!(charts[0].ideal.generators()[0].to_string(), "z*w + y");
        for c in &charts {
            assert!(c.replay(&ideal, &cfg()).unwrap());
        }
    }

    #[test]
    fn degenerate_centers() {
        let q = FieldSpec::rationals();
        let r = PolyRing::new(q, &["x", "y"]);
        let ideal = Ideal::from_polys(vec![r.p("x")]).unwrap();
        // Blowing up the whole variety leaves nothing.
        let charts = blowup_charts(&ideal, &[r.p("x")], false, &cfg()).unwrap();
        assert!(charts.iter().all(|c| c.empty));
        // A codimension-one ambient center containing V(x) changes nothing.
        let line = Ideal::from_polys(vec![r.p("y")]).unwrap();
        let charts = blowup_charts(&line, &[r.p("x"), r.p("y")], false, &cfg()).unwrap();
        assert!(charts[0].ideal.generators()[0].to_string() == "y");
        assert!(blowup_charts(&ideal, &[r.p("y")], false, &cfg()).is_err());
        assert!(blowup_charts(&ideal, &[r.p("y")], true, &cfg()).is_ok());
    }

    #[test]
    fn quadric_cones_resolve_in_one_step() {
        for field in [FieldSpec::rationals(), FieldSpec::prime(2)] {
            for m in 1..=4usize {
                let names: Vec<String> = (1..=2 * m).map(|i| format!("x{i}")).collect();
                let r = PolyRing::new(field, &names);
                let text: Vec<String> = (0..m).map(|i| format!("x{}*x{}", 2 * i + 1, 2 * i + 2)).collect();
                let ideal = Ideal::from_polys(vec![r.p(&text.join(" + "))]).unwrap();
                let trace = run_resolution("cone", &ideal, 2 * m - 1, Vec::new(), &[CenterSpec::Origin], None, &cfg()).unwrap();
                assert!(trace.resolved, "{}", trace.to_text());
                assert!(trace.replay_all(&cfg()).unwrap());
            }
        }
    }

    #[test]
    fn rees_chart_for_a_curved_center() {
        let q = FieldSpec::rationals();
        let r = PolyRing::new(q, &["x", "y", "z"]);
        // V(x*y - z^2 ... ) along the line V(x, z): a cylinder over a node cut differently.
        let ideal = Ideal::from_polys(vec![r.p("x*z - (y^2 - 1)*z^2")]).unwrap();
        let center = vec![r.p("x - y^2*z + z"), r.p("z")];
        let charts = blowup_charts(&ideal, &center, false, &cfg()).unwrap();
        assert!(charts.iter().any(|c| !c.relations.is_empty()));
        for c in &charts {
            assert!(c.replay(&ideal, &cfg()).unwrap());
        }
    }
}
