//! Ideals, Gröbner bases and the decision procedures built on them.

mod coeff;
pub(crate) mod engine;
mod minors;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::field::FieldSpec;
use crate::poly::{var_names, Exponent, MultiPoly, VarNames};
use coeff::{Coeffs, PrimeCoeffs, Rat, RationalCoeffs};
use engine::{EngineOrder, Exps, Mono, Poly};

pub use engine::Selection as PairSelection;
pub use minors::{determinant, jacobian, minors};

pub const DEFAULT_MAX_PAIRS: usize = 200_000;

#[derive(Clone, Copy, Debug)]
pub struct GbConfig {
    pub max_pairs: usize,
    pub selection: PairSelection,
}

impl Default for GbConfig {
    fn default() -> Self {
        GbConfig { max_pairs: DEFAULT_MAX_PAIRS, selection: PairSelection::Normal }
    }
}

impl GbConfig {
    pub fn with_max_pairs(max_pairs: usize) -> Self {
        GbConfig { max_pairs, ..Default::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    Lex,
    DegRevLex,
    /// The `eliminated` variables are compared first (degrevlex among them), then the rest.
    Block { eliminated: Vec<usize> },
}

impl MonomialOrder {
    /// Internal variable order and engine order: block variables are moved to the front.
    fn layout(&self, nvars: usize) -> Result<(Vec<usize>, EngineOrder)> {
        match self {
            MonomialOrder::Lex => Ok(((0..nvars).collect(), EngineOrder::Lex)),
            MonomialOrder::DegRevLex => Ok(((0..nvars).collect(), EngineOrder::DegRevLex)),
            MonomialOrder::Block { eliminated } => {
                let mut seen = vec![false; nvars];
                let mut perm = Vec::with_capacity(nvars);
                for &v in eliminated {
                    if v >= nvars {
                        return Err(AlgebraError::IndexOutOfRange { index: v, size: nvars });
                    }
                    if !seen[v] {
                        seen[v] = true;
                        perm.push(v);
                    }
                }
                let k = perm.len();
                perm.extend((0..nvars).filter(|&v| !seen[v]));
                Ok((perm, EngineOrder::Block(k)))
            }
        }
    }
}

/// An ideal given by generators in a fixed polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    field: FieldSpec,
    names: VarNames,
    generators: Vec<MultiPoly>,
}

impl Ideal {
    pub fn new(field: FieldSpec, names: VarNames, generators: Vec<MultiPoly>) -> Result<Ideal> {
        for g in &generators {
            if g.field() != field || g.nvars() != names.len() {
                return Err(AlgebraError::Mismatch("generator outside the ideal's ring".into()));
            }
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).map(|g| g.with_names(names.clone())).collect();
        Ok(Ideal { field, names, generators })
    }

    /// Ideal generated by polynomials sharing one ring (at least one polynomial required).
    pub fn from_polys(generators: Vec<MultiPoly>) -> Result<Ideal> {
        let first = generators.first().ok_or_else(|| AlgebraError::Invalid("empty generator list".into()))?;
        Ideal::new(first.field(), first.names().clone(), generators.clone())
    }

    pub fn unit(field: FieldSpec, names: VarNames) -> Ideal {
        let one = MultiPoly::one(field, names.clone());
        Ideal { field, names, generators: vec![one] }
    }

    pub fn zero(field: FieldSpec, names: VarNames) -> Ideal {
        Ideal { field, names, generators: Vec::new() }
    }

    /// The ideal of a point (maximal ideal of a rational point).
    pub fn of_point(field: FieldSpec, names: VarNames, point: &[crate::field::FieldElem]) -> Ideal {
        let gens = (0..names.len())
            .map(|i| {
                MultiPoly::var(field, names.clone(), i).sub(&MultiPoly::constant(field, names.clone(), point[i].clone()))
            })
            .collect();
        Ideal { field, names, generators: gens }
    }

    /// Ideal generated by a set of variables.
    pub fn of_variables(field: FieldSpec, names: VarNames, vars: &[usize]) -> Ideal {
        let gens = vars.iter().map(|&v| MultiPoly::var(field, names.clone(), v)).collect();
        Ideal { field, names, generators: gens }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn names(&self) -> &VarNames {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn with_generators(&self, extra: &[MultiPoly]) -> Result<Ideal> {
        let mut g = self.generators.clone();
        g.extend(extra.iter().cloned());
        Ideal::new(self.field, self.names.clone(), g)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.with_generators(&other.generators)
    }

    /// Product of two ideals (pairwise products of generators).
    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut gens = Vec::new();
        for a in &self.generators {
            for b in &other.generators {
                gens.push(a.mul(b));
            }
        }
        Ideal { field: self.field, names: self.names.clone(), generators: gens }
    }

    /// Images of the generators under a ring map (`images[i]` is the image of variable `i`).
    pub fn map(&self, images: &[MultiPoly]) -> Result<Ideal> {
        let target = images.first().ok_or_else(|| AlgebraError::Invalid("no images".into()))?;
        let gens = self.generators.iter().map(|g| g.map_vars(images)).collect::<Result<Vec<_>>>()?;
        Ideal::new(self.field, target.names().clone(), gens)
    }

    /// Re-reads the ideal in a larger ring; variable `i` becomes `index_map[i]`.
    pub fn embed(&self, names: VarNames, index_map: &[usize]) -> Ideal {
        let gens = self.generators.iter().map(|g| g.embed(names.clone(), index_map)).collect();
        Ideal { field: self.field, names, generators: gens }
    }

    pub fn change_field(&self, field: FieldSpec) -> Result<Ideal> {
        let gens = self.generators.iter().map(|g| g.change_field(field)).collect::<Result<Vec<_>>>()?;
        Ideal::new(field, self.names.clone(), gens)
    }

    pub fn to_json(&self) -> IdealJson {
        IdealJson {
            field: self.field,
            vars: self.names.to_vec(),
            gens: self.generators.iter().map(|g| g.to_string()).collect(),
        }
    }

    pub fn from_json(j: &IdealJson) -> Result<Ideal> {
        let names = var_names(&j.vars);
        let gens = j.gens.iter().map(|s| MultiPoly::parse(j.field, names.clone(), s)).collect::<Result<Vec<_>>>()?;
        Ideal::new(j.field, names, gens)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub field: FieldSpec,
    pub vars: Vec<String>,
    pub gens: Vec<String>,
}

#[derive(Clone, Debug)]
enum Internal {
    Prime(PrimeCoeffs, Vec<Poly<u32>>),
    Rational(Vec<Poly<Rat>>),
}

/// A reduced Gröbner basis together with the data needed for fast reduction.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ideal: Ideal,
    order: MonomialOrder,
    basis: Vec<MultiPoly>,
    perm: Vec<usize>,
    engine_order: EngineOrder,
    internal: Internal,
    pairs_reduced: usize,
}

fn to_engine<F: Coeffs>(f: &F, p: &MultiPoly, perm: &[usize], ord: EngineOrder) -> Result<Poly<F::C>> {
    let mut out = Vec::with_capacity(p.nterms());
    for (e, c) in p.terms() {
        let mut ex = Exps::with_capacity(perm.len());
        for &v in perm {
            let k = e[v];
            if k > u16::MAX as u32 {
                return Err(AlgebraError::ExponentOverflow);
            }
            ex.push(k as u16);
        }
        out.push((Mono::from_exps(ex), f.import(c)));
    }
    engine::sort_poly(f, ord, &mut out);
    Ok(out)
}

fn from_engine<F: Coeffs>(f: &F, p: &Poly<F::C>, perm: &[usize], field: FieldSpec, names: &VarNames) -> MultiPoly {
    let n = perm.len();
    MultiPoly::from_terms(
        field,
        names.clone(),
        p.iter().map(|(m, c)| {
            let mut e = Exponent::from_elem(0, n);
            for (k, &v) in perm.iter().enumerate() {
                e[v] = m.e[k] as u32;
            }
            (e, f.export(c))
        }),
    )
}

fn run_engine<F: Coeffs>(
    f: &F,
    ideal: &Ideal,
    base: &[MultiPoly],
    perm: &[usize],
    ord: EngineOrder,
    cfg: &GbConfig,
) -> Result<(Vec<Poly<F::C>>, usize)> {
    let mut gens = Vec::with_capacity(base.len() + ideal.generators.len());
    for g in base.iter().chain(ideal.generators.iter()) {
        gens.push(to_engine(f, g, perm, ord)?);
    }
    let out = engine::groebner(f, ord, ideal.nvars(), gens, base.len(), cfg.max_pairs, cfg.selection)?;
    Ok((out.basis, out.pairs_reduced))
}

impl GroebnerBasis {
    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn basis(&self) -> &[MultiPoly] {
        &self.basis
    }

    pub fn pairs_reduced(&self) -> usize {
        self.pairs_reduced
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_unit_constant()
    }

    /// Basis as an ideal in the same ring.
    pub fn as_ideal(&self) -> Ideal {
        Ideal { field: self.ideal.field, names: self.ideal.names.clone(), generators: self.basis.clone() }
    }

    pub fn normal_form(&self, p: &MultiPoly) -> Result<MultiPoly> {
        if p.field() != self.ideal.field || p.nvars() != self.ideal.nvars() {
            return Err(AlgebraError::Mismatch("polynomial outside the basis ring".into()));
        }
        let names = &self.ideal.names;
        Ok(match &self.internal {
            Internal::Prime(f, b) => {
                let q = to_engine(f, p, &self.perm, self.engine_order)?;
                let refs: Vec<&Poly<u32>> = b.iter().collect();
                let r = engine::normal_form(f, self.engine_order, q, &refs);
                from_engine(f, &r, &self.perm, self.ideal.field, names)
            }
            Internal::Rational(b) => {
                let f = RationalCoeffs;
                let q = to_engine(&f, p, &self.perm, self.engine_order)?;
                let refs: Vec<&Poly<Rat>> = b.iter().collect();
                let r = engine::normal_form(&f, self.engine_order, q, &refs);
                from_engine(&f, &r, &self.perm, self.ideal.field, names)
            }
        })
    }

    pub fn contains(&self, p: &MultiPoly) -> Result<bool> {
        if self.is_unit() {
            return Ok(true);
        }
        Ok(self.normal_form(p)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Leading exponent of each basis element under the basis order.
    pub fn leading_exponents(&self) -> Vec<Exponent> {
        let n = self.ideal.nvars();
        let lead = |m: &Mono| {
            let mut e = Exponent::from_elem(0, n);
            for (k, &v) in self.perm.iter().enumerate() {
                e[v] = m.e[k] as u32;
            }
            e
        };
        match &self.internal {
            Internal::Prime(_, b) => b.iter().map(|p| lead(&p[0].0)).collect(),
            Internal::Rational(b) => b.iter().map(|p| lead(&p[0].0)).collect(),
        }
    }

    /// Every S-polynomial of basis pairs reduces to zero (definitional self-check).
    pub fn verify(&self) -> Result<bool> {
        fn check<F: Coeffs>(f: &F, ord: EngineOrder, b: &[Poly<F::C>]) -> bool {
            let refs: Vec<&Poly<F::C>> = b.iter().collect();
            for i in 0..b.len() {
                for j in i + 1..b.len() {
                    let l = b[i][0].0.lcm(&b[j][0].0);
                    let ma = l.div(&b[i][0].0);
                    let mb = l.div(&b[j][0].0);
                    let ci = f.inv(&b[i][0].1);
                    let cj = f.inv(&b[j][0].1);
                    let ta: Poly<F::C> = b[i].iter().map(|(m, c)| (m.mul(&ma), f.mul(c, &ci))).collect();
                    let s = engine::sub_mul(f, ord, &ta, &cj, &mb, &b[j]);
                    if !engine::normal_form(f, ord, s, &refs).is_empty() {
                        return false;
                    }
                }
            }
            true
        }
        Ok(match &self.internal {
            Internal::Prime(f, b) => check(f, self.engine_order, b),
            Internal::Rational(b) => check(&RationalCoeffs, self.engine_order, b),
        })
    }
}

/// Reduced Gröbner basis under the default budget.
pub fn buchberger(ideal: &Ideal, order: &MonomialOrder) -> Result<GroebnerBasis> {
    buchberger_with(ideal, order, &GbConfig::default())
}

pub fn buchberger_with(ideal: &Ideal, order: &MonomialOrder, cfg: &GbConfig) -> Result<GroebnerBasis> {
    extend_basis(None, ideal, order, cfg)
}

/// Gröbner basis of `base + extra`, reusing a basis already computed for `base` under the same order.
pub fn extend_basis(base: Option<&GroebnerBasis>, extra: &Ideal, order: &MonomialOrder, cfg: &GbConfig) -> Result<GroebnerBasis> {
    let n = extra.nvars();
    let (perm, ord) = order.layout(n)?;
    let base_polys: Vec<MultiPoly> = match base {
        Some(b) => {
            if &b.order != order {
                return Err(AlgebraError::Mismatch("base basis uses a different order".into()));
            }
            if b.is_unit() {
                return Ok(b.clone());
            }
            b.basis.clone()
        }
        None => Vec::new(),
    };
    let mut all = Ideal { field: extra.field, names: extra.names.clone(), generators: base_polys.clone() };
    all.generators.extend(extra.generators.iter().cloned());
    let (internal, count) = match extra.field.characteristic() {
        0 => {
            let f = RationalCoeffs;
            let (b, c) = run_engine(&f, extra, &base_polys, &perm, ord, cfg)?;
            (Internal::Rational(b), c)
        }
        p => {
            let f = PrimeCoeffs { p };
            let (b, c) = run_engine(&f, extra, &base_polys, &perm, ord, cfg)?;
            (Internal::Prime(f, b), c)
        }
    };
    let basis = match &internal {
        Internal::Prime(f, b) => b.iter().map(|p| from_engine(f, p, &perm, extra.field, &extra.names)).collect(),
        Internal::Rational(b) => b.iter().map(|p| from_engine(&RationalCoeffs, p, &perm, extra.field, &extra.names)).collect(),
    };
    Ok(GroebnerBasis { ideal: all, order: order.clone(), basis, perm, engine_order: ord, internal, pairs_reduced: count })
}

pub fn ideal_membership(f: &MultiPoly, gb: &GroebnerBasis) -> Result<bool> {
    gb.contains(f)
}

/// True iff 1 lies in the ideal.
pub fn is_unit_ideal(ideal: &Ideal, cfg: &GbConfig) -> Result<bool> {
    if ideal.generators.iter().any(|g| g.is_unit_constant()) {
        return Ok(true);
    }
    if ideal.generators.is_empty() {
        return Ok(false);
    }
    Ok(buchberger_with(ideal, &MonomialOrder::DegRevLex, cfg)?.is_unit())
}

/// Elimination ideal `I ∩ K[kept]`, returned in the ring of the kept variables (original order).
pub fn eliminate(ideal: &Ideal, drop: &[usize], cfg: &GbConfig) -> Result<Ideal> {
    let n = ideal.nvars();
    let drop_set: std::collections::BTreeSet<usize> = drop.iter().copied().collect();
    if drop_set.len() >= n {
        return Err(AlgebraError::Invalid("cannot eliminate every variable".into()));
    }
    let kept: Vec<usize> = (0..n).filter(|v| !drop_set.contains(v)).collect();
    let kept_names = var_names(&kept.iter().map(|&v| ideal.names[v].clone()).collect::<Vec<_>>());
    if ideal.generators.is_empty() {
        return Ok(Ideal::zero(ideal.field, kept_names));
    }
    let order = if drop_set.is_empty() {
        MonomialOrder::DegRevLex
    } else {
        MonomialOrder::Block { eliminated: drop_set.iter().copied().collect() }
    };
    let gb = buchberger_with(ideal, &order, cfg)?;
    let mut gens = Vec::new();
    for g in gb.basis() {
        if g.support().iter().all(|v| !drop_set.contains(v)) {
            let images: Vec<MultiPoly> = (0..n)
                .map(|v| match kept.iter().position(|&k| k == v) {
                    Some(p) => MultiPoly::var(ideal.field, kept_names.clone(), p),
                    None => MultiPoly::zero(ideal.field, kept_names.clone()),
                })
                .collect();
            gens.push(g.map_vars(&images)?);
        }
    }
    Ideal::new(ideal.field, kept_names, gens)
}

/// Adds one fresh variable `name` at the end of the ring.
pub(crate) fn extend_ring(ideal: &Ideal, name: &str) -> (Ideal, VarNames) {
    let n = ideal.nvars();
    let mut names: Vec<String> = ideal.names.to_vec();
    let mut fresh = name.to_string();
    while names.contains(&fresh) {
        fresh.push('_');
    }
    names.push(fresh);
    let names = var_names(&names);
    let map: Vec<usize> = (0..n).collect();
    (ideal.embed(names.clone(), &map), names)
}

/// `f ∈ rad(I)` via the Rabinowitsch trick: `1 ∈ I + ⟨t·f − 1⟩`.
pub fn radical_membership(f: &MultiPoly, ideal: &Ideal, cfg: &GbConfig) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    let n = ideal.nvars();
    let (ext, names) = extend_ring(ideal, "t");
    let map: Vec<usize> = (0..n).collect();
    let fe = f.embed(names.clone(), &map);
    let t = MultiPoly::var(ideal.field, names.clone(), n);
    let rab = t.mul(&fe).sub(&MultiPoly::one(ideal.field, names));
    is_unit_ideal(&ext.with_generators(&[rab])?, cfg)
}

/// Repeated `f ∈ rad(I)` tests against one ideal. The basis of `I` in the ring extended by
/// the Rabinowitsch variable is computed once and extended per test.
#[derive(Clone, Debug)]
pub struct RadicalTester {
    base: GroebnerBasis,
    names: VarNames,
    nvars: usize,
    cfg: GbConfig,
}

impl RadicalTester {
    pub fn new(ideal: &Ideal, cfg: &GbConfig) -> Result<RadicalTester> {
        let (ext, names) = extend_ring(ideal, "t");
        let base = buchberger_with(&ext, &MonomialOrder::DegRevLex, cfg)?;
        Ok(RadicalTester { base, names, nvars: ideal.nvars(), cfg: *cfg })
    }

    /// True iff `V(I)` is empty.
    pub fn is_empty(&self) -> bool {
        self.base.is_unit()
    }

    pub fn contains(&self, f: &MultiPoly) -> Result<bool> {
        if f.is_zero() || self.base.is_unit() {
            return Ok(true);
        }
        let map: Vec<usize> = (0..self.nvars).collect();
        let fe = f.embed(self.names.clone(), &map);
        if self.base.contains(&fe)? {
            return Ok(true);
        }
        let t = MultiPoly::var(f.field(), self.names.clone(), self.nvars);
        let rab = t.mul(&fe).sub(&MultiPoly::one(f.field(), self.names.clone()));
        let extra = Ideal::new(f.field(), self.names.clone(), vec![rab])?;
        Ok(extend_basis(Some(&self.base), &extra, &MonomialOrder::DegRevLex, &self.cfg)?.is_unit())
    }
}

/// The ideal `I_U ∩ K[x]` (that is `I : U^∞`) as a membership oracle, via a basis of
/// `I + ⟨t·U − 1⟩` in the ring extended by `t`.
#[derive(Clone, Debug)]
pub struct LocalizedIdeal {
    basis: GroebnerBasis,
    names: VarNames,
    nvars: usize,
}

impl LocalizedIdeal {
    pub fn new(ideal: &Ideal, unit: &MultiPoly, cfg: &GbConfig) -> Result<LocalizedIdeal> {
        let n = ideal.nvars();
        let (ext, names) = extend_ring(ideal, "t");
        let map: Vec<usize> = (0..n).collect();
        let ue = unit.embed(names.clone(), &map);
        let t = MultiPoly::var(ideal.field, names.clone(), n);
        let rab = t.mul(&ue).sub(&MultiPoly::one(ideal.field, names.clone()));
        let basis = buchberger_with(&ext.with_generators(&[rab])?, &MonomialOrder::DegRevLex, cfg)?;
        Ok(LocalizedIdeal { basis, names, nvars: n })
    }

    pub fn is_unit(&self) -> bool {
        self.basis.is_unit()
    }

    pub fn contains(&self, f: &MultiPoly) -> Result<bool> {
        let map: Vec<usize> = (0..self.nvars).collect();
        self.basis.contains(&f.embed(self.names.clone(), &map))
    }
}

/// Saturation `I : f^∞`, via elimination of an inverse variable.
pub fn saturate(ideal: &Ideal, f: &MultiPoly, cfg: &GbConfig) -> Result<Ideal> {
    let n = ideal.nvars();
    let (ext, names) = extend_ring(ideal, "t");
    let map: Vec<usize> = (0..n).collect();
    let fe = f.embed(names.clone(), &map);
    let t = MultiPoly::var(ideal.field, names.clone(), n);
    let rab = t.mul(&fe).sub(&MultiPoly::one(ideal.field, names));
    let e = eliminate(&ext.with_generators(&[rab])?, &[n], cfg)?;
    Ideal::new(ideal.field, ideal.names.clone(), e.generators.iter().map(|g| g.with_names(ideal.names.clone())).collect())
}

/// Intersection `I ∩ J = (t·I + (1 − t)·J) ∩ K[x]`.
pub fn intersect(a: &Ideal, b: &Ideal, cfg: &GbConfig) -> Result<Ideal> {
    let n = a.nvars();
    let (ea, names) = extend_ring(a, "t");
    let map: Vec<usize> = (0..n).collect();
    let eb = b.embed(names.clone(), &map);
    let t = MultiPoly::var(a.field, names.clone(), n);
    let one_minus_t = MultiPoly::one(a.field, names.clone()).sub(&t);
    let mut gens: Vec<MultiPoly> = ea.generators.iter().map(|g| g.mul(&t)).collect();
    gens.extend(eb.generators.iter().map(|g| g.mul(&one_minus_t)));
    let e = eliminate(&Ideal::new(a.field, names, gens)?, &[n], cfg)?;
    Ideal::new(a.field, a.names.clone(), e.generators.iter().map(|g| g.with_names(a.names.clone())).collect())
}

/// Equality of ideals via reduced degrevlex bases.
pub fn ideals_equal(a: &Ideal, b: &Ideal, cfg: &GbConfig) -> Result<bool> {
    let ga = buchberger_with(a, &MonomialOrder::DegRevLex, cfg)?;
    let gb = buchberger_with(b, &MonomialOrder::DegRevLex, cfg)?;
    Ok(ga.basis() == gb.basis())
}

/// Krull dimension of the quotient ring, or `Empty` for the unit ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dimension {
    Empty,
    Dim(usize),
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Empty => write!(f, "empty"),
            Dimension::Dim(d) => write!(f, "{d}"),
        }
    }
}

pub fn ideal_dimension(ideal: &Ideal, cfg: &GbConfig) -> Result<Dimension> {
    if ideal.generators.is_empty() {
        return Ok(Dimension::Dim(ideal.nvars()));
    }
    let gb = buchberger_with(ideal, &MonomialOrder::DegRevLex, cfg)?;
    Ok(dimension_of_basis(&gb))
}

/// Maximal size of a variable set independent modulo the leading-term ideal.
pub fn dimension_of_basis(gb: &GroebnerBasis) -> Dimension {
    if gb.is_unit() {
        return Dimension::Empty;
    }
    let n = gb.ideal.nvars();
    let supports: Vec<Vec<bool>> =
        gb.leading_exponents().iter().map(|e| e.iter().map(|&k| k > 0).collect()).collect();
    let mut best = 0usize;
    let mut chosen = vec![false; n];
    fn independent(supports: &[Vec<bool>], chosen: &[bool]) -> bool {
        supports.iter().all(|s| s.iter().zip(chosen).any(|(&inside, &c)| inside && !c))
    }
    fn search(i: usize, count: usize, n: usize, supports: &[Vec<bool>], chosen: &mut Vec<bool>, best: &mut usize) {
        if count + (n - i) <= *best {
            return;
        }
        if i == n {
            *best = count;
            return;
        }
        chosen[i] = true;
        if independent(supports, chosen) {
            search(i + 1, count + 1, n, supports, chosen, best);
        }
        chosen[i] = false;
        search(i + 1, count, n, supports, chosen, best);
    }
    search(0, 0, n, &supports, &mut chosen, &mut best);
    Dimension::Dim(best)
}

/// Generators of `I` that are not already implied by earlier ones (greedy, in order).
pub fn prune_generators(ideal: &Ideal, cfg: &GbConfig) -> Result<Vec<MultiPoly>> {
    let mut kept: Vec<MultiPoly> = Vec::new();
    let mut gb: Option<GroebnerBasis> = None;
    for g in ideal.generators() {
        if let Some(b) = &gb {
            if b.contains(g)? {
                continue;
            }
        }
        kept.push(g.clone());
        let part = Ideal::new(ideal.field, ideal.names.clone(), vec![g.clone()])?;
        gb = Some(extend_basis(gb.as_ref(), &part, &MonomialOrder::DegRevLex, cfg)?);
    }
    Ok(kept)
}

/// Names of variables in a ring, keyed by index (for reports).
pub fn variable_map(names: &VarNames) -> BTreeMap<usize, String> {
    names.iter().cloned().enumerate().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;

    fn a3_raw(field: FieldSpec) -> (PolyRing, Ideal) {
        let r = PolyRing::new(field, &["x1", "x2", "x3", "y1", "y2", "y3"]);
        let gens = vec![r.p("x1*y1 - x2 - 1"), r.p("x2*y2 - x3 - x1"), r.p("x3*y3 - 1 - x2")];
        (r.clone(), Ideal::new(field, r.names.clone(), gens).unwrap())
    }

    #[test]
    fn single_monomial_lex() {
        let r = PolyRing::new(FieldSpec::rationals(), &["x", "y"]);
        let i = Ideal::new(r.field, r.names.clone(), vec![r.p("x")]).unwrap();
        let gb = buchberger(&i, &MonomialOrder::Lex).unwrap();
        assert_eq!(gb.basis(), &[r.p("x")]);
    }

    #[test]
    fn exchange_generators_already_a_basis() {
        let (_, i) = a3_raw(FieldSpec::rationals());
        let order = MonomialOrder::Block { eliminated: vec![3, 4, 5] };
        let gb = buchberger(&i, &order).unwrap();
        assert_eq!(gb.basis().len(), 3);
        for g in i.generators() {
            assert!(gb.basis().contains(g));
        }
        assert!(gb.verify().unwrap());
    }

    #[test]
    fn hand_run_basis() {
        let r = PolyRing::new(FieldSpec::rationals(), &["x", "y"]);
        let i = Ideal::new(r.field, r.names.clone(), vec![r.p("x^2"), r.p("x*y + y^2")]).unwrap();
        let gb = buchberger(&i, &MonomialOrder::DegRevLex).unwrap();
        assert_eq!(gb.basis(), &[r.p("x*y + y^2"), r.p("x^2"), r.p("y^3")]);
    }

    #[test]
    fn membership_examples() {
        let (r, i) = a3_raw(FieldSpec::rationals());
        let gb = buchberger(&i, &MonomialOrder::DegRevLex).unwrap();
        assert!(gb.contains(&r.p("x2 - (x1*y1 - 1)")).unwrap());
        assert!(gb.contains(&r.zero()).unwrap());
        let s = PolyRing::new(FieldSpec::rationals(), &["x"]);
        let j = Ideal::new(s.field, s.names.clone(), vec![s.p("x"), s.p("x + 1")]).unwrap();
        assert!(buchberger(&j, &MonomialOrder::Lex).unwrap().contains(&s.one()).unwrap());
    }

    #[test]
    fn elimination_examples() {
        let (_, i) = a3_raw(FieldSpec::rationals());
        let e = eliminate(&i, &[1, 2], &GbConfig::default()).unwrap();
        let r = PolyRing::new(FieldSpec::rationals(), &["x1", "y1", "y2", "y3"]);
        assert_eq!(e.generators().len(), 1);
        let expect = r.p("x1*y1*y2*y3 - y2*y3 - x1*y3 - x1*y1");
        let g = &e.generators()[0];
        assert!(g == &expect || g == &expect.neg());

        let t = PolyRing::new(FieldSpec::rationals(), &["t", "x", "y"]);
        let j = Ideal::new(t.field, t.names.clone(), vec![t.p("t*x - 1"), t.p("t*y")]).unwrap();
        let e = eliminate(&j, &[0], &GbConfig::default()).unwrap();
        let xy = PolyRing::new(FieldSpec::rationals(), &["x", "y"]);
        assert_eq!(e.generators(), &[xy.p("y")]);
    }

    #[test]
    fn radical_membership_examples() {
        let r = PolyRing::new(FieldSpec::rationals(), &["x", "y"]);
        let i = Ideal::new(r.field, r.names.clone(), vec![r.p("x^2")]).unwrap();
        assert!(radical_membership(&r.p("x"), &i, &GbConfig::default()).unwrap());
        assert!(!radical_membership(&r.p("y"), &i, &GbConfig::default()).unwrap());
    }

    #[test]
    fn dimension_examples() {
        let r = PolyRing::new(FieldSpec::rationals(), &["z1", "z2", "z3", "z4"]);
        let a3 = Ideal::new(r.field, r.names.clone(), vec![r.p("z1*z2*z3*z4 - z1*z2 - z1*z4 - z3*z4")]).unwrap();
        assert_eq!(ideal_dimension(&a3, &GbConfig::default()).unwrap(), Dimension::Dim(3));
        let unit = Ideal::unit(r.field, r.names.clone());
        assert_eq!(ideal_dimension(&unit, &GbConfig::default()).unwrap(), Dimension::Empty);
    }

    #[test]
    fn budget_is_reported() {
        let (_, i) = a3_raw(FieldSpec::prime(5));
        let err = buchberger_with(&i, &MonomialOrder::Lex, &GbConfig::with_max_pairs(0));
        match err {
            Err(AlgebraError::Budget(stats)) => assert_eq!(stats.pairs_reduced, 0),
            Ok(gb) => assert!(gb.pairs_reduced() == 0),
            Err(e) => panic!("{e}"),
        }
    }

    #[test]
    fn saturation_and_intersection() {
        let r = PolyRing::new(FieldSpec::rationals(), &["x", "y"]);
        let cfg = GbConfig::default();
        let i = Ideal::new(r.field, r.names.clone(), vec![r.p("x^2*y"), r.p("x*y^2")]).unwrap();
        let s = saturate(&i, &r.p("x"), &cfg).unwrap();
        assert!(ideals_equal(&s, &Ideal::new(r.field, r.names.clone(), vec![r.p("y")]).unwrap(), &cfg).unwrap());
        let a = Ideal::new(r.field, r.names.clone(), vec![r.p("x")]).unwrap();
        let b = Ideal::new(r.field, r.names.clone(), vec![r.p("y")]).unwrap();
        let c = intersect(&a, &b, &cfg).unwrap();
        assert!(ideals_equal(&c, &Ideal::new(r.field, r.names.clone(), vec![r.p("x*y")]).unwrap(), &cfg).unwrap());
    }
}
