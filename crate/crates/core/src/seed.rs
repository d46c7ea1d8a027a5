//! Seeds, seed mutation through exchange relations, exchange-graph exploration, Laurent
//! checks and lower-bound presentations.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::field::FieldSpec;
use crate::groebner::{buchberger_with, GbConfig, Ideal, MonomialOrder};
use crate::poly::{indexed_names, var_names, Exponent, MultiPoly, VarNames};
use crate::quiver::{ExchangeMatrix, MatrixJson};

/// `numerator / (x^monomial · ∏ factors)` in the initial cluster variables. The monomial
/// part has coefficient 1 and every factor is monic and non-monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    numerator: MultiPoly,
    monomial: Exponent,
    factors: Vec<MultiPoly>,
}

impl RationalFunction {
    pub fn from_poly(p: MultiPoly) -> Self {
        let n = p.nvars();
        RationalFunction { numerator: p, monomial: Exponent::from_elem(0, n), factors: Vec::new() }
    }

    /// `num / den` reduced; `den` must be nonzero.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(AlgebraError::Invalid("division by zero".into()));
        }
        let n = num.nvars();
        let mut r = RationalFunction { numerator: num, monomial: Exponent::from_elem(0, n), factors: Vec::new() };
        r.divide_by(&den);
        r.reduce();
        Ok(r)
    }

    pub fn field(&self) -> FieldSpec {
        self.numerator.field()
    }

    pub fn names(&self) -> &VarNames {
        self.numerator.names()
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> MultiPoly {
        let f = self.field();
        let names = self.names().clone();
        let mono = MultiPoly::monomial(f, names.clone(), self.monomial.clone(), f.one());
        self.factors.iter().fold(mono, |acc, p| acc.mul(p))
    }

    /// Denominator is a monomial with coefficient 1.
    pub fn is_laurent(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Multiplies the denominator by `den`, splitting off its monomial content and scalar.
    fn divide_by(&mut self, den: &MultiPoly) {
        let content = den.monomial_content();
        let rest = den.div_monomial(&content).expect("content divides");
        for i in 0..content.len() {
            self.monomial[i] += content[i];
        }
        if rest.is_constant() {
            let c = rest.constant_term();
            self.numerator = self.numerator.scale(&c.inv().expect("nonzero constant"));
        } else {
            let (_, lc) = rest.leading_term_degrevlex().expect("nonzero");
            let lc = lc.clone();
            self.numerator = self.numerator.scale(&lc.inv().expect("nonzero"));
            self.factors.push(rest.monic());
        }
    }

    /// Cancels monomial content and any stored factor that divides the numerator exactly.
    fn reduce(&mut self) {
        if self.numerator.is_zero() {
            let n = self.monomial.len();
            self.monomial = Exponent::from_elem(0, n);
            self.factors.clear();
            return;
        }
        let mut k = 0;
        while k < self.factors.len() {
            match self.numerator.exact_div(&self.factors[k]) {
                Ok(Some(q)) => {
                    self.numerator = q;
                    self.factors.remove(k);
                }
                _ => k += 1,
            }
        }
        let content = self.numerator.monomial_content();
        let mut common = content.clone();
        for i in 0..common.len() {
            common[i] = common[i].min(self.monomial[i]);
            self.monomial[i] -= common[i];
        }
        self.numerator = self.numerator.div_monomial(&common).expect("common content divides");
        self.factors.sort_by_key(|f| f.to_string());
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        let mut monomial = self.monomial.clone();
        for i in 0..monomial.len() {
            monomial[i] += other.monomial[i];
        }
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        let mut r = RationalFunction { numerator: self.numerator.mul(&other.numerator), monomial, factors };
        r.reduce();
        r
    }

    pub fn pow(&self, e: u32) -> RationalFunction {
        let mut acc = RationalFunction::from_poly(MultiPoly::one(self.field(), self.names().clone()));
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn add(&self, other: &RationalFunction) -> RationalFunction {
        // Common denominator: lcm of monomials, multiset union of factors.
        let n = self.monomial.len();
        let mut lcm = Exponent::from_elem(0, n);
        for i in 0..n {
            lcm[i] = self.monomial[i].max(other.monomial[i]);
        }
        let mut union = self.factors.clone();
        let mut missing_in_self: Vec<MultiPoly> = Vec::new();
        let mut remaining = self.factors.clone();
        for f in &other.factors {
            if let Some(pos) = remaining.iter().position(|g| g == f) {
                remaining.remove(pos);
            } else {
                union.push(f.clone());
                missing_in_self.push(f.clone());
            }
        }
        let missing_in_other = remaining;
        let scale = |r: &RationalFunction, missing: &[MultiPoly]| {
            let mut shift = Exponent::from_elem(0, n);
            for i in 0..n {
                shift[i] = lcm[i] - r.monomial[i];
            }
            missing.iter().fold(r.numerator.mul_monomial(&shift), |acc, f| acc.mul(f))
        };
        let numerator = scale(self, &missing_in_self).add(&scale(other, &missing_in_other));
        let mut r = RationalFunction { numerator, monomial: lcm, factors: union };
        r.reduce();
        r
    }

    /// `self / other`; fails when `other` is zero.
    pub fn div(&self, other: &RationalFunction) -> Result<RationalFunction> {
        if other.is_zero() {
            return Err(AlgebraError::Invalid("division by zero".into()));
        }
        let mut r = self.clone();
        // Multiply by other's denominator, divide by its numerator.
        for i in 0..r.monomial.len() {
            let take = r.monomial[i].min(other.monomial[i]);
            r.monomial[i] -= take;
            if other.monomial[i] > take {
                let mut e = Exponent::from_elem(0, r.monomial.len());
                e[i] = other.monomial[i] - take;
                r.numerator = r.numerator.mul_monomial(&e);
            }
        }
        for f in &other.factors {
            if let Some(pos) = r.factors.iter().position(|g| g == f) {
                r.factors.remove(pos);
            } else {
                r.numerator = r.numerator.mul(f);
            }
        }
        r.divide_by(&other.numerator);
        r.reduce();
        Ok(r)
    }

    /// Canonical text: `num`, or `(num)/(den)` with parentheses only around sums or products.
    pub fn canonical_text(&self) -> String {
        self.to_string()
    }

    pub fn parse(field: FieldSpec, names: VarNames, text: &str) -> Result<RationalFunction> {
        let mut depth = 0i32;
        let mut split = None;
        for (i, ch) in text.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '/' if depth == 0 => split = Some(i),
                _ => {}
            }
        }
        if let Some(i) = split {
            let num = MultiPoly::parse(field, names.clone(), &text[..i])?;
            let den = MultiPoly::parse(field, names.clone(), &text[i + 1..])?;
            if !den.is_constant() {
                return RationalFunction::new(num, den);
            }
        }
        Ok(RationalFunction::from_poly(MultiPoly::parse(field, names, text)?))
    }
}

fn wrap(s: String, needs: bool) -> String {
    if needs {
        format!("({s})")
    } else {
        s
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den = self.denominator();
        if den.is_unit_constant() {
            return write!(f, "{}", self.numerator);
        }
        let num_text = self.numerator.to_string();
        let den_text = den.to_string();
        let num_wrap = self.numerator.nterms() > 1 || num_text.starts_with('-');
        let den_wrap = den.nterms() > 1 || den_text.contains('*');
        write!(f, "{}/{}", wrap(num_text, num_wrap), wrap(den_text, den_wrap))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    cluster: Vec<RationalFunction>,
    matrix: ExchangeMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedJson {
    pub cluster: Vec<String>,
    pub matrix: MatrixJson,
}

/// Names `x1..xn` of the initial cluster.
pub fn initial_names(n: usize) -> VarNames {
    var_names(&indexed_names("x", n))
}

impl Seed {
    /// The initial seed `(x_1..x_n, B)`.
    pub fn initial(field: FieldSpec, matrix: ExchangeMatrix) -> Seed {
        let n = matrix.rank();
        let names = initial_names(n);
        let cluster = (0..n).map(|i| RationalFunction::from_poly(MultiPoly::var(field, names.clone(), i))).collect();
        Seed { cluster, matrix }
    }

    pub fn new(cluster: Vec<RationalFunction>, matrix: ExchangeMatrix) -> Result<Seed> {
        if cluster.len() != matrix.rank() {
            return Err(AlgebraError::Mismatch("cluster size differs from matrix rank".into()));
        }
        let texts: BTreeSet<String> = cluster.iter().map(|c| c.to_string()).collect();
        if texts.len() != cluster.len() {
            return Err(AlgebraError::Invalid("cluster entries must be distinct".into()));
        }
        Ok(Seed { cluster, matrix })
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn field(&self) -> FieldSpec {
        self.cluster[0].field()
    }

    pub fn cluster(&self) -> &[RationalFunction] {
        &self.cluster
    }

    pub fn matrix(&self) -> &ExchangeMatrix {
        &self.matrix
    }

    /// Mutation at `k`: exchange relation for the cluster, matrix mutation for `B`.
    pub fn mutate(&self, k: usize) -> Result<Seed> {
        let n = self.rank();
        if k >= n {
            return Err(AlgebraError::IndexOutOfRange { index: k, size: n });
        }
        let field = self.field();
        let names = self.cluster[0].names().clone();
        let one = RationalFunction::from_poly(MultiPoly::one(field, names));
        let mut pos = one.clone();
        let mut neg = one;
        for j in 0..n {
            let b = self.matrix.get(j, k);
            if b > 0 {
                pos = pos.mul(&self.cluster[j].pow(b as u32));
            } else if b < 0 {
                neg = neg.mul(&self.cluster[j].pow((-b) as u32));
            }
        }
        let new = pos.add(&neg).div(&self.cluster[k])?;
        let mut cluster = self.cluster.clone();
        cluster[k] = new;
        Ok(Seed { cluster, matrix: self.matrix.mutate(k)? })
    }

    pub fn mutate_sequence(&self, seq: &[usize]) -> Result<Seed> {
        let mut s = self.clone();
        for &k in seq {
            s = s.mutate(k)?;
        }
        Ok(s)
    }

    /// Encoding invariant under simultaneous relabelling: entries sorted by canonical text,
    /// matrix permuted accordingly.
    pub fn canonical_encoding(&self) -> String {
        let texts: Vec<String> = self.cluster.iter().map(|c| c.to_string()).collect();
        let mut perm: Vec<usize> = (0..self.rank()).collect();
        perm.sort_by(|&a, &b| texts[a].cmp(&texts[b]));
        let m = self.matrix.permuted(&perm);
        let sorted: Vec<&str> = perm.iter().map(|&i| texts[i].as_str()).collect();
        format!("{}|{}", sorted.join(";"), m)
    }

    /// 64-bit FNV-1a hash of the canonical encoding, rendered in hex.
    pub fn canonical_hash(&self) -> String {
        let mut h: u64 = 0xcbf29ce484222325;
        for b in self.canonical_encoding().bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        format!("{h:016x}")
    }

    pub fn to_json(&self) -> SeedJson {
        SeedJson { cluster: self.cluster.iter().map(|c| c.to_string()).collect(), matrix: self.matrix.to_json() }
    }

    pub fn from_json(field: FieldSpec, j: &SeedJson) -> Result<Seed> {
        let matrix = ExchangeMatrix::from_json(&j.matrix)?;
        let names = initial_names(matrix.rank());
        let cluster =
            j.cluster.iter().map(|t| RationalFunction::parse(field, names.clone(), t)).collect::<Result<Vec<_>>>()?;
        Seed::new(cluster, matrix)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExplorationReport {
    pub seeds: usize,
    pub cluster_variables: BTreeSet<String>,
    pub complete: bool,
    /// Cluster variables whose reduced denominator is not a monomial.
    pub non_laurent: Vec<String>,
    /// Canonical encodings in breadth-first discovery order.
    pub encodings: Vec<String>,
}

pub const DEFAULT_EXPLORATION_BUDGET: usize = 50_000;

/// Breadth-first exploration of the exchange graph up to relabelling.
pub fn explore_exchange_graph(seed: &Seed, max_seeds: usize) -> Result<ExplorationReport> {
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut encodings = Vec::new();
    let mut vars = BTreeSet::new();
    let mut non_laurent = BTreeSet::new();
    let mut queue = VecDeque::new();
    let enc = seed.canonical_encoding();
    index.insert(enc.clone(), 0);
    encodings.push(enc);
    queue.push_back(seed.clone());
    let mut complete = true;
    for c in seed.cluster() {
        vars.insert(c.to_string());
    }
    'outer: while let Some(s) = queue.pop_front() {
        for k in 0..s.rank() {
            let next = s.mutate(k)?;
            let enc = next.canonical_encoding();
            if index.contains_key(&enc) {
                continue;
            }
            if encodings.len() >= max_seeds {
                complete = false;
                break 'outer;
            }
            let c = &next.cluster()[k];
            vars.insert(c.to_string());
            if !c.is_laurent() {
                non_laurent.insert(c.to_string());
            }
            index.insert(enc.clone(), encodings.len());
            encodings.push(enc);
            queue.push_back(next);
        }
    }
    Ok(ExplorationReport {
        seeds: encodings.len(),
        cluster_variables: vars,
        complete,
        non_laurent: non_laurent.into_iter().collect(),
        encodings,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LaurentWitness {
    /// Number of mutations applied when the failure appeared.
    pub step: usize,
    /// 1-based cluster position.
    pub position: usize,
    pub entry: String,
}

/// Applies the sequence and reports the first cluster entry with a non-monomial denominator.
pub fn check_laurent(seed: &Seed, sequence: &[usize]) -> Result<Option<LaurentWitness>> {
    let mut s = seed.clone();
    for (step, &k) in sequence.iter().enumerate() {
        s = s.mutate(k)?;
        for (i, c) in s.cluster().iter().enumerate() {
            if !c.is_laurent() {
                return Ok(Some(LaurentWitness { step: step + 1, position: i + 1, entry: c.to_string() }));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug)]
pub struct LowerBoundPresentation {
    pub names: VarNames,
    pub generators: Vec<MultiPoly>,
    pub acyclic: bool,
}

impl LowerBoundPresentation {
    /// Whether the exchange generators already form a Gröbner basis for an order in which the
    /// `y` variables are much larger than the `x` variables.
    pub fn is_groebner_basis(&self, cfg: &GbConfig) -> Result<bool> {
        let Some(first) = self.generators.first() else { return Ok(true) };
        let field = first.field();
        let n = self.names.len() / 2;
        let order = MonomialOrder::Block { eliminated: (n..2 * n).collect() };
        let ideal = Ideal::new(field, self.names.clone(), self.generators.clone())?;
        let gb = buchberger_with(&ideal, &order, cfg)?;
        let mut leads = Vec::new();
        for g in &self.generators {
            let single = Ideal::new(field, self.names.clone(), vec![g.clone()])?;
            leads.extend(buchberger_with(&single, &order, cfg)?.leading_exponents());
        }
        let divides = |a: &Exponent, b: &Exponent| a.iter().zip(b.iter()).all(|(x, y)| x <= y);
        Ok(gb.leading_exponents().iter().all(|e| leads.iter().any(|l| divides(l, e))))
    }
}

/// The exchange polynomials `x_k·y_k − ∏_{b_jk>0} x_j^{b_jk} − ∏_{b_jk<0} x_j^{−b_jk}` in
/// `K[x_1..x_n, y_1..y_n]`.
pub fn lower_bound_presentation(field: FieldSpec, matrix: &ExchangeMatrix) -> LowerBoundPresentation {
    let n = matrix.rank();
    let mut all = indexed_names("x", n);
    all.extend(indexed_names("y", n));
    let names = var_names(&all);
    let mut generators = Vec::with_capacity(n);
    for k in 0..n {
        let mut pos = Exponent::from_elem(0, 2 * n);
        let mut neg = Exponent::from_elem(0, 2 * n);
        for j in 0..n {
            let b = matrix.get(j, k);
            if b > 0 {
                pos[j] = b as u32;
            } else if b < 0 {
                neg[j] = (-b) as u32;
            }
        }
        let xy = MultiPoly::var(field, names.clone(), k).mul(&MultiPoly::var(field, names.clone(), n + k));
        let g = xy
            .sub(&MultiPoly::monomial(field, names.clone(), pos, field.one()))
            .sub(&MultiPoly::monomial(field, names.clone(), neg, field.one()));
        generators.push(g);
    }
    LowerBoundPresentation { names, generators, acyclic: matrix.is_acyclic() }
}
