//! Sparse multivariate polynomials over a [`FieldSpec`].

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{AlgebraError, Result};
use crate::field::{FieldElem, FieldSpec};

/// Exponent vector, one entry per ring variable.
pub type Exponent = SmallVec<[u32; 8]>;

/// Shared, immutable list of variable display names.
pub type VarNames = Arc<[String]>;

pub const MAX_EXPONENT: u64 = 1 << 31;

pub fn var_names<S: AsRef<str>>(names: &[S]) -> VarNames {
    names.iter().map(|s| s.as_ref().to_string()).collect::<Vec<_>>().into()
}

/// Names `prefix1, …, prefixN`.
pub fn indexed_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn total_degree(e: &[u32]) -> u64 {
    e.iter().map(|&x| x as u64).sum()
}

/// Graded reverse lexicographic comparison of exponent vectors.
pub fn cmp_degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da = total_degree(a);
    let db = total_degree(b);
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

fn add_exponents(a: &[u32], b: &[u32]) -> Result<Exponent> {
    let mut out = Exponent::with_capacity(a.len());
    for (x, y) in a.iter().zip(b) {
        let s = *x as u64 + *y as u64;
        if s > MAX_EXPONENT {
            return Err(AlgebraError::ExponentOverflow);
        }
        out.push(s as u32);
    }
    Ok(out)
}

#[derive(Clone)]
pub struct MultiPoly {
    field: FieldSpec,
    names: VarNames,
    terms: BTreeMap<Exponent, FieldElem>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.names.len() == other.names.len() && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl std::hash::Hash for MultiPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.hash(state);
        self.terms.hash(state);
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.field, self)
    }
}

impl MultiPoly {
    pub fn zero(field: FieldSpec, names: VarNames) -> Self {
        MultiPoly { field, names, terms: BTreeMap::new() }
    }

    pub fn constant(field: FieldSpec, names: VarNames, c: FieldElem) -> Self {
        let mut p = Self::zero(field, names);
        if !c.is_zero() {
            let n = p.nvars();
            p.terms.insert(Exponent::from_elem(0, n), c);
        }
        p
    }

    pub fn from_int(field: FieldSpec, names: VarNames, c: i64) -> Self {
        Self::constant(field, names, field.from_i64(c))
    }

    pub fn one(field: FieldSpec, names: VarNames) -> Self {
        Self::from_int(field, names, 1)
    }

    pub fn var(field: FieldSpec, names: VarNames, i: usize) -> Self {
        assert!(i < names.len(), "variable index {i} out of range");
        let mut e = Exponent::from_elem(0, names.len());
        e[i] = 1;
        Self::monomial(field, names, e, field.one())
    }

    pub fn monomial(field: FieldSpec, names: VarNames, exp: Exponent, c: FieldElem) -> Self {
        assert_eq!(exp.len(), names.len());
        let mut p = Self::zero(field, names);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    /// Builds from (exponent, coefficient) pairs, summing repeated exponents.
    pub fn from_terms<I>(field: FieldSpec, names: VarNames, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, FieldElem)>,
    {
        let mut p = Self::zero(field, names);
        for (e, c) in terms {
            assert_eq!(e.len(), p.nvars());
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exponent, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = v.add(&c);
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &VarNames {
        &self.names
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &FieldElem)> {
        self.terms.iter()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &[u32]) -> FieldElem {
        self.terms.get(e).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn constant_term(&self) -> FieldElem {
        self.coefficient(&vec![0; self.nvars()])
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// Nonzero constant polynomial.
    pub fn is_unit_constant(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(|e| total_degree(e)).max()
    }

    /// Lowest total degree of a term (the multiplicity at the origin).
    pub fn order(&self) -> Option<u64> {
        self.terms.keys().map(|e| total_degree(e)).min()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    /// Indices of variables that occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&i| self.terms.keys().any(|e| e[i] > 0)).collect()
    }

    fn check_compatible(&self, other: &MultiPoly) -> Result<()> {
        if self.field != other.field {
            return Err(AlgebraError::Mismatch(format!("fields {} and {}", self.field, other.field)));
        }
        if self.nvars() != other.nvars() {
            return Err(AlgebraError::Mismatch(format!(
                "{} and {} variables",
                self.nvars(),
                other.nvars()
            )));
        }
        Ok(())
    }

    fn like(&self) -> MultiPoly {
        MultiPoly::zero(self.field, self.names.clone())
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.neg());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        let mut out = self.like();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(add_exponents(ea, eb)?, ca.mul(cb));
            }
        }
        Ok(out)
    }

    /// Panicking variants for internal use where compatibility is structural.
    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.try_add(other).expect("polynomial addition")
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.try_sub(other).expect("polynomial subtraction")
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.try_mul(other).expect("polynomial multiplication")
    }

    pub fn neg(&self) -> MultiPoly {
        let mut out = self.like();
        out.terms = self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect();
        out
    }

    pub fn scale(&self, c: &FieldElem) -> MultiPoly {
        let mut out = self.like();
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(e, v)| (e.clone(), v.mul(c))).collect();
        out
    }

    pub fn scale_int(&self, k: i64) -> MultiPoly {
        self.scale(&self.field.from_i64(k))
    }

    pub fn add_constant(&self, c: i64) -> MultiPoly {
        self.add(&MultiPoly::from_int(self.field, self.names.clone(), c))
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut result = MultiPoly::one(self.field, self.names.clone());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Multiplies by the monomial with exponent `e`.
    pub fn mul_monomial(&self, e: &[u32]) -> MultiPoly {
        let mut out = self.like();
        for (t, c) in &self.terms {
            out.terms.insert(add_exponents(t, e).expect("exponent overflow"), c.clone());
        }
        out
    }

    pub fn product<'a, I: IntoIterator<Item = &'a MultiPoly>>(
        field: FieldSpec,
        names: VarNames,
        factors: I,
    ) -> MultiPoly {
        factors.into_iter().fold(MultiPoly::one(field, names), |acc, f| acc.mul(f))
    }

    pub fn sum<'a, I: IntoIterator<Item = &'a MultiPoly>>(field: FieldSpec, names: VarNames, items: I) -> MultiPoly {
        items.into_iter().fold(MultiPoly::zero(field, names), |acc, f| acc.add(f))
    }

    /// Formal partial derivative; exponents divisible by the characteristic annihilate.
    pub fn derivative(&self, var: usize) -> Result<MultiPoly> {
        if var >= self.nvars() {
            return Err(AlgebraError::IndexOutOfRange { index: var, size: self.nvars() });
        }
        let mut out = self.like();
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let k = e[var] as i64;
            let mut ne = e.clone();
            ne[var] -= 1;
            out.add_term(ne, c.scale(k));
        }
        Ok(out)
    }

    pub fn gradient(&self) -> Vec<MultiPoly> {
        (0..self.nvars()).map(|i| self.derivative(i).unwrap()).collect()
    }

    /// Terms of total degree at most `d`.
    pub fn truncate_degree(&self, d: u64) -> MultiPoly {
        let mut out = self.like();
        out.terms = self
            .terms
            .iter()
            .filter(|(e, _)| total_degree(e) <= d)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        out
    }

    /// Terms of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u64) -> MultiPoly {
        let mut out = self.like();
        out.terms = self
            .terms
            .iter()
            .filter(|(e, _)| total_degree(e) == d)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        out
    }

    /// Ring homomorphism sending variable `i` to `images[i]`; all images share one target ring.
    pub fn map_vars(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        if images.len() != self.nvars() {
            return Err(AlgebraError::Mismatch(format!(
                "{} images for {} variables",
                images.len(),
                self.nvars()
            )));
        }
        let target = match images.first() {
            Some(p) => p.clone(),
            None => return Ok(self.clone()),
        };
        for im in images {
            if im.field != self.field {
                return Err(AlgebraError::Mismatch("field of substituted polynomial".into()));
            }
            target.check_compatible(im)?;
        }
        let mut cache: HashMap<(usize, u32), MultiPoly> = HashMap::new();
        let mut out = target.like();
        for (e, c) in &self.terms {
            let mut term = MultiPoly::constant(self.field, target.names.clone(), c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let p = cache.entry((i, k)).or_insert_with(|| images[i].pow(k)).clone();
                term = term.try_mul(&p)?;
                if term.is_zero() {
                    break;
                }
            }
            for (te, tc) in term.terms {
                out.add_term(te, tc);
            }
        }
        Ok(out)
    }

    /// Simultaneous substitution of the assigned variables, within the same ring.
    pub fn substitute(&self, assignments: &BTreeMap<usize, MultiPoly>) -> Result<MultiPoly> {
        let mut images = Vec::with_capacity(self.nvars());
        for i in 0..self.nvars() {
            match assignments.get(&i) {
                Some(p) => {
                    self.check_compatible(p)?;
                    images.push(p.clone());
                }
                None => images.push(MultiPoly::var(self.field, self.names.clone(), i)),
            }
        }
        if let Some(&bad) = assignments.keys().find(|&&k| k >= self.nvars()) {
            return Err(AlgebraError::IndexOutOfRange { index: bad, size: self.nvars() });
        }
        self.map_vars(&images)
    }

    pub fn substitute_one(&self, var: usize, value: &MultiPoly) -> Result<MultiPoly> {
        let mut m = BTreeMap::new();
        m.insert(var, value.clone());
        self.substitute(&m)
    }

    pub fn evaluate(&self, point: &[FieldElem]) -> Result<FieldElem> {
        if point.len() != self.nvars() {
            return Err(AlgebraError::Mismatch(format!("point of length {} for {} variables", point.len(), self.nvars())));
        }
        let mut acc = self.field.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&point[i].pow(k));
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Translates so that `point` moves to the origin: returns f(x + point).
    pub fn translate(&self, point: &[FieldElem]) -> Result<MultiPoly> {
        let images: Vec<MultiPoly> = (0..self.nvars())
            .map(|i| {
                MultiPoly::var(self.field, self.names.clone(), i)
                    .add(&MultiPoly::constant(self.field, self.names.clone(), point[i].clone()))
            })
            .collect();
        self.map_vars(&images)
    }

    /// Same polynomial, re-read in a ring with more variables: variable `i` goes to `index_map[i]`.
    pub fn embed(&self, names: VarNames, index_map: &[usize]) -> MultiPoly {
        assert_eq!(index_map.len(), self.nvars());
        let n = names.len();
        let mut out = MultiPoly::zero(self.field, names);
        for (e, c) in &self.terms {
            let mut ne = Exponent::from_elem(0, n);
            for (i, &k) in e.iter().enumerate() {
                ne[index_map[i]] += k;
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Same terms with different display names (same variable count).
    pub fn with_names(&self, names: VarNames) -> MultiPoly {
        assert_eq!(names.len(), self.nvars());
        MultiPoly { field: self.field, names, terms: self.terms.clone() }
    }

    /// Reinterprets integer-coefficient data over another field (coefficients must be rationals).
    pub fn change_field(&self, field: FieldSpec) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(field, self.names.clone());
        for (e, c) in &self.terms {
            let q = match c {
                FieldElem::Rational(q) => field.from_rational(q)?,
                FieldElem::Residue { .. } if c.spec() == field => c.clone(),
                FieldElem::Residue { .. } => {
                    return Err(AlgebraError::Mismatch("cannot lift residues to another field".into()))
                }
            };
            out.add_term(e.clone(), q);
        }
        Ok(out)
    }

    /// Greatest monomial dividing every term (zero vector for the zero polynomial).
    pub fn monomial_content(&self) -> Exponent {
        let n = self.nvars();
        let mut it = self.terms.keys();
        let mut g = match it.next() {
            Some(e) => e.clone(),
            None => return Exponent::from_elem(0, n),
        };
        for e in it {
            for i in 0..n {
                g[i] = g[i].min(e[i]);
            }
        }
        g
    }

    /// Divides by a monomial that divides every term.
    pub fn div_monomial(&self, m: &[u32]) -> Option<MultiPoly> {
        let mut out = self.like();
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            for i in 0..ne.len() {
                if ne[i] < m[i] {
                    return None;
                }
                ne[i] -= m[i];
            }
            out.terms.insert(ne, c.clone());
        }
        Some(out)
    }

    /// Divides out the largest power of variable `var` dividing the polynomial.
    pub fn strip_variable(&self, var: usize) -> (MultiPoly, u32) {
        let k = self.terms.keys().map(|e| e[var]).min().unwrap_or(0);
        if k == 0 {
            return (self.clone(), 0);
        }
        let mut m = vec![0u32; self.nvars()];
        m[var] = k;
        (self.div_monomial(&m).unwrap(), k)
    }

    /// Leading term with respect to graded reverse lexicographic order.
    pub fn leading_term_degrevlex(&self) -> Option<(&Exponent, &FieldElem)> {
        self.terms.iter().max_by(|a, b| cmp_degrevlex(a.0, b.0))
    }

    /// Leading term with respect to lexicographic order (first variable largest).
    pub fn leading_term_lex(&self) -> Option<(&Exponent, &FieldElem)> {
        self.terms.iter().next_back()
    }

    /// Exact division: `Some(q)` with `self = q·divisor`, or `None` when the divisor does not divide.
    pub fn exact_div(&self, divisor: &MultiPoly) -> Result<Option<MultiPoly>> {
        self.check_compatible(divisor)?;
        let (lead_e, lead_c) = match divisor.leading_term_lex() {
            Some((e, c)) => (e.clone(), c.clone()),
            None => return Err(AlgebraError::DivisionByZero),
        };
        let lead_inv = lead_c.inv()?;
        let mut rem = self.clone();
        let mut quot = self.like();
        while let Some((e, c)) = rem.leading_term_lex().map(|(e, c)| (e.clone(), c.clone())) {
            let mut qe = Exponent::with_capacity(e.len());
            for i in 0..e.len() {
                if e[i] < lead_e[i] {
                    return Ok(None);
                }
                qe.push(e[i] - lead_e[i]);
            }
            let qc = c.mul(&lead_inv);
            let step = divisor.mul_monomial(&qe).scale(&qc);
            rem = rem.sub(&step);
            quot.add_term(qe, qc);
        }
        Ok(Some(quot))
    }

    /// Makes the degrevlex leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> MultiPoly {
        match self.leading_term_degrevlex() {
            Some((_, c)) => self.scale(&c.inv().unwrap()),
            None => self.clone(),
        }
    }

    /// Terms sorted in descending degrevlex order (the canonical rendering order).
    pub fn sorted_terms(&self) -> Vec<(&Exponent, &FieldElem)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| cmp_degrevlex(b.0, a.0));
        v
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            vars: self.names.to_vec(),
            terms: self
                .sorted_terms()
                .into_iter()
                .map(|(e, c)| TermJson { exp: e.to_vec(), coeff: c.to_wire() })
                .collect(),
        }
    }

    pub fn from_json(field: FieldSpec, j: &PolyJson) -> Result<MultiPoly> {
        let names = var_names(&j.vars);
        let mut terms = Vec::new();
        for t in &j.terms {
            if t.exp.len() != names.len() {
                return Err(AlgebraError::Parse("exponent length differs from variable count".into()));
            }
            if t.exp.iter().any(|&k| k as u64 > MAX_EXPONENT) {
                return Err(AlgebraError::ExponentOverflow);
            }
            terms.push((Exponent::from_slice(&t.exp), FieldElem::from_wire(field, &t.coeff)?));
        }
        Ok(MultiPoly::from_terms(field, names, terms))
    }

    /// Parses the canonical text form (also accepts juxtaposed factors and parentheses).
    pub fn parse(field: FieldSpec, names: VarNames, text: &str) -> Result<MultiPoly> {
        Parser::new(field, names, text).parse_all()
    }

    fn fmt_monomial(&self, e: &[u32]) -> String {
        let mut parts = Vec::new();
        for (i, &k) in e.iter().enumerate() {
            match k {
                0 => {}
                1 => parts.push(self.names[i].clone()),
                _ => parts.push(format!("{}^{}", self.names[i], k)),
            }
        }
        parts.join("*")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.sorted_terms() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            let mono = self.fmt_monomial(e);
            let body = if mono.is_empty() {
                abs.to_wire()
            } else if abs.is_one() {
                mono
            } else {
                format!("{}*{}", abs.to_wire(), mono)
            };
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

struct Parser<'a> {
    field: FieldSpec,
    names: VarNames,
    chars: Vec<char>,
    pos: usize,
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn new(field: FieldSpec, names: VarNames, text: &'a str) -> Self {
        Parser { field, names, chars: text.chars().collect(), pos: 0, text }
    }

    fn err(&self, msg: &str) -> AlgebraError {
        AlgebraError::Parse(format!("{msg} at position {} in {:?}", self.pos, self.text))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn parse_all(mut self) -> Result<MultiPoly> {
        let p = self.parse_sum()?;
        if self.peek().is_some() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(p)
    }

    fn parse_sum(&mut self) -> Result<MultiPoly> {
        let mut acc = MultiPoly::zero(self.field, self.names.clone());
        let mut sign = 1i64;
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                sign = -1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.parse_product()?;
            acc = if sign > 0 { acc.add(&t) } else { acc.sub(&t) };
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some('-') => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_factor(c: char) -> bool {
        c.is_alphanumeric() || c == '(' || c == '_'
    }

    fn parse_product(&mut self) -> Result<MultiPoly> {
        let mut acc = self.parse_power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.parse_power()?;
                    acc = acc.mul(&f);
                }
                Some('/') => {
                    self.pos += 1;
                    let d = self.parse_power()?;
                    if !d.is_unit_constant() {
                        return Err(self.err("division only by nonzero constants"));
                    }
                    let inv = d.constant_term().inv()?;
                    acc = acc.scale(&inv);
                }
                Some(c) if Self::starts_factor(c) => {
                    let f = self.parse_power()?;
                    acc = acc.mul(&f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_power(&mut self) -> Result<MultiPoly> {
        let base = self.parse_atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let s: String = self.chars[start..self.pos].iter().collect();
            let e: u64 = s.parse().map_err(|_| self.err("expected exponent"))?;
            if e > MAX_EXPONENT {
                return Err(AlgebraError::ExponentOverflow);
            }
            return Ok(base.pow(e as u32));
        }
        Ok(base)
    }

    fn parse_atom(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let p = self.parse_sum()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(p)
            }
            Some('-') => {
                self.pos += 1;
                Ok(self.parse_power()?.neg())
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().collect();
                let v: num_bigint::BigInt = s.parse().map_err(|_| self.err("bad integer"))?;
                Ok(MultiPoly::constant(self.field, self.names.clone(), self.field.from_bigint(&v)))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                // Longest variable name matching at this position.
                let rest: String = self.chars[self.pos..].iter().collect();
                let best = self
                    .names
                    .iter()
                    .enumerate()
                    .filter(|(_, n)| rest.starts_with(n.as_str()))
                    .max_by_key(|(_, n)| n.len());
                match best {
                    Some((i, n)) => {
                        self.pos += n.chars().count();
                        Ok(MultiPoly::var(self.field, self.names.clone(), i))
                    }
                    None => Err(self.err("unknown variable")),
                }
            }
            _ => Err(self.err("expected a factor")),
        }
    }
}

/// Convenience: polynomial ring handle for building polynomials by variable name.
#[derive(Clone, Debug)]
pub struct PolyRing {
    pub field: FieldSpec,
    pub names: VarNames,
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(field: FieldSpec, names: &[S]) -> Self {
        PolyRing { field, names: var_names(names) }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn var(&self, i: usize) -> MultiPoly {
        MultiPoly::var(self.field, self.names.clone(), i)
    }

    pub fn var_named(&self, name: &str) -> MultiPoly {
        let i = self.index_of(name).unwrap_or_else(|| panic!("no variable named {name}"));
        self.var(i)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn int(&self, c: i64) -> MultiPoly {
        MultiPoly::from_int(self.field, self.names.clone(), c)
    }

    pub fn zero(&self) -> MultiPoly {
        MultiPoly::zero(self.field, self.names.clone())
    }

    pub fn one(&self) -> MultiPoly {
        MultiPoly::one(self.field, self.names.clone())
    }

    pub fn parse(&self, text: &str) -> Result<MultiPoly> {
        MultiPoly::parse(self.field, self.names.clone(), text)
    }

    /// Parses, panicking on error; for literals in code and tests.
    pub fn p(&self, text: &str) -> MultiPoly {
        self.parse(text).unwrap_or_else(|e| panic!("{e}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q2() -> PolyRing {
        PolyRing::new(FieldSpec::rationals(), &["y1", "y2"])
    }

    #[test]
    fn p2_from_product_minus_one() {
        let r = q2();
        let p = r.var(0).mul(&r.var(1)).sub(&r.int(1));
        assert_eq!(p.to_string(), "y1*y2 - 1");
    }

    #[test]
    fn square_mod_two() {
        let r = PolyRing::new(FieldSpec::prime(2), &["x"]);
        let x1 = r.p("x + 1");
        assert_eq!(x1.mul(&x1), r.p("x^2 + 1"));
    }

    #[test]
    fn additive_identity() {
        let r = q2();
        let a = r.p("3*y1^2*y2 - y2 + 7");
        assert_eq!(a.add(&r.zero()), a);
    }

    #[test]
    fn derivative_examples() {
        let r = PolyRing::new(FieldSpec::rationals(), &["y1", "y2", "y3"]);
        let p3 = r.p("y1*y2*y3 - y1 - y3");
        assert_eq!(p3.derivative(1).unwrap(), r.p("y1*y3"));
        assert!(r.int(5).derivative(0).unwrap().is_zero());
        let f2 = PolyRing::new(FieldSpec::prime(2), &["x"]);
        assert!(f2.p("x^2").derivative(0).unwrap().is_zero());
        assert!(p3.derivative(3).is_err());
    }

    #[test]
    fn substitution_examples() {
        let r = PolyRing::new(FieldSpec::rationals(), &["x1", "x2", "x3", "y1", "y2"]);
        let f = r.p("x2*y2 - x1 - x3");
        let g = f.substitute_one(1, &r.p("x1*y1 - 1")).unwrap();
        assert_eq!(g, r.p("(x1*y1 - 1)*y2 - x1 - x3"));
        let mut m = BTreeMap::new();
        m.insert(0, r.int(0));
        m.insert(3, r.int(0));
        let h = r.p("x1*y1 + x1 + 1").substitute(&m).unwrap();
        assert_eq!(h, r.int(1));
        assert_eq!(f.substitute(&BTreeMap::new()).unwrap(), f);
    }

    #[test]
    fn truncation_examples() {
        let r = PolyRing::new(FieldSpec::rationals(), &["y1", "y2", "y3", "y4"]);
        let p4 = r.p("y1*y2*y3*y4 - y1*y2 - y1*y4 - y3*y4 + 1");
        assert_eq!(p4.truncate_degree(2), r.p("1 - y1*y2 - y1*y4 - y3*y4"));
        assert_eq!(p4.truncate_degree(9), p4);
    }

    #[test]
    fn rendering_and_parsing_roundtrip() {
        let r = PolyRing::new(FieldSpec::rationals(), &["x", "y", "z"]);
        let f = r.p("z^3 - x*y*z + y + 1");
        assert_eq!(f.to_string(), "-x*y*z + z^3 + y + 1");
        assert_eq!(r.parse(&f.to_string()).unwrap(), f);
        assert_eq!(r.p("2xy/4"), r.p("1/2*x*y"));
        assert!(r.parse("x + w").is_err());
    }

    #[test]
    fn json_roundtrip() {
        let r = PolyRing::new(FieldSpec::prime(5), &["a", "b"]);
        let f = r.p("3*a^2*b - b + 4");
        let j = f.to_json();
        assert_eq!(MultiPoly::from_json(FieldSpec::prime(5), &j).unwrap(), f);
        let s = serde_json::to_string(&j).unwrap();
        assert!(s.contains("\"coeff\":\"3\""));
    }

    #[test]
    fn exact_division() {
        let r = q2();
        let f = r.p("y1^2*y2 - y2");
        assert_eq!(f.exact_div(&r.p("y1 - 1")).unwrap(), Some(r.p("y1*y2 + y2")));
        assert_eq!(f.exact_div(&r.p("y1 + 2")).unwrap(), None);
    }

    #[test]
    fn mismatched_rings_error() {
        let a = q2().p("y1");
        let b = PolyRing::new(FieldSpec::rationals(), &["y1"]).p("y1");
        assert!(a.try_add(&b).is_err());
        let c = PolyRing::new(FieldSpec::prime(3), &["y1", "y2"]).p("y1");
        assert!(a.try_mul(&c).is_err());
    }
}
