//! Quivers, skew-symmetrizable exchange matrices, mutation, Cartan counterparts and the
//! standard Dynkin and star seeds.
//!
//! Vertices are 0-based internally. The JSON quiver format and all user-facing vertex
//! numbers are 1-based.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExchangeMatrix {
    b: Vec<Vec<i64>>,
    symmetrizer: Option<Vec<i64>>,
}

fn overflow() -> AlgebraError {
    AlgebraError::Invalid("exchange matrix entry overflow".into())
}

impl ExchangeMatrix {
    /// Validates the sign pattern and discovers a symmetrizer.
    pub fn new(b: Vec<Vec<i64>>) -> Result<Self> {
        Self::check_shape(&b)?;
        let d = discover_symmetrizer(&b)?;
        Ok(ExchangeMatrix { b, symmetrizer: Some(d) })
    }

    /// Uses the given symmetrizer, which must make `D·B` skew-symmetric.
    pub fn with_symmetrizer(b: Vec<Vec<i64>>, d: Vec<i64>) -> Result<Self> {
        Self::check_shape(&b)?;
        let n = b.len();
        if d.len() != n || d.iter().any(|&x| x <= 0) {
            return Err(AlgebraError::Invalid("symmetrizer must be a positive vector of length n".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if d[i] * b[i][j] != -(d[j] * b[j][i]) {
                    return Err(AlgebraError::Invalid(format!(
                        "D·B is not skew-symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(ExchangeMatrix { b, symmetrizer: Some(d) })
    }

    fn check_shape(b: &[Vec<i64>]) -> Result<()> {
        let n = b.len();
        if n == 0 {
            return Err(AlgebraError::Invalid("empty exchange matrix".into()));
        }
        for (i, row) in b.iter().enumerate() {
            if row.len() != n {
                return Err(AlgebraError::Mismatch("exchange matrix is not square".into()));
            }
            if row[i] != 0 {
                return Err(AlgebraError::Invalid(format!("nonzero diagonal entry at {}", i + 1)));
            }
            for j in 0..n {
                if (row[j] > 0) != (b[j][i] < 0) || (row[j] == 0) != (b[j][i] == 0) {
                    return Err(AlgebraError::Invalid(format!(
                        "sign pattern not skew-symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.b.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.b
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.b[i][j]
    }

    pub fn symmetrizer(&self) -> Option<&[i64]> {
        self.symmetrizer.as_deref()
    }

    pub fn is_skew_symmetric(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| (0..n).all(|j| self.b[i][j] == -self.b[j][i]))
    }

    fn check_vertex(&self, k: usize) -> Result<()> {
        if k >= self.rank() {
            return Err(AlgebraError::IndexOutOfRange { index: k, size: self.rank() });
        }
        Ok(())
    }

    /// Matrix mutation in direction `k`; the symmetrizer is carried over unchanged.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        self.check_vertex(k)?;
        let n = self.rank();
        let mut out = self.b.clone();
        for i in 0..n {
            for j in 0..n {
                if i == k || j == k {
                    out[i][j] = -self.b[i][j];
                } else {
                    let bik = self.b[i][k];
                    let bkj = self.b[k][j];
                    let num = bik.abs().checked_mul(bkj).ok_or_else(overflow)?
                        + bik.checked_mul(bkj.abs()).ok_or_else(overflow)?;
                    out[i][j] = self.b[i][j].checked_add(num / 2).ok_or_else(overflow)?;
                }
            }
        }
        Ok(ExchangeMatrix { b: out, symmetrizer: self.symmetrizer.clone() })
    }

    pub fn mutate_sequence(&self, seq: &[usize]) -> Result<Self> {
        let mut m = self.clone();
        for &k in seq {
            m = m.mutate(k)?;
        }
        Ok(m)
    }

    /// Simultaneous relabelling: entry `(i, j)` of the result is `b[perm[i]][perm[j]]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.rank();
        let b = (0..n).map(|i| (0..n).map(|j| self.b[perm[i]][perm[j]]).collect()).collect();
        let symmetrizer = self.symmetrizer.as_ref().map(|d| perm.iter().map(|&p| d[p]).collect());
        ExchangeMatrix { b, symmetrizer }
    }

    pub fn cartan_counterpart(&self) -> CartanMatrix {
        let n = self.rank();
        let a = (0..n).map(|i| (0..n).map(|j| if i == j { 2 } else { -self.b[i][j].abs() }).collect()).collect();
        CartanMatrix { a }
    }

    /// Directed graph with an edge `i → j` whenever `b_ij > 0` has no directed cycle.
    pub fn is_acyclic(&self) -> bool {
        let n = self.rank();
        let mut indeg = vec![0usize; n];
        for i in 0..n {
            for j in 0..n {
                if self.b[i][j] > 0 {
                    indeg[j] += 1;
                }
            }
        }
        let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for j in 0..n {
                if self.b[v][j] > 0 {
                    indeg[j] -= 1;
                    if indeg[j] == 0 {
                        queue.push(j);
                    }
                }
            }
        }
        seen == n
    }

    /// Least encoding over vertex relabellings, with the relabelling that attains it.
    pub fn canonical(&self) -> (Self, Vec<usize>) {
        canonical_form(self)
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson { n: self.rank(), b: self.b.clone(), d: self.symmetrizer.clone() }
    }

    pub fn from_json(j: &MatrixJson) -> Result<Self> {
        if j.b.len() != j.n {
            return Err(AlgebraError::Mismatch(format!("matrix has {} rows but n = {}", j.b.len(), j.n)));
        }
        match &j.d {
            Some(d) => Self::with_symmetrizer(j.b.clone(), d.clone()),
            None => Self::new(j.b.clone()),
        }
    }
}

impl fmt::Display for ExchangeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .b
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub b: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<i64>>,
}

/// Solves `d_i·b_ij = −d_j·b_ji` by propagation along the underlying graph.
fn discover_symmetrizer(b: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = b.len();
    // Rational weights as (numerator, denominator).
    let mut w: Vec<Option<(i64, i64)>> = vec![None; n];
    for root in 0..n {
        if w[root].is_some() {
            continue;
        }
        w[root] = Some((1, 1));
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            let (p, q) = w[i].unwrap();
            for j in 0..n {
                if b[i][j] == 0 {
                    continue;
                }
                // d_j = d_i · b_ij / (−b_ji)
                let num = p * b[i][j];
                let den = q * -b[j][i];
                let g = num.gcd(&den);
                let cand = (num / g, den / g);
                match w[j] {
                    None => {
                        w[j] = Some(cand);
                        queue.push_back(j);
                    }
                    Some(existing) => {
                        if existing.0 * cand.1 != cand.0 * existing.1 {
                            return Err(AlgebraError::Invalid("matrix is not skew-symmetrizable".into()));
                        }
                    }
                }
            }
        }
    }
    let lcm = w.iter().fold(1i64, |acc, x| acc.lcm(&x.unwrap().1));
    let mut d: Vec<i64> = w.iter().map(|x| x.unwrap().0 * (lcm / x.unwrap().1)).collect();
    let g = d.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    for x in &mut d {
        *x /= g;
    }
    Ok(d)
}

fn vertex_invariant(m: &ExchangeMatrix, i: usize) -> (i64, Vec<i64>, Vec<i64>) {
    let mut row: Vec<i64> = m.b[i].clone();
    row.sort_unstable();
    let mut col: Vec<i64> = m.b.iter().map(|r| r[i]).collect();
    col.sort_unstable();
    (m.symmetrizer.as_ref().map_or(0, |d| d[i]), row, col)
}

const CANONICAL_SEARCH_LIMIT: usize = 10;

fn canonical_form(m: &ExchangeMatrix) -> (ExchangeMatrix, Vec<usize>) {
    let n = m.rank();
    let mut order: Vec<usize> = (0..n).collect();
    let inv: Vec<_> = (0..n).map(|i| vertex_invariant(m, i)).collect();
    order.sort_by(|&a, &b| inv[a].cmp(&inv[b]).then(a.cmp(&b)));
    if n > CANONICAL_SEARCH_LIMIT {
        return (m.permuted(&order), order);
    }
    // Tie classes of equal invariants; permutations range within classes only.
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match classes.last_mut() {
            Some(c) if inv[c[0]] == inv[v] => c.push(v),
            _ => classes.push(vec![v]),
        }
    }
    let slot_class: Vec<usize> = classes.iter().enumerate().flat_map(|(c, v)| std::iter::repeat_n(c, v.len())).collect();
    let mut best: Option<(Vec<i64>, Vec<usize>)> = None;
    fn encode(m: &ExchangeMatrix, perm: &[usize]) -> Vec<i64> {
        perm.iter().flat_map(|&i| perm.iter().map(move |&j| m.b[i][j])).collect()
    }
    fn search(
        m: &ExchangeMatrix,
        classes: &[Vec<usize>],
        slot_class: &[usize],
        used: &mut [bool],
        current: &mut Vec<usize>,
        best: &mut Option<(Vec<i64>, Vec<usize>)>,
    ) {
        if current.len() == slot_class.len() {
            let code = encode(m, current);
            if best.as_ref().is_none_or(|(b, _)| code < *b) {
                *best = Some((code, current.clone()));
            }
            return;
        }
        for &v in &classes[slot_class[current.len()]] {
            if !used[v] {
                used[v] = true;
                current.push(v);
                search(m, classes, slot_class, used, current, best);
                current.pop();
                used[v] = false;
            }
        }
    }
    let mut used = vec![false; n];
    search(m, &classes, &slot_class, &mut used, &mut Vec::with_capacity(n), &mut best);
    let perm = best.map(|b| b.1).unwrap_or(order);
    (m.permuted(&perm), perm)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanMatrix {
    a: Vec<Vec<i64>>,
}

fn det_bareiss(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

impl CartanMatrix {
    pub fn entries(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn principal_minor(&self, subset: &[usize]) -> i128 {
        let sub: Vec<Vec<i64>> = subset.iter().map(|&i| subset.iter().map(|&j| self.a[i][j]).collect()).collect();
        det_bareiss(&sub)
    }

    /// All principal minors positive. Above 16 vertices only the leading minors are
    /// tested, which is equivalent for symmetrizable matrices.
    pub fn is_finite_type(&self) -> bool {
        let n = self.rank();
        if n <= 16 {
            (1u32..(1 << n)).all(|mask| {
                let subset: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
                self.principal_minor(&subset) > 0
            })
        } else {
            (1..=n).all(|k| self.principal_minor(&(0..k).collect::<Vec<_>>()) > 0)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum FiniteTypeStatus {
    /// A matrix with finite-type Cartan counterpart was reached by `witness` (1-based vertices).
    Finite { witness: Vec<usize>, visited: usize },
    /// The whole mutation class (up to relabelling) was enumerated without success.
    NotFinite { class_size: usize },
    /// Budget exhausted before either conclusion.
    NotFoundWithinBudget { visited: usize },
}

impl FiniteTypeStatus {
    pub fn label(&self) -> &'static str {
        match self {
            FiniteTypeStatus::Finite { .. } => "finite",
            FiniteTypeStatus::NotFinite { .. } => "not_finite",
            FiniteTypeStatus::NotFoundWithinBudget { .. } => "not_found_within_budget",
        }
    }
}

pub const DEFAULT_FINITE_TYPE_BUDGET: usize = 10_000;

/// Breadth-first search of the mutation class for a finite-type Cartan counterpart.
pub fn is_finite_type(b: &ExchangeMatrix, budget: usize) -> Result<FiniteTypeStatus> {
    let start = b.canonical().0;
    let mut visited: HashSet<ExchangeMatrix> = HashSet::new();
    let mut queue: VecDeque<(ExchangeMatrix, ExchangeMatrix, Vec<usize>)> = VecDeque::new();
    visited.insert(start);
    queue.push_back((b.clone(), b.canonical().0, Vec::new()));
    while let Some((m, _, path)) = queue.pop_front() {
        if m.cartan_counterpart().is_finite_type() {
            return Ok(FiniteTypeStatus::Finite { witness: path.iter().map(|k| k + 1).collect(), visited: visited.len() });
        }
        for k in 0..m.rank() {
            let next = match m.mutate(k) {
                Ok(x) => x,
                Err(_) => return Ok(FiniteTypeStatus::NotFoundWithinBudget { visited: visited.len() }),
            };
            let canon = next.canonical().0;
            if visited.contains(&canon) {
                continue;
            }
            if visited.len() >= budget {
                return Ok(FiniteTypeStatus::NotFoundWithinBudget { visited: visited.len() });
            }
            visited.insert(canon.clone());
            let mut p = path.clone();
            p.push(k);
            queue.push_back((next, canon, p));
        }
    }
    Ok(FiniteTypeStatus::NotFinite { class_size: visited.len() })
}

/// A quiver without loops or oriented 2-cycles; arrows stored with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    n: usize,
    arrows: BTreeMap<(usize, usize), u32>,
}

impl Quiver {
    pub fn new(n: usize, arrows: &[(usize, usize, u32)]) -> Result<Self> {
        let mut map: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        for &(i, j, m) in arrows {
            if i >= n || j >= n {
                return Err(AlgebraError::IndexOutOfRange { index: i.max(j), size: n });
            }
            if i == j {
                return Err(AlgebraError::Invalid(format!("loop at vertex {}", i + 1)));
            }
            if m > 0 {
                *map.entry((i, j)).or_insert(0) += m;
            }
        }
        if map.keys().any(|&(i, j)| map.contains_key(&(j, i))) {
            return Err(AlgebraError::Invalid("quiver contains an oriented 2-cycle".into()));
        }
        Ok(Quiver { n, arrows: map })
    }

    pub fn from_matrix(b: &ExchangeMatrix) -> Result<Self> {
        if !b.is_skew_symmetric() {
            return Err(AlgebraError::Invalid("only skew-symmetric matrices encode quivers".into()));
        }
        let n = b.rank();
        let mut arrows = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if b.get(i, j) > 0 {
                    arrows.push((i, j, b.get(i, j) as u32));
                }
            }
        }
        Quiver::new(n, &arrows)
    }

    pub fn to_matrix(&self) -> ExchangeMatrix {
        let mut b = vec![vec![0i64; self.n]; self.n];
        for (&(i, j), &m) in &self.arrows {
            b[i][j] += m as i64;
            b[j][i] -= m as i64;
        }
        ExchangeMatrix { b, symmetrizer: Some(vec![1; self.n]) }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.arrows.iter().map(|(&(i, j), &m)| (i, j, m))
    }

    pub fn multiplicity(&self, i: usize, j: usize) -> u32 {
        self.arrows.get(&(i, j)).copied().unwrap_or(0)
    }

    /// The three-step quiver mutation: composite arrows, reversal at `k`, 2-cycle cancellation.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        if k >= self.n {
            return Err(AlgebraError::IndexOutOfRange { index: k, size: self.n });
        }
        let mut counts: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for (&(i, j), &m) in &self.arrows {
            if i == k || j == k {
                *counts.entry((j, i)).or_insert(0) += m as i64;
            } else {
                *counts.entry((i, j)).or_insert(0) += m as i64;
            }
        }
        for (&(i, k1), &a) in &self.arrows {
            if k1 != k {
                continue;
            }
            for (&(k2, j), &c) in &self.arrows {
                if k2 == k {
                    *counts.entry((i, j)).or_insert(0) += a as i64 * c as i64;
                }
            }
        }
        let mut arrows = BTreeMap::new();
        for (&(i, j), &m) in &counts {
            if i > j {
                continue;
            }
            let back = counts.get(&(j, i)).copied().unwrap_or(0);
            if m > back {
                arrows.insert((i, j), (m - back) as u32);
            } else if back > m {
                arrows.insert((j, i), (back - m) as u32);
            }
        }
        for (&(i, j), &m) in &counts {
            if i > j && !counts.contains_key(&(j, i)) && m > 0 {
                arrows.insert((i, j), m as u32);
            }
        }
        Ok(Quiver { n: self.n, arrows })
    }

    pub fn is_sink(&self, v: usize) -> bool {
        !self.arrows.keys().any(|&(i, _)| i == v)
    }

    pub fn is_source(&self, v: usize) -> bool {
        !self.arrows.keys().any(|&(_, j)| j == v)
    }

    /// Underlying undirected edges with multiplicity, as sorted pairs.
    pub fn underlying_edges(&self) -> BTreeMap<(usize, usize), u32> {
        let mut out = BTreeMap::new();
        for (&(i, j), &m) in &self.arrows {
            *out.entry((i.min(j), i.max(j))).or_insert(0) += m;
        }
        out
    }

    pub fn is_tree(&self) -> bool {
        let edges = self.underlying_edges();
        if edges.values().any(|&m| m != 1) || edges.len() + 1 != self.n {
            return false;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in edges.keys() {
                let w = if a == v { b } else if b == v { a } else { continue };
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    pub fn is_isomorphic(&self, other: &Quiver) -> bool {
        self.n == other.n && self.to_matrix().canonical().0 == other.to_matrix().canonical().0
    }

    pub fn to_json(&self) -> QuiverJson {
        QuiverJson { n: self.n, arrows: self.arrows().map(|(i, j, m)| [i + 1, j + 1, m as usize]).collect() }
    }

    pub fn from_json(j: &QuiverJson) -> Result<Self> {
        let mut arrows = Vec::with_capacity(j.arrows.len());
        for a in &j.arrows {
            if a[0] == 0 || a[1] == 0 {
                return Err(AlgebraError::Invalid("quiver vertices are numbered from 1".into()));
            }
            let m = u32::try_from(a[2]).map_err(|_| AlgebraError::Invalid("arrow multiplicity too large".into()))?;
            arrows.push((a[0] - 1, a[1] - 1, m));
        }
        Quiver::new(j.n, &arrows)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub n: usize,
    pub arrows: Vec<[usize; 3]>,
}

/// Sink/source mutations turning `a` into a quiver isomorphic to `b` (0-based vertices).
pub fn sink_source_connect(a: &Quiver, b: &Quiver) -> Result<Vec<usize>> {
    if a.n != b.n || !a.is_tree() || !b.is_tree() {
        return Err(AlgebraError::Invalid("inputs must be orientations of trees on the same vertex count".into()));
    }
    let ua: Vec<(usize, usize)> = a.underlying_edges().into_keys().collect();
    let ub: Vec<(usize, usize)> = b.underlying_edges().into_keys().collect();
    let undirected = |edges: &[(usize, usize)]| {
        let arrows: Vec<(usize, usize, u32)> = edges.iter().map(|&(i, j)| (i, j, 1)).collect();
        Quiver::new(a.n, &arrows).map(|q| q.to_matrix())
    };
    if !same_undirected(&undirected(&ua)?, &undirected(&ub)?) {
        return Err(AlgebraError::Invalid("quivers are orientations of different trees".into()));
    }
    let target = b.to_matrix().canonical().0;
    let mut seen: HashSet<Quiver> = HashSet::new();
    let mut queue = VecDeque::from([(a.clone(), Vec::new())]);
    seen.insert(a.clone());
    while let Some((q, path)) = queue.pop_front() {
        if q.to_matrix().canonical().0 == target {
            return Ok(path);
        }
        for v in 0..q.n {
            if q.is_sink(v) || q.is_source(v) {
                let next = q.mutate(v)?;
                if seen.insert(next.clone()) {
                    let mut p = path.clone();
                    p.push(v);
                    queue.push_back((next, p));
                }
            }
        }
    }
    Err(AlgebraError::Invalid("no sink/source sequence found".into()))
}

fn same_undirected(a: &ExchangeMatrix, b: &ExchangeMatrix) -> bool {
    let n = a.rank();
    let abs = |m: &ExchangeMatrix| {
        let b: Vec<Vec<i64>> = m.entries().iter().map(|r| r.iter().map(|x| x.abs()).collect()).collect();
        ExchangeMatrix { b, symmetrizer: None }
    };
    n == b.rank() && canonical_form(&abs(a)).0 == canonical_form(&abs(b)).0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DynkinType {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
    Star,
}

impl DynkinType {
    pub const ALL: [DynkinType; 10] = [
        DynkinType::A,
        DynkinType::B,
        DynkinType::C,
        DynkinType::D,
        DynkinType::E6,
        DynkinType::E7,
        DynkinType::E8,
        DynkinType::F4,
        DynkinType::G2,
        DynkinType::Star,
    ];

    /// The rank for fixed-rank types.
    pub fn fixed_rank(self) -> Option<usize> {
        match self {
            DynkinType::E6 => Some(6),
            DynkinType::E7 => Some(7),
            DynkinType::E8 => Some(8),
            DynkinType::F4 => Some(4),
            DynkinType::G2 => Some(2),
            _ => None,
        }
    }

    pub fn min_rank(self) -> usize {
        match self {
            DynkinType::A => 1,
            DynkinType::B => 2,
            DynkinType::C => 3,
            DynkinType::D => 4,
            DynkinType::Star => 2,
            other => other.fixed_rank().unwrap(),
        }
    }

    pub fn check_rank(self, n: usize) -> Result<()> {
        let ok = match self.fixed_rank() {
            Some(r) => n == r,
            None => n >= self.min_rank(),
        };
        if ok {
            Ok(())
        } else {
            Err(AlgebraError::RankOutOfRange { kind: self.to_string(), rank: n })
        }
    }

    pub fn is_simply_laced(self) -> bool {
        !matches!(self, DynkinType::B | DynkinType::C | DynkinType::F4 | DynkinType::G2)
    }

    /// Display label such as `A_3`, `E_7` or `St_4`.
    pub fn label(self, n: usize) -> String {
        match self {
            DynkinType::Star => format!("St_{n}"),
            t if t.fixed_rank().is_some() => t.to_string().replace(char::is_numeric, "") + "_" + &n.to_string(),
            t => format!("{t}_{n}"),
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DynkinType::A => "A",
            DynkinType::B => "B",
            DynkinType::C => "C",
            DynkinType::D => "D",
            DynkinType::E6 => "E6",
            DynkinType::E7 => "E7",
            DynkinType::E8 => "E8",
            DynkinType::F4 => "F4",
            DynkinType::G2 => "G2",
            DynkinType::Star => "Star",
        };
        f.write_str(s)
    }
}

impl FromStr for DynkinType {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_uppercase().replace('_', "").as_str() {
            "A" => DynkinType::A,
            "B" => DynkinType::B,
            "C" => DynkinType::C,
            "D" => DynkinType::D,
            "E6" => DynkinType::E6,
            "E7" => DynkinType::E7,
            "E8" => DynkinType::E8,
            "F4" => DynkinType::F4,
            "G2" => DynkinType::G2,
            "STAR" | "ST" | "S" => DynkinType::Star,
            other => return Err(AlgebraError::Parse(format!("unknown type {other:?}"))),
        })
    }
}

#[derive(Clone, Debug)]
pub struct DynkinSeed {
    pub kind: DynkinType,
    pub rank: usize,
    pub matrix: ExchangeMatrix,
    pub quiver: Option<Quiver>,
    pub orientation: String,
}

fn path_matrix(n: usize) -> Vec<Vec<i64>> {
    let mut b = vec![vec![0i64; n]; n];
    for i in 0..n.saturating_sub(1) {
        b[i][i + 1] = 1;
        b[i + 1][i] = -1;
    }
    b
}

fn quiver_seed(kind: DynkinType, n: usize, arrows: &[(usize, usize)], orientation: String) -> Result<DynkinSeed> {
    let q = Quiver::new(n, &arrows.iter().map(|&(i, j)| (i - 1, j - 1, 1)).collect::<Vec<_>>())?;
    Ok(DynkinSeed { kind, rank: n, matrix: q.to_matrix(), quiver: Some(q), orientation })
}

/// The standard initial seed of each type, vertices numbered as in the usual figures.
pub fn dynkin_seed(kind: DynkinType, n: usize) -> Result<DynkinSeed> {
    kind.check_rank(n)?;
    match kind {
        DynkinType::A => {
            let arrows: Vec<(usize, usize)> = (1..n).map(|i| (i, i + 1)).collect();
            quiver_seed(kind, n, &arrows, "path 1 -> 2 -> ... -> n".into())
        }
        DynkinType::D => {
            let mut arrows: Vec<(usize, usize)> = (1..n - 2).map(|i| (i, i + 1)).collect();
            arrows.push((n - 2, n - 1));
            arrows.push((n - 2, n));
            quiver_seed(kind, n, &arrows, "path 1 -> ... -> n-2, then n-2 -> n-1 and n-2 -> n".into())
        }
        DynkinType::E6 => quiver_seed(kind, 6, &[(1, 2), (2, 3), (3, 5), (3, 4), (5, 6)], "1->2->3, 3->4, 3->5->6".into()),
        DynkinType::E7 => quiver_seed(
            kind,
            7,
            &[(1, 2), (2, 3), (3, 4), (4, 6), (4, 5), (6, 7)],
            "1->2->3->4, 4->5, 4->6->7".into(),
        ),
        DynkinType::E8 => quiver_seed(
            kind,
            8,
            &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 7), (5, 6), (7, 8)],
            "1->2->3->4->5, 5->6, 5->7->8".into(),
        ),
        DynkinType::Star => {
            let mut arrows: Vec<(usize, usize)> = (1..n - 1).map(|i| (i, n)).collect();
            arrows.push((n, n - 1));
            quiver_seed(kind, n, &arrows, "i -> n for i <= n-2, and n -> n-1".into())
        }
        DynkinType::B => {
            let mut b = path_matrix(n);
            b[n - 1][n - 2] = -2;
            let mut d = vec![2; n];
            d[n - 1] = 1;
            Ok(DynkinSeed {
                kind,
                rank: n,
                matrix: ExchangeMatrix::with_symmetrizer(b, d)?,
                quiver: None,
                orientation: "path matrix with b_(n,n-1) = -2".into(),
            })
        }
        DynkinType::C => {
            let mut b = path_matrix(n);
            b[n - 2][n - 1] = 2;
            let mut d = vec![1; n];
            d[n - 1] = 2;
            Ok(DynkinSeed {
                kind,
                rank: n,
                matrix: ExchangeMatrix::with_symmetrizer(b, d)?,
                quiver: None,
                orientation: "path matrix with b_(n-1,n) = 2".into(),
            })
        }
        DynkinType::F4 => {
            let mut b = path_matrix(4);
            b[2][1] = -2;
            Ok(DynkinSeed {
                kind,
                rank: 4,
                matrix: ExchangeMatrix::with_symmetrizer(b, vec![2, 2, 1, 1])?,
                quiver: None,
                orientation: "path matrix with b_(3,2) = -2".into(),
            })
        }
        DynkinType::G2 => Ok(DynkinSeed {
            kind,
            rank: 2,
            matrix: ExchangeMatrix::with_symmetrizer(vec![vec![0, 1], vec![-3, 0]], vec![3, 1])?,
            quiver: None,
            orientation: "[[0,1],[-3,0]]".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked_example() -> Quiver {
        // 2 -> 1, 4 -> 2, 1 -> 4, and a double arrow 3 => 1.
        Quiver::new(4, &[(1, 0, 1), (3, 1, 1), (0, 3, 1), (2, 0, 2)]).unwrap()
    }

    #[test]
    fn rank_two_sign_flip() {
        let b = ExchangeMatrix::new(vec![vec![0, 1], vec![-1, 0]]).unwrap();
        assert_eq!(b.mutate(0).unwrap().entries(), &[vec![0, -1], vec![1, 0]]);
    }

    #[test]
    fn worked_example_mutation() {
        let q = worked_example();
        let m = q.mutate(0).unwrap();
        let expect = Quiver::new(4, &[(0, 1, 1), (3, 0, 1), (0, 2, 2), (2, 3, 2)]).unwrap();
        assert_eq!(m, expect);
        assert_eq!(Quiver::from_matrix(&q.to_matrix().mutate(0).unwrap()).unwrap(), expect);
    }

    #[test]
    fn isolated_vertex_mutation() {
        let q = Quiver::new(3, &[(0, 1, 1)]).unwrap();
        assert_eq!(q.mutate(2).unwrap(), q);
    }

    #[test]
    fn cartan_examples() {
        let g2 = dynkin_seed(DynkinType::G2, 2).unwrap();
        assert_eq!(g2.matrix.cartan_counterpart().entries(), &[vec![2, -1], vec![-3, 2]]);
        let zero = ExchangeMatrix::new(vec![vec![0; 3]; 3]).unwrap();
        assert_eq!(zero.cartan_counterpart().entries(), &[vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]]);
        let b3 = dynkin_seed(DynkinType::B, 3).unwrap();
        assert_eq!(b3.matrix.cartan_counterpart().entries(), &[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]]);
    }

    #[test]
    fn finite_type_recognition() {
        let a3 = dynkin_seed(DynkinType::A, 3).unwrap();
        assert!(matches!(is_finite_type(&a3.matrix, 100).unwrap(), FiniteTypeStatus::Finite { .. }));
        let st5 = dynkin_seed(DynkinType::Star, 5).unwrap();
        assert!(matches!(
            is_finite_type(&st5.matrix, DEFAULT_FINITE_TYPE_BUDGET).unwrap(),
            FiniteTypeStatus::NotFinite { .. }
        ));
        let k2 = ExchangeMatrix::new(vec![vec![0, 2], vec![-2, 0]]).unwrap();
        assert_eq!(is_finite_type(&k2, 100).unwrap(), FiniteTypeStatus::NotFinite { class_size: 1 });
    }

    #[test]
    fn seeds_have_finite_cartan() {
        for t in DynkinType::ALL {
            if t == DynkinType::Star {
                continue;
            }
            let n = t.fixed_rank().unwrap_or(t.min_rank() + 2);
            assert!(dynkin_seed(t, n).unwrap().matrix.cartan_counterpart().is_finite_type(), "{t}");
        }
    }

    #[test]
    fn type_c_last_rows() {
        let c = dynkin_seed(DynkinType::C, 4).unwrap();
        assert_eq!(c.matrix.entries()[2], vec![0, -1, 0, 2]);
        assert_eq!(c.matrix.entries()[3], vec![0, 0, -1, 0]);
    }

    #[test]
    fn star_orientation() {
        let s = dynkin_seed(DynkinType::Star, 4).unwrap();
        let q = s.quiver.unwrap();
        assert_eq!(q.multiplicity(3, 2), 1);
        assert_eq!(q.multiplicity(0, 3), 1);
        assert_eq!(q.multiplicity(1, 3), 1);
    }

    #[test]
    fn sink_source_paths() {
        let a = Quiver::new(3, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        let b = Quiver::new(3, &[(1, 0, 1), (2, 1, 1)]).unwrap();
        let seq = sink_source_connect(&a, &b).unwrap();
        assert!(seq.len() <= 3);
        let mut q = a.clone();
        for &k in &seq {
            q = q.mutate(k).unwrap();
        }
        assert!(q.is_isomorphic(&b));
        assert!(sink_source_connect(&a, &a).unwrap().is_empty());
    }

    #[test]
    fn symmetrizer_discovery() {
        let b = ExchangeMatrix::new(vec![vec![0, 1], vec![-3, 0]]).unwrap();
        assert_eq!(b.symmetrizer().unwrap(), &[3, 1]);
        assert!(ExchangeMatrix::new(vec![vec![0, 1, -1], vec![-2, 0, 1], vec![1, -1, 0]]).is_err());
    }
}
