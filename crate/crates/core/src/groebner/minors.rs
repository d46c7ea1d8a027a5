use std::collections::HashMap;

use crate::error::{AlgebraError, Result};
use crate::poly::MultiPoly;

/// Jacobian matrix: row per polynomial, column per listed variable.
pub fn jacobian(polys: &[MultiPoly], vars: &[usize]) -> Result<Vec<Vec<MultiPoly>>> {
    polys.iter().map(|p| vars.iter().map(|&v| p.derivative(v)).collect()).collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

struct Expander<'a> {
    m: &'a [Vec<MultiPoly>],
    memo: HashMap<(u64, u64), MultiPoly>,
}

impl Expander<'_> {
    /// Laplace expansion along the first listed row, memoised on (row set, column set).
    fn det(&mut self, rows: &[usize], cols: &[usize]) -> MultiPoly {
        let key = (rows.iter().fold(0u64, |a, &r| a | 1 << r), cols.iter().fold(0u64, |a, &c| a | 1 << c));
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let r0 = rows[0];
        let v = if rows.len() == 1 {
            self.m[r0][cols[0]].clone()
        } else {
            let sample = &self.m[r0][cols[0]];
            let mut acc = MultiPoly::zero(sample.field(), sample.names().clone());
            for (j, &c) in cols.iter().enumerate() {
                let entry = &self.m[r0][c];
                if entry.is_zero() {
                    continue;
                }
                let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let sub = self.det(&rows[1..], &sub_cols);
                if sub.is_zero() {
                    continue;
                }
                let term = entry.mul(&sub);
                acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        };
        self.memo.insert(key, v.clone());
        v
    }
}

/// All nonzero `size × size` minors, ordered by (row tuple, column tuple).
pub fn minors(m: &[Vec<MultiPoly>], size: usize) -> Result<Vec<MultiPoly>> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    if m.iter().any(|r| r.len() != cols) {
        return Err(AlgebraError::Mismatch("ragged matrix".into()));
    }
    if rows > 64 || cols > 64 {
        return Err(AlgebraError::Unsupported("matrices larger than 64 rows or columns".into()));
    }
    if size == 0 || size > rows || size > cols {
        return Ok(Vec::new());
    }
    let mut ex = Expander { m, memo: HashMap::new() };
    let row_sets = combinations(rows, size);
    let col_sets = combinations(cols, size);
    let mut out = Vec::new();
    for r in &row_sets {
        for c in &col_sets {
            let d = ex.det(r, c);
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    Ok(out)
}

pub fn determinant(m: &[Vec<MultiPoly>]) -> Result<MultiPoly> {
    let n = m.len();
    if n == 0 || m.iter().any(|r| r.len() != n) {
        return Err(AlgebraError::Mismatch("determinant of a non-square matrix".into()));
    }
    let mut ex = Expander { m, memo: HashMap::new() };
    let idx: Vec<usize> = (0..n).collect();
    Ok(ex.det(&idx, &idx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::poly::PolyRing;

    #[test]
    fn two_by_two_minors() {
        let r = PolyRing::new(FieldSpec::rationals(), &["a", "b", "c", "d", "e", "f"]);
        let m = vec![vec![r.p("a"), r.p("b"), r.p("c")], vec![r.p("d"), r.p("e"), r.p("f")]];
        let ms = minors(&m, 2).unwrap();
        assert_eq!(ms, vec![r.p("a*e - b*d"), r.p("a*f - c*d"), r.p("b*f - c*e")]);
    }

    #[test]
    fn determinant_of_triangular() {
        let r = PolyRing::new(FieldSpec::prime(7), &["x", "y"]);
        let m = vec![
            vec![r.p("x"), r.p("1"), r.p("y")],
            vec![r.zero(), r.p("y"), r.p("3")],
            vec![r.zero(), r.zero(), r.p("2")],
        ];
        assert_eq!(determinant(&m).unwrap(), r.p("2*x*y"));
    }
}
