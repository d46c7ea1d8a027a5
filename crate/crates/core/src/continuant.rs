//! Continuants: determinants of tridiagonal matrices with diagonal `y_1..y_n` and `-1`
//! off the diagonal.

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::field::FieldSpec;
use crate::groebner::{buchberger, determinant, Ideal, MonomialOrder};
use crate::poly::{indexed_names, var_names, MultiPoly, VarNames};

/// `P_n(args)` by the three-term recursion, read from the right end.
pub fn continuant(field: FieldSpec, names: &VarNames, args: &[MultiPoly]) -> MultiPoly {
    let one = MultiPoly::one(field, names.clone());
    let n = args.len();
    if n == 0 {
        return one;
    }
    // tail[k] = P_{n-k}(args[k..])
    let mut next2 = one;
    let mut next1 = args[n - 1].clone();
    for k in (0..n - 1).rev() {
        let cur = args[k].mul(&next1).sub(&next2);
        next2 = next1;
        next1 = cur;
    }
    next1
}

/// `P_n` of the listed variables of a ring.
pub fn continuant_vars(field: FieldSpec, names: &VarNames, vars: &[usize]) -> MultiPoly {
    let args: Vec<MultiPoly> = vars.iter().map(|&v| MultiPoly::var(field, names.clone(), v)).collect();
    continuant(field, names, &args)
}

/// Ring `K[y_1..y_n]`.
pub fn standard_ring(n: usize) -> VarNames {
    var_names(&indexed_names("y", n))
}

/// `P_n(y_1..y_n)` in its own ring.
pub fn standard_continuant(field: FieldSpec, n: usize) -> MultiPoly {
    let names = standard_ring(n);
    continuant_vars(field, &names, &(0..n).collect::<Vec<_>>())
}

/// Cofactor-expansion determinant of the tridiagonal matrix.
pub fn continuant_det_oracle(field: FieldSpec, n: usize) -> Result<MultiPoly> {
    if n == 0 {
        return Err(AlgebraError::Invalid("the determinant oracle needs n >= 1".into()));
    }
    let names = standard_ring(n);
    let zero = MultiPoly::zero(field, names.clone());
    let minus_one = MultiPoly::from_int(field, names.clone(), -1);
    let m: Vec<Vec<MultiPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        MultiPoly::var(field, names.clone(), i)
                    } else if i.abs_diff(j) == 1 {
                        minus_one.clone()
                    } else {
                        zero.clone()
                    }
                })
                .collect()
        })
        .collect();
    determinant(&m)
}

/// Terms of order at most two, from the closed forms indexed by `n mod 4`.
pub fn low_order_closed_form(field: FieldSpec, n: usize) -> MultiPoly {
    let names = standard_ring(n);
    let y = |i: usize| MultiPoly::var(field, names.clone(), i - 1);
    let odd_sum = || MultiPoly::sum(field, names.clone(), &(1..=n).step_by(2).map(y).collect::<Vec<_>>());
    let pair_sum = || {
        let mut terms = Vec::new();
        for i in (1..=n).step_by(2) {
            for j in (i + 1..=n).step_by(2) {
                terms.push(y(i).mul(&y(j)));
            }
        }
        MultiPoly::sum(field, names.clone(), &terms)
    };
    let one = MultiPoly::one(field, names.clone());
    match n % 4 {
        0 => one.sub(&pair_sum()),
        1 => odd_sum(),
        2 => pair_sum().sub(&one),
        _ => odd_sum().neg(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub n: usize,
    pub field: FieldSpec,
    pub symmetry: bool,
    pub split_recursion: Vec<(usize, bool)>,
    pub derivative: Vec<(usize, bool)>,
    pub low_order: bool,
    pub determinant_oracle: bool,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.symmetry
            && self.low_order
            && self.determinant_oracle
            && self.split_recursion.iter().all(|r| r.1)
            && self.derivative.iter().all(|r| r.1)
    }
}

/// Checks symmetry, the split recursion at every `r`, the derivative product formula
/// and the low-order closed form as exact polynomial identities.
pub fn continuant_identities(field: FieldSpec, n: usize) -> Result<IdentityReport> {
    let names = standard_ring(n);
    let p = |range: std::ops::Range<usize>| continuant_vars(field, &names, &range.collect::<Vec<_>>());
    let pn = p(0..n);
    let reversed: Vec<usize> = (0..n).rev().collect();
    let symmetry = continuant_vars(field, &names, &reversed) == pn;
    let mut split = Vec::new();
    for r in 1..n {
        let rhs = p(0..r).mul(&p(r..n)).sub(&p(0..r - 1).mul(&p(r + 1..n)));
        split.push((r, rhs == pn));
    }
    let mut derivative = Vec::new();
    for k in 1..=n {
        let lhs = pn.derivative(k - 1)?;
        let rhs = p(0..k - 1).mul(&p(k..n));
        derivative.push((k, lhs == rhs));
    }
    let low_order = pn.truncate_degree(2) == low_order_closed_form(field, n).with_names(names.clone());
    let determinant_oracle = n == 0 || continuant_det_oracle(field, n)? == pn;
    Ok(IdentityReport { n, field, symmetry, split_recursion: split, derivative, low_order, determinant_oracle })
}

/// For `n = 2m + 1`: scaling odd-position variables by `λ` and even-position ones by `λ^{-1}`
/// multiplies `P_n` by `λ`. Checked in `K[y, λ, u]` modulo `λu - 1`.
pub fn odd_scaling_identity(field: FieldSpec, m: usize) -> Result<bool> {
    let n = 2 * m + 1;
    let mut all = indexed_names("y", n);
    all.push("lambda".into());
    all.push("u".into());
    let names = var_names(&all);
    let lambda = MultiPoly::var(field, names.clone(), n);
    let inverse = MultiPoly::var(field, names.clone(), n + 1);
    let pn = continuant_vars(field, &names, &(0..n).collect::<Vec<_>>());
    let images: Vec<MultiPoly> = (0..n + 2)
        .map(|v| {
            let y = MultiPoly::var(field, names.clone(), v);
            match v {
                v if v >= n => y,
                v if v % 2 == 0 => y.mul(&lambda),
                _ => y.mul(&inverse),
            }
        })
        .collect();
    let difference = pn.map_vars(&images)?.sub(&lambda.mul(&pn));
    let localization = Ideal::new(field, names, vec![lambda.mul(&inverse).add_constant(-1)])?;
    buchberger(&localization, &MonomialOrder::DegRevLex)?.contains(&difference)
}

/// Writes `f` as `Σ_k x_k·T_k` for the listed `vars`, assuming `f` vanishes when all of
/// them are zero. `T_k` is the part of `f` (with later listed variables set to zero)
/// divisible by `x_k`, so the sum telescopes exactly.
pub fn telescoping_cofactors(f: &MultiPoly, vars: &[usize]) -> Result<Vec<MultiPoly>> {
    let zero = MultiPoly::zero(f.field(), f.names().clone());
    let mut out = Vec::with_capacity(vars.len());
    let mut check = zero.clone();
    for (k, &v) in vars.iter().enumerate() {
        let mut assign = std::collections::BTreeMap::new();
        for &w in &vars[k + 1..] {
            assign.insert(w, zero.clone());
        }
        let fk = f.substitute(&assign)?;
        let without = fk.substitute_one(v, &zero)?;
        let mut e = crate::poly::Exponent::from_elem(0, f.nvars());
        e[v] = 1;
        let cof = fk.sub(&without).div_monomial(&e).ok_or_else(|| AlgebraError::Invalid("cofactor is not exact".into()))?;
        check = check.add(&MultiPoly::var(f.field(), f.names().clone(), v).mul(&cof));
        out.push(cof);
    }
    if &check != f {
        return Err(AlgebraError::Invalid("polynomial does not vanish on the coordinate subspace".into()));
    }
    Ok(out)
}

/// Coordinates `t_1..t_{2m}` with `(-1)^{m+1}·P_{2m} + 1 = Σ t_{2i-1}·t_{2i}`: odd `t` are
/// the odd variables, even `t` the telescoping cofactors. The linear part of `t_{2k+2}` is
/// `y_{2k+2} + y_{2k+4} + ... + y_{2m}`.
pub fn even_continuant_coordinates(field: FieldSpec, names: &VarNames, vars: &[usize]) -> Result<Vec<MultiPoly>> {
    let m = vars.len() / 2;
    let sign = if m % 2 == 1 { 1 } else { -1 };
    let g = continuant_vars(field, names, vars).scale_int(sign).add_constant(1);
    let odd: Vec<usize> = (0..m).map(|k| vars[2 * k]).collect();
    let cof = telescoping_cofactors(&g, &odd)?;
    let mut t = Vec::with_capacity(2 * m);
    for (k, c) in cof.into_iter().enumerate() {
        t.push(MultiPoly::var(field, names.clone(), odd[k]));
        t.push(c);
    }
    Ok(t)
}

/// The closed-form substitution `t_{2k+2} = y_{2k+2}·(-1)^k·P_{2k} + Σ_{l>=k+2} y_{2l}`.
/// It agrees with the telescoping coordinates only for `m <= 2`.
pub fn closed_form_even_coordinates(field: FieldSpec, names: &VarNames, vars: &[usize]) -> Vec<MultiPoly> {
    let m = vars.len() / 2;
    let y = |i: usize| MultiPoly::var(field, names.clone(), vars[i - 1]);
    let mut t = Vec::with_capacity(2 * m);
    for k in 0..m {
        t.push(y(2 * k + 1));
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let lead = y(2 * k + 2).mul(&continuant_vars(field, names, &vars[..2 * k])).scale_int(sign);
        let rest: Vec<MultiPoly> = (k + 2..=m).map(|l| y(2 * l)).collect();
        t.push(lead.add(&MultiPoly::sum(field, names.clone(), &rest)));
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;

    #[test]
    fn odd_scaling() {
        for field in [FieldSpec::rationals(), FieldSpec::prime(2), FieldSpec::prime(3)] {
            for m in 0..=4 {
                assert!(odd_scaling_identity(field, m).unwrap(), "m = {m} over {field}");
            }
        }
    }

    #[test]
    fn small_continuants() {
        let q = FieldSpec::rationals();
        let r2 = PolyRing::new(q, &["y1", "y2"]);
        assert_eq!(standard_continuant(q, 2), r2.p("y1*y2 - 1"));
        let r3 = PolyRing::new(q, &["y1", "y2", "y3"]);
        assert_eq!(standard_continuant(q, 3), r3.p("y1*y2*y3 - y1 - y3"));
        assert!(standard_continuant(q, 0).is_unit_constant());
    }

    #[test]
    fn oracle_agrees() {
        for field in [FieldSpec::rationals(), FieldSpec::prime(2)] {
            for n in 1..=10 {
                assert_eq!(continuant_det_oracle(field, n).unwrap(), standard_continuant(field, n), "n = {n}");
            }
        }
    }

    #[test]
    fn identities_hold() {
        for field in [FieldSpec::rationals(), FieldSpec::prime(2)] {
            for n in 1..=8 {
                let r = continuant_identities(field, n).unwrap();
                assert!(r.all_hold(), "{r:?}");
            }
        }
    }

    #[test]
    fn derivative_example_and_truncation() {
        let q = FieldSpec::rationals();
        let r3 = PolyRing::new(q, &["y1", "y2", "y3"]);
        assert_eq!(standard_continuant(q, 3).derivative(1).unwrap(), r3.p("y1*y3"));
        let r7 = PolyRing::new(q, &["y1", "y2", "y3", "y4", "y5", "y6", "y7"]);
        assert_eq!(standard_continuant(q, 7).truncate_degree(2), r7.p("-y1 - y3 - y5 - y7"));
    }

    #[test]
    fn even_coordinates_give_pairs() {
        for field in [FieldSpec::rationals(), FieldSpec::prime(2), FieldSpec::prime(3)] {
            for m in 1..=4usize {
                let n = 2 * m;
                let names = standard_ring(n);
                let vars: Vec<usize> = (0..n).collect();
                let sign = if m % 2 == 1 { 1 } else { -1 };
                let g = continuant_vars(field, &names, &vars).scale_int(sign).add_constant(1);
                let t = even_continuant_coordinates(field, &names, &vars).unwrap();
                let pairs: Vec<MultiPoly> = (0..m).map(|i| t[2 * i].mul(&t[2 * i + 1])).collect();
                assert_eq!(g, MultiPoly::sum(field, names.clone(), &pairs), "m = {m}");
                let closed = closed_form_even_coordinates(field, &names, &vars);
                assert_eq!(closed == t, m <= 2, "m = {m}");
                for k in 0..m {
                    let linear: Vec<MultiPoly> = (k..m).map(|l| MultiPoly::var(field, names.clone(), 2 * l + 1)).collect();
                    assert_eq!(t[2 * k + 1].homogeneous_part(1), MultiPoly::sum(field, names.clone(), &linear));
                }
            }
        }
    }
}
