//! Predicted singular loci and the coordinate-change scripts certifying their local type, one
//! per type and branch of the classification.

use serde::Serialize;

use crate::continuant::{continuant_vars, even_continuant_coordinates};
use crate::error::{AlgebraError, Result};
use crate::field::{FieldElem, FieldSpec};
use crate::groebner::Ideal;
use crate::poly::{MultiPoly, VarNames};
use crate::presentations::Presentation;
use crate::quiver::DynkinType;

use super::certificate::{LocalCertificate, Patch};

/// Which case of the classification a (type, rank, characteristic) cell falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Regular,
    /// Isolated A_1 point at the origin (types A and B).
    OriginA1,
    /// Type B in characteristic two, even rank: isolated A_1 at `V(u1 - 1, u2 - 1, u3, z)`.
    BShiftedPoint,
    /// Type C in characteristic two.
    CCharTwo { odd: bool },
    /// Type D with the single component `Y_0`.
    DSingle,
    /// Type D with the five components `Y_0..Y_4`.
    DFive,
    /// E_7 in characteristic two: a regular surface.
    E7CharTwo,
    /// G_2 in characteristic three: an A_2 point.
    G2CharThree,
}

impl Branch {
    pub fn is_singular(self) -> bool {
        self != Branch::Regular
    }
}

/// The case of Theorem A predicted for a cell, with the branch condition it checks.
pub fn theorem_a_branch(kind: DynkinType, n: usize, p: u64) -> (Branch, &'static str) {
    use DynkinType::*;
    let two = p == 2;
    match kind {
        A => {
            if (!two && n % 4 == 3) || (two && n % 2 == 1) {
                (Branch::OriginA1, "A_n singular iff p != 2 and n = 3 mod 4, or p = 2 and n odd; isolated A_1 at the origin")
            } else {
                (Branch::Regular, "A_n regular unless p != 2 and n = 3 mod 4, or p = 2 and n odd")
            }
        }
        B => {
            if two && n % 2 == 0 {
                (Branch::BShiftedPoint, "B_n, p = 2, n even: isolated A_1 at V(u1 - 1, u2 - 1, u3, z)")
            } else if (!two && n % 4 == 3) || (two && n % 2 == 1) {
                (Branch::OriginA1, "B_n singular at the origin iff p != 2 and n = 3 mod 4, or p = 2 and n odd; isolated A_1")
            } else {
                (Branch::Regular, "B_n, p != 2: regular unless n = 3 mod 4")
            }
        }
        C => {
            if two {
                (Branch::CCharTwo { odd: n % 2 == 1 }, "C_n singular iff p = 2; Sing = V(u_n, z_(n+1), f_(n-2)), isomorphic to the A_(n-2) variety")
            } else {
                (Branch::Regular, "C_n regular for p != 2")
            }
        }
        D => {
            if (!two && n % 4 == 0) || (two && n % 2 == 0) {
                (Branch::DFive, "D_n: Sing = Y_0 u Y_1 u ... u Y_4 iff p != 2 and n = 0 mod 4, or p = 2 and n even")
            } else {
                (Branch::DSingle, "D_n: Sing = Y_0, a regular cylinder over A_1, otherwise")
            }
        }
        E7 if two => (Branch::E7CharTwo, "E_7 singular iff p = 2, with a regular surface as singular locus"),
        E7 => (Branch::Regular, "E_7 regular for p != 2"),
        E6 => (Branch::Regular, "E_6 regular in every characteristic"),
        E8 => (Branch::Regular, "E_8 regular in every characteristic"),
        F4 => (Branch::Regular, "F_4 regular in every characteristic"),
        G2 if p == 3 => (Branch::G2CharThree, "G_2 singular iff p = 3, an isolated A_2 point at V(x + 1, y, z + 1)"),
        G2 => (Branch::Regular, "G_2 regular for p != 3"),
        Star => (Branch::Regular, "star quivers are covered by the separate star theorem"),
    }
}

/// Variable lookup and continuants by name in a presentation ring.
struct Ctx {
    field: FieldSpec,
    names: VarNames,
}

impl Ctx {
    fn of(p: &Presentation) -> Ctx {
        Ctx { field: p.field(), names: p.names().clone() }
    }

    fn idx(&self, name: &str) -> usize {
        self.names.iter().position(|n| n == name).unwrap_or_else(|| panic!("no variable {name}"))
    }

    fn v(&self, name: &str) -> MultiPoly {
        MultiPoly::var(self.field, self.names.clone(), self.idx(name))
    }

    fn vars(&self, names: &[String]) -> Vec<usize> {
        names.iter().map(|n| self.idx(n)).collect()
    }

    fn cont(&self, names: &[String]) -> MultiPoly {
        continuant_vars(self.field, &self.names, &self.vars(names))
    }

    fn one(&self) -> MultiPoly {
        MultiPoly::one(self.field, self.names.clone())
    }

    fn ideal(&self, gens: Vec<MultiPoly>) -> Result<Ideal> {
        Ideal::new(self.field, self.names.clone(), gens)
    }

    fn named(&self, names: &[String]) -> Vec<(String, MultiPoly)> {
        names.iter().map(|n| (n.clone(), self.v(n))).collect()
    }

    /// Ideal of all variables.
    fn origin(&self) -> Ideal {
        Ideal::of_variables(self.field, self.names.clone(), &(0..self.names.len()).collect::<Vec<_>>())
    }
}

fn seq(prefix: &str, range: std::ops::RangeInclusive<usize>) -> Vec<String> {
    range.map(|i| format!("{prefix}{i}")).collect()
}

/// `t1*t2 + t3*t4 + ...` over the given coordinate names.
fn pairs_text(names: &[String]) -> String {
    let terms: Vec<String> = names.chunks(2).map(|c| format!("{}*{}", c[0], c[1])).collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Pair coordinates `t_i` for `±P + 1` over the named variables, named `t1..`.
fn t_coordinates(ctx: &Ctx, vars: &[String]) -> Result<Vec<(String, MultiPoly)>> {
    let t = even_continuant_coordinates(ctx.field, &ctx.names, &ctx.vars(vars))?;
    Ok(t.into_iter().enumerate().map(|(i, c)| (format!("t{}", i + 1), c)).collect())
}

fn t_names(count: usize) -> Vec<String> {
    seq("t", 1..=count)
}

fn point_ideal(ctx: &Ctx, point: &[(&str, i64)]) -> Result<Ideal> {
    let mut gens = Vec::new();
    for n in ctx.names.iter() {
        let c = point.iter().find(|(m, _)| *m == n).map_or(0, |(_, c)| *c);
        gens.push(ctx.v(n).add_constant(-c));
    }
    ctx.ideal(gens)
}

/// Predicted components of the singular locus with the expected dimension of the locus.
#[derive(Clone, Debug)]
pub struct PredictedLocus {
    pub branch: Branch,
    pub components: Vec<Ideal>,
    pub dimension: Option<usize>,
}

fn d_parts(ctx: &Ctx, n: usize) -> (Vec<String>, MultiPoly, MultiPoly) {
    let z = seq("z", 1..=n - 2);
    let p = ctx.cont(&z);
    let p3 = ctx.cont(&z[..n - 3]);
    (z, p, p3)
}

fn c_parts(ctx: &Ctx, n: usize) -> (MultiPoly, MultiPoly, MultiPoly, MultiPoly) {
    let z = seq("z", 1..=n + 1);
    let f = ctx.cont(&z[..n - 1]).add_constant(1);
    let pn2 = ctx.cont(&z[..n - 2]);
    let un = ctx.v(&z[n - 1]).add(&pn2);
    let w = un.mul(&ctx.one().add(&f)).add(&f.mul(&pn2));
    (f, pn2, un, w)
}

/// The components predicted for a presentation in the given branch.
pub fn predicted_locus(p: &Presentation, branch: Branch) -> Result<PredictedLocus> {
    let ctx = Ctx::of(p);
    let n = p.rank;
    let (components, dimension) = match branch {
        Branch::Regular => (vec![Ideal::unit(ctx.field, ctx.names.clone())], None),
        Branch::OriginA1 => (vec![ctx.origin()], Some(0)),
        Branch::BShiftedPoint => (vec![point_ideal(&ctx, &[("u1", 1), ("u2", 1)])?], Some(0)),
        Branch::CCharTwo { .. } => {
            let (f, _, un, _) = c_parts(&ctx, n);
            (vec![ctx.ideal(vec![un, ctx.v(&format!("z{}", n + 1)), f])?], Some(n - 2))
        }
        Branch::DSingle | Branch::DFive => {
            let (z, pz, _) = d_parts(&ctx, n);
            let us = seq("u", 1..=4);
            let mut y0: Vec<MultiPoly> = us.iter().map(|u| ctx.v(u)).collect();
            y0.push(pz.add_constant(1));
            if branch == Branch::DSingle {
                (vec![ctx.ideal(y0)?], Some(n - 3))
            } else {
                let mut comps = Vec::new();
                if n == 4 {
                    for zi in &z {
                        let mut g: Vec<MultiPoly> = us.iter().map(|u| ctx.v(u)).collect();
                        g.push(ctx.v(zi));
                        comps.push(ctx.ideal(g)?);
                    }
                } else {
                    comps.push(ctx.ideal(y0)?);
                }
                for u in &us {
                    let others: Vec<usize> = ctx.names.iter().filter(|m| *m != u).map(|m| ctx.idx(m)).collect();
                    comps.push(Ideal::of_variables(ctx.field, ctx.names.clone(), &others));
                }
                (comps, Some((n - 3).max(1)))
            }
        }
        Branch::E7CharTwo => {
            let mut g: Vec<MultiPoly> = ["x1", "x5", "y1", "y2", "y3", "y4", "y5"].iter().map(|v| ctx.v(v)).collect();
            g.push(ctx.cont(&["x7".into(), "y7".into(), "y6".into()]).add_constant(1));
            (vec![ctx.ideal(g)?], Some(2))
        }
        Branch::G2CharThree => (vec![point_ideal(&ctx, &[("x", -1), ("z", -1)])?], Some(0)),
    };
    Ok(PredictedLocus { branch, components, dimension })
}

fn a_origin_patch(ctx: &Ctx, n: usize) -> Result<Patch> {
    let z = seq("z", 1..=n + 1);
    let t = t_coordinates(ctx, &z)?;
    Patch::new(ctx.one(), t, &[pairs_text(&t_names(n + 1))])
}

fn b_origin_patch(ctx: &Ctx, p: &Presentation) -> Result<Patch> {
    let n = p.rank;
    let mut coords = vec![("g".to_string(), p.generators()[0].clone())];
    coords.extend(ctx.named(&["u1".into(), "u2".into()]));
    coords.extend(t_coordinates(ctx, &seq("z", 1..=n - 1))?);
    let quad = format!("u1*u2 - ({})", pairs_text(&t_names(n - 1)));
    Patch::new(ctx.one(), coords, &["g".into(), quad])
}

fn b_shifted_patch(ctx: &Ctx, p: &Presentation) -> Result<Patch> {
    let n = p.rank;
    let z = seq("z", 1..=n - 1);
    let mut coords = vec![
        ("a".to_string(), ctx.v("u1").add_constant(-1)),
        ("h".to_string(), p.generators()[1].clone()),
        ("u3".to_string(), ctx.v("u3")),
    ];
    coords.extend(t_coordinates(ctx, &z[..n - 2])?);
    coords.push(("s".to_string(), ctx.cont(&z)));
    let mut quad = "a^2 + u3*s".to_string();
    if n > 2 {
        quad += &format!(" + {}", pairs_text(&t_names(n - 2)));
    }
    Patch::new(ctx.one(), coords, &["h".into(), quad])
}

/// The recorded coordinate change for an A_1 point of a hypersurface presentation, if any.
pub(crate) fn a1_patch(p: &Presentation, point: &[FieldElem]) -> Result<Option<Patch>> {
    let ctx = Ctx::of(p);
    let at = |name: &str| point[ctx.idx(name)].clone();
    let is_origin = point.iter().all(|c| c.is_zero());
    match p.kind {
        DynkinType::A if is_origin && p.rank % 2 == 1 => Ok(Some(a_origin_patch(&ctx, p.rank)?)),
        DynkinType::B if is_origin && p.rank % 2 == 1 => Ok(Some(b_origin_patch(&ctx, p)?)),
        DynkinType::B
            if at("u1").is_one()
                && at("u2").is_one()
                && ctx.names.iter().filter(|m| *m != "u1" && *m != "u2").all(|m| at(m).is_zero()) =>
        {
            Ok(Some(b_shifted_patch(&ctx, p)?))
        }
        _ => Ok(None),
    }
}

/// Certificates for every part of the singular locus named by the branch.
pub fn local_certificates(p: &Presentation, branch: Branch) -> Result<Vec<LocalCertificate>> {
    let ctx = Ctx::of(p);
    let n = p.rank;
    let cert = |description: &str, locus: Ideal, excluded: Option<Ideal>, patches: Vec<Patch>| LocalCertificate {
        description: description.to_string(),
        locus,
        excluded,
        patches,
    };
    match branch {
        Branch::Regular => Ok(Vec::new()),
        Branch::OriginA1 => {
            let patch = match p.kind {
                DynkinType::A => a_origin_patch(&ctx, n)?,
                DynkinType::B => b_origin_patch(&ctx, p)?,
                _ => return Err(AlgebraError::Unsupported(format!("no origin script for {}", p.label()))),
            };
            Ok(vec![cert("A_1 at the origin", ctx.origin(), None, vec![patch])])
        }
        Branch::BShiftedPoint => {
            let locus = point_ideal(&ctx, &[("u1", 1), ("u2", 1)])?;
            Ok(vec![cert("A_1 at V(u1 - 1, u2 - 1, u3, z)", locus, None, vec![b_shifted_patch(&ctx, p)?])])
        }
        Branch::CCharTwo { odd } => c_certificates(&ctx, n, odd),
        Branch::DSingle | Branch::DFive => d_certificates(&ctx, p, branch == Branch::DFive),
        Branch::E7CharTwo => e7_certificates(&ctx, p),
        Branch::G2CharThree => {
            let locus = point_ideal(&ctx, &[("x", -1), ("z", -1)])?;
            let coords = vec![
                ("xt".to_string(), ctx.one().sub(&ctx.v("x").mul(&ctx.v("z")))),
                ("y".to_string(), ctx.v("y")),
                ("zt".to_string(), ctx.v("z").add_constant(1)),
            ];
            let patch = Patch::new(ctx.v("z"), coords, &["zt^3 + xt*y".into()])?;
            Ok(vec![cert("A_2 at V(x + 1, y, z + 1)", locus, None, vec![patch])])
        }
    }
}

fn c_certificates(ctx: &Ctx, n: usize, odd: bool) -> Result<Vec<LocalCertificate>> {
    let z = seq("z", 1..=n + 1);
    let last = z[n].clone();
    let (f, _, un, w) = c_parts(ctx, n);
    let one_plus_f = ctx.one().add(&f);
    let locus = ctx.ideal(vec![un, ctx.v(&last), f.clone()])?;
    let mut patches = Vec::new();
    for j in 0..n - 1 {
        let mut coords = vec![("f".to_string(), f.clone()), ("w".to_string(), w.clone()), (last.clone(), ctx.v(&last))];
        for (i, zi) in z[..n - 1].iter().enumerate() {
            if i != j {
                coords.push((zi.clone(), ctx.v(zi)));
            }
        }
        let unit = one_plus_f.mul(&f.derivative(ctx.idx(&z[j]))?);
        patches.push(Patch::new(unit, coords, &[format!("f^2 + {last}*w")])?);
    }
    let away = LocalCertificate {
        description: if odd { "cylinder over A_1 in A^3 along Sing minus the origin".into() } else { "cylinder over A_1 in A^3 along Sing".into() },
        locus: locus.clone(),
        excluded: if odd { Some(ctx.origin()) } else { None },
        patches,
    };
    let mut out = vec![away];
    if odd {
        let mut coords = t_coordinates(ctx, &z[..n - 1])?;
        coords.push(("w".to_string(), w));
        coords.push((last.clone(), ctx.v(&last)));
        let model = format!("w*{last} + ({})^2", pairs_text(&t_names(n - 1)));
        let patch = Patch::new(one_plus_f, coords, &[model])?;
        out.push(LocalCertificate {
            description: "yz + (sum of pairs)^2 at the origin".into(),
            locus: ctx.origin(),
            excluded: None,
            patches: vec![patch],
        });
    }
    Ok(out)
}

fn d_certificates(ctx: &Ctx, p: &Presentation, five: bool) -> Result<Vec<LocalCertificate>> {
    let n = p.rank;
    let (z, pz, p3) = d_parts(ctx, n);
    let (h1, h2) = (p.generators()[0].clone(), p.generators()[1].clone());
    let (u1, u2, u3, u4) = (ctx.v("u1"), ctx.v("u2"), ctx.v("u3"), ctx.v("u4"));
    let one_minus = ctx.one().sub(&u3.mul(&u4));
    let w1 = u1.mul(&one_minus).sub(&u4.mul(&p3));
    let mut y0: Vec<MultiPoly> = vec![u1.clone(), u2.clone(), u3.clone(), u4.clone()];
    y0.push(pz.add_constant(1));
    let mut patches = Vec::new();
    for j in 0..z.len() {
        let mut coords = vec![("w".to_string(), w1.clone())];
        coords.extend(ctx.named(&["u2".into(), "u3".into(), "u4".into()]));
        coords.push(("h2".to_string(), h2.clone()));
        for (i, zi) in z.iter().enumerate() {
            if i != j {
                coords.push((zi.clone(), ctx.v(zi)));
            }
        }
        let unit = one_minus.mul(&pz.derivative(ctx.idx(&z[j]))?);
        patches.push(Patch::new(unit, coords, &["h2".into(), "w*u2 - u3*u4".into()])?);
    }
    let mut out = vec![LocalCertificate {
        description: "A_1 cylinder meeting the regular hypersurface V(h2) along Y_0".into(),
        locus: ctx.ideal(y0)?,
        excluded: if five { Some(ctx.origin()) } else { None },
        patches,
    }];
    if !five {
        return Ok(out);
    }
    let t = t_coordinates(ctx, &z)?;
    let tn = t_names(z.len());
    let quad = format!("u3*u4 - ({})", pairs_text(&tn));
    let mut coords = vec![("w".to_string(), w1.clone())];
    coords.extend(ctx.named(&["u2".into(), "u3".into(), "u4".into()]));
    coords.extend(t.clone());
    out.push(LocalCertificate {
        description: "two homogeneous quadrics at the origin".into(),
        locus: ctx.origin(),
        excluded: None,
        patches: vec![Patch::new(one_minus.clone(), coords, &["w*u2 - u3*u4".into(), quad.clone()])?],
    });
    let axis = |keep: &str| -> (Ideal, Option<Ideal>) {
        let others: Vec<usize> = ctx.names.iter().filter(|m| *m != keep).map(|m| ctx.idx(m)).collect();
        (
            Ideal::of_variables(ctx.field, ctx.names.clone(), &others),
            Some(Ideal::of_variables(ctx.field, ctx.names.clone(), &[ctx.idx(keep)])),
        )
    };
    // Y_1 and Y_2: h1 replaces u2 (resp. u1).
    let (l1, e1) = axis("u1");
    let mut c1 = ctx.named(&["u1".into()]);
    c1.push(("h1".to_string(), h1.clone()));
    c1.extend(ctx.named(&["u3".into(), "u4".into()]));
    c1.extend(t.clone());
    out.push(LocalCertificate {
        description: "cylinder over A_1 along Y_1 minus the origin".into(),
        locus: l1,
        excluded: e1,
        patches: vec![Patch::new(w1.clone(), c1, &["h1".into(), quad.clone()])?],
    });
    let (l2, e2) = axis("u2");
    let mut c2 = vec![("h1".to_string(), h1.clone())];
    c2.extend(ctx.named(&["u2".into(), "u3".into(), "u4".into()]));
    c2.extend(t.clone());
    out.push(LocalCertificate {
        description: "cylinder over A_1 along Y_2 minus the origin".into(),
        locus: l2,
        excluded: e2,
        patches: vec![Patch::new(u2.mul(&one_minus), c2, &["h1".into(), quad.clone()])?],
    });
    // Y_3 and Y_4: u3 (resp. u4) is a unit; h2 replaces the other of the pair.
    for (keep, other, unit) in [("u3", "u4", u3.clone()), ("u4", "u3", u4.clone())] {
        let v = if keep == "u3" {
            u1.mul(&u3).mul(&one_minus).sub(&u3.mul(&u4).mul(&p3))
        } else {
            u1.mul(&u4).mul(&one_minus).sub(&u4.mul(&u4).mul(&p3))
        };
        let (l, e) = axis(keep);
        let mut coords = vec![("v".to_string(), v)];
        coords.extend(ctx.named(&["u2".into(), keep.to_string()]));
        coords.push(("h2".to_string(), h2.clone()));
        for (i, (name, ti)) in t.iter().enumerate() {
            let c = if i % 2 == 0 { ti.mul(&unit) } else { ti.clone() };
            coords.push((name.clone(), c));
        }
        let _ = other;
        out.push(LocalCertificate {
            description: format!("cylinder over A_1 along Y_{} minus the origin", &keep[1..]),
            locus: l,
            excluded: e,
            patches: vec![Patch::new(unit, coords, &["h2".into(), format!("u2*v - ({})", pairs_text(&tn))])?],
        });
    }
    Ok(out)
}

fn e7_certificates(ctx: &Ctx, p: &Presentation) -> Result<Vec<LocalCertificate>> {
    let g = p.generators();
    let (h2, h3) = (g[1].clone(), g[2].clone());
    let y2y3 = ctx.v("y2").mul(&ctx.v("y3"));
    let z1 = ctx.v("y1").mul(&ctx.one().add(&y2y3)).add(&ctx.v("y3"));
    let tip = ["x7", "y7", "y6"];
    let mut locus: Vec<MultiPoly> = ["x1", "x5", "y1", "y2", "y3", "y4", "y5"].iter().map(|v| ctx.v(v)).collect();
    locus.push(ctx.cont(&["x7".into(), "y7".into(), "y6".into()]).add_constant(1));
    let base_unit = ctx.one().add(&y2y3).mul(&ctx.v("x5").mul(&ctx.v("y5")).add_constant(-1));
    let mut patches = Vec::new();
    for v in tip {
        let mut coords = vec![("x1".to_string(), ctx.v("x1")), ("z1".to_string(), z1.clone())];
        coords.extend(ctx.named(&["x5".into(), "y5".into(), "y2".into(), "y3".into()]));
        coords.push(("h2".to_string(), h2.clone()));
        coords.push(("h3".to_string(), h3.clone()));
        for w in tip.iter().filter(|w| **w != v) {
            coords.push((w.to_string(), ctx.v(w)));
        }
        let unit = base_unit.mul(&h3.derivative(ctx.idx(v))?);
        patches.push(Patch::new(unit, coords, &["h2".into(), "h3".into(), "x1*z1 + x5*y5 + y2*y3".into()])?);
    }
    Ok(vec![LocalCertificate {
        description: "A_1 in A^6 cut by two transversal regular hypersurfaces along the singular surface".into(),
        locus: ctx.ideal(locus)?,
        excluded: None,
        patches,
    }])
}

/// The component of the star singular locus chosen for the generic certificate:
/// `V(z1, z2, z3, z4, z6, z8, .., z_(2n-2))`, away from the other components.
pub fn star_generic_certificate(p: &Presentation) -> Result<LocalCertificate> {
    let ctx = Ctx::of(p);
    let n = p.rank;
    let g = p.generators();
    let z = |i: usize| format!("z{i}");
    let mut locus_vars: Vec<String> = (1..=4).map(z).collect();
    locus_vars.extend((3..n).map(|m| z(2 * m)));
    let free: Vec<String> = (3..n).map(|m| z(2 * m - 1)).collect();
    let free_product = free.iter().fold(ctx.one(), |acc, v| acc.mul(&ctx.v(v)));
    let mut coords = ctx.named(&(1..=4).map(z).collect::<Vec<_>>());
    for k in 3..=n - 2 {
        coords.push((format!("h{k}"), g[k - 1].clone()));
    }
    coords.push(("h1".to_string(), g[0].clone()));
    coords.extend(ctx.named(&free));
    let mut model: Vec<String> = (3..=n - 2).map(|k| format!("h{k}")).collect();
    model.push("h1".into());
    model.push("z1*z2 - z3*z4".into());
    let z1z2 = ctx.v("z1").mul(&ctx.v("z2"));
    let unit = free_product.mul(&ctx.one().sub(&z1z2));
    let locus = Ideal::of_variables(ctx.field, ctx.names.clone(), &ctx.vars(&locus_vars));
    Ok(LocalCertificate {
        description: "A_1 in A^4 at generic points of V(z1, z2, z3, z4, z6, ..)".into(),
        locus,
        excluded: Some(ctx.ideal(vec![free_product])?),
        patches: vec![Patch::new(unit, coords, &model)?],
    })
}

/// The binomial form at the origin: the parenthesized factor of `h1` is absorbed into the
/// odd coordinates of the first `n - 2` pairs.
pub fn star_origin_certificate(p: &Presentation) -> Result<LocalCertificate> {
    let ctx = Ctx::of(p);
    let n = p.rank;
    let z = |i: usize| ctx.v(&format!("z{i}"));
    let last = z(2 * n - 3).mul(&z(2 * n - 2));
    let odd = (1..n).fold(ctx.one(), |acc, l| acc.mul(&z(2 * l - 1)));
    let eps = ctx.one().sub(&last).add(&odd);
    let mut coords = Vec::new();
    for i in 1..=2 * n - 2 {
        let c = if i % 2 == 1 && i < 2 * n - 3 {
            eps.mul(&z(i))
        } else if i == 2 * n - 2 {
            z(i).neg()
        } else {
            z(i)
        };
        coords.push((format!("x{i}"), c));
    }
    let mut model = vec![format!("x1*x2 - x{}*x{}", 2 * n - 3, 2 * n - 2)];
    for k in 2..=n - 2 {
        model.push(format!("x1*x2 - x{}*x{}", 2 * k - 1, 2 * k));
    }
    Ok(LocalCertificate {
        description: "binomial ideal at the origin".into(),
        locus: ctx.origin(),
        excluded: None,
        patches: vec![Patch::new(eps, coords, &model)?],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::GbConfig;
    use crate::presentations::reduced_presentation;

    fn certify_all(kind: DynkinType, n: usize, p: u64) {
        let field = if p == 0 { FieldSpec::rationals() } else { FieldSpec::prime(p) };
        let pres = reduced_presentation(kind, n, field).unwrap();
        let (branch, _) = theorem_a_branch(kind, n, p);
        for c in local_certificates(&pres, branch).unwrap() {
            let check = c.verify(&pres.ideal, &GbConfig::default()).unwrap();
            assert!(check.certified, "{} {}: {:#?}", pres.label(), field, check);
        }
    }

    #[test]
    fn point_scripts_replay() {
        certify_all(DynkinType::A, 3, 0);
        certify_all(DynkinType::A, 5, 2);
        certify_all(DynkinType::B, 3, 5);
        certify_all(DynkinType::B, 4, 2);
        certify_all(DynkinType::B, 2, 2);
        certify_all(DynkinType::G2, 2, 3);
    }

    #[test]
    fn type_c_scripts_replay() {
        certify_all(DynkinType::C, 3, 2);
        certify_all(DynkinType::C, 4, 2);
        certify_all(DynkinType::C, 5, 2);
    }

    #[test]
    fn type_d_scripts_replay() {
        certify_all(DynkinType::D, 4, 0);
        certify_all(DynkinType::D, 5, 3);
        certify_all(DynkinType::D, 6, 2);
    }

    #[test]
    fn e7_script_replays() {
        certify_all(DynkinType::E7, 7, 2);
    }

    #[test]
    fn star_scripts_replay() {
        let pres = reduced_presentation(DynkinType::Star, 4, FieldSpec::prime(5)).unwrap();
        for c in [star_generic_certificate(&pres).unwrap(), star_origin_certificate(&pres).unwrap()] {
            let check = c.verify(&pres.ideal, &GbConfig::default()).unwrap();
            assert!(check.certified, "{check:#?}");
        }
    }
}
