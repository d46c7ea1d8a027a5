//! Reduced presentations of finite-type and star cluster algebras, and the elimination audit
//! connecting them to the lower-bound presentations.

use std::fmt::Write as _;

use serde::Serialize;

use crate::continuant::continuant_vars;
use crate::error::{AlgebraError, Result};
use crate::field::FieldSpec;
use crate::groebner::{eliminate, ideal_dimension, ideals_equal, Dimension, GbConfig, Ideal, IdealJson};
use crate::poly::{indexed_names, var_names, MultiPoly, VarNames};
use crate::quiver::{dynkin_seed, DynkinType};
use crate::seed::lower_bound_presentation;

#[derive(Clone, Debug)]
pub struct Presentation {
    pub kind: DynkinType,
    pub rank: usize,
    pub ideal: Ideal,
    pub expected_dimension: usize,
    /// One line per generator describing where it comes from.
    pub generator_roles: Vec<String>,
    /// Each reduced variable as an expression in the lower-bound variables.
    pub variable_meaning: Vec<(String, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PresentationJson {
    pub label: String,
    #[serde(rename = "type")]
    pub kind: String,
    pub rank: usize,
    #[serde(flatten)]
    pub ideal: IdealJson,
    pub expected_dimension: usize,
    pub codimension: usize,
}

impl Presentation {
    pub fn label(&self) -> String {
        self.kind.label(self.rank)
    }

    pub fn field(&self) -> FieldSpec {
        self.ideal.field()
    }

    pub fn names(&self) -> &VarNames {
        self.ideal.names()
    }

    pub fn generators(&self) -> &[MultiPoly] {
        self.ideal.generators()
    }

    pub fn codimension(&self) -> usize {
        self.generators().len()
    }

    pub fn is_hypersurface(&self) -> bool {
        self.codimension() == 1
    }

    pub fn to_json(&self) -> PresentationJson {
        PresentationJson {
            label: self.label(),
            kind: self.kind.to_string(),
            rank: self.rank,
            ideal: self.ideal.to_json(),
            expected_dimension: self.expected_dimension,
            codimension: self.codimension(),
        }
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# Presentation of {} over {}\n", self.label(), self.field());
        let _ = writeln!(
            s,
            "Ambient space: affine {}-space in `{}`; codimension {}; expected dimension {}.\n",
            self.names().len(),
            self.names().join(", "),
            self.codimension(),
            self.expected_dimension
        );
        let _ = writeln!(s, "| generator | polynomial | origin |\n|---|---|---|");
        for (i, (g, role)) in self.generators().iter().zip(&self.generator_roles).enumerate() {
            let _ = writeln!(s, "| {} | `{}` | {} |", i + 1, g, role);
        }
        if !self.variable_meaning.is_empty() {
            let _ = writeln!(s, "\n| variable | lower-bound expression |\n|---|---|");
            for (v, e) in &self.variable_meaning {
                let _ = writeln!(s, "| `{v}` | `{e}` |");
            }
        }
        s
    }
}

struct Builder {
    field: FieldSpec,
    names: VarNames,
}

impl Builder {
    fn new(field: FieldSpec, names: Vec<String>) -> Self {
        Builder { field, names: var_names(&names) }
    }

    fn v(&self, name: &str) -> MultiPoly {
        let i = self.names.iter().position(|n| n == name).unwrap_or_else(|| panic!("no variable {name}"));
        MultiPoly::var(self.field, self.names.clone(), i)
    }

    /// Continuant of the named variables.
    fn p(&self, vars: &[String]) -> MultiPoly {
        let idx: Vec<usize> = vars.iter().map(|n| self.names.iter().position(|m| m == n).unwrap()).collect();
        continuant_vars(self.field, &self.names, &idx)
    }

    fn one(&self) -> MultiPoly {
        MultiPoly::one(self.field, self.names.clone())
    }

    fn finish(
        self,
        kind: DynkinType,
        rank: usize,
        gens: Vec<MultiPoly>,
        roles: &[&str],
        meaning: Vec<(String, String)>,
    ) -> Result<Presentation> {
        Ok(Presentation {
            kind,
            rank,
            ideal: Ideal::new(self.field, self.names, gens)?,
            expected_dimension: rank,
            generator_roles: roles.iter().map(|r| r.to_string()).collect(),
            variable_meaning: meaning,
        })
    }
}

fn names_of(prefix: &str, range: std::ops::RangeInclusive<usize>) -> Vec<String> {
    range.map(|i| format!("{prefix}{i}")).collect()
}

fn pairs(list: &[(&str, String)]) -> Vec<(String, String)> {
    list.iter().map(|(a, b)| (a.to_string(), b.clone())).collect()
}

/// `z_1 = x_1`, `z_{k+1} = y_k`.
fn continuant_chain_meaning(count: usize) -> Vec<(String, String)> {
    (1..=count).map(|i| (format!("z{i}"), if i == 1 { "x1".to_string() } else { format!("y{}", i - 1) })).collect()
}

/// The reduced presentation of the given type and rank over `field`.
pub fn reduced_presentation(kind: DynkinType, n: usize, field: FieldSpec) -> Result<Presentation> {
    kind.check_rank(n)?;
    match kind {
        DynkinType::A => {
            let z = names_of("z", 1..=n + 1);
            let b = Builder::new(field, z.clone());
            let f = b.p(&z).sub(&b.one());
            b.finish(kind, n, vec![f], &["last exchange relation after x_k = P_k(x_1, y_1..y_(k-1))"], continuant_chain_meaning(n + 1))
        }
        DynkinType::B => {
            let mut all = names_of("z", 1..=n - 1);
            all.extend(names_of("u", 1..=3));
            let b = Builder::new(field, all);
            let z = names_of("z", 1..=n - 1);
            let (u1, u2, u3) = (b.v("u1"), b.v("u2"), b.v("u3"));
            let u1u2m1 = u1.mul(&u2).sub(&b.one());
            let g = u1u2m1.mul(&u3).sub(&u1.pow(2)).sub(&b.p(&z[..n - 2]));
            let h = u1u2m1.sub(&b.p(&z));
            let mut meaning = continuant_chain_meaning(n - 1);
            meaning.extend(pairs(&[("u1", format!("x{n}")), ("u2", format!("y{n}")), ("u3", format!("y{}", n - 1))]));
            b.finish(
                kind,
                n,
                vec![g, h],
                &["exchange relation at n-1 plus y_(n-1) times the one at n", "exchange relation at n"],
                meaning,
            )
        }
        DynkinType::C => {
            let z = names_of("z", 1..=n + 1);
            let b = Builder::new(field, z.clone());
            let f = b.p(&z[..n]).mul(&b.v(&z[n])).sub(&b.p(&z[..n - 1]).pow(2)).sub(&b.one());
            b.finish(kind, n, vec![f], &["last exchange relation after x_k = P_k(x_1, y_1..y_(k-1))"], continuant_chain_meaning(n + 1))
        }
        DynkinType::D => {
            let mut all = names_of("u", 1..=4);
            all.extend(names_of("z", 1..=n - 2));
            let b = Builder::new(field, all);
            let z = names_of("z", 1..=n - 2);
            let (u1, u2, u3, u4) = (b.v("u1"), b.v("u2"), b.v("u3"), b.v("u4"));
            let u1u2 = u1.mul(&u2);
            let u3u4 = u3.mul(&u4);
            let h1 = u1u2.sub(&u3u4).sub(&u1u2.mul(&u3u4)).sub(&u2.mul(&u4).mul(&b.p(&z[..n - 3])));
            let h2 = u3u4.sub(&b.p(&z)).sub(&b.one());
            let mut meaning = pairs(&[
                ("u1", format!("x{n} - y{}*y{}", n - 2, n - 1)),
                ("u2", format!("y{n}")),
                ("u3", format!("x{}", n - 1)),
                ("u4", format!("y{}", n - 1)),
            ]);
            meaning.extend(continuant_chain_meaning(n - 2));
            b.finish(
                kind,
                n,
                vec![h1, h2],
                &[
                    "difference of the exchange relations at n and n-1, with y_(n-2) eliminated",
                    "exchange relation at n-1",
                ],
                meaning,
            )
        }
        DynkinType::E6 | DynkinType::E7 | DynkinType::E8 => {
            // Branch vertex b, arm tip t beyond it, leaf l below it: E6 (3,6,4), E7 (4,7,5), E8 (5,8,6).
            let branch = n - 3;
            let leaf = n - 2;
            let tip = n;
            let mut all = vec!["x1".to_string(), format!("x{leaf}"), format!("x{tip}")];
            all.extend(names_of("y", 1..=n));
            let b = Builder::new(field, all);
            let chain = |len: usize| {
                let mut v = vec!["x1".to_string()];
                v.extend(names_of("y", 1..=len - 1));
                v
            };
            let leaf_pair = b.p(&[format!("x{leaf}"), format!("y{leaf}")]);
            let h1 = b.p(&chain(branch)).sub(&leaf_pair);
            let h2 = leaf_pair
                .mul(&b.v(&format!("y{branch}")))
                .sub(&b.v(&format!("x{leaf}")).mul(&b.p(&[format!("x{tip}"), format!("y{tip}")])))
                .sub(&b.p(&chain(branch - 1)));
            let h3 = b.p(&[format!("x{tip}"), format!("y{tip}"), format!("y{}", tip - 1)]).sub(&leaf_pair);
            b.finish(
                kind,
                n,
                vec![h1, h2, h3],
                &[
                    "long arm continuant against the leaf at the branch vertex",
                    "exchange relation at the branch vertex",
                    "short arm continuant against the leaf",
                ],
                Vec::new(),
            )
        }
        DynkinType::F4 => {
            let b = Builder::new(field, ["x", "y", "z", "w", "t"].iter().map(|s| s.to_string()).collect());
            let f = MultiPoly::parse(
                field,
                b.names.clone(),
                "x*y*z*w*t - x^2*y*t^2 - x*y*z - y*z*w + 2*x*y*t - x*w*t + x - y + w - 1",
            )?;
            b.finish(kind, n, vec![f], &["lower-bound ideal with x1, x2, x3 eliminated"], F4_RENAME.iter().map(|(a, r)| (r.to_string(), a.to_string())).collect())
        }
        DynkinType::G2 => {
            let b = Builder::new(field, ["x", "y", "z"].iter().map(|s| s.to_string()).collect());
            let f = MultiPoly::parse(field, b.names.clone(), "z^3 - x*y*z + y + 1")?;
            b.finish(
                kind,
                n,
                vec![f],
                &["first exchange relation after x1 = x2*y2 - 1"],
                pairs(&[("x", "y2".into()), ("y", "y1".into()), ("z", "x2".into())]),
            )
        }
        DynkinType::Star => {
            if n < 3 {
                return Err(AlgebraError::Unsupported(
                    "the star presentation needs n >= 3; St_2 is A_2".into(),
                ));
            }
            let z = names_of("z", 1..=2 * n - 2);
            let b = Builder::new(field, z.clone());
            let zv = |i: usize| b.v(&z[i - 1]);
            let z12 = zv(1).mul(&zv(2));
            let last = zv(2 * n - 3).mul(&zv(2 * n - 2));
            let odd = (1..n).fold(b.one(), |acc, l| acc.mul(&zv(2 * l - 1)));
            let h1 = z12.mul(&b.one().sub(&last).add(&odd)).add(&last);
            let mut gens = vec![h1];
            let mut roles = vec!["exchange relation at n-1 after substituting x_n and x_(n-1)".to_string()];
            for k in 2..=n - 2 {
                gens.push(z12.sub(&zv(2 * k - 1).mul(&zv(2 * k))));
                roles.push(format!("difference of the exchange relations at 1 and {k}"));
            }
            let mut meaning = Vec::new();
            for k in 1..=n - 2 {
                meaning.push((format!("z{}", 2 * k - 1), format!("x{k}")));
                meaning.push((format!("z{}", 2 * k), format!("y{k}")));
            }
            meaning.push((format!("z{}", 2 * n - 3), format!("y{}", n - 1)));
            let prod: Vec<String> = (1..=n - 2).map(|k| format!("x{k}")).collect();
            meaning.push((format!("z{}", 2 * n - 2), format!("y{n} + {}", prod.join("*"))));
            let role_refs: Vec<&str> = roles.iter().map(|s| s.as_str()).collect();
            b.finish(kind, n, gens, &role_refs, meaning)
        }
    }
}

/// Lower-bound variables of F4 kept after elimination, and their reduced names.
const F4_RENAME: [(&str, &str); 5] = [("x4", "x"), ("y1", "y"), ("y2", "z"), ("y3", "w"), ("y4", "t")];

/// How a reduced presentation is obtained from the lower-bound ideal: extra variables with
/// their defining expressions, the variables to eliminate, and the renaming of the rest.
struct Recipe {
    extra: Vec<(String, String)>,
    drop: Vec<String>,
    rename: Vec<(String, String)>,
}

fn recipe(p: &Presentation) -> Recipe {
    let n = p.rank;
    let xs = |r: std::ops::RangeInclusive<usize>| names_of("x", r);
    let chain_rename = |count: usize| -> Vec<(String, String)> {
        continuant_chain_meaning(count).into_iter().map(|(z, raw)| (raw, z)).collect()
    };
    match p.kind {
        DynkinType::A | DynkinType::C => Recipe { extra: vec![], drop: xs(2..=n), rename: chain_rename(n + 1) },
        DynkinType::B => {
            let mut rename = chain_rename(n - 1);
            rename.push((format!("x{n}"), "u1".into()));
            rename.push((format!("y{n}"), "u2".into()));
            rename.push((format!("y{}", n - 1), "u3".into()));
            Recipe { extra: vec![], drop: xs(2..=n - 1), rename }
        }
        DynkinType::D => {
            let mut drop = xs(2..=n);
            drop.retain(|v| *v != format!("x{}", n - 1));
            drop.push(format!("y{}", n - 2));
            let mut rename = chain_rename(n - 2);
            rename.push(("u1".into(), "u1".into()));
            rename.push((format!("y{n}"), "u2".into()));
            rename.push((format!("x{}", n - 1), "u3".into()));
            rename.push((format!("y{}", n - 1), "u4".into()));
            Recipe { extra: vec![("u1".into(), format!("x{n} - y{}*y{}", n - 2, n - 1))], drop, rename }
        }
        DynkinType::E6 | DynkinType::E7 | DynkinType::E8 => {
            let keep = [1, n - 2, n];
            let drop = (1..=n).filter(|i| !keep.contains(i)).map(|i| format!("x{i}")).collect();
            let rename = p.names().iter().map(|v| (v.clone(), v.clone())).collect();
            Recipe { extra: vec![], drop, rename }
        }
        DynkinType::F4 => Recipe {
            extra: vec![],
            drop: xs(1..=3),
            rename: F4_RENAME.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        },
        DynkinType::G2 => Recipe {
            extra: vec![],
            drop: vec!["x1".into()],
            rename: vec![("y2".into(), "x".into()), ("y1".into(), "y".into()), ("x2".into(), "z".into())],
        },
        DynkinType::Star => {
            let prod: Vec<String> = (1..=n - 2).map(|k| format!("x{k}")).collect();
            let mut rename = Vec::new();
            for k in 1..=n - 2 {
                rename.push((format!("x{k}"), format!("z{}", 2 * k - 1)));
                rename.push((format!("y{k}"), format!("z{}", 2 * k)));
            }
            rename.push((format!("y{}", n - 1), format!("z{}", 2 * n - 3)));
            rename.push(("s".into(), format!("z{}", 2 * n - 2)));
            Recipe {
                extra: vec![("s".into(), format!("y{n} + {}", prod.join("*")))],
                drop: vec![format!("x{}", n - 1), format!("x{n}"), format!("y{n}")],
                rename,
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EliminationAudit {
    pub label: String,
    pub lower_bound: IdealJson,
    pub eliminated: Vec<String>,
    /// Elimination ideal, renamed into the reduced variables.
    pub computed: IdealJson,
    pub reduced: IdealJson,
    pub matches: bool,
}

/// Eliminates the substituted lower-bound variables and compares with the reduced presentation.
pub fn eliminate_check(kind: DynkinType, n: usize, field: FieldSpec, cfg: &GbConfig) -> Result<EliminationAudit> {
    let reduced = reduced_presentation(kind, n, field)?;
    let seed = dynkin_seed(kind, n)?;
    let lower = lower_bound_presentation(field, &seed.matrix);
    let r = recipe(&reduced);
    let mut all: Vec<String> = lower.names.to_vec();
    all.extend(r.extra.iter().map(|(v, _)| v.clone()));
    let names = var_names(&all);
    let base: Vec<usize> = (0..lower.names.len()).collect();
    let mut gens: Vec<MultiPoly> = lower.generators.iter().map(|g| g.embed(names.clone(), &base)).collect();
    for (v, def) in &r.extra {
        let var = MultiPoly::var(field, names.clone(), all.iter().position(|a| a == v).unwrap());
        gens.push(var.sub(&MultiPoly::parse(field, names.clone(), def)?));
    }
    let raw = Ideal::new(field, names.clone(), gens)?;
    let drop: Vec<usize> = r.drop.iter().map(|d| all.iter().position(|a| a == d).unwrap()).collect();
    let elim = eliminate(&raw, &drop, cfg)?;
    let target = reduced.names();
    let index_map = elim
        .names()
        .iter()
        .map(|kept| {
            let new = r.rename.iter().find(|(a, _)| a == kept).map(|(_, b)| b.clone()).ok_or_else(|| {
                AlgebraError::Invalid(format!("kept variable {kept} has no reduced name"))
            })?;
            target.iter().position(|t| *t == new).ok_or_else(|| AlgebraError::Invalid(format!("unknown reduced variable {new}")))
        })
        .collect::<Result<Vec<usize>>>()?;
    let computed = elim.embed(target.clone(), &index_map);
    let matches = ideals_equal(&computed, &reduced.ideal, cfg)?;
    let lower_ideal = Ideal::new(field, lower.names.clone(), lower.generators.clone())?;
    Ok(EliminationAudit {
        label: reduced.label(),
        lower_bound: lower_ideal.to_json(),
        eliminated: r.drop.clone(),
        computed: computed.to_json(),
        reduced: reduced.ideal.to_json(),
        matches,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionCheck {
    pub computed: Dimension,
    pub expected: usize,
    pub ok: bool,
}

pub fn verify_dimension(p: &Presentation, cfg: &GbConfig) -> Result<DimensionCheck> {
    let computed = ideal_dimension(&p.ideal, cfg)?;
    Ok(DimensionCheck { computed, expected: p.expected_dimension, ok: computed == Dimension::Dim(p.expected_dimension) })
}

/// Names of the lower-bound ring `x1..xn, y1..yn`.
pub fn lower_bound_names(n: usize) -> Vec<String> {
    let mut v = indexed_names("x", n);
    v.extend(indexed_names("y", n));
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;

    #[test]
    fn a3_and_g2_shapes() {
        let q = FieldSpec::rationals();
        let a3 = reduced_presentation(DynkinType::A, 3, q).unwrap();
        let r = PolyRing::new(q, &["z1", "z2", "z3", "z4"]);
        assert_eq!(a3.generators()[0], r.p("z1*z2*z3*z4 - z1*z2 - z1*z4 - z3*z4"));
        let g2 = reduced_presentation(DynkinType::G2, 2, q).unwrap();
        assert_eq!(g2.generators()[0].to_string(), "-x*y*z + z^3 + y + 1");
    }

    #[test]
    fn star4_shape() {
        let q = FieldSpec::rationals();
        let s = reduced_presentation(DynkinType::Star, 4, q).unwrap();
        let r = PolyRing::new(q, &["z1", "z2", "z3", "z4", "z5", "z6"]);
        assert_eq!(s.generators(), &[r.p("z1*z2*(1 - z5*z6 + z1*z3*z5) + z5*z6"), r.p("z1*z2 - z3*z4")]);
    }

    #[test]
    fn counts_match_codimension() {
        let q = FieldSpec::prime(5);
        for (kind, n, vars, gens) in [
            (DynkinType::A, 4, 5, 1),
            (DynkinType::B, 3, 5, 2),
            (DynkinType::C, 4, 5, 1),
            (DynkinType::D, 5, 7, 2),
            (DynkinType::E6, 6, 9, 3),
            (DynkinType::E7, 7, 10, 3),
            (DynkinType::E8, 8, 11, 3),
            (DynkinType::F4, 4, 5, 1),
            (DynkinType::G2, 2, 3, 1),
            (DynkinType::Star, 5, 8, 3),
        ] {
            let p = reduced_presentation(kind, n, q).unwrap();
            assert_eq!((p.names().len(), p.codimension()), (vars, gens), "{}", p.label());
        }
    }

    #[test]
    fn small_eliminations() {
        let cfg = GbConfig::default();
        for field in [FieldSpec::prime(5), FieldSpec::prime(2)] {
            for (kind, n) in [(DynkinType::A, 1), (DynkinType::A, 3), (DynkinType::G2, 2), (DynkinType::B, 2)] {
                let audit = eliminate_check(kind, n, field, &cfg).unwrap();
                assert!(audit.matches, "{audit:?}");
            }
        }
    }

    #[test]
    fn a3_elimination_is_the_hypersurface() {
        let audit = eliminate_check(DynkinType::A, 3, FieldSpec::rationals(), &GbConfig::default()).unwrap();
        assert_eq!(audit.computed.gens.len(), 1);
        assert_eq!(audit.eliminated, vec!["x2", "x3"]);
    }

    #[test]
    fn dimensions_small() {
        let cfg = GbConfig::default();
        for (kind, n) in [(DynkinType::A, 5), (DynkinType::G2, 2), (DynkinType::D, 4), (DynkinType::Star, 4)] {
            let p = reduced_presentation(kind, n, FieldSpec::prime(5)).unwrap();
            assert!(verify_dimension(&p, &cfg).unwrap().ok, "{}", p.label());
        }
    }

    #[test]
    fn markdown_lists_every_generator() {
        let p = reduced_presentation(DynkinType::D, 4, FieldSpec::rationals()).unwrap();
        let md = p.to_markdown();
        assert!(md.contains("| 1 |") && md.contains("| 2 |"));
        assert!(md.contains("x4 - y2*y3"));
    }
}
