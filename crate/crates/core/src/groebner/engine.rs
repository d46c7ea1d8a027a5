//! Buchberger's algorithm on a compact internal representation.
//!
//! Polynomials are term vectors sorted in descending order. Pairs are pruned with the
//! Gebauer–Möller criteria and selected by the normal strategy.

use std::cmp::Ordering;

use smallvec::SmallVec;

use super::coeff::Coeffs;
use crate::error::{AlgebraError, BudgetStats, Result};

pub(crate) type Exps = SmallVec<[u16; 24]>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Mono {
    pub deg: u32,
    pub e: Exps,
}

impl Mono {
    pub fn one(n: usize) -> Mono {
        Mono { deg: 0, e: Exps::from_elem(0, n) }
    }

    pub fn from_exps(e: Exps) -> Mono {
        let deg = e.iter().map(|&x| x as u32).sum();
        Mono { deg, e }
    }

    #[inline]
    pub fn mask(&self) -> u64 {
        let mut m = 0u64;
        for (i, &x) in self.e.iter().enumerate() {
            if x > 0 {
                m |= 1 << (i % 64);
            }
        }
        m
    }

    #[inline]
    pub fn divides(&self, other: &Mono) -> bool {
        self.deg <= other.deg && self.e.iter().zip(&other.e).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let e: Exps = self.e.iter().zip(&other.e).map(|(a, b)| a.checked_add(*b).expect("exponent overflow in engine")).collect();
        Mono { deg: self.deg + other.deg, e }
    }

    /// `self / other`, assuming divisibility.
    pub fn div(&self, other: &Mono) -> Mono {
        let e: Exps = self.e.iter().zip(&other.e).map(|(a, b)| a - b).collect();
        Mono { deg: self.deg - other.deg, e }
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        let e: Exps = self.e.iter().zip(&other.e).map(|(a, b)| *a.max(b)).collect();
        Mono::from_exps(e)
    }

    pub fn coprime(&self, other: &Mono) -> bool {
        self.e.iter().zip(&other.e).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }
}

/// Term orders understood by the engine. `Block(k)`: variables `0..k` form the
/// first (larger) block, each block ordered by degrevlex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum EngineOrder {
    Lex,
    DegRevLex,
    Block(usize),
}

fn degrevlex_slice(a: &[u16], b: &[u16], da: u32, db: u32) -> Ordering {
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

impl EngineOrder {
    #[inline]
    pub fn cmp(&self, a: &Mono, b: &Mono) -> Ordering {
        match *self {
            EngineOrder::DegRevLex => degrevlex_slice(&a.e, &b.e, a.deg, b.deg),
            EngineOrder::Lex => a.e.cmp(&b.e),
            EngineOrder::Block(k) => {
                let da: u32 = a.e[..k].iter().map(|&x| x as u32).sum();
                let db: u32 = b.e[..k].iter().map(|&x| x as u32).sum();
                match degrevlex_slice(&a.e[..k], &b.e[..k], da, db) {
                    Ordering::Equal => degrevlex_slice(&a.e[k..], &b.e[k..], a.deg - da, b.deg - db),
                    o => o,
                }
            }
        }
    }
}

pub(crate) type Poly<C> = Vec<(Mono, C)>;

pub(crate) fn sort_poly<F: Coeffs>(_f: &F, ord: EngineOrder, p: &mut Poly<F::C>) {
    p.sort_by(|a, b| ord.cmp(&b.0, &a.0));
}

/// `a − c·m·b` for sorted polynomials.
pub(crate) fn sub_mul<F: Coeffs>(
    f: &F,
    ord: EngineOrder,
    a: &[(Mono, F::C)],
    c: &F::C,
    m: &Mono,
    b: &[(Mono, F::C)],
) -> Poly<F::C> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    let mut bj: Option<Mono> = b.first().map(|t| t.0.mul(m));
    while i < a.len() || j < b.len() {
        match (i < a.len(), &bj) {
            (true, Some(bm)) => match ord.cmp(&a[i].0, bm) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let v = f.neg(&f.mul(c, &b[j].1));
                    out.push((bm.clone(), v));
                    j += 1;
                    bj = b.get(j).map(|t| t.0.mul(m));
                }
                Ordering::Equal => {
                    let v = f.sub(&a[i].1, &f.mul(c, &b[j].1));
                    if !f.is_zero(&v) {
                        out.push((a[i].0.clone(), v));
                    }
                    i += 1;
                    j += 1;
                    bj = b.get(j).map(|t| t.0.mul(m));
                }
            },
            (true, None) => {
                out.extend_from_slice(&a[i..]);
                break;
            }
            (false, Some(bm)) => {
                let v = f.neg(&f.mul(c, &b[j].1));
                out.push((bm.clone(), v));
                j += 1;
                bj = b.get(j).map(|t| t.0.mul(m));
            }
            (false, None) => break,
        }
    }
    out
}

pub(crate) fn make_monic<F: Coeffs>(f: &F, p: &mut Poly<F::C>) {
    if let Some(lc) = p.first().map(|t| t.1.clone()) {
        if !f.is_one(&lc) {
            let inv = f.inv(&lc);
            for t in p.iter_mut() {
                t.1 = f.mul(&t.1, &inv);
            }
        }
    }
}

struct Reducer<'a, C> {
    lm: &'a Mono,
    mask: u64,
    poly: &'a [(Mono, C)],
}

fn find_reducer<'a, C>(reducers: &'a [Reducer<'a, C>], m: &Mono, mask: u64) -> Option<&'a Reducer<'a, C>> {
    reducers.iter().find(|r| r.mask & !mask == 0 && r.lm.divides(m))
}

/// Full normal form of `p` modulo monic polynomials `basis` (all sorted under `ord`).
pub(crate) fn normal_form<F: Coeffs>(
    f: &F,
    ord: EngineOrder,
    p: Poly<F::C>,
    basis: &[&Poly<F::C>],
) -> Poly<F::C> {
    let reducers: Vec<Reducer<F::C>> = basis
        .iter()
        .filter(|b| !b.is_empty())
        .map(|b| Reducer { lm: &b[0].0, mask: b[0].0.mask(), poly: &b[..] })
        .collect();
    let mut rest = p;
    let mut done: Poly<F::C> = Vec::new();
    let mut start = 0usize;
    loop {
        if start >= rest.len() {
            break;
        }
        let (m, c) = (&rest[start].0, &rest[start].1);
        match find_reducer(&reducers, m, m.mask()) {
            Some(r) => {
                let q = m.div(r.lm);
                let c = c.clone();
                // Leading terms cancel; merge the tails.
                let tail = sub_mul(f, ord, &rest[start + 1..], &c, &q, &r.poly[1..]);
                rest = tail;
                start = 0;
            }
            None => {
                done.push(rest[start].clone());
                start += 1;
            }
        }
    }
    done
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selection {
    Normal,
    Sugar,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
    sugar: u32,
}

struct Entry<C> {
    poly: Poly<C>,
    sugar: u32,
}

pub(crate) struct GbOutcome<C> {
    pub basis: Vec<Poly<C>>,
    pub pairs_reduced: usize,
}

/// Reduced Gröbner basis of `gens`. The first `base` generators must already form a
/// reduced Gröbner basis under `ord`; no pairs among them are formed.
pub(crate) fn groebner<F: Coeffs>(
    f: &F,
    ord: EngineOrder,
    nvars: usize,
    gens: Vec<Poly<F::C>>,
    base: usize,
    max_pairs: usize,
    selection: Selection,
) -> Result<GbOutcome<F::C>> {
    let mut state = State { f, ord, entries: Vec::new(), active: Vec::new(), pairs: Vec::new(), reduced: 0 };
    let unit = || GbOutcome { basis: vec![vec![(Mono::one(nvars), f.one())]], pairs_reduced: 0 };
    for (k, mut g) in gens.into_iter().enumerate() {
        sort_poly(f, ord, &mut g);
        g.retain(|t| !f.is_zero(&t.1));
        if k >= base {
            let basis: Vec<&Poly<F::C>> = state.active.iter().map(|&a| &state.entries[a].poly).collect();
            g = normal_form(f, ord, g, &basis);
        }
        if g.is_empty() {
            continue;
        }
        if g[0].0.is_one() {
            return Ok(unit());
        }
        make_monic(f, &mut g);
        let sugar = g.iter().map(|t| t.0.deg).max().unwrap_or(0);
        if k < base {
            state.entries.push(Entry { poly: g, sugar });
            state.active.push(state.entries.len() - 1);
        } else {
            state.insert(g, sugar);
        }
    }
    while !state.pairs.is_empty() {
        if state.reduced >= max_pairs {
            return Err(AlgebraError::Budget(BudgetStats {
                pairs_reduced: state.reduced,
                basis_size: state.active.len(),
                pairs_pending: state.pairs.len(),
            }));
        }
        let pi = state.select(selection);
        let pair = state.pairs.swap_remove(pi);
        state.reduced += 1;
        let s = state.spoly(&pair);
        let basis: Vec<&Poly<F::C>> = state.active.iter().map(|&a| &state.entries[a].poly).collect();
        let mut h = normal_form(f, ord, s, &basis);
        if h.is_empty() {
            continue;
        }
        if h[0].0.is_one() {
            let mut out = unit();
            out.pairs_reduced = state.reduced;
            return Ok(out);
        }
        make_monic(f, &mut h);
        let sugar = pair.sugar.max(h[0].0.deg);
        state.insert(h, sugar);
    }
    let reduced = state.reduced;
    let basis = state.finish();
    Ok(GbOutcome { basis, pairs_reduced: reduced })
}

struct State<'a, F: Coeffs> {
    f: &'a F,
    ord: EngineOrder,
    entries: Vec<Entry<F::C>>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    reduced: usize,
}

impl<'a, F: Coeffs> State<'a, F> {
    fn lm(&self, i: usize) -> &Mono {
        &self.entries[i].poly[0].0
    }

    fn select(&self, selection: Selection) -> usize {
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let a = &self.pairs[k];
            let b = &self.pairs[best];
            let better = match selection {
                Selection::Normal => match self.ord.cmp(&a.lcm, &b.lcm) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => (a.i, a.j) < (b.i, b.j),
                },
                Selection::Sugar => match a.sugar.cmp(&b.sugar) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => match self.ord.cmp(&a.lcm, &b.lcm) {
                        Ordering::Less => true,
                        Ordering::Greater => false,
                        Ordering::Equal => (a.i, a.j) < (b.i, b.j),
                    },
                },
            };
            if better {
                best = k;
            }
        }
        best
    }

    fn spoly(&self, p: &Pair) -> Poly<F::C> {
        let a = &self.entries[p.i].poly;
        let b = &self.entries[p.j].poly;
        let ma = p.lcm.div(&a[0].0);
        let mb = p.lcm.div(&b[0].0);
        let ta: Poly<F::C> = a[1..].iter().map(|(m, c)| (m.mul(&ma), c.clone())).collect();
        sub_mul(self.f, self.ord, &ta, &self.f.one(), &mb, &b[1..])
    }

    /// Gebauer–Möller update with the new element `h`.
    fn insert(&mut self, h: Poly<F::C>, sugar: u32) {
        self.entries.push(Entry { poly: h, sugar });
        let hi = self.entries.len() - 1;
        let hlm = self.lm(hi).clone();
        let cands: Vec<(usize, Mono, bool)> = self
            .active
            .iter()
            .map(|&g| {
                let glm = self.lm(g);
                (g, glm.lcm(&hlm), glm.coprime(&hlm))
            })
            .collect();
        let mut kept: Vec<usize> = Vec::new();
        for k in 0..cands.len() {
            let (_, ref l, coprime) = cands[k];
            if coprime {
                kept.push(k);
                continue;
            }
            let dominated = cands[k + 1..].iter().any(|c| c.1.divides(l)) || kept.iter().any(|&d| cands[d].1.divides(l));
            if !dominated {
                kept.push(k);
            }
        }
        // Old pairs whose lcm is divisible by LM(h) strictly.
        let entries = &self.entries;
        self.pairs.retain(|p| {
            if !hlm.divides(&p.lcm) {
                return true;
            }
            let li = entries[p.i].poly[0].0.lcm(&hlm);
            let lj = entries[p.j].poly[0].0.lcm(&hlm);
            li == p.lcm || lj == p.lcm
        });
        for k in kept {
            let (g, ref l, coprime) = cands[k];
            if coprime {
                continue;
            }
            let sg = &self.entries[g];
            let sugar = (sg.sugar - sg.poly[0].0.deg).max(sugar - hlm.deg) + l.deg;
            self.pairs.push(Pair { i: g, j: hi, lcm: l.clone(), sugar });
        }
        let entries = &self.entries;
        self.active.retain(|&g| !hlm.divides(&entries[g].poly[0].0));
        self.active.push(hi);
    }

    fn finish(self) -> Vec<Poly<F::C>> {
        let f = self.f;
        let ord = self.ord;
        let mut polys: Vec<Poly<F::C>> = self.active.iter().map(|&a| self.entries[a].poly.clone()).collect();
        polys.sort_by(|a, b| ord.cmp(&a[0].0, &b[0].0));
        let mut out = Vec::with_capacity(polys.len());
        for k in 0..polys.len() {
            let others: Vec<&Poly<F::C>> = polys.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, p)| p).collect();
            let head = polys[k][0].clone();
            let tail = normal_form(f, ord, polys[k][1..].to_vec(), &others);
            let mut p = vec![head];
            p.extend(tail);
            out.push(p);
        }
        out
    }
}
