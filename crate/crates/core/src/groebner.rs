//! Buchberger's algorithm with the Gebauer–Möller pair criteria and the sugar
//! selection strategy, plus the division algorithm.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MAX_VARS};
use crate::poly::{kernel, same_ring, Ctx, Polynomial, Term};
use crate::ring::PolyRing;

/// Bit signature monotone under divisibility: `a | b` implies `mask(a) ⊆ mask(b)`.
#[inline]
fn divmask(m: &Monomial) -> u64 {
    let mut mask = 0u64;
    for (i, &e) in m.exps().iter().enumerate().take(MAX_VARS) {
        let base = 4 * i;
        if e >= 1 {
            mask |= 1 << base;
        }
        if e >= 2 {
            mask |= 1 << (base + 1);
        }
        if e >= 4 {
            mask |= 1 << (base + 2);
        }
        if e >= 8 {
            mask |= 1 << (base + 3);
        }
    }
    mask
}

struct Reducer<'a> {
    lm: Monomial,
    mask: u64,
    inv_lc: u32,
    terms: &'a [Term],
}

fn find_reducer<'a>(reducers: &'a [Reducer<'a>], m: &Monomial) -> Option<&'a Reducer<'a>> {
    let mask = divmask(m);
    reducers
        .iter()
        .find(|r| r.mask & !mask == 0 && r.lm.divides(m))
}

/// Full reduction of `f`: repeatedly cancels the largest reducible term using
/// the first reducer (in list order) whose leading monomial divides it.
fn reduce_with(ctx: Ctx, f: Vec<Term>, reducers: &[Reducer<'_>], top_only: bool) -> Vec<Term> {
    let fld = ctx.field;
    let mut rest = f;
    let mut start = 0usize;
    let mut out: Vec<Term> = Vec::new();
    while start < rest.len() {
        let head = rest[start];
        match find_reducer(reducers, &head.mono) {
            Some(r) => {
                let m = r.lm.quotient_of(&head.mono);
                let c = fld.neg(fld.mul(head.coeff, r.inv_lc));
                rest = kernel::add_scaled(ctx, &rest[start..], c, &m, r.terms);
                start = 0;
            }
            None => {
                if top_only && out.is_empty() {
                    out.extend_from_slice(&rest[start..]);
                    return out;
                }
                out.push(head);
                start += 1;
            }
        }
    }
    out
}

fn make_reducers<'a>(ctx: Ctx, polys: impl Iterator<Item = &'a Vec<Term>>) -> Vec<Reducer<'a>> {
    polys
        .filter(|p| !p.is_empty())
        .map(|p| Reducer {
            lm: p[0].mono,
            mask: divmask(&p[0].mono),
            inv_lc: ctx.field.inv(p[0].coeff).expect("nonzero"),
            terms: p,
        })
        .collect()
}

/// Remainder of `f` on division by `divisors`.
///
/// The remainder has no term divisible by a leading monomial of a divisor, and
/// the procedure is a deterministic function of the divisor order.
pub fn normal_form(f: &Polynomial, divisors: &[Polynomial]) -> Result<Polynomial> {
    for g in divisors {
        if !same_ring(f.ring(), g.ring()) {
            return Err(Error::RingMismatch);
        }
    }
    let ctx = f.ctx();
    let owned: Vec<Vec<Term>> = divisors.iter().map(|g| g.terms().to_vec()).collect();
    let reducers = make_reducers(ctx, owned.iter());
    let r = reduce_with(ctx, f.terms().to_vec(), &reducers, false);
    Ok(Polynomial::from_sorted(f.ring(), r))
}

#[derive(Clone, Copy)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Engine {
    ctx: Ctx,
    weights: Vec<u32>,
    polys: Vec<Vec<Term>>,
    lms: Vec<Monomial>,
    sugar: Vec<u32>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl Engine {
    fn wdeg(&self, m: &Monomial) -> u32 {
        m.weighted_degree(&self.weights)
    }

    fn poly_sugar(&self, f: &[Term]) -> u32 {
        f.iter().map(|t| self.wdeg(&t.mono)).max().unwrap_or(0)
    }

    fn reducers(&self) -> Vec<Reducer<'_>> {
        make_reducers(self.ctx, self.active.iter().map(|&k| &self.polys[k]))
    }

    fn insert(&mut self, mut h: Vec<Term>, sugar: u32) {
        kernel::make_monic(self.ctx, &mut h);
        let idx = self.polys.len();
        let lm_h = h[0].mono;
        self.lms.push(lm_h);
        self.polys.push(h);
        self.sugar.push(sugar);

        // Gebauer–Möller update.
        let cands: Vec<(usize, Monomial)> = self
            .active
            .iter()
            .map(|&g| (g, lm_h.lcm(&self.lms[g])))
            .collect();
        let mut keep: Vec<(usize, Monomial)> = Vec::new();
        for (k, &(g1, l1)) in cands.iter().enumerate() {
            let coprime = lm_h.is_coprime(&self.lms[g1]);
            let dominated = cands[k + 1..].iter().any(|&(_, l2)| l2.divides(&l1))
                || keep.iter().any(|&(_, l2)| l2.divides(&l1));
            if coprime || !dominated {
                keep.push((g1, l1));
            }
        }
        let new_pairs: Vec<Pair> = keep
            .into_iter()
            .filter(|&(g, _)| !lm_h.is_coprime(&self.lms[g]))
            .map(|(g, l)| {
                let s_h = sugar + self.wdeg(&l) - self.wdeg(&lm_h);
                let s_g = self.sugar[g] + self.wdeg(&l) - self.wdeg(&self.lms[g]);
                Pair {
                    i: g,
                    j: idx,
                    lcm: l,
                    sugar: s_h.max(s_g),
                }
            })
            .collect();
        let lms = &self.lms;
        self.pairs.retain(|p| {
            !(lm_h.divides(&p.lcm)
                && lms[p.i].lcm(&lm_h) != p.lcm
                && lms[p.j].lcm(&lm_h) != p.lcm)
        });
        self.pairs.extend(new_pairs);
        self.active.retain(|&g| !lm_h.divides(&lms[g]));
        self.active.push(idx);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let order = self.ctx.order;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            if a.sugar < b.sugar
                || (a.sugar == b.sugar && order.cmp(&a.lcm, &b.lcm) == std::cmp::Ordering::Less)
            {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, p: &Pair) -> Vec<Term> {
        let (f, g) = (&self.polys[p.i], &self.polys[p.j]);
        let mf = self.lms[p.i].quotient_of(&p.lcm);
        let mg = self.lms[p.j].quotient_of(&p.lcm);
        // both monic: S = mf*f - mg*g, leading terms cancel
        let a: Vec<Term> = f[1..]
            .iter()
            .map(|t| Term {
                coeff: t.coeff,
                mono: t.mono.mul(&mf),
            })
            .collect();
        kernel::add_scaled(self.ctx, &a, self.ctx.field.neg(1), &mg, &g[1..])
    }
}

/// Reduced Gröbner basis of the term vectors, sorted by ascending leading monomial.
///
/// `weights` only steer the sugar degree used to pick pairs; any positive or
/// zero weights give a correct result.
pub(crate) fn groebner_terms(ctx: Ctx, weights: &[u32], input: Vec<Vec<Term>>) -> Vec<Vec<Term>> {
    let mut eng = Engine {
        ctx,
        weights: weights.to_vec(),
        polys: Vec::new(),
        lms: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    let mut input: Vec<Vec<Term>> = input.into_iter().filter(|f| !f.is_empty()).collect();
    input.sort_by(|a, b| {
        let (sa, sb) = (eng.poly_sugar(a), eng.poly_sugar(b));
        sa.cmp(&sb).then_with(|| ctx.order.cmp(&a[0].mono, &b[0].mono))
    });
    for f in input {
        let s = eng.poly_sugar(&f);
        let r = {
            let reducers = eng.reducers();
            reduce_with(ctx, f, &reducers, false)
        };
        if r.is_empty() {
            continue;
        }
        if r[0].mono.is_one() {
            return vec![vec![Term {
                coeff: 1,
                mono: Monomial::ONE,
            }]];
        }
        eng.insert(r, s);
    }
    while let Some(pair) = eng.next_pair() {
        let s = eng.spoly(&pair);
        let r = {
            let reducers = eng.reducers();
            reduce_with(ctx, s, &reducers, false)
        };
        if r.is_empty() {
            continue;
        }
        if r[0].mono.is_one() {
            return vec![vec![Term {
                coeff: 1,
                mono: Monomial::ONE,
            }]];
        }
        eng.insert(r, pair.sugar);
    }
    // Active elements form a minimal basis; reduce the tails.
    let mut basis: Vec<Vec<Term>> = eng.active.iter().map(|&k| eng.polys[k].clone()).collect();
    basis.sort_by(|a, b| ctx.order.cmp(&a[0].mono, &b[0].mono));
    for k in 0..basis.len() {
        let head = basis[k][0];
        let tail = basis[k][1..].to_vec();
        let reduced = {
            let others: Vec<&Vec<Term>> = basis
                .iter()
                .enumerate()
                .filter(|&(l, _)| l != k)
                .map(|(_, b)| b)
                .collect();
            let reducers = make_reducers(ctx, others.into_iter());
            reduce_with(ctx, tail, &reducers, false)
        };
        let mut g = vec![head];
        g.extend(reduced);
        basis[k] = g;
    }
    basis
}

/// The reduced Gröbner basis of the ideal generated by `gens` (zeros dropped),
/// monic and sorted by ascending leading monomial.
pub fn groebner(ring: &Arc<PolyRing>, gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
    groebner_weighted(ring, gens, &[])
}

pub(crate) fn groebner_weighted(
    ring: &Arc<PolyRing>,
    gens: &[Polynomial],
    weights: &[u32],
) -> Result<Vec<Polynomial>> {
    for g in gens {
        if !same_ring(g.ring(), ring) {
            return Err(Error::RingMismatch);
        }
    }
    let ctx = Ctx::of(ring);
    let input = gens.iter().map(|g| g.terms().to_vec()).collect();
    Ok(groebner_terms(ctx, weights, input)
        .into_iter()
        .map(|t| Polynomial::from_sorted(ring, t))
        .collect())
}
