//! Intersection, quotient, saturation and elimination.
//!
//! Quotients and saturations by linear forms use a coordinate change that
//! makes the form the last variable of a degree reverse lexicographic order:
//! a homogeneous Gröbner basis then stays a basis after dividing each element
//! by the largest possible power of that variable.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{groebner, groebner_weighted};
use crate::ideal::Ideal;
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::{Polynomial, Term};
use crate::random::SeedStream;
use crate::ring::PolyRing;

/// Reinterprets `f` (which must not involve the dropped variables) in
/// `target`; `map[i]` is the new slot of variable `i`, or `None` if dropped.
pub(crate) fn contract(f: &Polynomial, target: &Arc<PolyRing>, map: &[Option<usize>]) -> Polynomial {
    let terms = f
        .terms()
        .iter()
        .map(|t| {
            let mut m = Monomial::ONE;
            for (i, slot) in map.iter().enumerate() {
                match slot {
                    Some(j) => m.set_exp(*j, t.mono.exp(i)),
                    None => debug_assert_eq!(t.mono.exp(i), 0),
                }
            }
            Term {
                coeff: t.coeff,
                mono: m,
            }
        })
        .collect();
    Polynomial::from_terms(target, terms)
}

/// `I ∩ J` via `t I + (1 - t) J` and elimination of `t`.
pub fn intersect(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.check_ring(j.ring())?;
    let ring = i.ring();
    if i.is_zero() || j.is_unit() {
        return Ok(i.clone());
    }
    if j.is_zero() || i.is_unit() {
        return Ok(j.clone());
    }
    let n = ring.nvars();
    let mut vars = vec![ring.fresh_name("t")];
    vars.extend(ring.vars().iter().cloned());
    let big = PolyRing::with_field(vars, ring.field(), MonomialOrder::Elimination(1))?;
    let up: Vec<usize> = (1..=n).collect();
    let t = Polynomial::var(&big, 0);
    let one_minus_t = &Polynomial::constant(&big, 1) - &t;
    let mut gens = Vec::new();
    for g in i.gb() {
        gens.push(t.try_mul(&g.remap(&big, &up))?);
    }
    for g in j.gb() {
        let h = g.remap(&big, &up);
        gens.push(one_minus_t.try_mul(&h)?);
    }
    let mut weights = vec![0u32];
    weights.extend(std::iter::repeat(1).take(n));
    let gb = groebner_weighted(&big, &gens, &weights)?;
    let mut back: Vec<Option<usize>> = vec![None];
    back.extend((0..n).map(Some));
    let kept: Vec<Polynomial> = gb
        .iter()
        .filter(|g| g.terms().iter().all(|t| t.mono.exp(0) == 0))
        .map(|g| contract(g, ring, &back))
        .collect();
    Ideal::new(ring, kept)
}

pub fn intersect_all(ideals: &[Ideal]) -> Result<Ideal> {
    let (first, rest) = ideals
        .split_first()
        .ok_or_else(|| Error::Precondition("intersection of an empty family".into()))?;
    let mut acc = first.clone();
    for j in rest {
        acc = intersect(&acc, j)?;
        acc = acc.minimized();
    }
    Ok(acc)
}

/// Coordinate change sending a linear form to the last variable.
pub(crate) struct LinearChart {
    pub(crate) target: Arc<PolyRing>,
    pub(crate) forward: Vec<Polynomial>,
    pub(crate) backward: Vec<Polynomial>,
}

impl LinearChart {
    pub(crate) fn new(ring: &Arc<PolyRing>, coeffs: &[u32]) -> Result<Self> {
        let n = ring.nvars();
        let fld = ring.field();
        let k = (0..n)
            .rev()
            .find(|&i| coeffs[i] != 0)
            .ok_or(Error::ZeroDivisor)?;
        let target = ring.with_order(MonomialOrder::DegRevLex)?;
        // slot of x_i for i != k
        let slot = |i: usize| if i < k { i } else { i - 1 };
        let inv = fld.inv(coeffs[k])?;
        let forward = (0..n)
            .map(|i| {
                if i != k {
                    return Polynomial::var(&target, slot(i));
                }
                // x_k = (y_last - sum_{i != k} c_i y_slot(i)) / c_k
                let mut c = vec![0u32; n];
                c[n - 1] = inv;
                for (j, &cj) in coeffs.iter().enumerate() {
                    if j != k && cj != 0 {
                        c[slot(j)] = fld.neg(fld.mul(cj, inv));
                    }
                }
                Polynomial::linear(&target, &c)
            })
            .collect();
        let backward = (0..n)
            .map(|s| {
                if s == n - 1 {
                    Polynomial::linear(ring, coeffs)
                } else {
                    let i = if s < k { s } else { s + 1 };
                    Polynomial::var(ring, i)
                }
            })
            .collect();
        Ok(LinearChart {
            target,
            forward,
            backward,
        })
    }

    pub(crate) fn to_chart(&self, f: &Polynomial) -> Result<Polynomial> {
        f.substitute(&self.target, &self.forward)
    }

    pub(crate) fn from_chart(&self, ring: &Arc<PolyRing>, f: &Polynomial) -> Result<Polynomial> {
        f.substitute(ring, &self.backward)
    }

    /// Gröbner basis of the image of `i`.
    pub(crate) fn basis(&self, i: &Ideal) -> Result<Vec<Polynomial>> {
        let gens = i
            .gens()
            .iter()
            .map(|g| self.to_chart(g))
            .collect::<Result<Vec<_>>>()?;
        groebner(&self.target, &gens)
    }
}

fn strip_last(f: &Polynomial, max: Option<u16>) -> Polynomial {
    let n = f.ring().nvars();
    let e = f.terms().iter().map(|t| t.mono.exp(n - 1)).min().unwrap_or(0);
    let e = max.map_or(e, |m| e.min(m));
    if e == 0 {
        return f.clone();
    }
    let terms = f
        .terms()
        .iter()
        .map(|t| {
            let mut m = t.mono;
            m.set_exp(n - 1, t.mono.exp(n - 1) - e);
            Term {
                coeff: t.coeff,
                mono: m,
            }
        })
        .collect();
    Polynomial::from_terms(f.ring(), terms)
}

fn linear_colon(i: &Ideal, coeffs: &[u32], max: Option<u16>) -> Result<Ideal> {
    let ring = i.ring();
    let chart = LinearChart::new(ring, coeffs)?;
    let gb = chart.basis(i)?;
    let gens = gb
        .iter()
        .map(|g| chart.from_chart(ring, &strip_last(g, max)))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(ring, gens)
}

/// `I : f`.
pub fn quotient(i: &Ideal, f: &Polynomial) -> Result<Ideal> {
    i.check_ring(f.ring())?;
    if f.is_zero() {
        return Ok(Ideal::unit(i.ring()));
    }
    if f.is_constant() {
        return Ok(i.clone());
    }
    if let Some(c) = f.linear_coeffs() {
        return linear_colon(i, &c, Some(1));
    }
    let principal = Ideal::new(i.ring(), vec![f.clone()])?;
    let cap = intersect(i, &principal)?;
    let gens = cap
        .gb()
        .iter()
        .map(|g| g.div_exact(f)?.ok_or_else(|| Error::verification("quotient", "inexact division")))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(i.ring(), gens)
}

/// `I : J`, the intersection of the quotients by generators of `J`.
pub fn quotient_ideal(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.check_ring(j.ring())?;
    let gens = j.gb();
    if gens.is_empty() {
        return Ok(Ideal::unit(i.ring()));
    }
    let parts = gens
        .iter()
        .map(|g| quotient(i, g))
        .collect::<Result<Vec<_>>>()?;
    intersect_all(&parts)
}

/// `I : f^∞`.
pub fn saturate(i: &Ideal, f: &Polynomial) -> Result<Ideal> {
    i.check_ring(f.ring())?;
    if f.is_zero() {
        return Ok(Ideal::unit(i.ring()));
    }
    if f.is_constant() {
        return Ok(i.clone());
    }
    if let Some(c) = f.linear_coeffs() {
        return linear_colon(i, &c, None);
    }
    let mut cur = i.minimized();
    loop {
        let next = quotient(&cur, f)?.minimized();
        if next.equals(&cur)? {
            return Ok(cur);
        }
        cur = next;
    }
}

/// `I : J^∞`, the intersection of saturations by generators of `J`.
pub fn saturate_ideal(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.check_ring(j.ring())?;
    let gens = j.gb();
    if gens.is_empty() {
        return Ok(Ideal::unit(i.ring()));
    }
    let parts = gens
        .iter()
        .map(|g| saturate(i, g))
        .collect::<Result<Vec<_>>>()?;
    intersect_all(&parts)
}

/// A random linear form with coefficients from `seed`.
pub fn random_linear_form(ring: &Arc<PolyRing>, seed: SeedStream) -> Polynomial {
    let f = ring.field();
    let mut rng = seed.rng();
    loop {
        let c = rng.vector(f, ring.nvars());
        if c.iter().any(|&x| x != 0) {
            return Polynomial::linear(ring, &c);
        }
    }
}

/// Saturation with respect to the irrelevant ideal, using a general linear
/// form: for homogeneous `I`, `I : m^∞ = I : h^∞` for general `h`.
pub fn saturate_irrelevant(i: &Ideal, seed: SeedStream) -> Result<Ideal> {
    let h = random_linear_form(i.ring(), seed.fork("saturate"));
    saturate(i, &h)
}

/// Certifies `I = I^sat` by checking `I : h = I` for a general linear form;
/// a true answer is a proof, since `I : m ⊆ I : h`.
pub fn is_saturated(i: &Ideal, seed: SeedStream) -> Result<bool> {
    if i.is_unit() {
        return Ok(true);
    }
    let h = random_linear_form(i.ring(), seed.fork("is-saturated"));
    quotient(i, &h)?.equals(i)
}

/// Eliminates the listed variables; the result lives in the ring of the
/// remaining variables (same relative order).
pub fn eliminate(i: &Ideal, vars: &[usize]) -> Result<(Arc<PolyRing>, Ideal)> {
    let ring = i.ring();
    let n = ring.nvars();
    let keep: Vec<usize> = (0..n).filter(|v| !vars.contains(v)).collect();
    let mut perm = vars.to_vec();
    perm.extend(keep.iter().copied());
    let names = perm.iter().map(|&v| ring.vars()[v].clone()).collect();
    let big = PolyRing::with_field(names, ring.field(), MonomialOrder::Elimination(vars.len()))?;
    let mut to_big = vec![0usize; n];
    for (slot, &v) in perm.iter().enumerate() {
        to_big[v] = slot;
    }
    let gens: Vec<Polynomial> = i.gens().iter().map(|g| g.remap(&big, &to_big)).collect();
    let gb = groebner(&big, &gens)?;
    let small = PolyRing::with_field(
        keep.iter().map(|&v| ring.vars()[v].clone()).collect(),
        ring.field(),
        MonomialOrder::DegRevLex,
    )?;
    let back: Vec<Option<usize>> = (0..n)
        .map(|slot| slot.checked_sub(vars.len()))
        .collect();
    let kept = gb
        .iter()
        .filter(|g| {
            g.terms()
                .iter()
                .all(|t| (0..vars.len()).all(|s| t.mono.exp(s) == 0))
        })
        .map(|g| contract(g, &small, &back))
        .collect();
    Ok((small.clone(), Ideal::new(&small, kept)?))
}

/// `I R[t]` for a new last variable `t`.
pub fn extend_ring(i: &Ideal, name: &str) -> Result<(Arc<PolyRing>, Ideal)> {
    let ring = i.ring();
    let big = ring.extend(name)?;
    let map: Vec<usize> = (0..ring.nvars()).collect();
    let gens = i.gens().iter().map(|g| g.remap(&big, &map)).collect();
    Ok((big.clone(), Ideal::new(&big, gens)?))
}

/// Image of `I` under `x_var = 0`, as an ideal of the ring without `x_var`.
pub fn specialize_zero(i: &Ideal, var: usize) -> Result<(Arc<PolyRing>, Ideal)> {
    let ring = i.ring();
    let small = ring.drop_var(var)?;
    let map: Vec<Option<usize>> = (0..ring.nvars())
        .map(|v| match v.cmp(&var) {
            std::cmp::Ordering::Less => Some(v),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(v - 1),
        })
        .collect();
    let gens = i
        .gens()
        .iter()
        .map(|g| {
            let terms: Vec<Term> = g
                .terms()
                .iter()
                .filter(|t| t.mono.exp(var) == 0)
                .copied()
                .collect();
            contract(&Polynomial::from_terms(ring, terms), &small, &map)
        })
        .collect();
    Ok((small.clone(), Ideal::new(&small, gens)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(n: usize) -> Arc<PolyRing> {
        PolyRing::standard(n, 32003).unwrap()
    }

    fn p(r: &Arc<PolyRing>, s: &str) -> Polynomial {
        crate::parse::parse_polynomial(r, s).unwrap()
    }

    #[test]
    fn intersection_of_monomial_ideals() {
        let r = ring(3);
        let i = Ideal::parse(&r, &["x0^2", "x1"]).unwrap();
        let j = Ideal::parse(&r, &["x0", "x1^2"]).unwrap();
        let k = intersect(&i, &j).unwrap();
        let expect = Ideal::parse(&r, &["x0^2", "x0*x1", "x1^2"]).unwrap();
        assert!(k.equals(&expect).unwrap());
    }

    #[test]
    fn intersection_of_two_points() {
        let r = ring(3);
        let a = Ideal::parse(&r, &["x1", "x2"]).unwrap();
        let b = Ideal::parse(&r, &["x0", "x2"]).unwrap();
        let k = intersect(&a, &b).unwrap();
        assert_eq!(k.degree().unwrap(), 2);
        assert!(k.equals(&Ideal::parse(&r, &["x2", "x0*x1"]).unwrap()).unwrap());
    }

    #[test]
    fn quotient_by_nonlinear_and_linear() {
        let r = ring(3);
        let i = Ideal::parse(&r, &["x0^2*x1", "x0*x2^3"]).unwrap();
        let q = quotient(&i, &p(&r, "x0^2")).unwrap();
        assert!(q.equals(&Ideal::parse(&r, &["x1", "x2^3"]).unwrap()).unwrap());
        let q1 = quotient(&i, &p(&r, "x0")).unwrap();
        assert!(q1.equals(&Ideal::parse(&r, &["x0*x1", "x2^3"]).unwrap()).unwrap());
    }

    #[test]
    fn quotient_by_general_linear_form() {
        let r = ring(3);
        // (l*x0, l*x1) : l = (x0, x1) for l = x0 + 2 x1 + 3 x2
        let l = p(&r, "x0 + 2*x1 + 3*x2");
        let i = Ideal::new(&r, vec![&l * &p(&r, "x0"), &l * &p(&r, "x1")]).unwrap();
        let q = quotient(&i, &l).unwrap();
        assert!(q.equals(&Ideal::parse(&r, &["x0", "x1"]).unwrap()).unwrap());
        // compare with the generic route
        let principal = Ideal::new(&r, vec![l.clone()]).unwrap();
        let cap = intersect(&i, &principal).unwrap();
        let gens: Vec<_> = cap.gb().iter().map(|g| g.div_exact(&l).unwrap().unwrap()).collect();
        assert!(Ideal::new(&r, gens).unwrap().equals(&q).unwrap());
    }

    #[test]
    fn saturation_removes_embedded_point() {
        let r = ring(3);
        // line x0 = 0 with an embedded component at the origin of the chart x2 = 1
        let i = Ideal::parse(&r, &["x0^2", "x0*x1"]).unwrap();
        let s = saturate(&i, &p(&r, "x1")).unwrap();
        assert!(s.equals(&Ideal::parse(&r, &["x0"]).unwrap()).unwrap());
        let m = Ideal::irrelevant(&r);
        // the point x0 = x1 = 0 with an embedded fat point
        let junk = Ideal::parse(&r, &["x0^2", "x1", "x0*x2"]).unwrap();
        assert!(!is_saturated(&junk, SeedStream::new(1)).unwrap());
        let sat = saturate_irrelevant(&junk, SeedStream::new(1)).unwrap();
        assert!(sat.equals(&Ideal::parse(&r, &["x0", "x1"]).unwrap()).unwrap());
        assert!(saturate_ideal(&junk, &m).unwrap().equals(&sat).unwrap());
    }

    #[test]
    fn elimination_projects_away_a_variable() {
        let r = PolyRing::new(
            ["s", "a", "b", "c"].iter().map(|s| s.to_string()).collect(),
            32003,
            MonomialOrder::DegRevLex,
        )
        .unwrap();
        let i = Ideal::parse(&r, &["s - a", "s*b - c^2", "s^2 - b*c"]).unwrap();
        let (small, e) = eliminate(&i, &[0]).unwrap();
        assert_eq!(small.vars(), &["a", "b", "c"]);
        let expect = Ideal::parse(&small, &["a*b - c^2", "a^2 - b*c"]).unwrap();
        assert!(e.equals(&expect).unwrap());
    }

    #[test]
    fn specialization_and_extension() {
        let r = ring(3);
        let i = Ideal::parse(&r, &["x0*x2 + x1^2", "x2^2"]).unwrap();
        let (small, j) = specialize_zero(&i, 2).unwrap();
        assert_eq!(small.nvars(), 2);
        assert!(j.equals(&Ideal::parse(&small, &["x1^2"]).unwrap()).unwrap());
        let (big, k) = extend_ring(&i, "t").unwrap();
        assert_eq!(big.nvars(), 4);
        assert_eq!(k.krull_dim(), i.krull_dim() + 1);
    }
}
