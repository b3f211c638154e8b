//! Sparse multivariate polynomials over GF(p).

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::ring::PolyRing;

/// A nonzero coefficient attached to a monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: u32,
    pub mono: Monomial,
}

/// Field and order bundled for the term-vector kernels.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Ctx {
    pub field: PrimeField,
    pub order: MonomialOrder,
}

impl Ctx {
    pub fn of(ring: &PolyRing) -> Self {
        Ctx {
            field: ring.field(),
            order: ring.order(),
        }
    }
}

pub(crate) mod kernel {
    //! Operations on strictly descending term vectors.
    use super::*;

    pub fn normalize(ctx: Ctx, mut terms: Vec<Term>) -> Vec<Term> {
        terms.retain(|t| t.coeff != 0);
        terms.sort_unstable_by(|a, b| ctx.order.cmp(&b.mono, &a.mono));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mono == t.mono => {
                    last.coeff = ctx.field.add(last.coeff, t.coeff);
                }
                _ => out.push(t),
            }
        }
        out.retain(|t| t.coeff != 0);
        out
    }

    /// `f + c * m * g`.
    pub fn add_scaled(ctx: Ctx, f: &[Term], c: u32, m: &Monomial, g: &[Term]) -> Vec<Term> {
        let fld = ctx.field;
        let mut out = Vec::with_capacity(f.len() + g.len());
        let (mut i, mut j) = (0, 0);
        while i < f.len() && j < g.len() {
            let gm = m.mul(&g[j].mono);
            match ctx.order.cmp(&f[i].mono, &gm) {
                Ordering::Greater => {
                    out.push(f[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term {
                        coeff: fld.mul(c, g[j].coeff),
                        mono: gm,
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let s = fld.add(f[i].coeff, fld.mul(c, g[j].coeff));
                    if s != 0 {
                        out.push(Term { coeff: s, mono: gm });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&f[i..]);
        for t in &g[j..] {
            out.push(Term {
                coeff: fld.mul(c, t.coeff),
                mono: m.mul(&t.mono),
            });
        }
        out
    }

    pub fn mul(ctx: Ctx, f: &[Term], g: &[Term]) -> Vec<Term> {
        if f.is_empty() || g.is_empty() {
            return Vec::new();
        }
        let (small, big) = if f.len() <= g.len() { (f, g) } else { (g, f) };
        if small.len() <= 8 {
            let mut acc = Vec::new();
            for t in small {
                acc = add_scaled(ctx, &acc, t.coeff, &t.mono, big);
            }
            return acc;
        }
        let mut all = Vec::with_capacity(f.len() * g.len());
        for a in f {
            for b in g {
                all.push(Term {
                    coeff: ctx.field.mul(a.coeff, b.coeff),
                    mono: a.mono.mul(&b.mono),
                });
            }
        }
        normalize(ctx, all)
    }

    pub fn make_monic(ctx: Ctx, f: &mut [Term]) {
        if let Some(lc) = f.first().map(|t| t.coeff) {
            if lc != 1 {
                let inv = ctx.field.inv(lc).expect("nonzero leading coefficient");
                for t in f.iter_mut() {
                    t.coeff = ctx.field.mul(t.coeff, inv);
                }
            }
        }
    }
}

/// An element of a [`PolyRing`]; terms are kept strictly descending.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && same_ring(&self.ring, &other.ring)
    }
}

impl Eq for Polynomial {}

pub(crate) fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: i64) -> Self {
        Self::from_terms(
            ring,
            vec![Term {
                coeff: ring.field().from_i64(c),
                mono: Monomial::ONE,
            }],
        )
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        assert!(i < ring.nvars(), "variable index out of range");
        Polynomial {
            ring: ring.clone(),
            terms: vec![Term {
                coeff: 1,
                mono: Monomial::var(i),
            }],
        }
    }

    pub fn monomial(ring: &Arc<PolyRing>, coeff: u32, mono: Monomial) -> Self {
        Self::from_terms(ring, vec![Term { coeff, mono }])
    }

    /// Normalizes arbitrary terms (any order, duplicates, zeros allowed).
    pub fn from_terms(ring: &Arc<PolyRing>, terms: Vec<Term>) -> Self {
        let p = ring.field().characteristic();
        let terms = terms
            .into_iter()
            .map(|t| Term {
                coeff: t.coeff % p,
                mono: t.mono,
            })
            .collect();
        Polynomial {
            ring: ring.clone(),
            terms: kernel::normalize(Ctx::of(ring), terms),
        }
    }

    /// Wraps terms that are already normalized for `ring`.
    pub(crate) fn from_sorted(ring: &Arc<PolyRing>, terms: Vec<Term>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Linear form `sum c_i x_i`.
    pub fn linear(ring: &Arc<PolyRing>, coeffs: &[u32]) -> Self {
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| Term {
                coeff: c,
                mono: Monomial::var(i),
            })
            .collect();
        Self::from_terms(ring, terms)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub(crate) fn ctx(&self) -> Ctx {
        Ctx::of(&self.ring)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.mono.is_one())
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.mono)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximal total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(t) => {
                let d = t.mono.degree();
                self.terms.iter().all(|s| s.mono.degree() == d)
            }
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let t = kernel::add_scaled(self.ctx(), &self.terms, 1, &Monomial::ONE, &other.terms);
        Ok(Polynomial::from_sorted(&self.ring, t))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let m1 = self.ring.field().neg(1);
        let t = kernel::add_scaled(self.ctx(), &self.terms, m1, &Monomial::ONE, &other.terms);
        Ok(Polynomial::from_sorted(&self.ring, t))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let max = |p: &Polynomial| {
            let mut m = [0u32; crate::monomial::MAX_VARS];
            for t in &p.terms {
                for (i, e) in t.mono.exps().iter().enumerate() {
                    m[i] = m[i].max(*e as u32);
                }
            }
            m
        };
        let (a, b) = (max(self), max(other));
        if a.iter().zip(&b).any(|(x, y)| x + y > u16::MAX as u32) {
            return Err(Error::ExponentOverflow);
        }
        Ok(Polynomial::from_sorted(
            &self.ring,
            kernel::mul(self.ctx(), &self.terms, &other.terms),
        ))
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(self.ring.field().neg(1))
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let f = self.ring.field();
        let c = c % f.characteristic();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: f.mul(t.coeff, c),
                mono: t.mono,
            })
            .collect();
        Polynomial::from_sorted(&self.ring, terms)
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: t.coeff,
                mono: t.mono.mul(m),
            })
            .collect();
        Polynomial::from_sorted(&self.ring, terms)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::constant(&self.ring, 1);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Product of a sequence of polynomials in `ring`.
    pub fn product<'a>(ring: &Arc<PolyRing>, it: impl IntoIterator<Item = &'a Polynomial>) -> Self {
        it.into_iter()
            .fold(Polynomial::constant(ring, 1), |acc, f| &acc * f)
    }

    pub fn monic(&self) -> Polynomial {
        let mut t = self.terms.clone();
        kernel::make_monic(self.ctx(), &mut t);
        Polynomial::from_sorted(&self.ring, t)
    }

    pub fn eval(&self, point: &[u32]) -> u32 {
        let f = self.ring.field();
        let mut acc = 0;
        for t in &self.terms {
            let mut v = t.coeff;
            for (i, &x) in point.iter().enumerate() {
                let e = t.mono.exp(i);
                if e > 0 {
                    v = f.mul(v, f.pow(x, e as u64));
                }
            }
            acc = f.add(acc, v);
        }
        acc
    }

    /// Coefficients of a linear form, or `None` if not homogeneous of degree one.
    pub fn linear_coeffs(&self) -> Option<Vec<u32>> {
        let n = self.ring.nvars();
        let mut c = vec![0u32; n];
        for t in &self.terms {
            if t.mono.degree() != 1 {
                return None;
            }
            let i = (0..n).find(|&i| t.mono.exp(i) == 1)?;
            c[i] = t.coeff;
        }
        if self.terms.is_empty() {
            return None;
        }
        Some(c)
    }

    /// Substitutes `images[i]` for variable `i`; images live in `target`.
    pub fn substitute(&self, target: &Arc<PolyRing>, images: &[Polynomial]) -> Result<Polynomial> {
        assert_eq!(images.len(), self.ring.nvars());
        for im in images {
            if !same_ring(im.ring(), target) {
                return Err(Error::RingMismatch);
            }
        }
        let mut cache: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::constant(target, 1), p.clone()])
            .collect();
        let mut out = Polynomial::zero(target);
        for t in &self.terms {
            let mut v = Polynomial::constant(target, t.coeff as i64);
            for (i, powers) in cache.iter_mut().enumerate() {
                let e = t.mono.exp(i) as usize;
                if e == 0 {
                    continue;
                }
                while powers.len() <= e {
                    let next = &powers[powers.len() - 1] * &powers[1];
                    powers.push(next);
                }
                v = &v * &powers[e];
            }
            out = &out + &v;
        }
        Ok(out)
    }

    /// Reinterprets the polynomial in `target`, sending variable `i` to `map[i]`.
    pub fn remap(&self, target: &Arc<PolyRing>, map: &[usize]) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: t.coeff,
                mono: t.mono.remap(map),
            })
            .collect();
        Polynomial::from_terms(target, terms)
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Option<Polynomial>> {
        self.check_ring(divisor)?;
        let Some(lt) = divisor.terms.first().copied() else {
            return Err(Error::ZeroDivisor);
        };
        let ctx = self.ctx();
        let fld = ctx.field;
        let inv = fld.inv(lt.coeff)?;
        let mut rest = self.terms.clone();
        let mut quot = Vec::new();
        while let Some(head) = rest.first().copied() {
            if !lt.mono.divides(&head.mono) {
                return Ok(None);
            }
            let m = lt.mono.quotient_of(&head.mono);
            let c = fld.mul(head.coeff, inv);
            quot.push(Term { coeff: c, mono: m });
            rest = kernel::add_scaled(ctx, &rest, fld.neg(c), &m, &divisor.terms);
        }
        Ok(Some(Polynomial::from_sorted(&self.ring, quot)))
    }

    /// Homogeneous component of degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|t| t.mono.degree() == d)
            .copied()
            .collect();
        Polynomial::from_sorted(&self.ring, terms)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $inner:ident) => {
        impl std::ops::$tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                self.$inner(rhs).expect("polynomial ring mismatch")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let mut factors = Vec::new();
            if t.coeff != 1 || t.mono.is_one() {
                factors.push(t.coeff.to_string());
            }
            for (i, v) in self.ring.vars().iter().enumerate() {
                match t.mono.exp(i) {
                    0 => {}
                    1 => factors.push(v.clone()),
                    e => factors.push(format!("{v}^{e}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn ring() -> Arc<PolyRing> {
        PolyRing::new(
            vec!["x".into(), "y".into(), "z".into()],
            32003,
            MonomialOrder::DegRevLex,
        )
        .unwrap()
    }

    fn p(s: &str) -> Polynomial {
        parse_polynomial(&ring(), s).unwrap()
    }

    /// Expands a product by enumerating every pair of terms.
    fn naive_mul(f: &Polynomial, g: &Polynomial) -> std::collections::HashMap<Monomial, i64> {
        let mut acc = std::collections::HashMap::new();
        for a in f.terms() {
            for b in g.terms() {
                *acc.entry(a.mono.mul(&b.mono)).or_insert(0i64) += a.coeff as i64 * b.coeff as i64;
            }
        }
        acc.retain(|_, c| *c % 32003 != 0);
        acc.values_mut().for_each(|c| *c %= 32003);
        acc
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&p("x + y") * &p("x - y"), p("x^2 - y^2"));
    }

    #[test]
    fn cancellation() {
        let f = p("3*x^2*y + 5*z");
        assert!((&f + &f.neg()).is_zero());
    }

    #[test]
    fn square_matches_naive_expansion() {
        let f = p("x + y");
        let sq = &f * &f;
        let naive = naive_mul(&f, &f);
        assert_eq!(sq.len(), naive.len());
        for t in sq.terms() {
            assert_eq!(naive[&t.mono], t.coeff as i64);
        }
        assert_eq!(sq, p("x^2 + 2*x*y + y^2"));
    }

    #[test]
    fn exact_division() {
        let f = p("x^3 - y^3");
        let g = p("x - y");
        assert_eq!(f.div_exact(&g).unwrap().unwrap(), p("x^2 + x*y + y^2"));
        assert!(p("x^2 + y").div_exact(&g).unwrap().is_none());
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let other = PolyRing::standard(3, 32003).unwrap();
        let g = Polynomial::var(&other, 0);
        assert!(matches!(p("x").try_add(&g), Err(Error::RingMismatch)));
    }

    #[test]
    fn display_round_trips_through_parser() {
        let f = p("3*x^2*y + 31999*z^3 + 1");
        assert_eq!(p(&f.to_string()), f);
    }

    #[test]
    fn substitution() {
        let r = ring();
        let f = p("x*y");
        let images = [p("y + z"), p("y - z"), p("z")];
        assert_eq!(f.substitute(&r, &images).unwrap(), p("y^2 - z^2"));
    }
}
