//! Regular sequences, the Cohen-Macaulay test, and finite schemes: points,
//! reducedness via multiplication matrices, support discovery, components.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::ideal::Ideal;
use crate::linalg::{upoly, Matrix};
use crate::monomial::Monomial;
use crate::ops::{quotient, random_linear_form, saturate, LinearChart};
use crate::poly::{Polynomial, Term};
use crate::random::SeedStream;
use crate::ring::PolyRing;

const CM_ATTEMPTS: usize = 3;
const CHART_ATTEMPTS: usize = 3;
const MAX_STANDARD_MONOMIALS: usize = 50_000;

/// `I : f = I`.
pub fn is_regular_element(i: &Ideal, f: &Polynomial) -> Result<bool> {
    if f.is_zero() {
        return Ok(i.is_unit());
    }
    quotient(i, f)?.equals(i)
}

#[derive(Clone, Debug, Serialize)]
pub struct CmAttempt {
    pub seed: u64,
    pub forms: Vec<String>,
    /// Index of the first form that was a zero divisor.
    pub failed_at: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CmCertificate {
    pub cohen_macaulay: bool,
    pub dim: usize,
    pub attempts: Vec<CmAttempt>,
}

/// Tests whether `dim R/I` general linear forms are a regular sequence on
/// `R/I`, retrying with fresh forms before answering no.
pub fn cm_test(i: &Ideal, seed: SeedStream) -> Result<CmCertificate> {
    let dim = i.krull_dim();
    let mut attempts = Vec::new();
    if i.is_unit() {
        return Ok(CmCertificate {
            cohen_macaulay: true,
            dim,
            attempts,
        });
    }
    for k in 0..CM_ATTEMPTS {
        let s = seed.fork_index("cm", k);
        let mut cur = i.clone();
        let mut forms = Vec::new();
        let mut failed_at = None;
        for step in 0..dim {
            let l = random_linear_form(i.ring(), s.fork_index("form", step));
            forms.push(l.to_string());
            if !is_regular_element(&cur, &l)? {
                failed_at = Some(step);
                break;
            }
            cur = cur.add_gens(&[l])?;
        }
        attempts.push(CmAttempt {
            seed: s.seed(),
            forms,
            failed_at,
        });
        if failed_at.is_none() {
            return Ok(CmCertificate {
                cohen_macaulay: true,
                dim,
                attempts,
            });
        }
    }
    Ok(CmCertificate {
        cohen_macaulay: false,
        dim,
        attempts,
    })
}

/// Ideal of the point with the given projective coordinates.
pub fn point_ideal(ring: &Arc<PolyRing>, coords: &[u32]) -> Result<Ideal> {
    if coords.len() != ring.nvars() {
        return Err(Error::InvalidInput(format!(
            "point has {} coordinates, ring has {} variables",
            coords.len(),
            ring.nvars()
        )));
    }
    if coords.iter().all(|&c| c == 0) {
        return Err(Error::InvalidInput("the zero vector is not a point".into()));
    }
    let kernel = Matrix::from_rows(&[coords.to_vec()]).kernel(ring.field());
    let gens = kernel.iter().map(|v| Polynomial::linear(ring, v)).collect();
    Ideal::new(ring, gens)
}

/// Scales a projective point so that its first nonzero coordinate is 1.
pub fn normalize_point(f: PrimeField, coords: &[u32]) -> Vec<u32> {
    let Some(&lead) = coords.iter().find(|&&c| c != 0) else {
        return coords.to_vec();
    };
    let inv = f.inv(lead).unwrap();
    coords.iter().map(|&c| f.mul(c, inv)).collect()
}

fn dot(f: PrimeField, a: &[u32], b: &[u32]) -> u32 {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// A random linear form vanishing at `q` and not at `p`.
pub fn form_through(
    ring: &Arc<PolyRing>,
    q: &[u32],
    avoid: &[u32],
    seed: SeedStream,
) -> Result<Polynomial> {
    let f = ring.field();
    let j = q
        .iter()
        .position(|&c| c != 0)
        .ok_or_else(|| Error::InvalidInput("the zero vector is not a point".into()))?;
    let inv = f.inv(q[j])?;
    let mut seeds = Vec::new();
    for k in 0..CHART_ATTEMPTS {
        let s = seed.fork_index("through", k);
        seeds.push(s.seed());
        let mut r = s.rng().vector(f, ring.nvars());
        r[j] = 0;
        r[j] = f.neg(f.mul(dot(f, &r, q), inv));
        if r.iter().all(|&c| c == 0) || dot(f, &r, avoid) == 0 {
            continue;
        }
        return Ok(Polynomial::linear(ring, &r));
    }
    Err(Error::Genericity {
        what: "linear form through a point vanishes at the point to keep".into(),
        attempts: CHART_ATTEMPTS,
        seeds,
    })
}

/// The finite-dimensional algebra `R/I` localized at a general hyperplane,
/// with a monomial basis and normal forms.
pub(crate) struct AffineAlgebra {
    chart: LinearChart,
    affine: Arc<PolyRing>,
    gb: Vec<Polynomial>,
    pub(crate) basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl AffineAlgebra {
    /// `None` when the hyperplane is a zero divisor on `R/I`.
    pub(crate) fn new(i: &Ideal, h: &[u32]) -> Result<Option<Self>> {
        let ring = i.ring();
        let n = ring.nvars();
        let chart = LinearChart::new(ring, h)?;
        let gb = chart.basis(i)?;
        if gb
            .iter()
            .any(|g| g.leading_monomial().unwrap().exp(n - 1) > 0)
        {
            return Ok(None);
        }
        let affine = chart.target.drop_var(n - 1)?;
        let gb: Vec<Polynomial> = gb.iter().map(|g| dehomogenize(g, &affine)).collect();
        let lms: Vec<Monomial> = gb.iter().map(|g| g.leading_monomial().unwrap()).collect();
        let mut basis = Vec::new();
        let mut index = HashMap::new();
        let mut queue = VecDeque::from([Monomial::ONE]);
        if lms.iter().any(|m| m.is_one()) {
            queue.clear();
        }
        while let Some(m) = queue.pop_front() {
            if index.contains_key(&m) {
                continue;
            }
            index.insert(m, basis.len());
            basis.push(m);
            if basis.len() > MAX_STANDARD_MONOMIALS {
                return Err(Error::ResourceLimit(format!(
                    "more than {MAX_STANDARD_MONOMIALS} standard monomials"
                )));
            }
            for v in 0..n - 1 {
                let next = m.mul(&Monomial::var(v));
                if !index.contains_key(&next) && !lms.iter().any(|l| l.divides(&next)) {
                    queue.push_back(next);
                }
            }
        }
        Ok(Some(AffineAlgebra {
            chart,
            affine,
            gb,
            basis,
            index,
        }))
    }

    pub(crate) fn field(&self) -> PrimeField {
        self.affine.field()
    }

    fn coordinates(&self, f: &Polynomial) -> Result<Vec<u32>> {
        let r = crate::groebner::normal_form(f, &self.gb)?;
        let mut v = vec![0u32; self.basis.len()];
        for t in r.terms() {
            v[self.index[&t.mono]] = t.coeff;
        }
        Ok(v)
    }

    /// Matrix of multiplication by `f` (an element of the affine ring);
    /// column `j` holds the coordinates of `f * basis[j]`.
    pub(crate) fn multiplication(&self, f: &Polynomial) -> Result<Matrix> {
        let d = self.basis.len();
        let mut m = Matrix::zeros(d, d);
        for (j, b) in self.basis.iter().enumerate() {
            let col = self.coordinates(&f.mul_monomial(b))?;
            for (i, c) in col.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        Ok(m)
    }

    /// Projective coordinates in the original ring of an affine point.
    pub(crate) fn original_point(&self, affine: &[u32]) -> Vec<u32> {
        let mut y = affine.to_vec();
        y.push(1);
        let f = self.field();
        let x: Vec<u32> = self.chart.forward.iter().map(|l| l.eval(&y)).collect();
        normalize_point(f, &x)
    }

    pub(crate) fn affine_ring(&self) -> &Arc<PolyRing> {
        &self.affine
    }
}

fn dehomogenize(g: &Polynomial, affine: &Arc<PolyRing>) -> Polynomial {
    let n = g.ring().nvars();
    let terms = g
        .terms()
        .iter()
        .map(|t| {
            let mut m = t.mono;
            m.set_exp(n - 1, 0);
            Term {
                coeff: t.coeff,
                mono: m,
            }
        })
        .collect();
    Polynomial::from_terms(affine, terms)
}

fn require_points(i: &Ideal) -> Result<()> {
    if i.is_unit() {
        return Err(Error::WrongDimension {
            expected: 1,
            found: 0,
        });
    }
    let d = i.krull_dim();
    if d != 1 {
        return Err(Error::WrongDimension {
            expected: 1,
            found: d,
        });
    }
    Ok(())
}

fn open_chart(i: &Ideal, seed: SeedStream) -> Result<(AffineAlgebra, u64)> {
    let f = i.ring().field();
    let mut seeds = Vec::new();
    for k in 0..CHART_ATTEMPTS {
        let s = seed.fork_index("chart", k);
        seeds.push(s.seed());
        let h = s.rng().vector(f, i.ring().nvars());
        if h.iter().all(|&c| c == 0) {
            continue;
        }
        if let Some(alg) = AffineAlgebra::new(i, &h)? {
            return Ok((alg, s.seed()));
        }
    }
    Err(Error::Precondition(format!(
        "no hyperplane among {CHART_ATTEMPTS} general ones is a nonzerodivisor; \
         the ideal is probably not saturated (seeds {seeds:?})"
    )))
}

fn random_affine_linear(alg: &AffineAlgebra, seed: SeedStream) -> Polynomial {
    let f = alg.field();
    let ring = alg.affine_ring();
    let n = ring.nvars();
    let c = seed.rng().vector(f, n + 1);
    let mut terms: Vec<Term> = (0..n)
        .map(|i| Term {
            coeff: c[i],
            mono: Monomial::var(i),
        })
        .collect();
    terms.push(Term {
        coeff: c[n],
        mono: Monomial::ONE,
    });
    Polynomial::from_terms(ring, terms)
}

#[derive(Clone, Debug, Serialize)]
pub struct ReducedCertificate {
    pub reduced: bool,
    pub degree: i64,
    pub standard_monomials: usize,
    /// Number of distinct eigenvalues of the multiplication matrix.
    pub distinct_eigenvalues: usize,
    /// How many of them lie in the prime field.
    pub rational_eigenvalues: usize,
    pub chart_seed: u64,
    pub element_seeds: Vec<u64>,
}

/// Decides whether the finite scheme defined by a saturated ideal with
/// `dim R/I = 1` is reduced.
pub fn is_reduced_zero_dim(i: &Ideal, seed: SeedStream) -> Result<ReducedCertificate> {
    require_points(i)?;
    let degree = i.degree()?;
    let (alg, chart_seed) = open_chart(i, seed)?;
    let f = alg.field();
    let mut element_seeds = Vec::new();
    let mut last = None;
    for k in 0..2 {
        let s = seed.fork_index("element", k);
        element_seeds.push(s.seed());
        let lambda = random_affine_linear(&alg, s);
        let chi = alg.multiplication(&lambda)?.charpoly(f);
        let sqf = upoly::is_squarefree(&chi, f);
        let rad_deg = if sqf {
            chi.len() - 1
        } else {
            let g = upoly::gcd(&chi, &upoly::derivative(&chi, f), f);
            upoly::div(&chi, &g, f).len() - 1
        };
        let rational = upoly::trim(upoly::rational_part(&chi, f)).len() - 1;
        let cert = ReducedCertificate {
            reduced: sqf && alg.basis.len() as i64 == degree,
            degree,
            standard_monomials: alg.basis.len(),
            distinct_eigenvalues: rad_deg,
            rational_eigenvalues: rational,
            chart_seed,
            element_seeds: element_seeds.clone(),
        };
        if cert.reduced {
            return Ok(cert);
        }
        last = Some(cert);
    }
    Ok(last.unwrap())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportPoint {
    pub coords: Vec<u32>,
    /// Length of the local component.
    pub multiplicity: usize,
}

/// Support of a finite scheme whose points are rational over the prime
/// field, with the length of each component; sorted by coordinates.
pub fn support(i: &Ideal, seed: SeedStream) -> Result<Vec<SupportPoint>> {
    require_points(i)?;
    let (alg, _) = open_chart(i, seed)?;
    let f = alg.field();
    let d = alg.basis.len();
    let nv = alg.affine_ring().nvars();
    let coord_mats = (0..nv)
        .map(|v| alg.multiplication(&Polynomial::var(alg.affine_ring(), v)))
        .collect::<Result<Vec<_>>>()?;
    let mut seeds = Vec::new();
    for k in 0..CHART_ATTEMPTS {
        let s = seed.fork_index("separate", k);
        seeds.push(s.seed());
        let lambda = random_affine_linear(&alg, s);
        let m = alg.multiplication(&lambda)?;
        let chi = m.charpoly(f);
        let roots = upoly::roots(&chi, f);
        let mults: Vec<usize> = roots
            .iter()
            .map(|&r| upoly::root_multiplicity(&chi, r, f))
            .collect();
        if mults.iter().sum::<usize>() != d {
            return Err(Error::Precondition(
                "support has points that are not rational over the prime field".into(),
            ));
        }
        let mut out = Vec::new();
        let mut separated = true;
        for (&r, &mult) in roots.iter().zip(&mults) {
            let mut shifted = m.clone();
            for t in 0..d {
                shifted.set(t, t, f.sub(shifted.get(t, t), r));
            }
            let space = generalized_eigenspace(&shifted, mult, f);
            let mut affine = Vec::with_capacity(nv);
            for cm in &coord_mats {
                let block = restrict(cm, &space, f);
                let cp = block.charpoly(f);
                // a single point: the coordinate acts with one eigenvalue
                let c = f.neg(f.div(cp[mult - 1], mult as u32 % f.characteristic()).unwrap());
                let mut expect = vec![1u32];
                for _ in 0..mult {
                    expect = upoly::mul(&expect, &[f.neg(c), 1], f);
                }
                if cp != expect {
                    separated = false;
                }
                affine.push(c);
            }
            out.push(SupportPoint {
                coords: alg.original_point(&affine),
                multiplicity: mult,
            });
        }
        if separated {
            out.sort_by(|a, b| a.coords.cmp(&b.coords));
            return Ok(out);
        }
    }
    Err(Error::Genericity {
        what: "linear element does not separate the support".into(),
        attempts: CHART_ATTEMPTS,
        seeds,
    })
}

/// Basis (as columns) of `ker A^k`.
fn generalized_eigenspace(a: &Matrix, k: usize, f: PrimeField) -> Matrix {
    let d = a.rows;
    let mut power = a.clone();
    for _ in 1..k {
        power = mat_mul(&power, a, f);
    }
    let ker = power.kernel(f);
    let mut out = Matrix::zeros(d, ker.len());
    for (j, v) in ker.iter().enumerate() {
        for (i, &c) in v.iter().enumerate() {
            out.set(i, j, c);
        }
    }
    out
}

fn mat_mul(a: &Matrix, b: &Matrix, f: PrimeField) -> Matrix {
    let mut out = Matrix::zeros(a.rows, b.cols);
    let p = f.characteristic() as u64;
    for i in 0..a.rows {
        for j in 0..b.cols {
            let mut acc = 0u64;
            for k in 0..a.cols {
                acc = (acc + a.get(i, k) as u64 * b.get(k, j) as u64) % p;
            }
            out.set(i, j, acc as u32);
        }
    }
    out
}

/// Matrix of `m` restricted to the invariant subspace spanned by the columns
/// of `v`.
fn restrict(m: &Matrix, v: &Matrix, f: PrimeField) -> Matrix {
    let w = mat_mul(m, v, f);
    let k = v.cols;
    let mut aug = Matrix::zeros(v.rows, 2 * k);
    for i in 0..v.rows {
        for j in 0..k {
            aug.set(i, j, v.get(i, j));
            aug.set(i, k + j, w.get(i, j));
        }
    }
    aug.rref(f);
    let mut t = Matrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            t.set(i, j, aug.get(i, k + j));
        }
    }
    t
}

/// The part of a finite scheme supported at `p`, obtained by saturating away
/// every point in `others` with a general linear form through it. The caller
/// must list every other support point.
pub fn component_at_point(
    i: &Ideal,
    p: &[u32],
    others: &[Vec<u32>],
    seed: SeedStream,
) -> Result<Ideal> {
    require_points(i)?;
    let f = i.ring().field();
    let np = normalize_point(f, p);
    let mut cur = i.clone();
    for (k, q) in others.iter().enumerate() {
        if normalize_point(f, q) == np {
            return Err(Error::InvalidInput(
                "the point to keep is listed among the others".into(),
            ));
        }
        let l = form_through(i.ring(), q, p, seed.fork_index("away", k))?;
        cur = saturate(&cur, &l)?.minimized();
    }
    Ok(cur)
}
