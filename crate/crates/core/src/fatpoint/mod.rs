//! Fat points in P^3 and the Gorenstein links that reduce them.
//!
//! A single fat point `p^a` is linked to `p^(a-1)` through the sum of two
//! cone curves `C`, `D` cut out of the complete intersection of `a` and
//! `a + 1` planes through the point. Unions of fat points use the two-link
//! step of [`double`], which works on arrangements of lines and computes
//! every component locally.

pub mod arrangement;
pub mod double;
pub mod grid;
pub mod reduce;
pub mod single;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::hilbert::HVector;
use crate::ideal::Ideal;
use crate::linalg::Matrix;
use crate::ops::intersect_all;
use crate::poly::Polynomial;
use crate::random::SeedStream;
use crate::ring::PolyRing;
use crate::zerodim::point_ideal;

pub use double::{double_step, double_step_report, DoubleStepOptions, DoubleStepReport, RepairPolicy};
pub use grid::{grid_curves, GridCurveSelection};
pub use reduce::{reduce_to_reduced, ReductionReport};
pub use single::{single_fatpoint_chain, single_fatpoint_link_step, SingleStep};

/// Retries for "general" choices.
pub(crate) const ATTEMPTS: usize = 3;

/// A point of P^3, normalized so that its first nonzero coordinate is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointP3(pub [u32; 4]);

impl PointP3 {
    pub fn new(f: PrimeField, coords: [u32; 4]) -> Result<Self> {
        let Some(&lead) = coords.iter().find(|&&c| c != 0) else {
            return Err(Error::InvalidInput("the zero vector is not a point".into()));
        };
        let inv = f.inv(lead)?;
        Ok(PointP3(coords.map(|c| f.mul(f.from_i64(c as i64), inv))))
    }

    pub fn from_i64(f: PrimeField, coords: [i64; 4]) -> Result<Self> {
        Self::new(f, coords.map(|c| f.from_i64(c)))
    }

    pub fn coords(&self) -> &[u32; 4] {
        &self.0
    }

    pub fn ideal(&self, ring: &Arc<PolyRing>) -> Result<Ideal> {
        point_ideal(ring, &self.0)
    }
}

impl std::fmt::Display for PointP3 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "[{a}:{b}:{c}:{d}]")
    }
}

/// The ring `K[x0, x1, x2, x3]` of P^3.
pub fn p3_ring(prime: u32) -> Result<Arc<PolyRing>> {
    PolyRing::standard(4, prime)
}

pub(crate) fn check_p3(ring: &Arc<PolyRing>) -> Result<()> {
    if ring.nvars() != 4 {
        return Err(Error::WrongDimension {
            expected: 4,
            found: ring.nvars(),
        });
    }
    Ok(())
}

pub fn point_ideal_p3(ring: &Arc<PolyRing>, p: &PointP3) -> Result<Ideal> {
    check_p3(ring)?;
    p.ideal(ring)
}

/// `p^k` for the ideal `p` of a point.
pub fn fat_point_ideal(ring: &Arc<PolyRing>, p: &PointP3, k: u32) -> Result<Ideal> {
    if k < 1 {
        return Err(Error::InvalidInput("fat point multiplicity must be at least 1".into()));
    }
    Ok(point_ideal_p3(ring, p)?.power(k)?.minimized())
}

/// A finite union of fat points with pairwise distinct supports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FatPointScheme {
    pub points: Vec<(PointP3, u32)>,
}

impl FatPointScheme {
    pub fn new(points: Vec<(PointP3, u32)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidInput("empty point scheme".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for (p, m) in &points {
            if *m < 1 {
                return Err(Error::InvalidInput(format!("multiplicity 0 at {p}")));
            }
            if !seen.insert(*p) {
                return Err(Error::InvalidInput(format!("duplicate point {p}")));
            }
        }
        Ok(FatPointScheme { points })
    }

    pub fn degree(&self) -> i64 {
        self.points.iter().map(|(_, b)| fat_point_degree(*b)).sum()
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.points.iter().map(|(_, b)| *b).max().unwrap_or(0)
    }

    pub fn is_reduced(&self) -> bool {
        self.points.iter().all(|(_, b)| *b == 1)
    }

    pub fn multiplicity_at(&self, p: &PointP3) -> Option<u32> {
        self.points.iter().find(|(q, _)| q == p).map(|(_, b)| *b)
    }
}

/// Length of `p^b` in P^3.
pub fn fat_point_degree(b: u32) -> i64 {
    binomial(b as i64 + 2, 3)
}

/// The saturated ideal of the union.
pub fn union_ideal(ring: &Arc<PolyRing>, z: &FatPointScheme) -> Result<Ideal> {
    let parts = z
        .points
        .iter()
        .map(|(p, b)| fat_point_ideal(ring, p, *b))
        .collect::<Result<Vec<_>>>()?;
    Ok(intersect_all(&parts)?.minimized())
}

pub(crate) fn dot(f: PrimeField, a: &[u32], b: &[u32]) -> u32 {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// Scales a coefficient vector so that its first nonzero entry is 1.
pub(crate) fn normalize4(f: PrimeField, v: &[u32]) -> [u32; 4] {
    let lead = v.iter().copied().find(|&c| c != 0).unwrap_or(1);
    let inv = f.inv(lead).expect("nonzero");
    [0, 1, 2, 3].map(|i| f.mul(v[i], inv))
}

const PLANE_DRAWS: usize = 64;

/// Coefficient vectors of `count` general planes through `p`, normalized and
/// pairwise distinct, avoiding every point of `avoid`.
pub(crate) fn general_planes_through(
    f: PrimeField,
    p: &PointP3,
    count: usize,
    avoid: &[PointP3],
    seed: SeedStream,
) -> Result<Vec<[u32; 4]>> {
    let basis = Matrix::from_rows(&[p.0.to_vec()]).kernel(f);
    let mut seeds = Vec::new();
    for attempt in 0..ATTEMPTS {
        let s = seed.fork_index("planes", attempt);
        seeds.push(s.seed());
        let mut rng = s.rng();
        let mut out: Vec<[u32; 4]> = Vec::with_capacity(count);
        let mut ok = true;
        while ok && out.len() < count {
            ok = false;
            // each plane is redrawn on its own; with many points to avoid a
            // single draw fails often
            for _ in 0..PLANE_DRAWS {
                let c = rng.vector(f, basis.len());
                let mut v = [0u32; 4];
                for (ck, b) in c.iter().zip(&basis) {
                    for i in 0..4 {
                        v[i] = f.add(v[i], f.mul(*ck, b[i]));
                    }
                }
                if v.iter().all(|&x| x == 0) {
                    continue;
                }
                let v = normalize4(f, &v);
                if out.contains(&v) || avoid.iter().any(|q| q != p && dot(f, &v, &q.0) == 0) {
                    continue;
                }
                out.push(v);
                ok = true;
                break;
            }
        }
        if ok {
            return Ok(out);
        }
    }
    Err(Error::Genericity {
        what: format!("{count} general planes through {p}"),
        attempts: ATTEMPTS,
        seeds,
    })
}

/// `count` general linear forms in the ideal of `p`, pairwise non-proportional.
pub fn general_forms_through(
    ring: &Arc<PolyRing>,
    p: &PointP3,
    count: usize,
    seed: SeedStream,
) -> Result<Vec<Polynomial>> {
    check_p3(ring)?;
    if count < 1 {
        return Err(Error::InvalidInput("count must be at least 1".into()));
    }
    Ok(general_planes_through(ring.field(), p, count, &[], seed)?
        .iter()
        .map(|v| Polynomial::linear(ring, v))
        .collect())
}

pub(crate) fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

/// h-vector `(1, n, C(n+1, 2), ..., C(n+a-2, a-1))` of `p^a` in P^n.
pub fn fatpoint_hvector_formula(n: usize, a: usize) -> HVector {
    let n = n as i64;
    HVector((0..a as i64).map(|k| binomial(n + k - 1, k)).collect())
}

/// h-vector of the Gorenstein scheme linking `p^a` to `p^(a-1)` in P^n:
/// the fat point h-vector followed by its mirror image.
pub fn gorenstein_x_hvector_formula(n: usize, a: usize) -> HVector {
    if a == 0 {
        return HVector(vec![]);
    }
    let up = fatpoint_hvector_formula(n, a).0;
    let mut out = up.clone();
    out.extend(up.iter().rev().skip(1));
    HVector(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::intersect;

    fn ring() -> Arc<PolyRing> {
        p3_ring(32003).unwrap()
    }

    fn pt(c: [i64; 4]) -> PointP3 {
        PointP3::from_i64(ring().field(), c).unwrap()
    }

    #[test]
    fn normalized_points() {
        let f = ring().field();
        let p = PointP3::from_i64(f, [0, 2, 4, -2]).unwrap();
        assert_eq!(p.0, [0, 1, 2, 32002]);
        assert!(PointP3::new(f, [0; 4]).is_err());
    }

    #[test]
    fn fat_point_examples() {
        let r = ring();
        let p = pt([1, 0, 0, 0]);
        let i1 = fat_point_ideal(&r, &p, 1).unwrap();
        assert!(i1.equals(&Ideal::parse(&r, &["x1", "x2", "x3"]).unwrap()).unwrap());
        assert_eq!(i1.degree().unwrap(), 1);
        let i2 = fat_point_ideal(&r, &p, 2).unwrap();
        assert_eq!(i2.h_vector().unwrap().entries(), &[1, 3]);
        let i3 = fat_point_ideal(&r, &p, 3).unwrap();
        assert_eq!(i3.h_vector().unwrap().entries(), &[1, 3, 6]);
        assert_eq!(i3.degree().unwrap(), 10);
        assert!(fat_point_ideal(&r, &p, 0).is_err());
    }

    #[test]
    fn unions() {
        let r = ring();
        let (p, q) = (pt([1, 2, 3, 4]), pt([3, -1, 5, 2]));
        let z = FatPointScheme::new(vec![(p, 2), (q, 1)]).unwrap();
        assert_eq!(union_ideal(&r, &z).unwrap().degree().unwrap(), 5);
        let z = FatPointScheme::new(vec![(p, 2), (q, 2)]).unwrap();
        let u = union_ideal(&r, &z).unwrap();
        assert_eq!(u.degree().unwrap(), 8);
        assert_eq!(z.degree(), 8);
        // independent oracle: intersection computed the other way round
        let other = intersect(&fat_point_ideal(&r, &q, 2).unwrap(), &fat_point_ideal(&r, &p, 2).unwrap()).unwrap();
        assert!(u.equals(&other).unwrap());
        assert!(FatPointScheme::new(vec![(p, 1), (p, 2)]).is_err());
    }

    #[test]
    fn forms_through_point() {
        let r = ring();
        let p = pt([1, 0, 0, 0]);
        let forms = general_forms_through(&r, &p, 3, SeedStream::new(1)).unwrap();
        let m = fat_point_ideal(&r, &p, 1).unwrap();
        for l in &forms {
            assert!(m.contains(l).unwrap());
        }
        for i in 0..3 {
            for j in 0..i {
                let span = Ideal::new(&r, vec![forms[i].clone(), forms[j].clone()]).unwrap();
                assert_eq!(span.codim(), 2);
            }
        }
        let prod = &forms[0] * &forms[1];
        assert!(fat_point_ideal(&r, &p, 2).unwrap().contains(&prod).unwrap());
    }

    #[test]
    fn formulas() {
        assert_eq!(fatpoint_hvector_formula(3, 2).0, vec![1, 3]);
        assert_eq!(gorenstein_x_hvector_formula(3, 2).0, vec![1, 3, 1]);
        assert_eq!(fatpoint_hvector_formula(3, 3).0, vec![1, 3, 6]);
        assert_eq!(gorenstein_x_hvector_formula(3, 3).0, vec![1, 3, 6, 3, 1]);
        assert_eq!(fatpoint_hvector_formula(2, 2).0, vec![1, 2]);
        assert_eq!(gorenstein_x_hvector_formula(2, 2).0, vec![1, 2, 1]);
        // the h-vector sums to the length of the fat point
        for a in 1..6 {
            assert_eq!(fatpoint_hvector_formula(3, a).sum(), fat_point_degree(a as u32));
        }
    }
}
