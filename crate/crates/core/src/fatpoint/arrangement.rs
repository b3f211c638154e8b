//! Complete intersections `(F, G)` where `F` and `G` are products of distinct
//! planes, split into two sets of lines `Y` and `W`, and the link of a finite
//! scheme through `Gor = I_Y + I_W`, computed one support point at a time.
//!
//! The lines of `(F, G)` are the pairs (row, column) of a plane dividing `F`
//! and a plane dividing `G`. `Y` consists of a chosen set `C` of pairs plus
//! every pair whose column lies in `Q`; `W` is the rest. If a `Y`-line and a
//! `W`-line meet, either they share a plane, or the pair made of the row of
//! one and the column of the other shares a plane with each of them. So every
//! point of `Y ∩ W` lies on a `Y`-line and a `W`-line with a common row or a
//! common column, and enumerating those pairs finds all of them.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::ideal::Ideal;
use crate::ops::{intersect_all, quotient_ideal, saturate};
use crate::poly::Polynomial;
use crate::ring::PolyRing;

use super::{dot, normalize4, PointP3};

pub type Plane = [u32; 4];

/// A component of a finite scheme at one point.
#[derive(Clone, Debug)]
pub enum Component {
    /// The reduced point.
    Reduced,
    /// A primary ideal of length at least 2.
    Scheme(Ideal),
}

impl Component {
    fn classify(i: Ideal) -> Result<Option<Component>> {
        if i.is_unit() {
            return Ok(None);
        }
        Ok(Some(if i.degree()? == 1 { Component::Reduced } else { Component::Scheme(i) }))
    }

    pub fn degree(&self) -> i64 {
        match self {
            Component::Reduced => 1,
            Component::Scheme(i) => i.degree().unwrap_or(0),
        }
    }

    pub fn is_reduced(&self) -> bool {
        matches!(self, Component::Reduced)
    }

    pub fn ideal(&self, ring: &Arc<PolyRing>, p: &PointP3) -> Result<Ideal> {
        match self {
            Component::Reduced => p.ideal(ring),
            Component::Scheme(i) => Ok(i.clone()),
        }
    }

    /// Whether `i` is contained in this component at `p`.
    fn contains_ideal(&self, i: &Ideal, p: &PointP3) -> Result<bool> {
        match self {
            Component::Reduced => Ok(i.gens().iter().all(|g| g.eval(&p.0) == 0)),
            Component::Scheme(c) => i.is_subset_of(c),
        }
    }
}

/// A finite scheme in P^3 stored as its primary components.
#[derive(Clone, Debug, Default)]
pub struct LocalScheme {
    pub components: BTreeMap<PointP3, Component>,
}

impl LocalScheme {
    pub fn degree(&self) -> i64 {
        self.components.values().map(|c| c.degree()).sum()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn get(&self, p: &PointP3) -> Option<&Component> {
        self.components.get(p)
    }

    pub fn non_reduced(&self) -> impl Iterator<Item = (&PointP3, &Component)> {
        self.components.iter().filter(|(_, c)| !c.is_reduced())
    }

    /// The saturated ideal of the whole scheme; reduced points go through
    /// interpolation, the rest through intersections.
    pub fn ideal(&self, ring: &Arc<PolyRing>) -> Result<Ideal> {
        let reduced: Vec<PointP3> = self
            .components
            .iter()
            .filter(|(_, c)| c.is_reduced())
            .map(|(p, _)| *p)
            .collect();
        let mut parts = Vec::new();
        if !reduced.is_empty() {
            parts.push(points_ideal(ring, &reduced)?);
        }
        for (_, c) in self.non_reduced() {
            if let Component::Scheme(i) = c {
                parts.push(i.clone());
            }
        }
        if parts.is_empty() {
            return Ok(Ideal::unit(ring));
        }
        Ok(intersect_all(&parts)?.minimized())
    }
}

/// The ideal of a reduced set of points: forms vanishing on all of them, in
/// every degree up to one past the first degree where the evaluation map is
/// onto.
pub fn points_ideal(ring: &Arc<PolyRing>, points: &[PointP3]) -> Result<Ideal> {
    use crate::liaison::monomials_of_degree;
    use crate::linalg::Matrix;
    let f = ring.field();
    let n = ring.nvars();
    let mut gens = Vec::new();
    let mut onto_at = None;
    let mut d = 1u32;
    loop {
        let monos = monomials_of_degree(n, d);
        let rows: Vec<Vec<u32>> = points
            .iter()
            .map(|p| {
                monos
                    .iter()
                    .map(|m| {
                        (0..n).fold(1u32, |acc, i| f.mul(acc, f.pow(p.0[i], m.exp(i) as u64)))
                    })
                    .collect()
            })
            .collect();
        let mat = Matrix::from_rows(&rows);
        if onto_at.is_none() && mat.rank(f) == points.len() {
            onto_at = Some(d);
        }
        for v in mat.kernel(f) {
            let terms = monos
                .iter()
                .zip(&v)
                .filter(|(_, &c)| c != 0)
                .map(|(m, &c)| crate::poly::Term { coeff: c, mono: *m })
                .collect();
            gens.push(Polynomial::from_terms(ring, terms));
        }
        if onto_at.is_some_and(|e| d > e) {
            break;
        }
        d += 1;
    }
    Ok(Ideal::new(ring, gens)?.minimized())
}

/// Point where three planes meet, if they are independent.
pub fn meet(f: PrimeField, a: &Plane, b: &Plane, c: &Plane) -> Option<PointP3> {
    let det3 = |i: usize, j: usize, k: usize| {
        let m = |r: &Plane, s: usize| r[s];
        let t1 = f.mul(m(a, i), f.sub(f.mul(m(b, j), m(c, k)), f.mul(m(b, k), m(c, j))));
        let t2 = f.mul(m(a, j), f.sub(f.mul(m(b, i), m(c, k)), f.mul(m(b, k), m(c, i))));
        let t3 = f.mul(m(a, k), f.sub(f.mul(m(b, i), m(c, j)), f.mul(m(b, j), m(c, i))));
        f.add(f.sub(t1, t2), t3)
    };
    let v = [
        det3(1, 2, 3),
        f.neg(det3(0, 2, 3)),
        det3(0, 1, 3),
        f.neg(det3(0, 1, 2)),
    ];
    if v.iter().all(|&x| x == 0) {
        return None;
    }
    Some(PointP3(normalize4(f, &v)))
}

/// Lines of a complete intersection of plane products, split into `Y`, `W`.
#[derive(Clone, Debug)]
pub struct Arrangement {
    field: PrimeField,
    planes: Vec<Plane>,
    rows: Vec<usize>,
    cols: Vec<usize>,
    in_q: Vec<bool>,
    c_lines: HashSet<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ArrangementCounts {
    pub rows: usize,
    pub q_columns: usize,
    pub columns: usize,
    pub y_lines: usize,
    pub w_lines: usize,
}

impl Arrangement {
    /// `rows` divide `F`; `q_cols` and `other_cols` divide `G`, the former
    /// also `Q`. `c_lines` holds pairs (index into `rows`, index into
    /// `other_cols`). Fails if a plane repeats.
    pub fn new(
        field: PrimeField,
        rows: &[Plane],
        q_cols: &[Plane],
        other_cols: &[Plane],
        c_lines: &[(usize, usize)],
    ) -> Result<Self> {
        let mut planes = Vec::new();
        let mut seen = HashMap::new();
        let mut add = |p: &Plane| -> Result<usize> {
            let n = normalize4(field, p);
            if seen.insert(n, planes.len()).is_some() {
                return Err(Error::Precondition("a plane occurs twice in the arrangement".into()));
            }
            planes.push(n);
            Ok(planes.len() - 1)
        };
        let rows_idx = rows.iter().map(&mut add).collect::<Result<Vec<_>>>()?;
        let q_idx = q_cols.iter().map(&mut add).collect::<Result<Vec<_>>>()?;
        let other_idx = other_cols.iter().map(&mut add).collect::<Result<Vec<_>>>()?;
        let mut in_q = vec![false; planes.len()];
        for &q in &q_idx {
            in_q[q] = true;
        }
        let c_lines = c_lines
            .iter()
            .map(|&(r, c)| (rows_idx[r], other_idx[c]))
            .collect();
        let mut cols = q_idx;
        cols.extend(other_idx);
        Ok(Arrangement {
            field,
            planes,
            rows: rows_idx,
            cols,
            in_q,
            c_lines,
        })
    }

    pub fn is_y(&self, r: usize, c: usize) -> bool {
        self.in_q[c] || self.c_lines.contains(&(r, c))
    }

    pub fn counts(&self) -> ArrangementCounts {
        let q = self.in_q.iter().filter(|&&b| b).count();
        let y = self.c_lines.len() + self.rows.len() * q;
        ArrangementCounts {
            rows: self.rows.len(),
            q_columns: q,
            columns: self.cols.len(),
            y_lines: y,
            w_lines: self.rows.len() * self.cols.len() - y,
        }
    }

    pub fn plane(&self, i: usize) -> &Plane {
        &self.planes[i]
    }

    /// Upper bound on the number of pairs examined by [`Self::meeting_points`].
    pub fn pair_estimate(&self) -> u128 {
        let c = self.counts();
        let per_row_w = (c.columns - c.q_columns) as u128;
        c.rows as u128 * c.q_columns.max(1) as u128 * per_row_w + c.y_lines as u128 * c.rows as u128
    }

    /// All points where a `Y`-line meets a `W`-line, sorted.
    pub fn meeting_points(&self) -> Vec<PointP3> {
        let f = self.field;
        let mut out = HashSet::new();
        for &r in &self.rows {
            let (ys, ws): (Vec<usize>, Vec<usize>) = self.cols.iter().partition(|&&c| self.is_y(r, c));
            for &y in &ys {
                for &w in &ws {
                    if let Some(p) = meet(f, &self.planes[r], &self.planes[y], &self.planes[w]) {
                        out.insert(p);
                    }
                }
            }
        }
        for &c in &self.cols {
            if self.in_q[c] {
                // every line in a Q column belongs to Y
                continue;
            }
            let (ys, ws): (Vec<usize>, Vec<usize>) = self.rows.iter().partition(|&&r| self.is_y(r, c));
            for &y in &ys {
                for &w in &ws {
                    if let Some(p) = meet(f, &self.planes[c], &self.planes[y], &self.planes[w]) {
                        out.insert(p);
                    }
                }
            }
        }
        let mut v: Vec<PointP3> = out.into_iter().collect();
        v.sort();
        v
    }

    /// `Y`-lines and `W`-lines through `p`, as (row, column) plane indices.
    pub fn lines_through(&self, p: &PointP3) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
        let f = self.field;
        let on = |i: &usize| dot(f, &self.planes[*i], &p.0) == 0;
        let rows: Vec<usize> = self.rows.iter().copied().filter(on).collect();
        let cols: Vec<usize> = self.cols.iter().copied().filter(on).collect();
        let mut y = Vec::new();
        let mut w = Vec::new();
        for &r in &rows {
            for &c in &cols {
                if self.is_y(r, c) {
                    y.push((r, c));
                } else {
                    w.push((r, c));
                }
            }
        }
        (y, w)
    }

    /// Meeting points outside `special` with more than two lines.
    pub fn crowded_points(&self, special: &[PointP3]) -> Vec<PointP3> {
        self.meeting_points()
            .into_iter()
            .filter(|p| !special.contains(p))
            .filter(|p| {
                let (y, w) = self.lines_through(p);
                y.len() + w.len() > 2
            })
            .collect()
    }

    pub fn planes_through(&self, p: &PointP3) -> Vec<usize> {
        (0..self.planes.len())
            .filter(|&i| dot(self.field, &self.planes[i], &p.0) == 0)
            .collect()
    }

    fn line_ideal(&self, ring: &Arc<PolyRing>, (r, c): (usize, usize)) -> Result<Ideal> {
        Ideal::new(
            ring,
            vec![
                Polynomial::linear(ring, &self.planes[r]),
                Polynomial::linear(ring, &self.planes[c]),
            ],
        )
    }

    /// Product of the row planes, the `Q` planes and all column planes.
    pub fn forms(&self, ring: &Arc<PolyRing>) -> (Polynomial, Polynomial, Polynomial) {
        let lin = |i: &usize| Polynomial::linear(ring, &self.planes[*i]);
        let rows: Vec<Polynomial> = self.rows.iter().map(lin).collect();
        let q: Vec<Polynomial> = self.cols.iter().filter(|&&c| self.in_q[c]).map(lin).collect();
        let cols: Vec<Polynomial> = self.cols.iter().map(lin).collect();
        (
            Polynomial::product(ring, &rows),
            Polynomial::product(ring, &q),
            Polynomial::product(ring, &cols),
        )
    }
}

/// Outcome of linking a finite scheme through `I_Y + I_W`.
#[derive(Clone, Debug)]
pub struct LocalLink {
    pub gor: LocalScheme,
    pub residual: LocalScheme,
    pub counts: ArrangementCounts,
    /// Most lines through a point outside `special`.
    pub max_lines_elsewhere: usize,
    /// Points outside `special` with more than two lines.
    pub crowded_points: Vec<PointP3>,
    /// Components where `Gor : (Gor : Z) = Z` failed.
    pub involution_failures: Vec<PointP3>,
}

impl LocalLink {
    pub fn degree_additivity(&self, input_degree: i64) -> bool {
        self.gor.degree() == input_degree + self.residual.degree()
    }
}

/// Links `z` through the Gorenstein scheme of the arrangement. Fails with a
/// containment error if a component of `z` is not contained in `Gor`.
pub fn link_locally(
    arr: &Arrangement,
    ring: &Arc<PolyRing>,
    z: &LocalScheme,
    special: &[PointP3],
) -> Result<LocalLink> {
    let points = arr.meeting_points();
    let present: HashSet<&PointP3> = points.iter().collect();
    if let Some(p) = z.components.keys().find(|p| !present.contains(p)) {
        return Err(Error::Containment(format!("the scheme has a component at {p} off Gor")));
    }
    let mut gor = LocalScheme::default();
    let mut residual = LocalScheme::default();
    let mut max_lines = 0;
    let mut crowded = Vec::new();
    let mut involution_failures = Vec::new();
    for p in points {
        let (y, w) = arr.lines_through(&p);
        if y.is_empty() || w.is_empty() {
            return Err(Error::verification(
                "arrangement",
                format!("meeting point {p} without both kinds of line"),
            ));
        }
        let zc = z.get(&p);
        if !special.contains(&p) {
            max_lines = max_lines.max(y.len() + w.len());
            if y.len() + w.len() > 2 {
                crowded.push(p);
            }
        }
        if y.len() == 1 && w.len() == 1 && zc.is_none() {
            gor.components.insert(p, Component::Reduced);
            residual.components.insert(p, Component::Reduced);
            continue;
        }
        let yi = intersect_all(&y.iter().map(|&l| arr.line_ideal(ring, l)).collect::<Result<Vec<_>>>()?)?;
        let wi = intersect_all(&w.iter().map(|&l| arr.line_ideal(ring, l)).collect::<Result<Vec<_>>>()?)?;
        let k = p.0.iter().position(|&c| c != 0).expect("nonzero point");
        let gi = saturate(&yi.sum(&wi)?, &Polynomial::var(ring, k))?.minimized();
        let res = match zc {
            None => gi.clone(),
            Some(zc) => {
                if !zc.contains_ideal(&gi, &p)? {
                    return Err(Error::Containment(format!("Gor does not contain the scheme at {p}")));
                }
                let zi = zc.ideal(ring, &p)?;
                let r = quotient_ideal(&gi, &zi)?.minimized();
                if !quotient_ideal(&gi, &r)?.equals(&zi)? {
                    involution_failures.push(p);
                }
                r
            }
        };
        if let Some(c) = Component::classify(gi)? {
            gor.components.insert(p, c);
        }
        if let Some(c) = Component::classify(res)? {
            residual.components.insert(p, c);
        }
    }
    Ok(LocalLink {
        gor,
        residual,
        counts: arr.counts(),
        max_lines_elsewhere: max_lines,
        crowded_points: crowded,
        involution_failures,
    })
}

/// Checks a global computation against the local one: the global ideal is
/// contained in every local component and has the same degree.
pub fn matches_global(global: &Ideal, local: &LocalScheme) -> Result<bool> {
    let deg = if global.is_unit() { 0 } else { global.degree()? };
    if deg != local.degree() {
        return Ok(false);
    }
    for (p, c) in &local.components {
        if !c.contains_ideal(global, p)? {
            return Ok(false);
        }
    }
    Ok(true)
}
