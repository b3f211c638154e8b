//! The complete intersection of `a` and `a + 1` planes through a point, and
//! its split into two cone curves `C`, `D` with h-vector `(1, 2, ..., a)`.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::HVector;
use crate::ideal::Ideal;
use crate::ops::{intersect, intersect_all, quotient_ideal};
use crate::poly::Polynomial;
use crate::random::SeedStream;
use crate::ring::PolyRing;

use super::{check_p3, fat_point_ideal, general_planes_through, PointP3, ATTEMPTS};

#[derive(Clone, Debug)]
pub struct GridCurveSelection {
    pub point: PointP3,
    pub a: usize,
    /// `a` planes, coefficient vectors.
    pub a_planes: Vec<[u32; 4]>,
    /// `a + 1` planes.
    pub b_planes: Vec<[u32; 4]>,
    /// Lines `A_i = B_j = 0` of `C`, as `(i, j)`.
    pub selected: Vec<(usize, usize)>,
    pub complement: Vec<(usize, usize)>,
    pub ci: Ideal,
    pub ideal_c: Ideal,
    pub ideal_d: Ideal,
    pub h_vector: HVector,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GridRecord {
    pub point: PointP3,
    pub a: usize,
    pub lines: usize,
    pub selected: Vec<(usize, usize)>,
    pub h_vector_c: HVector,
    pub h_vector_d: HVector,
    pub seed: u64,
}

impl GridCurveSelection {
    pub fn a_forms(&self) -> Vec<Polynomial> {
        let r = self.ci.ring();
        self.a_planes.iter().map(|v| Polynomial::linear(r, v)).collect()
    }

    pub fn b_forms(&self) -> Vec<Polynomial> {
        let r = self.ci.ring();
        self.b_planes.iter().map(|v| Polynomial::linear(r, v)).collect()
    }

    pub fn record(&self) -> GridRecord {
        GridRecord {
            point: self.point,
            a: self.a,
            lines: self.a_planes.len() * self.b_planes.len(),
            selected: self.selected.clone(),
            h_vector_c: self.h_vector.clone(),
            h_vector_d: self.ideal_d.h_vector().unwrap_or_default(),
            seed: self.seed,
        }
    }
}

/// Lines `(i, j)` with `j <= i`.
pub fn triangular_selection(a: usize) -> Vec<(usize, usize)> {
    (0..a).flat_map(|i| (0..=i).map(move |j| (i, j))).collect()
}

/// Generators `A_k..A_{a-1} * B_0..B_{k-1}` for `k = 0..=a` of the ideal of
/// the triangular selection.
pub fn triangular_generators(a_forms: &[Polynomial], b_forms: &[Polynomial]) -> Vec<Polynomial> {
    let a = a_forms.len();
    (0..=a)
        .map(|k| {
            let ring = a_forms[0].ring();
            let left = Polynomial::product(ring, &a_forms[k..]);
            let right = Polynomial::product(ring, &b_forms[..k]);
            &left * &right
        })
        .collect()
}

fn line_ideal(ring: &Arc<PolyRing>, p: &[u32; 4], q: &[u32; 4]) -> Result<Ideal> {
    Ideal::new(ring, vec![Polynomial::linear(ring, p), Polynomial::linear(ring, q)])
}

fn try_grid(
    ring: &Arc<PolyRing>,
    p: &PointP3,
    a: usize,
    seed: SeedStream,
) -> Result<std::result::Result<GridCurveSelection, String>> {
    let f = ring.field();
    let planes = general_planes_through(f, p, 2 * a + 1, &[], seed.fork("planes"))?;
    let (a_planes, b_planes) = (planes[..a].to_vec(), planes[a..].to_vec());
    let a_forms: Vec<Polynomial> = a_planes.iter().map(|v| Polynomial::linear(ring, v)).collect();
    let b_forms: Vec<Polynomial> = b_planes.iter().map(|v| Polynomial::linear(ring, v)).collect();
    let ci = Ideal::new(ring, vec![Polynomial::product(ring, &a_forms), Polynomial::product(ring, &b_forms)])?;
    if ci.codim() != 2 || ci.degree()? != (a * (a + 1)) as i64 {
        return Ok(Err("planes do not cut a complete intersection of a(a+1) lines".into()));
    }
    let selected = triangular_selection(a);
    let complement: Vec<(usize, usize)> = (0..a)
        .flat_map(|i| (0..=a).map(move |j| (i, j)))
        .filter(|ij| !selected.contains(ij))
        .collect();
    let lines = |set: &[(usize, usize)]| -> Result<Vec<Ideal>> {
        set.iter()
            .map(|&(i, j)| line_ideal(ring, &a_planes[i], &b_planes[j]))
            .collect()
    };
    let ideal_c = intersect_all(&lines(&selected)?)?.minimized();
    let ideal_d = intersect_all(&lines(&complement)?)?.minimized();
    let expected = HVector((1..=a as i64).collect());
    let h_c = ideal_c.h_vector()?;
    if h_c != expected {
        return Ok(Err(format!("C has h-vector {h_c}, expected {expected}")));
    }
    if ideal_d.h_vector()? != expected {
        return Ok(Err("D has a different h-vector from C".into()));
    }
    let tri = Ideal::new(ring, triangular_generators(&a_forms, &b_forms))?;
    if !tri.equals(&ideal_c)? {
        return Ok(Err("triangular generators do not cut out C".into()));
    }
    let fat = fat_point_ideal(ring, p, a as u32)?;
    if !ideal_c.is_subset_of(&fat)? || !ideal_d.is_subset_of(&fat)? {
        return Ok(Err("C or D does not contain the fat point".into()));
    }
    if !intersect(&ideal_c, &ideal_d)?.equals(&ci)? {
        return Ok(Err("C and D are not linked by the complete intersection".into()));
    }
    if !quotient_ideal(&ci, &ideal_c)?.equals(&ideal_d)? {
        return Ok(Err("D is not the residual of C".into()));
    }
    Ok(Ok(GridCurveSelection {
        point: *p,
        a,
        a_planes,
        b_planes,
        selected,
        complement,
        ci,
        ideal_c,
        ideal_d,
        h_vector: h_c,
        seed: seed.seed(),
    }))
}

/// Builds and verifies the selection; retries with fresh planes on failure.
pub fn grid_curves(ring: &Arc<PolyRing>, p: &PointP3, a: usize, seed: SeedStream) -> Result<GridCurveSelection> {
    check_p3(ring)?;
    if a < 1 {
        return Err(Error::InvalidInput("grid size must be at least 1".into()));
    }
    let mut seeds = Vec::new();
    let mut last = String::new();
    for k in 0..ATTEMPTS {
        let s = seed.fork_index("grid", k);
        seeds.push(s.seed());
        match try_grid(ring, p, a, s)? {
            Ok(g) => return Ok(g),
            Err(why) => last = why,
        }
    }
    Err(Error::Genericity {
        what: format!("grid selection at {p} with a = {a}: {last}"),
        attempts: ATTEMPTS,
        seeds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fatpoint::p3_ring;

    #[test]
    fn small_grids() {
        let r = p3_ring(32003).unwrap();
        let p = PointP3::from_i64(r.field(), [1, 0, 0, 0]).unwrap();
        for (a, hv) in [(1, vec![1]), (2, vec![1, 2]), (3, vec![1, 2, 3])] {
            let g = grid_curves(&r, &p, a, SeedStream::new(11)).unwrap();
            assert_eq!(g.selected.len(), a * (a + 1) / 2);
            assert_eq!(g.complement.len(), a * (a + 1) / 2);
            assert_eq!(g.h_vector.0, hv);
            assert_eq!(g.ideal_c.degree().unwrap() as usize, a * (a + 1) / 2);
        }
    }

    #[test]
    fn point_off_the_origin() {
        let r = p3_ring(32003).unwrap();
        let p = PointP3::from_i64(r.field(), [2, -1, 7, 3]).unwrap();
        let g = grid_curves(&r, &p, 2, SeedStream::new(5)).unwrap();
        let fat = fat_point_ideal(&r, &p, 2).unwrap();
        assert!(g.ideal_c.is_subset_of(&fat).unwrap());
    }
}
