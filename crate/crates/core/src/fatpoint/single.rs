//! Linking `p^a` to `p^(a-1)` through the Gorenstein scheme `C + D`.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::HVector;
use crate::liaison::{gorenstein_sum, GorensteinCertificate, LinkChainReport, LinkChecks, LinkKind, LinkStep, LinkStepRecord};
use crate::ops::quotient_ideal;
use crate::random::SeedStream;
use crate::ring::PolyRing;

use super::grid::{grid_curves, GridRecord};
use super::{check_p3, fat_point_ideal, PointP3};

#[derive(Clone, Debug)]
pub struct SingleStep {
    pub step: LinkStep,
    pub grid: GridRecord,
    pub gorenstein: GorensteinCertificate,
    pub gor_h_vector: HVector,
}

#[derive(Clone, Debug, Serialize)]
pub struct SingleStepRecord {
    pub grid: GridRecord,
    pub gorenstein: GorensteinCertificate,
    pub gor_h_vector: HVector,
    pub step: LinkStepRecord,
}

impl SingleStep {
    pub fn record(&self) -> SingleStepRecord {
        SingleStepRecord {
            grid: self.grid.clone(),
            gorenstein: self.gorenstein.clone(),
            gor_h_vector: self.gor_h_vector.clone(),
            step: self.step.record(),
        }
    }
}

/// One link `p^a ~ p^(a-1)`; the checks record whether the residual is
/// exactly `p^(a-1)`.
pub fn single_fatpoint_link_step(
    ring: &Arc<PolyRing>,
    p: &PointP3,
    a: u32,
    seed: SeedStream,
) -> Result<SingleStep> {
    check_p3(ring)?;
    if a < 2 {
        return Err(Error::InvalidInput("multiplicity must be at least 2".into()));
    }
    let grid = grid_curves(ring, p, a as usize, seed.fork("grid"))?;
    let (gor, cert) = gorenstein_sum(&grid.ideal_c, &grid.ideal_d, &grid.ci, seed.fork("gor"))?;
    let z = fat_point_ideal(ring, p, a)?;
    if !gor.is_subset_of(&z)? {
        return Err(Error::Containment(format!(
            "Gorenstein scheme does not contain the fat point of multiplicity {a}"
        )));
    }
    let residual = quotient_ideal(&gor, &z)?.minimized();
    let expected = fat_point_ideal(ring, p, a - 1)?;
    let gor_h = gor.h_vector()?;
    let deg_res = if residual.is_unit() { 0 } else { residual.degree()? };
    let checks = LinkChecks {
        containment: true,
        codim_match: gor.codim() == 3,
        degree_additivity: Some(z.degree()? + deg_res == gor.degree()?),
        geometric: Some(true),
        linking_h_vector_symmetric: Some(gor_h.is_symmetric()),
        residual_cm: None,
        involution: Some(quotient_ideal(&gor, &residual)?.equals(&z)?),
        identity: Some(residual.equals(&expected)?),
    };
    Ok(SingleStep {
        grid: grid.record(),
        gorenstein: cert,
        gor_h_vector: gor_h,
        step: LinkStep {
            label: format!("fat point of multiplicity {a} at {p}"),
            kind: LinkKind::Gorenstein,
            linking: gor,
            input: z,
            residual,
            checks,
            seeds: vec![grid.seed],
        },
    })
}

/// Links `p^a` down to the reduced point `p` in `a - 1` steps.
pub fn single_fatpoint_chain(
    ring: &Arc<PolyRing>,
    p: &PointP3,
    a: u32,
    seed: SeedStream,
) -> Result<(LinkChainReport, Vec<SingleStep>)> {
    let initial = fat_point_ideal(ring, p, a)?;
    let mut steps = Vec::new();
    let mut cur = initial.clone();
    for k in (2..=a).rev() {
        let s = single_fatpoint_link_step(ring, p, k, seed.fork_index("step", (a - k) as usize))?;
        cur = s.step.residual.clone();
        steps.push(s);
    }
    let report = LinkChainReport {
        steps: steps.iter().map(|s| s.step.clone()).collect(),
        initial: initial.clone(),
        final_ideal: cur,
        seed: seed.seed(),
    };
    Ok((report, steps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fatpoint::{gorenstein_x_hvector_formula, p3_ring};

    #[test]
    fn multiplicity_two_and_three() {
        let r = p3_ring(32003).unwrap();
        let p = PointP3::from_i64(r.field(), [1, 2, -3, 5]).unwrap();
        for a in [2u32, 3] {
            let s = single_fatpoint_link_step(&r, &p, a, SeedStream::new(7)).unwrap();
            assert_eq!(s.gor_h_vector, gorenstein_x_hvector_formula(3, a as usize));
            assert!(s.step.checks.all_pass(), "{:?}", s.step.checks);
            assert!(s.gorenstein.certified());
        }
    }

    #[test]
    fn chain_ends_at_the_point() {
        let r = p3_ring(32003).unwrap();
        let p = PointP3::from_i64(r.field(), [1, 0, 0, 0]).unwrap();
        let (chain, _) = single_fatpoint_chain(&r, &p, 3, SeedStream::new(8)).unwrap();
        assert_eq!(chain.steps.len(), 2);
        assert!(chain.final_ideal.equals(&p.ideal(&r).unwrap()).unwrap());
        assert!(chain.all_pass());
    }
}
