//! Repeated double links until every point is reduced.

use std::sync::Arc;

use serde::Serialize;

use crate::error::Result;
use crate::random::SeedStream;
use crate::ring::PolyRing;
use crate::zerodim::{is_reduced_zero_dim, ReducedCertificate};

use super::arrangement::points_ideal;
use super::double::{double_step_report, DoubleStepOptions, DoubleStepRecord};
use super::{check_p3, FatPointScheme};

/// Final schemes up to this degree are also checked with a global ideal.
pub const GLOBAL_REDUCED_CHECK_DEGREE: i64 = 120;

#[derive(Clone, Debug, Serialize)]
pub struct ReductionReport {
    pub seed: u64,
    pub initial: FatPointScheme,
    pub initial_degree: i64,
    pub steps: Vec<DoubleStepRecord>,
    /// Two per double step.
    pub links: usize,
    pub final_scheme: FatPointScheme,
    pub final_degree: i64,
    /// Every component of the final scheme is a reduced point.
    pub reduced: bool,
    /// The check on the ideal of the final points, when it is small enough.
    pub global_reduced: Option<ReducedCertificate>,
    /// First failed check, if the chain stopped early.
    pub failure: Option<String>,
}

impl ReductionReport {
    pub fn all_pass(&self) -> bool {
        self.failure.is_none() && self.reduced && self.global_reduced.as_ref().map_or(true, |c| c.reduced)
    }

    pub fn text(&self) -> String {
        let mut out = format!(
            "reduction of a scheme of degree {} with {} points, seed {}\n",
            self.initial_degree,
            self.initial.points.len(),
            self.seed
        );
        for (k, s) in self.steps.iter().enumerate() {
            let failed = s.checks.iter().filter(|c| !c.passed).count();
            out.push_str(&format!(
                "  step {}: links {} and {} at {} (multiplicity {} -> {}), Z' degree {}, Z'' degree {}, {} new points, {} failed checks\n",
                k + 1,
                2 * k + 1,
                2 * k + 2,
                s.focus,
                s.a,
                s.a.saturating_sub(2),
                s.first.residual_degree,
                s.output_degree,
                s.new_points,
                failed
            ));
        }
        out.push_str(&format!("links: {}\n", self.links));
        out.push_str(&format!("final degree: {}\n", self.final_degree));
        out.push_str(&format!("final scheme reduced: {}\n", self.reduced));
        if let Some(c) = &self.global_reduced {
            out.push_str(&format!(
                "global check: {} distinct rational eigenvalues for degree {}, reduced {}\n",
                c.rational_eigenvalues, c.degree, c.reduced
            ));
        }
        if let Some(f) = &self.failure {
            out.push_str(&format!("stopped: {f}\n"));
        }
        out
    }
}

/// Applies double links at each point of multiplicity at least 2 in turn.
/// Stops at the first double step with a failed check and reports it.
pub fn reduce_to_reduced(
    ring: &Arc<PolyRing>,
    z: &FatPointScheme,
    opts: DoubleStepOptions,
    seed: SeedStream,
) -> Result<ReductionReport> {
    check_p3(ring)?;
    let mut cur = z.clone();
    let mut steps = Vec::new();
    let mut failure = None;
    while let Some(focus) = cur.points.iter().position(|(_, b)| *b >= 2) {
        let rep = double_step_report(ring, &cur, focus, opts, seed.fork_index("double", steps.len()))?;
        if let Some(c) = rep.first_failure() {
            failure = Some(format!("step {}: {} {}", steps.len() + 1, c.name, c.detail));
            steps.push(rep.record);
            break;
        }
        steps.push(rep.record);
        cur = rep.output;
    }
    let reduced = failure.is_none() && cur.is_reduced();
    let global_reduced = if reduced && !cur.points.is_empty() && cur.degree() <= GLOBAL_REDUCED_CHECK_DEGREE {
        let pts: Vec<_> = cur.points.iter().map(|(p, _)| *p).collect();
        let ideal = points_ideal(ring, &pts)?;
        Some(is_reduced_zero_dim(&ideal, seed.fork("final"))?)
    } else {
        None
    };
    Ok(ReductionReport {
        seed: seed.seed(),
        initial: z.clone(),
        initial_degree: z.degree(),
        links: 2 * steps.len(),
        steps,
        final_degree: cur.degree(),
        final_scheme: cur,
        reduced,
        global_reduced,
        failure,
    })
}
