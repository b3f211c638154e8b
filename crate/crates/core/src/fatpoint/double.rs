//! Two Gorenstein links that lower the multiplicity of one fat point of a
//! union by two, leave the other fat points alone and add reduced points.
//!
//! First link: `I_Y = Q I_C + (F)` with `F = A * prod L`, `Q = prod M`, linked
//! by `(F, G)`, `G = Q B prod N`, to `W`; `Gor = I_Y + I_W` links `Z` to `Z'`.
//! Second link: the same with a grid of `a` and `a - 1` planes at the focus
//! and planes `L'_k, M'_k, N'_k` through the new reduced points `R_k`,
//! giving `Y'`, `W'`, `Gor'` and the residual `Z''` of `Z'`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::HVector;
use crate::ideal::Ideal;
use crate::ops::{intersect, quotient_ideal, saturate_irrelevant};
use crate::random::SeedStream;
use crate::report::IdealSummary;
use crate::ring::PolyRing;

use super::arrangement::{link_locally, matches_global, Arrangement, ArrangementCounts, Component, LocalLink, LocalScheme, Plane};
use super::grid::{grid_curves, GridCurveSelection};
use super::{check_p3, dot, fat_point_ideal, general_planes_through, gorenstein_x_hvector_formula, union_ideal, FatPointScheme, PointP3, ATTEMPTS};

/// How planes through the new reduced points `R_k` are chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RepairPolicy {
    /// Omit `L'_k` (`M'_k`, `N'_k`) when `R_k` already lies on one of the
    /// reused planes `L` (`M`, `N`), so that exactly two lines pass through
    /// `R_k` in the second link.
    #[default]
    SkipCovered,
    /// Always add all three planes.
    Literal,
}

#[derive(Clone, Copy, Debug)]
pub struct DoubleStepOptions {
    pub policy: RepairPolicy,
    /// Compare with a global computation when the arrangement has at most
    /// this many lines.
    pub cross_check_lines: usize,
    /// Refuse arrangements needing more pair checks than this.
    pub max_pairs: u128,
}

impl Default for DoubleStepOptions {
    fn default() -> Self {
        DoubleStepOptions {
            policy: RepairPolicy::SkipCovered,
            cross_check_lines: 60,
            max_pairs: 50_000_000,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct NamedCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> NamedCheck {
    NamedCheck {
        name: name.to_string(),
        passed,
        detail: detail.into(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GlobalCheck {
    pub y_is_intersection: bool,
    pub gor_matches: bool,
    pub residual_matches: bool,
    pub y: IdealSummary,
    pub w: IdealSummary,
    pub gor: IdealSummary,
    pub residual: IdealSummary,
}

#[derive(Clone, Debug, Serialize)]
pub struct LinkStageRecord {
    pub label: String,
    pub counts: ArrangementCounts,
    /// Degrees of `F`, `Q`, `G`.
    pub f_degree: usize,
    pub q_degree: usize,
    pub g_degree: usize,
    pub gor_points: usize,
    pub gor_degree: i64,
    pub input_degree: i64,
    pub residual_degree: i64,
    pub gor_h_vector_at_focus: HVector,
    pub max_lines_elsewhere: usize,
    pub crowded_points: usize,
    pub non_reduced_residual: Vec<(PointP3, i64)>,
    pub global: Option<GlobalCheck>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DoubleStepRecord {
    pub focus: PointP3,
    pub a: u32,
    pub policy: RepairPolicy,
    pub seed: u64,
    pub input: FatPointScheme,
    pub input_degree: i64,
    pub new_points: usize,
    pub skipped_planes: [usize; 3],
    /// Auxiliary planes redrawn to clear accidental crowded points, per link.
    pub redrawn_planes: [usize; 2],
    pub first: LinkStageRecord,
    pub second: LinkStageRecord,
    pub output_degree: i64,
    pub checks: Vec<NamedCheck>,
}

#[derive(Clone, Debug)]
pub struct DoubleStepReport {
    pub record: DoubleStepRecord,
    /// `Z'` and `Z''`, by components.
    pub first_residual: LocalScheme,
    pub second_residual: LocalScheme,
    /// `Z''` as a union of fat points.
    pub output: FatPointScheme,
}

impl DoubleStepReport {
    pub fn all_pass(&self) -> bool {
        self.record.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&NamedCheck> {
        self.record.checks.iter().find(|c| !c.passed)
    }

    pub fn text(&self) -> String {
        let r = &self.record;
        let mut out = format!(
            "double link at {} (multiplicity {}), {} other points, seed {}\n",
            r.focus,
            r.a,
            r.input.points.len() - 1,
            r.seed
        );
        for st in [&r.first, &r.second] {
            out.push_str(&format!(
                "  {}: F deg {}, Q deg {}, G deg {}; Y {} lines, W {} lines\n",
                st.label, st.f_degree, st.q_degree, st.g_degree, st.counts.y_lines, st.counts.w_lines
            ));
            out.push_str(&format!(
                "    Gor: {} points, degree {} = {} + {}, h-vector at focus {}\n",
                st.gor_points, st.gor_degree, st.input_degree, st.residual_degree, st.gor_h_vector_at_focus
            ));
            if let Some(g) = &st.global {
                out.push_str(&format!(
                    "    global: Y {} / Gor {} / residual {}\n",
                    g.y_is_intersection, g.gor_matches, g.residual_matches
                ));
            }
        }
        out.push_str(&format!(
            "  new reduced points R_k: {}, planes skipped (L', M', N'): {:?}, redrawn: {:?}\n",
            r.new_points, r.skipped_planes, r.redrawn_planes
        ));
        out.push_str(&format!("  Z'' degree {}\n", r.output_degree));
        for c in &r.checks {
            out.push_str(&format!(
                "  [{}] {}{}\n",
                if c.passed { "ok" } else { "FAILED" },
                c.name,
                if c.detail.is_empty() { String::new() } else { format!(": {}", c.detail) }
            ));
        }
        out
    }
}

fn expected_component(ring: &Arc<PolyRing>, p: &PointP3, b: u32) -> Result<Option<Ideal>> {
    if b == 0 {
        Ok(None)
    } else {
        Ok(Some(fat_point_ideal(ring, p, b)?))
    }
}

fn component_is(ring: &Arc<PolyRing>, s: &LocalScheme, p: &PointP3, b: u32) -> Result<bool> {
    Ok(match (s.get(p), expected_component(ring, p, b)?) {
        (None, None) => true,
        (Some(Component::Reduced), Some(_)) => b == 1,
        (Some(Component::Scheme(i)), Some(e)) => i.equals(&e)?,
        _ => false,
    })
}

fn focus_h_vector(s: &LocalScheme, p: &PointP3) -> HVector {
    match s.get(p) {
        None => HVector(vec![]),
        Some(Component::Reduced) => HVector(vec![1]),
        Some(Component::Scheme(i)) => i.h_vector().unwrap_or_default(),
    }
}

struct Stage {
    link: LocalLink,
    global: Option<(GlobalCheck, Ideal)>,
    record: LinkStageRecord,
}

#[allow(clippy::too_many_arguments)]
fn run_stage(
    label: &str,
    ring: &Arc<PolyRing>,
    arr: Arrangement,
    grid: &GridCurveSelection,
    z: &LocalScheme,
    z_global: Option<&Ideal>,
    focus: &PointP3,
    special: &[PointP3],
    opts: &DoubleStepOptions,
    seed: SeedStream,
) -> Result<Stage> {
    let counts = arr.counts();
    if arr.pair_estimate() > opts.max_pairs {
        return Err(Error::ResourceLimit(format!(
            "{label}: {} rows and {} columns need about {} pair checks (limit {})",
            counts.rows,
            counts.columns,
            arr.pair_estimate(),
            opts.max_pairs
        )));
    }
    let link = link_locally(&arr, ring, z, special)?;
    let global = match z_global {
        Some(zg) if counts.y_lines + counts.w_lines <= opts.cross_check_lines => {
            Some(global_check(ring, &arr, grid, zg, &link, seed)?)
        }
        _ => None,
    };
    let record = LinkStageRecord {
        label: label.to_string(),
        f_degree: counts.rows,
        q_degree: counts.q_columns,
        g_degree: counts.columns,
        gor_points: link.gor.len(),
        gor_degree: link.gor.degree(),
        input_degree: z.degree(),
        residual_degree: link.residual.degree(),
        gor_h_vector_at_focus: focus_h_vector(&link.gor, focus),
        max_lines_elsewhere: link.max_lines_elsewhere,
        crowded_points: link.crowded_points.len(),
        non_reduced_residual: link
            .residual
            .non_reduced()
            .map(|(p, c)| (*p, c.degree()))
            .collect(),
        global: global.as_ref().map(|(g, _)| g.clone()),
        counts,
    };
    Ok(Stage { link, global, record })
}

/// The link computed with whole ideals: `I_Y = Q I_C + (F)`,
/// `I_W = (F, G) : I_Y`, `Gor = (I_Y + I_W)^sat`, `Z' = Gor : I_Z`.
fn global_check(
    ring: &Arc<PolyRing>,
    arr: &Arrangement,
    grid: &GridCurveSelection,
    z: &Ideal,
    local: &LocalLink,
    seed: SeedStream,
) -> Result<(GlobalCheck, Ideal)> {
    let (f, q, g) = arr.forms(ring);
    let y = grid.ideal_c.scale(&q)?.add_gens(&[f.clone()])?.minimized();
    let fq = Ideal::new(ring, vec![f.clone(), q])?;
    let y_is_intersection = y.equals(&intersect(&grid.ideal_c, &fq)?)?;
    let ci = Ideal::new(ring, vec![f, g])?;
    let w = quotient_ideal(&ci, &y)?.minimized();
    let gor = saturate_irrelevant(&y.sum(&w)?, seed.fork("gor"))?.minimized();
    let residual = quotient_ideal(&gor, z)?.minimized();
    let check = GlobalCheck {
        y_is_intersection,
        gor_matches: matches_global(&gor, &local.gor)?,
        residual_matches: matches_global(&residual, &local.residual)?,
        y: IdealSummary::of(&y),
        w: IdealSummary::of(&w),
        gor: IdealSummary::of(&gor),
        residual: IdealSummary::of(&residual),
    };
    Ok((check, residual))
}

fn fat_local(ring: &Arc<PolyRing>, z: &FatPointScheme) -> Result<LocalScheme> {
    let mut s = LocalScheme::default();
    for (p, b) in &z.points {
        let c = if *b == 1 {
            Component::Reduced
        } else {
            Component::Scheme(fat_point_ideal(ring, p, *b)?)
        };
        s.components.insert(*p, c);
    }
    Ok(s)
}

fn on_any(f: crate::field::PrimeField, planes: &[Plane], p: &PointP3) -> bool {
    planes.iter().any(|h| dot(f, h, &p.0) == 0)
}

/// An auxiliary plane and the point it must pass through.
#[derive(Clone, Copy, Debug)]
struct Slot {
    anchor: PointP3,
    plane: Plane,
}

/// The `L`, `M`, `N` families (or their primed versions).
type Families = [Vec<Slot>; 3];

fn planes_of(fam: &[Slot]) -> Vec<Plane> {
    fam.iter().map(|s| s.plane).collect()
}

const REDRAW_ROUNDS: usize = 40;

/// Over a prime field of moderate size, random planes through prescribed
/// points often meet four at a time somewhere in a large arrangement. Each
/// such crowded point is cleared by redrawing the last auxiliary plane
/// through it; points left crowded after the round limit show up in the
/// checks.
#[allow(clippy::too_many_arguments)]
fn settle(
    f: crate::field::PrimeField,
    fams: &mut Families,
    build: impl Fn(&Families) -> Result<Arrangement>,
    special: &[PointP3],
    avoid: &[PointP3],
    opts: &DoubleStepOptions,
    seed: SeedStream,
    redraws: &mut usize,
) -> Result<Arrangement> {
    for _ in 0..REDRAW_ROUNDS {
        let arr = build(fams)?;
        if arr.pair_estimate() > opts.max_pairs {
            return Ok(arr);
        }
        let crowded = arr.crowded_points(special);
        let mut touched = std::collections::HashSet::new();
        for c in &crowded {
            let hit = fams
                .iter()
                .enumerate()
                .flat_map(|(j, fam)| fam.iter().enumerate().map(move |(i, s)| (j, i, s)))
                .filter(|(_, _, s)| dot(f, &s.plane, &c.0) == 0)
                .map(|(j, i, _)| (j, i))
                .last();
            if let Some((j, i)) = hit {
                if touched.insert((j, i)) {
                    let slot = &mut fams[j][i];
                    slot.plane = general_planes_through(f, &slot.anchor, 1, avoid, seed.fork_index("plane", *redraws))?[0];
                    *redraws += 1;
                }
            }
        }
        if touched.is_empty() {
            return Ok(arr);
        }
    }
    build(fams)
}

/// Runs both links and every check; never fails on a check, only on
/// resource limits, genericity exhaustion or broken containments.
pub fn double_step_report(
    ring: &Arc<PolyRing>,
    z: &FatPointScheme,
    focus: usize,
    opts: DoubleStepOptions,
    seed: SeedStream,
) -> Result<DoubleStepReport> {
    check_p3(ring)?;
    let (p, a) = *z
        .points
        .get(focus)
        .ok_or_else(|| Error::InvalidInput(format!("no point with index {focus}")))?;
    if a < 2 {
        return Err(Error::Precondition("the focus point must have multiplicity at least 2".into()));
    }
    let mut seeds = Vec::new();
    let mut last = None;
    for attempt in 0..ATTEMPTS {
        let s = seed.fork_index("attempt", attempt);
        seeds.push(s.seed());
        match attempt_double_step(ring, z, focus, p, a, &opts, s) {
            Err(e) if e.is_genericity() || matches!(e, Error::Precondition(_)) => last = Some(e),
            other => return other,
        }
    }
    Err(Error::Genericity {
        what: format!(
            "double link at {p}: {}",
            last.map(|e| e.to_string()).unwrap_or_default()
        ),
        attempts: ATTEMPTS,
        seeds,
    })
}

fn attempt_double_step(
    ring: &Arc<PolyRing>,
    z: &FatPointScheme,
    focus: usize,
    p: PointP3,
    a: u32,
    opts: &DoubleStepOptions,
    seed: SeedStream,
) -> Result<DoubleStepReport> {
    let f = ring.field();
    let all_points: Vec<PointP3> = z.points.iter().map(|(q, _)| *q).collect();
    let others: Vec<(PointP3, u32)> = z
        .points
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != focus)
        .map(|(_, x)| *x)
        .collect();

    let grid = grid_curves(ring, &p, a as usize, seed.fork("grid"))?;
    if grid.a_planes.iter().chain(&grid.b_planes).any(|h| on_any(f, &[*h], &p) && others.iter().any(|(q, _)| dot(f, h, &q.0) == 0)) {
        return Err(Error::Precondition("a grid plane passes through another point".into()));
    }
    let mut fams1: Families = Default::default();
    for (i, (q, b)) in others.iter().enumerate() {
        let b = *b as usize;
        let planes = general_planes_through(f, q, 3 * b, &all_points, seed.fork_index("other", i))?;
        for (j, fam) in fams1.iter_mut().enumerate() {
            fam.extend(planes[j * b..(j + 1) * b].iter().map(|h| Slot { anchor: *q, plane: *h }));
        }
    }

    // first link
    let build1 = |fams: &Families| {
        let [l, m, n] = fams.each_ref().map(|fam| planes_of(fam));
        let mut rows = grid.a_planes.clone();
        rows.extend_from_slice(&l);
        let mut cols = grid.b_planes.clone();
        cols.extend_from_slice(&n);
        Arrangement::new(f, &rows, &m, &cols, &grid.selected)
    };
    let mut redraws = [0usize; 2];
    let arr1 = settle(f, &mut fams1, build1, &all_points, &all_points, opts, seed.fork("redraw1"), &mut redraws[0])?;
    let [l, m, n] = fams1.each_ref().map(|fam| planes_of(fam));
    let z_local = fat_local(ring, z)?;
    let z_global = if arr1.counts().y_lines + arr1.counts().w_lines <= opts.cross_check_lines {
        Some(union_ideal(ring, z)?)
    } else {
        None
    };
    let stage1 = run_stage(
        "first link",
        ring,
        arr1,
        &grid,
        &z_local,
        z_global.as_ref(),
        &p,
        &all_points,
        opts,
        seed.fork("stage1"),
    )?;
    let z1 = &stage1.link.residual;
    let new_points: Vec<PointP3> = z1
        .components
        .keys()
        .filter(|q| !all_points.contains(q))
        .copied()
        .collect();

    // second link
    let grid2 = grid_curves(ring, &p, a as usize - 1, seed.fork("grid2"))?;
    let mut special2 = all_points.clone();
    special2.extend_from_slice(&new_points);
    let mut fams2: Families = Default::default();
    let mut skipped = [0usize; 3];
    for (k, r) in new_points.iter().enumerate() {
        let planes = general_planes_through(f, r, 3, &special2, seed.fork_index("new", k))?;
        let covered = match opts.policy {
            RepairPolicy::Literal => [false; 3],
            RepairPolicy::SkipCovered => [on_any(f, &l, r), on_any(f, &m, r), on_any(f, &n, r)],
        };
        for (j, fam) in fams2.iter_mut().enumerate() {
            if covered[j] {
                skipped[j] += 1;
            } else {
                fam.push(Slot { anchor: *r, plane: planes[j] });
            }
        }
    }
    // C' sits on (A'_i, B'_j); rows now carry the B' family
    let c2: Vec<(usize, usize)> = grid2.selected.iter().map(|&(i, j)| (j, i)).collect();
    let build2 = |fams: &Families| {
        let [l2, m2, n2] = fams.each_ref().map(|fam| planes_of(fam));
        let mut rows = grid2.b_planes.clone();
        rows.extend_from_slice(&l);
        rows.extend_from_slice(&l2);
        let mut q = m.clone();
        q.extend_from_slice(&m2);
        let mut cols = grid2.a_planes.clone();
        cols.extend_from_slice(&n);
        cols.extend_from_slice(&n2);
        Arrangement::new(f, &rows, &q, &cols, &c2)
    };
    let arr2 = settle(f, &mut fams2, build2, &special2, &special2, opts, seed.fork("redraw2"), &mut redraws[1])?;
    let z1_global = stage1.global.as_ref().map(|(_, zg)| zg.clone());
    let stage2 = run_stage(
        "second link",
        ring,
        arr2,
        &grid2,
        z1,
        z1_global.as_ref(),
        &p,
        &special2,
        opts,
        seed.fork("stage2"),
    )?;
    let z2 = &stage2.link.residual;

    // checks
    let mut checks = Vec::new();
    let input_degree = z.degree();
    checks.push(check(
        "degree additivity, first link",
        stage1.link.degree_additivity(input_degree),
        format!("{} = {} + {}", stage1.link.gor.degree(), input_degree, z1.degree()),
    ));
    checks.push(check(
        "degree additivity, second link",
        stage2.link.degree_additivity(z1.degree()),
        format!("{} = {} + {}", stage2.link.gor.degree(), z1.degree(), z2.degree()),
    ));
    checks.push(check(
        "Gor at the focus",
        focus_h_vector(&stage1.link.gor, &p) == gorenstein_x_hvector_formula(3, a as usize),
        format!("h-vector {}", focus_h_vector(&stage1.link.gor, &p)),
    ));
    checks.push(check(
        "Gor' at the focus",
        focus_h_vector(&stage2.link.gor, &p) == gorenstein_x_hvector_formula(3, a as usize - 1),
        format!("h-vector {}", focus_h_vector(&stage2.link.gor, &p)),
    ));
    checks.push(check(
        "Z' at the focus is p^(a-1)",
        component_is(ring, z1, &p, a - 1)?,
        "",
    ));
    let z1_bad: Vec<String> = z1
        .non_reduced()
        .filter(|(q, _)| !all_points.contains(q))
        .map(|(q, c)| format!("{q} (length {})", c.degree()))
        .collect();
    checks.push(check("Z' reduced away from the fat points", z1_bad.is_empty(), z1_bad.join(", ")));
    checks.push(check(
        "Z'' at the focus is p^(a-2)",
        component_is(ring, z2, &p, a - 2)?,
        "",
    ));
    let mut kept = Vec::new();
    for (q, b) in &others {
        if !component_is(ring, z2, q, *b)? {
            kept.push(q.to_string());
        }
    }
    checks.push(check("Z'' keeps the other fat points", kept.is_empty(), kept.join(", ")));
    let at_r: Vec<String> = new_points
        .iter()
        .filter(|r| z2.get(r).is_some())
        .map(|r| r.to_string())
        .collect();
    checks.push(check("Z'' has no component at any R_k", at_r.is_empty(), at_r.join(", ")));
    let z2_bad: Vec<String> = z2
        .non_reduced()
        .filter(|(q, _)| !all_points.contains(q))
        .map(|(q, c)| format!("{q} (length {})", c.degree()))
        .collect();
    checks.push(check("Z'' reduced elsewhere", z2_bad.is_empty(), z2_bad.join(", ")));
    for (name, st) in [("first link", &stage1), ("second link", &stage2)] {
        checks.push(check(
            &format!("at most two lines elsewhere, {name}"),
            st.link.crowded_points.is_empty(),
            format!("{} crowded points", st.link.crowded_points.len()),
        ));
        checks.push(check(
            &format!("local involution, {name}"),
            st.link.involution_failures.is_empty(),
            st.link
                .involution_failures
                .iter()
                .map(|q| q.to_string())
                .collect::<Vec<_>>()
                .join(", "),
        ));
        if let Some((g, _)) = &st.global {
            checks.push(check(
                &format!("global cross-check, {name}"),
                g.y_is_intersection && g.gor_matches && g.residual_matches,
                format!(
                    "Y = C ∩ (F, Q): {}, Gor: {}, residual: {}",
                    g.y_is_intersection, g.gor_matches, g.residual_matches
                ),
            ));
        }
    }

    let mut out_points = Vec::new();
    for (q, c) in &z2.components {
        let b = if *q == p {
            a - 2
        } else if let Some((_, b)) = others.iter().find(|(o, _)| o == q) {
            *b
        } else {
            1
        };
        if c.is_reduced() || *q == p || others.iter().any(|(o, _)| o == q) {
            out_points.push((*q, b.max(1)));
        } else {
            out_points.push((*q, 1));
        }
    }
    let output = FatPointScheme { points: out_points };
    let record = DoubleStepRecord {
        focus: p,
        a,
        policy: opts.policy,
        seed: seed.seed(),
        input: z.clone(),
        input_degree,
        new_points: new_points.len(),
        skipped_planes: skipped,
        redrawn_planes: redraws,
        first: stage1.record,
        second: stage2.record,
        output_degree: z2.degree(),
        checks,
    };
    Ok(DoubleStepReport {
        record,
        first_residual: stage1.link.residual,
        second_residual: stage2.link.residual,
        output,
    })
}

/// Both links; fails with the first check that does not hold.
pub fn double_step(
    ring: &Arc<PolyRing>,
    z: &FatPointScheme,
    focus: usize,
    opts: DoubleStepOptions,
    seed: SeedStream,
) -> Result<DoubleStepReport> {
    let report = double_step_report(ring, z, focus, opts, seed)?;
    if let Some(c) = report.first_failure() {
        return Err(Error::Verification {
            check: c.name.clone(),
            detail: c.detail.clone(),
        });
    }
    Ok(report)
}
