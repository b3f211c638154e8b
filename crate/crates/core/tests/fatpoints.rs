mod common;

use std::sync::Arc;

use proptest::prelude::*;

use liaison::fatpoint::{
    double_step, fat_point_ideal, grid_curves, p3_ring, reduce_to_reduced, single_fatpoint_link_step, union_ideal,
    DoubleStepOptions, FatPointScheme, PointP3,
};
use liaison::ops::intersect;
use liaison::random::SeedStream;
use liaison::ring::PolyRing;

const P: u32 = 32003;

fn pt(r: &Arc<PolyRing>, c: [i64; 4]) -> PointP3 {
    PointP3::from_i64(r.field(), c).unwrap()
}

fn scheme(r: &Arc<PolyRing>, pts: &[([i64; 4], u32)]) -> FatPointScheme {
    FatPointScheme::new(pts.iter().map(|(c, b)| (pt(r, *c), *b)).collect()).unwrap()
}

#[test]
fn union_degrees() {
    let r = p3_ring(P).unwrap();
    let z = scheme(&r, &[([1, 0, 0, 0], 2), ([0, 1, 0, 0], 1)]);
    assert_eq!(z.degree(), 5);
    assert_eq!(union_ideal(&r, &z).unwrap().degree().unwrap(), 5);
    let z = scheme(&r, &[([1, 0, 0, 0], 2), ([1, 3, -2, 5], 2)]);
    assert_eq!(union_ideal(&r, &z).unwrap().degree().unwrap(), 8);
}

#[test]
fn grid_curves_have_triangular_h_vectors() {
    let r = p3_ring(P).unwrap();
    let p = pt(&r, [1, 2, 3, 4]);
    for a in 2..=3usize {
        let g = grid_curves(&r, &p, a, SeedStream::new(a as u64)).unwrap();
        let expected: Vec<i64> = (1..=a as i64).collect();
        assert_eq!(g.h_vector.entries(), expected.as_slice());
        assert_eq!(g.a_planes.len(), a);
        assert_eq!(g.b_planes.len(), a + 1);
        // C and D together make up the grid
        let cd = intersect(&g.ideal_c, &g.ideal_d).unwrap();
        assert!(cd.equals(&g.ci).unwrap());
        assert!(g.ci.is_subset_of(&fat_point_ideal(&r, &p, a as u32).unwrap()).unwrap());
    }
}

#[test]
fn single_step_links_down_one_multiplicity() {
    let r = p3_ring(P).unwrap();
    let p = pt(&r, [0, 0, 1, 0]);
    let s = single_fatpoint_link_step(&r, &p, 2, SeedStream::new(11)).unwrap();
    assert!(s.step.residual.equals(&p.ideal(&r).unwrap()).unwrap());
    assert_eq!(s.gor_h_vector.entries(), &[1, 3, 1]);
    assert!(s.gorenstein.certified());
}

#[test]
fn double_step_with_a_reduced_neighbour() {
    let r = p3_ring(P).unwrap();
    let z = scheme(&r, &[([1, 0, 0, 0], 2), ([1, 1, 1, 1], 1)]);
    let rep = double_step(&r, &z, 0, DoubleStepOptions::default(), SeedStream::new(6)).unwrap();
    assert!(rep.all_pass());
    assert!(rep.output.is_reduced());
    assert_eq!(rep.output.multiplicity_at(&pt(&r, [1, 0, 0, 0])), None);
    assert_eq!(rep.output.multiplicity_at(&pt(&r, [1, 1, 1, 1])), Some(1));
}

#[test]
fn one_double_point_reduces_in_two_links() {
    let r = p3_ring(P).unwrap();
    let z = scheme(&r, &[([1, 2, 0, 0], 2)]);
    let rep = reduce_to_reduced(&r, &z, DoubleStepOptions::default(), SeedStream::new(2)).unwrap();
    assert_eq!(rep.links, 2);
    assert!(rep.reduced && rep.all_pass());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// The union of fat points has degree `sum C(b + 2, 3)`.
    #[test]
    fn union_degree_is_additive(
        pts in prop::collection::vec(([0i64..20, 0i64..20, 0i64..20], 1u32..3), 1..4),
    ) {
        let r = p3_ring(P).unwrap();
        let mut entries: Vec<([i64; 4], u32)> = Vec::new();
        for (c, b) in pts {
            let c = [1, c[0], c[1], c[2]];
            if !entries.iter().any(|(d, _)| *d == c) {
                entries.push((c, b));
            }
        }
        let z = scheme(&r, &entries);
        let expected: i64 = entries.iter().map(|(_, b)| common::binomial(*b as u64 + 2, 3)).sum();
        prop_assert_eq!(z.degree(), expected);
        prop_assert_eq!(union_ideal(&r, &z).unwrap().degree().unwrap(), expected);
    }
}
