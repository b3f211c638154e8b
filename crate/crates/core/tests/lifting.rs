mod common;

use std::sync::Arc;

use proptest::prelude::*;

use liaison::lifting::{lift_ideal, verify_lifting, MonomialIdealInput};
use liaison::monomial::Monomial;
use liaison::ops::quotient;
use liaison::poly::Polynomial;
use liaison::random::SeedStream;
use liaison::ring::PolyRing;

const P: u32 = 32003;

fn ring(n: usize) -> Arc<PolyRing> {
    let names = ["x", "y", "z"];
    PolyRing::new(names[..n].iter().map(|v| v.to_string()).collect(), P, Default::default()).unwrap()
}

#[test]
fn square_of_the_maximal_ideal() {
    for n in 2..=3 {
        let r = ring(n);
        let exps: Vec<Vec<u32>> = (0..n)
            .flat_map(|i| (i..n).map(move |j| (0..n).map(|k| (k == i) as u32 + (k == j) as u32).collect()))
            .collect();
        let input = MonomialIdealInput::from_exponents(&r, &exps).unwrap();
        let j = lift_ideal(&input).unwrap();
        let cert = verify_lifting(&input, &j, 8, SeedStream::new(1)).unwrap();
        assert!(cert.passes());
        // 1 + n points: the origin of the lifted chart and one per variable
        assert_eq!(cert.reduced.unwrap().degree, 1 + n as i64);
    }
}

#[test]
fn lifted_ideal_has_no_t_torsion() {
    let r = ring(2);
    let input = MonomialIdealInput::from_exponents(&r, &[vec![3, 0], vec![1, 1], vec![0, 2]]).unwrap();
    let j = lift_ideal(&input).unwrap();
    let t = Polynomial::var(j.ring(), 2);
    assert!(quotient(&j, &t).unwrap().equals(&j).unwrap());
}

/// Artinian monomial ideals: pure powers of every variable plus a few
/// mixed monomials.
fn artinian(n: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
    (
        prop::collection::vec(1u32..4, n),
        prop::collection::vec(prop::collection::vec(0u32..3, n), 0..3),
    )
        .prop_map(move |(powers, mixed)| {
            let mut exps: Vec<Vec<u32>> = (0..n)
                .map(|i| (0..n).map(|k| if k == i { powers[i] } else { 0 }).collect())
                .collect();
            exps.extend(mixed.into_iter().filter(|e| e.iter().any(|&x| x > 0)));
            exps
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lifting_gives_reduced_points(n in 2usize..4, seed in 0u64..1000, exps in artinian(3)) {
        let r = ring(n);
        let exps: Vec<Vec<u32>> = exps.iter().map(|e| e[..n].to_vec()).filter(|e| e.iter().any(|&x| x > 0)).collect();
        let input = MonomialIdealInput::from_exponents(&r, &exps).unwrap();
        prop_assume!(input.to_ideal().unwrap().krull_dim() == 0);
        let j = lift_ideal(&input).unwrap();
        let bound = 2 * input.max_exponent() as usize + 4;
        let cert = verify_lifting(&input, &j, bound, SeedStream::new(seed)).unwrap();
        prop_assert!(cert.colon_t && cert.special_fiber && cert.hilbert_match);
        let gens: Vec<Monomial> = input.gens().to_vec();
        let length: i64 = common::standard_monomial_counts(n, &gens, bound as u32).iter().sum();
        let red = cert.reduced.unwrap();
        prop_assert!(red.reduced);
        prop_assert_eq!(red.degree, length);
    }
}
