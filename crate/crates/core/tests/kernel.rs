mod common;

use std::cmp::Ordering;
use std::sync::Arc;

use proptest::prelude::*;

use liaison::field::PrimeField;
use liaison::groebner::{groebner, normal_form};
use liaison::monomial::Monomial;
use liaison::order::MonomialOrder;
use liaison::parse::parse_polynomial;
use liaison::poly::Polynomial;
use liaison::ring::PolyRing;
use liaison::Ideal;

const P: u32 = 32003;

fn ring3(p: u32) -> Arc<PolyRing> {
    PolyRing::new(vec!["x".into(), "y".into(), "z".into()], p, MonomialOrder::DegRevLex).unwrap()
}

fn poly(r: &Arc<PolyRing>, s: &str) -> Polynomial {
    parse_polynomial(r, s).unwrap()
}

/// Inverse by the extended Euclidean algorithm on signed integers.
fn euclid_inverse(a: i64, p: i64) -> i64 {
    let (mut r0, mut r1, mut s0, mut s1) = (p, a, 0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    assert_eq!(r0, 1);
    s0.rem_euclid(p)
}

#[test]
fn field_examples() {
    let f = PrimeField::new(P).unwrap();
    assert_eq!(f.add(5, 31998), 0);
    assert_eq!(f.inv(2).unwrap(), 16002);
    assert_eq!(euclid_inverse(2, P as i64), 16002);
    let g = PrimeField::new(7).unwrap();
    assert_eq!(g.mul(3, 5), 1);
}

#[test]
fn polynomial_examples() {
    let r = ring3(P);
    let s = poly(&r, "x + y");
    assert_eq!(s.pow(2), poly(&r, "x^2 + 2*x*y + y^2"));
    let nf = normal_form(&poly(&r, "x*y"), &[s]).unwrap();
    assert_eq!(nf, poly(&r, "-y^2"));
}

#[test]
fn groebner_examples() {
    let r = ring3(P);
    let gb = groebner(&r, &[poly(&r, "x^2"), poly(&r, "x*y")]).unwrap();
    assert_eq!(gb.len(), 2);
    let gb = groebner(&r, &[poly(&r, "x + y"), poly(&r, "x - y")]).unwrap();
    let mut shown: Vec<String> = gb.iter().map(|g| g.to_string()).collect();
    shown.sort();
    assert_eq!(shown, ["x", "y"]);
}

fn exps3() -> impl Strategy<Value = [u32; 3]> {
    [0u32..4, 0u32..4, 0u32..4]
}

fn mono(e: &[u32; 3]) -> Monomial {
    Monomial::from_exponents(e).unwrap()
}

fn drl_oracle(a: &[u32; 3], b: &[u32; 3]) -> Ordering {
    let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..3).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

fn poly_strategy(r: Arc<PolyRing>) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((0u32..P, exps3()), 0..6).prop_map(move |terms| {
        terms.iter().fold(Polynomial::zero(&r), |acc, (c, e)| {
            acc.try_add(&Polynomial::monomial(&r, *c, mono(e))).unwrap()
        })
    })
}

/// Random forms of a fixed degree in three variables.
fn form_strategy(r: Arc<PolyRing>, d: u32) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((1u32..P, 0..=d, 0..=d), 1..5).prop_map(move |terms| {
        terms.iter().fold(Polynomial::zero(&r), |acc, (c, i, j)| {
            let (i, j) = (*i, (*j).min(d - *i));
            let e = [i, j, d - i - j];
            acc.try_add(&Polynomial::monomial(&r, *c, mono(&e))).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn field_axioms(a in 0u32..P, b in 0u32..P, c in 0u32..P) {
        let f = PrimeField::new(P).unwrap();
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        prop_assert_eq!(f.sub(a, b), f.add(a, f.neg(b)));
        prop_assert_eq!(f.mul(a, b) as u64, (a as u64 * b as u64) % P as u64);
        if a != 0 {
            prop_assert_eq!(f.inv(a).unwrap() as i64, euclid_inverse(a as i64, P as i64));
            prop_assert_eq!(f.pow(a, P as u64 - 1), 1);
        }
    }

    #[test]
    fn degrevlex_matches_definition(a in exps3(), b in exps3(), c in exps3()) {
        let o = MonomialOrder::DegRevLex;
        prop_assert_eq!(o.cmp(&mono(&a), &mono(&b)), drl_oracle(&a, &b));
        if o.cmp(&mono(&a), &mono(&b)) == Ordering::Greater {
            let (ac, bc) = (mono(&a).mul(&mono(&c)), mono(&b).mul(&mono(&c)));
            prop_assert_eq!(o.cmp(&ac, &bc), Ordering::Greater);
        }
        prop_assert_eq!(MonomialOrder::Lex.cmp(&mono(&a), &mono(&b)), a.cmp(&b));
    }

    #[test]
    fn ring_axioms(
        (f, g, h) in (poly_strategy(ring3(P)), poly_strategy(ring3(P)), poly_strategy(ring3(P))),
        pt in [0u32..P, 0u32..P, 0u32..P],
    ) {
        prop_assert_eq!(f.try_add(&g).unwrap(), g.try_add(&f).unwrap());
        prop_assert_eq!(f.try_mul(&g).unwrap(), g.try_mul(&f).unwrap());
        prop_assert_eq!(
            f.try_mul(&g).unwrap().try_mul(&h).unwrap(),
            f.try_mul(&g.try_mul(&h).unwrap()).unwrap()
        );
        prop_assert_eq!(
            f.try_mul(&g.try_add(&h).unwrap()).unwrap(),
            f.try_mul(&g).unwrap().try_add(&f.try_mul(&h).unwrap()).unwrap()
        );
        prop_assert!(f.try_sub(&f).unwrap().is_zero());
        // evaluation is a ring homomorphism
        let fld = PrimeField::new(P).unwrap();
        prop_assert_eq!(f.try_mul(&g).unwrap().eval(&pt), fld.mul(f.eval(&pt), g.eval(&pt)));
        prop_assert_eq!(f.try_add(&g).unwrap().eval(&pt), fld.add(f.eval(&pt), g.eval(&pt)));
        let r = ring3(P);
        prop_assert_eq!(parse_polynomial(&r, &f.to_string()).unwrap(), f);
    }

    #[test]
    fn groebner_basis_is_canonical(
        gens in prop::collection::vec((1u32..3).prop_flat_map(|d| form_strategy(ring3(P), d)), 1..4),
        rot in 0usize..4,
    ) {
        let r = ring3(P);
        let gb = groebner(&r, &gens).unwrap();
        let mut shuffled = gens.clone();
        shuffled.rotate_left(rot % gens.len());
        shuffled.reverse();
        prop_assert_eq!(&gb, &groebner(&r, &shuffled).unwrap());
        for g in &gens {
            prop_assert!(normal_form(g, &gb).unwrap().is_zero());
        }
    }

    #[test]
    fn membership_matches_linear_algebra(
        gens in prop::collection::vec((1u32..3).prop_flat_map(|d| form_strategy(ring3(P), d)), 1..4),
        f in (1u32..5).prop_flat_map(|d| form_strategy(ring3(P), d)),
    ) {
        let r = ring3(P);
        let i = Ideal::new(&r, gens.clone()).unwrap();
        prop_assert_eq!(i.contains(&f).unwrap(), common::in_span_of_degree(&r, &gens, &f));
        // a multiple of a generator plus f lies in I exactly when f does
        let shifted = f.try_add(&gens[0].try_mul(&Polynomial::var(&r, 0)).unwrap());
        if let Ok(s) = shifted {
            if s.is_homogeneous() {
                prop_assert_eq!(i.contains(&s).unwrap(), i.contains(&f).unwrap());
            }
        }
    }
}
