use std::sync::Arc;

use proptest::prelude::*;

use liaison::liaison::{
    ci_link, embed_and_link, general_ci_in, gorenstein_sum, lemma_key_link, link_involution_check,
    proper_ci_intersection_link, random_form, LinkOptions, WitnessSource,
};
use liaison::ops::quotient_ideal;
use liaison::poly::Polynomial;
use liaison::random::SeedStream;
use liaison::ring::PolyRing;
use liaison::Ideal;

const P: u32 = 32003;

fn p3() -> Arc<PolyRing> {
    PolyRing::standard(4, P).unwrap()
}

fn id(r: &Arc<PolyRing>, gens: &[&str]) -> Ideal {
    Ideal::parse(r, gens).unwrap()
}

#[test]
fn key_identity_examples() {
    let r = p3();
    let x0 = Polynomial::var(&r, 0);
    let step = lemma_key_link(&id(&r, &["x1", "x2", "x3"]), &x0, &id(&r, &["x1", "x2", "x3", "x0^2"])).unwrap();
    assert_eq!(step.checks.identity, Some(true));
    assert!(step.linking.equals(&id(&r, &["x1", "x2", "x3", "x0^3"])).unwrap());

    let i = id(&r, &["x1^2", "x2"]);
    let j = id(&r, &["x1^2", "x2", "x3"]);
    let step = lemma_key_link(&i, &x0, &j).unwrap();
    assert_eq!(step.checks.identity, Some(true));
    let linked = quotient_ideal(&step.linking, &i.add_gens(&[x0]).unwrap()).unwrap();
    assert!(linked.equals(&j).unwrap());
}

#[test]
fn coplanar_lines_meet_in_a_gorenstein_point() {
    let r = p3();
    let y = id(&r, &["x3", "x0"]);
    let w = id(&r, &["x3", "x1"]);
    let c = id(&r, &["x3", "x0*x1"]);
    let (g, cert) = gorenstein_sum(&y, &w, &c, SeedStream::new(3)).unwrap();
    assert!(g.equals(&id(&r, &["x0", "x1", "x3"])).unwrap());
    assert!(cert.certified());
    assert_eq!(g.h_vector().unwrap().entries(), &[1]);
}

#[test]
fn embedding_examples() {
    let r = PolyRing::standard(3, P).unwrap();
    let points = id(&r, &["x0*x1", "x0*x2", "x1*x2"]);
    let rep = embed_and_link(&points, None, 6, SeedStream::new(1)).unwrap();
    assert!(rep.hilbert_match);
    assert_eq!(rep.hilbert_function, vec![1, 3, 3, 3, 3, 3, 3]);
    assert!(rep.step.checks.all_pass());

    let ci = id(&r, &["x0^2 - x1*x2", "x1^2 - x0*x2"]);
    let rep = embed_and_link(&ci, None, 6, SeedStream::new(2)).unwrap();
    assert_eq!(rep.witness_source, WitnessSource::CompleteIntersectionPlusForm);
    assert!(rep.hilbert_match && rep.step.checks.all_pass());
    assert_eq!(rep.step.residual.codim(), 3);
}

#[test]
fn line_meeting_a_quadric() {
    let r = p3();
    let line = id(&r, &["x0", "x1"]);
    let q = Polynomial::var(&r, 2)
        .try_mul(&Polynomial::var(&r, 3))
        .unwrap()
        .try_add(&Polynomial::var(&r, 2).pow(2))
        .unwrap();
    let chain = proper_ci_intersection_link(&line, &[q.clone()], SeedStream::new(4)).unwrap();
    assert!(chain.all_pass());
    let expected = line.add_gens(&[q]).unwrap();
    assert!(chain.final_ideal.equals(&expected).unwrap());
    assert_eq!(chain.final_ideal.degree().unwrap(), 2);
}

#[test]
fn non_contained_complete_intersection_is_refused() {
    let r = p3();
    let line = id(&r, &["x0", "x1"]);
    let gens = [Polynomial::var(&r, 2), Polynomial::var(&r, 3)];
    assert!(ci_link(&line, &gens, LinkOptions::default()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// Links of complete intersection curves and their residuals are
    /// involutive and add up in degree.
    #[test]
    fn links_are_involutions(seed in 0u64..10_000, a in 1u32..3, b in 1u32..3) {
        let r = p3();
        let s = SeedStream::new(seed);
        let i = Ideal::new(&r, vec![random_form(&r, a, s.fork("f")), random_form(&r, b, s.fork("g"))]).unwrap();
        prop_assume!(i.codim() == 2);
        let ci = general_ci_in(&i, s.fork("ci")).unwrap();
        let step = ci_link(&i, &ci, LinkOptions { seed: s.fork("link"), ..LinkOptions::default() }).unwrap();
        prop_assert!(step.checks.all_pass());
        let c = Ideal::new(&r, ci.clone()).unwrap();
        prop_assert!(link_involution_check(&i, &c).unwrap());
        let ci_degree: i64 = ci.iter().map(|g| g.degree().unwrap() as i64).product();
        let residual_degree = if step.residual.is_unit() { 0 } else { step.residual.degree().unwrap() };
        prop_assert_eq!(i.degree().unwrap() + residual_degree, ci_degree);
    }
}
