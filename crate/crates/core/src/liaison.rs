//! Direct links by complete intersections and Gorenstein ideals, Gorenstein
//! ideals from geometric links, the key link identity
//! `(I + f J) : (I, f) = J`, and linking after adding a variable.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::ops::{extend_ring, quotient, quotient_ideal, saturate_irrelevant};
use crate::poly::{Polynomial, Term};
use crate::random::SeedStream;
use crate::report::IdealSummary;
use crate::ring::PolyRing;
use crate::monomial::Monomial;
use crate::zerodim::{cm_test, is_regular_element};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LinkKind {
    CompleteIntersection,
    Gorenstein,
}

/// Outcomes of the checks attached to a link; `None` means not applicable.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LinkChecks {
    pub containment: bool,
    pub codim_match: bool,
    pub degree_additivity: Option<bool>,
    pub geometric: Option<bool>,
    pub linking_h_vector_symmetric: Option<bool>,
    pub residual_cm: Option<bool>,
    pub involution: Option<bool>,
    pub identity: Option<bool>,
}

impl LinkChecks {
    pub fn all_pass(&self) -> bool {
        self.containment
            && self.codim_match
            && [
                self.degree_additivity,
                self.linking_h_vector_symmetric,
                self.residual_cm,
                self.involution,
                self.identity,
            ]
            .iter()
            .all(|c| c.unwrap_or(true))
    }
}

#[derive(Clone, Debug)]
pub struct LinkStep {
    pub label: String,
    pub kind: LinkKind,
    pub linking: Ideal,
    pub input: Ideal,
    pub residual: Ideal,
    pub checks: LinkChecks,
    pub seeds: Vec<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LinkStepRecord {
    pub label: String,
    pub kind: LinkKind,
    pub linking: IdealSummary,
    pub input: IdealSummary,
    pub residual: IdealSummary,
    pub checks: LinkChecks,
    pub verdict: bool,
    pub seeds: Vec<u64>,
}

impl LinkStep {
    pub fn record(&self) -> LinkStepRecord {
        LinkStepRecord {
            label: self.label.clone(),
            kind: self.kind,
            linking: IdealSummary::of(&self.linking),
            input: IdealSummary::of(&self.input),
            residual: IdealSummary::of(&self.residual),
            checks: self.checks.clone(),
            verdict: self.checks.all_pass(),
            seeds: self.seeds.clone(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LinkChainReport {
    pub steps: Vec<LinkStep>,
    pub initial: Ideal,
    pub final_ideal: Ideal,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct LinkChainRecord {
    pub seed: u64,
    pub initial: IdealSummary,
    pub final_ideal: IdealSummary,
    pub steps: Vec<LinkStepRecord>,
    pub verdicts: Vec<bool>,
}

impl LinkChainReport {
    pub fn record(&self) -> LinkChainRecord {
        let steps: Vec<LinkStepRecord> = self.steps.iter().map(|s| s.record()).collect();
        LinkChainRecord {
            seed: self.seed,
            initial: IdealSummary::of(&self.initial),
            final_ideal: IdealSummary::of(&self.final_ideal),
            verdicts: steps.iter().map(|s| s.verdict).collect(),
            steps,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.steps.iter().all(|s| s.checks.all_pass())
    }

    pub fn text(&self) -> String {
        let mut out = format!("seed {}\ninitial: {}\n", self.seed, IdealSummary::of(&self.initial).brief());
        for (k, s) in self.steps.iter().enumerate() {
            out.push_str(&step_text(k + 1, s));
        }
        out.push_str(&format!("final: {}\n", IdealSummary::of(&self.final_ideal).brief()));
        out
    }
}

pub(crate) fn step_text(k: usize, s: &LinkStep) -> String {
    let r = s.record();
    format!(
        "step {k} [{}]: {}\n  input     {}\n  linking   {}\n  residual  {}\n  checks    {}\n",
        r.label,
        if r.verdict { "ok" } else { "FAILED" },
        r.input.brief(),
        r.linking.brief(),
        r.residual.brief(),
        checks_text(&r.checks)
    )
}

fn checks_text(c: &LinkChecks) -> String {
    let mut parts = vec![
        format!("containment={}", c.containment),
        format!("codim={}", c.codim_match),
    ];
    let opt = [
        ("degrees", c.degree_additivity),
        ("geometric", c.geometric),
        ("symmetric", c.linking_h_vector_symmetric),
        ("residual-cm", c.residual_cm),
        ("involution", c.involution),
        ("identity", c.identity),
    ];
    for (name, v) in opt {
        if let Some(v) = v {
            parts.push(format!("{name}={v}"));
        }
    }
    parts.join(" ")
}

fn degree_or_zero(i: &Ideal) -> i64 {
    if i.is_unit() {
        0
    } else {
        i.degree().unwrap_or(0)
    }
}

/// Options shared by the link constructors.
#[derive(Clone, Copy, Debug)]
pub struct LinkOptions {
    /// Run the Cohen-Macaulay test on the input.
    pub check_cm: bool,
    /// Also verify `c : (c : I) = I`.
    pub check_involution: bool,
    pub seed: SeedStream,
}

impl Default for LinkOptions {
    fn default() -> Self {
        LinkOptions {
            check_cm: true,
            check_involution: true,
            seed: SeedStream::new(0),
        }
    }
}

/// Direct link of `I` by the complete intersection generated by `ci_gens`.
pub fn ci_link(i: &Ideal, ci_gens: &[Polynomial], opts: LinkOptions) -> Result<LinkStep> {
    let ring = i.ring();
    if ci_gens.iter().any(|g| g.is_zero() || g.is_constant()) {
        return Err(Error::Precondition(
            "complete intersection generators must be forms of positive degree".into(),
        ));
    }
    let c = Ideal::new(ring, ci_gens.to_vec())?;
    if c.codim() != ci_gens.len() {
        return Err(Error::Precondition(format!(
            "{} forms generate an ideal of codimension {}, not a complete intersection",
            ci_gens.len(),
            c.codim()
        )));
    }
    if !c.is_subset_of(i)? {
        return Err(Error::Containment(
            "linking complete intersection is not contained in the ideal".into(),
        ));
    }
    if c.codim() != i.codim() {
        return Err(Error::CodimMismatch {
            expected: i.codim(),
            found: c.codim(),
        });
    }
    let mut seeds = Vec::new();
    if opts.check_cm {
        let cert = cm_test(i, opts.seed.fork("input-cm"))?;
        seeds.extend(cert.attempts.iter().map(|a| a.seed));
        if !cert.cohen_macaulay {
            return Err(Error::Precondition("input is not Cohen-Macaulay".into()));
        }
    }
    let residual = quotient_ideal(&c, i)?.minimized();
    let ci_degree: i64 = ci_gens.iter().map(|g| g.degree().unwrap() as i64).product();
    let geometric = is_geometric_link(i, &c, &residual)?;
    let residual_cm = cm_test(&residual, opts.seed.fork("residual-cm"))?;
    let involution = if opts.check_involution {
        Some(quotient_ideal(&c, &residual)?.equals(i)?)
    } else {
        None
    };
    let symmetric = if c.krull_dim() <= 1 {
        Some(c.h_vector()?.is_symmetric())
    } else {
        None
    };
    let checks = LinkChecks {
        containment: true,
        codim_match: true,
        degree_additivity: Some(degree_or_zero(i) + degree_or_zero(&residual) == ci_degree),
        geometric: Some(geometric),
        linking_h_vector_symmetric: symmetric,
        residual_cm: Some(residual_cm.cohen_macaulay),
        involution,
        identity: None,
    };
    Ok(LinkStep {
        label: "complete intersection link".into(),
        kind: LinkKind::CompleteIntersection,
        linking: c,
        input: i.clone(),
        residual,
        checks,
        seeds,
    })
}

/// `I` and `W` share no component: `codim(I + W) > codim(I)`.
pub fn is_geometric_link(i: &Ideal, _c: &Ideal, w: &Ideal) -> Result<bool> {
    if w.is_unit() || i.is_unit() {
        return Ok(false);
    }
    Ok(i.sum(w)?.codim() > i.codim())
}

/// `c : (c : I) = I`.
pub fn link_involution_check(i: &Ideal, c: &Ideal) -> Result<bool> {
    let w = quotient_ideal(c, i)?;
    quotient_ideal(c, &w)?.equals(i)
}

/// Necessary conditions for a Gorenstein ideal, as recorded by the artifact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GorensteinCertificate {
    pub codim: usize,
    pub expected_codim: usize,
    pub cohen_macaulay: bool,
    pub h_vector_symmetric: bool,
    /// Whether `Y + W` was already saturated.
    pub sum_saturated: bool,
}

impl GorensteinCertificate {
    /// Codimension, Cohen-Macaulayness and symmetry: necessary, not
    /// sufficient, for the Gorenstein property.
    pub fn certified(&self) -> bool {
        self.codim == self.expected_codim && self.cohen_macaulay && self.h_vector_symmetric
    }
}

fn certify(g: &Ideal, expected_codim: usize, sum_saturated: bool, seed: SeedStream) -> Result<GorensteinCertificate> {
    let cm = cm_test(g, seed)?;
    Ok(GorensteinCertificate {
        codim: g.codim(),
        expected_codim,
        cohen_macaulay: cm.cohen_macaulay,
        h_vector_symmetric: !g.is_unit() && g.h_vector()?.is_symmetric(),
        sum_saturated,
    })
}

/// The Gorenstein ideal `(Y + W)^sat` of two geometrically linked schemes.
pub fn gorenstein_sum(
    y: &Ideal,
    w: &Ideal,
    c: &Ideal,
    seed: SeedStream,
) -> Result<(Ideal, GorensteinCertificate)> {
    if !is_geometric_link(y, c, w)? {
        return Err(Error::Precondition("the link is not geometric".into()));
    }
    let sum = y.sum(w)?.minimized();
    let sat = saturate_irrelevant(&sum, seed.fork("saturate"))?.minimized();
    let was_saturated = sat.equals(&sum)?;
    let cert = certify(&sat, y.codim() + 1, was_saturated, seed.fork("certify"))?;
    Ok((sat, cert))
}

/// Links `(I, f)` to `J` through `G = I + f J`, verifying
/// `G : (I, f) = J` and `G : f = (I : f) + J = J`.
pub fn lemma_key_link(i: &Ideal, f: &Polynomial, j: &Ideal) -> Result<LinkStep> {
    i.check_ring(f.ring())?;
    if f.is_zero() || f.is_constant() {
        return Err(Error::Precondition(
            "f must be a form of positive degree".into(),
        ));
    }
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous(f.to_string()));
    }
    if !i.is_subset_of(j)? {
        return Err(Error::Containment("I is not contained in J".into()));
    }
    if j.codim() != i.codim() + 1 {
        return Err(Error::CodimMismatch {
            expected: i.codim() + 1,
            found: j.codim(),
        });
    }
    if !is_regular_element(i, f)? {
        return Err(Error::Precondition("f is a zero divisor modulo I".into()));
    }
    let g = i.sum(&j.scale(f)?)?.minimized();
    let i_f = i.add_gens(&[f.clone()])?.minimized();
    let lhs = quotient_ideal(&g, &i_f)?;
    if !lhs.equals(j)? {
        return Err(Error::LemmaIdentityViolated("(I + fJ) : (I, f) differs from J".into()));
    }
    let by_f = quotient(&g, f)?;
    let i_colon_f_plus_j = quotient(i, f)?.sum(j)?;
    let chain = by_f.equals(&i_colon_f_plus_j)? && i_colon_f_plus_j.equals(j)?;
    if !chain {
        return Err(Error::LemmaIdentityViolated(
            "(I + fJ) : f = (I : f) + J = J fails".into(),
        ));
    }
    let back = quotient_ideal(&g, j)?;
    let involution = i_f.is_subset_of(&back)?;
    let checks = LinkChecks {
        containment: g.is_subset_of(&i_f)?,
        codim_match: g.codim() == i_f.codim(),
        degree_additivity: Some(degree_or_zero(&i_f) + degree_or_zero(j) == degree_or_zero(&g)),
        geometric: None,
        linking_h_vector_symmetric: if g.krull_dim() <= 1 && !g.is_unit() {
            Some(g.h_vector()?.is_symmetric())
        } else {
            None
        },
        residual_cm: None,
        involution: Some(involution),
        identity: Some(true),
    };
    Ok(LinkStep {
        label: "Gorenstein link through I + fJ".into(),
        kind: LinkKind::Gorenstein,
        linking: g,
        input: i_f,
        residual: j.clone(),
        checks,
        seeds: Vec::new(),
    })
}

/// A random form of degree `d`.
pub fn random_form(ring: &Arc<PolyRing>, d: u32, seed: SeedStream) -> Polynomial {
    let f = ring.field();
    let mut rng = seed.rng();
    let mut terms = Vec::new();
    for mono in monomials_of_degree(ring.nvars(), d) {
        terms.push(Term {
            coeff: rng.element(f),
            mono,
        });
    }
    Polynomial::from_terms(ring, terms)
}

/// All monomials of degree `d` in `n` variables.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(i: usize, n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == n - 1 {
            cur.push(left);
            out.push(Monomial::from_exponents(cur).expect("small exponents"));
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(i + 1, n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(0, n, d, &mut Vec::new(), &mut out);
    }
    out
}

/// `count` general elements of `I` of degree `d`, combinations of the
/// Gröbner basis elements with random form coefficients.
pub fn general_elements(i: &Ideal, count: usize, d: u32, seed: SeedStream) -> Result<Vec<Polynomial>> {
    let ring = i.ring();
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let s = seed.fork_index("element", k);
        let mut acc = Polynomial::zero(ring);
        for (j, g) in i.gb().iter().enumerate() {
            let dg = g.degree().unwrap();
            if dg > d {
                continue;
            }
            let coeff = random_form(ring, d - dg, s.fork_index("coeff", j));
            acc = acc.try_add(&coeff.try_mul(g)?)?;
        }
        out.push(acc);
    }
    Ok(out)
}

/// A complete intersection of general forms inside `I`, of the least degree
/// (at least the maximal generator degree) that gives the right codimension.
pub fn general_ci_in(i: &Ideal, seed: SeedStream) -> Result<Vec<Polynomial>> {
    let codim = i.codim();
    let start = i.gb().iter().filter_map(|g| g.degree()).max().unwrap_or(1);
    let mut seeds = Vec::new();
    for (k, d) in (start..start + 3).enumerate() {
        let s = seed.fork_index("ci", k);
        seeds.push(s.seed());
        let gens = general_elements(i, codim, d, s)?;
        let c = Ideal::new(i.ring(), gens.clone())?;
        if c.codim() == codim {
            return Ok(gens);
        }
    }
    Err(Error::Genericity {
        what: "no complete intersection of general forms inside the ideal".into(),
        attempts: 3,
        seeds,
    })
}

/// Where a Gorenstein witness came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessSource {
    Supplied,
    /// `I` is a complete intersection; witness `I + (g)` for a general form.
    CompleteIntersectionPlusForm,
    /// `I + I'` for a general geometric complete intersection link `I ~ I'`.
    GeometricLinkSum,
}

/// Derives a Gorenstein ideal `J ⊇ I` with `codim J = codim I + 1`.
pub fn derive_witness(i: &Ideal, seed: SeedStream) -> Result<(Ideal, WitnessSource)> {
    let ring = i.ring();
    let minimal = i.minimized();
    let d = i.max_generator_degree().max(1);
    if is_complete_intersection(&minimal) {
        for k in 0..3 {
            let g = random_form(ring, d, seed.fork_index("witness-form", k));
            let j = minimal.add_gens(&[g])?;
            if j.codim() == i.codim() + 1 {
                return Ok((j, WitnessSource::CompleteIntersectionPlusForm));
            }
        }
    }
    let ci = general_ci_in(i, seed.fork("witness-ci"))?;
    let c = Ideal::new(ring, ci)?;
    let other = quotient_ideal(&c, i)?;
    if !is_geometric_link(i, &c, &other)? {
        return Err(Error::GorensteinWitnessRequired(
            "the general complete intersection link is not geometric".into(),
        ));
    }
    let j = i.sum(&other)?.minimized();
    let cert = certify(&j, i.codim() + 1, true, seed.fork("witness-certify"))?;
    if !cert.certified() {
        return Err(Error::GorensteinWitnessRequired(
            "sum of geometrically linked ideals fails the Gorenstein checks".into(),
        ));
    }
    Ok((j, WitnessSource::GeometricLinkSum))
}

/// The number of minimal generators equals the codimension. Uses the
/// reduced basis as a generating set, which is minimal for the inputs the
/// library builds (distinct degrees or generic combinations).
fn is_complete_intersection(i: &Ideal) -> bool {
    let gb = i.gb();
    if gb.len() == i.codim() {
        return true;
    }
    i.gens().len() == i.codim() && {
        let c = Ideal::new(i.ring(), i.gens().to_vec()).expect("same ring");
        c.codim() == i.gens().len()
    }
}

#[derive(Clone, Debug)]
pub struct EmbedReport {
    pub extended_ring: Arc<PolyRing>,
    pub step: LinkStep,
    pub witness_source: WitnessSource,
    pub hilbert_bound: usize,
    pub hilbert_function: Vec<i64>,
    pub hilbert_match: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EmbedRecord {
    pub extended_vars: Vec<String>,
    pub witness_source: WitnessSource,
    pub hilbert_bound: usize,
    pub hilbert_function: Vec<i64>,
    pub hilbert_match: bool,
    pub step: LinkStepRecord,
}

impl EmbedReport {
    pub fn record(&self) -> EmbedRecord {
        EmbedRecord {
            extended_vars: self.extended_ring.vars().to_vec(),
            witness_source: self.witness_source.clone(),
            hilbert_bound: self.hilbert_bound,
            hilbert_function: self.hilbert_function.clone(),
            hilbert_match: self.hilbert_match,
            step: self.step.record(),
        }
    }
}

/// Adds a variable `t`, and links `(I S, t)` to a Gorenstein witness `J`
/// through `I S + t J`. A supplied witness must live in the extended ring.
pub fn embed_and_link(
    i: &Ideal,
    witness: Option<&Ideal>,
    bound: usize,
    seed: SeedStream,
) -> Result<EmbedReport> {
    if i.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let cm = cm_test(i, seed.fork("cm"))?;
    if !cm.cohen_macaulay {
        return Err(Error::Precondition("R/I is not Cohen-Macaulay".into()));
    }
    let t_name = i.ring().fresh_name("t");
    let (s_ring, is) = extend_ring(i, &t_name)?;
    let t = Polynomial::var(&s_ring, s_ring.nvars() - 1);
    let (j, source) = match witness {
        Some(w) => {
            if w.ring().vars() != s_ring.vars() || w.ring().field() != s_ring.field() {
                return Err(Error::RingMismatch);
            }
            let gens = w
                .gens()
                .iter()
                .map(|g| g.remap(&s_ring, &(0..s_ring.nvars()).collect::<Vec<_>>()))
                .collect();
            (Ideal::new(&s_ring, gens)?, WitnessSource::Supplied)
        }
        None => {
            let (j, src) = derive_witness(i, seed.fork("witness"))?;
            let (_, js) = extend_ring(&j, &t_name)?;
            // same variables, so rebuild in s_ring
            let gens = js.gens().to_vec();
            let gens = gens
                .iter()
                .map(|g| g.remap(&s_ring, &(0..s_ring.nvars()).collect::<Vec<_>>()))
                .collect();
            (Ideal::new(&s_ring, gens)?, src)
        }
    };
    let step = lemma_key_link(&is, &t, &j)?;
    let hf_r = i.hilbert_function(bound);
    let hf_s = step.input.hilbert_function(bound);
    Ok(EmbedReport {
        extended_ring: s_ring,
        witness_source: source,
        hilbert_bound: bound,
        hilbert_match: hf_r == hf_s,
        hilbert_function: hf_s,
        step,
    })
}

/// Links `V1 ∩ V2` step by step, adding one generator of the complete
/// intersection `V2` at a time; each step is a key-identity link.
pub fn proper_ci_intersection_link(
    v1: &Ideal,
    ci_gens: &[Polynomial],
    seed: SeedStream,
) -> Result<LinkChainReport> {
    let ring = v1.ring();
    let n = ring.nvars();
    let v2 = Ideal::new(ring, ci_gens.to_vec())?;
    if v2.codim() != ci_gens.len() {
        return Err(Error::Precondition("second scheme is not a complete intersection".into()));
    }
    let both = v1.sum(&v2)?;
    let expected = (v1.krull_dim() + v2.krull_dim()).checked_sub(n);
    if both.is_unit() || Some(both.krull_dim()) != expected {
        return Err(Error::Precondition("the schemes do not meet properly".into()));
    }
    if !cm_test(v1, seed.fork("cm"))?.cohen_macaulay {
        return Err(Error::Precondition("first scheme is not arithmetically Cohen-Macaulay".into()));
    }
    let mut cur = v1.minimized();
    let mut steps = Vec::new();
    for (k, f) in ci_gens.iter().enumerate() {
        let s = seed.fork_index("step", k);
        if !is_regular_element(&cur, f)? {
            return Err(Error::Precondition(format!(
                "generator {k} is a zero divisor on the accumulated ideal"
            )));
        }
        let (j, _) = if cur.is_zero() {
            // the whole space: any general linear form is a witness
            let g = crate::ops::random_linear_form(ring, s.fork("witness"));
            (Ideal::new(ring, vec![g])?, WitnessSource::CompleteIntersectionPlusForm)
        } else {
            derive_witness(&cur, s.fork("witness"))?
        };
        let mut step = lemma_key_link(&cur, f, &j)?;
        step.label = format!("add generator {k}");
        cur = step.input.clone();
        steps.push(step);
    }
    Ok(LinkChainReport {
        steps,
        initial: v1.clone(),
        final_ideal: cur,
        seed: seed.seed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn p3() -> Arc<PolyRing> {
        PolyRing::standard(4, 32003).unwrap()
    }

    fn p(r: &Arc<PolyRing>, s: &str) -> Polynomial {
        parse_polynomial(r, s).unwrap()
    }

    #[test]
    fn two_lines_in_a_plane() {
        let r = p3();
        let line = Ideal::parse(&r, &["x1", "x2"]).unwrap();
        let step = ci_link(&line, &[p(&r, "x1"), p(&r, "x2*x3")], LinkOptions::default()).unwrap();
        assert!(step.residual.equals(&Ideal::parse(&r, &["x1", "x3"]).unwrap()).unwrap());
        assert!(step.checks.all_pass());
        assert_eq!(step.checks.geometric, Some(true));
    }

    #[test]
    fn ci_link_preconditions() {
        let r = p3();
        let hyper = Ideal::parse(&r, &["x1"]).unwrap();
        // two generators for a codimension one ideal
        let err = ci_link(&hyper, &[p(&r, "x1*x2"), p(&r, "x3")], LinkOptions::default());
        assert!(err.is_err());
        let line = Ideal::parse(&r, &["x1", "x2"]).unwrap();
        let err = ci_link(&line, &[p(&r, "x1"), p(&r, "x3")], LinkOptions::default());
        assert!(matches!(err, Err(Error::Containment(_))));
    }

    #[test]
    fn lemma_identity_example() {
        let r = p3();
        let i = Ideal::parse(&r, &["x1", "x2", "x3"]).unwrap();
        let j = Ideal::parse(&r, &["x1", "x2", "x3", "x0^2"]).unwrap();
        let step = lemma_key_link(&i, &p(&r, "x0"), &j).unwrap();
        assert!(step
            .linking
            .equals(&Ideal::parse(&r, &["x1", "x2", "x3", "x0^3"]).unwrap())
            .unwrap());
        assert!(step.checks.all_pass());
        let unit = Polynomial::constant(&r, 1);
        assert!(matches!(lemma_key_link(&i, &unit, &j), Err(Error::Precondition(_))));
    }

    #[test]
    fn lemma_identity_on_ci() {
        let r = p3();
        let i = Ideal::parse(&r, &["x1^2", "x2"]).unwrap();
        let j = Ideal::parse(&r, &["x1^2", "x2", "x3"]).unwrap();
        let step = lemma_key_link(&i, &p(&r, "x0"), &j).unwrap();
        assert!(step.checks.all_pass());
    }

    #[test]
    fn gorenstein_sum_of_coplanar_lines() {
        let r = p3();
        let y = Ideal::parse(&r, &["x1", "x2"]).unwrap();
        let c = Ideal::parse(&r, &["x1", "x2*x3"]).unwrap();
        let w = quotient_ideal(&c, &y).unwrap();
        let (g, cert) = gorenstein_sum(&y, &w, &c, SeedStream::new(4)).unwrap();
        // the lines meet in the reduced point [1:0:0:0]
        assert!(g.equals(&Ideal::parse(&r, &["x1", "x2", "x3"]).unwrap()).unwrap());
        assert!(cert.certified());
        assert_eq!(g.h_vector().unwrap().entries(), &[1]);
    }

    #[test]
    fn embedding_a_hyperplane() {
        let r = p3();
        let i = Ideal::parse(&r, &["x0"]).unwrap();
        let rep = embed_and_link(&i, None, 8, SeedStream::new(5)).unwrap();
        assert!(rep.hilbert_match);
        assert!(rep.step.checks.all_pass());
        assert_eq!(rep.witness_source, WitnessSource::CompleteIntersectionPlusForm);
    }

    #[test]
    fn line_meets_quadric_in_two_points() {
        let r = p3();
        let line = Ideal::parse(&r, &["x1", "x2"]).unwrap();
        let q = p(&r, "x0^2 + 3*x0*x3 + 5*x3^2 + x1*x2 + 7*x1^2");
        let rep = proper_ci_intersection_link(&line, &[q], SeedStream::new(6)).unwrap();
        assert_eq!(rep.steps.len(), 1);
        assert_eq!(rep.final_ideal.degree().unwrap(), 2);
        assert!(rep.all_pass());
    }
}
