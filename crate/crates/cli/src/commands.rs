use std::path::Path;

use serde_json::{json, Value};

use liaison::fatpoint::{double_step_report, reduce_to_reduced, DoubleStepOptions, RepairPolicy};
use liaison::io::{IdealFile, LinkFile, LinkRequest, MonomialFile, PointSchemeFile, RingSpec, DEFAULT_PRIME};
use liaison::liaison::{ci_link, embed_and_link, general_ci_in, lemma_key_link, LinkChainReport, LinkOptions, LinkStep};
use liaison::lifting::{lift_ideal, verify_lifting};
use liaison::parse::parse_polynomial;
use liaison::random::SeedStream;
use liaison::ring::PolyRing;
use liaison::zerodim::cm_test;
use liaison::{Error, Ideal, Result};

use crate::{Cli, Command, Policy};

const DEFAULT_SEED: u64 = 1;

pub struct Output {
    pub ok: bool,
    pub json: String,
    pub text: String,
}

fn read(path: &Path) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

fn default_bound(i: &Ideal) -> usize {
    2 * i.max_generator_degree() as usize + 4
}

fn finish(command: &str, ring: &PolyRing, seed: u64, ok: bool, result: Value, text: String) -> Result<Output> {
    let env = json!({
        "command": command,
        "prime": ring.field().characteristic(),
        "seed": seed,
        "ok": ok,
        "result": result,
    });
    let mut json = serde_json::to_string_pretty(&env)?;
    json.push('\n');
    let text = format!(
        "{command}: prime {}, seed {seed}\n{text}{}\n",
        ring.field().characteristic(),
        if ok { "verdict: ok" } else { "verdict: FAILED" }
    );
    Ok(Output { ok, json, text })
}

pub fn run(cli: &Cli) -> Result<Output> {
    let seed = cli.seed.unwrap_or(DEFAULT_SEED);
    match &cli.command {
        Command::Hvector { input } => hvector(cli, input, seed),
        Command::Link { input } => link(cli, input, seed),
        Command::Fatpoints {
            input,
            policy,
            single,
            max_pairs,
        } => fatpoints(cli, input, *policy, *single, *max_pairs),
        Command::Lift { input } => lift(cli, input, seed),
        Command::Embed { input } => embed(cli, input, seed),
    }
}

fn hvector(cli: &Cli, input: &Path, seed: u64) -> Result<Output> {
    let file = IdealFile::parse(&read(input)?)?;
    let ring = file.ring.build(cli.prime)?;
    let i = file.ideal(&ring)?;
    if i.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let h = i.h_vector()?;
    let degree = i.degree()?;
    let cm = cm_test(&i, SeedStream::new(seed))?;
    let bound = cli.bound.unwrap_or_else(|| default_bound(&i));
    let hf = i.hilbert_function(bound);
    let result = json!({
        "ring": RingSpec::of(&ring),
        "generators": i.gen_strings(),
        "h_vector": h,
        "degree": degree,
        "krull_dim": i.krull_dim(),
        "codim": i.codim(),
        "cohen_macaulay": cm.cohen_macaulay,
        "hilbert_function": hf,
    });
    let text = format!(
        "h-vector {h}\n{}\ndegree {degree}, Krull dimension {}, codimension {}\nCohen-Macaulay: {}\nHilbert function to degree {bound}: {hf:?}\n",
        h.table(),
        i.krull_dim(),
        i.codim(),
        cm.cohen_macaulay
    );
    finish("hvector", &ring, seed, true, result, text)
}

fn single_step_report(step: LinkStep, seed: u64) -> LinkChainReport {
    LinkChainReport {
        initial: step.input.clone(),
        final_ideal: step.residual.clone(),
        steps: vec![step],
        seed,
    }
}

fn link(cli: &Cli, input: &Path, seed: u64) -> Result<Output> {
    let file = LinkFile::parse(&read(input)?)?;
    let ring = file.ring.build(cli.prime)?;
    let s = SeedStream::new(seed);
    let opts = LinkOptions {
        seed: s.fork("link"),
        ..LinkOptions::default()
    };
    let (report, mut notes) = match file.request(&ring)? {
        LinkRequest::CompleteIntersection { ideal, linking } => {
            (single_step_report(ci_link(&ideal, &linking, opts)?, seed), String::new())
        }
        LinkRequest::General { ideal } => {
            let gens = general_ci_in(&ideal, s.fork("ci"))?;
            (single_step_report(ci_link(&ideal, &gens, opts)?, seed), String::new())
        }
        LinkRequest::Key { ideal, form, target } => {
            let step = lemma_key_link(&ideal, &form, &target)?;
            let note = match step.checks.identity {
                Some(true) => "identity holds\n".to_string(),
                _ => "identity FAILED\n".to_string(),
            };
            (single_step_report(step, seed), note)
        }
    };
    let step = &report.steps[0];
    let deg = |i: &Ideal| if i.is_unit() { 0 } else { i.degree().unwrap_or(0) };
    let (a, b, c) = (deg(&step.input), deg(&step.residual), deg(&step.linking));
    notes.push_str(&format!("degrees: {a} + {b} = {c}\n"));
    let ok = report.all_pass();
    let text = format!("{}{notes}", report.text());
    let result = serde_json::to_value(report.record())?;
    finish("link", &ring, seed, ok, result, text)
}

fn fatpoints(cli: &Cli, input: &Path, policy: Policy, single: bool, max_pairs: u128) -> Result<Output> {
    let file = PointSchemeFile::parse(&read(input)?)?;
    let prime = cli.prime.or(file.prime).unwrap_or(DEFAULT_PRIME);
    let seed = cli.seed.or(file.seed).unwrap_or(DEFAULT_SEED);
    let ring = liaison::fatpoint::p3_ring(prime)?;
    let z = file.scheme(ring.field())?;
    let opts = DoubleStepOptions {
        policy: match policy {
            Policy::SkipCovered => RepairPolicy::SkipCovered,
            Policy::Literal => RepairPolicy::Literal,
        },
        max_pairs,
        ..DoubleStepOptions::default()
    };
    let s = SeedStream::new(seed);
    if single {
        let focus = z
            .points
            .iter()
            .position(|(_, b)| *b >= 2)
            .ok_or_else(|| Error::InvalidInput("every point is reduced".into()))?;
        let rep = double_step_report(&ring, &z, focus, opts, s)?;
        let ok = rep.all_pass();
        let result = serde_json::to_value(&rep.record)?;
        return finish("fatpoints", &ring, seed, ok, result, rep.text());
    }
    let rep = reduce_to_reduced(&ring, &z, opts, s)?;
    let ok = rep.all_pass();
    let result = serde_json::to_value(&rep)?;
    finish("fatpoints", &ring, seed, ok, result, rep.text())
}

fn lift(cli: &Cli, input: &Path, seed: u64) -> Result<Output> {
    let file = MonomialFile::parse(&read(input)?)?;
    let ring = file.ring.build(cli.prime)?;
    let i = file.input(&ring)?;
    let j = lift_ideal(&i)?;
    let bound = cli.bound.unwrap_or_else(|| default_bound(&i.to_ideal().unwrap_or_else(|_| Ideal::zero(&ring))));
    let cert = verify_lifting(&i, &j, bound, SeedStream::new(seed))?;
    let ok = cert.passes();
    let lifted: Vec<String> = j.gens().iter().map(|g| g.to_string()).collect();
    let result = json!({
        "input": i.to_ideal()?.gen_strings(),
        "lifted_ring": RingSpec::of(j.ring()),
        "lifted": lifted,
        "certificate": cert,
    });
    let text = format!("lifted generators:\n  {}\n{}", lifted.join("\n  "), cert.text());
    finish("lift", &ring, seed, ok, result, text)
}

fn embed(cli: &Cli, input: &Path, seed: u64) -> Result<Output> {
    let file = IdealFile::parse(&read(input)?)?;
    let ring = file.ring.build(cli.prime)?;
    let i = file.ideal(&ring)?;
    let witness = match &file.witness {
        Some(gens) => {
            let s_ring = ring.extend(&ring.fresh_name("t"))?;
            let polys = gens
                .iter()
                .map(|g| parse_polynomial(&s_ring, g))
                .collect::<Result<Vec<_>>>()?;
            Some(Ideal::new(&s_ring, polys)?)
        }
        None => None,
    };
    let bound = cli.bound.unwrap_or_else(|| default_bound(&i));
    let rep = embed_and_link(&i, witness.as_ref(), bound, SeedStream::new(seed))?;
    let ok = rep.step.checks.all_pass() && rep.hilbert_match;
    let rec = rep.record();
    let text = format!(
        "extended ring: {}\nwitness: {:?}\nHilbert functions agree to degree {bound}: {} {:?}\n{}",
        rec.extended_vars.join(", "),
        rec.witness_source,
        rec.hilbert_match,
        rec.hilbert_function,
        single_step_report(rep.step.clone(), seed).text()
    );
    finish("embed", &ring, seed, ok, serde_json::to_value(rec)?, text)
}
