//! JSON input files: ideals, link requests, point schemes, monomial ideals.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fatpoint::{FatPointScheme, PointP3};
use crate::field::PrimeField;
use crate::ideal::Ideal;
use crate::lifting::MonomialIdealInput;
use crate::order::MonomialOrder;
use crate::parse::parse_polynomial;
use crate::poly::Polynomial;
use crate::ring::PolyRing;

pub use crate::field::DEFAULT_PRIME;

fn default_order() -> String {
    "degrevlex".into()
}

/// `degrevlex`, `lex` or `elim(k)`.
pub fn parse_order(s: &str) -> Result<MonomialOrder> {
    let s = s.trim();
    match s {
        "degrevlex" | "grevlex" | "drl" => Ok(MonomialOrder::DegRevLex),
        "lex" => Ok(MonomialOrder::Lex),
        _ => s
            .strip_prefix("elim(")
            .and_then(|r| r.strip_suffix(')'))
            .and_then(|k| k.trim().parse().ok())
            .map(MonomialOrder::Elimination)
            .ok_or_else(|| Error::InvalidInput(format!("unknown monomial order `{s}`"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpec {
    pub vars: Vec<String>,
    #[serde(default)]
    pub prime: Option<u32>,
    #[serde(default = "default_order")]
    pub order: String,
}

impl RingSpec {
    /// `prime` overrides the file's prime when given.
    pub fn build(&self, prime: Option<u32>) -> Result<Arc<PolyRing>> {
        let p = prime.or(self.prime).unwrap_or(DEFAULT_PRIME);
        PolyRing::new(self.vars.clone(), p, parse_order(&self.order)?)
    }

    pub fn of(ring: &PolyRing) -> Self {
        RingSpec {
            vars: ring.vars().to_vec(),
            prime: Some(ring.field().characteristic()),
            order: ring.order().name(),
        }
    }
}

/// Maps a JSON syntax error to a positioned parse error.
pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn parse_all(ring: &Arc<PolyRing>, gens: &[String], what: &str) -> Result<Vec<Polynomial>> {
    gens.iter()
        .enumerate()
        .map(|(k, g)| {
            parse_polynomial(ring, g).map_err(|e| match e {
                Error::Parse { line, column, message } => Error::Parse {
                    line,
                    column,
                    message: format!("{what} {k}: {message}"),
                },
                other => other,
            })
        })
        .collect()
}

/// `{ ring: {vars, prime, order}, generators: [...] }`; an optional
/// `witness` is used by the embedding command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealFile {
    pub ring: RingSpec,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
}

impl IdealFile {
    pub fn parse(text: &str) -> Result<Self> {
        from_json(text)
    }

    pub fn ideal(&self, ring: &Arc<PolyRing>) -> Result<Ideal> {
        Ideal::new(ring, parse_all(ring, &self.generators, "generator")?)
    }

    pub fn of(i: &Ideal) -> Self {
        IdealFile {
            ring: RingSpec::of(i.ring()),
            generators: i.gen_strings(),
            witness: None,
        }
    }
}

/// A link request. With `linking`, a complete intersection link; with
/// `form` and `target`, the key identity `(I + f J) : (I, f) = J`; with
/// neither, a link by a general complete intersection inside the ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkFile {
    pub ring: RingSpec,
    pub ideal: Vec<String>,
    #[serde(default)]
    pub linking: Option<Vec<String>>,
    #[serde(default)]
    pub form: Option<String>,
    #[serde(default)]
    pub target: Option<Vec<String>>,
}

pub enum LinkRequest {
    CompleteIntersection { ideal: Ideal, linking: Vec<Polynomial> },
    Key { ideal: Ideal, form: Polynomial, target: Ideal },
    General { ideal: Ideal },
}

impl LinkFile {
    pub fn parse(text: &str) -> Result<Self> {
        from_json(text)
    }

    pub fn request(&self, ring: &Arc<PolyRing>) -> Result<LinkRequest> {
        let ideal = Ideal::new(ring, parse_all(ring, &self.ideal, "ideal generator")?)?;
        match (&self.linking, &self.form, &self.target) {
            (Some(c), None, None) => Ok(LinkRequest::CompleteIntersection {
                ideal,
                linking: parse_all(ring, c, "linking generator")?,
            }),
            (None, Some(f), Some(j)) => Ok(LinkRequest::Key {
                ideal,
                form: parse_all(ring, std::slice::from_ref(f), "form")?.remove(0),
                target: Ideal::new(ring, parse_all(ring, j, "target generator")?)?,
            }),
            (None, None, None) => Ok(LinkRequest::General { ideal }),
            _ => Err(Error::InvalidInput(
                "give either `linking`, or both `form` and `target`".into(),
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointEntry {
    pub coords: Vec<i64>,
    pub mult: u32,
}

/// `{ points: [{coords, mult}], seed, prime }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointSchemeFile {
    pub points: Vec<PointEntry>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub prime: Option<u32>,
}

impl PointSchemeFile {
    pub fn parse(text: &str) -> Result<Self> {
        from_json(text)
    }

    pub fn scheme(&self, f: PrimeField) -> Result<FatPointScheme> {
        let points = self
            .points
            .iter()
            .map(|e| {
                let c: [i64; 4] = e.coords.as_slice().try_into().map_err(|_| {
                    Error::InvalidInput(format!("a point in P^3 needs 4 coordinates, got {}", e.coords.len()))
                })?;
                Ok((PointP3::from_i64(f, c)?, e.mult))
            })
            .collect::<Result<Vec<_>>>()?;
        FatPointScheme::new(points)
    }
}

/// A monomial ideal, by exponent vectors or by monomial strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialFile {
    pub ring: RingSpec,
    #[serde(default)]
    pub exponents: Option<Vec<Vec<u32>>>,
    #[serde(default)]
    pub generators: Option<Vec<String>>,
}

impl MonomialFile {
    pub fn parse(text: &str) -> Result<Self> {
        from_json(text)
    }

    pub fn input(&self, ring: &Arc<PolyRing>) -> Result<MonomialIdealInput> {
        match (&self.exponents, &self.generators) {
            (Some(e), None) => MonomialIdealInput::from_exponents(ring, e),
            (None, Some(g)) => MonomialIdealInput::from_polynomials(ring, &parse_all(ring, g, "generator")?),
            _ => Err(Error::InvalidInput("give exactly one of `exponents` and `generators`".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ideal_file_round_trip() {
        let text = r#"{"ring": {"vars": ["x", "y", "z"], "prime": 101}, "generators": ["x^2 - y*z", "x*(y + z)"]}"#;
        let f = IdealFile::parse(text).unwrap();
        let r = f.ring.build(None).unwrap();
        assert_eq!(r.field().characteristic(), 101);
        let i = f.ideal(&r).unwrap();
        let back = IdealFile::of(&i);
        let j = back.ideal(&back.ring.build(None).unwrap()).unwrap();
        assert_eq!(i.gen_strings(), j.gen_strings());
        assert_eq!(f.ring.build(Some(7)).unwrap().field().characteristic(), 7);
    }

    #[test]
    fn positioned_errors() {
        match IdealFile::parse("{\"ring\": {\"vars\": [\"x\"]},\n \"generators\": [1]}") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        let f = IdealFile::parse(r#"{"ring": {"vars": ["x"]}, "generators": ["x", "x +* 2"]}"#).unwrap();
        let r = f.ring.build(None).unwrap();
        match f.ideal(&r) {
            Err(Error::Parse { message, .. }) => assert!(message.starts_with("generator 1"), "{message}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn orders() {
        assert_eq!(parse_order("lex").unwrap(), MonomialOrder::Lex);
        assert_eq!(parse_order("elim(2)").unwrap(), MonomialOrder::Elimination(2));
        assert!(parse_order("deglex").is_err());
    }

    #[test]
    fn point_schemes() {
        let f = PointSchemeFile::parse(r#"{"points": [{"coords": [1, 0, 0, 0], "mult": 2}, {"coords": [2, 6, -4, 10], "mult": 1}], "seed": 9}"#).unwrap();
        let z = f.scheme(PrimeField::new(32003).unwrap()).unwrap();
        assert_eq!(z.degree(), 5);
        assert_eq!(z.points[1].0.to_string(), "[1:3:32001:5]");
        let bad = PointSchemeFile::parse(r#"{"points": [{"coords": [1, 0, 0], "mult": 2}]}"#).unwrap();
        assert!(bad.scheme(PrimeField::new(32003).unwrap()).is_err());
    }

    #[test]
    fn monomial_inputs() {
        let f = MonomialFile::parse(r#"{"ring": {"vars": ["x", "y"]}, "exponents": [[2, 0], [1, 1], [0, 2], [2, 1]]}"#).unwrap();
        let r = f.ring.build(None).unwrap();
        assert_eq!(f.input(&r).unwrap().gens().len(), 3);
        let g = MonomialFile::parse(r#"{"ring": {"vars": ["x", "y"]}, "generators": ["x^2", "x*y + y"]}"#).unwrap();
        assert!(g.input(&r).is_err());
    }
}
