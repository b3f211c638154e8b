//! Distraction of monomial ideals: each `x^a` becomes
//! `x (x - t) (x - 2t) ... (x - (a-1) t)` in a ring with one more variable.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::monomial::Monomial;
use crate::ops::{quotient, specialize_zero};
use crate::poly::{Polynomial, Term};
use crate::random::SeedStream;
use crate::ring::PolyRing;
use crate::zerodim::{cm_test, is_reduced_zero_dim, ReducedCertificate};

/// A monomial ideal given by a minimal set of monomial generators.
#[derive(Clone, Debug)]
pub struct MonomialIdealInput {
    ring: Arc<PolyRing>,
    gens: Vec<Monomial>,
}

impl MonomialIdealInput {
    /// Drops generators divisible by others and duplicates.
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Monomial>) -> Self {
        let mut sorted = gens;
        sorted.sort_by_key(|m| (m.degree(), *m.exps()));
        sorted.dedup();
        let mut minimal: Vec<Monomial> = Vec::new();
        for m in sorted {
            if !minimal.iter().any(|g| g.divides(&m)) {
                minimal.push(m);
            }
        }
        MonomialIdealInput {
            ring: ring.clone(),
            gens: minimal,
        }
    }

    pub fn from_exponents(ring: &Arc<PolyRing>, exps: &[Vec<u32>]) -> Result<Self> {
        let mut gens = Vec::with_capacity(exps.len());
        for e in exps {
            if e.len() != ring.nvars() {
                return Err(Error::InvalidInput(format!(
                    "exponent vector of length {} in a ring with {} variables",
                    e.len(),
                    ring.nvars()
                )));
            }
            gens.push(Monomial::from_exponents(e)?);
        }
        Ok(Self::new(ring, gens))
    }

    /// Each generator must be a single term.
    pub fn from_polynomials(ring: &Arc<PolyRing>, polys: &[Polynomial]) -> Result<Self> {
        let mut gens = Vec::with_capacity(polys.len());
        for f in polys {
            match f.terms() {
                [t] => gens.push(t.mono),
                _ => return Err(Error::InvalidInput(format!("{f} is not a monomial"))),
            }
        }
        Ok(Self::new(ring, gens))
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn max_exponent(&self) -> u32 {
        self.gens
            .iter()
            .flat_map(|m| m.exps().iter().copied())
            .max()
            .unwrap_or(0) as u32
    }

    pub fn to_ideal(&self) -> Result<Ideal> {
        let polys = self
            .gens
            .iter()
            .map(|m| Polynomial::monomial(&self.ring, 1, *m))
            .collect();
        Ideal::new(&self.ring, polys)
    }
}

/// The lifting ring: the variables of `ring` followed by a fresh `t`.
pub fn lifting_ring(ring: &Arc<PolyRing>) -> Result<Arc<PolyRing>> {
    ring.extend(&ring.fresh_name("t"))
}

fn check_prime(target: &Arc<PolyRing>, max_exp: u32) -> Result<()> {
    let p = target.field().characteristic();
    if p <= max_exp {
        return Err(Error::Precondition(format!(
            "prime {p} must exceed the largest exponent {max_exp}"
        )));
    }
    Ok(())
}

/// Lifts `m` into `target`, whose last variable is `t` and whose first
/// variables are those of the monomial's ring.
pub fn lift_monomial(m: &Monomial, target: &Arc<PolyRing>) -> Result<Polynomial> {
    let n = target.nvars();
    if n == 0 {
        return Err(Error::Precondition("lifting ring has no variables".into()));
    }
    let t = n - 1;
    if (t..crate::monomial::MAX_VARS).any(|i| m.exp(i) != 0) {
        return Err(Error::RingMismatch);
    }
    let max = (0..t).map(|i| m.exp(i) as u32).max().unwrap_or(0);
    check_prime(target, max)?;
    let field = target.field();
    let mut out = Polynomial::constant(target, 1);
    for i in 0..t {
        for j in 0..m.exp(i) as i64 {
            let factor = Polynomial::from_terms(
                target,
                vec![
                    Term {
                        coeff: 1,
                        mono: Monomial::var(i),
                    },
                    Term {
                        coeff: field.from_i64(-j),
                        mono: Monomial::var(t),
                    },
                ],
            );
            out = out.try_mul(&factor)?;
        }
    }
    Ok(out)
}

/// The ideal generated by the lifted generators, in `lifting_ring(I.ring)`.
pub fn lift_ideal(i: &MonomialIdealInput) -> Result<Ideal> {
    let target = lifting_ring(i.ring())?;
    check_prime(&target, i.max_exponent())?;
    let gens = i
        .gens()
        .iter()
        .map(|m| lift_monomial(m, &target))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(&target, gens)
}

/// Sets `t = 0` in every generator of `J`.
pub fn specialize_generators(j: &Ideal) -> Result<Vec<Polynomial>> {
    let (_, fiber) = specialize_zero(j, j.ring().nvars() - 1)?;
    Ok(fiber.gens().to_vec())
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftingCertificate {
    /// (a) `J : t = J`.
    pub colon_t: bool,
    /// (b) `(J, t) = (I S, t)`.
    pub special_fiber: bool,
    /// (c) Hilbert functions of `S/(J, t)` and `R/I` agree up to `bound`.
    pub hilbert_match: bool,
    pub bound: usize,
    pub hilbert_function: Vec<i64>,
    /// (d) `S/J` is Cohen-Macaulay.
    pub lifted_cm: bool,
    pub input_cm: bool,
    /// (e) when `S/J` has dimension one.
    pub reduced: Option<ReducedCertificate>,
    pub input_degree: Option<i64>,
    pub lifted_degree: Option<i64>,
}

impl LiftingCertificate {
    /// (d) passes when it agrees with the Cohen-Macaulayness of the input.
    pub fn passes(&self) -> bool {
        self.colon_t
            && self.special_fiber
            && self.hilbert_match
            && self.lifted_cm == self.input_cm
            && self.reduced.as_ref().map_or(true, |r| r.reduced)
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("(a) J : t = J                 {}\n", self.colon_t));
        out.push_str(&format!("(b) (J, t) = (I, t)           {}\n", self.special_fiber));
        out.push_str(&format!(
            "(c) Hilbert functions to {:<4}  {}  {:?}\n",
            self.bound, self.hilbert_match, self.hilbert_function
        ));
        out.push_str(&format!(
            "(d) S/J Cohen-Macaulay        {} (R/I: {})\n",
            self.lifted_cm, self.input_cm
        ));
        match &self.reduced {
            Some(r) => out.push_str(&format!(
                "(e) reduced points            {} ({} points)\n",
                r.reduced, r.degree
            )),
            None => out.push_str("(e) reduced points            n/a\n"),
        }
        out
    }
}

/// Runs checks (a) to (e) for `J = lift_ideal(I)`.
pub fn verify_lifting(
    i: &MonomialIdealInput,
    j: &Ideal,
    bound: usize,
    seed: SeedStream,
) -> Result<LiftingCertificate> {
    let s_ring = j.ring();
    if s_ring.nvars() != i.ring().nvars() + 1 {
        return Err(Error::RingMismatch);
    }
    let t = Polynomial::var(s_ring, s_ring.nvars() - 1);
    let colon_t = quotient(j, &t)?.equals(j)?;

    let r_ideal = i.to_ideal()?;
    let map: Vec<usize> = (0..i.ring().nvars()).collect();
    let mut is_t: Vec<Polynomial> = r_ideal.gens().iter().map(|g| g.remap(s_ring, &map)).collect();
    is_t.push(t.clone());
    let is_t = Ideal::new(s_ring, is_t)?;
    let j_t = j.add_gens(&[t])?;
    let special_fiber = j_t.equals(&is_t)?;

    let (_, fiber) = specialize_zero(&j_t, s_ring.nvars() - 1)?;
    let hf_fiber = fiber.hilbert_function(bound);
    let hf_r = r_ideal.hilbert_function(bound);
    let hilbert_match = hf_fiber == hf_r;

    let lifted_cm = cm_test(j, seed.fork("lifted-cm"))?.cohen_macaulay;
    let input_cm = cm_test(&r_ideal, seed.fork("input-cm"))?.cohen_macaulay;
    let reduced = if !j.is_unit() && j.krull_dim() == 1 {
        Some(is_reduced_zero_dim(j, seed.fork("reduced"))?)
    } else {
        None
    };
    let deg = |x: &Ideal| if x.is_unit() { None } else { x.degree().ok() };
    Ok(LiftingCertificate {
        colon_t,
        special_fiber,
        hilbert_match,
        bound,
        hilbert_function: hf_r,
        lifted_cm,
        input_cm,
        reduced,
        input_degree: deg(&r_ideal),
        lifted_degree: deg(j),
    })
}
