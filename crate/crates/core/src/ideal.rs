//! Homogeneous ideals with lazily cached Gröbner bases and Hilbert data.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::{groebner, normal_form};
use crate::hilbert::{HVector, HilbertData};
use crate::parse::parse_polynomial;
use crate::poly::{same_ring, Polynomial};
use crate::ring::PolyRing;

/// An immutable homogeneous ideal. Invariants are computed on first use and
/// cached; concurrent first uses compute identical values.
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<PolyRing>,
    gens: Vec<Polynomial>,
    gb: OnceLock<Arc<Vec<Polynomial>>>,
    hilbert: OnceLock<HilbertData>,
}

impl Ideal {
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Result<Self> {
        let mut kept = Vec::with_capacity(gens.len());
        for g in gens {
            if !same_ring(g.ring(), ring) {
                return Err(Error::RingMismatch);
            }
            if !g.is_homogeneous() {
                return Err(Error::NotHomogeneous(g.to_string()));
            }
            if !g.is_zero() {
                kept.push(g);
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: kept,
            gb: OnceLock::new(),
            hilbert: OnceLock::new(),
        })
    }

    /// Builds an ideal whose generators are known to form its reduced basis.
    pub(crate) fn from_basis(ring: &Arc<PolyRing>, basis: Vec<Polynomial>) -> Self {
        let gb = OnceLock::new();
        let _ = gb.set(Arc::new(basis.clone()));
        Ideal {
            ring: ring.clone(),
            gens: basis,
            gb,
            hilbert: OnceLock::new(),
        }
    }

    pub fn parse(ring: &Arc<PolyRing>, gens: &[&str]) -> Result<Self> {
        let polys = gens
            .iter()
            .map(|s| parse_polynomial(ring, s))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, polys)
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Ideal::from_basis(ring, Vec::new())
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Self {
        Ideal::from_basis(ring, vec![Polynomial::constant(ring, 1)])
    }

    /// Ideal generated by the variables, the irrelevant ideal.
    pub fn irrelevant(ring: &Arc<PolyRing>) -> Self {
        Ideal::from_basis(
            ring,
            (0..ring.nvars()).rev().map(|i| Polynomial::var(ring, i)).collect(),
        )
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Reduced Gröbner basis with respect to the ring's order.
    pub fn gb(&self) -> &[Polynomial] {
        self.gb.get_or_init(|| {
            Arc::new(groebner(&self.ring, &self.gens).expect("generators share the ring"))
        })
    }

    pub fn is_unit(&self) -> bool {
        self.gb().first().is_some_and(|g| g.is_constant())
    }

    pub fn is_zero(&self) -> bool {
        self.gb().is_empty()
    }

    pub(crate) fn check_ring(&self, other: &Arc<PolyRing>) -> Result<()> {
        if same_ring(&self.ring, other) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        self.check_ring(f.ring())?;
        normal_form(f, self.gb())
    }

    /// Ideal membership by reduction to zero modulo the Gröbner basis.
    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.reduce(f)?.is_zero())
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(&other.ring)?;
        for g in &self.gens {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality of ideals via their reduced Gröbner bases.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(&other.ring)?;
        Ok(self.gb() == other.gb())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(&other.ring)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn add_gens(&self, extra: &[Polynomial]) -> Result<Ideal> {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(&other.ring)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.try_mul(b)?);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// `f · I`.
    pub fn scale(&self, f: &Polynomial) -> Result<Ideal> {
        self.check_ring(f.ring())?;
        let gens = self
            .gens
            .iter()
            .map(|g| g.try_mul(f))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.ring, gens)
    }

    pub fn power(&self, k: u32) -> Result<Ideal> {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..k {
            acc = acc.product(self)?;
            // keep generator lists small
            acc = Ideal::from_basis(&self.ring, acc.gb().to_vec());
        }
        Ok(acc)
    }

    pub fn hilbert(&self) -> &HilbertData {
        self.hilbert.get_or_init(|| {
            let lms: Vec<_> = self
                .gb()
                .iter()
                .map(|g| g.leading_monomial().unwrap())
                .collect();
            HilbertData::from_leading_monomials(self.ring.nvars(), &lms)
        })
    }

    pub fn hilbert_numerator(&self) -> &[i64] {
        &self.hilbert().numerator
    }

    /// Krull dimension of `R/I`; zero for the unit ideal by convention.
    pub fn krull_dim(&self) -> usize {
        self.hilbert().krull_dim()
    }

    pub fn codim(&self) -> usize {
        if self.is_unit() {
            return self.ring.nvars();
        }
        self.ring.nvars() - self.krull_dim()
    }

    pub fn degree(&self) -> Result<i64> {
        self.hilbert().degree().ok_or(Error::UnitIdeal)
    }

    pub fn hilbert_function(&self, bound: usize) -> Vec<i64> {
        self.hilbert().hilbert_function(bound)
    }

    /// The `dim(R/I)`-th difference of the Hilbert function; callers check
    /// [`HVector::has_negative`] to detect non-ACM or unsaturated input.
    pub fn h_vector(&self) -> Result<HVector> {
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        Ok(self.hilbert().h_vector())
    }

    /// Maximal degree of a generator.
    pub fn max_generator_degree(&self) -> u32 {
        self.gens.iter().filter_map(|g| g.degree()).max().unwrap_or(0)
    }

    pub fn gen_strings(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.to_string()).collect()
    }

    /// Ideal with its reduced basis as generators.
    pub fn minimized(&self) -> Ideal {
        Ideal::from_basis(&self.ring, self.gb().to_vec())
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal({})", self.gen_strings().join(", "))
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.gen_strings().join(", "))
    }
}
