//! Dense exponent vectors with a fixed variable capacity.

use std::fmt;

use crate::error::{Error, Result};

/// Maximum number of variables a ring may carry.
pub const MAX_VARS: usize = 16;

/// A monomial `x_0^e_0 * ... * x_{n-1}^e_{n-1}`. Unused slots stay zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    deg: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        exps: [0; MAX_VARS],
        deg: 0,
    };

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::TooManyVariables {
                max: MAX_VARS,
                got: exps.len(),
            });
        }
        let mut m = Monomial::ONE;
        for (i, &e) in exps.iter().enumerate() {
            m.exps[i] = u16::try_from(e).map_err(|_| Error::ExponentOverflow)?;
            m.deg += e;
        }
        Ok(m)
    }

    pub fn var(i: usize) -> Self {
        let mut m = Monomial::ONE;
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn var_pow(i: usize, e: u16) -> Self {
        let mut m = Monomial::ONE;
        m.exps[i] = e;
        m.deg = e as u32;
        m
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    #[inline]
    pub fn exps(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn set_exp(&mut self, i: usize, e: u16) {
        self.deg = self.deg - self.exps[i] as u32 + e as u32;
        self.exps[i] = e;
    }

    /// Weighted degree; weights beyond `w.len()` count as one.
    pub fn weighted_degree(&self, w: &[u32]) -> u32 {
        self.exps
            .iter()
            .enumerate()
            .map(|(i, &e)| e as u32 * w.get(i).copied().unwrap_or(1))
            .sum()
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut out = *self;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i]
                .checked_add(other.exps[i])
                .ok_or(Error::ExponentOverflow)?;
        }
        out.deg = self.deg + other.deg;
        Ok(out)
    }

    /// Product; panics on exponent overflow rather than wrapping.
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i]
                .checked_add(other.exps[i])
                .expect("exponent overflow");
        }
        out.deg = self.deg + other.deg;
        out
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut out = *other;
        for i in 0..MAX_VARS {
            out.exps[i] -= self.exps[i];
        }
        out.deg -= self.deg;
        out
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = Monomial::ONE;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i].max(other.exps[i]);
            out.deg += out.exps[i] as u32;
        }
        out
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = Monomial::ONE;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i].min(other.exps[i]);
            out.deg += out.exps[i] as u32;
        }
        out
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Quotient `self : other` in the monomial sense (exponents saturate at zero).
    pub fn colon(&self, other: &Monomial) -> Monomial {
        let mut out = Monomial::ONE;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i].saturating_sub(other.exps[i]);
            out.deg += out.exps[i] as u32;
        }
        out
    }

    /// Monomial with the variables permuted: slot `map[i]` receives exponent `i`.
    pub fn remap(&self, map: &[usize]) -> Monomial {
        let mut out = Monomial::ONE;
        for (i, &j) in map.iter().enumerate() {
            out.exps[j] = self.exps[i];
        }
        out.deg = self.deg;
        out
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self
            .exps
            .iter()
            .rposition(|&e| e != 0)
            .map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}
