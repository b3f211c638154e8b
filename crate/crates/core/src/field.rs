//! Arithmetic in the prime field GF(p).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default characteristic used throughout the crate.
pub const DEFAULT_PRIME: u32 = 32003;

/// A prime field GF(p) with `p < 2^31`. Elements are plain `u32` residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PrimeField {
    p: u32,
}

impl TryFrom<u32> for PrimeField {
    type Error = Error;

    fn try_from(p: u32) -> Result<Self> {
        PrimeField::new(p)
    }
}

impl From<PrimeField> for u32 {
    fn from(f: PrimeField) -> u32 {
        f.p
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Reduces an arbitrary signed integer into `[0, p)`.
    pub fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(&self, a: u32) -> Result<u32> {
        if a % self.p == 0 {
            return Err(Error::DivisionByZero);
        }
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        Ok(self.from_i64(s0))
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Symmetric representative in `(-p/2, p/2]`, used for display.
    pub fn signed(&self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn euclid_oracle(a: i64, p: i64) -> i64 {
        // brute force: the unique x in [1, p) with a*x = 1
        (1..p).find(|x| (a * x) % p == 1).unwrap()
    }

    #[test]
    fn additive_inverse() {
        let f = PrimeField::new(32003).unwrap();
        assert_eq!(f.add(5, 31998), 0);
        assert_eq!(f.neg(5), 31998);
    }

    #[test]
    fn inverse_of_two() {
        let f = PrimeField::new(32003).unwrap();
        assert_eq!(euclid_oracle(2, 32003), 16002);
        assert_eq!(f.inv(2).unwrap(), 16002);
        assert_eq!(f.mul(2, 16002), 1);
    }

    #[test]
    fn small_prime_product() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.mul(3, 5), 1);
    }

    #[test]
    fn zero_has_no_inverse() {
        let f = PrimeField::new(7).unwrap();
        let err = f.inv(0).unwrap_err();
        assert_eq!(err.to_string(), "division by zero in field");
    }

    #[test]
    fn rejects_composites() {
        assert!(PrimeField::new(32004).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(2).is_ok());
    }

    #[test]
    fn all_inverses_mod_101() {
        let f = PrimeField::new(101).unwrap();
        for a in 1..101 {
            assert_eq!(f.inv(a).unwrap() as i64, euclid_oracle(a as i64, 101));
        }
    }
}
