//! Hilbert series of monomial ideals and the invariants read off from them.
//!
//! For an ideal `I` of `K[x_0..x_{n-1}]` the Hilbert series of `R/I` is
//! `N(z) / (1 - z)^n`; `N` only depends on the leading-term ideal.

use serde::{Deserialize, Serialize};

use crate::monomial::{Monomial, MAX_VARS};

type Series = Vec<i64>;

fn trim(mut a: Series) -> Series {
    while a.len() > 1 && a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn add(a: &Series, b: &Series) -> Series {
    let mut out = vec![0; a.len().max(b.len())];
    for (k, v) in a.iter().enumerate() {
        out[k] += v;
    }
    for (k, v) in b.iter().enumerate() {
        out[k] += v;
    }
    trim(out)
}

fn mul(a: &Series, b: &Series) -> Series {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn shift(a: &Series, d: usize) -> Series {
    let mut out = vec![0; d];
    out.extend_from_slice(a);
    trim(out)
}

fn one_minus_z_pow(d: u32) -> Series {
    let mut s = vec![0; d as usize + 1];
    s[0] = 1;
    s[d as usize] -= 1;
    trim(s)
}

/// Drops generators divisible by another generator (and duplicates).
pub fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator of the Hilbert series of `R / (gens)`, by pivot recursion:
/// `N(I) = N(I + (p)) + z^deg(p) N(I : p)` for a pure-power pivot `p`.
pub fn numerator(gens: &[Monomial]) -> Vec<i64> {
    numerator_rec(minimalize(gens.to_vec()))
}

fn numerator_rec(gens: Vec<Monomial>) -> Series {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return vec![0];
    }
    // pairwise coprime generators form a regular sequence
    let mut support = 0u32;
    let mut coprime = true;
    for g in &gens {
        let mut s = 0u32;
        for i in 0..MAX_VARS {
            if g.exp(i) > 0 {
                s |= 1 << i;
            }
        }
        if s & support != 0 {
            coprime = false;
            break;
        }
        support |= s;
    }
    if coprime {
        return gens
            .iter()
            .fold(vec![1], |acc, g| mul(&acc, &one_minus_z_pow(g.degree())));
    }
    // pivot variable: the one occurring in most non-pure-power generators
    let mut counts = [0usize; MAX_VARS];
    for g in &gens {
        let nz = (0..MAX_VARS).filter(|&i| g.exp(i) > 0).count();
        if nz > 1 {
            for (i, c) in counts.iter_mut().enumerate() {
                if g.exp(i) > 0 {
                    *c += 1;
                }
            }
        }
    }
    let var = (0..MAX_VARS).max_by_key(|&i| (counts[i], std::cmp::Reverse(i))).unwrap();
    let e = gens
        .iter()
        .filter(|g| (0..MAX_VARS).filter(|&i| g.exp(i) > 0).count() > 1 && g.exp(var) > 0)
        .map(|g| g.exp(var))
        .min()
        .unwrap();
    let pivot = Monomial::var_pow(var, e);
    let mut with_pivot = gens.clone();
    with_pivot.push(pivot);
    let colon: Vec<Monomial> = gens.iter().map(|g| g.colon(&pivot)).collect();
    add(
        &numerator_rec(minimalize(with_pivot)),
        &shift(&numerator_rec(minimalize(colon)), e as usize),
    )
}

/// Divides `a` by `(1 - z)` if exact.
fn div_one_minus_z(a: &Series) -> Option<Series> {
    if a.iter().sum::<i64>() != 0 {
        return None;
    }
    // a = (1 - z) q  =>  q_k = sum_{j<=k} a_j
    let mut q = Vec::with_capacity(a.len());
    let mut acc = 0;
    for &c in &a[..a.len().saturating_sub(1)] {
        acc += c;
        q.push(acc);
    }
    Some(trim(if q.is_empty() { vec![0] } else { q }))
}

/// Hilbert data of `R/I` for an `nvars`-variable ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    pub nvars: usize,
    pub numerator: Vec<i64>,
}

impl HilbertData {
    pub fn from_leading_monomials(nvars: usize, lms: &[Monomial]) -> Self {
        HilbertData {
            nvars,
            numerator: numerator(lms),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.iter().all(|&c| c == 0)
    }

    /// Krull dimension of `R/I` (zero for the unit ideal).
    pub fn krull_dim(&self) -> usize {
        if self.is_zero() {
            return 0;
        }
        let mut a = self.numerator.clone();
        let mut k = 0;
        while let Some(q) = div_one_minus_z(&a) {
            a = q;
            k += 1;
        }
        self.nvars - k
    }

    /// `h(z) = N(z) / (1 - z)^codim`.
    pub fn h_polynomial(&self) -> Vec<i64> {
        let mut a = self.numerator.clone();
        for _ in 0..self.nvars - self.krull_dim() {
            a = div_one_minus_z(&a).expect("codimension divides");
        }
        a
    }

    pub fn degree(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.h_polynomial().iter().sum())
        }
    }

    /// `dim_K (R/I)_d` for `d = 0..=bound`.
    pub fn hilbert_function(&self, bound: usize) -> Vec<i64> {
        // multiply by 1/(1-z) nvars times, i.e. take prefix sums
        let mut a: Vec<i64> = (0..=bound)
            .map(|k| self.numerator.get(k).copied().unwrap_or(0))
            .collect();
        for _ in 0..self.nvars {
            for k in 1..a.len() {
                a[k] += a[k - 1];
            }
        }
        a
    }
}

/// Finite integer sequence: the (dim+1)-st difference of a Hilbert function.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HVector(pub Vec<i64>);

impl HVector {
    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn has_negative(&self) -> bool {
        self.0.iter().any(|&c| c < 0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    /// Two-row text table: degrees on top, values below.
    pub fn table(&self) -> String {
        let width = self
            .0
            .iter()
            .enumerate()
            .map(|(k, v)| k.to_string().len().max(v.to_string().len()))
            .collect::<Vec<_>>();
        let mut deg = String::from("deg     ");
        let mut val = String::from("h-vector");
        for (k, v) in self.0.iter().enumerate() {
            deg.push_str(&format!("  {:>w$}", k, w = width[k]));
            val.push_str(&format!("  {:>w$}", v, w = width[k]));
        }
        format!("{deg}\n{val}")
    }
}

impl std::fmt::Display for HVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl HilbertData {
    pub fn h_vector(&self) -> HVector {
        HVector(trim(self.h_polynomial()))
    }
}
