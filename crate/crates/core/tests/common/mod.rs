#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use liaison::liaison::monomials_of_degree;
use liaison::linalg::Matrix;
use liaison::monomial::Monomial;
use liaison::poly::Polynomial;
use liaison::ring::PolyRing;

pub fn binomial(n: u64, k: u64) -> i64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1)) as i64
}

fn coeff_row(f: &Polynomial, index: &HashMap<Monomial, usize>) -> Vec<u32> {
    let mut row = vec![0; index.len()];
    for t in f.terms() {
        row[index[&t.mono]] = t.coeff;
    }
    row
}

/// Membership of a form of degree `d` in the ideal generated by the
/// homogeneous `gens`, decided by comparing ranks of the degree `d`
/// coefficient matrices with and without `f`.
pub fn in_span_of_degree(ring: &Arc<PolyRing>, gens: &[Polynomial], f: &Polynomial) -> bool {
    if f.is_zero() {
        return true;
    }
    let d = f.degree().unwrap();
    let n = ring.nvars();
    let index: HashMap<Monomial, usize> = monomials_of_degree(n, d)
        .into_iter()
        .enumerate()
        .map(|(k, m)| (m, k))
        .collect();
    let mut rows = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let dg = g.degree().unwrap();
        if dg > d {
            continue;
        }
        for m in monomials_of_degree(n, d - dg) {
            rows.push(coeff_row(&g.mul_monomial(&m), &index));
        }
    }
    let field = ring.field();
    let base = if rows.is_empty() { 0 } else { Matrix::from_rows(&rows).rank(field) };
    rows.push(coeff_row(f, &index));
    Matrix::from_rows(&rows).rank(field) == base
}

/// Monomials not divisible by any generator, counted by enumeration up to
/// degree `bound`.
pub fn standard_monomial_counts(nvars: usize, gens: &[Monomial], bound: u32) -> Vec<i64> {
    (0..=bound)
        .map(|d| {
            monomials_of_degree(nvars, d)
                .iter()
                .filter(|m| !gens.iter().any(|g| g.divides(m)))
                .count() as i64
        })
        .collect()
}
