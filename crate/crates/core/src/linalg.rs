//! Dense linear algebra over GF(p) and univariate polynomial helpers.

use crate::field::PrimeField;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Matrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            m.data[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// In-place reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self, f: PrimeField) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = f.inv(self.get(r, c)).unwrap();
            for j in c..self.cols {
                let v = f.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let v = f.sub(self.get(i, j), f.mul(factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, f: PrimeField) -> usize {
        self.clone().rref(f).len()
    }

    /// Basis of the right kernel `{v : M v = 0}`.
    pub fn kernel(&self, f: PrimeField) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0u32; self.cols];
                v[fc] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(m.get(r, fc));
                }
                v
            })
            .collect()
    }

    /// Characteristic polynomial (coefficients low to high, monic) via
    /// reduction to upper Hessenberg form.
    pub fn charpoly(&self, f: PrimeField) -> Vec<u32> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut h = self.clone();
        for c in 0..n.saturating_sub(2) {
            let Some(pr) = (c + 1..n).find(|&i| h.get(i, c) != 0) else {
                continue;
            };
            if pr != c + 1 {
                h.swap_rows(pr, c + 1);
                for i in 0..n {
                    let (a, b) = (h.get(i, pr), h.get(i, c + 1));
                    h.set(i, pr, b);
                    h.set(i, c + 1, a);
                }
            }
            let inv = f.inv(h.get(c + 1, c)).unwrap();
            for i in c + 2..n {
                let factor = f.mul(h.get(i, c), inv);
                if factor == 0 {
                    continue;
                }
                // row_i -= factor * row_{c+1}; col_{c+1} += factor * col_i
                for j in 0..n {
                    let v = f.sub(h.get(i, j), f.mul(factor, h.get(c + 1, j)));
                    h.set(i, j, v);
                }
                for k in 0..n {
                    let v = f.add(h.get(k, c + 1), f.mul(factor, h.get(k, i)));
                    h.set(k, c + 1, v);
                }
            }
        }
        // p[m] = charpoly of the leading m x m block
        let mut p: Vec<Vec<u32>> = vec![vec![1]];
        for m in 1..=n {
            let mm = m - 1;
            // (x - h[mm][mm]) * p[m-1]
            let mut next = vec![0u32; m + 1];
            for (k, &c) in p[m - 1].iter().enumerate() {
                next[k + 1] = f.add(next[k + 1], c);
                next[k] = f.sub(next[k], f.mul(h.get(mm, mm), c));
            }
            let mut prod = 1u32;
            for i in (0..mm).rev() {
                prod = f.mul(prod, h.get(i + 1, i));
                let coef = f.mul(h.get(i, mm), prod);
                if coef == 0 {
                    continue;
                }
                for (k, &c) in p[i].iter().enumerate() {
                    next[k] = f.sub(next[k], f.mul(coef, c));
                }
            }
            p.push(next);
        }
        p.pop().unwrap()
    }
}

/// Determinant of a small square matrix.
pub fn determinant(m: &Matrix, f: PrimeField) -> u32 {
    assert_eq!(m.rows, m.cols);
    let mut a = m.clone();
    let mut det = 1u32;
    for c in 0..a.cols {
        let Some(pr) = (c..a.rows).find(|&i| a.get(i, c) != 0) else {
            return 0;
        };
        if pr != c {
            a.swap_rows(pr, c);
            det = f.neg(det);
        }
        let pivot = a.get(c, c);
        det = f.mul(det, pivot);
        let inv = f.inv(pivot).unwrap();
        for i in c + 1..a.rows {
            let factor = f.mul(a.get(i, c), inv);
            if factor == 0 {
                continue;
            }
            for j in c..a.cols {
                let v = f.sub(a.get(i, j), f.mul(factor, a.get(c, j)));
                a.set(i, j, v);
            }
        }
    }
    det
}

pub mod upoly {
    //! Dense univariate polynomials, coefficients low to high.
    use super::PrimeField;

    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn derivative(a: &[u32], f: PrimeField) -> Vec<u32> {
        trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| f.mul(c, (k as u64 % f.characteristic() as u64) as u32))
                .collect(),
        )
    }

    pub fn rem(a: &[u32], b: &[u32], f: PrimeField) -> Vec<u32> {
        let b = trim(b.to_vec());
        assert!(!b.is_empty(), "division by zero polynomial");
        let mut r = trim(a.to_vec());
        let inv = f.inv(*b.last().unwrap()).unwrap();
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = f.mul(*r.last().unwrap(), inv);
            for (k, &bc) in b.iter().enumerate() {
                r[shift + k] = f.sub(r[shift + k], f.mul(c, bc));
            }
            r = trim(r);
        }
        r
    }

    pub fn gcd(a: &[u32], b: &[u32], f: PrimeField) -> Vec<u32> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(&a, &b, f);
            a = b;
            b = r;
        }
        if let Some(&lc) = a.last() {
            let inv = f.inv(lc).unwrap();
            a.iter_mut().for_each(|c| *c = f.mul(*c, inv));
        }
        a
    }

    pub fn mul(a: &[u32], b: &[u32], f: PrimeField) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
        trim(out)
    }

    /// `base^e mod m`.
    pub fn powmod(base: &[u32], mut e: u64, m: &[u32], f: PrimeField) -> Vec<u32> {
        let mut result = rem(&[1], m, f);
        let mut b = rem(base, m, f);
        while e > 0 {
            if e & 1 == 1 {
                result = rem(&mul(&result, &b, f), m, f);
            }
            b = rem(&mul(&b, &b, f), m, f);
            e >>= 1;
        }
        result
    }

    /// Exact quotient `a / b`, assuming `b | a`.
    pub fn div(a: &[u32], b: &[u32], f: PrimeField) -> Vec<u32> {
        let b = trim(b.to_vec());
        let mut r = trim(a.to_vec());
        if r.len() < b.len() {
            return Vec::new();
        }
        let inv = f.inv(*b.last().unwrap()).unwrap();
        let mut q = vec![0u32; r.len() - b.len() + 1];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = f.mul(*r.last().unwrap(), inv);
            q[shift] = c;
            for (k, &bc) in b.iter().enumerate() {
                r[shift + k] = f.sub(r[shift + k], f.mul(c, bc));
            }
            r = trim(r);
        }
        trim(q)
    }

    pub fn eval(a: &[u32], x: u32, f: PrimeField) -> u32 {
        a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Product of the distinct linear factors of `a` over the prime field,
    /// `gcd(a, x^p - x)`.
    pub fn rational_part(a: &[u32], f: PrimeField) -> Vec<u32> {
        let a = trim(a.to_vec());
        if a.len() <= 1 {
            return vec![1];
        }
        let xp = powmod(&[0, 1], f.characteristic() as u64, &a, f);
        let mut h = xp;
        while h.len() < 2 {
            h.push(0);
        }
        h[1] = f.sub(h[1], 1);
        gcd(&a, &trim(h), f)
    }

    /// Distinct roots in the prime field, ascending.
    pub fn roots(a: &[u32], f: PrimeField) -> Vec<u32> {
        let mut out = Vec::new();
        split_roots(&rational_part(a, f), f, 1, &mut out);
        out.sort_unstable();
        out
    }

    fn split_roots(g: &[u32], f: PrimeField, mut shift: u32, out: &mut Vec<u32>) {
        let g = trim(g.to_vec());
        match g.len() {
            0 | 1 => return,
            2 => {
                // g1 x + g0
                out.push(f.neg(f.div(g[0], g[1]).unwrap()));
                return;
            }
            _ => {}
        }
        let p = f.characteristic();
        if p == 2 {
            for x in 0..2 {
                if eval(&g, x, f) == 0 {
                    out.push(x);
                }
            }
            return;
        }
        // equal-degree splitting with deterministic shifts
        loop {
            let s = powmod(&[shift % p, 1], (p as u64 - 1) / 2, &g, f);
            let mut s1 = s.clone();
            if s1.is_empty() {
                s1.push(0);
            }
            s1[0] = f.sub(s1[0], 1);
            let d = gcd(&g, &trim(s1), f);
            shift = shift.wrapping_add(1);
            if d.len() > 1 && d.len() < g.len() {
                let other = div(&g, &d, f);
                split_roots(&d, f, shift, out);
                split_roots(&other, f, shift, out);
                return;
            }
        }
    }

    /// Multiplicity of the root `x` in `a`.
    pub fn root_multiplicity(a: &[u32], x: u32, f: PrimeField) -> usize {
        let lin = [f.neg(x), 1];
        let mut a = trim(a.to_vec());
        let mut k = 0;
        while a.len() > 1 && eval(&a, x, f) == 0 {
            a = div(&a, &lin, f);
            k += 1;
        }
        k
    }

    pub fn is_squarefree(a: &[u32], f: PrimeField) -> bool {
        let d = derivative(a, f);
        if d.is_empty() {
            return trim(a.to_vec()).len() <= 1;
        }
        gcd(a, &d, f).len() == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    #[test]
    fn kernel_and_rank() {
        let f = fp();
        let m = Matrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6]]);
        assert_eq!(m.rank(f), 1);
        let k = m.kernel(f);
        assert_eq!(k.len(), 2);
        for v in k {
            let dot: u64 = (0..3).map(|j| m.get(0, j) as u64 * v[j] as u64).sum();
            assert_eq!(dot % 101, 0);
        }
    }

    #[test]
    fn charpoly_of_companion_matrix() {
        let f = fp();
        // companion of x^3 - 6x^2 + 11x - 6 = (x-1)(x-2)(x-3)
        let m = Matrix::from_rows(&[
            vec![0, 0, 6],
            vec![1, 0, f.neg(11)],
            vec![0, 1, 6],
        ]);
        assert_eq!(m.charpoly(f), vec![f.neg(6), 11, f.neg(6), 1]);
    }

    #[test]
    fn charpoly_is_similarity_invariant() {
        let f = fp();
        let a = Matrix::from_rows(&[vec![2, 7, 1, 0], vec![3, 3, 5, 9], vec![1, 0, 4, 2], vec![8, 6, 0, 1]]);
        // brute force: det(xI - A) at 5 sample points matches the polynomial
        let cp = a.charpoly(f);
        for x in [0u32, 1, 5, 17, 50] {
            let mut b = a.clone();
            for i in 0..4 {
                for j in 0..4 {
                    let v = if i == j { f.sub(x, a.get(i, j)) } else { f.neg(a.get(i, j)) };
                    b.set(i, j, v);
                }
            }
            let val = cp.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c));
            assert_eq!(val, determinant(&b, f));
        }
    }

    #[test]
    fn squarefree_detection() {
        let f = fp();
        assert!(upoly::is_squarefree(&[f.neg(2), 0, 1], f)); // x^2 - 2
        assert!(!upoly::is_squarefree(&[1, 2, 1], f)); // (x+1)^2
    }

    #[test]
    fn roots_by_splitting_match_exhaustive_search() {
        let f = PrimeField::new(32003).unwrap();
        // (x-3)^2 (x-10)(x-31000)(x^2+1) has rational roots 3, 10, 31000
        let mut a = vec![1u32];
        for r in [3u32, 3, 10, 31000] {
            a = upoly::mul(&a, &[f.neg(r), 1], f);
        }
        a = upoly::mul(&a, &[1, 0, 1], f);
        let brute: Vec<u32> = (0..32003).filter(|&x| upoly::eval(&a, x, f) == 0).collect();
        assert_eq!(upoly::roots(&a, f), brute);
        assert_eq!(upoly::root_multiplicity(&a, 3, f), 2);
        assert_eq!(upoly::root_multiplicity(&a, 10, f), 1);
    }
}
