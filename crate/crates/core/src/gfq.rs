//! Small finite fields and dense linear algebra over them.
//!
//! Elements of `F_q` are `u8` indices in `0..q`. For prime `q` the index is
//! the residue; for `q = p^k` the index encodes the coefficients of a
//! polynomial in `x` in base `p`, reduced modulo a fixed irreducible
//! polynomial (`x^2+x+1`, `x^3+x+1`, `x^2+1` for `q = 4, 8, 9`).

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

pub type Fq = u8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("unsupported field size {0}; expected one of 2, 3, 4, 5, 7, 8, 9")]
    UnsupportedField(u32),
    #[error("field axiom check failed for q = {0}")]
    AxiomFailure(u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(&'static str),
}

#[derive(Debug)]
struct Tables {
    q: u8,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

/// Handle to the arithmetic tables of `F_q`. Cloning is cheap.
#[derive(Debug, Clone)]
pub struct Field(Arc<Tables>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.q() == other.q()
    }
}

impl Eq for Field {}

impl Field {
    pub fn new(q: u32) -> Result<Field, FieldError> {
        let (p, k, modulus): (u32, u32, &[u32]) = match q {
            2 | 3 | 5 | 7 => (q, 1, &[]),
            4 => (2, 2, &[1, 1, 1]),
            8 => (2, 3, &[1, 1, 0, 1]),
            9 => (3, 2, &[1, 0, 1]),
            _ => return Err(FieldError::UnsupportedField(q)),
        };
        let digits = |mut x: u32| -> Vec<u32> {
            let mut d = vec![0; k as usize];
            for slot in d.iter_mut() {
                *slot = x % p;
                x /= p;
            }
            d
        };
        let undigits = |d: &[u32]| d.iter().rev().fold(0, |acc, &c| acc * p + c);
        let n = q as usize;
        let mut add = vec![0u8; n * n];
        let mut mul = vec![0u8; n * n];
        for a in 0..q {
            for b in 0..q {
                let (da, db) = (digits(a), digits(b));
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = undigits(&s) as u8;
                let prod = if k == 1 {
                    (a * b) % p
                } else {
                    let mut raw = vec![0u32; 2 * k as usize - 1];
                    for (i, x) in da.iter().enumerate() {
                        for (j, y) in db.iter().enumerate() {
                            raw[i + j] = (raw[i + j] + x * y) % p;
                        }
                    }
                    // reduce by the monic modulus from the top degree down
                    for top in (k as usize..raw.len()).rev() {
                        let c = raw[top];
                        if c != 0 {
                            for (i, m) in modulus.iter().enumerate() {
                                let idx = top - k as usize + i;
                                raw[idx] = (raw[idx] + (p - c) * m) % p;
                            }
                        }
                    }
                    undigits(&raw[..k as usize])
                };
                mul[(a * q + b) as usize] = prod as u8;
            }
        }
        let mut neg = vec![0u8; n];
        let mut inv = vec![0u8; n];
        for a in 0..n {
            for b in 0..n {
                if add[a * n + b] == 0 {
                    neg[a] = b as u8;
                }
                if mul[a * n + b] == 1 {
                    inv[a] = b as u8;
                }
            }
        }
        let f = Field(Arc::new(Tables { q: q as u8, add, mul, neg, inv }));
        if !f.axioms_hold() {
            return Err(FieldError::AxiomFailure(q));
        }
        Ok(f)
    }

    fn axioms_hold(&self) -> bool {
        let q = self.q();
        for a in 0..q {
            if self.add(a, 0) != a || self.mul(a, 1) != a {
                return false;
            }
            if self.add(a, self.neg(a)) != 0 {
                return false;
            }
            if a != 0 && self.mul(a, self.inv(a)) != 1 {
                return false;
            }
            for b in 0..q {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return false;
                }
                for c in 0..q {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c))
                        || self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
                        || self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c))
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[inline]
    pub fn q(&self) -> u8 {
        self.0.q
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        self.0.add[a as usize * self.0.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        self.0.mul[a as usize * self.0.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        self.0.neg[a as usize]
    }

    /// Multiplicative inverse. Panics on zero.
    #[inline]
    pub fn inv(&self, a: Fq) -> Fq {
        assert!(a != 0, "inverse of zero");
        self.0.inv[a as usize]
    }

    pub fn elements(&self) -> core::ops::Range<u8> {
        0..self.q()
    }
}

/// Dense row-major matrix over a field. The field is passed to each operation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Fq>,
}

impl FqMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FqMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Fq>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Fq {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fq) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn row(&self, r: usize) -> &[Fq] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul(&self, f: &Field, rhs: &FqMatrix) -> FqMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        let mut out = FqMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b != 0 {
                        let cur = out.get(i, j);
                        out.set(i, j, f.add(cur, f.mul(a, b)));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, f: &Field, rhs: &FqMatrix) -> FqMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum shape");
        let data = self.data.iter().zip(&rhs.data).map(|(&a, &b)| f.add(a, b)).collect();
        FqMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, f: &Field, rhs: &FqMatrix) -> FqMatrix {
        self.add(f, &rhs.neg(f))
    }

    pub fn neg(&self, f: &Field) -> FqMatrix {
        self.scale(f, f.neg(1))
    }

    pub fn scale(&self, f: &Field, c: Fq) -> FqMatrix {
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        FqMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> FqMatrix {
        let mut out = FqMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn put_block(&mut self, r0: usize, c0: usize, block: &FqMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j));
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> FqMatrix {
        let mut out = FqMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.get(r0 + i, c0 + j));
            }
        }
        out
    }

    /// Row reduces in place to reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self, f: &Field) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c));
            for j in 0..self.cols {
                let v = self.get(r, j);
                self.set(r, j, f.mul(v, inv));
            }
            for i in 0..self.rows {
                let factor = self.get(i, c);
                if i != r && factor != 0 {
                    for j in 0..self.cols {
                        let v = f.sub(self.get(i, j), f.mul(factor, self.get(r, j)));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.clone().rref(f).len()
    }

    /// Basis of the right kernel, one vector per free column in ascending order.
    pub fn kernel(&self, f: &Field) -> Vec<Vec<Fq>> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let mut out = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(m.get(row, free));
            }
            out.push(v);
        }
        out
    }

    pub fn apply(&self, f: &Field, v: &[Fq]) -> Vec<Fq> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(0, |acc, j| f.add(acc, f.mul(self.get(i, j), v[j])))
            })
            .collect()
    }
}

/// Solution set of `A x = b`: a particular solution plus a kernel basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<Fq>,
    pub kernel: Vec<Vec<Fq>>,
}

impl AffineSolution {
    /// Number of solutions is `q^dim`.
    pub fn dim(&self) -> usize {
        self.kernel.len()
    }
}

/// Solves `A x = b`. Returns `None` when inconsistent. Free variables are
/// zero in the particular solution.
pub fn solve_affine(f: &Field, a: &FqMatrix, b: &[Fq]) -> Result<Option<AffineSolution>, FieldError> {
    if b.len() != a.rows() {
        return Err(FieldError::DimensionMismatch("right-hand side length"));
    }
    let n = a.cols();
    let mut aug = FqMatrix::zeros(a.rows(), n + 1);
    aug.put_block(0, 0, a);
    for (i, &x) in b.iter().enumerate() {
        aug.set(i, n, x);
    }
    let pivots = aug.rref(f);
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut particular = vec![0; n];
    for (row, &p) in pivots.iter().enumerate() {
        particular[p] = aug.get(row, n);
    }
    Ok(Some(AffineSolution { particular, kernel: a.kernel(f) }))
}

/// Iterates over all points of an affine solution set in lexicographic order
/// of kernel coordinates (first coordinate most significant).
pub struct AffineIter<'a> {
    field: &'a Field,
    sol: &'a AffineSolution,
    coords: Vec<Fq>,
    done: bool,
}

pub fn enumerate_affine<'a>(f: &'a Field, sol: &'a AffineSolution) -> AffineIter<'a> {
    AffineIter { field: f, sol, coords: vec![0; sol.kernel.len()], done: false }
}

impl Iterator for AffineIter<'_> {
    type Item = Vec<Fq>;
    fn next(&mut self) -> Option<Vec<Fq>> {
        if self.done {
            return None;
        }
        let f = self.field;
        let mut v = self.sol.particular.clone();
        for (c, k) in self.coords.iter().zip(&self.sol.kernel) {
            if *c != 0 {
                for (x, y) in v.iter_mut().zip(k) {
                    *x = f.add(*x, f.mul(*c, *y));
                }
            }
        }
        self.done = !odometer(&mut self.coords, f.q());
        Some(v)
    }
}

/// Advances a base-`q` counter (last digit fastest). Returns false on wrap.
pub fn odometer(digits: &mut [Fq], q: u8) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < q {
            return true;
        }
        *d = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_supported_field_builds() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let f = Field::new(q).unwrap();
            assert_eq!(f.q() as u32, q);
        }
        assert_eq!(Field::new(6).unwrap_err(), FieldError::UnsupportedField(6));
    }

    #[test]
    fn f4_generator_has_order_three() {
        let f = Field::new(4).unwrap();
        // x is index 2; x^3 = 1 in F4
        let x = 2;
        assert_eq!(f.mul(f.mul(x, x), x), 1);
        assert_eq!(f.mul(x, x), 3);
    }

    #[test]
    fn affine_enumeration_is_lexicographic() {
        let f = Field::new(3).unwrap();
        let a = FqMatrix::from_rows(&[vec![1, 1, 0]]);
        let sol = solve_affine(&f, &a, &[2]).unwrap().unwrap();
        let pts: Vec<_> = enumerate_affine(&f, &sol).collect();
        assert_eq!(pts.len(), 9);
        assert_eq!(pts[0], vec![2, 0, 0]);
        for p in &pts {
            assert_eq!(f.add(p[0], p[1]), 2);
        }
        let mut sorted = pts.clone();
        sorted.dedup();
        assert_eq!(sorted.len(), 9);
    }

    #[test]
    fn inconsistent_system() {
        let f = Field::new(2).unwrap();
        let a = FqMatrix::from_rows(&[vec![1, 1], vec![1, 1]]);
        assert_eq!(solve_affine(&f, &a, &[0, 1]).unwrap(), None);
    }
}
