//! Dense square matrices over `F_q`, row-major, entries stored as encodings.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use thiserror::Error;

use crate::ffield::poly::{self, Poly};
use crate::ffield::{Fe, Field};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("operands live over different fields")]
    MixedFields,
    #[error("matrix is singular")]
    Singular,
    #[error("bad matrix literal: {0}")]
    Parse(String),
}

#[derive(Clone)]
pub struct Matrix {
    field: Field,
    n: usize,
    e: Vec<Fe>,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.e == other.e && self.field == other.field
    }
}
impl Eq for Matrix {}

impl Hash for Matrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.e.hash(state);
    }
}

/// Orders by row-major entry encodings, the canonical key.
impl Ord for Matrix {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| self.e.cmp(&other.e))
    }
}
impl PartialOrd for Matrix {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.literal())
    }
}

/// `out = a · b` for `n × n` entry slices.
pub(crate) fn mul_into(f: &Field, n: usize, a: &[Fe], b: &[Fe], out: &mut [Fe]) {
    if f.is_prime_field() {
        let p = f.p() as u64;
        for i in 0..n {
            let row = &a[i * n..(i + 1) * n];
            for j in 0..n {
                let mut s = 0u64;
                for (k, &x) in row.iter().enumerate() {
                    s += x as u64 * b[k * n + j] as u64;
                }
                out[i * n + j] = (s % p) as Fe;
            }
        }
    } else {
        for i in 0..n {
            let row = &a[i * n..(i + 1) * n];
            for j in 0..n {
                let mut s: Fe = 0;
                for (k, &x) in row.iter().enumerate() {
                    if x != 0 {
                        s = f.add(s, f.mul(x, b[k * n + j]));
                    }
                }
                out[i * n + j] = s;
            }
        }
    }
}

impl Matrix {
    pub fn new(field: &Field, n: usize, entries: Vec<Fe>) -> Result<Matrix, MatError> {
        if entries.len() != n * n {
            return Err(MatError::DimensionMismatch(entries.len(), n * n));
        }
        if let Some(&bad) = entries.iter().find(|&&x| x as u32 >= field.q()) {
            return Err(MatError::Parse(format!("entry {bad} out of range")));
        }
        Ok(Matrix {
            field: field.clone(),
            n,
            e: entries,
        })
    }

    pub(crate) fn from_raw(field: &Field, n: usize, e: Vec<Fe>) -> Matrix {
        debug_assert_eq!(e.len(), n * n);
        Matrix {
            field: field.clone(),
            n,
            e,
        }
    }

    pub fn zero(field: &Field, n: usize) -> Matrix {
        Matrix::from_raw(field, n, vec![0; n * n])
    }

    pub fn scalar(field: &Field, n: usize, c: Fe) -> Matrix {
        let mut m = Matrix::zero(field, n);
        for i in 0..n {
            m.e[i * n + i] = c;
        }
        m
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        Matrix::scalar(field, n, 1)
    }

    pub fn diag(field: &Field, d: &[Fe]) -> Matrix {
        let n = d.len();
        let mut m = Matrix::zero(field, n);
        for (i, &x) in d.iter().enumerate() {
            m.e[i * n + i] = x;
        }
        m
    }

    /// Integer entries mapped through `Z → F_p`; convenient for matrices
    /// over the prime field such as `[[1, 0], [-3, 1]]`.
    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Matrix {
        let n = rows.len();
        let e = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), n, "matrix must be square");
                r.iter().map(|&x| field.from_int(x))
            })
            .collect();
        Matrix::from_raw(field, n, e)
    }

    /// Entries given as field encodings.
    pub fn from_encodings(field: &Field, rows: &[&[Fe]]) -> Result<Matrix, MatError> {
        let n = rows.len();
        let mut e = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(MatError::DimensionMismatch(r.len(), n));
            }
            e.extend_from_slice(r);
        }
        Matrix::new(field, n, e)
    }

    /// Parses `"1,1,0;0,1,1;0,0,1"`.
    pub fn parse(field: &Field, s: &str) -> Result<Matrix, MatError> {
        let rows: Vec<&str> = s.trim().split(';').collect();
        let n = rows.len();
        let mut e = Vec::with_capacity(n * n);
        for r in &rows {
            let vals: Vec<&str> = r.split(',').collect();
            if vals.len() != n {
                return Err(MatError::Parse(format!("row `{r}` has {} entries, expected {n}", vals.len())));
            }
            for v in vals {
                let x: u64 = v.trim().parse().map_err(|_| MatError::Parse(format!("bad entry `{v}`")))?;
                let x = field.check(x).map_err(|err| MatError::Parse(err.to_string()))?;
                e.push(x);
            }
        }
        Matrix::new(field, n, e)
    }

    pub fn literal(&self) -> String {
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn entries(&self) -> &[Fe] {
        &self.e
    }
    pub(crate) fn entries_mut(&mut self) -> &mut [Fe] {
        &mut self.e
    }
    pub fn row(&self, i: usize) -> &[Fe] {
        &self.e[i * self.n..(i + 1) * self.n]
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.e[i * self.n + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Fe) {
        self.e[i * self.n + j] = x;
    }

    fn compatible(&self, o: &Matrix) -> Result<(), MatError> {
        if self.n != o.n {
            return Err(MatError::DimensionMismatch(self.n, o.n));
        }
        if self.field != o.field {
            return Err(MatError::MixedFields);
        }
        Ok(())
    }

    pub fn try_mul(&self, o: &Matrix) -> Result<Matrix, MatError> {
        self.compatible(o)?;
        Ok(self.mul(o))
    }

    /// Unchecked product; callers guarantee matching shape and field.
    pub fn mul(&self, o: &Matrix) -> Matrix {
        debug_assert!(self.compatible(o).is_ok());
        let mut out = vec![0; self.n * self.n];
        mul_into(&self.field, self.n, &self.e, &o.e, &mut out);
        Matrix::from_raw(&self.field, self.n, out)
    }

    pub fn try_add(&self, o: &Matrix) -> Result<Matrix, MatError> {
        self.compatible(o)?;
        Ok(self.add(o))
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        let e = self.e.iter().zip(&o.e).map(|(&a, &b)| self.field.add(a, b)).collect();
        Matrix::from_raw(&self.field, self.n, e)
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        let e = self.e.iter().zip(&o.e).map(|(&a, &b)| self.field.sub(a, b)).collect();
        Matrix::from_raw(&self.field, self.n, e)
    }

    pub fn scale(&self, c: Fe) -> Matrix {
        let e = self.e.iter().map(|&a| self.field.mul(a, c)).collect();
        Matrix::from_raw(&self.field, self.n, e)
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.n;
        let e = (0..n * n).map(|k| self.e[(k % n) * n + k / n]).collect();
        Matrix::from_raw(&self.field, n, e)
    }

    pub fn is_scalar(&self) -> Option<Fe> {
        let c = self.get(0, 0);
        let n = self.n;
        (0..n * n)
            .all(|k| self.e[k] == if k / n == k % n { c } else { 0 })
            .then_some(c)
    }

    pub fn is_identity(&self) -> bool {
        self.is_scalar() == Some(1)
    }

    /// Row echelon form in place on a copy; returns (rank, determinant).
    fn eliminate(&self) -> (usize, Fe) {
        let f = &self.field;
        let n = self.n;
        let mut a = self.e.clone();
        let mut det: Fe = 1;
        let mut rank = 0;
        for col in 0..n {
            let Some(piv) = (rank..n).find(|&r| a[r * n + col] != 0) else {
                det = 0;
                continue;
            };
            if piv != rank {
                for j in 0..n {
                    a.swap(piv * n + j, rank * n + j);
                }
                det = f.neg(det);
            }
            let pv = a[rank * n + col];
            det = f.mul(det, pv);
            let pinv = f.inv(pv).expect("pivot nonzero");
            for r in rank + 1..n {
                let factor = f.mul(a[r * n + col], pinv);
                if factor == 0 {
                    continue;
                }
                for j in col..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[rank * n + j]));
                }
            }
            rank += 1;
        }
        (rank, det)
    }

    pub fn det(&self) -> Fe {
        self.eliminate().1
    }

    pub fn rank(&self) -> usize {
        self.eliminate().0
    }

    pub fn inverse(&self) -> Result<Matrix, MatError> {
        let f = &self.field;
        let n = self.n;
        let mut a = self.e.clone();
        let mut inv = Matrix::identity(f, n).e;
        for col in 0..n {
            let piv = (col..n).find(|&r| a[r * n + col] != 0).ok_or(MatError::Singular)?;
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                    inv.swap(piv * n + j, col * n + j);
                }
            }
            let pinv = f.inv(a[col * n + col]).expect("pivot nonzero");
            for j in 0..n {
                a[col * n + j] = f.mul(a[col * n + j], pinv);
                inv[col * n + j] = f.mul(inv[col * n + j], pinv);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a[r * n + col];
                if factor == 0 {
                    continue;
                }
                for j in 0..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[col * n + j]));
                    inv[r * n + j] = f.sub(inv[r * n + j], f.mul(factor, inv[col * n + j]));
                }
            }
        }
        Ok(Matrix::from_raw(f, n, inv))
    }

    pub fn pow(&self, mut k: u128) -> Matrix {
        let mut result = Matrix::identity(&self.field, self.n);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Signed power; negative exponents need an invertible matrix.
    pub fn powi(&self, k: i64) -> Result<Matrix, MatError> {
        if k >= 0 {
            Ok(self.pow(k as u128))
        } else {
            Ok(self.inverse()?.pow(k.unsigned_abs() as u128))
        }
    }

    /// Monic characteristic polynomial `det(X·Id − A)`, via reduction to
    /// upper Hessenberg form followed by the standard recurrence.
    pub fn char_poly(&self) -> Poly {
        let f = &self.field;
        let n = self.n;
        let mut h = self.e.clone();
        let at = |i: usize, j: usize| i * n + j;
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| h[at(i, m - 1)] != 0) else {
                continue;
            };
            if i != m {
                for j in 0..n {
                    h.swap(at(i, j), at(m, j));
                }
                for r in 0..n {
                    h.swap(at(r, i), at(r, m));
                }
            }
            let pinv = f.inv(h[at(m, m - 1)]).expect("pivot nonzero");
            for j in m + 1..n {
                let u = f.mul(h[at(j, m - 1)], pinv);
                if u == 0 {
                    continue;
                }
                for c in 0..n {
                    h[at(j, c)] = f.sub(h[at(j, c)], f.mul(u, h[at(m, c)]));
                }
                for r in 0..n {
                    h[at(r, m)] = f.add(h[at(r, m)], f.mul(u, h[at(r, j)]));
                }
            }
        }
        // p[k] is the char poly of the leading k×k block.
        let mut p: Vec<Poly> = vec![vec![1]];
        for m in 0..n {
            let mut next = poly::mul(f, &[f.neg(h[at(m, m)]), 1], &p[m]);
            let mut t: Fe = 1;
            for i in (0..m).rev() {
                t = f.mul(t, h[at(i + 1, i)]);
                let coef = f.mul(h[at(i, m)], t);
                next = poly::sub(f, &next, &poly::scale(f, &p[i], coef));
            }
            p.push(next);
        }
        p.pop().expect("nonempty")
    }

    /// Companion matrix of a monic polynomial: ones on the subdiagonal and
    /// the negated lower coefficients in the last column.
    pub fn companion(field: &Field, f: &[Fe]) -> Matrix {
        let d = poly::degree(f).expect("nonzero polynomial");
        let mut m = Matrix::zero(field, d);
        for i in 1..d {
            m.set(i, i - 1, 1);
        }
        for i in 0..d {
            m.set(i, d - 1, field.neg(f[i]));
        }
        m
    }

    pub fn block_diag(blocks: &[Matrix]) -> Matrix {
        let field = blocks[0].field.clone();
        let n: usize = blocks.iter().map(|b| b.n).sum();
        let mut m = Matrix::zero(&field, n);
        let mut off = 0;
        for b in blocks {
            m.put_block(off, off, b);
            off += b.n;
        }
        m
    }

    /// Square matrix assembled from a square grid of equally sized blocks.
    pub fn from_blocks(grid: &[Vec<Matrix>]) -> Matrix {
        let k = grid.len();
        let b = grid[0][0].n;
        let field = grid[0][0].field.clone();
        let mut m = Matrix::zero(&field, k * b);
        for (i, row) in grid.iter().enumerate() {
            for (j, blk) in row.iter().enumerate() {
                m.put_block(i * b, j * b, blk);
            }
        }
        m
    }

    pub fn put_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.n {
            for j in 0..b.n {
                self.set(r0 + i, c0 + j, b.get(i, j));
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, size: usize) -> Matrix {
        let mut m = Matrix::zero(&self.field, size);
        for i in 0..size {
            for j in 0..size {
                m.set(i, j, self.get(r0 + i, c0 + j));
            }
        }
        m
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == 0))
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        self.is_upper_triangular() && (0..self.n).all(|i| self.get(i, i) == 1)
    }

    pub fn superdiagonal(&self) -> Vec<Fe> {
        (0..self.n.saturating_sub(1)).map(|i| self.get(i, i + 1)).collect()
    }

    /// `T M T⁻¹` for the transvection `T = Id + α e_{ij}`, in place.
    pub(crate) fn conj_transvection(&mut self, i: usize, j: usize, alpha: Fe) {
        let f = self.field.clone();
        let n = self.n;
        for c in 0..n {
            let v = f.add(self.e[i * n + c], f.mul(alpha, self.e[j * n + c]));
            self.e[i * n + c] = v;
        }
        for r in 0..n {
            let v = f.sub(self.e[r * n + j], f.mul(alpha, self.e[r * n + i]));
            self.e[r * n + j] = v;
        }
    }

    /// `D M D⁻¹` for `D = diag(g, 1, …, 1)`, in place.
    pub(crate) fn conj_first_diagonal(&mut self, g: Fe, ginv: Fe) {
        let f = self.field.clone();
        let n = self.n;
        for c in 0..n {
            self.e[c] = f.mul(g, self.e[c]);
        }
        for r in 0..n {
            self.e[r * n] = f.mul(self.e[r * n], ginv);
        }
    }

    /// Entries of a matrix over the prime field embedded into `target`,
    /// which must have the same characteristic.
    pub fn embed_prime_field(&self, target: &Field) -> Result<Matrix, MatError> {
        if target.p() != self.field.p() || self.e.iter().any(|&x| x as u32 >= self.field.p()) {
            return Err(MatError::MixedFields);
        }
        Ok(Matrix::from_raw(target, self.n, self.e.clone()))
    }
}
