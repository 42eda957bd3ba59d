use std::sync::OnceLock;

use super::Rack;

/// Wraps a rack and stores each left translation `φ_i` (and its inverse)
/// the first time it is used. Memory grows with the number of distinct
/// left factors touched.
pub struct MemoRack<'a, R: Rack + ?Sized> {
    inner: &'a R,
    fwd: Vec<OnceLock<Box<[u32]>>>,
    inv: Vec<OnceLock<Box<[u32]>>>,
}

impl<'a, R: Rack + ?Sized> MemoRack<'a, R> {
    pub fn new(inner: &'a R) -> Self {
        let n = inner.len();
        MemoRack {
            inner,
            fwd: (0..n).map(|_| OnceLock::new()).collect(),
            inv: (0..n).map(|_| OnceLock::new()).collect(),
        }
    }

    fn row(&self, i: usize) -> &[u32] {
        self.fwd[i].get_or_init(|| (0..self.inner.len()).map(|j| self.inner.op(i, j) as u32).collect())
    }

    fn inv_row(&self, i: usize) -> &[u32] {
        self.inv[i].get_or_init(|| {
            let row = self.row(i);
            let mut out = vec![0u32; row.len()].into_boxed_slice();
            for (j, &v) in row.iter().enumerate() {
                out[v as usize] = j as u32;
            }
            out
        })
    }
}

impl<R: Rack + ?Sized> Rack for MemoRack<'_, R> {
    fn len(&self) -> usize {
        self.inner.len()
    }
    fn op(&self, i: usize, j: usize) -> usize {
        self.row(i)[j] as usize
    }
    fn op_inv(&self, i: usize, j: usize) -> usize {
        self.inv_row(i)[j] as usize
    }
    fn label(&self, i: usize) -> String {
        self.inner.label(i)
    }
    fn commute(&self, i: usize, j: usize) -> bool {
        self.row(i)[j] as usize == j
    }
    fn d_inequality(&self, r: usize, s: usize) -> bool {
        self.inner.d_inequality(r, s)
    }
}
