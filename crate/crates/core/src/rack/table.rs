use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::Rack;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("table has {rows} rows of length {cols:?}, expected size {size}")]
    Shape { size: usize, rows: usize, cols: Vec<usize> },
    #[error("entry {value} at ({i}, {j}) is out of range")]
    OutOfRange { i: usize, j: usize, value: usize },
    #[error("left translation by {0} is not a bijection")]
    NotBijective(usize),
    #[error("affine racks need n ≥ 3, got {0}")]
    TooSmall(usize),
}

/// Serialized form: `table[i][j]` is the index of `x_i ▷ x_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RackTable {
    pub size: usize,
    pub table: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct TableRack {
    n: usize,
    fwd: Vec<u32>,
    inv: Vec<u32>,
    src: RackTable,
}

impl TableRack {
    fn shape_ok(t: &RackTable) -> Result<(), TableError> {
        if t.table.len() != t.size || t.table.iter().any(|r| r.len() != t.size) {
            return Err(TableError::Shape {
                size: t.size,
                rows: t.table.len(),
                cols: t.table.iter().map(Vec::len).collect(),
            });
        }
        for (i, row) in t.table.iter().enumerate() {
            if let Some((j, &v)) = row.iter().enumerate().find(|(_, &v)| v >= t.size) {
                return Err(TableError::OutOfRange { i, j, value: v });
            }
        }
        Ok(())
    }

    /// Requires each row to be a permutation; the other axioms are left to
    /// [`super::rack_verify`].
    pub fn from_table(t: RackTable) -> Result<TableRack, TableError> {
        Self::shape_ok(&t)?;
        for (i, row) in t.table.iter().enumerate() {
            let mut seen = vec![false; t.size];
            for &v in row {
                if std::mem::replace(&mut seen[v], true) {
                    return Err(TableError::NotBijective(i));
                }
            }
        }
        Ok(Self::build(t))
    }

    /// Accepts any in-range square table, for negative controls.
    pub fn from_table_unchecked(t: RackTable) -> TableRack {
        Self::shape_ok(&t).expect("square in-range table");
        Self::build(t)
    }

    fn build(t: RackTable) -> TableRack {
        let n = t.size;
        let mut fwd = vec![0u32; n * n];
        let mut inv = vec![0u32; n * n];
        for (i, row) in t.table.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                fwd[i * n + j] = v as u32;
                inv[i * n + v] = j as u32;
            }
        }
        TableRack { n, fwd, inv, src: t }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<TableRack, TableError> {
        let table = (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect();
        Self::from_table(RackTable { size: n, table })
    }

    pub fn table(&self) -> &RackTable {
        &self.src
    }
}

impl Rack for TableRack {
    fn len(&self) -> usize {
        self.n
    }
    #[inline]
    fn op(&self, i: usize, j: usize) -> usize {
        self.fwd[i * self.n + j] as usize
    }
    #[inline]
    fn op_inv(&self, i: usize, j: usize) -> usize {
        self.inv[i * self.n + j] as usize
    }
}

/// `(Z_n, i ▷ j = 2i − j)`.
pub fn affine_rack(n: usize) -> Result<TableRack, TableError> {
    if n < 3 {
        return Err(TableError::TooSmall(n));
    }
    TableRack::from_fn(n, |i, j| (2 * i + n - j) % n)
}

/// `x ▷ y = y` on `k` points.
pub fn trivial_rack(k: usize) -> TableRack {
    TableRack::from_fn(k, |_, j| j).expect("identity rows")
}

/// Two copies of `X`; `(x, i) ▷ (y, j) = (x ▷ y, j)`. Copy `c` occupies
/// indices `c·|X| ..`.
pub fn doubled_rack<R: Rack>(x: &R) -> TableRack {
    let n = x.len();
    TableRack::from_fn(2 * n, |a, b| (b / n) * n + x.op(a % n, b % n)).expect("rows are permutations")
}

/// Componentwise operation; `(i, j)` sits at index `i·|Y| + j`.
pub fn product_rack<A: Rack, B: Rack>(x: &A, y: &B) -> TableRack {
    let m = y.len();
    TableRack::from_fn(x.len() * m, |a, b| x.op(a / m, b / m) * m + y.op(a % m, b % m))
        .expect("rows are permutations")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let d3 = affine_rack(3).unwrap();
        let s = serde_json::to_string(d3.table()).unwrap();
        assert_eq!(s, r#"{"size":3,"table":[[0,2,1],[2,1,0],[1,0,2]]}"#);
        let back: RackTable = serde_json::from_str(&s).unwrap();
        assert_eq!(&back, d3.table());
    }

    #[test]
    fn malformed_tables() {
        let t = RackTable { size: 2, table: vec![vec![0, 0], vec![1, 0]] };
        assert_eq!(TableRack::from_table(t).unwrap_err(), TableError::NotBijective(0));
        let t = RackTable { size: 2, table: vec![vec![0, 2], vec![1, 0]] };
        assert!(matches!(TableRack::from_table(t), Err(TableError::OutOfRange { .. })));
        let t = RackTable { size: 2, table: vec![vec![0, 1]] };
        assert!(matches!(TableRack::from_table(t), Err(TableError::Shape { .. })));
    }

    #[test]
    fn doubled_copies_are_separate() {
        let d5 = affine_rack(5).unwrap();
        let d2 = doubled_rack(&d5);
        for i in 0..10 {
            for j in 0..10 {
                assert_eq!(d2.op(i, j) / 5, j / 5);
                assert_eq!(d2.op(i, j) % 5, d5.op(i % 5, j % 5));
            }
        }
    }
}
