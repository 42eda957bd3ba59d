//! Semisimple elements given by irreducible companion blocks: centralizer
//! shapes, the set `I(q)`, and intertwiners `Y S Y⁻¹ = c S`.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::matrix::Matrix;
use super::GroupError;
use crate::ffield::poly::{self, Poly};
use crate::ffield::{Fe, Field};

/// Factors `(h, Λ)` of `C_GL(x_s) ≅ ∏ GL_h(q^Λ)`, in order of first occurrence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralizerShape {
    pub factors: Vec<(usize, usize)>,
}

fn gl_order(q: &BigUint, h: usize) -> BigUint {
    let qh = q.pow(h as u32);
    (0..h).fold(BigUint::from(1u32), |acc, i| acc * (&qh - q.pow(i as u32)))
}

impl CentralizerShape {
    pub fn n(&self) -> usize {
        self.factors.iter().map(|&(h, l)| h * l).sum()
    }

    /// `∏ |GL_h(q^Λ)|`.
    pub fn gl_centralizer_order(&self, q: u32) -> BigUint {
        self.factors
            .iter()
            .map(|&(h, l)| gl_order(&BigUint::from(q).pow(l as u32), h))
            .product()
    }
}

fn check_irreducible(f: &Field, p: &[Fe]) -> Result<usize, GroupError> {
    let deg = poly::degree(p).ok_or(GroupError::Reducible)?;
    if deg == 0 || p[deg] != 1 {
        return Err(GroupError::Shape("block polynomial must be monic of positive degree".into()));
    }
    if !poly::is_irreducible(f, p) {
        return Err(GroupError::Reducible);
    }
    Ok(deg)
}

/// Groups equal polynomials; `blocks` lists `(char poly, multiplicity)`.
/// With `det_one`, the product of block determinants must be 1.
pub fn semisimple_centralizer_shape(
    f: &Field,
    n: usize,
    blocks: &[(Poly, usize)],
    det_one: bool,
) -> Result<CentralizerShape, GroupError> {
    let mut grouped: Vec<(Poly, usize, usize)> = Vec::new();
    let mut total = 0;
    for (p, mult) in blocks {
        let p = poly::trim(p.clone());
        let deg = check_irreducible(f, &p)?;
        total += deg * mult;
        match grouped.iter_mut().find(|g| g.0 == p) {
            Some(g) => g.1 += mult,
            None => grouped.push((p, *mult, deg)),
        }
    }
    if total != n {
        return Err(GroupError::Shape(format!("block degrees sum to {total}, expected {n}")));
    }
    if det_one && semisimple_matrix(f, blocks).det() != 1 {
        return Err(GroupError::NotInGroup("block determinants multiply to a value other than 1".into()));
    }
    Ok(CentralizerShape {
        factors: grouped.into_iter().filter(|g| g.1 > 0).map(|(_, h, l)| (h, l)).collect(),
    })
}

/// Block-diagonal matrix of companion blocks, each repeated by multiplicity.
pub fn semisimple_matrix(f: &Field, blocks: &[(Poly, usize)]) -> Matrix {
    let mut mats = Vec::new();
    for (p, mult) in blocks {
        let c = Matrix::companion(f, &poly::trim(p.clone()));
        mats.extend(std::iter::repeat_n(c, *mult));
    }
    Matrix::block_diag(&mats)
}

/// `Some(c)` when `X^{q−1} ≡ c mod F` with `c ≠ 1` and `c^{deg F} = 1`.
pub fn in_i_q(f: &Field, p: &[Fe]) -> Result<Option<Fe>, GroupError> {
    let p = poly::trim(p.to_vec());
    let deg = check_irreducible(f, &p)?;
    let r = poly::powmod(f, &poly::x_power(1), f.q() as u128 - 1, &p);
    let r = poly::trim(r);
    if r.len() > 1 {
        return Ok(None);
    }
    let c = r.first().copied().unwrap_or(0);
    Ok((c != 0 && c != 1 && f.pow(c, deg as u128) == 1).then_some(c))
}

/// Basis of the solution space of `rows · v = 0`.
pub(crate) fn nullspace(f: &Field, mut rows: Vec<Vec<Fe>>, ncols: usize) -> Vec<Vec<Fe>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = f.inv(rows[r][c]).expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let k = rows[i][c];
                for j in 0..ncols {
                    rows[i][j] = f.sub(rows[i][j], f.mul(k, rows[r][j]));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0; ncols];
            v[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(rows[i][fc]);
            }
            v
        })
        .collect()
}

/// A determinant-one `Y` with `Y S = c S Y`.
///
/// For irreducible `S` the solutions form a coset `Y₀ · F_q[S]`, so every
/// nonzero solution is invertible; the determinant is then corrected by a
/// polynomial in `S`, whose determinants cover `F_q^×`.
pub fn solve_intertwiner(s: &Matrix, c: Fe) -> Result<Matrix, GroupError> {
    let f = s.field().clone();
    let n = s.n();
    if c == 0 {
        return Err(GroupError::Shape("scalar c must be nonzero".into()));
    }
    if !poly::is_irreducible(&f, &s.char_poly()) {
        return Err(GroupError::Reducible);
    }
    // Unknown Y[i][k] sits at column i*n + k.
    let cs = s.scale(c);
    let mut rows = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut row = vec![0; n * n];
            for k in 0..n {
                // (Y S)_{ij} = Σ_k Y_ik S_kj
                let v = &mut row[i * n + k];
                *v = f.add(*v, s.get(k, j));
                // (c S Y)_{ij} = Σ_k cS_ik Y_kj
                let w = &mut row[k * n + j];
                *w = f.sub(*w, cs.get(i, k));
            }
            rows.push(row);
        }
    }
    let basis = nullspace(&f, rows, n * n);
    let y0 = basis
        .iter()
        .map(|v| Matrix::new(&f, n, v.clone()).expect("entries in range"))
        .find(|m| m.det() != 0)
        .ok_or_else(|| GroupError::NoSolution(format!("S is not conjugate to {c}·S")))?;
    let target = f.inv(y0.det()).expect("invertible");
    let powers: Vec<Matrix> = (0..n).map(|k| s.pow(k as u128)).collect();
    let q = f.q() as u64;
    let total = q.pow(n as u32);
    for code in 1..total {
        let mut z = Matrix::zero(&f, n);
        let mut rest = code;
        for pk in &powers {
            let coeff = (rest % q) as Fe;
            rest /= q;
            if coeff != 0 {
                z = z.add(&pk.scale(coeff));
            }
        }
        if z.det() == target {
            let y = y0.mul(&z);
            if y.mul(s) != cs.mul(&y) || y.det() != 1 {
                return Err(GroupError::Verification("intertwiner fails Y S = c S Y".into()));
            }
            return Ok(y);
        }
    }
    Err(GroupError::Verification("no commutant element has the required determinant".into()))
}
