//! Group contexts `GL_n(q)`, `SL_n(q)`, `PSL_n(q)`.
//!
//! Elements are [`Matrix`] values. In PSL a matrix stands for its coset
//! `{λM : λⁿ = 1}` and is always stored as the coset member with the
//! smallest row-major encoding.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::matrix::{MatError, Matrix};
use super::GroupError;
use crate::ffield::{gcd, prime_factors, Fe, Field};
use crate::group::{lcm, Group};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    GL,
    SL,
    PSL,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::GL => "GL",
            Family::SL => "SL",
            Family::PSL => "PSL",
        })
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "gl" => Ok(Family::GL),
            "sl" => Ok(Family::SL),
            "psl" => Ok(Family::PSL),
            other => Err(format!("unknown family `{other}`")),
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Gen {
    Transvection { i: usize, j: usize, alpha: Fe },
    FirstDiagonal { g: Fe, ginv: Fe },
}

#[derive(Clone)]
pub struct GroupCtx {
    family: Family,
    n: usize,
    field: Field,
    center: Vec<Fe>,
    gens: Vec<Matrix>,
    kinds: Vec<Gen>,
    exponent: u128,
    exponent_primes: Vec<u128>,
}

impl fmt::Debug for GroupCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}({})", self.family, self.n, self.field.q())
    }
}

impl GroupCtx {
    pub fn new(family: Family, n: usize, field: &Field) -> Result<GroupCtx, GroupError> {
        if n == 0 {
            return Err(GroupError::Shape("dimension must be positive".into()));
        }
        let center = if family == Family::PSL {
            field.nonzero().filter(|&l| field.pow(l, n as u128) == 1).collect()
        } else {
            vec![1]
        };
        let mut gens = Vec::new();
        let mut kinds = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                for alpha in field.basis() {
                    let mut m = Matrix::identity(field, n);
                    m.set(i, j, alpha);
                    gens.push(m);
                    kinds.push(Gen::Transvection { i, j, alpha });
                }
            }
        }
        if family == Family::GL && field.q() > 2 {
            let g = field.primitive();
            let mut d = vec![1; n];
            d[0] = g;
            gens.push(Matrix::diag(field, &d));
            kinds.push(Gen::FirstDiagonal {
                g,
                ginv: field.inv(g).expect("nonzero"),
            });
        }
        let (exponent, exponent_primes) = exponent_data(field, n)?;
        Ok(GroupCtx {
            family,
            n,
            field: field.clone(),
            center,
            gens,
            kinds,
            exponent,
            exponent_primes,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn q(&self) -> u32 {
        self.field.q()
    }
    /// Scalars `λ` with `λⁿ = 1` (PSL only; `[1]` otherwise).
    pub fn center_scalars(&self) -> &[Fe] {
        &self.center
    }
    /// `gcd(n, q − 1)`.
    pub fn d(&self) -> usize {
        gcd(self.n as u64, self.q() as u64 - 1) as usize
    }

    pub fn with_family(&self, family: Family) -> GroupCtx {
        GroupCtx::new(family, self.n, &self.field).expect("same shape as an existing context")
    }

    /// Coset representative with the smallest encoding. Only the first
    /// nonzero entry decides, since scaling by distinct λ separates it.
    pub fn canonicalize(&self, mut m: Matrix) -> Matrix {
        if self.center.len() <= 1 {
            return m;
        }
        let f = &self.field;
        let Some(&lead) = m.entries().iter().find(|&&x| x != 0) else {
            return m;
        };
        let best = *self
            .center
            .iter()
            .min_by_key(|&&l| f.mul(l, lead))
            .expect("center nonempty");
        if best != 1 {
            for x in m.entries_mut() {
                *x = f.mul(*x, best);
            }
        }
        m
    }

    /// Validates membership and returns the canonical element.
    pub fn element(&self, m: Matrix) -> Result<Matrix, GroupError> {
        if m.n() != self.n {
            return Err(MatError::DimensionMismatch(m.n(), self.n).into());
        }
        if *m.field() != self.field {
            return Err(GroupError::MixedContexts);
        }
        let det = m.det();
        match self.family {
            Family::GL if det == 0 => Err(GroupError::NotInGroup("singular matrix".into())),
            Family::SL | Family::PSL if det != 1 => {
                Err(GroupError::NotInGroup(format!("determinant {det} is not 1")))
            }
            _ => Ok(self.canonicalize(m)),
        }
    }

    pub fn parse_element(&self, s: &str) -> Result<Matrix, GroupError> {
        self.element(Matrix::parse(&self.field, s)?)
    }

    pub fn multiply(&self, a: &Matrix, b: &Matrix) -> Result<Matrix, GroupError> {
        self.same(a)?;
        self.same(b)?;
        Ok(self.mul(a, b))
    }

    /// Checked conjugation `g x g⁻¹`.
    pub fn conjugate(&self, g: &Matrix, x: &Matrix) -> Result<Matrix, GroupError> {
        self.same(g)?;
        self.same(x)?;
        Ok(self.conj(g, x))
    }

    fn same(&self, m: &Matrix) -> Result<(), GroupError> {
        if m.n() != self.n || *m.field() != self.field {
            Err(GroupError::MixedContexts)
        } else {
            Ok(())
        }
    }

    /// Equality of two matrices as elements of this group.
    pub fn equal(&self, a: &Matrix, b: &Matrix) -> bool {
        self.canonicalize(a.clone()) == self.canonicalize(b.clone())
    }

    pub fn group_order(&self) -> BigUint {
        let q = BigUint::from(self.q());
        let qn = q.pow(self.n as u32);
        let mut gl = BigUint::from(1u32);
        for i in 0..self.n {
            gl *= &qn - q.pow(i as u32);
        }
        match self.family {
            Family::GL => gl,
            Family::SL => gl / (self.q() - 1),
            Family::PSL => gl / (self.q() - 1) / self.d(),
        }
    }

    /// Prime factors of [`Group::exponent_bound`].
    pub fn exponent_primes(&self) -> &[u128] {
        &self.exponent_primes
    }
}

/// `p^a · lcm_{d ≤ n}(q^d − 1)` with `p^a ≥ n` minimal: a multiple of every
/// element order in `GL_n(q)`.
fn exponent_data(field: &Field, n: usize) -> Result<(u128, Vec<u128>), GroupError> {
    let p = field.p() as u128;
    let q = field.q() as u128;
    let mut pa = 1u128;
    while pa < n as u128 {
        pa *= p;
    }
    let mut e = pa;
    let mut primes = vec![p];
    let mut qd = 1u128;
    for _ in 1..=n {
        qd = qd.checked_mul(q).ok_or_else(|| GroupError::Shape("element orders overflow".into()))?;
        e = lcm(e, qd - 1);
        if e > u128::MAX / q.max(2) {
            return Err(GroupError::Shape("element orders overflow".into()));
        }
        primes.extend(prime_factors(qd - 1));
    }
    primes.sort_unstable();
    primes.dedup();
    Ok((e, primes))
}

impl Group for GroupCtx {
    type Elem = Matrix;

    fn identity(&self) -> Matrix {
        Matrix::identity(&self.field, self.n)
    }
    fn mul(&self, a: &Matrix, b: &Matrix) -> Matrix {
        self.canonicalize(a.mul(b))
    }
    fn inv(&self, a: &Matrix) -> Matrix {
        self.canonicalize(a.inverse().expect("group elements are invertible"))
    }
    fn generators(&self) -> &[Matrix] {
        &self.gens
    }
    fn exponent_bound(&self) -> u128 {
        self.exponent
    }
    fn render(&self, x: &Matrix) -> String {
        x.literal()
    }
    fn parse(&self, s: &str) -> Result<Matrix, String> {
        self.parse_element(s).map_err(|e| e.to_string())
    }
    fn conj_gen(&self, k: usize, x: &Matrix) -> Matrix {
        let mut y = x.clone();
        match self.kinds[k] {
            Gen::Transvection { i, j, alpha } => y.conj_transvection(i, j, alpha),
            Gen::FirstDiagonal { g, ginv } => y.conj_first_diagonal(g, ginv),
        }
        self.canonicalize(y)
    }
    fn is_identity(&self, x: &Matrix) -> bool {
        match x.is_scalar() {
            Some(c) => self.family == Family::PSL && self.center.contains(&c) || c == 1,
            None => false,
        }
    }
    fn order_of(&self, x: &Matrix) -> u128 {
        let mut e = self.exponent;
        for &l in &self.exponent_primes {
            while e.is_multiple_of(l) && self.is_identity(&self.pow(x, e / l)) {
                e /= l;
            }
        }
        e
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::make_field;

    fn enumerate_det_one(f: &Field, n: usize) -> usize {
        let q = f.q() as usize;
        let total = q.pow((n * n) as u32);
        (0..total)
            .filter(|&k| {
                let e = (0..n * n).map(|i| ((k / q.pow(i as u32)) % q) as Fe).collect();
                Matrix::new(f, n, e).unwrap().det() == 1
            })
            .count()
    }

    #[test]
    fn orders_against_enumeration() {
        let f3 = make_field(3, 1).unwrap();
        assert_eq!(enumerate_det_one(&f3, 2), 24);
        assert_eq!(GroupCtx::new(Family::SL, 2, &f3).unwrap().group_order(), 24u32.into());
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(enumerate_det_one(&f2, 3), 168);
        assert_eq!(GroupCtx::new(Family::SL, 3, &f2).unwrap().group_order(), 168u32.into());
        let f7 = make_field(7, 1).unwrap();
        let sl27 = enumerate_det_one(&f7, 2);
        assert_eq!(sl27, 336);
        assert_eq!(
            GroupCtx::new(Family::PSL, 2, &f7).unwrap().group_order(),
            BigUint::from(sl27 as u32 / 2)
        );
    }

    #[test]
    fn psl_canonical_form_is_coset_invariant() {
        for (p, m, n) in [(7, 1, 2), (2, 2, 3), (7, 1, 3), (5, 1, 2), (3, 1, 2)] {
            let f = make_field(p, m).unwrap();
            let ctx = GroupCtx::new(Family::PSL, n, &f).unwrap();
            let sl = ctx.with_family(Family::SL);
            // SL_3(7) has 5.6 million elements; sample matrices there instead.
            let elems = if (p, n) == (7, 3) {
                let mut state = 0x9e37_79b9_u64;
                (0..20_000)
                    .map(|_| {
                        let e = (0..9)
                            .map(|_| {
                                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                                ((state >> 33) % 7) as Fe
                            })
                            .collect();
                        Matrix::new(&f, 3, e).unwrap()
                    })
                    .collect()
            } else {
                crate::matgrp::orbit::subgroup_closure(&sl, sl.generators(), 1_000_000).unwrap()
            };
            for x in &elems {
                let c = ctx.canonicalize(x.clone());
                let coset: Vec<Matrix> = ctx.center_scalars().iter().map(|&l| x.scale(l)).collect();
                assert_eq!(&c, coset.iter().min().unwrap());
                for y in &coset {
                    assert_eq!(ctx.canonicalize(y.clone()), c);
                }
            }
        }
    }

    #[test]
    fn element_validation() {
        let f = make_field(5, 1).unwrap();
        let sl = GroupCtx::new(Family::SL, 2, &f).unwrap();
        assert!(matches!(
            sl.element(Matrix::diag(&f, &[2, 1])),
            Err(GroupError::NotInGroup(_))
        ));
        let gl = sl.with_family(Family::GL);
        assert!(gl.element(Matrix::diag(&f, &[2, 1])).is_ok());
        let other = GroupCtx::new(Family::SL, 2, &make_field(7, 1).unwrap()).unwrap();
        assert_eq!(
            sl.conjugate(&other.identity(), &sl.identity()).unwrap_err(),
            GroupError::MixedContexts
        );
    }

    #[test]
    fn conjugating_an_upper_unipotent_by_the_rotation() {
        let f = make_field(7, 1).unwrap();
        let sl = GroupCtx::new(Family::SL, 2, &f).unwrap();
        let w = Matrix::from_ints(&f, &[&[0, 1], &[-1, 0]]);
        for x in 0..7 {
            let u = Matrix::from_ints(&f, &[&[1, x], &[0, 1]]);
            assert_eq!(sl.conjugate(&w, &u).unwrap(), Matrix::from_ints(&f, &[&[1, 0], &[-x, 1]]));
        }
    }

    #[test]
    fn element_orders() {
        let f = make_field(7, 1).unwrap();
        let psl = GroupCtx::new(Family::PSL, 2, &f).unwrap();
        let sl = psl.with_family(Family::SL);
        let minus = Matrix::scalar(&f, 2, 6);
        assert_eq!(sl.order_of(&minus), 2);
        assert_eq!(psl.order_of(&minus), 1);
        let u = Matrix::from_ints(&f, &[&[1, 1], &[0, 1]]);
        assert_eq!(sl.order_of(&u), 7);
        let w = Matrix::from_ints(&f, &[&[0, 1], &[-1, 0]]);
        assert_eq!(sl.order_of(&w), 4);
        assert_eq!(psl.order_of(&w), 2);
    }
}
