//! Unipotent elements: Jordan types, the upper unitriangular family `r_a`,
//! and the parametrisation of regular unipotent classes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::ctx::GroupCtx;
use super::matrix::Matrix;
use super::GroupError;
use crate::ffield::{gcd, Fe, Field};

/// Weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Partition, GroupError> {
        if parts.contains(&0) || parts.is_empty() {
            return Err(GroupError::Shape("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }
    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }
    pub fn largest(&self) -> usize {
        self.0[0]
    }
    pub fn is_regular(&self) -> bool {
        self.0.len() == 1
    }
    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&x| x == 1)
    }

    /// All partitions of `n`, in decreasing lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for k in (1..=rest.min(max)).rev() {
                cur.push(k);
                rec(rest - k, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = GroupError;
    fn try_from(v: Vec<usize>) -> Result<Self, GroupError> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = GroupError;
    fn from_str(s: &str) -> Result<Self, GroupError> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Result<Vec<usize>, _> = body.split(',').map(|x| x.trim().parse::<usize>()).collect();
        Partition::new(parts.map_err(|_| GroupError::Shape(format!("bad partition `{s}`")))?)
    }
}

/// Upper unitriangular matrix with superdiagonal `a`.
pub fn r_vec(field: &Field, a: &[Fe]) -> Matrix {
    let n = a.len() + 1;
    let mut m = Matrix::identity(field, n);
    for (i, &x) in a.iter().enumerate() {
        m.set(i, i + 1, x);
    }
    m
}

/// `r_a` for a scalar label: superdiagonal `(a, 1, …, 1)`.
pub fn r_scalar(field: &Field, n: usize, a: Fe) -> Matrix {
    let mut sup = vec![1; n - 1];
    if n > 1 {
        sup[0] = a;
    }
    r_vec(field, &sup)
}

/// Membership in the strip `R_a`: upper unitriangular with superdiagonal `a`.
pub fn in_strip(m: &Matrix, a: &[Fe]) -> bool {
    m.is_upper_unitriangular() && m.superdiagonal() == a
}

/// Block-diagonal representative with one superdiagonal-ones Jordan block
/// per part.
pub fn unipotent_representative(field: &Field, lambda: &Partition) -> Matrix {
    let blocks: Vec<Matrix> = lambda.parts().iter().map(|&k| r_scalar(field, k, 1)).collect();
    Matrix::block_diag(&blocks)
}

pub fn is_unipotent(x: &Matrix) -> bool {
    let n = x.n();
    let nil = x.sub(&Matrix::identity(x.field(), n));
    nil.pow(n as u128).entries().iter().all(|&v| v == 0)
}

/// Jordan partition from the ranks of `(u − Id)^k`: the number of parts of
/// size at least `k` is `rank_{k−1} − rank_k`.
pub fn unipotent_type(u: &Matrix) -> Result<Partition, GroupError> {
    if !is_unipotent(u) {
        return Err(GroupError::NotUnipotent);
    }
    let n = u.n();
    let nil = u.sub(&Matrix::identity(u.field(), n));
    let mut ranks = vec![n];
    let mut power = Matrix::identity(u.field(), n);
    while *ranks.last().expect("nonempty") > 0 {
        power = power.mul(&nil);
        ranks.push(power.rank());
    }
    // at_least[k-1] = number of parts ≥ k
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = Vec::new();
    for k in 1..=at_least.len() {
        let exactly = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
        parts.extend(std::iter::repeat_n(k, exactly));
    }
    Partition::new(parts)
}

/// `θ^k_{a,b} = a_k b_{k+1} − a_{k+1} b_k`, 1-based `k ≤ n − 2`.
pub fn theta(f: &Field, a: &[Fe], b: &[Fe], k: usize) -> Fe {
    let (i, j) = (k - 1, k);
    f.sub(f.mul(a[i], b[j]), f.mul(a[j], b[i]))
}

/// `γ^k_{a,b} = 2 a_k b_{k+1} + (a_k + b_k)(a_{k+1} + b_{k+1})`.
pub fn gamma(f: &Field, a: &[Fe], b: &[Fe], k: usize) -> Fe {
    let (i, j) = (k - 1, k);
    let two = f.from_int(2);
    f.add(
        f.mul(two, f.mul(a[i], b[j])),
        f.mul(f.add(a[i], b[i]), f.add(a[j], b[j])),
    )
}

/// `ν^k_{a,b} = a_k b_{k+1}(a_{k+2} + b_{k+2}) + a_{k+1} b_{k+2}(a_k + b_k)`, `k ≤ n − 3`.
pub fn nu(f: &Field, a: &[Fe], b: &[Fe], k: usize) -> Fe {
    let (i, j, l) = (k - 1, k, k + 1);
    f.add(
        f.mul(f.mul(a[i], b[j]), f.add(a[l], b[l])),
        f.mul(f.mul(a[j], b[l]), f.add(a[i], b[i])),
    )
}

/// Closed form of `r_a ▷ r_b`: superdiagonal `b`; entry `(k, k+2)` is `θ^k`;
/// entry `(k, j)` for `j > k+2` is `(−1)^{j−k−2} a_{k+2}⋯a_{j−1} θ^k`.
pub fn closed_form_conjugate(f: &Field, a: &[Fe], b: &[Fe]) -> Matrix {
    let n = a.len() + 1;
    let mut m = r_vec(f, b);
    for k in 1..=n.saturating_sub(2) {
        let th = theta(f, a, b, k);
        let mut acc = th;
        m.set(k - 1, k + 1, th);
        for j in k + 3..=n {
            acc = f.neg(f.mul(acc, a[j - 2]));
            m.set(k - 1, j - 1, acc);
        }
    }
    m
}

/// The entries of `(r_a r_b)²` fixed by the closed form: diagonal 1,
/// superdiagonal `2(a_k + b_k)`, then `γ^k` and `ν^k` on the next two
/// diagonals. Cells further out are `None`.
pub fn closed_form_square(f: &Field, a: &[Fe], b: &[Fe]) -> Vec<Vec<Option<Fe>>> {
    let n = a.len() + 1;
    let two = f.from_int(2);
    let mut m = vec![vec![None; n]; n];
    for i in 0..n {
        for j in 0..i {
            m[i][j] = Some(0);
        }
        m[i][i] = Some(1);
    }
    for k in 1..n {
        m[k - 1][k] = Some(f.mul(two, f.add(a[k - 1], b[k - 1])));
    }
    for k in 1..=n.saturating_sub(2) {
        m[k - 1][k + 1] = Some(gamma(f, a, b, k));
    }
    for k in 1..=n.saturating_sub(3) {
        m[k - 1][k + 2] = Some(nu(f, a, b, k));
    }
    m
}

/// Right-hand side of the square criterion: `2θ^k_{a,b} = 0` for all
/// `k ≤ n−2` and `ν^k_{a,b} = ν^k_{b,a}` for all `k ≤ n−3`.
pub fn square_criterion(f: &Field, a: &[Fe], b: &[Fe]) -> bool {
    let n = a.len() + 1;
    let two = f.from_int(2);
    (1..=n.saturating_sub(2)).all(|k| f.mul(two, theta(f, a, b, k)) == 0)
        && (1..=n.saturating_sub(3)).all(|k| nu(f, a, b, k) == nu(f, b, a, k))
}

/// `gcd(n, q − 1)`.
pub fn count_regular_unipotent_classes(n: usize, field: &Field) -> usize {
    gcd(n as u64, field.q() as u64 - 1) as usize
}

/// Result of testing `x ∈ O_{r_a}` for upper triangular unipotent `x` with
/// nonzero superdiagonal.
#[derive(Clone, Debug)]
pub struct RegularMembership {
    pub member: bool,
    /// `θ` with `θⁿ a = ∏ x_{i,i+1}^i`, smallest encoding.
    pub theta: Option<Fe>,
    /// Upper triangular `C ∈ SL_n(q)` with `C r_a = x C`.
    pub conjugator: Option<Matrix>,
}

pub fn regular_class_membership(x: &Matrix, a: Fe) -> Result<RegularMembership, GroupError> {
    let f = x.field().clone();
    let n = x.n();
    if a == 0 {
        return Err(GroupError::Shape("label must be nonzero".into()));
    }
    if !x.is_upper_unitriangular() || x.superdiagonal().contains(&0) {
        return Err(GroupError::Shape(
            "expected an upper unitriangular matrix with nonzero superdiagonal".into(),
        ));
    }
    if n == 1 {
        return Ok(RegularMembership {
            member: true,
            theta: Some(1),
            conjugator: Some(x.clone()),
        });
    }
    let target = (1..n).fold(1, |acc, i| f.mul(acc, f.pow(x.get(i - 1, i), i as u128)));
    let Some(th) = f.nonzero().find(|&t| f.mul(f.pow(t, n as u128), a) == target) else {
        return Ok(RegularMembership {
            member: false,
            theta: None,
            conjugator: None,
        });
    };
    // Columns are filled right to left: the last column is θ⁻¹ e_n, and
    // column j follows from column j+1 via c_{ij} α_j = Σ_{k>i} x_{ik} c_{k,j+1},
    // where α_1 = a and α_j = 1 otherwise.
    let mut c = Matrix::zero(&f, n);
    c.set(n - 1, n - 1, f.inv(th).expect("nonzero"));
    let a_inv = f.inv(a).expect("nonzero");
    for j in (0..n - 1).rev() {
        for i in 0..n - 1 {
            let mut s = 0;
            for k in i + 1..n {
                s = f.add(s, f.mul(x.get(i, k), c.get(k, j + 1)));
            }
            if j == 0 {
                s = f.mul(s, a_inv);
            }
            c.set(i, j, s);
        }
    }
    let ra = r_scalar(&f, n, a);
    if c.mul(&ra) != x.mul(&c) || c.det() != 1 || !c.is_upper_triangular() {
        return Err(GroupError::Verification(
            "back-substituted conjugator fails C r_a = x C".into(),
        ));
    }
    Ok(RegularMembership {
        member: true,
        theta: Some(th),
        conjugator: Some(c),
    })
}

/// `C ∈ SL_n(q)` with `C x C⁻¹ = y` for regular unipotent `x`, `y`, or
/// `None` when they are conjugate only in `GL_n(q)`. Built from cyclic
/// vectors, then rescaled by an `n`-th root of the determinant.
pub fn regular_sl_conjugator(x: &Matrix, y: &Matrix) -> Result<Option<Matrix>, GroupError> {
    let f = x.field().clone();
    let n = x.n();
    for m in [x, y] {
        if unipotent_type(m)?.parts() != [n] {
            return Err(GroupError::Shape("both matrices must be regular unipotent".into()));
        }
    }
    let krylov = |m: &Matrix| -> Result<Matrix, GroupError> {
        let nil = m.sub(&Matrix::identity(&f, n));
        let top = nil.pow(n as u128 - 1);
        let col = (0..n).find(|&j| (0..n).any(|i| top.get(i, j) != 0)).expect("regular");
        let mut k = Matrix::zero(&f, n);
        let mut p = Matrix::identity(&f, n);
        for c in 0..n {
            for i in 0..n {
                k.set(i, c, p.get(i, col));
            }
            p = p.mul(&nil);
        }
        Ok(k)
    };
    let c = krylov(y)?.mul(&krylov(x)?.inverse()?);
    let d = c.det();
    let Some(root) = f.nonzero().find(|&t| f.pow(t, n as u128) == d) else {
        return Ok(None);
    };
    let c = c.scale(f.inv(root).expect("nonzero"));
    if c.det() != 1 || c.mul(x) != y.mul(&c) {
        return Err(GroupError::Verification("cyclic-vector conjugator fails C x = y C".into()));
    }
    Ok(Some(c))
}

/// Canonical coset representatives of `F_q^× / (F_q^×)ⁿ`: the smallest
/// encoding in each coset, ascending. There are `gcd(n, q−1)` of them.
pub fn regular_labels(field: &Field, n: usize) -> Vec<Fe> {
    let powers: std::collections::BTreeSet<Fe> = field.nonzero().map(|t| field.pow(t, n as u128)).collect();
    let mut covered = std::collections::BTreeSet::new();
    let mut labels = Vec::new();
    for a in field.nonzero() {
        if covered.contains(&a) {
            continue;
        }
        labels.push(a);
        for &p in &powers {
            covered.insert(field.mul(a, p));
        }
    }
    labels
}

/// Representative for a unipotent class: `r_a` for the regular type with
/// label `a`, block-diagonal Jordan form otherwise.
pub fn class_representative(ctx: &GroupCtx, lambda: &Partition, label: Fe) -> Result<Matrix, GroupError> {
    if lambda.n() != ctx.n() {
        return Err(GroupError::Shape(format!("{lambda} is not a partition of {}", ctx.n())));
    }
    let m = if lambda.is_regular() {
        r_scalar(ctx.field(), ctx.n(), label)
    } else {
        unipotent_representative(ctx.field(), lambda)
    };
    ctx.element(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::make_field;
    use crate::group::Group;
    use crate::matgrp::Family;

    #[test]
    fn partitions_of_small_n() {
        let names: Vec<String> = Partition::all(4).iter().map(|p| p.to_string()).collect();
        assert_eq!(names, ["(4)", "(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"]);
        assert_eq!(Partition::all(6).len(), 11);
        assert_eq!("(2,1,1)".parse::<Partition>().unwrap().parts(), &[2, 1, 1]);
    }

    #[test]
    fn jordan_types() {
        let f = make_field(3, 1).unwrap();
        assert_eq!(unipotent_type(&Matrix::identity(&f, 4)).unwrap().parts(), &[1, 1, 1, 1]);
        let j21 = unipotent_representative(&f, &Partition::new(vec![2, 1]).unwrap());
        assert_eq!(unipotent_type(&j21).unwrap().parts(), &[2, 1]);
        assert_eq!(unipotent_type(&r_scalar(&f, 4, 1)).unwrap().parts(), &[4]);
        assert_eq!(unipotent_type(&Matrix::scalar(&f, 2, 2)).unwrap_err(), GroupError::NotUnipotent);
        let f2 = make_field(2, 1).unwrap();
        for lam in Partition::all(5) {
            let u = unipotent_representative(&f2, &lam);
            assert_eq!(unipotent_type(&u).unwrap(), lam);
        }
    }

    #[test]
    fn regular_membership_examples() {
        let f7 = make_field(7, 1).unwrap();
        let r1 = r_scalar(&f7, 2, 1);
        assert!(!regular_class_membership(&r1, 3).unwrap().member);
        let same = regular_class_membership(&r_scalar(&f7, 3, 5), 5).unwrap();
        assert!(same.member);
        assert!(same.conjugator.unwrap().is_identity());
        let f4 = make_field(2, 2).unwrap();
        assert!(!regular_class_membership(&r_scalar(&f4, 3, 2), 1).unwrap().member);
        assert!(regular_class_membership(&Matrix::identity(&f4, 3), 1).is_err());
    }

    #[test]
    fn membership_agrees_with_bfs() {
        for (p, m, n) in [(7, 1, 2), (2, 2, 3), (7, 1, 3), (5, 1, 2), (3, 1, 3), (3, 1, 4)] {
            let f = make_field(p, m).unwrap();
            let sl = GroupCtx::new(Family::SL, n, &f).unwrap();
            for a in f.nonzero() {
                let class = crate::matgrp::orbit::conjugacy_orbit(&sl, &r_scalar(&f, n, a), 1_000_000).unwrap();
                let set: std::collections::HashSet<_> = class.iter().cloned().collect();
                for b in f.nonzero() {
                    let x = r_scalar(&f, n, b);
                    let res = regular_class_membership(&x, a).unwrap();
                    assert_eq!(res.member, set.contains(&x), "q={} n={n} a={a} b={b}", f.q());
                    if let Some(c) = res.conjugator {
                        assert_eq!(sl.conj(&c, &r_scalar(&f, n, a)), x);
                    }
                }
            }
        }
    }

    #[test]
    fn labels_count() {
        for (p, m) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2)] {
            let f = make_field(p, m).unwrap();
            for n in 1..6 {
                assert_eq!(regular_labels(&f, n).len(), count_regular_unipotent_classes(n, &f));
            }
        }
        let f7 = make_field(7, 1).unwrap();
        assert_eq!(regular_labels(&f7, 2), vec![1, 3]);
    }

    #[test]
    fn closed_form_example() {
        let f = make_field(5, 1).unwrap();
        assert_eq!(theta(&f, &[1, 1], &[2, 3], 1), 1);
        let direct = crate::matgrp::GroupCtx::new(Family::SL, 3, &f)
            .unwrap()
            .conj(&r_vec(&f, &[1, 1]), &r_vec(&f, &[2, 3]));
        assert_eq!(direct, closed_form_conjugate(&f, &[1, 1], &[2, 3]));
        assert_ne!(direct, r_vec(&f, &[2, 3]));
    }

    /// Over F_2 with n = 5 every hypothesis of the square criterion holds,
    /// yet the (1,5) entries of the two squares differ.
    #[test]
    fn square_criterion_is_only_necessary_beyond_n4() {
        let f = make_field(2, 1).unwrap();
        let (a, b) = ([1, 1, 1, 1], [0, 1, 0, 1]);
        assert!(square_criterion(&f, &a, &b));
        let (ra, rb) = (r_vec(&f, &a), r_vec(&f, &b));
        let ab = ra.mul(&rb);
        let ba = rb.mul(&ra);
        assert_ne!(ab.mul(&ab), ba.mul(&ba));
    }
}
