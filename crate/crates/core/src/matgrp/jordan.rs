//! Multiplicative Jordan decomposition `x = x_s x_u` by powers of `x`.

use super::ctx::GroupCtx;
use super::matrix::Matrix;
use crate::group::Group;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanData {
    pub semisimple: Matrix,
    pub unipotent: Matrix,
    /// `|x| = p^a · r` with `p ∤ r`.
    pub p_part: u128,
    pub coprime_part: u128,
}

fn inv_mod(a: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    let (mut r0, mut r1) = (a as i128 % m as i128, m as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let qt = r0 / r1;
        (r0, r1) = (r1, r0 - qt * r1);
        (s0, s1) = (s1, s0 - qt * s1);
    }
    debug_assert_eq!(r0, 1);
    s0.rem_euclid(m as i128) as u128
}

/// `x_s = x^e` with `e ≡ 0 mod p^a` and `e ≡ 1 mod r`; `x_u = x x_s⁻¹`.
pub fn chevalley_jordan(ctx: &GroupCtx, x: &Matrix) -> JordanData {
    let p = ctx.field().p() as u128;
    let mut r = ctx.order_of(x);
    let mut pa = 1u128;
    while r.is_multiple_of(p) {
        r /= p;
        pa *= p;
    }
    let e = pa * inv_mod(pa % r.max(1), r);
    let xs = ctx.pow(x, e);
    let xu = ctx.mul(x, &ctx.inv(&xs));
    JordanData {
        semisimple: xs,
        unipotent: xu,
        p_part: pa,
        coprime_part: r,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::make_field;
    use crate::matgrp::{unipotent, Family};

    #[test]
    fn pure_cases() {
        let f = make_field(3, 1).unwrap();
        let sl = GroupCtx::new(Family::SL, 3, &f).unwrap();
        let u = unipotent::r_scalar(&f, 3, 1);
        let jd = chevalley_jordan(&sl, &u);
        assert!(jd.semisimple.is_identity());
        assert_eq!(jd.unipotent, u);
        let s = Matrix::diag(&f, &[2, 2, 1]);
        let jd = chevalley_jordan(&sl, &s);
        assert_eq!(jd.semisimple, s);
        assert!(jd.unipotent.is_identity());
    }

    #[test]
    fn mixed_element_in_sl4_3() {
        let f = make_field(3, 1).unwrap();
        let sl = GroupCtx::new(Family::SL, 4, &f).unwrap();
        // companion(X²+1) on the diagonal twice, coupled by Id above
        let s = Matrix::companion(&f, &[1, 0, 1]);
        let x = Matrix::from_blocks(&[vec![s.clone(), Matrix::identity(&f, 2)], vec![Matrix::zero(&f, 2), s]]);
        let jd = chevalley_jordan(&sl, &x);
        assert_eq!(jd.semisimple.mul(&jd.unipotent), x);
        assert_eq!(jd.semisimple.mul(&jd.unipotent), jd.unipotent.mul(&jd.semisimple));
        assert!(unipotent::is_unipotent(&jd.unipotent));
        assert!(!jd.unipotent.is_identity());
        assert_ne!(sl.order_of(&jd.semisimple) % 3, 0);
    }
}
