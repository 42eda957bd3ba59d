//! Univariate polynomials over `F_q`, coefficient vectors constant-term-first
//! with no trailing zeros (the zero polynomial is empty).

use super::{prime_factors, Fe, Field};

pub type Poly = Vec<Fe>;

pub fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Degree, or `None` for the zero polynomial.
pub fn degree(a: &[Fe]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn x_power(k: usize) -> Poly {
    let mut v = vec![0; k + 1];
    v[k] = 1;
    v
}

pub fn add(f: &Field, a: &[Fe], b: &[Fe]) -> Poly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| f.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect(),
    )
}

pub fn sub(f: &Field, a: &[Fe], b: &[Fe]) -> Poly {
    let nb: Poly = b.iter().map(|&c| f.neg(c)).collect();
    add(f, a, &nb)
}

pub fn scale(f: &Field, a: &[Fe], c: Fe) -> Poly {
    trim(a.iter().map(|&x| f.mul(x, c)).collect())
}

pub fn mul(f: &Field, a: &[Fe], b: &[Fe]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
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

/// Quotient and remainder; panics on division by the zero polynomial.
pub fn divrem(f: &Field, a: &[Fe], b: &[Fe]) -> (Poly, Poly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = f.inv(b[db]).expect("nonzero leading coefficient");
    let mut r = trim(a.to_vec());
    let mut quot = vec![0; r.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(r[dr], lead_inv);
        quot[dr - db] = c;
        for (i, &bi) in b[..=db].iter().enumerate() {
            r[dr - db + i] = f.sub(r[dr - db + i], f.mul(c, bi));
        }
        r = trim(r);
    }
    (trim(quot), r)
}

pub fn rem(f: &Field, a: &[Fe], b: &[Fe]) -> Poly {
    divrem(f, a, b).1
}

pub fn monic(f: &Field, a: &[Fe]) -> Poly {
    match degree(a) {
        None => Vec::new(),
        Some(d) => scale(f, a, f.inv(a[d]).expect("nonzero")),
    }
}

pub fn gcd(f: &Field, a: &[Fe], b: &[Fe]) -> Poly {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

pub fn powmod(f: &Field, base: &[Fe], mut e: u128, modulus: &[Fe]) -> Poly {
    let mut result = rem(f, &[1], modulus);
    let mut b = rem(f, base, modulus);
    while e > 0 {
        if e & 1 == 1 {
            result = rem(f, &mul(f, &result, &b), modulus);
        }
        b = rem(f, &mul(f, &b, &b), modulus);
        e >>= 1;
    }
    result
}

pub fn eval(f: &Field, a: &[Fe], x: Fe) -> Fe {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

/// Rabin's test: a monic `F` of degree `d ≥ 1` is irreducible over `F_q` iff
/// `X^{q^d} ≡ X (mod F)` and `gcd(X^{q^{d/ℓ}} − X, F) = 1` for each prime `ℓ | d`.
pub fn is_irreducible(f: &Field, poly: &[Fe]) -> bool {
    let Some(d) = degree(poly) else {
        return false;
    };
    if d == 0 {
        return false;
    }
    let q = f.q() as u128;
    let x = x_power(1);
    // frob[k] = X^{q^k} mod F for k = 0..=d
    let mut frob = vec![rem(f, &x, poly)];
    for k in 1..=d {
        let next = powmod(f, &frob[k - 1], q, poly);
        frob.push(next);
    }
    if sub(f, &frob[d], &rem(f, &x, poly)).iter().any(|&c| c != 0) {
        return false;
    }
    prime_factors(d as u128).into_iter().all(|l| {
        let h = sub(f, &frob[d / l as usize], &x);
        degree(&gcd(f, &h, poly)) == Some(0)
    })
}
