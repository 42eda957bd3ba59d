//! Exact arithmetic in `F_q`, `q = p^m ≤ 2^16`.
//!
//! An element is identified by its base-`p` encoding `Σ c_i p^i`, where
//! `c_i` are the residues of its polynomial representative modulo the field
//! modulus. The encoding is the hashing and ordering key everywhere
//! downstream. Fields are interned, so two calls to [`make_field`] with the
//! same `(p, m)` return handles to the same tables.

pub mod poly;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Encoded field element.
pub type Fe = u16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("p^m = {0} exceeds 2^16")]
    TooLarge(u64),
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("division by zero")]
    DivisionByZero,
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("encoding {0} is out of range for this field")]
    BadEncoding(u64),
    #[error("polynomial is reducible")]
    Reducible,
    #[error("field description does not match the canonical construction")]
    NonCanonical,
}

/// Serializable description of a field: `{"p", "m", "modulus"}` with the
/// modulus stored constant-term-first (leading 1 included).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn q(&self) -> u32 {
        self.p.pow(self.m)
    }
}

struct Inner {
    spec: FieldSpec,
    p: u32,
    q: u32,
    /// `exp[k] = g^k` for `k < 2(q-1)`, so sums of two logs need no reduction.
    exp: Vec<Fe>,
    log: Vec<u32>,
    neg: Vec<Fe>,
    add_table: Option<Vec<Fe>>,
    primitive: Fe,
}

/// Shared handle to an interned field.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.q)
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Distinct prime factors of `n`, ascending.
pub fn prime_factors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// ---- polynomial helpers over F_p on plain coefficient vectors, used only while
// building a field ----

fn fp_trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = fp_inv(b[db], p);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = (r[r.len() - 1] as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &bi) in b.iter().enumerate() {
            let t = (c as u64 * bi as u64 % p as u64) as u32;
            let slot = &mut r[shift + i];
            *slot = (*slot + p - t) % p;
        }
        fp_trim(&mut r);
    }
    r
}

fn fp_inv(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

/// Coefficient tuple of the `k`-th monic polynomial of degree `d` in the
/// lexicographic order that reads coefficients constant-term-first.
fn kth_monic(k: u64, d: u32, p: u32) -> Vec<u32> {
    let mut coeffs = vec![0u32; d as usize + 1];
    coeffs[d as usize] = 1;
    let mut rest = k;
    for i in (0..d as usize).rev() {
        coeffs[i] = (rest % p as u64) as u32;
        rest /= p as u64;
    }
    coeffs
}

fn is_irreducible_fp(f: &[u32], p: u32) -> bool {
    let m = (f.len() - 1) as u32;
    for d in 1..=m / 2 {
        let count = (p as u64).pow(d);
        for k in 0..count {
            let g = kth_monic(k, d, p);
            if fp_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible polynomial of degree `m`
/// over `F_p`, coefficient tuples compared constant-term-first.
pub fn smallest_irreducible(p: u32, m: u32) -> Vec<u32> {
    let count = (p as u64).pow(m);
    (0..count)
        .map(|k| kth_monic(k, m, p))
        .find(|f| is_irreducible_fp(f, p))
        .expect("irreducible polynomials exist in every degree")
}

fn digits(mut x: u32, p: u32, m: u32) -> Vec<u32> {
    (0..m)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn slow_mul(a: u32, b: u32, p: u32, m: u32, modulus: &[u32]) -> u32 {
    let da = digits(a, p, m);
    let db = digits(b, p, m);
    let mut prod = vec![0u32; 2 * m as usize];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    let mut r = fp_rem(&prod, modulus, p);
    r.resize(m as usize, 0);
    undigits(&r, p)
}

fn build(p: u32, m: u32) -> Inner {
    let modulus = smallest_irreducible(p, m);
    let q = p.pow(m);
    let order = q - 1;
    let mut exp = Vec::with_capacity(2 * order as usize);
    let mut primitive = 1u32;
    for g in 1..q {
        exp.clear();
        let mut x = 1u32;
        for _ in 0..order {
            exp.push(x as Fe);
            x = slow_mul(x, g, p, m, &modulus);
            if x == 1 {
                break;
            }
        }
        if exp.len() == order as usize {
            primitive = g;
            break;
        }
    }
    let mut log = vec![0u32; q as usize];
    for (k, &e) in exp.iter().enumerate() {
        log[e as usize] = k as u32;
    }
    let first = exp.clone();
    exp.extend_from_slice(&first);
    let neg: Vec<Fe> = (0..q)
        .map(|x| undigits(&digits(x, p, m).iter().map(|&d| (p - d) % p).collect::<Vec<_>>(), p) as Fe)
        .collect();
    let add_table = if p != 2 && m > 1 && q <= 1024 {
        let mut t = vec![0 as Fe; (q * q) as usize];
        for a in 0..q {
            let da = digits(a, p, m);
            for b in 0..q {
                let db = digits(b, p, m);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                t[(a * q + b) as usize] = undigits(&s, p) as Fe;
            }
        }
        Some(t)
    } else {
        None
    };
    Inner {
        spec: FieldSpec { p, m, modulus },
        p,
        q,
        exp,
        log,
        neg,
        add_table,
        primitive: primitive as Fe,
    }
}

static FIELDS: OnceLock<Mutex<HashMap<(u32, u32), Field>>> = OnceLock::new();

/// Builds (or fetches the interned copy of) `F_{p^m}`.
pub fn make_field(p: u32, m: u32) -> Result<Field, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    if m < 1 {
        return Err(FieldError::ZeroDegree);
    }
    let q = (p as u64).checked_pow(m).unwrap_or(u64::MAX);
    if q > 1 << 16 {
        return Err(FieldError::TooLarge(q));
    }
    let cache = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("field cache poisoned");
    Ok(guard
        .entry((p, m))
        .or_insert_with(|| Field(Arc::new(build(p, m))))
        .clone())
}

/// `F_q` for a prime power `q`.
pub fn field_of_order(q: u32) -> Result<Field, FieldError> {
    let p = prime_factors(q as u128).first().copied().unwrap_or(q as u128) as u32;
    let mut m = 0;
    let mut r = q;
    while p > 1 && r.is_multiple_of(p) {
        r /= p;
        m += 1;
    }
    if r != 1 || m == 0 {
        return Err(FieldError::NotPrime(q));
    }
    make_field(p, m)
}

impl Field {
    /// Rebuilds a field from its serialized description, rejecting moduli
    /// that differ from the canonical choice.
    pub fn from_spec(spec: &FieldSpec) -> Result<Field, FieldError> {
        let f = make_field(spec.p, spec.m)?;
        if f.spec().modulus != spec.modulus {
            return Err(FieldError::NonCanonical);
        }
        Ok(f)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }
    pub fn p(&self) -> u32 {
        self.0.p
    }
    pub fn m(&self) -> u32 {
        self.0.spec.m
    }
    pub fn q(&self) -> u32 {
        self.0.q
    }
    pub fn is_prime_field(&self) -> bool {
        self.0.spec.m == 1
    }
    /// Smallest-encoding generator of `F_q^×`.
    pub fn primitive(&self) -> Fe {
        self.0.primitive
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.0.q).map(|x| x as Fe)
    }
    pub fn nonzero(&self) -> impl Iterator<Item = Fe> {
        (1..self.0.q).map(|x| x as Fe)
    }

    /// Encoding of the residue class of `X^i`, i.e. a power of `p` for
    /// `i < m`: these form the standard `F_p`-basis.
    pub fn basis(&self) -> Vec<Fe> {
        (0..self.m()).map(|i| self.p().pow(i) as Fe).collect()
    }

    pub fn check(&self, x: u64) -> Result<Fe, FieldError> {
        if x < self.0.q as u64 {
            Ok(x as Fe)
        } else {
            Err(FieldError::BadEncoding(x))
        }
    }

    /// Image of an integer under `Z → F_p ⊂ F_q`.
    pub fn from_int(&self, k: i64) -> Fe {
        k.rem_euclid(self.0.p as i64) as Fe
    }

    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        digits(a as u32, self.0.p, self.m())
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Result<Fe, FieldError> {
        if c.len() > self.m() as usize || c.iter().any(|&d| d >= self.0.p) {
            return Err(FieldError::BadEncoding(undigits(c, self.0.p) as u64));
        }
        Ok(undigits(c, self.0.p) as Fe)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let inner = &*self.0;
        if inner.p == 2 {
            a ^ b
        } else if inner.spec.m == 1 {
            let s = a as u32 + b as u32;
            (if s >= inner.p { s - inner.p } else { s }) as Fe
        } else if let Some(t) = &inner.add_table {
            t[a as usize * inner.q as usize + b as usize]
        } else {
            let (mut x, mut y, mut out, mut place) = (a as u32, b as u32, 0u32, 1u32);
            while x > 0 || y > 0 {
                out += ((x % inner.p + y % inner.p) % inner.p) * place;
                x /= inner.p;
                y /= inner.p;
                place *= inner.p;
            }
            out as Fe
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        self.0.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a == 0 || b == 0 {
            return 0;
        }
        let inner = &*self.0;
        if inner.spec.m == 1 {
            return (a as u32 * b as u32 % inner.p) as Fe;
        }
        inner.exp[(inner.log[a as usize] + inner.log[b as usize]) as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a == 0 {
            return None;
        }
        let inner = &*self.0;
        let order = inner.q - 1;
        Some(inner.exp[((order - inner.log[a as usize]) % order) as usize])
    }

    pub fn div(&self, a: Fe, b: Fe) -> Option<Fe> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Fe, k: u128) -> Fe {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let inner = &*self.0;
        let order = (inner.q - 1) as u128;
        let e = (inner.log[a as usize] as u128 * (k % order)) % order;
        inner.exp[e as usize]
    }

    /// Power with a signed exponent; zero base with a negative exponent
    /// yields `None`.
    pub fn powi(&self, a: Fe, k: i64) -> Option<Fe> {
        if k >= 0 {
            Some(self.pow(a, k as u128))
        } else {
            self.inv(a).map(|ai| self.pow(ai, k.unsigned_abs() as u128))
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, a: Fe) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let order = self.q() - 1;
        Some(order / gcd(order as u64, self.0.log[a as usize] as u64) as u32)
    }

    pub fn is_square(&self, a: Fe) -> Result<bool, FieldError> {
        if a == 0 {
            return Err(FieldError::ZeroArgument);
        }
        if self.p() == 2 {
            return Ok(true);
        }
        Ok(self.pow(a, ((self.q() - 1) / 2) as u128) == 1)
    }

    /// Smallest-encoding nonsquare of `F_q^×`, if `q` is odd.
    pub fn smallest_nonsquare(&self) -> Option<Fe> {
        self.nonzero().find(|&a| !self.is_square(a).unwrap_or(true))
    }

    pub fn elem(&self, enc: u64) -> Result<FieldElem, FieldError> {
        Ok(FieldElem {
            field: self.clone(),
            enc: self.check(enc)?,
        })
    }
}

/// `gcd(n, q − 1)`: the size of the kernel of `λ ↦ λ^n` on `F_q^×`.
pub fn nth_power_kernel_order(spec: &FieldSpec, n: u64) -> u64 {
    gcd(n, spec.q() as u64 - 1)
}

/// A field element that carries its field, for checked arithmetic.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElem {
    field: Field,
    enc: Fe,
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{:?}", self.enc, self.field)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow(i64),
    Inv,
}

impl FieldElem {
    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn enc(&self) -> Fe {
        self.enc
    }
    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.enc)
    }

    fn same(&self, other: &FieldElem) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::MixedFields)
        }
    }

    fn wrap(&self, enc: Fe) -> FieldElem {
        FieldElem {
            field: self.field.clone(),
            enc,
        }
    }

    pub fn add(&self, o: &FieldElem) -> Result<FieldElem, FieldError> {
        self.same(o)?;
        Ok(self.wrap(self.field.add(self.enc, o.enc)))
    }
    pub fn sub(&self, o: &FieldElem) -> Result<FieldElem, FieldError> {
        self.same(o)?;
        Ok(self.wrap(self.field.sub(self.enc, o.enc)))
    }
    pub fn mul(&self, o: &FieldElem) -> Result<FieldElem, FieldError> {
        self.same(o)?;
        Ok(self.wrap(self.field.mul(self.enc, o.enc)))
    }
    pub fn div(&self, o: &FieldElem) -> Result<FieldElem, FieldError> {
        self.same(o)?;
        self.field
            .div(self.enc, o.enc)
            .map(|e| self.wrap(e))
            .ok_or(FieldError::DivisionByZero)
    }
    pub fn inv(&self) -> Result<FieldElem, FieldError> {
        self.field
            .inv(self.enc)
            .map(|e| self.wrap(e))
            .ok_or(FieldError::DivisionByZero)
    }
    pub fn pow(&self, k: i64) -> Result<FieldElem, FieldError> {
        self.field
            .powi(self.enc, k)
            .map(|e| self.wrap(e))
            .ok_or(FieldError::DivisionByZero)
    }
    pub fn is_square(&self) -> Result<bool, FieldError> {
        self.field.is_square(self.enc)
    }
}

/// Single entry point for binary and unary element arithmetic. Unary
/// operations ignore `b`, but it must still share `a`'s field.
pub fn ff_arith(a: &FieldElem, b: &FieldElem, op: ArithOp) -> Result<FieldElem, FieldError> {
    a.same(b)?;
    match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Div => a.div(b),
        ArithOp::Pow(k) => a.pow(k),
        ArithOp::Inv => a.inv(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Reducible monic quadratics over F_p are exactly products of two monic
    /// linears; the smallest monic quadratic outside that set is the oracle.
    fn smallest_irreducible_quadratic_oracle(p: u32) -> Vec<u32> {
        let mut reducible = std::collections::HashSet::new();
        for r in 0..p {
            for s in 0..p {
                // (X + r)(X + s) = X^2 + (r+s) X + rs
                reducible.insert(vec![(r * s) % p, (r + s) % p, 1]);
            }
        }
        let mut cands: Vec<Vec<u32>> = Vec::new();
        for c0 in 0..p {
            for c1 in 0..p {
                cands.push(vec![c0, c1, 1]);
            }
        }
        cands.into_iter().find(|c| !reducible.contains(c)).unwrap()
    }

    #[test]
    fn moduli_match_exhaustive_scan() {
        assert_eq!(make_field(2, 1).unwrap().spec().modulus, vec![0, 1]);
        for p in [2, 3, 5, 7] {
            assert_eq!(
                make_field(p, 2).unwrap().spec().modulus,
                smallest_irreducible_quadratic_oracle(p)
            );
        }
        assert_eq!(make_field(2, 2).unwrap().spec().modulus, vec![1, 1, 1]);
        assert_eq!(make_field(3, 2).unwrap().spec().modulus, vec![1, 0, 1]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(make_field(4, 1).unwrap_err(), FieldError::NotPrime(4));
        assert_eq!(make_field(2, 0).unwrap_err(), FieldError::ZeroDegree);
        assert!(matches!(make_field(2, 17), Err(FieldError::TooLarge(_))));
    }

    #[test]
    fn f4_arithmetic() {
        let f = make_field(2, 2).unwrap();
        let z = 2; // class of X
        assert_eq!(f.mul(z, z), 3); // X^2 = X + 1
        assert_eq!(f.pow(z, 3), 1);
        assert_eq!(f.inv(1), Some(1));
    }

    #[test]
    fn table_free_and_table_paths_agree_with_polynomial_multiplication() {
        for (p, m) in [(2, 3), (3, 2), (3, 3), (5, 2), (7, 2), (2, 4)] {
            let f = make_field(p, m).unwrap();
            let modulus = f.spec().modulus.clone();
            for a in 0..f.q() {
                for b in 0..f.q() {
                    assert_eq!(f.mul(a as Fe, b as Fe) as u32, slow_mul(a, b, p, m, &modulus));
                    let s: Vec<u32> = digits(a, p, m)
                        .iter()
                        .zip(digits(b, p, m))
                        .map(|(x, y)| (x + y) % p)
                        .collect();
                    assert_eq!(f.add(a as Fe, b as Fe) as u32, undigits(&s, p));
                }
            }
        }
    }

    #[test]
    fn large_field_digitwise_addition() {
        let f = make_field(3, 7).unwrap();
        for (a, b) in [(0u32, 5u32), (2186, 1), (1234, 999), (729, 1458)] {
            let s: Vec<u32> = digits(a, 3, 7)
                .iter()
                .zip(digits(b, 3, 7))
                .map(|(x, y)| (x + y) % 3)
                .collect();
            assert_eq!(f.add(a as Fe, b as Fe) as u32, undigits(&s, 3));
        }
    }

    #[test]
    fn squares_by_brute_force() {
        for (p, m, a, expected) in [(7u32, 1u32, 3u16, false), (5, 1, 2, false), (7, 1, 2, true)] {
            let f = make_field(p, m).unwrap();
            let squares: Vec<Fe> = f.nonzero().map(|x| f.mul(x, x)).collect();
            assert_eq!(squares.contains(&a), expected);
            assert_eq!(f.is_square(a).unwrap(), expected);
        }
        let f8 = make_field(2, 3).unwrap();
        assert!(f8.nonzero().all(|a| f8.is_square(a).unwrap()));
        assert_eq!(f8.is_square(0), Err(FieldError::ZeroArgument));
    }

    #[test]
    fn kernel_orders() {
        let spec = |p, m| make_field(p, m).unwrap().spec().clone();
        assert_eq!(nth_power_kernel_order(&spec(2, 2), 3), 3);
        assert_eq!(nth_power_kernel_order(&spec(2, 3), 2), 1);
        assert_eq!(nth_power_kernel_order(&spec(3, 2), 4), 4);
    }

    #[test]
    fn checked_elements_reject_mixing() {
        let a = make_field(2, 2).unwrap().elem(2).unwrap();
        let b = make_field(3, 1).unwrap().elem(2).unwrap();
        assert_eq!(ff_arith(&a, &b, ArithOp::Add).unwrap_err(), FieldError::MixedFields);
        let zero = a.field().elem(0).unwrap();
        assert_eq!(a.div(&zero).unwrap_err(), FieldError::DivisionByZero);
        assert_eq!(ff_arith(&a, &a, ArithOp::Pow(3)).unwrap().enc(), 1);
        assert_eq!(ff_arith(&a, &a, ArithOp::Pow(-1)).unwrap().enc(), 3);
    }

    #[test]
    fn spec_round_trip() {
        let f = make_field(3, 2).unwrap();
        let json = serde_json::to_string(f.spec()).unwrap();
        assert_eq!(json, r#"{"p":3,"m":2,"modulus":[1,0,1]}"#);
        let back: FieldSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(Field::from_spec(&back).unwrap(), f);
        let bad = FieldSpec {
            p: 3,
            m: 2,
            modulus: vec![2, 2, 1],
        };
        assert_eq!(Field::from_spec(&bad).unwrap_err(), FieldError::NonCanonical);
    }
}
