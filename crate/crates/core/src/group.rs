//! Minimal finite-group interface shared by matrix groups and permutation
//! groups. Elements are canonical values: equality of values is equality in
//! the group.

use std::fmt::Debug;
use std::hash::Hash;

use crate::ffield::prime_factors;

pub trait Group: Clone + Send + Sync {
    type Elem: Clone + Eq + Hash + Ord + Send + Sync + Debug;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    /// A generating set of the whole group.
    fn generators(&self) -> &[Self::Elem];
    /// A multiple of every element order.
    fn exponent_bound(&self) -> u128;
    /// Human-readable literal, parseable by [`Group::parse`].
    fn render(&self, x: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem, String>;

    /// `g x g⁻¹`.
    fn conj(&self, g: &Self::Elem, x: &Self::Elem) -> Self::Elem {
        self.mul(&self.mul(g, x), &self.inv(g))
    }

    /// Conjugation by the `k`-th generator. Implementations may specialise.
    fn conj_gen(&self, k: usize, x: &Self::Elem) -> Self::Elem {
        self.conj(&self.generators()[k], x)
    }

    fn is_identity(&self, x: &Self::Elem) -> bool {
        *x == self.identity()
    }

    fn pow(&self, x: &Self::Elem, mut e: u128) -> Self::Elem {
        let mut result = self.identity();
        let mut base = x.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// Exact element order, found by stripping prime factors from the
    /// exponent bound.
    fn order_of(&self, x: &Self::Elem) -> u128 {
        let mut e = self.exponent_bound();
        debug_assert!(self.is_identity(&self.pow(x, e)));
        for l in prime_factors(e) {
            while e.is_multiple_of(l) && self.is_identity(&self.pow(x, e / l)) {
                e /= l;
            }
        }
        e
    }

    fn commute(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }
}

pub fn lcm(a: u128, b: u128) -> u128 {
    a / gcd128(a, b) * b
}

pub fn gcd128(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd128(b, a % b)
    }
}

/// Direct product `G₁ × G₂` with componentwise operations.
#[derive(Clone)]
pub struct Product<A: Group, B: Group> {
    pub left: A,
    pub right: B,
    gens: Vec<(A::Elem, B::Elem)>,
}

impl<A: Group, B: Group> Product<A, B> {
    pub fn new(left: A, right: B) -> Self {
        let mut gens: Vec<(A::Elem, B::Elem)> = left
            .generators()
            .iter()
            .map(|g| (g.clone(), right.identity()))
            .collect();
        gens.extend(right.generators().iter().map(|h| (left.identity(), h.clone())));
        Product { left, right, gens }
    }
}

impl<A: Group, B: Group> Group for Product<A, B> {
    type Elem = (A::Elem, B::Elem);

    fn identity(&self) -> Self::Elem {
        (self.left.identity(), self.right.identity())
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (self.left.mul(&a.0, &b.0), self.right.mul(&a.1, &b.1))
    }
    fn inv(&self, a: &Self::Elem) -> Self::Elem {
        (self.left.inv(&a.0), self.right.inv(&a.1))
    }
    fn generators(&self) -> &[Self::Elem] {
        &self.gens
    }
    fn exponent_bound(&self) -> u128 {
        lcm(self.left.exponent_bound(), self.right.exponent_bound())
    }
    fn render(&self, x: &Self::Elem) -> String {
        format!("{} | {}", self.left.render(&x.0), self.right.render(&x.1))
    }
    fn parse(&self, s: &str) -> Result<Self::Elem, String> {
        let (a, b) = s.split_once('|').ok_or("expected `left | right`")?;
        Ok((self.left.parse(a.trim())?, self.right.parse(b.trim())?))
    }
}
