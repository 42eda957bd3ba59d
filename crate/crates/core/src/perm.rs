//! Small permutation groups (symmetric, alternating, dihedral) used as
//! reference racks.

use crate::group::{lcm, Group};

/// Permutation of `{0, …, n−1}` stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Perm(pub Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n as u8).collect())
    }

    /// Builds a permutation from 1-based cycles, e.g. `&[&[1, 2], &[3, 4]]`.
    pub fn from_cycles(n: usize, cycles: &[&[u8]]) -> Perm {
        let mut img: Vec<u8> = (0..n as u8).collect();
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                img[x as usize - 1] = c[(i + 1) % c.len()] - 1;
            }
        }
        Perm(img)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut out = vec![0u8; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[x as usize] = i as u8;
        }
        Perm(out)
    }

    pub fn cycles(&self) -> Vec<Vec<u8>> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.0[start] as usize == start {
                seen[start] = true;
                continue;
            }
            let mut c = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                c.push(i as u8 + 1);
                i = self.0[i] as usize;
            }
            out.push(c);
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Perm>) -> PermGroup {
        PermGroup { degree, gens }
    }

    pub fn symmetric(n: usize) -> PermGroup {
        let swap = Perm::from_cycles(n, &[&[1, 2]]);
        let cycle: Vec<u8> = (1..=n as u8).collect();
        PermGroup::new(n, vec![swap, Perm::from_cycles(n, &[&cycle])])
    }

    /// `A_n` generated by the 3-cycles `(1 2 k)`.
    pub fn alternating(n: usize) -> PermGroup {
        let gens = (3..=n as u8).map(|k| Perm::from_cycles(n, &[&[1, 2, k]])).collect();
        PermGroup::new(n, gens)
    }

    /// Symmetries of a regular `n`-gon: order `2n`, acting on the vertices.
    pub fn dihedral(n: usize) -> PermGroup {
        let rot = Perm((0..n).map(|i| ((i + 1) % n) as u8).collect());
        let refl = Perm((0..n).map(|i| ((n - i) % n) as u8).collect());
        PermGroup::new(n, vec![rot, refl])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
}

impl Group for PermGroup {
    type Elem = Perm;

    fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }
    fn mul(&self, a: &Perm, b: &Perm) -> Perm {
        a.compose(b)
    }
    fn inv(&self, a: &Perm) -> Perm {
        a.inverse()
    }
    fn generators(&self) -> &[Perm] {
        &self.gens
    }
    fn exponent_bound(&self) -> u128 {
        (1..=self.degree as u128).fold(1, lcm)
    }
    fn render(&self, x: &Perm) -> String {
        let cs = x.cycles();
        if cs.is_empty() {
            return "()".into();
        }
        cs.iter()
            .map(|c| {
                let inner: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                format!("({})", inner.join(" "))
            })
            .collect()
    }
    fn parse(&self, s: &str) -> Result<Perm, String> {
        let mut cycles: Vec<Vec<u8>> = Vec::new();
        for chunk in s.split(')') {
            let body = chunk.trim().trim_start_matches('(');
            if body.trim().is_empty() {
                continue;
            }
            let c: Result<Vec<u8>, _> = body.split_whitespace().map(str::parse::<u8>).collect();
            let c = c.map_err(|e| e.to_string())?;
            if c.iter().any(|&v| v == 0 || v as usize > self.degree) {
                return Err(format!("point out of range in `{s}`"));
            }
            cycles.push(c);
        }
        let refs: Vec<&[u8]> = cycles.iter().map(Vec::as_slice).collect();
        Ok(Perm::from_cycles(self.degree, &refs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_round_trip() {
        let g = PermGroup::symmetric(4);
        let x = Perm::from_cycles(4, &[&[1, 3], &[2, 4]]);
        assert_eq!(g.render(&x), "(1 3)(2 4)");
        assert_eq!(g.parse("(1 3)(2 4)").unwrap(), x);
        assert_eq!(g.render(&g.identity()), "()");
    }

    #[test]
    fn composition_convention() {
        let a = Perm::from_cycles(3, &[&[1, 2]]);
        let b = Perm::from_cycles(3, &[&[1, 3]]);
        // (12)(13): 1 -> 3 -> 3, 3 -> 1 -> 2, 2 -> 2 -> 1
        assert_eq!(a.compose(&b), Perm::from_cycles(3, &[&[1, 3, 2]]));
        let g = PermGroup::symmetric(3);
        assert_eq!(g.conj(&a, &b), Perm::from_cycles(3, &[&[2, 3]]));
        assert_eq!(g.order_of(&a.compose(&b)), 3);
    }
}
