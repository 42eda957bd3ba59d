//! Randomized cross-check of the closed-form unipotent formulas against
//! direct matrix arithmetic.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ffield::{field_of_order, Fe, Field};
use crate::matgrp::unipotent::{
    closed_form_conjugate, closed_form_square, gamma, r_vec, square_criterion, theta,
};

const ORDERS: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub trials: usize,
    pub seed: u64,
    /// Individual comparisons made.
    pub checks: u64,
    /// Trials with `(r_a r_b)² = (r_b r_a)²`.
    pub equal_squares: usize,
    pub mismatches: Vec<String>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn random_label(f: &Field, len: usize, rng: &mut ChaCha8Rng) -> Vec<Fe> {
    (0..len).map(|_| rng.gen_range(1..f.q()) as Fe).collect()
}

pub fn formula_oracle_suite(trials: usize, seed: u64) -> OracleReport {
    let fields: Vec<Field> = ORDERS.iter().map(|&q| field_of_order(q).expect("prime power")).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = OracleReport {
        trials,
        seed,
        ..Default::default()
    };
    for t in 0..trials {
        let f = &fields[rng.gen_range(0..fields.len())];
        let n = rng.gen_range(3..=6);
        let a = random_label(f, n - 1, &mut rng);
        // Bias towards near-equal labels so both sides of each iff get exercised.
        let b = match rng.gen_range(0..4) {
            0 => a.clone(),
            1 => {
                let c = rng.gen_range(1..f.q()) as Fe;
                a.iter().map(|&x| f.mul(c, x)).collect()
            }
            _ => random_label(f, n - 1, &mut rng),
        };
        let tag = format!("trial {t}: q={} n={n} a={a:?} b={b:?}", f.q());
        let mut fail = |what: &str| rep.mismatches.push(format!("{tag}: {what}"));
        let (ra, rb) = (r_vec(f, &a), r_vec(f, &b));
        let direct = ra.mul(&rb).mul(&ra.inverse().expect("unitriangular"));
        if closed_form_conjugate(f, &a, &b) != direct {
            fail("closed-form conjugate");
        }
        let ab = ra.mul(&rb);
        let ba = rb.mul(&ra);
        let sq = ab.mul(&ab);
        let cells = closed_form_square(f, &a, &b);
        let mut cell_checks = 0;
        for (i, row) in cells.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if let Some(v) = c {
                    cell_checks += 1;
                    if sq.get(i, j) != *v {
                        fail(&format!("square cell ({i},{j})"));
                    }
                }
            }
        }
        let two = f.from_int(2);
        for k in 1..=n - 2 {
            let sym = gamma(f, &a, &b, k) == gamma(f, &b, &a, k);
            if sym != (f.mul(two, theta(f, &a, &b, k)) == 0) {
                fail(&format!("gamma symmetry at k={k}"));
            }
        }
        let equal = sq == ba.mul(&ba);
        let crit = square_criterion(f, &a, &b);
        rep.equal_squares += usize::from(equal);
        if equal && !crit {
            fail("equal squares without the criterion");
        }
        if n <= 4 && equal != crit {
            fail("criterion is not equivalent for n <= 4");
        }
        rep.checks += 4 + cell_checks + (n as u64 - 2);
    }
    rep
}
