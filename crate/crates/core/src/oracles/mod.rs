//! Inverter oracles and exhaustive search backends.
//!
//! An inverter answers "does `target` have a preimage under this map, and if
//! so, name one". The brute-force inverter scans inputs in lexicographic
//! order and is the canonical, replayable backend; the SAT inverter spawns
//! one external solver process per query and its witnesses are valid but not
//! canonical, so tests compare only its verdicts.

mod enumerate;
mod sat;

pub use enumerate::{
    easy_witness_search, exact_complexity, for_each_circuit_mask, ComplexityOutcome,
    ComplexityReport, MAX_ENUM_GATES, MAX_ENUM_TABLE,
};
pub use sat::SatInverter;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::stretch::StretchMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inversion {
    Member(Bits),
    NonMember,
}

impl Inversion {
    pub fn is_member(&self) -> bool {
        matches!(self, Inversion::Member(_))
    }
}

pub trait InverterOracle {
    fn invert(&self, map: &StretchMap, target: &Bits) -> Result<Inversion>;
}

/// Exhaustive inverter. Returns the lexicographically smallest preimage and
/// refuses maps wider than its input budget.
pub struct BruteForceInverter {
    pub max_in_bits: usize,
}

impl Default for BruteForceInverter {
    fn default() -> Self {
        BruteForceInverter { max_in_bits: 28 }
    }
}

impl InverterOracle for BruteForceInverter {
    fn invert(&self, map: &StretchMap, target: &Bits) -> Result<Inversion> {
        if target.len() != map.out_width() {
            return Err(Error::ArityMismatch {
                want: map.out_width(),
                got: target.len(),
            });
        }
        if map.in_width() > self.max_in_bits {
            return Err(Error::Budget {
                what: "brute-force inversion",
                need: format!("input width <= {}", self.max_in_bits),
                got: format!("{}", map.in_width()),
            });
        }
        let n = map.in_width();
        let mut x = Bits::zeros(n);
        for p in 0..(1u64 << n) {
            x.write_u64(0, n, p);
            if map.eval(&x) == *target {
                return Ok(Inversion::Member(x));
            }
        }
        Ok(Inversion::NonMember)
    }
}

#[derive(Clone, Debug)]
pub struct RandomizedRun {
    pub solution: Bits,
    pub trials: usize,
}

/// Samples uniform output-width strings from a seeded generator until the
/// inverter reports a non-member. A random string misses the range with
/// probability at least 1/2, so the hard trial cap is unreachable in
/// practice.
pub fn solve_empty_randomized(
    map: &StretchMap,
    inverter: &dyn InverterOracle,
    seed: u64,
) -> Result<RandomizedRun> {
    if !map.is_stretching() {
        return Err(Error::NotStretching {
            in_width: map.in_width(),
            out_width: map.out_width(),
            detail: "random sampling is only guaranteed to terminate on stretching maps".into(),
        });
    }
    let cap = 10 * (map.out_width() - map.in_width() + 1) * 64;
    let mut rng = crate::fixtures::rng(seed);
    for trials in 1..=cap {
        let y = Bits::random(&mut rng, map.out_width());
        if let Inversion::NonMember = inverter.invert(map, &y)? {
            return Ok(RandomizedRun { solution: y, trials });
        }
    }
    Err(Error::TrialCapExceeded { cap })
}
