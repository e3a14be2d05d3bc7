//! Backward inversion walks: descend a layered construction from a non-range
//! target until a block outside the base map's range is exposed.

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::ggm::{GgmPlan, LayeredChain};
use crate::oracles::{Inversion, InverterOracle};
use crate::stretch::{MapKind, StretchMap};

#[derive(Clone, Debug)]
pub struct WalkOutcome {
    /// A string outside the range of the base map, certified by the inverter
    /// that drove the walk.
    pub solution: Bits,
    pub inverter_calls: usize,
}

/// Walks a tree expansion top-down. Blocks are scanned left to right and the
/// first non-member pair is returned, so the walk is deterministic under a
/// canonical inverter, and at most `2^depth` inverter calls are made. If the
/// target turns out to be in the range the walk fails with the preimage it
/// found.
pub fn backward_walk_ggm(
    plan: &GgmPlan,
    y_star: &Bits,
    inverter: &dyn InverterOracle,
) -> Result<WalkOutcome> {
    let n = plan.block_width();
    assert_eq!(y_star.len(), plan.out_width(), "target width mismatch");
    let mut calls = 0usize;
    let mut current = y_star.clone();
    for _level in (1..=plan.depth()).rev() {
        let pairs = current.len() / (2 * n);
        let mut parents = Bits::with_capacity(pairs * n);
        for t in 0..pairs {
            let target = current.slice(t * 2 * n, 2 * n);
            calls += 1;
            match inverter.invert(plan.base(), &target)? {
                Inversion::NonMember => {
                    return Ok(WalkOutcome {
                        solution: target,
                        inverter_calls: calls,
                    });
                }
                Inversion::Member(p) => {
                    debug_assert_eq!(p.len(), n);
                    parents.push_bits(&p);
                }
            }
        }
        current = parents;
    }
    // every level inverted: the single remaining block is a preimage of the
    // whole expansion, so the target was in the range after all
    Err(Error::WalkExhausted { preimage: current })
}

/// Walks a padding chain top-down. Full output blocks of each layer are
/// inverted against the base; the truncated tail block (when the layer drops
/// bits) is inverted against the correspondingly truncated base, and a tail
/// with no preimage yields a base solution by zero padding, since no base
/// output can start with it. At most sum(blocks per layer) inverter calls.
pub fn backward_walk_chain(
    chain: &LayeredChain,
    y_star: &Bits,
    inverter: &dyn InverterOracle,
) -> Result<WalkOutcome> {
    let n = chain.base().in_width();
    assert_eq!(y_star.len(), chain.out_width(), "target width mismatch");
    let mut calls = 0usize;
    let mut current = y_star.clone();
    for layer in (0..chain.num_layers()).rev() {
        let blocks = n + layer;
        let drop = layer;
        let full_blocks = if drop == 0 { blocks } else { blocks - 1 };
        let mut preimages = Bits::with_capacity(blocks * n);
        for b in 0..full_blocks {
            let target = current.slice(b * (n + 1), n + 1);
            calls += 1;
            match inverter.invert(chain.base(), &target)? {
                Inversion::NonMember => {
                    return Ok(WalkOutcome {
                        solution: target,
                        inverter_calls: calls,
                    });
                }
                Inversion::Member(p) => preimages.push_bits(&p),
            }
        }
        if drop > 0 {
            let kept = n + 1 - drop;
            let tail = current.slice(full_blocks * (n + 1), kept);
            let truncated = truncated_base(chain.base(), kept);
            calls += 1;
            match inverter.invert(&truncated, &tail)? {
                Inversion::NonMember => {
                    // no base output starts with the tail, so any completion
                    // is outside the base range
                    let mut solution = tail;
                    for _ in 0..drop {
                        solution.push(false);
                    }
                    return Ok(WalkOutcome {
                        solution,
                        inverter_calls: calls,
                    });
                }
                Inversion::Member(p) => preimages.push_bits(&p),
            }
        }
        current = preimages;
    }
    Err(Error::WalkExhausted { preimage: current })
}

/// The base map with only the first `kept` output bits; not stretching, but
/// inverters answer for it all the same.
fn truncated_base(base: &StretchMap, kept: usize) -> StretchMap {
    if let Some(c) = base.circuit() {
        StretchMap::circuit_backed_unchecked(base.kind(), c.truncated(kept))
    } else {
        let inner = base.clone();
        StretchMap::semantic_unchecked(
            MapKind::Custom,
            base.in_width(),
            kept,
            move |x: &Bits| inner.eval(x).slice(0, kept),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::ggm::pad_chain;
    use crate::oracles::BruteForceInverter;

    fn b(s: &str) -> Bits {
        s.parse().unwrap()
    }

    #[test]
    fn duplicate_tree_yields_a_mismatched_pair() {
        // any target with two distinct blocks exposes a pair ab with a != b
        let plan = GgmPlan::new(fixtures::duplicate_map(2), 2).unwrap();
        let y = b("01010111"); // blocks 01 01 01 11
        let inv = BruteForceInverter::default();
        let walk = backward_walk_ggm(&plan, &y, &inv).unwrap();
        assert_eq!(walk.solution.len(), 4);
        let (a, bb) = (walk.solution.slice(0, 2), walk.solution.slice(2, 2));
        assert_ne!(a, bb);
        assert!(walk.inverter_calls <= 4);
    }

    #[test]
    fn in_range_targets_exhaust_with_the_preimage() {
        // an injective base pins every preimage, so the walk must come back
        // out at the seed
        let plan = GgmPlan::new(fixtures::mirror_map(3), 3).unwrap();
        let x = b("110");
        let y = plan.expand(&x);
        let inv = BruteForceInverter::default();
        match backward_walk_ggm(&plan, &y, &inv) {
            Err(Error::WalkExhausted { preimage }) => {
                assert_eq!(preimage, x);
                assert_eq!(plan.expand(&preimage), y);
            }
            other => panic!("expected exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn colliding_preimages_may_shortcut_to_a_solution() {
        // with a non-injective base the walk can leave the original expansion
        // path; whatever it returns must still be certified outside the range
        let mut rng = fixtures::rng(15);
        let base = fixtures::random_stretch_map(&mut rng, 3, 6, 10);
        let plan = GgmPlan::new(base.clone(), 3).unwrap();
        let y = plan.expand(&b("110"));
        let inv = BruteForceInverter::default();
        match backward_walk_ggm(&plan, &y, &inv) {
            Ok(walk) => {
                assert!(matches!(
                    inv.invert(&base, &walk.solution).unwrap(),
                    crate::oracles::Inversion::NonMember
                ));
            }
            Err(Error::WalkExhausted { preimage }) => {
                assert_eq!(plan.expand(&preimage), y);
            }
            Err(e) => panic!("unexpected error {e}"),
        }
    }

    #[test]
    fn ggm_walks_verify_and_stay_within_budget() {
        let inv = BruteForceInverter::default();
        let mut rng = fixtures::rng(16);
        for trial in 0..30 {
            let base = fixtures::random_stretch_map(&mut rng, 4, 8, 16);
            let plan = GgmPlan::new(base.clone(), 3).unwrap();
            // sample non-range targets: the range has at most 16 elements
            let range: std::collections::HashSet<Bits> = (0..16u64)
                .map(|p| plan.expand(&Bits::from_u64_msb(p, 4)))
                .collect();
            let y = loop {
                let cand = Bits::random(&mut rng, 32);
                if !range.contains(&cand) {
                    break cand;
                }
            };
            let walk = backward_walk_ggm(&plan, &y, &inv).unwrap();
            assert!(walk.inverter_calls <= 8, "trial {trial}");
            assert!(matches!(
                inv.invert(&base, &walk.solution).unwrap(),
                crate::oracles::Inversion::NonMember
            ));
        }
    }

    #[test]
    fn chain_walk_finds_base_solutions() {
        let inv = BruteForceInverter::default();
        let mut rng = fixtures::rng(17);
        let base = fixtures::parity_extend_map(3);
        let chain = pad_chain(base.clone()).unwrap();
        let range: std::collections::HashSet<Bits> = (0..512u64)
            .map(|p| chain.eval(&Bits::from_u64_msb(p, 9)))
            .collect();
        let blocks_total: usize = (0..3).map(|i| 3 + i).sum();
        for trial in 0..25 {
            let y = loop {
                let cand = Bits::random(&mut rng, 18);
                if !range.contains(&cand) {
                    break cand;
                }
            };
            let walk = backward_walk_chain(&chain, &y, &inv).unwrap();
            assert_eq!(walk.solution.len(), 4);
            assert!(walk.inverter_calls <= blocks_total, "trial {trial}");
            assert!(matches!(
                inv.invert(&base, &walk.solution).unwrap(),
                crate::oracles::Inversion::NonMember
            ));
        }
    }

    #[test]
    fn chain_walk_exhausts_on_range_elements() {
        let inv = BruteForceInverter::default();
        let base = fixtures::parity_extend_map(3);
        let chain = pad_chain(base).unwrap();
        let x = b("010011101");
        let y = chain.eval(&x);
        match backward_walk_chain(&chain, &y, &inv) {
            Err(Error::WalkExhausted { preimage }) => {
                assert_eq!(chain.eval(&preimage), y);
            }
            other => panic!("expected exhaustion, got {other:?}"),
        }
    }
}
