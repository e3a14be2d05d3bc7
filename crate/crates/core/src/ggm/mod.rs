//! Tree expansion of doubling maps, the padding chain that turns any
//! one-bit-stretch map into a doubling one, backward inversion walks, and
//! the end-to-end solver that answers any instance from a hard truth table
//! plus an inverter.

mod pipeline;
mod succinct;
mod walk;

pub use pipeline::{
    hardness_extract, phi_hard_tt_fixed, solve_empty_from_hard_tt, ExtractOutcome, FixedHardTt,
    HardTableSource, PipelineOutcome,
};
pub use succinct::{ggm_depth, ggm_succinct_circuit};
pub use walk::{backward_walk_chain, backward_walk_ggm, WalkOutcome};

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::stretch::{Evaluate, MapKind, StretchMap};

/// A doubling map iterated to depth `k`: block `i` of the output follows the
/// half-selection path spelled by the k-bit binary form of `i`, most
/// significant bit first (0 takes the first half, 1 the second).
#[derive(Clone)]
pub struct GgmPlan {
    base: StretchMap,
    depth: usize,
}

impl GgmPlan {
    pub fn new(base: StretchMap, depth: usize) -> Result<GgmPlan> {
        if base.out_width() != 2 * base.in_width() {
            return Err(Error::Infeasible {
                what: "tree expansion",
                detail: format!(
                    "base must exactly double its width, got {} -> {}",
                    base.in_width(),
                    base.out_width()
                ),
            });
        }
        if depth < 1 {
            return Err(Error::Infeasible {
                what: "tree expansion",
                detail: "depth must be at least 1".into(),
            });
        }
        Ok(GgmPlan { base, depth })
    }

    pub fn base(&self) -> &StretchMap {
        &self.base
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn block_width(&self) -> usize {
        self.base.in_width()
    }

    pub fn out_width(&self) -> usize {
        self.base.in_width() << self.depth
    }

    /// Expands level by level: 2^k - 1 base applications total.
    pub fn expand(&self, seed: &Bits) -> Bits {
        assert_eq!(seed.len(), self.base.in_width());
        let mut level = seed.clone();
        let n = self.base.in_width();
        for _ in 0..self.depth {
            let blocks = level.len() / n;
            let mut next = Bits::with_capacity(2 * level.len());
            for b in 0..blocks {
                next.push_bits(&self.base.eval(&level.slice(b * n, n)));
            }
            level = next;
        }
        level
    }
}

impl Evaluate for GgmPlan {
    fn eval_bits(&self, input: &Bits) -> Bits {
        self.expand(input)
    }
}

/// The expanded map as an instance in its own right.
pub fn ggm_expand(base: StretchMap, depth: usize) -> Result<StretchMap> {
    let plan = GgmPlan::new(base, depth)?;
    let (in_w, out_w) = (plan.block_width(), plan.out_width());
    StretchMap::semantic(MapKind::Ggm, in_w, out_w, plan)
}

/// Keeps only the first `m_new` output bits.
pub fn truncate_outputs(map: &StretchMap, m_new: usize) -> Result<StretchMap> {
    if m_new <= map.in_width() || m_new > map.out_width() {
        return Err(Error::Infeasible {
            what: "output truncation",
            detail: format!(
                "kept width must stretch and not exceed the map: in {} < kept {m_new} <= out {}",
                map.in_width(),
                map.out_width()
            ),
        });
    }
    if m_new == map.out_width() {
        return Ok(map.clone());
    }
    if let Some(c) = map.circuit() {
        return StretchMap::circuit_backed(map.kind(), c.truncated(m_new));
    }
    let inner = map.clone();
    StretchMap::semantic(map.kind(), map.in_width(), m_new, move |x: &Bits| {
        inner.eval(x).slice(0, m_new)
    })
}

/// Lifts a solution of a truncated map back to the original output width by
/// zero padding; anything outside the truncated range stays outside the
/// original range under any padding.
pub fn lift_truncated_solution(solution: &Bits, out_width: usize) -> Bits {
    assert!(solution.len() <= out_width);
    let mut lifted = solution.clone();
    while lifted.len() < out_width {
        lifted.push(false);
    }
    lifted
}

/// The chain of block-apply-and-drop layers turning a one-bit-stretch map on
/// `n` bits into a doubling map on `n^2` bits. Layer `i` takes `(n+i)`
/// blocks of `n` bits, applies the base to each, and drops the last `i` bits
/// of the concatenation, so it maps `(n+i)n` bits to `(n+i+1)n`.
#[derive(Clone)]
pub struct LayeredChain {
    base: StretchMap,
    n: usize,
}

#[derive(Clone)]
struct PadLayer {
    base: StretchMap,
    blocks: usize,
    drop: usize,
}

impl PadLayer {
    fn eval(&self, input: &Bits) -> Bits {
        let n = self.base.in_width();
        assert_eq!(input.len(), self.blocks * n);
        let mut out = Bits::with_capacity(self.blocks * (n + 1));
        for b in 0..self.blocks {
            out.push_bits(&self.base.eval(&input.slice(b * n, n)));
        }
        out.slice(0, self.blocks * (n + 1) - self.drop)
    }
}

impl Evaluate for PadLayer {
    fn eval_bits(&self, input: &Bits) -> Bits {
        self.eval(input)
    }
}

impl LayeredChain {
    pub fn base(&self) -> &StretchMap {
        &self.base
    }

    pub fn num_layers(&self) -> usize {
        self.n
    }

    pub fn in_width(&self) -> usize {
        self.n * self.n
    }

    pub fn out_width(&self) -> usize {
        2 * self.n * self.n
    }

    /// Widths of layer `i`: `((n+i)n, (n+i+1)n)`.
    pub fn layer_widths(&self, i: usize) -> (usize, usize) {
        ((self.n + i) * self.n, (self.n + i + 1) * self.n)
    }

    /// Layer `i` as a map of its own.
    pub fn layer_map(&self, i: usize) -> StretchMap {
        assert!(i < self.n);
        let layer = PadLayer {
            base: self.base.clone(),
            blocks: self.n + i,
            drop: i,
        };
        let (in_w, out_w) = self.layer_widths(i);
        StretchMap::semantic(MapKind::PadChain, in_w, out_w, layer)
            .expect("pad layers always stretch")
    }

    pub fn eval(&self, input: &Bits) -> Bits {
        let mut cur = input.clone();
        for i in 0..self.n {
            let layer = PadLayer {
                base: self.base.clone(),
                blocks: self.n + i,
                drop: i,
            };
            cur = layer.eval(&cur);
        }
        cur
    }

    /// The composed doubling map. Gate-backed when the base is, by splicing
    /// one copy of the base per block per layer, so solver-driven inverters
    /// can query it; semantic otherwise.
    pub fn compose(&self) -> StretchMap {
        if let Some(base_circuit) = self.base.circuit() {
            let n = self.n;
            let mut b = crate::circuit::CircuitBuilder::new(n * n);
            let mut wires: Vec<crate::circuit::Ref> =
                (0..n * n).map(crate::circuit::Ref::Input).collect();
            for i in 0..n {
                let mut next = Vec::with_capacity((n + i + 1) * n);
                for block in 0..n + i {
                    next.extend(b.splice(base_circuit, &wires[block * n..(block + 1) * n]));
                }
                next.truncate((n + i) * (n + 1) - i);
                wires = next;
            }
            let composed = b.finish(wires);
            return StretchMap::circuit_backed(MapKind::PadChain, composed)
                .expect("the composed chain doubles its width");
        }
        let chain = self.clone();
        StretchMap::semantic(
            MapKind::PadChain,
            self.in_width(),
            self.out_width(),
            move |x: &Bits| chain.eval(x),
        )
        .expect("the composed chain doubles its width")
    }
}

/// Builds the chain for a base map with exactly one bit of stretch.
pub fn pad_chain(base: StretchMap) -> Result<LayeredChain> {
    if base.out_width() != base.in_width() + 1 {
        return Err(Error::Infeasible {
            what: "padding chain",
            detail: format!(
                "base must stretch by exactly one bit, got {} -> {}",
                base.in_width(),
                base.out_width()
            ),
        });
    }
    Ok(LayeredChain {
        n: base.in_width(),
        base,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn b(s: &str) -> Bits {
        s.parse().unwrap()
    }

    #[test]
    fn duplicate_expansion_repeats_the_seed() {
        let plan = GgmPlan::new(fixtures::duplicate_map(3), 3).unwrap();
        let out = plan.expand(&b("101"));
        assert_eq!(out.len(), 24);
        for i in 0..8 {
            assert_eq!(out.slice(3 * i, 3), b("101"));
        }
    }

    #[test]
    fn mirror_blocks_follow_hand_traced_paths() {
        // base x -> x || reverse(x); depth 2 blocks are x, rev x, rev x, x
        let plan = GgmPlan::new(fixtures::mirror_map(2), 2).unwrap();
        let x = b("01");
        let out = plan.expand(&x);
        assert_eq!(out.slice(0, 2), b("01"));
        assert_eq!(out.slice(2, 2), b("10"));
        assert_eq!(out.slice(4, 2), b("10"));
        assert_eq!(out.slice(6, 2), b("01"));
    }

    #[test]
    fn expansion_width_formula() {
        for k in 1..=4 {
            let m = ggm_expand(fixtures::duplicate_map(4), k).unwrap();
            assert_eq!(m.out_width(), 4 << k);
        }
    }

    #[test]
    fn expand_matches_selector_composition() {
        // independently follow the selector paths for every block
        let mut rng = fixtures::rng(7);
        let base = fixtures::random_stretch_map(&mut rng, 4, 8, 14);
        let plan = GgmPlan::new(base.clone(), 3).unwrap();
        let x = b("1011");
        let out = plan.expand(&x);
        for i in 0..8usize {
            let mut cur = x.clone();
            for bit in (0..3).rev() {
                let both = base.eval(&cur);
                cur = if (i >> bit) & 1 == 0 {
                    both.slice(0, 4)
                } else {
                    both.slice(4, 4)
                };
            }
            assert_eq!(out.slice(4 * i, 4), cur, "block {i}");
        }
    }

    #[test]
    fn ggm_needs_a_doubling_base() {
        assert!(GgmPlan::new(fixtures::parity_extend_map(3), 2).is_err());
        assert!(GgmPlan::new(fixtures::duplicate_map(3), 0).is_err());
    }

    #[test]
    fn truncation_cases() {
        let m = fixtures::duplicate_map(1); // 1 -> 2
        let same = truncate_outputs(&m, 2).unwrap();
        assert_eq!(same.eval(&b("1")), b("11"));

        let wide = fixtures::duplicate_map(3); // 3 -> 6
        let cut = truncate_outputs(&wide, 4).unwrap();
        assert_eq!(cut.out_width(), 4);
        assert_eq!(cut.eval(&b("101")), b("1011"));
        // circuit backend carries over
        assert!(cut.circuit().is_some());

        assert!(truncate_outputs(&wide, 3).is_err());
        assert!(truncate_outputs(&wide, 7).is_err());
    }

    #[test]
    fn truncated_solutions_lift() {
        // exhaustive at width 3 -> 6 truncated to 4: anything outside the
        // truncation, zero padded, is outside the original
        let wide = fixtures::mirror_map(3);
        let cut = truncate_outputs(&wide, 4).unwrap();
        let mut cut_range = std::collections::HashSet::new();
        let mut full_range = std::collections::HashSet::new();
        for p in 0..8u64 {
            let x = Bits::from_u64_msb(p, 3);
            cut_range.insert(cut.eval(&x));
            full_range.insert(wide.eval(&x));
        }
        for v in 0..16u64 {
            let y = Bits::from_u64_msb(v, 4);
            if !cut_range.contains(&y) {
                let lifted = lift_truncated_solution(&y, 6);
                assert!(!full_range.contains(&lifted));
            }
        }
    }

    #[test]
    fn chain_layer_widths() {
        let chain = pad_chain(fixtures::parity_extend_map(3)).unwrap();
        assert_eq!(chain.num_layers(), 3);
        assert_eq!(chain.layer_widths(0), (9, 12));
        assert_eq!(chain.layer_widths(1), (12, 15));
        assert_eq!(chain.layer_widths(2), (15, 18));
        assert_eq!(chain.in_width(), 9);
        assert_eq!(chain.out_width(), 18);
    }

    #[test]
    fn chain_composition_matches_per_layer_evaluation() {
        let base = fixtures::parity_extend_map(3);
        let chain = pad_chain(base).unwrap();
        let x = b("101100110");
        // hand-composed: run each layer map one at a time
        let mut cur = x.clone();
        for i in 0..3 {
            cur = chain.layer_map(i).eval(&cur);
        }
        assert_eq!(chain.eval(&x), cur);
        assert_eq!(chain.compose().eval(&x), cur);
        assert_eq!(cur.len(), 18);
    }

    #[test]
    fn gate_backed_composition_agrees_everywhere() {
        let chain = pad_chain(fixtures::parity_extend_map(3)).unwrap();
        let composed = chain.compose();
        assert!(composed.circuit().is_some());
        for p in 0..512u64 {
            let x = Bits::from_u64_msb(p, 9);
            assert_eq!(composed.eval(&x), chain.eval(&x));
        }
    }

    #[test]
    fn chain_needs_one_bit_stretch() {
        assert!(pad_chain(fixtures::duplicate_map(3)).is_err());
    }
}
