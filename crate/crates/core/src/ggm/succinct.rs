//! The single-output circuit that indexes into a tree expansion.
//!
//! For a doubling circuit C on n inputs (n a power of two), depth k and a
//! fixed seed x, the produced circuit takes `k + log2(n)` inputs (the block
//! index, then the position inside the block, both MSB first) and computes
//! bit `i*n + j` of the expansion of x: k chained copies of C with a
//! half-selector after each, then a bus index at the end. Its truth table of
//! length `n * 2^k` is exactly the expansion, which bounds the circuit
//! complexity of every string in the expanded range. Measured size stays
//! within `9 * size(C) * k` over the test fixtures (size(C) >= n), the
//! constant asserted in the tests.

use num_rational::Ratio;

use crate::bits::Bits;
use crate::circuit::{lr_select_gadget, mux_gadget, Circuit, CircuitBuilder, Ref};
use crate::error::{Error, Result};

/// The expansion depth `2 * ceil(log2 size) * ceil(1/eps)` (at least 1) used
/// when reducing an instance of the given circuit size at hardness exponent
/// `eps`.
pub fn ggm_depth(instance_size: usize, eps: Ratio<u64>) -> usize {
    let log = if instance_size <= 1 {
        0
    } else {
        (instance_size - 1).ilog2() as usize + 1
    };
    let inv_eps = eps.denom().div_ceil(*eps.numer());
    (2 * log * inv_eps as usize).max(1)
}

/// Builds the indexing circuit for seed `x`.
pub fn ggm_succinct_circuit(c: &Circuit, depth: usize, x: &Bits) -> Result<Circuit> {
    let n = c.n_in();
    if c.n_out() != 2 * n {
        return Err(Error::Infeasible {
            what: "succinct expansion circuit",
            detail: format!("base must double its width, got {} -> {}", n, c.n_out()),
        });
    }
    if !n.is_power_of_two() {
        return Err(Error::Infeasible {
            what: "succinct expansion circuit",
            detail: format!(
                "block width {n} must be a power of two for contiguous table indexing"
            ),
        });
    }
    if depth < 1 || x.len() != n {
        return Err(Error::Infeasible {
            what: "succinct expansion circuit",
            detail: "depth must be >= 1 and the seed must match the base width".into(),
        });
    }
    let log_n = n.trailing_zeros() as usize;
    let mut b = CircuitBuilder::new(depth + log_n);

    // the seed rides along as constants
    let mut state: Vec<Ref> = x.iter().map(|v| b.const_bit(v)).collect();
    let selector = lr_select_gadget(n);
    for level in 0..depth {
        let expanded = b.splice(c, &state);
        let mut wires = expanded;
        wires.push(Ref::Input(level));
        state = b.splice(&selector, &wires);
    }
    let mux = mux_gadget(n);
    let mut wires = state;
    wires.extend((depth..depth + log_n).map(Ref::Input));
    let out = b.splice(&mux, &wires)[0];
    Ok(b.finish(vec![out]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::truth_table;
    use crate::fixtures;
    use crate::ggm::GgmPlan;

    #[test]
    fn depth_formula() {
        assert_eq!(ggm_depth(30, Ratio::new(1, 2)), 20);
        assert_eq!(ggm_depth(8, Ratio::new(1, 4)), 24);
        assert_eq!(ggm_depth(1, Ratio::new(1, 2)), 1); // clamped
    }

    #[test]
    fn duplicate_base_table_is_the_repeated_seed() {
        // duplicate base at n = 4, depth 3: table equals the seed repeated
        let dup = fixtures::duplicate_map(4).circuit().unwrap().clone();
        for seed in 0..16u64 {
            let x = Bits::from_u64_msb(seed, 4);
            let circuit = ggm_succinct_circuit(&dup, 3, &x).unwrap();
            assert_eq!(circuit.n_in(), 5);
            let table = truth_table(&circuit, 32).unwrap();
            for i in 0..8 {
                assert_eq!(table.slice(4 * i, 4), x, "seed {seed} block {i}");
            }
        }
    }

    #[test]
    fn depth_one_is_base_plus_one_selector_layer() {
        let dup = fixtures::duplicate_map(2).circuit().unwrap().clone();
        let x: Bits = "10".parse().unwrap();
        let circuit = ggm_succinct_circuit(&dup, 1, &x).unwrap();
        let plan = GgmPlan::new(fixtures::duplicate_map(2), 1).unwrap();
        assert_eq!(truth_table(&circuit, 4).unwrap(), plan.expand(&x));
    }

    #[test]
    fn random_bases_agree_with_expansion_exhaustively() {
        let mut rng = fixtures::rng(20);
        let mut max_ratio = 0f64;
        for trial in 0..5 {
            let c = fixtures::random_circuit(&mut rng, 4, 8, 8 + 3 * trial);
            let base = crate::stretch::StretchMap::circuit_backed(
                crate::stretch::MapKind::Custom,
                c.clone(),
            )
            .unwrap();
            let plan = GgmPlan::new(base, 3).unwrap();
            for seed in 0..16u64 {
                let x = Bits::from_u64_msb(seed, 4);
                let circuit = ggm_succinct_circuit(&c, 3, &x).unwrap();
                assert_eq!(
                    truth_table(&circuit, 32).unwrap(),
                    plan.expand(&x),
                    "trial {trial} seed {seed}"
                );
                let ratio = circuit.size() as f64 / (c.size() * 3) as f64;
                max_ratio = max_ratio.max(ratio);
            }
        }
        // recorded bound: 9 * size(C) * k over fixtures with size(C) >= n
        assert!(max_ratio <= 9.0, "measured ratio {max_ratio}");
    }

    #[test]
    fn non_power_of_two_blocks_refused() {
        let c = fixtures::mirror_map(3).circuit().unwrap().clone();
        assert!(ggm_succinct_circuit(&c, 2, &"101".parse().unwrap()).is_err());
    }
}
