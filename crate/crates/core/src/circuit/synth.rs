//! Truth-table-to-circuit synthesis by Shannon cofactor decomposition.
//!
//! The produced circuit has at most `4 * len` gates (the recursion satisfies
//! S(len) <= 3*len - 4 plus small constants for the degenerate cases). Sharper
//! size bounds are out of scope; only functional correctness is promised.

use crate::bits::Bits;
use crate::circuit::{table_inputs, Circuit, CircuitBuilder, Ref};

/// Builds a circuit whose truth table of length `table.len()` equals `table`.
/// Positions past the table length are unconstrained and synthesize as zero.
pub fn synthesize(table: &Bits) -> Circuit {
    assert!(!table.is_empty(), "cannot synthesize an empty table");
    let n = table_inputs(table.len());
    let full = 1usize << n;
    // pad the don't-care tail with zeros
    let padded = if table.len() == full {
        table.clone()
    } else {
        let mut p = Bits::zeros(full);
        for i in 0..table.len() {
            p.set(i, table.get(i));
        }
        p
    };
    let mut b = CircuitBuilder::new(n);
    let out = synth_range(&mut b, &padded, 0, full, 0);
    b.finish(vec![out])
}

fn range_all_equal(t: &Bits, lo: usize, size: usize) -> Option<bool> {
    let v = t.get(lo);
    for i in lo + 1..lo + size {
        if t.get(i) != v {
            return None;
        }
    }
    Some(v)
}

fn synth_range(b: &mut CircuitBuilder, t: &Bits, lo: usize, size: usize, var: usize) -> Ref {
    if let Some(v) = range_all_equal(t, lo, size) {
        return b.const_bit(v);
    }
    let x = Ref::Input(var);
    if size == 2 {
        // the constant cases were handled above
        return if t.get(lo) { b.not(x) } else { x };
    }
    let half = size / 2;
    let mut halves_equal = true;
    for i in 0..half {
        if t.get(lo + i) != t.get(lo + half + i) {
            halves_equal = false;
            break;
        }
    }
    if halves_equal {
        return synth_range(b, t, lo, half, var + 1);
    }
    let f0 = synth_range(b, t, lo, half, var + 1);
    let f1 = synth_range(b, t, lo + half, half, var + 1);
    b.select(x, f0, f1)
}
