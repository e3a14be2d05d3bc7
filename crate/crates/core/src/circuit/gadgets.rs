//! Reusable circuit fragments: bus indexing, half selection, parity.
//!
//! Measured gate counts, asserted in tests for n up to 64:
//!   mux_gadget        <= 4n
//!   lr_select_gadget  <= 3n + 1
//!   parity_gadget     <= 4(n-1)
//!   inner_product     <= 5n - 4

use crate::circuit::{table_inputs, Circuit, CircuitBuilder, Ref};

/// Selector width used by [`mux_gadget`].
pub fn mux_sel_bits(n: usize) -> usize {
    if n == 1 {
        0
    } else {
        table_inputs(n)
    }
}

/// Indexes an `n`-bit bus. Inputs are the bus wires followed by
/// `ceil(log2 n)` selector wires (MSB first); the output is bus bit `j` for
/// selector value `j < n`, and the last bus bit when the selector overflows.
pub fn mux_gadget(n: usize) -> Circuit {
    assert!(n >= 1);
    let sel = mux_sel_bits(n);
    let mut b = CircuitBuilder::new(n + sel);
    let bus: Vec<Ref> = (0..n).map(Ref::Input).collect();
    let sels: Vec<Ref> = (n..n + sel).map(Ref::Input).collect();
    let out = mux_rec(&mut b, &bus, &sels);
    b.finish(vec![out])
}

fn mux_rec(b: &mut CircuitBuilder, bus: &[Ref], sels: &[Ref]) -> Ref {
    if sels.is_empty() || bus.len() == 1 {
        // any residual selector bits address past the bus end; clamp to last
        return *bus.last().unwrap();
    }
    let half = 1usize << (sels.len() - 1);
    if bus.len() <= half {
        // selector MSB set would index past the end: both branches clamp
        return mux_rec(b, bus, &sels[1..]);
    }
    let lo = mux_rec(b, &bus[..half], &sels[1..]);
    let hi = mux_rec(b, &bus[half..], &sels[1..]);
    b.select(sels[0], lo, hi)
}

/// Splits a `2n`-bit bus in half under one control wire: control 0 yields the
/// first `n` bits, control 1 the last `n`. Inputs are the bus then the
/// control; outputs are the selected half in order.
pub fn lr_select_gadget(n: usize) -> Circuit {
    assert!(n >= 1);
    let mut b = CircuitBuilder::new(2 * n + 1);
    let ctrl = Ref::Input(2 * n);
    let outs: Vec<Ref> = (0..n)
        .map(|i| b.select(ctrl, Ref::Input(i), Ref::Input(n + i)))
        .collect();
    b.finish(outs)
}

/// XOR of all `n` input wires.
pub fn parity_gadget(n: usize) -> Circuit {
    assert!(n >= 1);
    let mut b = CircuitBuilder::new(n);
    let mut acc = Ref::Input(0);
    for i in 1..n {
        acc = b.xor(acc, Ref::Input(i));
    }
    b.finish(vec![acc])
}

/// Inner product mod 2 of two `n`-bit vectors (first `n` wires against the
/// last `n`).
pub fn inner_product_gadget(n: usize) -> Circuit {
    assert!(n >= 1);
    let mut b = CircuitBuilder::new(2 * n);
    let mut acc = None;
    for i in 0..n {
        let p = b.and(Ref::Input(i), Ref::Input(n + i));
        acc = Some(match acc {
            None => p,
            Some(a) => b.xor(a, p),
        });
    }
    b.finish(vec![acc.unwrap()])
}
