//! The circuit-encoding-to-truth-table map.
//!
//! A payload is a fixed-width circuit code for `s_max = floor(N / 2ceil(log2 N))`
//! slots on `ceil(log2 N)` inputs; the map decodes it and emits the decoded
//! circuit's `N`-bit table. Every table computable within `s_max` gates is in
//! the range, so anything outside needs strictly larger circuits.

use crate::bits::Bits;
use crate::circuit::{
    all_input_masks, code_width, decode_circuit, mux_gadget, table_inputs, truth_table,
    CircuitBuilder, CircuitCode, Ref,
};
use crate::error::{Error, Result};
use crate::stretch::{Evaluate, MapKind, StretchMap};

#[derive(Clone, Debug)]
pub struct HardTtGeometry {
    pub n_len: usize,
    pub n_in: usize,
    pub s_max: usize,
    pub in_width: usize,
}

/// Geometry for table length `N`; errors when the code would not be shorter
/// than the table (too-small lengths are brute-force territory, not valid
/// instances).
pub fn hard_tt_geometry(n_len: usize) -> Result<HardTtGeometry> {
    let n_in = table_inputs(n_len);
    let s_max = n_len / (2 * n_in.max(1));
    if s_max == 0 {
        return Err(Error::NotStretching {
            in_width: 0,
            out_width: n_len,
            detail: format!("table length {n_len} leaves no room for even one gate slot"),
        });
    }
    let in_width = code_width(s_max, n_in);
    if in_width >= n_len {
        return Err(Error::NotStretching {
            in_width,
            out_width: n_len,
            detail: format!(
                "coding {s_max} slots on {n_in} inputs needs {in_width} bits, not below {n_len}"
            ),
        });
    }
    Ok(HardTtGeometry {
        n_len,
        n_in,
        s_max,
        in_width,
    })
}

#[derive(Clone)]
struct HardTtMap {
    geom: HardTtGeometry,
}

impl Evaluate for HardTtMap {
    fn eval_bits(&self, input: &Bits) -> Bits {
        // table lengths up to a word go through the bit-parallel evaluator;
        // full-range sweeps call this tens of millions of times
        if self.geom.n_len <= 64 && self.geom.in_width <= 64 {
            let table = self.geom.eval_payload_u64(input.to_u64_msb());
            return Bits::from_u64_lsb(table, self.geom.n_len);
        }
        let code = CircuitCode::from_payload(self.geom.s_max, self.geom.n_in, input.clone());
        let c = decode_circuit(&code);
        truth_table(&c, self.geom.n_len).expect("decoded circuit has the right arity")
    }
}

impl HardTtGeometry {
    /// Bit-parallel payload evaluation for table lengths up to 64: returns
    /// the table as a word with position `p` in bit `p`. Agrees with the
    /// stretch-map evaluation; used for full-range sweeps.
    pub fn eval_payload_u64(&self, payload: u64) -> u64 {
        debug_assert!(self.n_len <= 64 && self.in_width <= 64);
        let w = crate::circuit::ref_width(self.s_max, self.n_in);
        let field = |pos: usize, width: usize| -> usize {
            ((payload >> (self.in_width - pos - width)) & ((1u64 << width) - 1)) as usize
        };
        let input_masks = all_input_masks(self.n_in);
        let mut slot_masks = [0u64; 64];
        for slot in 0..self.s_max {
            let base = slot * (2 + 2 * w);
            let kind = field(base, 2);
            let resolve = |raw: usize| -> u64 {
                if raw >= self.n_in + slot {
                    input_masks[0]
                } else if raw < self.n_in {
                    input_masks[raw]
                } else {
                    slot_masks[raw - self.n_in]
                }
            };
            let a = resolve(field(base + 2, w));
            let b = resolve(field(base + 2 + w, w));
            slot_masks[slot] = match kind {
                0b00 => a & b,
                0b01 => a | b,
                0b10 => !a,
                _ => a,
            };
        }
        let out_bits = if self.s_max == 1 {
            0
        } else {
            (self.s_max - 1).ilog2() as usize + 1
        };
        let mut out_slot = if out_bits == 0 {
            0
        } else {
            field(self.s_max * (2 + 2 * w), out_bits)
        };
        if out_slot >= self.s_max {
            out_slot = self.s_max - 1;
        }
        let care = if self.n_len == 64 {
            u64::MAX
        } else {
            (1u64 << self.n_len) - 1
        };
        slot_masks[out_slot] & care
    }
}

/// The instance for table length `N`.
pub fn phi_hard_tt(n_len: usize) -> Result<StretchMap> {
    let geom = hard_tt_geometry(n_len)?;
    StretchMap::semantic(
        MapKind::HardTt,
        geom.in_width,
        n_len,
        HardTtMap { geom },
    )
}

/// The same map built structurally as gates, for solver-backed inversion:
/// per output point, field muxes resolve each slot's operands against the
/// point bits and earlier slots, a four-way select applies the slot kind,
/// and the output selector picks the terminal slot. Size grows like
/// `N * s_max * 2^w`, far below what exhaustive per-output synthesis needs.
pub fn phi_hard_tt_circuit(n_len: usize) -> Result<StretchMap> {
    let geom = hard_tt_geometry(n_len)?;
    let w = crate::circuit::ref_width(geom.s_max, geom.n_in);
    let mut b = CircuitBuilder::new(geom.in_width);

    // field wires
    let slot_field = |slot: usize| -> (Ref, Ref, Vec<Ref>, Vec<Ref>) {
        let base = slot * (2 + 2 * w);
        let k0 = Ref::Input(base);
        let k1 = Ref::Input(base + 1);
        let a: Vec<Ref> = (0..w).map(|t| Ref::Input(base + 2 + t)).collect();
        let bb: Vec<Ref> = (0..w).map(|t| Ref::Input(base + 2 + w + t)).collect();
        (k0, k1, a, bb)
    };
    let out_bits = if geom.s_max == 1 {
        0
    } else {
        (geom.s_max - 1).ilog2() as usize + 1
    };
    let out_sel: Vec<Ref> = (0..out_bits)
        .map(|t| Ref::Input(geom.s_max * (2 + 2 * w) + t))
        .collect();

    let field_mux = mux_gadget(1 << w);
    let kind_mux = mux_gadget(4);
    let slot_mux = mux_gadget(geom.s_max);

    let mut outputs = Vec::with_capacity(n_len);
    for p in 0..n_len {
        // wire values of the inputs at this point, as constants
        let point: Vec<Ref> = (0..geom.n_in)
            .map(|j| b.const_bit((p >> (geom.n_in - 1 - j)) & 1 == 1))
            .collect();
        let mut slot_vals: Vec<Ref> = Vec::with_capacity(geom.s_max);
        for slot in 0..geom.s_max {
            let (k0, k1, a_field, b_field) = slot_field(slot);
            // operand bus: point bits, then earlier slots, padded with the
            // first point bit (the decoder's clamp target)
            let mut bus: Vec<Ref> = point.clone();
            bus.extend(&slot_vals);
            bus.resize(1 << w, point[0]);
            let mut a_in = bus.clone();
            a_in.extend(&a_field);
            let a_val = b.splice(&field_mux, &a_in)[0];
            let mut b_in = bus;
            b_in.extend(&b_field);
            let b_val = b.splice(&field_mux, &b_in)[0];

            let v_and = b.and(a_val, b_val);
            let v_or = b.or(a_val, b_val);
            let v_not = b.not(a_val);
            let kin = vec![v_and, v_or, v_not, a_val, k0, k1];
            slot_vals.push(b.splice(&kind_mux, &kin)[0]);
        }
        if geom.s_max == 1 {
            outputs.push(slot_vals[0]);
        } else {
            let mut sin = slot_vals;
            sin.extend(&out_sel);
            outputs.push(b.splice(&slot_mux, &sin)[0]);
        }
    }
    StretchMap::circuit_backed(MapKind::HardTt, b.finish(outputs))
}
