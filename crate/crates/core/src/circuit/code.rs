//! Fixed-width bit encoding of circuits.
//!
//! A code has `s_max` slots. Each slot holds 2 kind bits (00 AND, 01 OR,
//! 10 NOT, 11 pass-through of the first ref) and two refs of
//! `w = ceil(log2(n_in + s_max))` bits addressing inputs first, then earlier
//! slots. A final `ceil(log2 s_max)` bits (absent when `s_max = 1`) select
//! the output slot. Decoding is total: refs at or past the current slot clamp
//! to input 0 and the output selector clamps into range, so every payload is
//! some circuit, while every single-output circuit with at most `s_max` gates
//! has a payload (pass-through slots absorb the slack).

use crate::bits::Bits;
use crate::circuit::{Circuit, Gate, GateKind, Ref};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct CircuitCode {
    s_max: usize,
    n_in: usize,
    payload: Bits,
}

fn ceil_log2(x: usize) -> usize {
    assert!(x >= 1);
    if x == 1 {
        0
    } else {
        (x - 1).ilog2() as usize + 1
    }
}

/// Ref width for a code geometry.
pub fn ref_width(s_max: usize, n_in: usize) -> usize {
    ceil_log2(n_in + s_max)
}

/// Total payload width: `s_max * (2 + 2w) + ceil(log2 s_max)`.
pub fn code_width(s_max: usize, n_in: usize) -> usize {
    assert!(s_max >= 1 && n_in >= 1);
    s_max * (2 + 2 * ref_width(s_max, n_in)) + ceil_log2(s_max)
}

impl CircuitCode {
    pub fn from_payload(s_max: usize, n_in: usize, payload: Bits) -> CircuitCode {
        assert_eq!(payload.len(), code_width(s_max, n_in));
        CircuitCode {
            s_max,
            n_in,
            payload,
        }
    }

    pub fn s_max(&self) -> usize {
        self.s_max
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn payload(&self) -> &Bits {
        &self.payload
    }

    pub fn width(&self) -> usize {
        self.payload.len()
    }
}

/// Encodes a single-output circuit with at most `s_max` gates. The result
/// decodes to a functionally identical circuit.
pub fn encode_circuit(c: &Circuit, s_max: usize) -> Result<CircuitCode> {
    if c.n_out() != 1 {
        return Err(Error::OutputArity { got: c.n_out() });
    }
    if c.size() > s_max {
        return Err(Error::CircuitTooLarge {
            size: c.size(),
            s_max,
        });
    }
    let n_in = c.n_in();
    let w = ref_width(s_max, n_in);
    let out_bits = ceil_log2(s_max);
    let mut payload = Bits::zeros(code_width(s_max, n_in));

    let ref_value = |r: Ref| -> u64 {
        match r {
            Ref::Input(j) => j as u64,
            Ref::Gate(k) => (n_in + k) as u64,
        }
    };
    let write_slot = |payload: &mut Bits, slot: usize, kind: u64, a: u64, bb: u64| {
        let base = slot * (2 + 2 * w);
        payload.write_u64(base, 2, kind);
        payload.write_u64(base + 2, w, a);
        payload.write_u64(base + 2 + w, w, bb);
    };

    let out = c.outputs()[0];
    let out_slot;
    if let Ref::Input(j) = out {
        // the function ignores every gate, so all slots pass the input through
        for slot in 0..s_max {
            write_slot(&mut payload, slot, 0b11, j as u64, 0);
        }
        out_slot = s_max - 1;
    } else {
        for (i, g) in c.gates().iter().enumerate() {
            let kind = match g.kind {
                GateKind::And => 0b00,
                GateKind::Or => 0b01,
                GateKind::Not => 0b10,
            };
            let b = if g.kind == GateKind::Not { g.a } else { g.b };
            write_slot(&mut payload, i, kind, ref_value(g.a), ref_value(b));
        }
        for slot in c.size()..s_max {
            write_slot(&mut payload, slot, 0b11, ref_value(out), 0);
        }
        out_slot = if c.size() < s_max {
            s_max - 1
        } else {
            match out {
                Ref::Gate(k) => k,
                Ref::Input(_) => unreachable!(),
            }
        };
    }
    payload.write_u64(s_max * (2 + 2 * w), out_bits, out_slot as u64);
    Ok(CircuitCode::from_payload(s_max, n_in, payload))
}

/// Total decoding; never fails. Pass-through slots alias their first ref and
/// create no gate, so the result stays within the {AND, OR, NOT} basis.
pub fn decode_circuit(code: &CircuitCode) -> Circuit {
    let (s_max, n_in, w) = (code.s_max, code.n_in, ref_width(code.s_max, code.n_in));
    let payload = &code.payload;
    // what each slot resolved to
    let mut slot_refs: Vec<Ref> = Vec::with_capacity(s_max);
    let mut gates: Vec<Gate> = Vec::new();

    for slot in 0..s_max {
        let base = slot * (2 + 2 * w);
        let kind = payload.read_u64(base, 2);
        let resolve = |raw: u64| -> Ref {
            let raw = raw as usize;
            if raw >= n_in + slot {
                Ref::Input(0)
            } else if raw < n_in {
                Ref::Input(raw)
            } else {
                slot_refs[raw - n_in]
            }
        };
        let a = resolve(payload.read_u64(base + 2, w));
        let b = resolve(payload.read_u64(base + 2 + w, w));
        let r = match kind {
            0b11 => a,
            _ => {
                let kind = match kind {
                    0b00 => GateKind::And,
                    0b01 => GateKind::Or,
                    _ => GateKind::Not,
                };
                gates.push(Gate { kind, a, b });
                Ref::Gate(gates.len() - 1)
            }
        };
        slot_refs.push(r);
    }

    let out_bits = ceil_log2(s_max);
    let mut out_slot = payload.read_u64(s_max * (2 + 2 * w), out_bits) as usize;
    if out_slot >= s_max {
        out_slot = s_max - 1;
    }
    let output = slot_refs[out_slot];
    Circuit::new(n_in, gates, vec![output]).expect("decoded refs are valid by construction")
}
