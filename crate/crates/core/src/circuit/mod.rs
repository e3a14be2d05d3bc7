//! Gate-level boolean circuits over {AND, OR, NOT} with fan-in 2.
//!
//! A circuit names wires by [`Ref`]: either an input or a strictly earlier
//! gate, so acyclicity holds by construction. There are no constant wires;
//! constants are built from gates (`x AND NOT x`). Size is the gate count and
//! NOT gates count toward it.

mod cnf;
mod code;
mod gadgets;
mod synth;
pub mod text;

pub use cnf::{to_cnf, Cnf};
pub use code::{code_width, decode_circuit, encode_circuit, ref_width, CircuitCode};
pub use gadgets::{inner_product_gadget, lr_select_gadget, mux_gadget, mux_sel_bits, parity_gadget};
pub use synth::synthesize;

use std::collections::HashMap;

use crate::bits::Bits;
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum GateKind {
    And,
    Or,
    Not,
}

/// A wire: input `j` or the output of gate `k`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Ref {
    Input(usize),
    Gate(usize),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Gate {
    pub kind: GateKind,
    pub a: Ref,
    /// Ignored for NOT gates.
    pub b: Ref,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Circuit {
    n_in: usize,
    gates: Vec<Gate>,
    outputs: Vec<Ref>,
}

fn check_ref(r: Ref, n_in: usize, gates_before: usize, gate: usize) -> Result<()> {
    let ok = match r {
        Ref::Input(j) => j < n_in,
        Ref::Gate(k) => k < gates_before,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::ForwardRef {
            gate,
            referee: format!("{r:?}"),
        })
    }
}

impl Circuit {
    pub fn new(n_in: usize, gates: Vec<Gate>, outputs: Vec<Ref>) -> Result<Circuit> {
        for (i, g) in gates.iter().enumerate() {
            check_ref(g.a, n_in, i, i)?;
            if g.kind != GateKind::Not {
                check_ref(g.b, n_in, i, i)?;
            }
        }
        for &o in &outputs {
            check_ref(o, n_in, gates.len(), gates.len())?;
        }
        Ok(Circuit {
            n_in,
            gates,
            outputs,
        })
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn n_out(&self) -> usize {
        self.outputs.len()
    }

    /// Number of gates; inputs and output taps are free.
    pub fn size(&self) -> usize {
        self.gates.len()
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn outputs(&self) -> &[Ref] {
        &self.outputs
    }

    /// Same gates, keeping only the first `m` outputs.
    pub fn truncated(&self, m: usize) -> Circuit {
        assert!(m <= self.n_out());
        Circuit {
            n_in: self.n_in,
            gates: self.gates.clone(),
            outputs: self.outputs[..m].to_vec(),
        }
    }

    pub fn eval(&self, input: &Bits) -> Result<Bits> {
        if input.len() != self.n_in {
            return Err(Error::ArityMismatch {
                want: self.n_in,
                got: input.len(),
            });
        }
        let mut wires = vec![false; self.gates.len()];
        let read = |wires: &[bool], r: Ref| match r {
            Ref::Input(j) => input.get(j),
            Ref::Gate(k) => wires[k],
        };
        for (i, g) in self.gates.iter().enumerate() {
            let a = read(&wires, g.a);
            wires[i] = match g.kind {
                GateKind::And => a & read(&wires, g.b),
                GateKind::Or => a | read(&wires, g.b),
                GateKind::Not => !a,
            };
        }
        Ok(Bits::from_fn(self.outputs.len(), |i| {
            read(&wires, self.outputs[i])
        }))
    }

    /// Bit-parallel evaluation on up to 64 assignments at once: bit `p` of
    /// `input_masks[j]` is the value of input `j` under assignment `p`.
    pub fn eval_masked(&self, input_masks: &[u64]) -> Vec<u64> {
        assert_eq!(input_masks.len(), self.n_in);
        let mut wires = vec![0u64; self.gates.len()];
        let read = |wires: &[u64], r: Ref| match r {
            Ref::Input(j) => input_masks[j],
            Ref::Gate(k) => wires[k],
        };
        for (i, g) in self.gates.iter().enumerate() {
            let a = read(&wires, g.a);
            wires[i] = match g.kind {
                GateKind::And => a & read(&wires, g.b),
                GateKind::Or => a | read(&wires, g.b),
                GateKind::Not => !a,
            };
        }
        self.outputs.iter().map(|&o| read(&wires, o)).collect()
    }
}

/// Number of inputs a circuit computing a table of length `len` must have.
/// `ceil(log2 len)`, except that length-1 tables use one input (a 0-input
/// circuit cannot exist in a basis without constant wires).
pub fn table_inputs(len: usize) -> usize {
    assert!(len >= 1);
    if len <= 2 {
        1
    } else {
        (len - 1).ilog2() as usize + 1
    }
}

/// Input masks for bit-parallel evaluation over all `2^n_in` assignments
/// (`n_in <= 6`). Bit `p` of mask `j` is bit `j` of the MSB-first binary
/// representation of `p`.
pub fn all_input_masks(n_in: usize) -> Vec<u64> {
    assert!(n_in <= 6);
    let rows = 1usize << n_in;
    (0..n_in)
        .map(|j| {
            let mut m = 0u64;
            for p in 0..rows {
                if (p >> (n_in - 1 - j)) & 1 == 1 {
                    m |= 1 << p;
                }
            }
            m
        })
        .collect()
}

/// Evaluates a single-output circuit on all points and truncates to `len`
/// bits. Position `p` of the result is the value on the MSB-first binary
/// representation of `p`; positions at or past `len` are dropped.
pub fn truth_table(c: &Circuit, len: usize) -> Result<Bits> {
    if c.n_out() != 1 {
        return Err(Error::OutputArity { got: c.n_out() });
    }
    let want = table_inputs(len);
    if c.n_in() != want {
        return Err(Error::TableArity {
            len,
            want,
            got: c.n_in(),
        });
    }
    if c.n_in() <= 6 {
        let mask = c.eval_masked(&all_input_masks(c.n_in()))[0];
        Ok(Bits::from_fn(len, |p| (mask >> p) & 1 == 1))
    } else {
        let n = c.n_in();
        let mut out = Bits::zeros(len);
        for p in 0..len {
            let x = Bits::from_u64_msb(p as u64, n);
            out.set(p, c.eval(&x)?.get(0));
        }
        Ok(out)
    }
}

/// Incremental circuit construction with ref validation, shared constants and
/// a NOT cache, plus splicing of prebuilt subcircuits.
pub struct CircuitBuilder {
    n_in: usize,
    gates: Vec<Gate>,
    nots: HashMap<Ref, Ref>,
    zero: Option<Ref>,
    one: Option<Ref>,
}

impl CircuitBuilder {
    pub fn new(n_in: usize) -> CircuitBuilder {
        CircuitBuilder {
            n_in,
            gates: Vec::new(),
            nots: HashMap::new(),
            zero: None,
            one: None,
        }
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn size(&self) -> usize {
        self.gates.len()
    }

    pub fn gate(&mut self, kind: GateKind, a: Ref, b: Ref) -> Ref {
        check_ref(a, self.n_in, self.gates.len(), self.gates.len()).expect("builder ref");
        if kind != GateKind::Not {
            check_ref(b, self.n_in, self.gates.len(), self.gates.len()).expect("builder ref");
        }
        self.gates.push(Gate { kind, a, b });
        Ref::Gate(self.gates.len() - 1)
    }

    pub fn and(&mut self, a: Ref, b: Ref) -> Ref {
        self.gate(GateKind::And, a, b)
    }

    pub fn or(&mut self, a: Ref, b: Ref) -> Ref {
        self.gate(GateKind::Or, a, b)
    }

    /// NOT with caching: asking twice for the same wire reuses the gate.
    pub fn not(&mut self, a: Ref) -> Ref {
        if let Some(&r) = self.nots.get(&a) {
            return r;
        }
        let r = self.gate(GateKind::Not, a, a);
        self.nots.insert(a, r);
        r
    }

    pub fn xor(&mut self, a: Ref, b: Ref) -> Ref {
        let o = self.or(a, b);
        let n = self.and(a, b);
        let nn = self.not(n);
        self.and(o, nn)
    }

    /// `if s { b } else { a }`.
    pub fn select(&mut self, s: Ref, a: Ref, b: Ref) -> Ref {
        let ns = self.not(s);
        let l = self.and(ns, a);
        let r = self.and(s, b);
        self.or(l, r)
    }

    pub fn const_zero(&mut self) -> Ref {
        assert!(self.n_in >= 1, "constants need at least one input wire");
        if let Some(r) = self.zero {
            return r;
        }
        let x = Ref::Input(0);
        let nx = self.not(x);
        let r = self.and(x, nx);
        self.zero = Some(r);
        r
    }

    pub fn const_one(&mut self) -> Ref {
        if let Some(r) = self.one {
            return r;
        }
        let z = self.const_zero();
        let r = self.not(z);
        self.one = Some(r);
        r
    }

    pub fn const_bit(&mut self, v: bool) -> Ref {
        if v {
            self.const_one()
        } else {
            self.const_zero()
        }
    }

    /// Copies `sub`'s gates, wiring its inputs to `inputs`; returns the refs
    /// now carrying `sub`'s outputs.
    pub fn splice(&mut self, sub: &Circuit, inputs: &[Ref]) -> Vec<Ref> {
        assert_eq!(inputs.len(), sub.n_in());
        let base = self.gates.len();
        let remap = |r: Ref| match r {
            Ref::Input(j) => inputs[j],
            Ref::Gate(k) => Ref::Gate(base + k),
        };
        for g in sub.gates() {
            self.gates.push(Gate {
                kind: g.kind,
                a: remap(g.a),
                b: remap(g.b),
            });
        }
        sub.outputs().iter().map(|&o| remap(o)).collect()
    }

    pub fn finish(self, outputs: Vec<Ref>) -> Circuit {
        Circuit::new(self.n_in, self.gates, outputs).expect("builder produced invalid refs")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn b(s: &str) -> Bits {
        s.parse().unwrap()
    }

    #[test]
    fn eval_identity_wire() {
        let c = Circuit::new(1, vec![], vec![Ref::Input(0)]).unwrap();
        assert_eq!(c.eval(&b("1")).unwrap(), b("1"));
        assert_eq!(c.eval(&b("0")).unwrap(), b("0"));
    }

    #[test]
    fn eval_xor_fixture() {
        let c = fixtures::xor_circuit();
        assert_eq!(c.size(), 4);
        assert_eq!(c.eval(&b("10")).unwrap(), b("1"));
        // full table by hand enumeration
        for (x, want) in [("00", "0"), ("01", "1"), ("10", "1"), ("11", "0")] {
            assert_eq!(c.eval(&b(x)).unwrap(), b(want));
        }
    }

    #[test]
    fn eval_constant_zero() {
        let c = fixtures::const_zero_circuit(1);
        assert_eq!(c.eval(&b("0")).unwrap(), b("0"));
        assert_eq!(c.eval(&b("1")).unwrap(), b("0"));
    }

    #[test]
    fn eval_rejects_bad_arity() {
        let c = fixtures::xor_circuit();
        assert!(matches!(
            c.eval(&b("101")),
            Err(Error::ArityMismatch { want: 2, got: 3 })
        ));
    }

    #[test]
    fn forward_refs_rejected() {
        let g = Gate {
            kind: GateKind::And,
            a: Ref::Gate(0),
            b: Ref::Input(0),
        };
        assert!(Circuit::new(1, vec![g], vec![Ref::Gate(0)]).is_err());
    }

    #[test]
    fn truth_table_examples() {
        let pass = Circuit::new(1, vec![], vec![Ref::Input(0)]).unwrap();
        assert_eq!(truth_table(&pass, 2).unwrap(), b("01"));

        let xor = fixtures::xor_circuit();
        assert_eq!(truth_table(&xor, 4).unwrap(), b("0110"));
        // truncation drops the trailing position
        assert_eq!(truth_table(&xor, 3).unwrap(), b("011"));
    }

    #[test]
    fn truth_table_wants_matching_arity() {
        let xor = fixtures::xor_circuit();
        assert!(truth_table(&xor, 8).is_err());
    }

    #[test]
    fn masked_eval_agrees_with_pointwise() {
        let c = fixtures::random_circuit(&mut crate::fixtures::rng(3), 4, 3, 12);
        let masks = all_input_masks(4);
        let outs = c.eval_masked(&masks);
        for p in 0..16u64 {
            let x = Bits::from_u64_msb(p, 4);
            let y = c.eval(&x).unwrap();
            for (j, &m) in outs.iter().enumerate() {
                assert_eq!((m >> p) & 1 == 1, y.get(j));
            }
        }
    }

    #[test]
    fn table_inputs_convention() {
        assert_eq!(table_inputs(1), 1);
        assert_eq!(table_inputs(2), 1);
        assert_eq!(table_inputs(3), 2);
        assert_eq!(table_inputs(4), 2);
        assert_eq!(table_inputs(5), 3);
        assert_eq!(table_inputs(32), 5);
        assert_eq!(table_inputs(33), 6);
    }
}
