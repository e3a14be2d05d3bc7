//! Exhaustive circuit enumeration: exact complexity of short tables and
//! easy-witness search.
//!
//! Circuits are enumerated by size, then lexicographically on
//! (kind, ref_a, ref_b) with AND before OR before NOT and refs numbering
//! inputs first. Symmetric gates are normalized (ref_a < ref_b), double
//! negations and gates left dangling are pruned; none of these can occur in
//! a minimum circuit, so the first hit is both minimal and canonical.
//! Evaluation is bit-parallel over all assignments packed in one word, which
//! is why tables are capped at 64 bits.

use std::collections::HashSet;
use std::ops::ControlFlow;

use crate::bits::Bits;
use crate::circuit::{all_input_masks, table_inputs, Circuit, Gate, GateKind, Ref};
use crate::error::{Error, Result};

pub const MAX_ENUM_TABLE: usize = 64;
pub const MAX_ENUM_GATES: usize = 6;

#[derive(Clone, Debug)]
pub struct ComplexityReport {
    pub table: Bits,
    pub s_star: usize,
    pub witness: Circuit,
}

#[derive(Clone, Debug)]
pub enum ComplexityOutcome {
    Exact(ComplexityReport),
    /// No circuit within the gate cap computes the table.
    AboveCap,
}

impl ComplexityOutcome {
    pub fn s_star(&self) -> Option<usize> {
        match self {
            ComplexityOutcome::Exact(r) => Some(r.s_star),
            ComplexityOutcome::AboveCap => None,
        }
    }
}

#[derive(Clone, Copy)]
struct SlotGate {
    kind: GateKind,
    a: usize,
    b: usize,
}

struct Enumerator {
    n_in: usize,
    size: usize,
    masks: Vec<u64>,
    gates: Vec<SlotGate>,
    refcount: Vec<u32>,
    unreferenced: usize,
}

impl Enumerator {
    fn new(n_in: usize, size: usize) -> Enumerator {
        Enumerator {
            n_in,
            size,
            masks: all_input_masks(n_in),
            gates: Vec::with_capacity(size),
            refcount: Vec::with_capacity(size),
            unreferenced: 0,
        }
    }

    fn run(&mut self, visit: &mut impl FnMut(&[SlotGate], u64) -> ControlFlow<()>) -> ControlFlow<()> {
        self.descend(visit)
    }

    fn gate_mask(&self, g: &SlotGate) -> u64 {
        let read = |r: usize| self.masks[r];
        match g.kind {
            GateKind::And => read(g.a) & read(g.b),
            GateKind::Or => read(g.a) | read(g.b),
            GateKind::Not => !read(g.a),
        }
    }

    fn is_not_gate(&self, wire: usize) -> bool {
        wire >= self.n_in && self.gates[wire - self.n_in].kind == GateKind::Not
    }

    fn push(&mut self, g: SlotGate) {
        let bump = |w: usize, rc: &mut Vec<u32>, unref: &mut usize, n_in: usize| {
            if w >= n_in {
                let k = w - n_in;
                if rc[k] == 0 {
                    *unref -= 1;
                }
                rc[k] += 1;
            }
        };
        bump(g.a, &mut self.refcount, &mut self.unreferenced, self.n_in);
        if g.kind != GateKind::Not {
            bump(g.b, &mut self.refcount, &mut self.unreferenced, self.n_in);
        }
        let m = self.gate_mask(&g);
        self.gates.push(g);
        self.refcount.push(0);
        self.unreferenced += 1;
        self.masks.push(m);
    }

    fn pop(&mut self) {
        let g = self.gates.pop().unwrap();
        self.masks.pop();
        self.refcount.pop();
        self.unreferenced -= 1;
        let drop_ref = |w: usize, rc: &mut Vec<u32>, unref: &mut usize, n_in: usize| {
            if w >= n_in {
                let k = w - n_in;
                rc[k] -= 1;
                if rc[k] == 0 {
                    *unref += 1;
                }
            }
        };
        drop_ref(g.a, &mut self.refcount, &mut self.unreferenced, self.n_in);
        if g.kind != GateKind::Not {
            drop_ref(g.b, &mut self.refcount, &mut self.unreferenced, self.n_in);
        }
    }

    fn descend(&mut self, visit: &mut impl FnMut(&[SlotGate], u64) -> ControlFlow<()>) -> ControlFlow<()> {
        let depth = self.gates.len();
        if depth == self.size {
            // only the terminal gate may be unreferenced
            if self.unreferenced == 1 {
                let out = self.masks[self.n_in + self.size - 1];
                return visit(&self.gates, out);
            }
            return ControlFlow::Continue(());
        }
        let wires = self.n_in + depth;
        // every later gate absorbs at most two dangling gates while adding
        // itself, so the dangle count shrinks by at most one per push and
        // must end at exactly one (the output)
        if self.unreferenced > self.size - depth + 1 {
            return ControlFlow::Continue(());
        }
        for kind in [GateKind::And, GateKind::Or] {
            for a in 0..wires {
                for b in a + 1..wires {
                    self.push(SlotGate { kind, a, b });
                    self.descend(visit)?;
                    self.pop();
                }
            }
        }
        for a in 0..wires {
            if self.is_not_gate(a) {
                continue; // double negation never appears in a minimum circuit
            }
            self.push(SlotGate {
                kind: GateKind::Not,
                a,
                b: a,
            });
            self.descend(visit)?;
            self.pop();
        }
        ControlFlow::Continue(())
    }
}

fn build_circuit(n_in: usize, slots: &[SlotGate], out: Ref) -> Circuit {
    let to_ref = |w: usize| {
        if w < n_in {
            Ref::Input(w)
        } else {
            Ref::Gate(w - n_in)
        }
    };
    let gates = slots
        .iter()
        .map(|g| Gate {
            kind: g.kind,
            a: to_ref(g.a),
            b: to_ref(g.b),
        })
        .collect();
    Circuit::new(n_in, gates, vec![out]).expect("enumerated refs are valid")
}

fn check_budget(len: usize, gates: usize) -> Result<()> {
    if len > MAX_ENUM_TABLE {
        return Err(Error::Budget {
            what: "circuit enumeration",
            need: format!("table length <= {MAX_ENUM_TABLE}"),
            got: format!("{len}"),
        });
    }
    if gates > MAX_ENUM_GATES {
        return Err(Error::Budget {
            what: "circuit enumeration",
            need: format!("gate cap <= {MAX_ENUM_GATES}"),
            got: format!("{gates}"),
        });
    }
    Ok(())
}

fn table_mask(table: &Bits) -> u64 {
    let mut m = 0u64;
    for p in 0..table.len() {
        if table.get(p) {
            m |= 1 << p;
        }
    }
    m
}

fn care_mask(len: usize) -> u64 {
    if len == 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

/// Exact minimum circuit size of `table` under the don't-care semantics for
/// positions past its length, or [`ComplexityOutcome::AboveCap`] if every
/// circuit with at most `s_cap` gates fails. The witness is the first
/// minimum circuit in canonical enumeration order.
pub fn exact_complexity(table: &Bits, s_cap: usize) -> Result<ComplexityOutcome> {
    check_budget(table.len(), s_cap)?;
    let n_in = table_inputs(table.len());
    let want = table_mask(table);
    let care = care_mask(table.len());
    let input_masks = all_input_masks(n_in);

    // size 0: projection onto an input wire
    for (j, &m) in input_masks.iter().enumerate() {
        if (m ^ want) & care == 0 {
            return Ok(ComplexityOutcome::Exact(ComplexityReport {
                table: table.clone(),
                s_star: 0,
                witness: build_circuit(n_in, &[], Ref::Input(j)),
            }));
        }
    }
    for s in 1..=s_cap {
        let mut found: Option<Circuit> = None;
        let mut e = Enumerator::new(n_in, s);
        let _ = e.run(&mut |slots, out| {
            if (out ^ want) & care == 0 {
                found = Some(build_circuit(n_in, slots, Ref::Gate(s - 1)));
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        if let Some(witness) = found {
            return Ok(ComplexityOutcome::Exact(ComplexityReport {
                table: table.clone(),
                s_star: s,
                witness,
            }));
        }
    }
    Ok(ComplexityOutcome::AboveCap)
}

/// Visits the full-domain value mask of every circuit on `n_in <= 6` inputs
/// with at most `max_gates` gates, size 0 first. Masks repeat across
/// functionally equal circuits; callers deduplicate as needed. Returning
/// `Break` stops the walk.
pub fn for_each_circuit_mask(
    n_in: usize,
    max_gates: usize,
    mut visit: impl FnMut(u64) -> ControlFlow<()>,
) {
    assert!(n_in <= 6);
    for m in all_input_masks(n_in) {
        if visit(m).is_break() {
            return;
        }
    }
    for s in 1..=max_gates {
        let mut e = Enumerator::new(n_in, s);
        if e.run(&mut |_, out| visit(out)).is_break() {
            return;
        }
    }
}

/// Iterates the distinct truth tables of all circuits with at most `s` gates
/// on `table_inputs(n)` inputs and returns the first table satisfying the
/// checker, if any.
pub fn easy_witness_search(
    n: usize,
    s: usize,
    mut checker: impl FnMut(&Bits) -> bool,
) -> Result<Option<Bits>> {
    check_budget(n, s)?;
    let n_in = table_inputs(n);
    let care = care_mask(n);
    let mut seen: HashSet<u64> = HashSet::new();
    let mut hit: Option<Bits> = None;
    for_each_circuit_mask(n_in, s, |mask| {
        let key = mask & care;
        if seen.insert(key) {
            let table = Bits::from_fn(n, |p| (key >> p) & 1 == 1);
            if checker(&table) {
                hit = Some(table);
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    });
    Ok(hit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::truth_table;

    fn b(s: &str) -> Bits {
        s.parse().unwrap()
    }

    fn s_star(t: &str, cap: usize) -> Option<usize> {
        exact_complexity(&t.parse().unwrap(), cap).unwrap().s_star()
    }

    #[test]
    fn passthrough_is_size_zero() {
        let out = exact_complexity(&b("01"), 3).unwrap();
        match out {
            ComplexityOutcome::Exact(r) => {
                assert_eq!(r.s_star, 0);
                assert_eq!(truth_table(&r.witness, 2).unwrap(), b("01"));
            }
            _ => panic!("expected exact result"),
        }
    }

    #[test]
    fn constants_cost_two() {
        assert_eq!(s_star("0000", 3), Some(2));
        assert_eq!(s_star("1111", 3), Some(2));
    }

    #[test]
    fn xor_costs_four() {
        assert_eq!(s_star("0110", 3), None); // above a cap of 3
        let out = exact_complexity(&b("0110"), 4).unwrap();
        match out {
            ComplexityOutcome::Exact(r) => {
                assert_eq!(r.s_star, 4);
                assert_eq!(truth_table(&r.witness, 4).unwrap(), b("0110"));
            }
            _ => panic!("xor must be found at size 4"),
        }
    }

    #[test]
    fn witnesses_always_compute_their_table() {
        for v in 0u64..256 {
            let t = Bits::from_u64_msb(v, 8);
            if let ComplexityOutcome::Exact(r) = exact_complexity(&t, 4).unwrap() {
                assert_eq!(truth_table(&r.witness, 8).unwrap(), t);
                assert_eq!(r.witness.size(), r.s_star);
                // nothing smaller: spot-check one size below
                if r.s_star > 0 {
                    assert_eq!(s_star(&t.to_string(), r.s_star - 1), None);
                }
            }
        }
    }

    #[test]
    fn dont_cares_never_increase_complexity() {
        // every length-4 table, truncated to 3 positions, stays as cheap
        for v in 0u64..16 {
            let full = Bits::from_u64_msb(v, 4);
            let cut = full.slice(0, 3);
            let s_full = exact_complexity(&full, 6).unwrap().s_star().unwrap();
            let s_cut = exact_complexity(&cut, 6).unwrap().s_star().unwrap();
            assert!(s_cut <= s_full, "{full}: {s_cut} > {s_full}");
        }
    }

    #[test]
    fn budget_refusals() {
        assert!(exact_complexity(&Bits::zeros(65), 2).is_err());
        assert!(exact_complexity(&b("0110"), 7).is_err());
    }

    #[test]
    fn easy_witness_finds_projection() {
        let got = easy_witness_search(4, 0, |t| t.weight() >= 1).unwrap().unwrap();
        // projections on two inputs: 0011 (x0) first, then 0101 (x1)
        assert_eq!(got, b("0011"));
    }

    #[test]
    fn easy_witness_false_checker() {
        assert_eq!(easy_witness_search(4, 2, |_| false).unwrap(), None);
    }

    #[test]
    fn easy_witness_matches_exact_complexity() {
        let xor = b("0110");
        let hit = easy_witness_search(4, 4, |t| *t == xor).unwrap();
        assert_eq!(hit, Some(xor.clone()));
        let miss = easy_witness_search(4, 3, |t| *t == xor).unwrap();
        assert_eq!(miss, None);
    }
}
