//! Tseitin compilation of a circuit plus an output constraint into CNF.
//!
//! Variables 1..=n_in are the circuit inputs in order; each gate gets one
//! fresh variable after them. The satisfying assignments, restricted to the
//! input variables, are exactly the preimages of the target under the
//! circuit.

use std::fmt::Write as _;

use crate::bits::Bits;
use crate::circuit::{Circuit, GateKind, Ref};

#[derive(Clone, Debug)]
pub struct Cnf {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

impl Cnf {
    pub fn to_dimacs(&self) -> String {
        let mut s = String::new();
        writeln!(s, "p cnf {} {}", self.num_vars, self.clauses.len()).unwrap();
        for c in &self.clauses {
            for lit in c {
                write!(s, "{lit} ").unwrap();
            }
            writeln!(s, "0").unwrap();
        }
        s
    }
}

/// CNF whose models, restricted to variables 1..=n_in, are the preimages of
/// `target` under `c`.
pub fn to_cnf(c: &Circuit, target: &Bits) -> Cnf {
    assert_eq!(target.len(), c.n_out(), "target width must match output arity");
    let n_in = c.n_in();
    let var = |r: Ref| -> i32 {
        match r {
            Ref::Input(j) => (j + 1) as i32,
            Ref::Gate(k) => (n_in + 1 + k) as i32,
        }
    };
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    for (i, g) in c.gates().iter().enumerate() {
        let t = (n_in + 1 + i) as i32;
        let a = var(g.a);
        match g.kind {
            GateKind::And => {
                let b = var(g.b);
                clauses.push(vec![-t, a]);
                clauses.push(vec![-t, b]);
                clauses.push(vec![t, -a, -b]);
            }
            GateKind::Or => {
                let b = var(g.b);
                clauses.push(vec![t, -a]);
                clauses.push(vec![t, -b]);
                clauses.push(vec![-t, a, b]);
            }
            GateKind::Not => {
                clauses.push(vec![t, a]);
                clauses.push(vec![-t, -a]);
            }
        }
    }
    for (i, &o) in c.outputs().iter().enumerate() {
        let v = var(o);
        clauses.push(vec![if target.get(i) { v } else { -v }]);
    }
    Cnf {
        num_vars: n_in + c.size(),
        clauses,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Circuit;
    use crate::fixtures;

    fn b(s: &str) -> Bits {
        s.parse().unwrap()
    }

    /// Brute-force model enumeration restricted to input variables.
    fn input_models(cnf: &Cnf, n_in: usize) -> Vec<u64> {
        let mut out = Vec::new();
        let total = cnf.num_vars;
        assert!(total <= 20);
        'outer: for m in 0u64..(1 << total) {
            let val = |lit: i32| -> bool {
                let v = lit.unsigned_abs() as usize;
                let bit = (m >> (v - 1)) & 1 == 1;
                if lit > 0 {
                    bit
                } else {
                    !bit
                }
            };
            for c in &cnf.clauses {
                if !c.iter().any(|&l| val(l)) {
                    continue 'outer;
                }
            }
            out.push(m & ((1 << n_in) - 1));
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    #[test]
    fn passthrough_forces_input() {
        let c = Circuit::new(1, vec![], vec![Ref::Input(0)]).unwrap();
        let cnf = to_cnf(&c, &b("1"));
        assert_eq!(input_models(&cnf, 1), vec![1]);
    }

    #[test]
    fn xor_preimages_of_one() {
        let c = fixtures::xor_circuit();
        let cnf = to_cnf(&c, &b("1"));
        // models on inputs: {01, 10}; variable 1 is x0 (low bit of the model word)
        assert_eq!(input_models(&cnf, 2), vec![0b01, 0b10]);
    }

    #[test]
    fn constant_zero_unsat_for_one() {
        let c = fixtures::const_zero_circuit(1);
        let cnf = to_cnf(&c, &b("1"));
        assert!(input_models(&cnf, 1).is_empty());
    }

    #[test]
    fn ten_input_model_set_equals_preimage_set() {
        // a larger arity case: model enumeration over inputs plus gates
        let mut rng = fixtures::rng(99);
        let c = fixtures::random_circuit(&mut rng, 10, 2, 8);
        let y = Bits::random(&mut rng, 2);
        let cnf = to_cnf(&c, &y);
        let models = input_models(&cnf, 10);
        let mut brute = Vec::new();
        for p in 0u64..1024 {
            let x = Bits::from_u64_msb(p, 10);
            if c.eval(&x).unwrap() == y {
                let mut w = 0u64;
                for j in 0..10 {
                    if x.get(j) {
                        w |= 1 << j;
                    }
                }
                brute.push(w);
            }
        }
        brute.sort_unstable();
        assert_eq!(models, brute);
    }

    #[test]
    fn model_set_equals_preimage_set() {
        for seed in 0..10u64 {
            let mut rng = fixtures::rng(seed);
            let c = fixtures::random_circuit(&mut rng, 4, 3, 8);
            let y = Bits::random(&mut rng, 3);
            let cnf = to_cnf(&c, &y);
            let models = input_models(&cnf, 4);
            let mut brute = Vec::new();
            for p in 0u64..16 {
                let x = Bits::from_u64_msb(p, 4);
                if c.eval(&x).unwrap() == y {
                    // model word has variable j+1 at bit j: x0 = MSB-first bit 0
                    let mut w = 0u64;
                    for j in 0..4 {
                        if x.get(j) {
                            w |= 1 << j;
                        }
                    }
                    brute.push(w);
                }
            }
            brute.sort_unstable();
            assert_eq!(models, brute, "seed {seed}");
        }
    }
}
