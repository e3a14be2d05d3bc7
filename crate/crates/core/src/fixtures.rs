//! Shared fixtures: small named circuits, machines and maps used across the
//! test suites, the CLI demos and the documentation examples.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::bits::Bits;
use crate::circuit::{Circuit, Gate, GateKind, Ref};
use crate::stretch::{MapKind, StretchMap};
use crate::tm::{Dir, Transition, TuringMachine};

/// Deterministic generator; all randomized fixtures and tests seed through
/// here.
pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// The 4-gate XOR: OR, AND, NOT, AND.
pub fn xor_circuit() -> Circuit {
    Circuit::new(
        2,
        vec![
            Gate {
                kind: GateKind::Or,
                a: Ref::Input(0),
                b: Ref::Input(1),
            },
            Gate {
                kind: GateKind::And,
                a: Ref::Input(0),
                b: Ref::Input(1),
            },
            Gate {
                kind: GateKind::Not,
                a: Ref::Gate(1),
                b: Ref::Gate(1),
            },
            Gate {
                kind: GateKind::And,
                a: Ref::Gate(0),
                b: Ref::Gate(2),
            },
        ],
        vec![Ref::Gate(3)],
    )
    .unwrap()
}

/// `x AND NOT x` on the first input: constant 0 without constant wires.
pub fn const_zero_circuit(n_in: usize) -> Circuit {
    assert!(n_in >= 1);
    Circuit::new(
        n_in,
        vec![
            Gate {
                kind: GateKind::Not,
                a: Ref::Input(0),
                b: Ref::Input(0),
            },
            Gate {
                kind: GateKind::And,
                a: Ref::Input(0),
                b: Ref::Gate(0),
            },
        ],
        vec![Ref::Gate(1)],
    )
    .unwrap()
}

/// The gate-free doubling map `x -> xx`.
pub fn duplicate_map(n: usize) -> StretchMap {
    let outputs: Vec<Ref> = (0..n).chain(0..n).map(Ref::Input).collect();
    let c = Circuit::new(n, vec![], outputs).unwrap();
    StretchMap::circuit_backed(MapKind::Custom, c).unwrap()
}

/// `x -> x || reverse(x)`: a doubling map whose halves differ.
pub fn mirror_map(n: usize) -> StretchMap {
    let outputs: Vec<Ref> = (0..n).chain((0..n).rev()).map(Ref::Input).collect();
    let c = Circuit::new(n, vec![], outputs).unwrap();
    StretchMap::circuit_backed(MapKind::Custom, c).unwrap()
}

/// `x -> x || parity(x)`: injective one-bit stretch, so its range covers
/// exactly half of the output space.
pub fn parity_extend_map(n: usize) -> StretchMap {
    let c = parity_extend_circuit(n);
    StretchMap::circuit_backed(MapKind::Custom, c).unwrap()
}

pub fn parity_extend_circuit(n: usize) -> Circuit {
    assert!(n >= 1);
    let mut b = crate::circuit::CircuitBuilder::new(n);
    let mut acc = Ref::Input(0);
    for i in 1..n {
        acc = b.xor(acc, Ref::Input(i));
    }
    let mut outs: Vec<Ref> = (0..n).map(Ref::Input).collect();
    outs.push(acc);
    b.finish(outs)
}

/// Random valid circuit: every gate references inputs or earlier gates.
pub fn random_circuit(rng: &mut ChaCha8Rng, n_in: usize, n_out: usize, n_gates: usize) -> Circuit {
    assert!(n_in >= 1);
    let mut gates = Vec::with_capacity(n_gates);
    for i in 0..n_gates {
        let pick = |rng: &mut ChaCha8Rng| {
            let w = rng.gen_range(0..n_in + i);
            if w < n_in {
                Ref::Input(w)
            } else {
                Ref::Gate(w - n_in)
            }
        };
        let kind = match rng.gen_range(0..3) {
            0 => GateKind::And,
            1 => GateKind::Or,
            _ => GateKind::Not,
        };
        let a = pick(rng);
        let b = pick(rng);
        gates.push(Gate { kind, a, b });
    }
    let outputs = (0..n_out)
        .map(|_| {
            let w = rng.gen_range(0..n_in + n_gates);
            if w < n_in {
                Ref::Input(w)
            } else {
                Ref::Gate(w - n_in)
            }
        })
        .collect();
    Circuit::new(n_in, gates, outputs).expect("generated refs are valid")
}

/// Random circuit-backed stretch map.
pub fn random_stretch_map(
    rng: &mut ChaCha8Rng,
    n_in: usize,
    n_out: usize,
    n_gates: usize,
) -> StretchMap {
    assert!(n_out > n_in);
    let c = random_circuit(rng, n_in, n_out, n_gates);
    StretchMap::circuit_backed(MapKind::Custom, c).unwrap()
}

/// Starts in its halt state: writes nothing, outputs the empty string.
pub fn halting_machine() -> TuringMachine {
    TuringMachine::new(1, 0, 0, &[]).unwrap()
}

/// Scans right forever.
pub fn looping_machine() -> TuringMachine {
    let stay = |write| Transition {
        next: 0,
        write,
        dir: Dir::Right,
    };
    TuringMachine::new(2, 0, 1, &[(0, '0', stay('0')), (0, '1', stay('1')), (0, '_', stay('_'))])
        .unwrap()
}

/// Three states: scans the input left to right rewriting each symbol in
/// place, steps back once over the last cell and halts. Its output equals
/// its input, making it the identity press for program-length counting.
pub fn copy_machine() -> TuringMachine {
    let t = |next, write, dir| Transition { next, write, dir };
    TuringMachine::new(
        3,
        0,
        2,
        &[
            (0, '0', t(0, '0', Dir::Right)),
            (0, '1', t(0, '1', Dir::Right)),
            (0, '_', t(1, '_', Dir::Left)),
            (1, '0', t(2, '0', Dir::Right)),
            (1, '1', t(2, '1', Dir::Right)),
            (1, '_', t(2, '_', Dir::Right)),
        ],
    )
    .unwrap()
}

/// Uniformly random bit string helper re-exported for test ergonomics.
pub fn random_bits(rng: &mut ChaCha8Rng, len: usize) -> Bits {
    Bits::random(rng, len)
}
