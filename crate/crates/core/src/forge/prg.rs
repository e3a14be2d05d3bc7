//! The predictor-compression map whose non-range strings are pseudorandom
//! generators.
//!
//! An input packs: `n^6` strings of length `n-1`; a circuit code for a
//! next-bit predictor of at most `c*n` gates on `n-1` inputs; a
//! `ceil(log2 n)`-bit insertion position; and a low-weight code for an
//! `n^6`-bit correction string of weight at most `n^6/2 - n^4`. The map runs
//! the predictor on every block, inserts the predicted bit at the stated
//! position and flips it where the correction string says so. Any sequence on
//! which some small circuit predicts one coordinate noticeably better than
//! chance can be written this way, so it lands in the range.

use num_bigint::BigUint;
use num_rational::Ratio;

use crate::bits::Bits;
use crate::circuit::{code_width, decode_circuit, Circuit, CircuitCode, GateKind, Ref};
use crate::codec::{sparse_weight_cap, SparseCode};
use crate::error::{Error, Result};
use crate::stretch::{Evaluate, MapKind, StretchMap};

fn ceil_log2_u64(x: u64) -> usize {
    assert!(x >= 1);
    if x == 1 {
        0
    } else {
        ((x - 1).ilog2() + 1) as usize
    }
}

/// Symbolic field widths for parameters `(n, c)`; exact at any size.
#[derive(Clone, Debug)]
pub struct PrgWidths {
    pub blocks: BigUint,
    pub r_minus: BigUint,
    pub predictor: BigUint,
    pub position: BigUint,
    pub correction: BigUint,
    pub total: BigUint,
    pub out: BigUint,
}

fn ceil_log2_big(x: &BigUint) -> usize {
    let bits = x.bits() as usize;
    if *x == (BigUint::from(1u32) << (bits - 1)) {
        bits - 1
    } else {
        bits
    }
}

pub fn prg_widths(n: u64, c: u64) -> PrgWidths {
    assert!(n >= 2 && c >= 1);
    let n6 = BigUint::from(n).pow(6);
    let r_minus = &n6 * BigUint::from(n - 1);
    let s_max = c * n;
    let w = ceil_log2_u64(n - 1 + s_max);
    let predictor =
        BigUint::from(s_max) * BigUint::from(2 + 2 * w) + BigUint::from(ceil_log2_u64(s_max));
    let position = BigUint::from(ceil_log2_u64(n));
    // low-weight code width at eps = 1/n^2: n^6 - n^2 + ceil(log2 n^6)
    let correction = &n6 - BigUint::from(n * n) + BigUint::from(ceil_log2_big(&n6));
    let total = &r_minus + &predictor + &position + &correction;
    let out = BigUint::from(n).pow(7);
    PrgWidths {
        blocks: n6,
        r_minus,
        predictor,
        position,
        correction,
        total,
        out,
    }
}

struct PrgMap {
    n: usize,
    n6: usize,
    predictor_smax: usize,
    off_predictor: usize,
    off_position: usize,
    off_correction: usize,
    position_bits: usize,
    sparse: SparseCode,
    out_width: usize,
}

fn eval_single_output(c: &Circuit, wires: &mut Vec<bool>, input: impl Fn(usize) -> bool) -> bool {
    wires.clear();
    for g in c.gates() {
        let read = |wires: &Vec<bool>, r: Ref| match r {
            Ref::Input(j) => input(j),
            Ref::Gate(k) => wires[k],
        };
        let a = read(wires, g.a);
        let v = match g.kind {
            GateKind::And => a & read(wires, g.b),
            GateKind::Or => a | read(wires, g.b),
            GateKind::Not => !a,
        };
        wires.push(v);
    }
    match c.outputs()[0] {
        Ref::Input(j) => input(j),
        Ref::Gate(k) => wires[k],
    }
}

impl Evaluate for PrgMap {
    fn eval_bits(&self, input: &Bits) -> Bits {
        let n = self.n;
        let nm1 = n - 1;
        let code = CircuitCode::from_payload(
            self.predictor_smax,
            nm1,
            input.slice(self.off_predictor, self.off_position - self.off_predictor),
        );
        let predictor = decode_circuit(&code);
        let raw = input.read_u64(self.off_position, self.position_bits) as usize;
        let insert_at = raw.min(n - 1); // zero-based insertion index
        let flags = self
            .sparse
            .decode(&input.slice(self.off_correction, self.sparse.width()));

        let mut out = Bits::zeros(self.out_width);
        let mut wires: Vec<bool> = Vec::with_capacity(predictor.size());
        for j in 0..self.n6 {
            let block_base = j * nm1;
            let read_in = |k: usize| input.get(block_base + k);
            let mut predicted = eval_single_output(&predictor, &mut wires, read_in);
            if flags.get(j) {
                predicted = !predicted;
            }
            let out_base = j * n;
            for k in 0..insert_at {
                out.set(out_base + k, read_in(k));
            }
            out.set(out_base + insert_at, predicted);
            for k in insert_at..nm1 {
                out.set(out_base + k + 1, read_in(k));
            }
        }
        out
    }
}

/// The instance for sequence parameter `n` and predictor size factor `c`
/// (the predictor budget is `c * n` gates). Errors when the packed widths do
/// not stretch at this `n`.
pub fn phi_prg(n: usize, c: usize) -> Result<StretchMap> {
    if n < 2 || c < 1 {
        return Err(Error::Infeasible {
            what: "predictor-compression instance",
            detail: format!("need n >= 2 and c >= 1, got n={n} c={c}"),
        });
    }
    let widths = prg_widths(n as u64, c as u64);
    if widths.total >= widths.out {
        return Err(Error::NotStretching {
            in_width: usize::try_from(&widths.total).unwrap_or(usize::MAX),
            out_width: usize::try_from(&widths.out).unwrap_or(usize::MAX),
            detail: format!("parameter n={n} is too small for the field widths to stretch"),
        });
    }
    let in_width = usize::try_from(&widths.total).map_err(|_| Error::Budget {
        what: "instance construction",
        need: "widths that fit the address space".into(),
        got: format!("{} input bits", widths.total),
    })?;
    let out_width = usize::try_from(&widths.out).unwrap();

    let n6 = n.pow(6);
    let eps = Ratio::new(1u64, (n as u64) * (n as u64));
    let sparse = SparseCode::new(n6, eps)?;
    debug_assert_eq!(
        BigUint::from(sparse.width()),
        widths.correction,
        "symbolic and constructed widths must agree"
    );
    let predictor_smax = c * n;
    let r_minus_width = n6 * (n - 1);
    let predictor_width = code_width(predictor_smax, n - 1);
    let position_bits = ceil_log2_u64(n as u64);
    let map = PrgMap {
        n,
        n6,
        predictor_smax,
        off_predictor: r_minus_width,
        off_position: r_minus_width + predictor_width,
        off_correction: r_minus_width + predictor_width + position_bits,
        position_bits,
        sparse,
        out_width,
    };
    StretchMap::semantic(MapKind::Prg, in_width, out_width, map)
}

/// A structured witness: the concatenated `n^6` blocks of `n-1` bits, the
/// predictor, the insertion position (1-based, as a coordinate of the output
/// blocks) and the correction string.
#[derive(Clone, Debug)]
pub struct PrgWitness {
    pub blocks: Bits,
    pub predictor: Circuit,
    pub position: usize,
    pub correction: Bits,
}

impl PrgWitness {
    pub fn block(&self, n: usize, j: usize) -> Bits {
        self.blocks.slice(j * (n - 1), n - 1)
    }

    /// Packs the witness into a map input. Checks every field width.
    pub fn encode(&self, n: usize, c: usize) -> Result<Bits> {
        let n6 = n.pow(6);
        if self.blocks.len() != n6 * (n - 1) {
            return Err(Error::Infeasible {
                what: "witness encoding",
                detail: format!("need {n6} concatenated blocks of {} bits", n - 1),
            });
        }
        if self.predictor.n_in() != n - 1 || self.predictor.n_out() != 1 {
            return Err(Error::Infeasible {
                what: "witness encoding",
                detail: "predictor arity mismatch".into(),
            });
        }
        if self.position < 1 || self.position > n {
            return Err(Error::Infeasible {
                what: "witness encoding",
                detail: format!("position {} outside 1..={n}", self.position),
            });
        }
        if self.correction.len() != n6 {
            return Err(Error::Infeasible {
                what: "witness encoding",
                detail: "correction length mismatch".into(),
            });
        }
        let eps = Ratio::new(1u64, (n as u64) * (n as u64));
        let cap = sparse_weight_cap(n6, eps);
        if self.correction.weight() > cap {
            return Err(Error::WrongWeight {
                want: cap,
                got: self.correction.weight(),
            });
        }
        let code = crate::circuit::encode_circuit(&self.predictor, c * n)?;
        let sparse = SparseCode::new(n6, eps)?;
        let mut out = Bits::with_capacity(self.blocks.len() + 256);
        out.push_bits(&self.blocks);
        out.push_bits(code.payload());
        out.push_bits(&Bits::from_u64_msb(
            (self.position - 1) as u64,
            ceil_log2_u64(n as u64),
        ));
        out.push_bits(&sparse.encode(&self.correction)?);
        Ok(out)
    }
}
