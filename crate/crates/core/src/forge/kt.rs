//! The program-running map whose non-range strings have no short generating
//! program.
//!
//! On an `(n-1)`-bit input of the form `0*1y` the map runs the fixed machine
//! on `y` for `t` steps and emits the result coerced to `n` bits (blanks read
//! as 0, trailing positions zero-padded, overlong outputs truncated); inputs
//! without a leading 1, and runs that do not halt in time, yield the all-zero
//! string. Every string produced by a program of at most `n-2` bits within
//! the step bound is therefore in the range.

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::stretch::{Evaluate, MapKind, StretchMap};
use crate::tm::{tm_run, TmOutcome, TuringMachine};

struct KtMap {
    n: usize,
    machine: TuringMachine,
    t: u64,
}

impl Evaluate for KtMap {
    fn eval_bits(&self, input: &Bits) -> Bits {
        let first_one = (0..input.len()).find(|&i| input.get(i));
        let program: String = match first_one {
            None => return Bits::zeros(self.n),
            Some(p) => (p + 1..input.len())
                .map(|i| if input.get(i) { '1' } else { '0' })
                .collect(),
        };
        match tm_run(&self.machine, &program, self.t).expect("program symbols are bits") {
            TmOutcome::Running => Bits::zeros(self.n),
            TmOutcome::Halted(out) => {
                let mut bits = Bits::zeros(self.n);
                for (i, c) in out.chars().take(self.n).enumerate() {
                    bits.set(i, c == '1');
                }
                bits
            }
        }
    }
}

/// The instance for output length `n`, machine `machine` and step bound `t`.
pub fn phi_kt(n: usize, machine: TuringMachine, t: u64) -> Result<StretchMap> {
    if n < 2 {
        return Err(Error::Infeasible {
            what: "short-program instance",
            detail: format!("output length must be at least 2, got {n}"),
        });
    }
    StretchMap::semantic(MapKind::Kt, n - 1, n, KtMap { n, machine, t })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn b(s: &str) -> Bits {
        s.parse().unwrap()
    }

    #[test]
    fn all_zero_input_gives_zeros() {
        let map = phi_kt(8, fixtures::copy_machine(), 100).unwrap();
        assert_eq!(map.eval(&b("0000000")), b("00000000"));
    }

    #[test]
    fn leading_zeros_then_marker_select_the_program() {
        // first 1 at position 5 leaves program "1"; the copier emits it back,
        // padded to 8 bits
        let map = phi_kt(8, fixtures::copy_machine(), 100).unwrap();
        assert_eq!(map.eval(&b("0000011")), b("10000000"));
    }

    #[test]
    fn programs_surface_padded() {
        let map = phi_kt(8, fixtures::copy_machine(), 100).unwrap();
        // input 1y with y = "011010"
        assert_eq!(map.eval(&b("1011010")), b("01101000"));
    }

    #[test]
    fn non_halting_runs_become_zeros() {
        let map = phi_kt(8, fixtures::looping_machine(), 100).unwrap();
        assert_eq!(map.eval(&b("1011010")), b("00000000"));
    }

    #[test]
    fn widths_are_n_minus_one_to_n() {
        let map = phi_kt(8, fixtures::copy_machine(), 100).unwrap();
        assert_eq!(map.in_width(), 7);
        assert_eq!(map.out_width(), 8);
        assert!(phi_kt(1, fixtures::copy_machine(), 100).is_err());
    }
}
