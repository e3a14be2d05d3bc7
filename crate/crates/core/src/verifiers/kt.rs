//! Exact shortest-program length under a fixed machine and step bound.

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::tm::{tm_run, TmOutcome, TuringMachine};

/// Length of the shortest program (tried in order of length, then value) on
/// which the machine outputs exactly `target` within `t` steps, or `None`
/// when every program up to `len_cap` bits fails. Outputs containing blanks
/// never match a bit string.
pub fn kt_complexity(
    target: &Bits,
    machine: &TuringMachine,
    t: u64,
    len_cap: usize,
) -> Result<Option<usize>> {
    if len_cap > 20 {
        return Err(Error::Budget {
            what: "program search",
            need: "program length cap <= 20".into(),
            got: format!("{len_cap}"),
        });
    }
    let want = target.to_string();
    for len in 0..=len_cap {
        for value in 0..(1u64 << len) {
            let program = Bits::from_u64_msb(value, len).to_string();
            if let TmOutcome::Halted(out) = tm_run(machine, &program, t)? {
                if out == want {
                    return Ok(Some(len));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn b(s: &str) -> Bits {
        s.parse().unwrap()
    }

    #[test]
    fn empty_program_output_has_zero_complexity() {
        // the copier on the empty program writes nothing
        let m = fixtures::copy_machine();
        assert_eq!(kt_complexity(&Bits::new(), &m, 100, 6).unwrap(), Some(0));
    }

    #[test]
    fn copier_gives_each_string_its_own_length() {
        let m = fixtures::copy_machine();
        assert_eq!(kt_complexity(&b("10"), &m, 100, 6).unwrap(), Some(2));
        assert_eq!(kt_complexity(&b("0110"), &m, 100, 6).unwrap(), Some(4));
    }

    #[test]
    fn out_of_reach_strings_hit_the_cap() {
        let m = fixtures::copy_machine();
        // the copier never lengthens its program, so an 8-bit target needs 8 bits
        assert_eq!(kt_complexity(&b("10110100"), &m, 100, 6).unwrap(), None);
    }

    #[test]
    fn budget_refusal() {
        let m = fixtures::copy_machine();
        assert!(matches!(
            kt_complexity(&b("1"), &m, 10, 21),
            Err(Error::Budget { .. })
        ));
    }
}
