//! Step-bounded simulation of single-tape Turing machines.
//!
//! The tape alphabet is fixed to {'0', '1', '_'} with '_' the blank. The
//! input is written at cells 0.. and the head starts at cell 0. The machine's
//! output is read from the cells it actually wrote: at halt, take the
//! written-cell overlay (unwritten cells count as blank), find the last
//! non-blank written cell at a non-negative position, and return cells
//! 0..=there. A machine that halts without writing outputs the empty string.
//!
//! Text format, one item per line:
//!
//! ```text
//! states <k>
//! start <s>
//! halt <s>
//! delta <state> <read> -> <state> <write> <L|R>
//! ```
//!
//! States are 0..k-1 and the transition table must be total over the
//! non-halting states.

use std::fmt::Write as _;

use crate::error::{Error, Result};

pub const BLANK: char = '_';

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Dir {
    Left,
    Right,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Transition {
    pub next: usize,
    pub write: char,
    pub dir: Dir,
}

#[derive(Clone, Debug)]
pub struct TuringMachine {
    n_states: usize,
    start: usize,
    halt: usize,
    // delta[state][symbol], symbol index 0 -> '0', 1 -> '1', 2 -> blank
    delta: Vec<[Transition; 3]>,
}

pub fn sym_index(c: char) -> Result<usize> {
    match c {
        '0' => Ok(0),
        '1' => Ok(1),
        BLANK => Ok(2),
        other => Err(Error::Parse(format!(
            "tape symbol must be 0, 1 or _, found {other:?}"
        ))),
    }
}

fn sym_char(i: usize) -> char {
    ['0', '1', BLANK][i]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TmOutcome {
    /// Halted within the step bound; the written-overlay output string over
    /// {'0','1','_'}.
    Halted(String),
    Running,
}

impl TuringMachine {
    pub fn new(
        n_states: usize,
        start: usize,
        halt: usize,
        transitions: &[(usize, char, Transition)],
    ) -> Result<TuringMachine> {
        if start >= n_states || halt >= n_states {
            return Err(Error::Parse("start/halt state out of range".into()));
        }
        let dummy = Transition {
            next: usize::MAX,
            write: BLANK,
            dir: Dir::Right,
        };
        let mut delta = vec![[dummy; 3]; n_states];
        let mut seen = vec![[false; 3]; n_states];
        for &(state, read, t) in transitions {
            if state >= n_states || t.next >= n_states {
                return Err(Error::Parse(format!("transition uses unknown state {state}")));
            }
            if state == halt {
                return Err(Error::Parse(
                    "transitions out of the halt state are not allowed".into(),
                ));
            }
            sym_index(t.write)?;
            let s = sym_index(read)?;
            delta[state][s] = t;
            seen[state][s] = true;
        }
        for state in 0..n_states {
            if state == halt {
                continue;
            }
            for s in 0..3 {
                if !seen[state][s] {
                    return Err(Error::PartialMachine {
                        state,
                        symbol: sym_char(s),
                    });
                }
            }
        }
        Ok(TuringMachine {
            n_states,
            start,
            halt,
            delta,
        })
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn halt(&self) -> usize {
        self.halt
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "states {}", self.n_states).unwrap();
        writeln!(s, "start {}", self.start).unwrap();
        writeln!(s, "halt {}", self.halt).unwrap();
        for state in 0..self.n_states {
            if state == self.halt {
                continue;
            }
            for sym in 0..3 {
                let t = self.delta[state][sym];
                writeln!(
                    s,
                    "delta {} {} -> {} {} {}",
                    state,
                    sym_char(sym),
                    t.next,
                    t.write,
                    if t.dir == Dir::Left { "L" } else { "R" }
                )
                .unwrap();
            }
        }
        s
    }

    pub fn from_text(text: &str) -> Result<TuringMachine> {
        let mut n_states = None;
        let mut start = None;
        let mut halt = None;
        let mut transitions = Vec::new();
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[0] {
                "states" if toks.len() == 2 => {
                    n_states = toks[1].parse().ok();
                }
                "start" if toks.len() == 2 => {
                    start = toks[1].parse().ok();
                }
                "halt" if toks.len() == 2 => {
                    halt = toks[1].parse().ok();
                }
                "delta" if toks.len() == 7 && toks[3] == "->" => {
                    let state: usize = toks[1]
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad delta line {line:?}")))?;
                    let read = single_char(toks[2])?;
                    let next: usize = toks[4]
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad delta line {line:?}")))?;
                    let write = single_char(toks[5])?;
                    let dir = match toks[6] {
                        "L" => Dir::Left,
                        "R" => Dir::Right,
                        other => {
                            return Err(Error::Parse(format!("bad direction {other:?}")));
                        }
                    };
                    transitions.push((state, read, Transition { next, write, dir }));
                }
                _ => return Err(Error::Parse(format!("unrecognized machine line {line:?}"))),
            }
        }
        let n_states = n_states.ok_or_else(|| Error::Parse("missing states line".into()))?;
        let start = start.ok_or_else(|| Error::Parse("missing start line".into()))?;
        let halt = halt.ok_or_else(|| Error::Parse("missing halt line".into()))?;
        TuringMachine::new(n_states, start, halt, &transitions)
    }
}

fn single_char(tok: &str) -> Result<char> {
    let mut chars = tok.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(Error::Parse(format!("expected a single symbol, got {tok:?}"))),
    }
}

/// Runs `machine` on `input` for at most `steps` steps.
pub fn tm_run(machine: &TuringMachine, input: &str, steps: u64) -> Result<TmOutcome> {
    for c in input.chars() {
        sym_index(c)?;
    }
    // the head moves at most `steps` cells in either direction
    let span = input.len() + 2 * steps as usize + 2;
    let offset = steps as usize + 1;
    let mut tape = vec![2u8; span];
    let mut written = vec![false; span];
    for (i, c) in input.chars().enumerate() {
        tape[offset + i] = sym_index(c).unwrap() as u8;
    }
    let mut head = offset;
    let mut state = machine.start;
    let mut remaining = steps;
    while state != machine.halt {
        if remaining == 0 {
            return Ok(TmOutcome::Running);
        }
        remaining -= 1;
        let t = machine.delta[state][tape[head] as usize];
        tape[head] = sym_index(t.write).unwrap() as u8;
        written[head] = true;
        match t.dir {
            Dir::Left => {
                if head == 0 {
                    // beyond the modelled span; extend by shifting is not
                    // needed because the span covers every reachable cell
                    unreachable!("head cannot leave the preallocated span");
                }
                head -= 1;
            }
            Dir::Right => head += 1,
        }
        state = t.next;
    }
    // last written non-blank cell at a non-negative position
    let mut last: Option<usize> = None;
    for (i, &w) in written.iter().enumerate().skip(offset) {
        if w && tape[i] != 2 {
            last = Some(i);
        }
    }
    let out = match last {
        None => String::new(),
        Some(l) => (offset..=l)
            .map(|i| if written[i] { sym_char(tape[i] as usize) } else { BLANK })
            .collect(),
    };
    Ok(TmOutcome::Halted(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn immediate_halt_outputs_nothing() {
        let m = fixtures::halting_machine();
        assert_eq!(tm_run(&m, "101", 10).unwrap(), TmOutcome::Halted(String::new()));
    }

    #[test]
    fn copy_machine_writes_input_back() {
        let m = fixtures::copy_machine();
        assert_eq!(
            tm_run(&m, "10", 50).unwrap(),
            TmOutcome::Halted("10".into())
        );
        assert_eq!(tm_run(&m, "", 50).unwrap(), TmOutcome::Halted(String::new()));
        assert_eq!(tm_run(&m, "1", 50).unwrap(), TmOutcome::Halted("1".into()));
        assert_eq!(
            tm_run(&m, "0110", 50).unwrap(),
            TmOutcome::Halted("0110".into())
        );
    }

    #[test]
    fn looping_machine_never_halts() {
        let m = fixtures::looping_machine();
        for bound in [0u64, 1, 10, 1000] {
            assert_eq!(tm_run(&m, "1", bound).unwrap(), TmOutcome::Running);
        }
    }

    #[test]
    fn partial_tables_rejected() {
        let t = Transition {
            next: 0,
            write: '0',
            dir: Dir::Right,
        };
        let err = TuringMachine::new(2, 0, 1, &[(0, '0', t)]);
        assert!(matches!(err, Err(Error::PartialMachine { .. })));
    }

    #[test]
    fn text_roundtrip() {
        let m = fixtures::copy_machine();
        let text = m.to_text();
        let back = TuringMachine::from_text(&text).unwrap();
        assert_eq!(back.to_text(), text);
        assert_eq!(
            tm_run(&back, "10", 50).unwrap(),
            TmOutcome::Halted("10".into())
        );
    }
}
