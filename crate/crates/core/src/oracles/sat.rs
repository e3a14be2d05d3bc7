//! Inversion through an external DIMACS solver, one process per query.
//!
//! The map's circuit backend is compiled to CNF, written to a temp file and
//! handed to the solver as its single argument. Success is parsed from the
//! standard `s SATISFIABLE` / `s UNSATISFIABLE` status line and `v` value
//! lines; nothing else about the solver is assumed. Returned models are
//! re-checked against the map before being reported.

use std::path::PathBuf;
use std::process::Command;
use std::sync::Mutex;

use crate::bits::Bits;
use crate::circuit::to_cnf;
use crate::error::{Error, Result};
use crate::oracles::{Inversion, InverterOracle};
use crate::stretch::StretchMap;

/// Environment variable consulted by [`SatInverter::from_env`].
pub const SAT_CMD_ENV: &str = "PIGEON_SAT_CMD";

pub struct SatInverter {
    command: String,
    keep_cnf: bool,
    last_cnf: Mutex<Option<PathBuf>>,
}

impl SatInverter {
    pub fn new(command: impl Into<String>) -> SatInverter {
        SatInverter {
            command: command.into(),
            keep_cnf: false,
            last_cnf: Mutex::new(None),
        }
    }

    /// Uses the command named by `PIGEON_SAT_CMD`, when set.
    pub fn from_env() -> Option<SatInverter> {
        std::env::var(SAT_CMD_ENV).ok().map(SatInverter::new)
    }

    /// Keep query files on disk instead of deleting them with the temp dir.
    pub fn keep_cnf(mut self, keep: bool) -> SatInverter {
        self.keep_cnf = keep;
        self
    }

    pub fn command(&self) -> &str {
        &self.command
    }

    /// Path of the most recent query file, when kept.
    pub fn last_cnf_path(&self) -> Option<PathBuf> {
        self.last_cnf.lock().unwrap().clone()
    }

    fn run_solver(&self, path: &std::path::Path) -> Result<String> {
        let mut parts = self.command.split_whitespace();
        let prog = parts
            .next()
            .ok_or_else(|| Error::SolverFailure("empty solver command".into()))?;
        let output = Command::new(prog)
            .args(parts)
            .arg(path)
            .output()
            .map_err(|e| Error::SolverFailure(format!("cannot run {prog:?}: {e}")))?;
        // DIMACS solvers signal the verdict via exit codes 10/20; only the
        // printed status line matters here
        Ok(String::from_utf8_lossy(&output.stdout).into_owned())
    }
}

fn parse_solver_output(stdout: &str, n_in: usize) -> Result<Option<Bits>> {
    let mut sat: Option<bool> = None;
    let mut assignment = vec![false; n_in];
    for line in stdout.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("s ") {
            match rest.trim() {
                "SATISFIABLE" => sat = Some(true),
                "UNSATISFIABLE" => sat = Some(false),
                other => {
                    return Err(Error::SolverFailure(format!(
                        "unrecognized status line {other:?}"
                    )))
                }
            }
        } else if let Some(rest) = line.strip_prefix("v ") {
            for tok in rest.split_whitespace() {
                let lit: i64 = tok.parse().map_err(|_| {
                    Error::SolverFailure(format!("bad literal {tok:?} in value line"))
                })?;
                if lit == 0 {
                    continue;
                }
                let var = lit.unsigned_abs() as usize;
                if var <= n_in {
                    assignment[var - 1] = lit > 0;
                }
            }
        }
    }
    match sat {
        Some(true) => Ok(Some(Bits::from_bools(&assignment))),
        Some(false) => Ok(None),
        None => Err(Error::SolverFailure(
            "solver printed no s-status line".into(),
        )),
    }
}

impl InverterOracle for SatInverter {
    fn invert(&self, map: &StretchMap, target: &Bits) -> Result<Inversion> {
        if target.len() != map.out_width() {
            return Err(Error::ArityMismatch {
                want: map.out_width(),
                got: target.len(),
            });
        }
        let circuit = map.circuit().ok_or(Error::NotCircuitBacked)?;
        let cnf = to_cnf(circuit, target);

        let dir = tempfile::Builder::new().prefix("pigeon-cnf-").tempdir()?;
        let path = dir.path().join("query.cnf");
        std::fs::write(&path, cnf.to_dimacs())?;

        let stdout = self.run_solver(&path)?;
        if self.keep_cnf {
            let kept = dir.keep();
            *self.last_cnf.lock().unwrap() = Some(kept.join("query.cnf"));
        }
        match parse_solver_output(&stdout, map.in_width())? {
            None => Ok(Inversion::NonMember),
            Some(preimage) => {
                if map.eval(&preimage) != *target {
                    return Err(Error::SolverFailure(
                        "model does not re-evaluate to the target".into(),
                    ));
                }
                Ok(Inversion::Member(preimage))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sat_and_unsat() {
        let sat = "c comment\ns SATISFIABLE\nv 1 -2 3 0\n";
        let got = parse_solver_output(sat, 3).unwrap().unwrap();
        assert_eq!(got.to_string(), "101");

        let unsat = "s UNSATISFIABLE\n";
        assert!(parse_solver_output(unsat, 3).unwrap().is_none());

        assert!(parse_solver_output("c nothing\n", 3).is_err());
    }

    #[test]
    fn value_lines_may_split() {
        let out = "s SATISFIABLE\nv 1 2\nv -3\nv 0\n";
        let got = parse_solver_output(out, 3).unwrap().unwrap();
        assert_eq!(got.to_string(), "110");
    }
}
