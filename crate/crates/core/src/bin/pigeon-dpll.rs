//! Minimal DIMACS CNF solver: DPLL with unit propagation.
//!
//! Usage: pigeon-dpll <file.cnf>
//! Prints the standard `s SATISFIABLE` / `s UNSATISFIABLE` status line and,
//! when satisfiable, `v` lines with a complete assignment terminated by 0.
//! Exits 10 on SAT and 20 on UNSAT like the usual competition solvers. Meant
//! as a small always-available fallback; any real solver can take its place.

use std::process::ExitCode;

struct Solver {
    clauses: Vec<Vec<i32>>,
    assign: Vec<Option<bool>>,
}

#[derive(PartialEq)]
enum Propagated {
    Ok(Vec<usize>),
    Conflict(Vec<usize>),
}

impl Solver {
    fn value(&self, lit: i32) -> Option<bool> {
        self.assign[lit.unsigned_abs() as usize].map(|v| if lit > 0 { v } else { !v })
    }

    /// Assigns all unit clauses to fixpoint; returns the trail for undoing.
    fn propagate(&mut self) -> Propagated {
        let mut trail = Vec::new();
        loop {
            let mut changed = false;
            for ci in 0..self.clauses.len() {
                let mut unassigned: Option<i32> = None;
                let mut satisfied = false;
                let mut open = 0;
                for i in 0..self.clauses[ci].len() {
                    let lit = self.clauses[ci][i];
                    match self.value(lit) {
                        Some(true) => {
                            satisfied = true;
                            break;
                        }
                        Some(false) => {}
                        None => {
                            open += 1;
                            unassigned = Some(lit);
                        }
                    }
                }
                if satisfied {
                    continue;
                }
                match (open, unassigned) {
                    (0, _) => return Propagated::Conflict(trail),
                    (1, Some(lit)) => {
                        let var = lit.unsigned_abs() as usize;
                        self.assign[var] = Some(lit > 0);
                        trail.push(var);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return Propagated::Ok(trail);
            }
        }
    }

    fn undo(&mut self, trail: &[usize]) {
        for &v in trail {
            self.assign[v] = None;
        }
    }

    fn solve(&mut self) -> bool {
        let trail = match self.propagate() {
            Propagated::Conflict(t) => {
                self.undo(&t);
                return false;
            }
            Propagated::Ok(t) => t,
        };
        let branch = (1..self.assign.len()).find(|&v| self.assign[v].is_none());
        let var = match branch {
            None => return true,
            Some(v) => v,
        };
        for guess in [false, true] {
            self.assign[var] = Some(guess);
            if self.solve() {
                return true;
            }
            self.assign[var] = None;
        }
        self.undo(&trail);
        false
    }
}

fn parse_dimacs(text: &str) -> Result<(usize, Vec<Vec<i32>>), String> {
    let mut num_vars = 0usize;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    let mut seen_header = false;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("p ") {
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if toks.len() != 3 || toks[0] != "cnf" {
                return Err(format!("bad problem line: {line}"));
            }
            num_vars = toks[1].parse().map_err(|e| format!("bad var count: {e}"))?;
            seen_header = true;
            continue;
        }
        if !seen_header {
            return Err("clause before problem line".into());
        }
        for tok in line.split_whitespace() {
            let lit: i32 = tok.parse().map_err(|e| format!("bad literal {tok}: {e}"))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                if lit.unsigned_abs() as usize > num_vars {
                    return Err(format!("literal {lit} exceeds declared variables"));
                }
                current.push(lit);
            }
        }
    }
    if !current.is_empty() {
        clauses.push(current);
    }
    Ok((num_vars, clauses))
}

fn main() -> ExitCode {
    let path = match std::env::args().nth(1) {
        Some(p) => p,
        None => {
            eprintln!("usage: pigeon-dpll <file.cnf>");
            return ExitCode::from(1);
        }
    };
    let text = match std::fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("cannot read {path}: {e}");
            return ExitCode::from(1);
        }
    };
    let (num_vars, clauses) = match parse_dimacs(&text) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("parse error: {e}");
            return ExitCode::from(1);
        }
    };
    let mut solver = Solver {
        clauses,
        assign: vec![None; num_vars + 1],
    };
    if solver.solve() {
        println!("s SATISFIABLE");
        let mut line = String::from("v");
        for v in 1..=num_vars {
            let val = solver.assign[v].unwrap_or(false);
            line.push_str(&format!(" {}", if val { v as i64 } else { -(v as i64) }));
            if line.len() > 70 {
                println!("{line}");
                line = String::from("v");
            }
        }
        println!("{line} 0");
        ExitCode::from(10)
    } else {
        println!("s UNSATISFIABLE");
        ExitCode::from(20)
    }
}
