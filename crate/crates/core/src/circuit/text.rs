//! Line-based text formats for circuits, truth tables and F2 matrices.
//!
//! Circuit files:
//!
//! ```text
//! circuit <n_in> <n_out>
//! gate <k> AND|OR|NOT <ref> [<ref>]
//! out <ref> ...
//! ```
//!
//! where refs are `x<j>` (input) or `g<k>` (gate) and gate ids increase
//! strictly from 0. Truth-table files: a `tt <N>` header line followed by the
//! N-character 0/1 string. Matrix files: `matrix <rows> <cols>` followed by
//! one 0/1 row per line.

use crate::bits::Bits;
use crate::circuit::{Circuit, Gate, GateKind, Ref};
use crate::error::{Error, Result};

fn ref_to_string(r: Ref) -> String {
    match r {
        Ref::Input(j) => format!("x{j}"),
        Ref::Gate(k) => format!("g{k}"),
    }
}

fn parse_ref(s: &str) -> Result<Ref> {
    let (head, num) = s.split_at(1);
    let idx: usize = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad wire reference {s:?}")))?;
    match head {
        "x" => Ok(Ref::Input(idx)),
        "g" => Ok(Ref::Gate(idx)),
        _ => Err(Error::Parse(format!("bad wire reference {s:?}"))),
    }
}

pub fn circuit_to_string(c: &Circuit) -> String {
    let mut s = format!("circuit {} {}\n", c.n_in(), c.n_out());
    for (k, g) in c.gates().iter().enumerate() {
        let kind = match g.kind {
            GateKind::And => "AND",
            GateKind::Or => "OR",
            GateKind::Not => "NOT",
        };
        if g.kind == GateKind::Not {
            s.push_str(&format!("gate {k} {kind} {}\n", ref_to_string(g.a)));
        } else {
            s.push_str(&format!(
                "gate {k} {kind} {} {}\n",
                ref_to_string(g.a),
                ref_to_string(g.b)
            ));
        }
    }
    s.push_str("out");
    for &o in c.outputs() {
        s.push(' ');
        s.push_str(&ref_to_string(o));
    }
    s.push('\n');
    s
}

pub fn circuit_from_str(text: &str) -> Result<Circuit> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty circuit file".into()))?;
    let mut hp = header.split_whitespace();
    if hp.next() != Some("circuit") {
        return Err(Error::Parse("circuit file must start with `circuit`".into()));
    }
    let n_in: usize = hp
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse("bad circuit header".into()))?;
    let n_out: usize = hp
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse("bad circuit header".into()))?;

    let mut gates: Vec<Gate> = Vec::new();
    let mut outputs: Vec<Ref> = Vec::new();
    for line in lines {
        let mut t = line.split_whitespace();
        match t.next() {
            Some("gate") => {
                let k: usize = t
                    .next()
                    .and_then(|x| x.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("bad gate line {line:?}")))?;
                if k != gates.len() {
                    return Err(Error::Parse(format!(
                        "gate ids must increase from 0; expected {} found {k}",
                        gates.len()
                    )));
                }
                let kind = match t.next() {
                    Some("AND") => GateKind::And,
                    Some("OR") => GateKind::Or,
                    Some("NOT") => GateKind::Not,
                    other => {
                        return Err(Error::Parse(format!("unknown gate kind {other:?}")));
                    }
                };
                let a = parse_ref(
                    t.next()
                        .ok_or_else(|| Error::Parse(format!("missing ref in {line:?}")))?,
                )?;
                let b = match kind {
                    GateKind::Not => a,
                    _ => parse_ref(
                        t.next()
                            .ok_or_else(|| Error::Parse(format!("missing ref in {line:?}")))?,
                    )?,
                };
                gates.push(Gate { kind, a, b });
            }
            Some("out") => {
                for r in t {
                    outputs.push(parse_ref(r)?);
                }
            }
            other => return Err(Error::Parse(format!("unexpected line start {other:?}"))),
        }
    }
    if outputs.len() != n_out {
        return Err(Error::Parse(format!(
            "header promises {n_out} outputs, out line has {}",
            outputs.len()
        )));
    }
    Circuit::new(n_in, gates, outputs)
}

pub fn table_to_string(t: &Bits) -> String {
    format!("tt {}\n{}\n", t.len(), t)
}

pub fn table_from_str(text: &str) -> Result<Bits> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty truth-table file".into()))?;
    let mut hp = header.split_whitespace();
    if hp.next() != Some("tt") {
        return Err(Error::Parse("truth-table file must start with `tt`".into()));
    }
    let n: usize = hp
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse("bad tt header".into()))?;
    let body = lines
        .next()
        .ok_or_else(|| Error::Parse("missing table line".into()))?;
    let bits: Bits = body.parse()?;
    if bits.len() != n {
        return Err(Error::Parse(format!(
            "header promises {n} bits, body has {}",
            bits.len()
        )));
    }
    Ok(bits)
}

/// Row-major 0/1 matrix.
pub fn matrix_to_string(rows: &[Bits]) -> String {
    let cols = rows.first().map_or(0, Bits::len);
    let mut s = format!("matrix {} {}\n", rows.len(), cols);
    for r in rows {
        s.push_str(&r.to_string());
        s.push('\n');
    }
    s
}

pub fn matrix_from_str(text: &str) -> Result<Vec<Bits>> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty matrix file".into()))?;
    let mut hp = header.split_whitespace();
    if hp.next() != Some("matrix") {
        return Err(Error::Parse("matrix file must start with `matrix`".into()));
    }
    let nrows: usize = hp
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse("bad matrix header".into()))?;
    let ncols: usize = hp
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse("bad matrix header".into()))?;
    let mut rows = Vec::with_capacity(nrows);
    for _ in 0..nrows {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse("matrix body shorter than header".into()))?;
        let r: Bits = line.parse()?;
        if r.len() != ncols {
            return Err(Error::Parse(format!(
                "matrix row has {} entries, header promises {ncols}",
                r.len()
            )));
        }
        rows.push(r);
    }
    Ok(rows)
}
