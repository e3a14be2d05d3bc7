//! A single-output circuit evaluating a bit-probe scheme.
//!
//! A scheme stores `G(x)` (the encoded data, `b` bits per row), `H(y)` (which
//! `k` cells each query probes) and `Z[w][y]` (the answer given the probed
//! word and the query). The compiled circuit takes `x` then `y`, each `n`
//! bits MSB first, and chains three table-indexing stages: synthesized
//! circuits for every encoded bit and probe-address bit, a bus index per
//! probe, and a synthesized answer table over the probed word and the query.

use crate::bits::Bits;
use crate::circuit::{mux_gadget, mux_sel_bits, synthesize, Circuit, CircuitBuilder, Ref};
use crate::error::{Error, Result};

/// Table-level description of a probe scheme over `D = Q = {0,1}^n`.
#[derive(Clone, Debug)]
pub struct BitProbeScheme {
    /// Memory bits per datum.
    pub b: usize,
    /// Probes per query.
    pub k: usize,
    /// `2^n` rows of `b` bits; row `x` is `G(x)`.
    pub g_rows: Vec<Bits>,
    /// `2^n` rows of `k` cell indices in `[b]`.
    pub h_rows: Vec<Vec<usize>>,
    /// `2^k` rows of `2^n` bits; bit `y` of row `w` answers query `y` when
    /// the probes read `w` (MSB-first probe order).
    pub z_rows: Vec<Bits>,
}

impl BitProbeScheme {
    pub fn n(&self) -> usize {
        assert!(!self.g_rows.is_empty());
        self.g_rows.len().trailing_zeros() as usize
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let space = 1usize << n;
        let ok = self.g_rows.len() == space
            && self.g_rows.iter().all(|r| r.len() == self.b)
            && self.h_rows.len() == space
            && self
                .h_rows
                .iter()
                .all(|r| r.len() == self.k && r.iter().all(|&i| i < self.b))
            && self.z_rows.len() == (1 << self.k)
            && self.z_rows.iter().all(|r| r.len() == space);
        if ok {
            Ok(())
        } else {
            Err(Error::Infeasible {
                what: "probe scheme",
                detail: "table shapes do not match (n, b, k)".into(),
            })
        }
    }
}

impl BitProbeScheme {
    /// Text form: a `scheme <n> <b> <k>` header, then the `2^n` encoded-data
    /// rows, the `2^n` probe-address rows (space-separated cell indices) and
    /// the `2^k` answer rows.
    pub fn to_text(&self) -> String {
        let n = self.n();
        let mut s = format!("scheme {} {} {}\n", n, self.b, self.k);
        for row in &self.g_rows {
            s.push_str(&row.to_string());
            s.push('\n');
        }
        for row in &self.h_rows {
            let cells: Vec<String> = row.iter().map(usize::to_string).collect();
            s.push_str(&cells.join(" "));
            s.push('\n');
        }
        for row in &self.z_rows {
            s.push_str(&row.to_string());
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<BitProbeScheme> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty scheme file".into()))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() != 4 || toks[0] != "scheme" {
            return Err(Error::Parse("scheme file must start with `scheme n b k`".into()));
        }
        let parse = |t: &str| -> Result<usize> {
            t.parse()
                .map_err(|_| Error::Parse(format!("bad scheme header field {t:?}")))
        };
        let (n, b, k) = (parse(toks[1])?, parse(toks[2])?, parse(toks[3])?);
        let space = 1usize << n;
        let mut need = |what: &str| -> Result<String> {
            lines
                .next()
                .map(str::to_string)
                .ok_or_else(|| Error::Parse(format!("scheme file ends before {what}")))
        };
        let mut g_rows = Vec::with_capacity(space);
        for _ in 0..space {
            g_rows.push(need("the encoded-data rows")?.parse()?);
        }
        let mut h_rows = Vec::with_capacity(space);
        for _ in 0..space {
            let line = need("the probe rows")?;
            let row: Result<Vec<usize>> = line
                .split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| Error::Parse(format!("bad probe index {t:?}")))
                })
                .collect();
            h_rows.push(row?);
        }
        let mut z_rows = Vec::with_capacity(1 << k);
        for _ in 0..(1 << k) {
            z_rows.push(need("the answer rows")?.parse()?);
        }
        let scheme = BitProbeScheme {
            b,
            k,
            g_rows,
            h_rows,
            z_rows,
        };
        scheme.validate(n)?;
        Ok(scheme)
    }
}

/// Ground-truth evaluation by pure table lookups.
pub fn scheme_eval(scheme: &BitProbeScheme, x: usize, y: usize) -> bool {
    let probes = &scheme.h_rows[y];
    let mut word = 0usize;
    for &cell in probes {
        word = (word << 1) | scheme.g_rows[x].get(cell) as usize;
    }
    scheme.z_rows[word].get(y)
}

#[derive(Clone, Debug)]
pub struct BitProbeBuild {
    pub circuit: Circuit,
    pub size_encode: usize,
    pub size_probe: usize,
    pub size_answer: usize,
}

/// Compiles the scheme into a circuit on `2n` inputs (`x` then `y`).
pub fn bitprobe_circuit(scheme: &BitProbeScheme, n: usize) -> Result<BitProbeBuild> {
    scheme.validate(n)?;
    let space = 1usize << n;
    let mut builder = CircuitBuilder::new(2 * n);
    let x_wires: Vec<Ref> = (0..n).map(Ref::Input).collect();
    let y_wires: Vec<Ref> = (n..2 * n).map(Ref::Input).collect();

    // encoded-data stage: one synthesized circuit per memory cell
    let mut size_encode = 0;
    let mut cells = Vec::with_capacity(scheme.b);
    for cell in 0..scheme.b {
        let table = Bits::from_fn(space, |x| scheme.g_rows[x].get(cell));
        let sub = synthesize(&table);
        size_encode += sub.size();
        cells.push(builder.splice(&sub, &x_wires)[0]);
    }

    // probe stage: per probe, synthesized address bits feeding a bus index
    let before_probe = builder.size();
    let addr_bits = mux_sel_bits(scheme.b);
    let mux = mux_gadget(scheme.b);
    let mut word = Vec::with_capacity(scheme.k);
    for t in 0..scheme.k {
        let mut mux_in = cells.clone();
        for a in 0..addr_bits {
            let table = Bits::from_fn(space, |y| {
                (scheme.h_rows[y][t] >> (addr_bits - 1 - a)) & 1 == 1
            });
            let sub = synthesize(&table);
            mux_in.push(builder.splice(&sub, &y_wires)[0]);
        }
        word.push(builder.splice(&mux, &mux_in)[0]);
    }
    let size_probe = builder.size() - before_probe;

    // answer stage: one synthesized table over (w, y)
    let before_answer = builder.size();
    let answer_table = Bits::from_fn((1 << scheme.k) * space, |p| {
        let w = p >> n;
        let y = p & (space - 1);
        scheme.z_rows[w].get(y)
    });
    let sub = synthesize(&answer_table);
    let mut answer_in = word;
    answer_in.extend(y_wires.iter().copied());
    let out = builder.splice(&sub, &answer_in)[0];
    let size_answer = builder.size() - before_answer;

    Ok(BitProbeBuild {
        circuit: builder.finish(vec![out]),
        size_encode,
        size_probe,
        size_answer,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use rand::Rng;

    fn eval_circuit(build: &BitProbeBuild, n: usize, x: usize, y: usize) -> bool {
        let input = Bits::from_fn(2 * n, |t| {
            if t < n {
                (x >> (n - 1 - t)) & 1 == 1
            } else {
                (y >> (2 * n - 1 - t)) & 1 == 1
            }
        });
        build.circuit.eval(&input).unwrap().get(0)
    }

    fn random_scheme(rng: &mut rand_chacha::ChaCha8Rng, n: usize, b: usize, k: usize) -> BitProbeScheme {
        let space = 1usize << n;
        BitProbeScheme {
            b,
            k,
            g_rows: (0..space).map(|_| Bits::random(rng, b)).collect(),
            h_rows: (0..space)
                .map(|_| (0..k).map(|_| rng.gen_range(0..b)).collect())
                .collect(),
            z_rows: (0..1usize << k).map(|_| Bits::random(rng, space)).collect(),
        }
    }

    #[test]
    fn single_probe_of_the_identity_encoding() {
        // G(x) = x padded, H(y) = always cell 0, answer = the probed bit:
        // the circuit computes bit 0 of x
        let n = 2;
        let space = 4;
        let scheme = BitProbeScheme {
            b: 3,
            k: 1,
            g_rows: (0..space)
                .map(|x| Bits::from_fn(3, |t| t < 2 && (x >> (1 - t)) & 1 == 1))
                .collect(),
            h_rows: (0..space).map(|_| vec![0]).collect(),
            z_rows: vec![Bits::zeros(space), Bits::from_fn(space, |_| true)],
        };
        let build = bitprobe_circuit(&scheme, n).unwrap();
        for x in 0..space {
            for y in 0..space {
                let want = (x >> 1) & 1 == 1;
                assert_eq!(scheme_eval(&scheme, x, y), want);
                assert_eq!(eval_circuit(&build, n, x, y), want);
            }
        }
    }

    #[test]
    fn equality_via_one_hot_encoding() {
        // G(x) = the x-th unit vector, one probe at cell y, answer = probe:
        // computes the equality function [x == y]
        let n = 2;
        let space = 4;
        let scheme = BitProbeScheme {
            b: 4,
            k: 1,
            g_rows: (0..space)
                .map(|x| Bits::from_fn(4, |t| t == x))
                .collect(),
            h_rows: (0..space).map(|y| vec![y]).collect(),
            z_rows: vec![Bits::zeros(space), Bits::from_fn(space, |_| true)],
        };
        let build = bitprobe_circuit(&scheme, n).unwrap();
        for x in 0..space {
            for y in 0..space {
                assert_eq!(scheme_eval(&scheme, x, y), x == y);
                assert_eq!(eval_circuit(&build, n, x, y), x == y, "({x},{y})");
            }
        }
    }

    #[test]
    fn random_schemes_match_semantics_exhaustively() {
        let mut rng = fixtures::rng(55);
        for trial in 0..8 {
            let scheme = random_scheme(&mut rng, 3, 4, 2);
            let build = bitprobe_circuit(&scheme, 3).unwrap();
            for x in 0..8 {
                for y in 0..8 {
                    assert_eq!(
                        eval_circuit(&build, 3, x, y),
                        scheme_eval(&scheme, x, y),
                        "trial {trial} ({x},{y})"
                    );
                }
            }
            assert_eq!(
                build.size_encode + build.size_probe + build.size_answer,
                build.circuit.size()
            );
        }
    }

    #[test]
    fn shape_validation() {
        let mut scheme = random_scheme(&mut fixtures::rng(1), 2, 3, 1);
        scheme.h_rows[1][0] = 3; // out of range
        assert!(bitprobe_circuit(&scheme, 2).is_err());
    }

    #[test]
    fn text_roundtrip() {
        let scheme = random_scheme(&mut fixtures::rng(2), 3, 4, 2);
        let text = scheme.to_text();
        let back = BitProbeScheme::from_text(&text).unwrap();
        assert_eq!(back.to_text(), text);
        for x in 0..8 {
            for y in 0..8 {
                assert_eq!(scheme_eval(&back, x, y), scheme_eval(&scheme, x, y));
            }
        }
    }
}
