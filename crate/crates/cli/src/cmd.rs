//! Subcommand implementations.

use std::path::{Path, PathBuf};

use clap::{Args, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_rational::Ratio;

use pigeon_core::bits::Bits;
use pigeon_core::circuit::{to_cnf, truth_table};
use pigeon_core::error::{Error, Result};
use pigeon_core::forge::{self, manifest::InstanceSpec};
use pigeon_core::ggm::{hardness_extract, solve_empty_from_hard_tt, HardTableSource};
use pigeon_core::oracles::{
    exact_complexity, solve_empty_randomized, BruteForceInverter, ComplexityOutcome,
    InverterOracle, SatInverter,
};
use pigeon_core::property_circuits::{bitprobe_circuit, nonrigid_circuit};
use pigeon_core::stretch::StretchMap;
use pigeon_core::verifiers;

use crate::files;

pub enum Outcome {
    Pass,
    Fail,
}

fn result_line(parts: &[(&str, String)]) {
    let body: Vec<String> = parts.iter().map(|(k, v)| format!("{k}={v}")).collect();
    println!("RESULT {}", body.join(" "));
}

fn parse_ratio(s: &str) -> std::result::Result<Ratio<u64>, String> {
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p: u64 = p.parse().map_err(|_| format!("bad ratio {s:?}"))?;
    let q: u64 = q.parse().map_err(|_| format!("bad ratio {s:?}"))?;
    if q == 0 {
        return Err("ratio denominator must be nonzero".into());
    }
    Ok(Ratio::new(p, q))
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleKind {
    Brute,
    Sat,
}

#[derive(Args)]
pub struct OracleArgs {
    /// Inversion backend.
    #[arg(long, value_enum, default_value = "brute")]
    oracle: OracleKind,
    /// Solver command for the SAT backend; overrides PIGEON_SAT_CMD.
    #[arg(long)]
    sat_cmd: Option<String>,
    /// Keep solver query files and print their location.
    #[arg(long)]
    keep_cnf: bool,
    /// Input-width cap for brute-force inversion.
    #[arg(long, default_value_t = 28)]
    budget_bits: usize,
}

enum AnyInverter {
    Brute(BruteForceInverter),
    Sat(SatInverter),
}

impl AnyInverter {
    fn as_dyn(&self) -> &dyn InverterOracle {
        match self {
            AnyInverter::Brute(b) => b,
            AnyInverter::Sat(s) => s,
        }
    }

    fn report_kept_cnf(&self) {
        if let AnyInverter::Sat(s) = self {
            if let Some(path) = s.last_cnf_path() {
                println!("kept cnf: {}", path.display());
            }
        }
    }
}

impl OracleArgs {
    fn build(&self) -> Result<AnyInverter> {
        match self.oracle {
            OracleKind::Brute => Ok(AnyInverter::Brute(BruteForceInverter {
                max_in_bits: self.budget_bits,
            })),
            OracleKind::Sat => {
                let inv = match &self.sat_cmd {
                    Some(cmd) => SatInverter::new(cmd.clone()),
                    None => SatInverter::from_env().ok_or_else(|| {
                        Error::SolverFailure(
                            "no solver named: pass --sat-cmd or set PIGEON_SAT_CMD".into(),
                        )
                    })?,
                };
                Ok(AnyInverter::Sat(inv.keep_cnf(self.keep_cnf)))
            }
        }
    }

    /// Solver-backed inversion needs gates behind the map.
    fn build_map(&self, spec: &InstanceSpec) -> Result<StretchMap> {
        match self.oracle {
            OracleKind::Brute => spec.build(),
            OracleKind::Sat => spec.build_circuit_backed(),
        }
    }
}

#[derive(Subcommand)]
pub enum Command {
    /// Write an instance manifest.
    Gen(GenArgs),
    /// Find a string outside an instance's range.
    Solve(SolveArgs),
    /// Check solutions and pseudorandom properties.
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
    /// Exact minimum circuit size of a truth table.
    Complexity(ComplexityArgs),
    /// Condense a certified-hard table into a shorter hard one.
    Extract(ExtractArgs),
    /// Compile witness circuits.
    Witness {
        #[command(subcommand)]
        what: WitnessCmd,
    },
    /// Fixed-weight string codecs.
    Codec {
        #[command(subcommand)]
        what: CodecCmd,
    },
    /// Compile a circuit plus output constraint to DIMACS.
    Cnf(CnfArgs),
}

#[derive(Args)]
pub struct GenArgs {
    /// hard_tt | prg | extractor | rigid | kt | duplicate
    #[arg(long)]
    kind: String,
    /// Table length for hard_tt.
    #[arg(long = "N")]
    n_len: Option<usize>,
    /// Size parameter for prg/extractor/rigid/kt/duplicate.
    #[arg(long)]
    n: Option<usize>,
    /// Predictor size factor for prg.
    #[arg(long)]
    c: Option<usize>,
    /// Bias bound for extractor, written p/q.
    #[arg(long, value_parser = parse_ratio)]
    eps: Option<Ratio<u64>>,
    /// Forced point-count factor for extractor (desk-scale).
    #[arg(long)]
    d_override: Option<u64>,
    /// Rank budget for rigid.
    #[arg(long)]
    r: Option<usize>,
    /// Sparse-entry budget for rigid.
    #[arg(long)]
    s_count: Option<usize>,
    /// Field order for rigid.
    #[arg(long)]
    q: Option<u64>,
    /// Step bound for kt.
    #[arg(long)]
    t: Option<u64>,
    /// Machine description file for kt.
    #[arg(long)]
    tm: Option<PathBuf>,
    /// Instead of a manifest, search exhaustively for the smallest object
    /// with the target property; the fallback for lengths the instance
    /// builders refuse.
    #[arg(long)]
    brute_construct: bool,
    #[arg(short, long)]
    out: PathBuf,
}

fn missing(flag: &str, kind: &str) -> Error {
    Error::Parse(format!("gen --kind {kind} needs --{flag}"))
}

fn run_gen(a: GenArgs) -> Result<Outcome> {
    if a.brute_construct {
        return run_brute_construct(a);
    }
    let spec = match a.kind.as_str() {
        "hard_tt" => InstanceSpec::HardTt {
            n_len: a.n_len.ok_or_else(|| missing("N", "hard_tt"))?,
        },
        "prg" => InstanceSpec::Prg {
            n: a.n.ok_or_else(|| missing("n", "prg"))?,
            c: a.c.unwrap_or(16),
        },
        "extractor" => InstanceSpec::Extractor {
            n: a.n.ok_or_else(|| missing("n", "extractor"))?,
            eps: a.eps.ok_or_else(|| missing("eps", "extractor"))?,
            d_override: a.d_override,
        },
        "rigid" => InstanceSpec::Rigid {
            n: a.n.ok_or_else(|| missing("n", "rigid"))?,
            r: a.r.ok_or_else(|| missing("r", "rigid"))?,
            s_count: a.s_count.ok_or_else(|| missing("s-count", "rigid"))?,
            q: a.q.unwrap_or(2),
        },
        "kt" => InstanceSpec::Kt {
            n: a.n.ok_or_else(|| missing("n", "kt"))?,
            t: a.t.ok_or_else(|| missing("t", "kt"))?,
            machine: files::read_machine(&a.tm.ok_or_else(|| missing("tm", "kt"))?)?,
        },
        "duplicate" => InstanceSpec::Duplicate {
            n: a.n.ok_or_else(|| missing("n", "duplicate"))?,
        },
        other => return Err(Error::Parse(format!("unknown kind {other:?}"))),
    };
    // building validates the widths before anything lands on disk
    let map = spec.build()?;
    files::write_manifest(&a.out, &spec)?;
    result_line(&[
        ("kind", a.kind.clone()),
        ("in", map.in_width().to_string()),
        ("out", map.out_width().to_string()),
        ("file", a.out.display().to_string()),
    ]);
    Ok(Outcome::Pass)
}

/// Exhaustive construction for lengths where no valid instance exists:
/// enumerate candidate objects in lexicographic order and keep the first
/// one the matching verifier certifies.
fn run_brute_construct(a: GenArgs) -> Result<Outcome> {
    match a.kind.as_str() {
        "hard_tt" => {
            let n_len = a.n_len.ok_or_else(|| missing("N", "hard_tt"))?;
            let n_in = pigeon_core::circuit::table_inputs(n_len);
            let s_max = n_len / (2 * n_in);
            if n_len > 20 {
                return Err(Error::Budget {
                    what: "exhaustive table construction",
                    need: "N <= 20".into(),
                    got: format!("{n_len}"),
                });
            }
            for v in 0..(1u64 << n_len) {
                let t = Bits::from_u64_msb(v, n_len);
                if matches!(
                    exact_complexity(&t, s_max)?,
                    ComplexityOutcome::AboveCap
                ) {
                    files::write_table(&a.out, &t)?;
                    result_line(&[
                        ("kind", "hard_tt".into()),
                        ("table", t.to_string()),
                        ("min_gates", (s_max + 1).to_string()),
                    ]);
                    return Ok(Outcome::Pass);
                }
            }
            Err(Error::Infeasible {
                what: "exhaustive table construction",
                detail: format!("every {n_len}-bit table fits in {s_max} gates"),
            })
        }
        "kt" => {
            let n = a.n.ok_or_else(|| missing("n", "kt"))?;
            let t = a.t.ok_or_else(|| missing("t", "kt"))?;
            let machine = files::read_machine(&a.tm.ok_or_else(|| missing("tm", "kt"))?)?;
            if n > 12 {
                return Err(Error::Budget {
                    what: "exhaustive string construction",
                    need: "n <= 12".into(),
                    got: format!("{n}"),
                });
            }
            for v in 0..(1u64 << n) {
                let s = Bits::from_u64_msb(v, n);
                if verifiers::kt_complexity(&s, &machine, t, n - 2)?.is_none() {
                    files::write_table(&a.out, &s)?;
                    result_line(&[("kind", "kt".into()), ("string", s.to_string())]);
                    return Ok(Outcome::Pass);
                }
            }
            Err(Error::Infeasible {
                what: "exhaustive string construction",
                detail: format!("every {n}-bit string has a short program"),
            })
        }
        "rigid" => {
            let n = a.n.ok_or_else(|| missing("n", "rigid"))?;
            let r = a.r.ok_or_else(|| missing("r", "rigid"))?;
            let s_count = a.s_count.ok_or_else(|| missing("s-count", "rigid"))?;
            if a.q.unwrap_or(2) != 2 || n > 4 {
                return Err(Error::Budget {
                    what: "exhaustive matrix construction",
                    need: "q = 2 and n <= 4".into(),
                    got: format!("q={}, n={n}", a.q.unwrap_or(2)),
                });
            }
            for v in 0..(1u64 << (n * n)) {
                let rows: Vec<Bits> = (0..n)
                    .map(|i| Bits::from_u64_msb((v >> (n * (n - 1 - i))) & ((1 << n) - 1), n))
                    .collect();
                if verifiers::rigidity_distance(&rows, r)? > s_count {
                    std::fs::write(
                        &a.out,
                        pigeon_core::circuit::text::matrix_to_string(&rows),
                    )?;
                    let flat: String = rows.iter().map(Bits::to_string).collect();
                    result_line(&[("kind", "rigid".into()), ("matrix", flat)]);
                    return Ok(Outcome::Pass);
                }
            }
            Err(Error::Infeasible {
                what: "exhaustive matrix construction",
                detail: format!("no {n}x{n} matrix is ({r},{s_count})-rigid"),
            })
        }
        other => Err(Error::Infeasible {
            what: "exhaustive construction",
            detail: format!(
                "only hard_tt, kt and rigid objects are enumerable; got {other:?}"
            ),
        }),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolveMode {
    /// Sample uniform outputs until one misses the range.
    Random,
    /// Reduce through the tree expansion of a hard table.
    HardTt,
    /// Lexicographic sweep for the smallest non-range string.
    Brute,
}

#[derive(Args)]
pub struct SolveArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_enum, default_value = "random")]
    mode: SolveMode,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Fixture table file for hard-tt mode; searched when absent.
    #[arg(long)]
    hard_tt: Option<PathBuf>,
    /// Expansion depth override for hard-tt mode.
    #[arg(long)]
    k_override: Option<usize>,
    /// Hardness exponent for the depth formula, written p/q.
    #[arg(long, value_parser = parse_ratio, default_value = "1/2")]
    eps: Ratio<u64>,
    /// Certified complexity threshold when searching for a hard table.
    #[arg(long, default_value_t = 4)]
    min_complexity: usize,
    /// Random tables tried when searching for a hard table.
    #[arg(long, default_value_t = 200)]
    attempts: usize,
    /// Write the solution as a truth-table file.
    #[arg(short, long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    oracle: OracleArgs,
}

fn run_solve(a: SolveArgs) -> Result<Outcome> {
    let map = a.oracle.build_map(&files::read_manifest(&a.instance)?)?;
    let inverter = a.oracle.build()?;
    let (solution, extra): (Bits, Vec<(&str, String)>) = match a.mode {
        SolveMode::Random => {
            let run = solve_empty_randomized(&map, inverter.as_dyn(), a.seed)?;
            (run.solution, vec![("trials", run.trials.to_string())])
        }
        SolveMode::HardTt => {
            let source = match &a.hard_tt {
                Some(path) => HardTableSource::Fixture(vec![files::read_table(path)?]),
                None => HardTableSource::Search {
                    min_complexity: a.min_complexity,
                    seed: a.seed,
                    attempts: a.attempts,
                },
            };
            let out =
                solve_empty_from_hard_tt(&map, a.eps, &source, inverter.as_dyn(), a.k_override)?;
            (
                out.solution,
                vec![
                    ("calls", out.inverter_calls.to_string()),
                    ("k", out.depth.to_string()),
                    ("table_width", out.table_width.to_string()),
                ],
            )
        }
        SolveMode::Brute => {
            // the sweep materializes the range, which is a separate code
            // path from the inverter, so its answer gets re-certified
            let candidate = sweep_smallest(&map, a.oracle.budget_bits)?;
            if !forge::verify_solution(&map, &candidate, inverter.as_dyn())? {
                return Err(Error::Infeasible {
                    what: "solution check",
                    detail: "the swept candidate failed inverter verification".into(),
                });
            }
            (candidate, vec![])
        }
    };
    // random and hard-tt solutions already carry the inverter's own
    // non-membership certificate
    inverter.report_kept_cnf();
    if let Some(path) = &a.out {
        files::write_table(path, &solution)?;
    }
    let mut parts = vec![
        ("mode", mode_name(a.mode).to_string()),
        ("solution", solution.to_string()),
    ];
    parts.extend(extra);
    result_line(&parts);
    Ok(Outcome::Pass)
}

fn mode_name(m: SolveMode) -> &'static str {
    match m {
        SolveMode::Random => "random",
        SolveMode::HardTt => "hard_tt",
        SolveMode::Brute => "brute",
    }
}

/// Materializes the range (outputs below the pigeonhole bound) and returns
/// the lexicographically smallest string outside it.
fn sweep_smallest(map: &StretchMap, budget_bits: usize) -> Result<Bits> {
    if map.in_width() > budget_bits || map.out_width() > 64 {
        return Err(Error::Budget {
            what: "lexicographic sweep",
            need: format!("in <= {budget_bits} and out <= 64"),
            got: format!("in {}, out {}", map.in_width(), map.out_width()),
        });
    }
    if !map.is_stretching() {
        return Err(Error::NotStretching {
            in_width: map.in_width(),
            out_width: map.out_width(),
            detail: "a sweep needs a stretching instance".into(),
        });
    }
    let bound = (1u64 << map.in_width()) + 2;
    let mut hit = vec![false; bound as usize];
    for p in 0..(1u64 << map.in_width()) {
        let y = map.eval(&Bits::from_u64_msb(p, map.in_width()));
        let v = y.to_u64_msb();
        if v < bound {
            hit[v as usize] = true;
        }
    }
    let smallest = (0..bound)
        .find(|&v| !hit[v as usize])
        .expect("a map into more outputs than inputs leaves a hole below the bound");
    Ok(Bits::from_u64_msb(smallest, map.out_width()))
}

#[derive(Subcommand)]
pub enum VerifyCmd {
    /// Is the candidate outside the instance's range?
    Empty {
        #[arg(long)]
        instance: PathBuf,
        /// Candidate as a truth-table file.
        #[arg(long)]
        candidate: PathBuf,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Does every small circuit fail to distinguish the sequence?
    Prg {
        /// One bit string per line.
        #[arg(long)]
        sequence: PathBuf,
        #[arg(long)]
        n: usize,
        /// Sample circuits instead of exhausting them (never authoritative).
        #[arg(long)]
        approx: bool,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Is the coefficient table a two-source extractor?
    Extractor {
        /// Concatenated coefficients as a truth-table file.
        #[arg(long)]
        alphas: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = parse_ratio)]
        eps: Ratio<u64>,
        #[arg(long)]
        approx: bool,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Is the matrix far from every low-rank matrix?
    Rigid {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        sparsity: usize,
        #[arg(long)]
        approx: bool,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Shortest-program length of a table under a machine and step bound.
    Kt {
        #[arg(long)]
        tt: PathBuf,
        #[arg(long)]
        tm: PathBuf,
        #[arg(long)]
        t: u64,
        #[arg(long, default_value_t = 12)]
        cap: usize,
        /// Pass only if the complexity is at least this.
        #[arg(long)]
        min: Option<usize>,
    },
}

fn run_verify(cmd: VerifyCmd) -> Result<Outcome> {
    match cmd {
        VerifyCmd::Empty {
            instance,
            candidate,
            oracle,
        } => {
            let map = oracle.build_map(&files::read_manifest(&instance)?)?;
            let cand = files::read_table(&candidate)?;
            if cand.len() != map.out_width() {
                return Err(Error::ArityMismatch {
                    want: map.out_width(),
                    got: cand.len(),
                });
            }
            let inverter = oracle.build()?;
            let ok = forge::verify_solution(&map, &cand, inverter.as_dyn())?;
            inverter.report_kept_cnf();
            result_line(&[("valid", ok.to_string())]);
            Ok(if ok { Outcome::Pass } else { Outcome::Fail })
        }
        VerifyCmd::Prg {
            sequence,
            n,
            approx,
            samples,
            seed,
        } => {
            let seq = read_sequence(&sequence)?;
            if approx {
                let adv = approx_prg_advantage(&seq, n, samples, seed)?;
                let threshold =
                    num_rational::BigRational::new(1.into(), (n as u64).into());
                let ok = adv <= threshold;
                result_line(&[
                    ("approx", "true".into()),
                    ("max_advantage_seen", format!("{adv}")),
                    ("prg", ok.to_string()),
                ]);
                return Ok(if ok { Outcome::Pass } else { Outcome::Fail });
            }
            let ok = verifiers::is_prg(&seq, n)?;
            result_line(&[("prg", ok.to_string())]);
            Ok(if ok { Outcome::Pass } else { Outcome::Fail })
        }
        VerifyCmd::Extractor {
            alphas,
            n,
            k,
            eps,
            approx,
            samples,
            seed,
        } => {
            let field = pigeon_core::gf2m::FieldCtx::new(2 * n)?;
            let coeffs = forge::alphas_from_bits(&field, &files::read_table(&alphas)?);
            let eps_big = num_rational::BigRational::new(
                (*eps.numer()).into(),
                (*eps.denom()).into(),
            );
            let ok = if approx {
                approx_is_extractor(&field, &coeffs, k, &eps_big, samples, seed)?
            } else {
                verifiers::is_extractor(&field, &coeffs, k, &eps_big)?
            };
            result_line(&[("extractor", ok.to_string()), ("approx", approx.to_string())]);
            Ok(if ok { Outcome::Pass } else { Outcome::Fail })
        }
        VerifyCmd::Rigid {
            matrix,
            rank,
            sparsity,
            approx,
            samples,
            seed,
        } => {
            let m = files::read_matrix(&matrix)?;
            if approx {
                let upper = approx_rigidity_upper_bound(&m, rank, samples, seed);
                let ok = upper > sparsity;
                result_line(&[
                    ("approx", "true".into()),
                    ("distance_upper_bound", upper.to_string()),
                    ("rigid", ok.to_string()),
                ]);
                return Ok(if ok { Outcome::Pass } else { Outcome::Fail });
            }
            let d = verifiers::rigidity_distance(&m, rank)?;
            let ok = d > sparsity;
            result_line(&[("distance", d.to_string()), ("rigid", ok.to_string())]);
            Ok(if ok { Outcome::Pass } else { Outcome::Fail })
        }
        VerifyCmd::Kt {
            tt,
            tm,
            t,
            cap,
            min,
        } => {
            let table = files::read_table(&tt)?;
            let machine = files::read_machine(&tm)?;
            let got = verifiers::kt_complexity(&table, &machine, t, cap)?;
            let shown = got.map_or("above_cap".to_string(), |v| v.to_string());
            let ok = match min {
                None => true,
                Some(m) => got.map_or(true, |v| v >= m),
            };
            result_line(&[("kt", shown), ("ok", ok.to_string())]);
            Ok(if ok { Outcome::Pass } else { Outcome::Fail })
        }
    }
}

fn read_sequence(path: &Path) -> Result<Vec<Bits>> {
    let text = std::fs::read_to_string(path)?;
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| l.parse())
        .collect()
}

/// Sampled advantage maximum; a lower bound on the true maximum, so "looks
/// like a generator" answers from this path are explicitly non-authoritative.
fn approx_prg_advantage(
    seq: &[Bits],
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<num_rational::BigRational> {
    use num_traits::Zero;
    let mut rng = pigeon_core::fixtures::rng(seed);
    let mut best = num_rational::BigRational::zero();
    for _ in 0..samples {
        let c = pigeon_core::fixtures::random_circuit(&mut rng, n, 1, n);
        let adv = verifiers::prg_advantage(seq, &c)?;
        if adv > best {
            best = adv;
        }
    }
    Ok(best)
}

fn approx_is_extractor(
    field: &pigeon_core::gf2m::FieldCtx,
    coeffs: &[u64],
    k: usize,
    eps: &num_rational::BigRational,
    samples: usize,
    seed: u64,
) -> Result<bool> {
    use rand::seq::SliceRandom;
    let n = field.degree() / 2;
    let space: Vec<u64> = (0..(1u64 << n)).collect();
    let size = 1usize << k;
    if size > space.len() {
        return Err(Error::Infeasible {
            what: "extractor check",
            detail: "sources larger than the domain".into(),
        });
    }
    let mut rng = pigeon_core::fixtures::rng(seed);
    for _ in 0..samples {
        let xs: Vec<u64> = space
            .choose_multiple(&mut rng, size)
            .copied()
            .collect();
        let ys: Vec<u64> = space
            .choose_multiple(&mut rng, size)
            .copied()
            .collect();
        if verifiers::extractor_bias(field, coeffs, &xs, &ys) > *eps {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Best (smallest) distance to a sampled low-rank matrix: an upper bound on
/// the true distance.
fn approx_rigidity_upper_bound(m: &[Bits], rank: usize, samples: usize, seed: u64) -> usize {
    use rand::Rng;
    let n = m.len();
    let rows: Vec<u64> = m.iter().map(Bits::to_u64_msb).collect();
    let mut rng = pigeon_core::fixtures::rng(seed);
    let mut best: usize = rows.iter().map(|w| w.count_ones() as usize).sum();
    for _ in 0..samples {
        let r_rows: Vec<u64> = (0..rank).map(|_| rng.gen_range(0..(1u64 << n))).collect();
        let mut dist = 0usize;
        for mrow in &rows {
            let sel: u64 = rng.gen_range(0..(1u64 << rank));
            let mut prod = 0u64;
            for (t, rr) in r_rows.iter().enumerate() {
                if (sel >> t) & 1 == 1 {
                    prod ^= rr;
                }
            }
            dist += (prod ^ mrow).count_ones() as usize;
        }
        best = best.min(dist);
    }
    best
}

#[derive(Args)]
pub struct ComplexityArgs {
    #[arg(long)]
    tt: PathBuf,
    #[arg(long, default_value_t = 6)]
    s_cap: usize,
    /// Write the minimum circuit here.
    #[arg(long)]
    witness_out: Option<PathBuf>,
    /// Write a certificate here (requires --witness-out).
    #[arg(long)]
    cert_out: Option<PathBuf>,
}

fn run_complexity(a: ComplexityArgs) -> Result<Outcome> {
    let table = files::read_table(&a.tt)?;
    match exact_complexity(&table, a.s_cap)? {
        ComplexityOutcome::AboveCap => {
            result_line(&[("s_star", "above_cap".into()), ("s_cap", a.s_cap.to_string())]);
        }
        ComplexityOutcome::Exact(report) => {
            if let Some(wpath) = &a.witness_out {
                files::write_circuit(wpath, &report.witness)?;
                if let Some(cpath) = &a.cert_out {
                    files::write_cert(cpath, table.len(), report.s_star, wpath)?;
                }
            } else if a.cert_out.is_some() {
                return Err(Error::Parse("--cert-out needs --witness-out".into()));
            }
            result_line(&[("s_star", report.s_star.to_string())]);
        }
    }
    Ok(Outcome::Pass)
}

#[derive(Args)]
pub struct ExtractArgs {
    #[arg(long)]
    tt: PathBuf,
    #[arg(long)]
    complexity_cert: PathBuf,
    /// Output-length scale, written p/q.
    #[arg(long, value_parser = parse_ratio, default_value = "1/1")]
    eps_scale: Ratio<u64>,
    #[arg(short, long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    oracle: OracleArgs,
}

fn run_extract(a: ExtractArgs) -> Result<Outcome> {
    let table = files::read_table(&a.tt)?;
    let cert = files::read_cert(&a.complexity_cert)?;
    if cert.n_len != table.len() {
        return Err(Error::Parse(format!(
            "certificate covers a table of {} bits, input has {}",
            cert.n_len,
            table.len()
        )));
    }
    // the certificate's witness must compute the table at the stated size
    if cert.witness.size() != cert.s_star || truth_table(&cert.witness, table.len())? != table {
        return Err(Error::Parse(
            "certificate witness does not compute the table at the stated size".into(),
        ));
    }
    let inverter = a.oracle.build()?;
    let out = hardness_extract(&table, cert.s_star, inverter.as_dyn(), a.eps_scale)?;
    if let Some(path) = &a.out {
        files::write_table(path, &out.table)?;
    }
    result_line(&[
        ("N", out.out_len.to_string()),
        ("guarantee", out.guarantee.to_string()),
        ("k", out.depth.to_string()),
        ("calls", out.inverter_calls.to_string()),
        ("table", out.table.to_string()),
    ]);
    Ok(Outcome::Pass)
}

#[derive(Subcommand)]
pub enum WitnessCmd {
    /// Circuit for the entries of L*R xor S over F2.
    Nonrigid {
        /// n x r matrix file.
        #[arg(long)]
        left: PathBuf,
        /// r x n matrix file.
        #[arg(long)]
        right: PathBuf,
        /// n x n 0/1 matrix marking flipped entries.
        #[arg(long)]
        sparse: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Circuit evaluating a bit-probe scheme.
    Bitprobe {
        #[arg(long)]
        scheme: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
}

fn run_witness(cmd: WitnessCmd) -> Result<Outcome> {
    match cmd {
        WitnessCmd::Nonrigid {
            left,
            right,
            sparse,
            out,
        } => {
            let l = files::read_matrix(&left)?;
            let r = files::read_matrix(&right)?;
            let s = files::read_matrix(&sparse)?;
            let n = l.len();
            let mut positions = Vec::new();
            for (i, row) in s.iter().enumerate() {
                for j in 0..row.len() {
                    if row.get(j) {
                        positions.push((i, j));
                    }
                }
            }
            let build = nonrigid_circuit(&l, &r, &positions, n)?;
            files::write_circuit(&out, &build.circuit)?;
            result_line(&[
                ("size", build.circuit.size().to_string()),
                ("left", build.size_left.to_string()),
                ("right", build.size_right.to_string()),
                ("sparse", build.size_sparse.to_string()),
                ("glue", build.size_glue.to_string()),
            ]);
            Ok(Outcome::Pass)
        }
        WitnessCmd::Bitprobe { scheme, out } => {
            let sch = files::read_scheme(&scheme)?;
            let n = sch.n();
            let build = bitprobe_circuit(&sch, n)?;
            files::write_circuit(&out, &build.circuit)?;
            result_line(&[
                ("size", build.circuit.size().to_string()),
                ("encode", build.size_encode.to_string()),
                ("probe", build.size_probe.to_string()),
                ("answer", build.size_answer.to_string()),
            ]);
            Ok(Outcome::Pass)
        }
    }
}

#[derive(Subcommand)]
pub enum CodecCmd {
    /// The index-th n-bit string of weight k.
    Unrank {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        index: String,
    },
    /// Lexicographic rank of a fixed-weight string.
    Rank {
        #[arg(long)]
        s: String,
    },
}

fn run_codec(cmd: CodecCmd) -> Result<Outcome> {
    match cmd {
        CodecCmd::Unrank { n, k, index } => {
            let idx: BigUint = index
                .parse()
                .map_err(|_| Error::Parse(format!("bad index {index:?}")))?;
            let s = pigeon_core::codec::unrank(n, k, &idx);
            result_line(&[("string", s.to_string())]);
            Ok(Outcome::Pass)
        }
        CodecCmd::Rank { s } => {
            let bits: Bits = s.parse()?;
            let k = bits.weight();
            let idx = pigeon_core::codec::rank(bits.len(), k, &bits)?;
            result_line(&[("k", k.to_string()), ("index", idx.to_string())]);
            Ok(Outcome::Pass)
        }
    }
}

#[derive(Args)]
pub struct CnfArgs {
    #[arg(long)]
    circuit: PathBuf,
    /// Required output bits.
    #[arg(long)]
    target: String,
    #[arg(short, long)]
    out: PathBuf,
}

fn run_cnf(a: CnfArgs) -> Result<Outcome> {
    let c = files::read_circuit(&a.circuit)?;
    let target: Bits = a.target.parse()?;
    if target.len() != c.n_out() {
        return Err(Error::ArityMismatch {
            want: c.n_out(),
            got: target.len(),
        });
    }
    let cnf = to_cnf(&c, &target);
    std::fs::write(&a.out, cnf.to_dimacs())?;
    result_line(&[
        ("vars", cnf.num_vars.to_string()),
        ("clauses", cnf.clauses.len().to_string()),
        ("file", a.out.display().to_string()),
    ]);
    Ok(Outcome::Pass)
}

pub fn run(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Gen(a) => run_gen(a),
        Command::Solve(a) => run_solve(a),
        Command::Verify { what } => run_verify(what),
        Command::Complexity(a) => run_complexity(a),
        Command::Extract(a) => run_extract(a),
        Command::Witness { what } => run_witness(what),
        Command::Codec { what } => run_codec(what),
        Command::Cnf(a) => run_cnf(a),
    }
}
