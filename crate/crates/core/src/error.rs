use thiserror::Error;

use crate::bits::Bits;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug)]
pub enum Error {
    #[error("input has {got} bits but the circuit takes {want}")]
    ArityMismatch { want: usize, got: usize },

    #[error("expected a single-output circuit, found {got} outputs")]
    OutputArity { got: usize },

    #[error("a table of length {len} needs a circuit on {want} inputs, found {got}")]
    TableArity { len: usize, want: usize, got: usize },

    #[error("reference {referee} at gate {gate} points at or past its own position")]
    ForwardRef { gate: usize, referee: String },

    #[error("circuit has {size} gates which exceeds the {s_max} encodable slots")]
    CircuitTooLarge { size: usize, s_max: usize },

    #[error("rank expects weight {want}, string has weight {got}")]
    WrongWeight { want: usize, got: usize },

    #[error(
        "index field of {index_bits} bits cannot address all {count} strings of weight \
         up to {k_max} in length {n}; pick a larger n"
    )]
    SparseWidth {
        n: usize,
        k_max: usize,
        index_bits: usize,
        count: num_bigint::BigUint,
    },

    #[error("field degree {m} outside the supported range 1..=32")]
    FieldDegree { m: usize },

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("interpolation points must be pairwise distinct")]
    DuplicatePoints,

    #[error("{0} is not a prime power in the supported range 2..=256")]
    BadFieldOrder(u64),

    #[error("instance would not stretch: {in_width} input bits vs {out_width} output bits ({detail})")]
    NotStretching {
        in_width: usize,
        out_width: usize,
        detail: String,
    },

    #[error("{what}: {detail}")]
    Infeasible { what: &'static str, detail: String },

    #[error("{what} requires {need}, got {got}; refusing to exceed the exhaustive budget")]
    Budget {
        what: &'static str,
        need: String,
        got: String,
    },

    #[error("map is not circuit-backed; compile it before querying a SAT inverter")]
    NotCircuitBacked,

    #[error("solver failure: {0}")]
    SolverFailure(String),

    #[error("randomized solver exceeded its trial cap of {cap}")]
    TrialCapExceeded { cap: usize },

    #[error("walk exhausted: the supplied target is inside the range (preimage found)")]
    WalkExhausted { preimage: Bits },

    #[error("no predictor found within the search space")]
    PredictorNotFound,

    #[error("distinguisher advantage {got} does not exceed the required {need}")]
    AdvantageTooSmall { need: String, got: String },

    #[error("extracted table length {n} is degenerate (< 8); raise the input length or the scale factor")]
    DegenerateExtract { n: usize },

    #[error("transition missing for state {state} reading {symbol:?}; tables must be total")]
    PartialMachine { state: usize, symbol: char },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for refusals where a precondition or an exhaustive budget was
    /// violated, as opposed to verification failures or environment errors.
    pub fn is_refusal(&self) -> bool {
        matches!(
            self,
            Error::NotStretching { .. }
                | Error::Budget { .. }
                | Error::SparseWidth { .. }
                | Error::DegenerateExtract { .. }
                | Error::CircuitTooLarge { .. }
                | Error::FieldDegree { .. }
                | Error::BadFieldOrder(_)
                | Error::Infeasible { .. }
        )
    }
}
