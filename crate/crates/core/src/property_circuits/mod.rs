//! Witness compilers: small circuits certifying that a matrix is close to
//! low-rank-plus-sparse, or that a function has a cheap bit-probe scheme.

mod bitprobe;
mod nonrigid;

pub use bitprobe::{bitprobe_circuit, scheme_eval, BitProbeBuild, BitProbeScheme};
pub use nonrigid::{nonrigid_circuit, NonrigidBuild};
