//! Builders, oracles and exhaustive verifiers for empty-pigeonhole search:
//! total maps with more outputs than inputs whose non-range strings are
//! pseudorandom objects (hard truth tables, generators, extractors, rigid
//! matrices, incompressible strings), plus the tree-expansion machinery that
//! solves any such instance from a hard truth table and an inverter.

pub mod bits;
pub mod circuit;
pub mod codec;
pub mod error;
pub mod fixtures;
pub mod forge;
pub mod fq;
pub mod ggm;
pub mod gf2m;
pub mod oracles;
pub mod property_circuits;
pub mod stretch;
pub mod tm;
pub mod verifiers;

pub use bits::Bits;
pub use error::{Error, Result};
pub use stretch::{MapKind, StretchMap};
