//! Independent, exhaustive property checkers with exact rational verdicts.
//!
//! These certify solutions without reusing the instance builders' forward
//! code paths. Every verifier refuses, with a typed error, when its
//! parameters exceed the exhaustive budget; nothing here subsamples.

mod extractor;
mod kt;
mod prg;
mod rigid;

pub use extractor::{extractor_bias, is_extractor};
pub use kt::kt_complexity;
pub use prg::{is_prg, prg_advantage, small_circuit_max_advantage, yao_predictor, YaoPredictor};
pub use rigid::{is_rigid, rigidity_distance};
