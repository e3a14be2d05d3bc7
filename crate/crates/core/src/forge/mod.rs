//! Instance builders: each produces a stretch map whose non-range strings
//! carry a guaranteed structural property.

mod extractor;
mod hard_tt;
mod kt;
pub mod manifest;
mod prg;
mod rigid;

pub use extractor::{
    alphas_from_bits, extractor_d, extractor_eval, extractor_widths, phi_extractor,
    ExtractorWidths, ExtractorWitness,
};
pub use hard_tt::{hard_tt_geometry, phi_hard_tt, phi_hard_tt_circuit, HardTtGeometry};
pub use kt::phi_kt;
pub use prg::{phi_prg, prg_widths, PrgWidths, PrgWitness};
pub use rigid::{phi_rigid, phi_rigid_unchecked, rigid_product, rigid_widths, RigidWitness};

use crate::bits::Bits;
use crate::error::Result;
use crate::oracles::{Inversion, InverterOracle};
use crate::stretch::StretchMap;

/// A candidate solves an instance exactly when the inverter certifies it has
/// no preimage.
pub fn verify_solution(
    map: &StretchMap,
    candidate: &Bits,
    inverter: &dyn InverterOracle,
) -> Result<bool> {
    Ok(matches!(
        inverter.invert(map, candidate)?,
        Inversion::NonMember
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::oracles::BruteForceInverter;

    #[test]
    fn verify_on_duplicate_map() {
        let m = fixtures::duplicate_map(2);
        let inv = BruteForceInverter::default();
        assert!(verify_solution(&m, &"0110".parse().unwrap(), &inv).unwrap());
        assert!(!verify_solution(&m, &"0101".parse().unwrap(), &inv).unwrap());
    }

    #[test]
    fn compiled_backends_agree_with_semantics() {
        // every builder small enough to compile: 1000 random inputs each
        let maps = vec![
            super::phi_hard_tt(8).unwrap(),
            super::phi_kt(8, fixtures::copy_machine(), 100).unwrap(),
            super::phi_rigid_unchecked(3, 1, 1, 2).unwrap(),
        ];
        let mut rng = fixtures::rng(71);
        for map in maps {
            let compiled = map.with_circuit_backend().unwrap();
            for _ in 0..1000 {
                let x = crate::bits::Bits::random(&mut rng, map.in_width());
                assert_eq!(map.eval(&x), compiled.eval(&x), "kind {:?}", map.kind());
            }
        }
    }
}
