//! Total maps from `a`-bit strings to `b`-bit strings.
//!
//! A map is the instance object of the empty-pigeonhole search problem: find
//! a string outside its range. Maps are semantic-first (an evaluator plus
//! widths); realistic instances are astronomically large as gate lists while
//! inversion by forward search only needs evaluation. A gate-level backend
//! can be attached for SAT-based inversion, either directly or by exhaustive
//! compilation at small widths, and the two backends must agree pointwise.

use std::sync::Arc;

use crate::bits::Bits;
use crate::circuit::{synthesize, Circuit, CircuitBuilder, Ref};
use crate::error::{Error, Result};

/// Which builder produced a map.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MapKind {
    HardTt,
    Prg,
    Extractor,
    Rigid,
    Kt,
    Ggm,
    PadChain,
    Custom,
}

impl MapKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            MapKind::HardTt => "hard_tt",
            MapKind::Prg => "prg",
            MapKind::Extractor => "extractor",
            MapKind::Rigid => "rigid",
            MapKind::Kt => "kt",
            MapKind::Ggm => "ggm",
            MapKind::PadChain => "pad_chain",
            MapKind::Custom => "custom",
        }
    }
}

/// Semantic evaluation backend.
pub trait Evaluate: Send + Sync {
    fn eval_bits(&self, input: &Bits) -> Bits;
}

impl<F> Evaluate for F
where
    F: Fn(&Bits) -> Bits + Send + Sync,
{
    fn eval_bits(&self, input: &Bits) -> Bits {
        self(input)
    }
}

#[derive(Clone)]
enum Backend {
    Circuit(Arc<Circuit>),
    Semantic(Arc<dyn Evaluate>),
}

#[derive(Clone)]
pub struct StretchMap {
    in_width: usize,
    out_width: usize,
    kind: MapKind,
    backend: Backend,
}

/// Largest input width for which exhaustive circuit compilation is allowed.
pub const COMPILE_BUDGET_BITS: usize = 16;

impl StretchMap {
    /// Map backed by a gate-level circuit; must have more outputs than
    /// inputs.
    pub fn circuit_backed(kind: MapKind, c: Circuit) -> Result<StretchMap> {
        if c.n_out() <= c.n_in() {
            return Err(Error::NotStretching {
                in_width: c.n_in(),
                out_width: c.n_out(),
                detail: "a valid instance needs strictly more outputs than inputs".into(),
            });
        }
        Ok(StretchMap {
            in_width: c.n_in(),
            out_width: c.n_out(),
            kind,
            backend: Backend::Circuit(Arc::new(c)),
        })
    }

    /// Circuit-backed map without the stretch check, for derived views such
    /// as output truncations that an inverter still has to answer for.
    pub fn circuit_backed_unchecked(kind: MapKind, c: Circuit) -> StretchMap {
        StretchMap {
            in_width: c.n_in(),
            out_width: c.n_out(),
            kind,
            backend: Backend::Circuit(Arc::new(c)),
        }
    }

    /// Semantic map; must stretch.
    pub fn semantic(
        kind: MapKind,
        in_width: usize,
        out_width: usize,
        eval: impl Evaluate + 'static,
    ) -> Result<StretchMap> {
        if out_width <= in_width {
            return Err(Error::NotStretching {
                in_width,
                out_width,
                detail: "a valid instance needs strictly more outputs than inputs".into(),
            });
        }
        Ok(StretchMap::semantic_unchecked(kind, in_width, out_width, eval))
    }

    /// Semantic map without the stretch check, for explicitly flagged
    /// desk-scale parameterizations whose width guarantee is waived.
    pub fn semantic_unchecked(
        kind: MapKind,
        in_width: usize,
        out_width: usize,
        eval: impl Evaluate + 'static,
    ) -> StretchMap {
        StretchMap {
            in_width,
            out_width,
            kind,
            backend: Backend::Semantic(Arc::new(eval)),
        }
    }

    pub fn in_width(&self) -> usize {
        self.in_width
    }

    pub fn out_width(&self) -> usize {
        self.out_width
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn is_stretching(&self) -> bool {
        self.in_width < self.out_width
    }

    pub fn eval(&self, input: &Bits) -> Bits {
        assert_eq!(input.len(), self.in_width, "input width mismatch");
        let out = match &self.backend {
            Backend::Circuit(c) => c.eval(input).expect("widths checked"),
            Backend::Semantic(e) => e.eval_bits(input),
        };
        assert_eq!(out.len(), self.out_width, "evaluator produced wrong width");
        out
    }

    /// The gate-level backend, when this map carries one.
    pub fn circuit(&self) -> Option<&Circuit> {
        match &self.backend {
            Backend::Circuit(c) => Some(c),
            Backend::Semantic(_) => None,
        }
    }

    /// Compiles the map to gates by exhaustive per-output synthesis.
    /// Refuses above [`COMPILE_BUDGET_BITS`] input bits.
    pub fn compile(&self) -> Result<Circuit> {
        if let Some(c) = self.circuit() {
            return Ok(c.clone());
        }
        if self.in_width > COMPILE_BUDGET_BITS {
            return Err(Error::Budget {
                what: "circuit compilation",
                need: format!("input width <= {COMPILE_BUDGET_BITS}"),
                got: format!("{}", self.in_width),
            });
        }
        let rows = 1usize << self.in_width;
        let mut tables = vec![Bits::zeros(rows); self.out_width];
        for p in 0..rows {
            let x = Bits::from_u64_msb(p as u64, self.in_width);
            let y = self.eval(&x);
            for (j, table) in tables.iter_mut().enumerate() {
                table.set(p, y.get(j));
            }
        }
        let mut b = CircuitBuilder::new(self.in_width);
        let inputs: Vec<Ref> = (0..self.in_width).map(Ref::Input).collect();
        let mut outs = Vec::with_capacity(self.out_width);
        for table in &tables {
            let sub = synthesize(table);
            outs.push(b.splice(&sub, &inputs)[0]);
        }
        Ok(b.finish(outs))
    }

    /// Same map with a compiled circuit backend attached.
    pub fn with_circuit_backend(&self) -> Result<StretchMap> {
        let c = self.compile()?;
        Ok(StretchMap {
            in_width: self.in_width,
            out_width: self.out_width,
            kind: self.kind,
            backend: Backend::Circuit(Arc::new(c)),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn rejects_non_stretching() {
        let c = fixtures::xor_circuit(); // 2 -> 1
        assert!(StretchMap::circuit_backed(MapKind::Custom, c).is_err());
    }

    #[test]
    fn duplicate_map_evaluates() {
        let m = fixtures::duplicate_map(2);
        assert_eq!(m.eval(&"01".parse().unwrap()).to_string(), "0101");
    }

    #[test]
    fn compiled_backend_agrees_with_semantic() {
        let m = StretchMap::semantic(MapKind::Custom, 3, 5, |x: &Bits| {
            let mut out = x.clone();
            out.push(x.get(0) ^ x.get(2));
            out.push(!x.get(1));
            out
        })
        .unwrap();
        let compiled = m.with_circuit_backend().unwrap();
        assert!(compiled.circuit().is_some());
        for p in 0..8u64 {
            let x = Bits::from_u64_msb(p, 3);
            assert_eq!(m.eval(&x), compiled.eval(&x));
        }
    }

    #[test]
    fn compile_budget_enforced() {
        let m = StretchMap::semantic(MapKind::Custom, 40, 41, |x: &Bits| {
            let mut out = x.clone();
            out.push(false);
            out
        })
        .unwrap();
        assert!(matches!(m.compile(), Err(Error::Budget { .. })));
    }
}
