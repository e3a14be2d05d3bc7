//! The interpolation map whose non-range coefficient vectors define
//! two-source extractors.
//!
//! A witness packs two sorted `dn`-element sets X, Y of `n`-bit strings, one
//! guess bit, a low-weight correction string over the `d^2 n^2` product
//! points, and a `(2n-1)`-bit prefix for each point. The map reconstructs the
//! polynomial value at every point of X x Y in lexicographic order as
//! `prefix || (guess XOR correction)` and interpolates the unique degree
//! `< d^2 n^2` polynomial over GF(2^{2n}) through them; its coefficients,
//! concatenated, are the output. A coefficient vector whose last-bit
//! polynomial is biased on some pair of flat sources can be reconstructed
//! this way, so it lies in the range.

use num_rational::Ratio;

use crate::bits::Bits;
use crate::codec::{sparse_weight_cap, SparseCode};
use crate::error::{Error, Result};
use crate::gf2m::FieldCtx;
use crate::stretch::{Evaluate, MapKind, StretchMap};

/// The point-count factor `d = ceil(4 / eps^2)`.
pub fn extractor_d(eps: Ratio<u64>) -> u64 {
    let (p, q) = (*eps.numer() as u128, *eps.denom() as u128);
    let num = 4 * q * q;
    let den = p * p;
    num.div_ceil(den) as u64
}

#[derive(Clone, Debug)]
pub struct ExtractorWidths {
    pub sources: u128,
    pub guess: u128,
    pub correction: u128,
    pub prefixes: u128,
    pub total: u128,
    pub out: u128,
}

fn ceil_log2_u128(x: u128) -> u128 {
    assert!(x >= 1);
    if x == 1 {
        0
    } else {
        (128 - (x - 1).leading_zeros()) as u128
    }
}

/// Exact field widths for parameters `(n, eps, d)`.
pub fn extractor_widths(n: u64, eps: Ratio<u64>, d: u64) -> ExtractorWidths {
    let (n, d) = (n as u128, d as u128);
    let points = d * d * n * n;
    let sources = 2 * d * n * n;
    let guess = 1;
    // low-weight code on `points` bits at this eps
    let (p, q) = (*eps.numer() as u128, *eps.denom() as u128);
    let eps2_points = (points * p * p).div_ceil(q * q);
    let correction = points - eps2_points + ceil_log2_u128(points);
    let prefixes = points * (2 * n - 1);
    ExtractorWidths {
        sources,
        guess,
        correction,
        prefixes,
        total: sources + guess + correction + prefixes,
        out: points * 2 * n,
    }
}

struct ExtractorMap {
    n: usize,
    dn: usize,
    points: usize,
    field: FieldCtx,
    sparse: SparseCode,
    off_y: usize,
    off_guess: usize,
    off_correction: usize,
    off_prefixes: usize,
    out_width: usize,
}

impl ExtractorMap {
    /// Reads `dn` strings of `n` bits and canonicalizes them into a sorted
    /// set: duplicates are dropped and the gaps filled with the smallest
    /// absent values, keeping decoding total.
    fn decode_source(&self, input: &Bits, offset: usize) -> Vec<u64> {
        let mut vals: Vec<u64> = (0..self.dn)
            .map(|i| input.read_u64(offset + i * self.n, self.n))
            .collect();
        vals.sort_unstable();
        vals.dedup();
        let mut present: std::collections::HashSet<u64> = vals.iter().copied().collect();
        let mut fill = 0u64;
        while vals.len() < self.dn {
            while present.contains(&fill) {
                fill += 1;
            }
            vals.push(fill);
            present.insert(fill);
            fill += 1;
            debug_assert!(fill <= (1u64 << self.n));
        }
        vals.sort_unstable();
        vals
    }
}

impl Evaluate for ExtractorMap {
    fn eval_bits(&self, input: &Bits) -> Bits {
        let xs = self.decode_source(input, 0);
        let ys = self.decode_source(input, self.off_y);
        let guess = input.get(self.off_guess);
        let flags = self
            .sparse
            .decode(&input.slice(self.off_correction, self.sparse.width()));

        // product points in lexicographic order of the concatenated strings
        let mut points = Vec::with_capacity(self.points);
        for &x in &xs {
            for &y in &ys {
                points.push((x << self.n) | y);
            }
        }
        let mut values = Vec::with_capacity(self.points);
        for (i, _) in points.iter().enumerate() {
            let prefix = input.read_u64(self.off_prefixes + i * (2 * self.n - 1), 2 * self.n - 1);
            let last = guess ^ flags.get(i);
            values.push((prefix << 1) | last as u64);
        }
        let coeffs = self
            .field
            .vandermonde_solve(&points, &values)
            .expect("product points of two sets are distinct");
        let m = 2 * self.n;
        let mut out = Bits::zeros(self.out_width);
        for (i, &c) in coeffs.iter().enumerate() {
            out.write_u64(i * m, m, c);
        }
        out
    }
}

/// The instance for source length `n` and bias `eps`. With `d_override` the
/// point-count factor is forced down for desk-scale testing; such maps skip
/// the stretch requirement and are flagged by `is_stretching()`.
pub fn phi_extractor(n: usize, eps: Ratio<u64>, d_override: Option<u64>) -> Result<StretchMap> {
    if *eps.numer() == 0 || 2 * eps.numer() >= *eps.denom() {
        return Err(Error::Infeasible {
            what: "extractor instance",
            detail: format!("eps must lie strictly between 0 and 1/2, got {eps}"),
        });
    }
    let faithful = d_override.is_none();
    let d = d_override.unwrap_or_else(|| extractor_d(eps));
    let field = FieldCtx::new(2 * n)?; // caps n at 16
    let dn = (d as usize) * n;
    if (dn as u128) > (1u128 << n) {
        return Err(Error::Infeasible {
            what: "extractor instance",
            detail: format!("a source must be a set of d*n = {dn} distinct {n}-bit strings"),
        });
    }
    let widths = extractor_widths(n as u64, eps, d);
    let points = dn * dn;
    let sparse = SparseCode::new(points, eps)?;
    debug_assert_eq!(sparse.width() as u128, widths.correction);
    let in_width = usize::try_from(widths.total).map_err(|_| Error::Budget {
        what: "instance construction",
        need: "widths that fit the address space".into(),
        got: format!("{} input bits", widths.total),
    })?;
    let out_width = usize::try_from(widths.out).unwrap();
    let map = ExtractorMap {
        n,
        dn,
        points,
        field,
        sparse,
        off_y: dn * n,
        off_guess: 2 * dn * n,
        off_correction: 2 * dn * n + 1,
        off_prefixes: 2 * dn * n + 1 + usize::try_from(widths.correction).unwrap(),
        out_width,
    };
    if faithful {
        if widths.total >= widths.out {
            return Err(Error::NotStretching {
                in_width,
                out_width,
                detail: format!("n={n} eps={eps} gives no stretch"),
            });
        }
        StretchMap::semantic(MapKind::Extractor, in_width, out_width, map)
    } else {
        Ok(StretchMap::semantic_unchecked(
            MapKind::Extractor,
            in_width,
            out_width,
            map,
        ))
    }
}

/// One output bit of the function defined by a coefficient vector: the last
/// bit (the mod-2 reduction) of the polynomial value at `x`.
pub fn extractor_eval(field: &FieldCtx, alphas: &[u64], x: &Bits) -> bool {
    let v = field.poly_eval(alphas, field.elem_from_bits(x));
    v & 1 == 1
}

/// Splits a map output back into field elements.
pub fn alphas_from_bits(field: &FieldCtx, out: &Bits) -> Vec<u64> {
    let m = field.degree();
    assert_eq!(out.len() % m, 0);
    (0..out.len() / m).map(|i| out.read_u64(i * m, m)).collect()
}

#[derive(Clone, Debug)]
pub struct ExtractorWitness {
    /// Sorted, distinct n-bit values.
    pub xs: Vec<u64>,
    pub ys: Vec<u64>,
    pub guess: bool,
    /// One flag per product point in lexicographic order.
    pub correction: Bits,
    /// `(2n-1)`-bit prefixes per product point.
    pub prefixes: Vec<u64>,
}

impl ExtractorWitness {
    pub fn encode(&self, n: usize, eps: Ratio<u64>, d: u64) -> Result<Bits> {
        let dn = d as usize * n;
        let points = dn * dn;
        let sorted_distinct = |v: &[u64]| v.windows(2).all(|w| w[0] < w[1]);
        if self.xs.len() != dn
            || self.ys.len() != dn
            || !sorted_distinct(&self.xs)
            || !sorted_distinct(&self.ys)
        {
            return Err(Error::Infeasible {
                what: "witness encoding",
                detail: format!("sources must be sorted sets of {dn} values"),
            });
        }
        if self.correction.len() != points || self.prefixes.len() != points {
            return Err(Error::Infeasible {
                what: "witness encoding",
                detail: "per-point field length mismatch".into(),
            });
        }
        let cap = sparse_weight_cap(points, eps);
        if self.correction.weight() > cap {
            return Err(Error::WrongWeight {
                want: cap,
                got: self.correction.weight(),
            });
        }
        let sparse = SparseCode::new(points, eps)?;
        let mut out = Bits::with_capacity(2 * dn * n + 1 + sparse.width() + points * (2 * n - 1));
        for &x in &self.xs {
            out.push_bits(&Bits::from_u64_msb(x, n));
        }
        for &y in &self.ys {
            out.push_bits(&Bits::from_u64_msb(y, n));
        }
        out.push(self.guess);
        out.push_bits(&sparse.encode(&self.correction)?);
        for &p in &self.prefixes {
            out.push_bits(&Bits::from_u64_msb(p, 2 * n - 1));
        }
        Ok(out)
    }
}
