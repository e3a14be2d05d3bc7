//! Rank/unrank codecs for fixed-weight and low-weight bit strings.
//!
//! Fixed-weight strings are ordered lexicographically and ranked through the
//! combinatorial number system. The low-weight code stores a weight field of
//! `ceil(log2 n)` bits followed by an index field of `n - ceil(eps^2 n)`
//! bits; both decode directions clamp out-of-range values so decoding is a
//! total map.

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::bits::Bits;
use crate::error::{Error, Result};

/// Exact binomial coefficient.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

fn ceil_log2(n: usize) -> usize {
    assert!(n >= 1);
    if n == 1 {
        0
    } else {
        (n - 1).ilog2() as usize + 1
    }
}

/// The lexicographically `index`-th `n`-bit string of weight `k`. Indices at
/// or past `binomial(n, k)` clamp to the last string.
pub fn unrank(n: usize, k: usize, index: &BigUint) -> Bits {
    assert!(k <= n);
    let total = binomial(n, k);
    let last = &total - 1u32;
    let mut index = if *index >= total { last } else { index.clone() };

    let mut out = Bits::zeros(n);
    let mut ones_left = k;
    // cur = binomial(n - pos - 1, ones_left): how many completions keep a 0
    // at the current position; updated incrementally, one mul and one exact
    // div per step
    let mut cur = if k == 0 { BigUint::zero() } else { binomial(n - 1, k) };
    for pos in 0..n {
        if ones_left == 0 {
            break;
        }
        let remaining = n - pos;
        if remaining == ones_left {
            for p in pos..n {
                out.set(p, true);
            }
            break;
        }
        // remaining > ones_left >= 1 here, so remaining - 1 >= 1
        let denom = BigUint::from(remaining - 1);
        if index < cur {
            // place 0: next cur = binomial(remaining - 2, ones_left)
            cur = cur * BigUint::from(remaining - 1 - ones_left) / denom;
        } else {
            index -= &cur;
            out.set(pos, true);
            let prev_ones = ones_left;
            ones_left -= 1;
            if ones_left == 0 {
                break;
            }
            // next cur = binomial(remaining - 2, ones_left - 1)
            cur = cur * BigUint::from(prev_ones) / denom;
        }
    }
    out
}

/// Lexicographic rank of a weight-`k` string among all weight-`k` strings.
pub fn rank(n: usize, k: usize, s: &Bits) -> Result<BigUint> {
    assert_eq!(s.len(), n);
    if s.weight() != k {
        return Err(Error::WrongWeight {
            want: k,
            got: s.weight(),
        });
    }
    let mut acc = BigUint::zero();
    let mut ones_left = k;
    let mut cur = if k == 0 { BigUint::zero() } else { binomial(n - 1, k) };
    for pos in 0..n {
        if ones_left == 0 {
            break;
        }
        let remaining = n - pos;
        if remaining == ones_left {
            break; // forced trailing ones contribute nothing
        }
        let denom = BigUint::from(remaining - 1);
        if s.get(pos) {
            acc += &cur;
            let prev_ones = ones_left;
            ones_left -= 1;
            if ones_left == 0 {
                break;
            }
            cur = cur * BigUint::from(prev_ones) / denom;
        } else {
            cur = cur * BigUint::from(remaining - 1 - ones_left) / denom;
        }
    }
    Ok(acc)
}

/// Geometry of the low-weight code for strings of weight at most
/// `n/2 - eps*n`.
#[derive(Clone, Debug)]
pub struct SparseCode {
    n: usize,
    eps: Ratio<u64>,
    k_max: usize,
    weight_bits: usize,
    index_bits: usize,
}

/// `floor(n/2 - eps*n)` computed exactly.
pub fn sparse_weight_cap(n: usize, eps: Ratio<u64>) -> usize {
    let (p, q) = (*eps.numer() as u128, *eps.denom() as u128);
    assert!(2 * p < q, "eps must be below 1/2");
    let num = (n as u128) * (q - 2 * p);
    (num / (2 * q)) as usize
}

fn ceil_eps2_n(n: usize, eps: Ratio<u64>) -> usize {
    let (p, q) = (*eps.numer() as u128, *eps.denom() as u128);
    let num = (n as u128) * p * p;
    let den = q * q;
    num.div_ceil(den) as usize
}

/// True iff `binomial(n, floor(n/2 - eps n)) <= 2^(n - ceil(eps^2 n))`,
/// decided with exact integer arithmetic.
pub fn chernoff_width_check(n: usize, eps: Ratio<u64>) -> bool {
    let k_max = sparse_weight_cap(n, eps);
    let index_bits = n - ceil_eps2_n(n, eps);
    binomial(n, k_max) <= (BigUint::one() << index_bits)
}

/// Payload width of the low-weight code: `n - ceil(eps^2 n) + ceil(log2 n)`.
pub fn sparse_width(n: usize, eps: Ratio<u64>) -> usize {
    n - ceil_eps2_n(n, eps) + ceil_log2(n)
}

/// Largest length at which construction verifies the width inequality by
/// exact binomial computation. The inequality itself holds for every `n`
/// (standard Chernoff bound on the binomial tail, with slack growing
/// linearly in `n`); only small lengths can fail, through ceiling rounding,
/// so larger lengths skip the increasingly expensive exact check.
pub const EXACT_WIDTH_CHECK_MAX: usize = 1 << 16;

impl SparseCode {
    /// Errors when the index field cannot address every weight class, i.e.
    /// the width guarantee fails at this small `n` and the caller must pick
    /// a larger length.
    pub fn new(n: usize, eps: Ratio<u64>) -> Result<SparseCode> {
        assert!(n >= 1);
        let k_max = sparse_weight_cap(n, eps);
        let weight_bits = ceil_log2(n);
        let index_bits = n - ceil_eps2_n(n, eps);
        if n <= EXACT_WIDTH_CHECK_MAX && !chernoff_width_check(n, eps) {
            return Err(Error::SparseWidth {
                n,
                k_max,
                index_bits,
                count: binomial(n, k_max),
            });
        }
        Ok(SparseCode {
            n,
            eps,
            k_max,
            weight_bits,
            index_bits,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eps(&self) -> Ratio<u64> {
        self.eps
    }

    pub fn weight_cap(&self) -> usize {
        self.k_max
    }

    pub fn width(&self) -> usize {
        self.weight_bits + self.index_bits
    }

    /// Encodes a string of weight at most the cap: weight field, then index.
    pub fn encode(&self, s: &Bits) -> Result<Bits> {
        assert_eq!(s.len(), self.n);
        let k = s.weight();
        if k > self.k_max {
            return Err(Error::WrongWeight {
                want: self.k_max,
                got: k,
            });
        }
        let idx = rank(self.n, k, s)?;
        let mut out = Bits::zeros(self.width());
        out.write_u64(0, self.weight_bits, k as u64);
        let idx_bits = Bits::from_biguint(&idx, self.index_bits);
        let mut o = 0;
        while o < self.index_bits {
            let w = (self.index_bits - o).min(64);
            out.write_u64(self.weight_bits + o, w, idx_bits.read_u64(o, w));
            o += w;
        }
        Ok(out)
    }

    /// Total decoding: the weight field clamps to the cap and the index
    /// clamps to the last string of that weight.
    pub fn decode(&self, payload: &Bits) -> Bits {
        assert_eq!(payload.len(), self.width());
        let mut k = payload.read_u64(0, self.weight_bits) as usize;
        if k > self.k_max {
            k = self.k_max;
        }
        let idx = payload.slice(self.weight_bits, self.index_bits).to_biguint();
        unrank(self.n, k, &idx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn b(s: &str) -> Bits {
        s.parse().unwrap()
    }

    fn r(p: u64, q: u64) -> Ratio<u64> {
        Ratio::new(p, q)
    }

    #[test]
    fn unrank_examples() {
        assert_eq!(unrank(4, 0, &BigUint::zero()), b("0000"));
        let order = ["0011", "0101", "0110", "1001", "1010", "1100"];
        for (i, s) in order.iter().enumerate() {
            assert_eq!(unrank(4, 2, &BigUint::from(i)), b(s));
            assert_eq!(rank(4, 2, &b(s)).unwrap(), BigUint::from(i));
        }
        assert_eq!(unrank(4, 2, &BigUint::from(99u32)), b("1100"));
    }

    #[test]
    fn rank_rejects_wrong_weight() {
        assert!(matches!(
            rank(4, 2, &b("0111")),
            Err(Error::WrongWeight { want: 2, got: 3 })
        ));
    }

    #[test]
    fn bijective_up_to_16_exhaustive() {
        for n in 1..=16usize {
            for k in 0..=n {
                let total = binomial(n, k).to_u64().unwrap();
                let mut prev: Option<Bits> = None;
                for i in 0..total {
                    let s = unrank(n, k, &BigUint::from(i));
                    assert_eq!(s.weight(), k);
                    assert_eq!(rank(n, k, &s).unwrap(), BigUint::from(i));
                    if let Some(p) = prev {
                        assert!(p < s, "lexicographic order broken at n={n} k={k} i={i}");
                    }
                    prev = Some(s);
                }
            }
        }
    }

    #[test]
    fn large_length_small_weight() {
        // the incremental updates must stay exact far beyond the exhaustive range
        let n = 100_000;
        let s = {
            let mut s = Bits::zeros(n);
            s.set(0, true);
            s.set(1, true);
            s
        };
        let idx = rank(n, 2, &s).unwrap();
        assert_eq!(idx, binomial(n, 2) - 1u32);
        assert_eq!(unrank(n, 2, &idx), s);
    }

    #[test]
    fn sparse_widths_example() {
        let code = SparseCode::new(16, r(1, 4)).unwrap();
        assert_eq!(code.width(), 16 - 1 + 4);
        let s = b("0000000000000011");
        let enc = code.encode(&s).unwrap();
        assert_eq!(enc.len(), 19);
        assert_eq!(code.decode(&enc), s);
    }

    #[test]
    fn weight_zero_roundtrips() {
        for (n, eps) in [(8, r(1, 4)), (16, r(1, 8)), (33, r(1, 4))] {
            if let Ok(code) = SparseCode::new(n, eps) {
                let z = Bits::zeros(n);
                assert_eq!(code.decode(&code.encode(&z).unwrap()), z);
            }
        }
    }

    #[test]
    fn chernoff_grid_holds() {
        for n in [64usize, 128, 256, 512, 1024] {
            for eps in [r(1, 4), r(1, 8)] {
                assert!(chernoff_width_check(n, eps), "n={n} eps={eps}");
            }
        }
    }

    #[test]
    fn chernoff_small_n_matches_direct_comparison() {
        // n = 4, eps = 1/4: k_max = 1, C(4,1) = 4 against 2^(4-1) = 8
        assert!(chernoff_width_check(4, r(1, 4)));
        // the n = 64 bound is exactly C(64,16) <= 2^60
        assert!(binomial(64, 16) <= (BigUint::one() << 60u32));
        assert_eq!(sparse_weight_cap(64, r(1, 4)), 16);
    }

    #[test]
    fn sparse_roundtrip_random_weights() {
        let code = SparseCode::new(24, r(1, 4)).unwrap();
        let mut rng = crate::fixtures::rng(7);
        for trial in 0..500 {
            let k = trial % (code.weight_cap() + 1);
            let idx = BigUint::from(rand::Rng::gen::<u64>(&mut rng));
            let s = unrank(24, k, &idx);
            assert_eq!(code.decode(&code.encode(&s).unwrap()), s);
        }
    }

    #[test]
    fn decode_total_on_garbage() {
        let code = SparseCode::new(16, r(1, 4)).unwrap();
        let mut rng = crate::fixtures::rng(5);
        for _ in 0..200 {
            let payload = Bits::random(&mut rng, code.width());
            let s = code.decode(&payload);
            assert_eq!(s.len(), 16);
            assert!(s.weight() <= code.weight_cap());
        }
    }
}
