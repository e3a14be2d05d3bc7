//! Packed bit strings with MSB-first indexing.
//!
//! Bit 0 of a [`Bits`] is the leftmost character of its textual form, so the
//! integer value of a string equals its big-endian reading and comparing two
//! equal-length strings with `<` matches lexicographic order on `{0,1}^n`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rand::RngCore;

use crate::error::Error;

/// A string over {0,1}, packed 64 bits per block. Bit `i` lives in block
/// `i / 64` at position `63 - (i % 64)`; bits past `len` are kept zero so
/// equality and hashing can work on the raw blocks.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Bits {
    blocks: Vec<u64>,
    len: usize,
}

fn low_mask(width: usize) -> u64 {
    if width == 0 {
        0
    } else {
        u64::MAX >> (64 - width)
    }
}

impl Bits {
    pub fn new() -> Self {
        Bits::default()
    }

    pub fn zeros(len: usize) -> Self {
        Bits {
            blocks: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn from_bools(bools: &[bool]) -> Self {
        let mut out = Bits::zeros(bools.len());
        for (i, &b) in bools.iter().enumerate() {
            out.set(i, b);
        }
        out
    }

    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut out = Bits::zeros(len);
        for i in 0..len {
            out.set(i, f(i));
        }
        out
    }

    /// The `width`-bit MSB-first representation of `value`.
    pub fn from_u64_msb(value: u64, width: usize) -> Self {
        assert!(width <= 64);
        assert!(width == 64 || value < (1u64 << width), "value does not fit width");
        let mut out = Bits::zeros(width);
        out.write_u64(0, width, value);
        out
    }

    /// Bit `i` of `value` becomes position `i` of the string.
    pub fn from_u64_lsb(value: u64, width: usize) -> Self {
        assert!(width <= 64);
        assert!(width == 64 || value < (1u64 << width), "value does not fit width");
        if width == 0 {
            return Bits::new();
        }
        Bits::from_u64_msb(value.reverse_bits() >> (64 - width), width)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len);
        (self.blocks[i >> 6] >> (63 - (i & 63))) & 1 == 1
    }

    pub fn set(&mut self, i: usize, v: bool) {
        assert!(i < self.len);
        let mask = 1u64 << (63 - (i & 63));
        if v {
            self.blocks[i >> 6] |= mask;
        } else {
            self.blocks[i >> 6] &= !mask;
        }
    }

    pub fn push(&mut self, v: bool) {
        if self.len % 64 == 0 {
            self.blocks.push(0);
        }
        self.len += 1;
        self.set(self.len - 1, v);
    }

    /// Reads `width <= 64` bits starting at `offset`; the bit at `offset`
    /// becomes the most significant bit of the result.
    pub fn read_u64(&self, offset: usize, width: usize) -> u64 {
        assert!(width <= 64 && offset + width <= self.len);
        if width == 0 {
            return 0;
        }
        let bi = offset >> 6;
        let off = offset & 63;
        let first = self.blocks[bi] << off;
        if off + width <= 64 {
            first >> (64 - width)
        } else {
            (first >> (64 - width)) | (self.blocks[bi + 1] >> (128 - width - off))
        }
    }

    /// Writes the low `width` bits of `value` at `offset`, MSB first.
    pub fn write_u64(&mut self, offset: usize, width: usize, value: u64) {
        assert!(width <= 64 && offset + width <= self.len);
        if width == 0 {
            return;
        }
        let value = value & low_mask(width);
        let bi = offset >> 6;
        let off = offset & 63;
        if off + width <= 64 {
            let shift = 64 - off - width;
            self.blocks[bi] &= !(low_mask(width) << shift);
            self.blocks[bi] |= value << shift;
        } else {
            let w1 = 64 - off;
            let w2 = width - w1;
            self.blocks[bi] &= !low_mask(w1);
            self.blocks[bi] |= value >> w2;
            let shift = 64 - w2;
            self.blocks[bi + 1] &= !(low_mask(w2) << shift);
            self.blocks[bi + 1] |= (value & low_mask(w2)) << shift;
        }
    }

    /// Appends a copy of `other`.
    pub fn push_bits(&mut self, other: &Bits) {
        let base = self.len;
        self.len += other.len;
        self.blocks.resize(self.len.div_ceil(64), 0);
        let mut o = 0;
        while o < other.len {
            let w = (other.len - o).min(64);
            let v = other.read_u64(o, w);
            self.write_u64(base + o, w, v);
            o += w;
        }
    }

    pub fn concat(parts: &[&Bits]) -> Bits {
        let mut out = Bits::with_capacity(parts.iter().map(|p| p.len).sum());
        for p in parts {
            out.push_bits(p);
        }
        out
    }

    pub fn with_capacity(bits: usize) -> Bits {
        Bits {
            blocks: Vec::with_capacity(bits.div_ceil(64)),
            len: 0,
        }
    }

    pub fn slice(&self, offset: usize, width: usize) -> Bits {
        assert!(offset + width <= self.len);
        let mut out = Bits::zeros(width);
        let mut o = 0;
        while o < width {
            let w = (width - o).min(64);
            out.write_u64(o, w, self.read_u64(offset + o, w));
            o += w;
        }
        out
    }

    pub fn weight(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Interprets the whole string as an MSB-first integer (len <= 64).
    pub fn to_u64_msb(&self) -> u64 {
        assert!(self.len <= 64);
        self.read_u64(0, self.len)
    }

    pub fn to_biguint(&self) -> BigUint {
        if self.len == 0 {
            return BigUint::default();
        }
        let nbytes = self.len.div_ceil(8);
        let mut bytes = vec![0u8; nbytes];
        for (j, byte) in bytes.iter_mut().enumerate() {
            let w = (self.len - 8 * j).min(8);
            // partial final byte keeps its bits in the high positions so one
            // shift at the end corrects the weight
            *byte = (self.read_u64(8 * j, w) as u8) << (8 - w);
        }
        let pad = 8 * nbytes - self.len;
        BigUint::from_bytes_be(&bytes) >> pad
    }

    /// The `width`-bit MSB-first representation of `value`; `value` must fit.
    pub fn from_biguint(value: &BigUint, width: usize) -> Bits {
        assert!(value.bits() as usize <= width, "value does not fit width");
        let mut out = Bits::zeros(width);
        if width == 0 {
            return out;
        }
        let pad = (8 - width % 8) % 8;
        let shifted = value << pad;
        let bytes = shifted.to_bytes_be();
        let nbytes = width.div_ceil(8);
        // bytes may be shorter than nbytes (leading zeros)
        let lead = nbytes - bytes.len();
        for (j, &byte) in bytes.iter().enumerate() {
            let pos = (lead + j) * 8;
            let w = (width - pos).min(8);
            out.write_u64(pos, w, (byte >> (8 - w)) as u64);
        }
        out
    }

    /// Uniformly random string drawn block-by-block from `rng`.
    pub fn random(rng: &mut impl RngCore, len: usize) -> Bits {
        let mut out = Bits::zeros(len);
        for b in out.blocks.iter_mut() {
            *b = rng.next_u64();
        }
        out.clear_tail();
        out
    }

    fn clear_tail(&mut self) {
        let tail = self.len % 64;
        if tail != 0 {
            if let Some(last) = self.blocks.last_mut() {
                *last &= !(u64::MAX >> tail);
            }
        }
    }
}

impl Ord for Bits {
    fn cmp(&self, other: &Self) -> Ordering {
        // block-wise comparison is lexicographic on the padded strings;
        // ties broken by length so a proper prefix sorts first
        self.blocks
            .cmp(&other.blocks)
            .then(self.len.cmp(&other.len))
    }
}

impl PartialOrd for Bits {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bits({})", self)
    }
}

impl FromStr for Bits {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut out = Bits::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => out.set(i, true),
                _ => {
                    return Err(Error::Parse(format!(
                        "bit string may contain only 0 and 1, found {c:?}"
                    )))
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b(s: &str) -> Bits {
        s.parse().unwrap()
    }

    #[test]
    fn roundtrip_display() {
        for s in ["", "0", "1", "0110", "1000000000000000000000000000000000000000001"] {
            assert_eq!(b(s).to_string(), s);
        }
    }

    #[test]
    fn read_write_u64_cross_block() {
        let mut x = Bits::zeros(130);
        x.write_u64(60, 10, 0b1011010011);
        assert_eq!(x.read_u64(60, 10), 0b1011010011);
        assert_eq!(x.read_u64(0, 60), 0);
        x.write_u64(126, 4, 0b1111);
        assert_eq!(x.read_u64(126, 4), 0b1111);
        assert_eq!(x.weight(), 6 + 4);
    }

    #[test]
    fn lexicographic_order() {
        assert!(b("0") < b("00"));
        assert!(b("0111") < b("1"));
        assert!(b("0011") < b("0101"));
        let mut all: Vec<Bits> = (0u64..16).map(|v| Bits::from_u64_msb(v, 4)).collect();
        let sorted = all.clone();
        all.sort();
        assert_eq!(all, sorted);
    }

    #[test]
    fn biguint_roundtrip_partial_byte() {
        let x = b("101100111010001");
        let v = x.to_biguint();
        assert_eq!(v, BigUint::from(0b101100111010001u64));
        assert_eq!(Bits::from_biguint(&v, 15), x);
    }

    proptest! {
        #[test]
        fn prop_slice_concat(s in proptest::collection::vec(any::<bool>(), 0..200), cut in 0usize..200) {
            let x = Bits::from_bools(&s);
            let cut = cut.min(x.len());
            let l = x.slice(0, cut);
            let r = x.slice(cut, x.len() - cut);
            prop_assert_eq!(Bits::concat(&[&l, &r]), x);
        }

        #[test]
        fn prop_biguint_roundtrip(s in proptest::collection::vec(any::<bool>(), 0..200)) {
            let x = Bits::from_bools(&s);
            prop_assert_eq!(Bits::from_biguint(&x.to_biguint(), x.len()), x.clone());
        }

        #[test]
        fn prop_order_matches_strings(a in proptest::collection::vec(any::<bool>(), 0..80),
                                      b in proptest::collection::vec(any::<bool>(), 0..80)) {
            let x = Bits::from_bools(&a);
            let y = Bits::from_bools(&b);
            prop_assert_eq!(x.cmp(&y), x.to_string().cmp(&y.to_string()));
        }
    }
}
