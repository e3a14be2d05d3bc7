//! Arithmetic in GF(2^m) and polynomial interpolation on Vandermonde systems.
//!
//! Elements are the low `m` bits of a `u64`, bit `i` carrying the coefficient
//! of `x^i`. The modulus is the lexicographically smallest irreducible monic
//! polynomial of degree `m`, found by trial division, so the representation
//! is reproducible. As a bit string an element reads MSB-first
//! (coefficient of `x^(m-1)` first); its last character is the constant-term
//! coefficient, i.e. the element reduced mod 2.

use crate::bits::Bits;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldCtx {
    m: usize,
    modulus: u64,
}

fn poly_degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

fn poly_rem(mut a: u64, b: u64) -> u64 {
    let db = poly_degree(b);
    while a != 0 && poly_degree(a) >= db {
        a ^= b << (poly_degree(a) - db);
    }
    a
}

fn is_irreducible(p: u64, m: usize) -> bool {
    // a composite polynomial of degree m has a factor of degree <= m/2
    for d in 1..=(m / 2) {
        for q in (1u64 << d)..(1u64 << (d + 1)) {
            if poly_rem(p, q) == 0 {
                return false;
            }
        }
    }
    true
}

impl FieldCtx {
    /// Field of order `2^m` for `1 <= m <= 32`.
    pub fn new(m: usize) -> Result<FieldCtx> {
        if m == 0 || m > 32 {
            return Err(Error::FieldDegree { m });
        }
        let modulus = ((1u64 << m)..(1u64 << (m + 1)))
            .find(|&p| is_irreducible(p, m))
            .expect("an irreducible polynomial of every degree exists");
        Ok(FieldCtx { m, modulus })
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> u64 {
        1u64 << self.m
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.order() && b < self.order());
        a ^ b
    }

    pub fn mul(&self, mut a: u64, b: u64) -> u64 {
        debug_assert!(a < self.order() && b < self.order());
        let mut acc = 0u64;
        for i in 0..self.m {
            if (b >> i) & 1 == 1 {
                acc ^= a;
            }
            a <<= 1;
            if (a >> self.m) & 1 == 1 {
                a ^= self.modulus;
            }
        }
        acc
    }

    /// Inverse by Fermat: `a^(2^m - 2)`.
    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        let mut acc = 1u64;
        let mut base = a;
        let mut e = self.order() - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Horner evaluation of `sum coeffs[i] * x^i` (constant term first).
    pub fn poly_eval(&self, coeffs: &[u64], x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in coeffs.iter().rev() {
            acc = self.add(self.mul(acc, x), c);
        }
        acc
    }

    /// Unique interpolating coefficients through `(points[i], values[i])`,
    /// constant term first, by Gaussian elimination on the Vandermonde
    /// matrix. O(k^3) field operations.
    pub fn vandermonde_solve(&self, points: &[u64], values: &[u64]) -> Result<Vec<u64>> {
        assert_eq!(points.len(), values.len());
        let k = points.len();
        for i in 0..k {
            for j in i + 1..k {
                if points[i] == points[j] {
                    return Err(Error::DuplicatePoints);
                }
            }
        }
        // rows: [1, x, x^2, ..., x^(k-1) | value]
        let mut m: Vec<Vec<u64>> = Vec::with_capacity(k);
        for i in 0..k {
            let mut row = Vec::with_capacity(k + 1);
            let mut p = 1u64;
            for _ in 0..k {
                row.push(p);
                p = self.mul(p, points[i]);
            }
            row.push(values[i]);
            m.push(row);
        }
        for col in 0..k {
            let pivot = (col..k)
                .find(|&r| m[r][col] != 0)
                .expect("Vandermonde matrix on distinct points is invertible");
            m.swap(col, pivot);
            let inv = self.inv(m[col][col])?;
            for j in col..=k {
                m[col][j] = self.mul(m[col][j], inv);
            }
            for r in 0..k {
                if r != col && m[r][col] != 0 {
                    let f = m[r][col];
                    for j in col..=k {
                        let sub = self.mul(f, m[col][j]);
                        m[r][j] = self.add(m[r][j], sub);
                    }
                }
            }
        }
        Ok(m.into_iter().map(|row| row[k]).collect())
    }

    /// MSB-first `m`-bit string of an element.
    pub fn elem_to_bits(&self, a: u64) -> Bits {
        Bits::from_u64_msb(a, self.m)
    }

    pub fn elem_from_bits(&self, b: &Bits) -> u64 {
        assert_eq!(b.len(), self.m);
        b.to_u64_msb()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;

    #[test]
    fn smallest_moduli() {
        assert_eq!(FieldCtx::new(1).unwrap().modulus(), 0b10); // x itself
        assert_eq!(FieldCtx::new(2).unwrap().modulus(), 0b111); // x^2 + x + 1
        assert_eq!(FieldCtx::new(3).unwrap().modulus(), 0b1011); // x^3 + x + 1
        assert_eq!(FieldCtx::new(4).unwrap().modulus(), 0b10011); // x^4 + x + 1
        assert!(FieldCtx::new(0).is_err());
        assert!(FieldCtx::new(33).is_err());
    }

    #[test]
    fn characteristic_two() {
        let f = FieldCtx::new(4).unwrap();
        for a in 0..16 {
            assert_eq!(f.add(a, a), 0);
        }
    }

    #[test]
    fn mul_by_hand_in_gf4() {
        let f = FieldCtx::new(2).unwrap();
        // x * x = x + 1 under x^2 + x + 1: bits 10 * 10 -> 11
        assert_eq!(f.mul(0b10, 0b10), 0b11);
    }

    #[test]
    fn inv_of_one() {
        for m in [1, 2, 4, 8] {
            let f = FieldCtx::new(m).unwrap();
            assert_eq!(f.inv(1).unwrap(), 1);
            assert!(f.inv(0).is_err());
        }
    }

    #[test]
    fn poly_eval_basics() {
        let f = FieldCtx::new(4).unwrap();
        for x in 0..16 {
            assert_eq!(f.poly_eval(&[7], x), 7); // constant
            assert_eq!(f.poly_eval(&[0, 1], x), x); // f = x
        }
    }

    #[test]
    fn poly_eval_matches_naive_power_sum() {
        let f = FieldCtx::new(4).unwrap();
        let mut rng = crate::fixtures::rng(2);
        let coeffs: Vec<u64> = (0..6).map(|_| rng.gen_range(0..16)).collect();
        for x in [3u64, 9, 14] {
            // naive sum of c_i * x^i with repeated multiplication
            let mut want = 0u64;
            for (i, &c) in coeffs.iter().enumerate() {
                let mut p = c;
                for _ in 0..i {
                    p = f.mul(p, x);
                }
                want = f.add(want, p);
            }
            assert_eq!(f.poly_eval(&coeffs, x), want);
        }
    }

    #[test]
    fn vandermonde_tiny_cases() {
        let f = FieldCtx::new(2).unwrap();
        assert_eq!(f.vandermonde_solve(&[2], &[3]).unwrap(), vec![3]);
        // points {0,1} values {0,1} -> f = x
        assert_eq!(f.vandermonde_solve(&[0, 1], &[0, 1]).unwrap(), vec![0, 1]);
        assert!(matches!(
            f.vandermonde_solve(&[1, 1], &[0, 1]),
            Err(Error::DuplicatePoints)
        ));
    }

    #[test]
    fn interpolation_roundtrip_full_field() {
        let f = FieldCtx::new(4).unwrap();
        let mut rng = crate::fixtures::rng(4);
        let coeffs: Vec<u64> = (0..16).map(|_| rng.gen_range(0..16)).collect();
        let points: Vec<u64> = (0..16).collect();
        let values: Vec<u64> = points.iter().map(|&x| f.poly_eval(&coeffs, x)).collect();
        assert_eq!(f.vandermonde_solve(&points, &values).unwrap(), coeffs);
    }

    #[test]
    fn solve_then_eval_identity_various_sizes() {
        for m in [2usize, 4, 8] {
            let f = FieldCtx::new(m).unwrap();
            let mut rng = crate::fixtures::rng(m as u64);
            for k in [1usize, 3, 9, 16, 64] {
                if k as u64 > f.order() {
                    continue; // interpolation points must be distinct elements
                }
                let coeffs: Vec<u64> =
                    (0..k).map(|_| rng.gen_range(0..f.order())).collect();
                let points: Vec<u64> = (0..k as u64).collect();
                let values: Vec<u64> =
                    points.iter().map(|&x| f.poly_eval(&coeffs, x)).collect();
                assert_eq!(f.vandermonde_solve(&points, &values).unwrap(), coeffs);
            }
        }
    }

    #[test]
    fn field_axioms_over_random_triples() {
        for m in [2usize, 4, 8] {
            let f = FieldCtx::new(m).unwrap();
            let mut rng = crate::fixtures::rng(60 + m as u64);
            let q = f.order();
            for _ in 0..1500 {
                let (a, b, c) = (
                    rng.gen_range(0..q),
                    rng.gen_range(0..q),
                    rng.gen_range(0..q),
                );
                assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                if a != 0 {
                    let ai = f.inv(a).unwrap();
                    assert_eq!(f.mul(a, ai), 1);
                }
            }
        }
    }

    proptest! {
        // shrinking variant of the axiom checks
        #[test]
        fn prop_field_axioms(m in prop::sample::select(vec![2usize, 4, 8]), seed in 0u64..400) {
            let f = FieldCtx::new(m).unwrap();
            let mut rng = crate::fixtures::rng(seed);
            let q = f.order();
            let (a, b, c) = (
                rng.gen_range(0..q),
                rng.gen_range(0..q),
                rng.gen_range(0..q),
            );
            prop_assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
            prop_assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.mul(a, b), f.mul(b, a));
            if a != 0 {
                let ai = f.inv(a).unwrap();
                prop_assert_eq!(f.mul(a, ai), 1);
            }
        }
    }
}
