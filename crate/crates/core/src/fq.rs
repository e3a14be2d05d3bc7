//! Small finite fields F_q for prime powers q <= 256, with precomputed
//! operation tables.
//!
//! Elements are integers 0..q read as base-p digit vectors (coefficients of a
//! polynomial over F_p, least significant digit first). For q = p^e with
//! e > 1 the modulus is the lexicographically smallest monic irreducible
//! polynomial of degree e over F_p, so the representation is reproducible.

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Fq {
    q: u64,
    p: u64,
    e: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
}

fn factor_prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut e = 0;
            let mut rest = q;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            return if rest == 1 { Some((p, e)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

fn digits(mut v: u64, p: u64, e: usize) -> Vec<u64> {
    let mut d = vec![0; e];
    for item in d.iter_mut() {
        *item = v % p;
        v /= p;
    }
    d
}

fn undigits(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

/// Polynomial multiplication of digit vectors mod `modulus` (monic, degree e),
/// all coefficient arithmetic mod p.
fn poly_mulmod(a: &[u64], b: &[u64], modulus: &[u64], p: u64, e: usize) -> Vec<u64> {
    let mut prod = vec![0u64; 2 * e];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    // reduce: modulus is monic of degree e with low coefficients modulus[0..e]
    for i in (e..2 * e).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for j in 0..e {
            let sub = (c * modulus[j]) % p;
            prod[i - e + j] = (prod[i - e + j] + p * p - sub) % p;
        }
    }
    prod.truncate(e);
    prod
}

fn is_irreducible_over_fp(low: &[u64], p: u64, e: usize) -> bool {
    // trial division by every monic polynomial of degree 1..=e/2
    for d in 1..=(e / 2) {
        let count = p.pow(d as u32);
        for v in 0..count {
            let mut divisor = digits(v, p, d + 1);
            divisor[d] = 1; // monic
            if poly_divides(&divisor, low, p, e) {
                return false;
            }
        }
    }
    true
}

/// Does monic `divisor` divide the monic degree-`e` polynomial with low
/// coefficients `low`?
fn poly_divides(divisor: &[u64], low: &[u64], p: u64, e: usize) -> bool {
    // long division of x^e + low by divisor
    let dd = divisor.len() - 1;
    let mut rem: Vec<u64> = low.to_vec();
    rem.push(1); // the monic x^e term
    for i in (dd..=e).rev() {
        let c = rem[i];
        if c == 0 {
            continue;
        }
        for j in 0..=dd {
            let sub = (c * divisor[j]) % p;
            rem[i - dd + j] = (rem[i - dd + j] + p * p - sub) % p;
        }
    }
    rem.iter().all(|&c| c == 0)
}

impl Fq {
    pub fn new(q: u64) -> Result<Fq> {
        let (p, e) = match factor_prime_power(q) {
            Some(pe) if q <= 256 => pe,
            _ => return Err(Error::BadFieldOrder(q)),
        };
        let modulus_low: Vec<u64> = if e == 1 {
            vec![0]
        } else {
            // smallest monic irreducible of degree e, scanning low
            // coefficients in increasing base-p value
            let mut found = None;
            for v in 0..p.pow(e as u32) {
                let low = digits(v, p, e);
                if is_irreducible_over_fp(&low, p, e) {
                    found = Some(low);
                    break;
                }
            }
            found.expect("irreducible polynomials of every degree exist")
        };

        let qs = q as usize;
        let mut add = vec![0u16; qs * qs];
        let mut mul = vec![0u16; qs * qs];
        let mut neg = vec![0u16; qs];
        for a in 0..q {
            let da = digits(a, p, e);
            let dn: Vec<u64> = da.iter().map(|&x| (p - x) % p).collect();
            neg[a as usize] = undigits(&dn, p) as u16;
            for b in 0..q {
                let db = digits(b, p, e);
                let ds: Vec<u64> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = undigits(&ds, p) as u16;
                let dm = poly_mulmod(&da, &db, &modulus_low, p, e);
                mul[(a * q + b) as usize] = undigits(&dm, p) as u16;
            }
        }
        Ok(Fq {
            q,
            p,
            e,
            add,
            mul,
            neg,
        })
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn extension_degree(&self) -> usize {
        self.e
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        self.add[(a * self.q + b) as usize] as u64
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg[b as usize] as u64)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.mul[(a * self.q + b) as usize] as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_prime_powers() {
        assert!(Fq::new(6).is_err());
        assert!(Fq::new(1).is_err());
        assert!(Fq::new(257).is_err());
        assert!(Fq::new(12).is_err());
    }

    #[test]
    fn f2_is_xor_and() {
        let f = Fq::new(2).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(f.add(a, b), a ^ b);
                assert_eq!(f.mul(a, b), a & b);
                assert_eq!(f.sub(a, b), a ^ b);
            }
        }
    }

    #[test]
    fn f5_arithmetic() {
        let f = Fq::new(5).unwrap();
        assert_eq!(f.add(3, 4), 2);
        assert_eq!(f.mul(3, 4), 2);
        assert_eq!(f.sub(1, 3), 3);
    }

    fn check_field_axioms(q: u64) {
        let f = Fq::new(q).unwrap();
        for a in 0..q {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.sub(a, a), 0);
            // every nonzero element has an inverse (row contains a 1)
            if a != 0 {
                assert!((0..q).any(|b| f.mul(a, b) == 1), "no inverse for {a} in F{q}");
            }
            for b in 0..q {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in 0..q {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn extension_fields_are_fields() {
        for q in [2, 3, 4, 5, 8, 9, 16, 25, 27] {
            check_field_axioms(q);
        }
    }

    #[test]
    fn gf4_matches_binary_field() {
        // F4 built over F2 must agree with the GF(2^2) tables
        let f = Fq::new(4).unwrap();
        let g = crate::gf2m::FieldCtx::new(2).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(f.add(a, b), g.add(a, b));
                assert_eq!(f.mul(a, b), g.mul(a, b));
            }
        }
    }
}
