//! Exact Hamming distance to the nearest low-rank matrix over F2.

use crate::bits::Bits;
use crate::error::{Error, Result};

/// Minimum Hamming distance from `m` (rows of an n x n matrix over F2) to
/// any matrix of rank at most `r`, by enumerating every n x r times r x n
/// factorization. Budget: n <= 4 and r <= 2.
pub fn rigidity_distance(m: &[Bits], r: usize) -> Result<usize> {
    let n = m.len();
    if n == 0 || m.iter().any(|row| row.len() != n) {
        return Err(Error::Infeasible {
            what: "rigidity distance",
            detail: "matrix must be square and non-empty".into(),
        });
    }
    if n > 4 || r > 2 {
        return Err(Error::Budget {
            what: "rigidity distance",
            need: "n <= 4 and r <= 2".into(),
            got: format!("n={n}, r={r}"),
        });
    }
    let rows: Vec<u64> = m.iter().map(Bits::to_u64_msb).collect();
    if r == 0 {
        // the only rank-0 matrix is zero
        return Ok(rows.iter().map(|w| w.count_ones() as usize).sum());
    }
    let mut best = usize::MAX;
    // right factor: r rows of n bits; left factor: n rows of r bits
    for right in 0..(1u64 << (r * n)) {
        let r_rows: Vec<u64> = (0..r)
            .map(|t| (right >> (t * n)) & ((1 << n) - 1))
            .collect();
        for left in 0..(1u64 << (n * r)) {
            let mut dist = 0usize;
            for (i, &mrow) in rows.iter().enumerate() {
                let sel = (left >> (i * r)) & ((1 << r) - 1);
                let mut prod = 0u64;
                for (t, &rrow) in r_rows.iter().enumerate() {
                    if (sel >> t) & 1 == 1 {
                        prod ^= rrow;
                    }
                }
                dist += (prod ^ mrow).count_ones() as usize;
            }
            if dist < best {
                best = dist;
            }
        }
    }
    Ok(best)
}

/// A matrix is `(r, s)`-rigid exactly when every matrix within Hamming
/// distance `s` has rank above `r`.
pub fn is_rigid(m: &[Bits], r: usize, s: usize) -> Result<bool> {
    Ok(rigidity_distance(m, r)? > s)
}
