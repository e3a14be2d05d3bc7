//! Exact bias of two-argument functions on flat source pairs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::gf2m::FieldCtx;

fn ratio(num: i64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `|Pr_{x~X,y~Y}[g(xy) = 1] - 1/2|` where `g` is the last output bit of the
/// polynomial with the given coefficients over GF(2^{2n}).
pub fn extractor_bias(field: &FieldCtx, alphas: &[u64], xs: &[u64], ys: &[u64]) -> BigRational {
    let n = field.degree() / 2;
    let mut hits = 0i64;
    for &x in xs {
        for &y in ys {
            let point = (x << n) | y;
            if field.poly_eval(alphas, point) & 1 == 1 {
                hits += 1;
            }
        }
    }
    (ratio(hits, (xs.len() * ys.len()) as u64) - ratio(1, 2)).abs()
}

/// True iff every pair of size-`2^k` subsets X, Y of `{0,1}^n` keeps the
/// bias within `eps`. Refuses when the number of subset pairs exceeds the
/// exhaustive budget of 10^7.
pub fn is_extractor(
    field: &FieldCtx,
    alphas: &[u64],
    k: usize,
    eps: &BigRational,
) -> Result<bool> {
    let n = field.degree() / 2;
    let space = 1usize << n;
    let size = 1usize << k;
    if size > space {
        return Err(Error::Infeasible {
            what: "extractor check",
            detail: format!("sources of size 2^{k} do not fit in {n}-bit strings"),
        });
    }
    let subsets = crate::codec::binomial(space, size);
    let pairs = &subsets * &subsets;
    if pairs > num_bigint::BigUint::from(10_000_000u64) {
        return Err(Error::Budget {
            what: "extractor check",
            need: "at most 10^7 subset pairs".into(),
            got: format!("{pairs}"),
        });
    }

    // precompute g on the whole domain
    let mut g = vec![false; space * space];
    for x in 0..space {
        for y in 0..space {
            g[x * space + y] = field.poly_eval(alphas, ((x as u64) << n) | y as u64) & 1 == 1;
        }
    }
    // all size-2^k subsets as sorted index lists
    let mut sets: Vec<Vec<usize>> = Vec::new();
    let mut current = Vec::new();
    collect_subsets(space, size, 0, &mut current, &mut sets);

    let half = ratio(1, 2);
    for xs in &sets {
        for ys in &sets {
            let mut hits = 0i64;
            for &x in xs {
                for &y in ys {
                    if g[x * space + y] {
                        hits += 1;
                    }
                }
            }
            let bias = (ratio(hits, (size * size) as u64) - half.clone()).abs();
            if bias > *eps {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn collect_subsets(
    space: usize,
    size: usize,
    from: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if current.len() == size {
        out.push(current.clone());
        return;
    }
    let needed = size - current.len();
    for v in from..=space.saturating_sub(needed) {
        current.push(v);
        collect_subsets(space, size, v + 1, current, out);
        current.pop();
    }
}
