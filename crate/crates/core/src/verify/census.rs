//! Reduction of degree-two averages to the unicritical family `X^2 + delta`.
//!
//! In odd characteristic `aX^2 + bX + c` is conjugate by `mu(X) = aX + b/2` to
//! `X^2 + delta` with `delta = ac + b/2 - b^2/4`. For each `delta` and each of
//! the `q(q-1)` choices of `(a, b)` exactly one `c` lands on `delta`, so every
//! fiber has `q^2 - q` elements; the census below confirms this by brute force.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::ffield::{FieldCtx, Poly};
use crate::padyn::{graph_stats, RationalMap};

/// The number of degree-two polynomials over a field of `size` elements that
/// reduce to each `X^2 + delta`.
pub fn constant_fiber_weight(size: u64) -> u64 {
    size * size - size
}

/// `sum w_i c_i / (n_points * sum w_i)`: the weighted mean of `c_i / n_points`.
pub fn weighted_average(counts: &[u64], weights: &[u64], n_points: u64) -> BigRational {
    let num: BigUint = counts.iter().zip(weights).map(|(&c, &w)| BigUint::from(c) * w).sum();
    let den: BigUint = weights.iter().map(|&w| BigUint::from(w)).sum::<BigUint>() * n_points;
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Outcome of the exhaustive census over all degree-two polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct Census {
    /// Number of polynomials reducing to `X^2 + delta`, indexed by `delta`.
    pub fibers: Vec<u64>,
    /// Average periodic proportion over every degree-two polynomial.
    pub full_average: BigRational,
    /// The same average computed from the `X^2 + delta` representatives and `fibers`.
    pub weighted_average: BigRational,
    /// Every polynomial has as many periodic points as its representative.
    pub counts_agree: bool,
}

impl Census {
    pub fn fibers_constant(&self) -> bool {
        self.fibers.windows(2).all(|w| w[0] == w[1])
    }
}

fn periodic_count(phi: &RationalMap) -> u64 {
    graph_stats(&phi.successor_table()).periodic_count
}

/// Enumerates all `(q-1) q^2` degree-two polynomials over `ctx`.
pub fn census(ctx: &FieldCtx) -> Result<Census> {
    if ctx.p() == 2 {
        return Err(Error::OutOfHypothesis("the reduction needs odd characteristic".into()));
    }
    let q = ctx.size().filter(|&q| q <= 1024).ok_or_else(|| Error::TooLarge(format!("census over GF({})", ctx.q())))?;
    let elems: Vec<_> = ctx.elements().collect();
    let half = ctx.inv(&ctx.from_u64(2))?;
    let quarter = ctx.square(&half);
    let reps: Vec<u64> = elems
        .iter()
        .map(|delta| periodic_count(&RationalMap::unicritical(ctx, 2, delta.clone())))
        .collect();
    let mut fibers = vec![0u64; q as usize];
    let mut total = BigUint::from(0u32);
    let mut counts_agree = true;
    for a in elems.iter().skip(1) {
        for b in &elems {
            for c in &elems {
                let f = Poly::new(vec![c.clone(), b.clone(), a.clone()]);
                let k = periodic_count(&RationalMap::polynomial(ctx, f));
                let delta = ctx.sub(
                    &ctx.add(&ctx.mul(a, c), &ctx.mul(b, &half)),
                    &ctx.mul(&ctx.square(b), &quarter),
                );
                let idx = ctx.index_of(&delta) as usize;
                fibers[idx] += 1;
                counts_agree &= reps[idx] == k;
                total += k;
            }
        }
    }
    let n_maps = (q - 1) * q * q;
    let full_average = BigRational::new(BigInt::from(total), BigInt::from(n_maps * (q + 1)));
    let weighted_average = weighted_average(&reps, &fibers, q + 1);
    Ok(Census { fibers, full_average, weighted_average, counts_agree })
}
