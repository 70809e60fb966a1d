//! Cyclic points of uniformly random self-maps of a finite set.

use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::Report;
use crate::error::{Error, Result};
use crate::padyn::graph_stats;

/// Largest set the exhaustive enumeration will handle (`n^n` maps).
pub const ENUMERATION_CAP: u64 = 8;

/// `E[#cyclic points] = sum_{k=1}^{n} n! / ((n-k)! n^k)`, exactly.
pub fn expected_cyclic(n: u64) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::Invalid("the set must be nonempty".into()));
    }
    // common denominator n^n: term k is n!/(n-k)! * n^(n-k)
    let nn = BigUint::from(n);
    let mut falling = BigUint::from(1u32);
    let mut num = BigUint::from(0u32);
    for k in 1..=n {
        falling *= n - k + 1;
        num += &falling * nn.pow((n - k) as u32);
    }
    Ok(BigRational::new(BigInt::from(num), BigInt::from(nn.pow(n as u32))))
}

/// Mean number of cyclic points over all `n^n` self-maps, by enumeration.
pub fn enumerated_cyclic_mean(n: u64) -> Result<BigRational> {
    if n == 0 || n > ENUMERATION_CAP {
        return Err(Error::TooLarge(format!("enumerating the self-maps of a {n}-set")));
    }
    let total_maps = n.pow(n as u32);
    let total: u64 = (0..total_maps)
        .into_par_iter()
        .map(|mut code| {
            let table: Vec<u32> = (0..n)
                .map(|_| {
                    let v = code % n;
                    code /= n;
                    v as u32
                })
                .collect();
            graph_stats(&table).periodic_count
        })
        .sum();
    Ok(BigRational::new(BigInt::from(total), BigInt::from(total_maps)))
}

/// The cyclic-point count of one random map; trial `t` draws from its own
/// ChaCha stream, so results do not depend on scheduling.
fn trial(n: u64, seed: u64, t: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(t);
    let table: Vec<u32> = (0..n).map(|_| rng.random_range(0..n) as u32).collect();
    graph_stats(&table).periodic_count
}

/// Monte Carlo mean of the cyclic proportion against the exact expectation.
///
/// `lhs` is `|sample mean - E/n|` and `rhs` is four estimated standard errors.
pub fn random_map_baseline(n: u64, trials: u64, seed: u64) -> Result<Report> {
    let started = Instant::now();
    if n == 0 || trials == 0 {
        return Err(Error::Invalid("need at least one point and one trial".into()));
    }
    if n > u32::MAX as u64 {
        return Err(Error::TooLarge(format!("a random map on {n} points")));
    }
    let counts: Vec<u64> = (0..trials).into_par_iter().map(|t| trial(n, seed, t)).collect();
    let sum: u64 = counts.iter().sum();
    let mean = BigRational::new(BigInt::from(sum), BigInt::from(trials * n));
    let exact = expected_cyclic(n)? / BigRational::from_integer(BigInt::from(n));
    let deviation = (mean.clone() - exact).abs();
    let rhs = if trials < 2 {
        f64::INFINITY
    } else {
        let m = mean.to_f64().expect("finite");
        let var = counts.iter().map(|&c| (c as f64 / n as f64 - m).powi(2)).sum::<f64>()
            / (trials - 1) as f64;
        4.0 * (var / trials as f64).sqrt()
    };
    let mut report =
        Report::judged("baseline", format!("points={n};trials={trials}"), deviation, rhs, started);
    report.seed = Some(seed);
    Ok(report)
}
