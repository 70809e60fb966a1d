//! Bound checkers and closed-form bound evaluators.

use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::census::{constant_fiber_weight, weighted_average};
use super::{elapsed_ms, judge, Report};
use crate::error::{Error, Result};
use crate::family::FamilyMap;
use crate::ffield::{field_over, prime_power, FieldCtx, FieldElem};
use crate::height::{ln_biguint_f64, KPoint};
use crate::padyn::{image_size_of_table, UnicriticalSweep};
use crate::wreath::{fix_n_exact, wreath_order, ActionSpec, Family, DEFAULT_BIT_CAP};

fn ln_factorial(d: usize) -> f64 {
    (2..=d).map(|k| (k as f64).ln()).sum()
}

fn ratio(a: u64, b: u64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn ooh<T>(msg: String) -> Result<T> {
    Err(Error::OutOfHypothesis(msg))
}

/// `ln(ln q^r - ln 2) - ln max(ln q^{2m}, ln (d!)^4)`, the shared denominator
/// term of the unicritical bounds; it must be positive for the bound to be defined.
fn log_log_gap(q: u64, r: u32, m: u32, d: usize) -> Result<f64> {
    let ln_qr = r as f64 * (q as f64).ln();
    let inner = ln_qr - std::f64::consts::LN_2;
    let big = (2.0 * m as f64 * (q as f64).ln()).max(4.0 * ln_factorial(d));
    if inner <= 0.0 {
        return Err(Error::OutOfDomain(format!("ln q^r - ln 2 = {inner} <= 0")));
    }
    let gap = inner.ln() - big.ln();
    if gap <= 0.0 {
        return Err(Error::OutOfDomain(format!("log-log gap {gap} <= 0")));
    }
    Ok(gap)
}

/// The degree threshold `max(2 m d^2, 4 d log_q(d!))` that `r` must exceed.
pub fn unicritical_threshold(q: u64, d: usize, m: u32) -> f64 {
    let a = 2.0 * m as f64 * (d * d) as f64;
    let b = 4.0 * d as f64 * ln_factorial(d) / (q as f64).ln();
    a.max(b)
}

fn unicritical_hypothesis(q: u64, r: u32, d: usize, m: u32) -> Result<()> {
    if prime_power(q).is_none() {
        return Err(Error::NotPrimePower(q));
    }
    if d < 2 || m < 1 || r < 1 {
        return ooh(format!("need d >= 2, m >= 1, r >= 1; got d = {d}, m = {m}, r = {r}"));
    }
    if q % d as u64 != 1 {
        return ooh(format!("q = {q} is not 1 mod d = {d}"));
    }
    let t = unicritical_threshold(q, d, m);
    if (r as f64) <= t {
        return ooh(format!("r = {r} does not exceed max(2md^2, 4d log_q(d!)) = {t:.4}"));
    }
    Ok(())
}

/// Right side of the single-parameter unicritical bound:
/// `4 ln d / ((d-1) * gap) + 7d / q^{r/2}`.
pub fn thm12_rhs(q: u64, r: u32, d: usize, m: u32) -> Result<f64> {
    let gap = log_log_gap(q, r, m, d)?;
    let df = d as f64;
    Ok(4.0 * df.ln() / ((df - 1.0) * gap) + 7.0 * df / (q as f64).powf(r as f64 / 2.0))
}

/// Right side of the averaged unicritical bound over `(F_{q^r})^m`, with the
/// factor `g = gcd(q^r - 1, m)` on both terms.
pub fn thm64_rhs(q: u64, r: u32, d: usize, m: u32) -> Result<f64> {
    let gap = log_log_gap(q, r, m, d)?;
    let qr = BigUint::from(q).pow(r);
    let g = (qr - 1u32).gcd(&BigUint::from(m)).to_f64().expect("small");
    let df = d as f64;
    Ok(4.0 * df.ln() * g / ((df - 1.0) * gap) + (7.0 * df + 2.0) * g / (q as f64).powf(r as f64 / 2.0))
}

/// Right side of the degree-two average bound:
/// `(q^r+1)/(q^r-1) * (ln 16 / (ln(ln q^r - ln 2) - ln max(ln q^2, ln 16)) + 16/q^{r/2})`.
pub fn thm13_rhs(q: u64, r: u32) -> Result<f64> {
    let qr = (q as f64).powi(r as i32);
    let ln16 = 16f64.ln();
    let inner = r as f64 * (q as f64).ln() - std::f64::consts::LN_2;
    let gap = inner.ln() - (2.0 * (q as f64).ln()).max(ln16).ln();
    if inner <= 0.0 || gap <= 0.0 {
        return Err(Error::OutOfDomain(format!("log-log gap for q = {q}, r = {r} is not positive")));
    }
    Ok((qr + 1.0) / (qr - 1.0) * (ln16 / gap + 16.0 / qr.sqrt()))
}

/// Right side of the prime-field degree-two bound `22 / ln ln p^r`.
pub fn cor11_rhs(p: u64, r: u32) -> Result<f64> {
    let ll = (r as f64 * (p as f64).ln()).ln();
    if ll <= 0.0 {
        return Err(Error::OutOfDomain(format!("ln ln {p}^{r} <= 0")));
    }
    Ok(22.0 / ll)
}

/// The place-size bound `(4 ln d [+1 for A_4]) / ln ln N + 7d / N^{3/2 - eps}`.
pub fn thm63_bound(family: Family, d: usize, eps: f64, place_norm: &BigUint) -> Result<f64> {
    if family == Family::Custom {
        return Err(Error::OutOfHypothesis("the bound covers the S, A, D and C families".into()));
    }
    let ln_n = if place_norm.is_zero() { f64::NEG_INFINITY } else { ln_biguint_f64(place_norm) };
    let ll = ln_n.ln();
    if !(ll > 0.0) {
        return Err(Error::OutOfDomain(format!("ln ln N(v) <= 0 for N(v) = {place_norm}")));
    }
    let df = d as f64;
    let numer = if family == Family::A && d == 4 { 1.0 + 4.0 * df.ln() } else { 4.0 * df.ln() };
    let tail = 7.0 * df * (-(1.5 - eps) * ln_n).exp();
    Ok(numer / ll + tail)
}

/// `max(N1, c^{2 d^2}, (d!)^{4d})`, rounding `c^{2d^2}` up when `c` is not integral.
pub fn porism_threshold(fam: &FamilyMap, crit: &[KPoint], n1: &BigUint) -> Result<BigUint> {
    let ctx = fam.ctx();
    let d = fam.degree();
    let c = ctx.c_const(fam.num(), fam.den(), crit)?;
    let c_pow = c.pow((2 * d * d) as i32).ceil().to_integer();
    let c_pow = c_pow.to_biguint().expect("positive");
    let fact: BigUint = (1..=d as u64).map(BigUint::from).product();
    let f_pow = fact.pow(4 * d as u32);
    Ok(n1.clone().max(c_pow).max(f_pow))
}

/// Image-size residual `| |phi^n(P^1)|/(q+1) - fix_n(C_d) |` for `X^d + c`,
/// against the error term `7 n d |[C_d]^n| / q^{1/2}` divided by `q + 1`.
pub fn check_image_size(ctx: &FieldCtx, d: usize, c: &FieldElem, n: u32) -> Result<Report> {
    let started = Instant::now();
    let q = ctx.size().ok_or_else(|| Error::TooLarge(format!("GF({})", ctx.q())))?;
    let params = format!("q={q};d={d};c={};n={n}", ctx.index_of(c));
    if d < 2 || n < 1 {
        return ooh(format!("need d >= 2 and n >= 1 ({params})"));
    }
    if (d as u64).is_multiple_of(ctx.p()) {
        return ooh(format!("characteristic {} divides d = {d}: inseparable or wild", ctx.p()));
    }
    if q % d as u64 != 1 {
        return ooh(format!("q = {q} is not 1 mod d = {d}"));
    }
    let sweep = UnicriticalSweep::new(ctx, d)?;
    let image = image_size_of_table(&sweep.table(ctx.index_of(c) as u32), n as usize);
    let spec = ActionSpec::new(Family::C, d)?;
    let fix = fix_n_exact(&spec, n, DEFAULT_BIT_CAP)?;
    let residual = (ratio(image, q + 1) - fix).abs();
    let g = wreath_order(&spec, n).to_f64().unwrap_or(f64::INFINITY);
    let rhs = 7.0 * n as f64 * d as f64 * g / ((q as f64).sqrt() * (q + 1) as f64);
    Ok(Report::judged("image-size", params, residual, rhs, started))
}

/// Result of a parameter sweep: one report per parameter and an aggregate.
#[derive(Clone, Debug)]
pub struct SweepOutcome {
    pub aggregate: Report,
    pub per_param: Vec<Report>,
    /// `(parameter index, periodic count)` in parameter order.
    pub counts: Vec<(u64, u64)>,
}

/// Periodic proportion of `X^d + alpha^m` for every generator `alpha` of
/// `GF(q^r)` over `GF(q)`, each compared against the single-parameter bound.
pub fn check_thm12(q: u64, r: u32, d: usize, m: u32) -> Result<SweepOutcome> {
    let started = Instant::now();
    let params = format!("q={q};r={r};d={d};m={m}");
    unicritical_hypothesis(q, r, d, m)?;
    let rhs = thm12_rhs(q, r, d, m)?;
    let ctx = field_over(q, r as usize)?;
    let sweep = UnicriticalSweep::new(&ctx, d)?;
    let n = sweep.n_points();
    let gens: Vec<u64> = (0..n - 1)
        .into_par_iter()
        .filter(|&i| ctx.generates(&ctx.elem_at(i)).expect("valid base"))
        .collect();
    let cs: Vec<u32> =
        gens.iter().map(|&i| ctx.index_of(&ctx.pow(&ctx.elem_at(i), m as u64)) as u32).collect();
    let counts = sweep.periodic_counts(&cs);
    let total_ms = elapsed_ms(started);
    let per_ms = if gens.is_empty() { 0 } else { total_ms / gens.len() as u64 };
    let per_param: Vec<Report> = gens
        .iter()
        .zip(&counts)
        .map(|(&a, &k)| {
            let lhs = ratio(k, n);
            Report {
                check: "thm12".into(),
                params: format!("{params};alpha={a}"),
                status: judge(&lhs, rhs),
                lhs: Some(lhs),
                rhs: Some(rhs),
                runtime_ms: per_ms,
                seed: None,
            }
        })
        .collect();
    let max = counts.iter().copied().max().unwrap_or(0);
    let aggregate = Report::judged("thm12-max", params, ratio(max, n), rhs, started);
    Ok(SweepOutcome { aggregate, per_param, counts: gens.into_iter().zip(counts).collect() })
}

/// Exact average periodic proportion over all degree-two polynomials over
/// `GF(q^r)`, via reduction to `X^2 + delta` with the constant fiber weights.
pub fn quadratic_average(q: u64, r: u32) -> Result<BigRational> {
    let ctx = field_over(q, r as usize)?;
    let sweep = UnicriticalSweep::new(&ctx, 2)?;
    let size = sweep.n_points() - 1;
    let deltas: Vec<u32> = (0..size as u32).collect();
    let counts = sweep.periodic_counts(&deltas);
    let w = constant_fiber_weight(size);
    let weights = vec![w; counts.len()];
    Ok(weighted_average(&counts, &weights, sweep.n_points()))
}

/// Average periodic proportion over all degree-two polynomials against the
/// degree-two average bound.
pub fn check_thm13(q: u64, r: u32) -> Result<Report> {
    let started = Instant::now();
    let params = format!("q={q};r={r}");
    let (p, _) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if p == 2 {
        return ooh(format!("q = {q} is even"));
    }
    if r <= 8 {
        return ooh(format!("r = {r} <= 8"));
    }
    let rhs = thm13_rhs(q, r)?;
    let lhs = quadratic_average(q, r)?;
    Ok(Report::judged("thm13", params, lhs, rhs, started))
}

/// The same average over a prime field against `22 / ln ln p^r`.
pub fn check_cor11(p: u64, r: u32) -> Result<Report> {
    let started = Instant::now();
    let params = format!("p={p};r={r}");
    if !crate::ffield::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return ooh("p = 2 is even".into());
    }
    let t = 6.0 * (p as f64).ln();
    if (r as f64) <= t {
        return ooh(format!("r = {r} does not exceed 6 ln p = {t:.4}"));
    }
    let rhs = cor11_rhs(p, r)?;
    let lhs = quadratic_average(p, r)?;
    Ok(Report::judged("cor11", params, lhs, rhs, started))
}

/// Average periodic proportion of `X^d + beta` over the set of `m`-th powers
/// `beta` in `GF(q^r)`, against the averaged unicritical bound.
pub fn check_thm64(q: u64, r: u32, d: usize, m: u32) -> Result<Report> {
    let started = Instant::now();
    let params = format!("q={q};r={r};d={d};m={m}");
    unicritical_hypothesis(q, r, d, m)?;
    let rhs = thm64_rhs(q, r, d, m)?;
    let ctx = field_over(q, r as usize)?;
    let sweep = UnicriticalSweep::new(&ctx, d)?;
    let size = sweep.n_points() - 1;
    let mut is_power = vec![false; size as usize];
    for i in 0..size {
        is_power[ctx.index_of(&ctx.pow(&ctx.elem_at(i), m as u64)) as usize] = true;
    }
    let betas: Vec<u32> = (0..size as u32).filter(|&i| is_power[i as usize]).collect();
    let counts = sweep.periodic_counts(&betas);
    let lhs = weighted_average(&counts, &vec![1; counts.len()], sweep.n_points());
    Ok(Report::judged("thm64", params, lhs, rhs, started))
}
