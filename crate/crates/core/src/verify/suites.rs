//! Invariant suites reported in the same format as the theorem checkers.
//! Each counts violations; the bound is zero violations.

use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::census::{census, constant_fiber_weight};
use super::checks::check_image_size;
use super::{Report, Status};
use crate::error::{Error, Result};
use crate::family::{orbit_symbolic, FamilyMap, Reduction};
use crate::ffield::{field_of_order, field_over, prime_power, FieldCtx, Poly};
use crate::height::{GlobalElem, HeightCtx, KPoint, KPoly, Place};
use crate::padyn::{image_size_of_table, P1Point, RationalMap, UnicriticalSweep};
use crate::wreath::{fix_n_exact, juul_bound, satisfies_juul, ActionSpec, Family, DEFAULT_BIT_CAP};

fn count(k: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

fn violations(check: &str, params: String, bad: u64, started: Instant) -> Report {
    Report::judged(check, params, count(bad), 0.0, started)
}

/// `|X^2 + alpha (P^1(F_q))| = (q+3)/2` for every `alpha` and every odd prime
/// power `q <= q_max`, together with the image-size inequality at `n = 1` and
/// its exact residual `1/(q+1)`.
pub fn image_size_identity(q_max: u64) -> Result<Report> {
    let started = Instant::now();
    let qs: Vec<u64> = (3..=q_max).filter(|&q| q % 2 == 1 && prime_power(q).is_some()).collect();
    let bad: u64 = qs
        .par_iter()
        .map(|&q| -> Result<u64> {
            let ctx = field_of_order(q)?;
            let sweep = UnicriticalSweep::new(&ctx, 2)?;
            let mut bad = 0;
            let residual = BigRational::new(BigInt::from(1), BigInt::from(q + 1));
            for c in 0..q as u32 {
                if image_size_of_table(&sweep.table(c), 1) != (q + 3) / 2 {
                    bad += 1;
                }
                let r = check_image_size(&ctx, 2, &ctx.elem_at(c as u64), 1)?;
                if !r.status.is_ok() || r.lhs.as_ref() != Some(&residual) {
                    bad += 1;
                }
            }
            Ok(bad)
        })
        .sum::<Result<u64>>()?;
    Ok(violations("image-size-identity", format!("q<={q_max};fields={}", qs.len()), bad, started))
}

/// The full census at a field of order `q`: the degree-two average equals the
/// reduced average exactly and every fiber has `q^2 - q` elements.
pub fn census_report(q: u64) -> Result<Report> {
    let started = Instant::now();
    let ctx = field_of_order(q)?;
    let c = census(&ctx)?;
    let mut bad = c.fibers.iter().filter(|&&f| f != constant_fiber_weight(q)).count() as u64;
    if !c.counts_agree {
        bad += 1;
    }
    let mut report = violations("census", format!("q={q}"), bad, started);
    let diff = (c.full_average.clone() - c.weighted_average.clone()).abs();
    if diff != count(0) {
        report.status = Status::Fail;
    }
    report.lhs = Some(report.lhs.take().expect("set") + diff);
    Ok(report)
}

/// First `alpha` (in enumeration order) generating `GF(p^r)` over `GF(p)` with
/// `0, phi(0), ..., phi^depth(0)` pairwise distinct for `phi = X^2 + alpha`.
pub fn disjoint_generator(ctx: &FieldCtx, depth: usize) -> Option<u64> {
    let size = ctx.size()?;
    (0..size).find(|&i| {
        let alpha = ctx.elem_at(i);
        if !ctx.generates(&alpha).unwrap_or(false) {
            return false;
        }
        let phi = RationalMap::unicritical(ctx, 2, alpha);
        let mut seen = vec![P1Point::Affine(ctx.zero())];
        for _ in 0..depth {
            let next = phi.evaluate(seen.last().expect("nonempty")).expect("polynomial");
            if seen.contains(&next) {
                return false;
            }
            seen.push(next);
        }
        true
    })
}

/// `| |phi^2(P^1)|/(q+1) - fix_2(C_2) | < tolerance` at the first generator
/// whose critical orbit is disjoint to depth 4 (an empirical regression check).
pub fn empirical_convergence(p: u64, r: usize, tolerance: f64) -> Result<(Report, u64)> {
    let started = Instant::now();
    let ctx = field_over(p, r)?;
    let alpha = disjoint_generator(&ctx, 4)
        .ok_or_else(|| Error::Invalid("no generator with a disjoint critical orbit".into()))?;
    let sweep = UnicriticalSweep::new(&ctx, 2)?;
    let image = image_size_of_table(&sweep.table(alpha as u32), 2);
    let fix = fix_n_exact(&ActionSpec::new(Family::C, 2)?, 2, DEFAULT_BIT_CAP)?;
    let lhs = (BigRational::new(BigInt::from(image), BigInt::from(sweep.n_points())) - fix).abs();
    let params = format!("q={}^{r};alpha={alpha}", p);
    Ok((Report::judged("empirical-n2", params, lhs, tolerance, started), alpha))
}

/// For `X^2 + s` over `F_q(s)` and `C = {0}`: at every place of degree at most
/// `deg_max` with norm at least `2^ar c^{2 d^n}`, the reduced points
/// `phi^m(0)`, `m <= n`, are pairwise distinct (for each `n <= n_max`).
pub fn prop48_contrapositive(q: u64, n_max: u32, deg_max: usize) -> Result<Report> {
    let started = Instant::now();
    let ctx = HeightCtx::function_field(q)?;
    let k = ctx.constant_field().expect("function field").clone();
    let fam = FamilyMap::unicritical(&ctx, 2, ctx.s()?);
    let crit = [KPoint::Affine(ctx.zero())];
    let c = ctx.c_const(fam.num(), fam.den(), &crit)?;
    let d = fam.degree() as u32;
    let mut bad = 0u64;
    let mut places = 0u64;
    for n in 0..=n_max {
        let orbit = orbit_symbolic(&fam, &crit[0], n as usize)?;
        let bound = BigRational::from_integer(BigInt::from(BigUint::from(1u32) << ctx.ar()))
            * c.pow(2 * d.pow(n) as i32);
        for deg in 1..=deg_max {
            let norm = BigRational::from_integer(BigInt::from(BigUint::from(q).pow(deg as u32)));
            if norm < bound {
                continue;
            }
            for pi in k.irreducible_polys(deg) {
                let red = Reduction::new(&ctx, &Place::Irreducible(pi))?;
                let pts: Vec<P1Point> = orbit.iter().map(|o| red.reduce_point(&ctx, o)).collect();
                places += 1;
                if (0..pts.len()).any(|i| (0..i).any(|j| pts[i] == pts[j])) {
                    bad += 1;
                }
            }
        }
    }
    Ok(violations("prop48", format!("q={q};n<={n_max};deg<={deg_max};places={places}"), bad, started))
}

/// Exact values are used while their size stays below this many bits (so
/// ties with the bound are settled exactly); beyond it, certified upper bounds.
pub const CONFORMANCE_BIT_CAP: u64 = 4096;

/// `fix_n <= bound` for every built-in family with a published bound,
/// `2 <= d <= d_max`, `1 <= n <= n_max`, using exact or certified-upper values.
pub fn juul_conformance(d_max: usize, n_max: u32) -> Result<Report> {
    let started = Instant::now();
    let mut cases = Vec::new();
    for family in [Family::S, Family::A, Family::D, Family::C] {
        for d in 2..=d_max {
            if juul_bound(family, d, 1).is_ok() {
                cases.push(ActionSpec::new(family, d)?);
            }
        }
    }
    let checked = cases.len() as u64 * n_max as u64;
    let bad: u64 = cases
        .par_iter()
        .map(|spec| -> Result<u64> {
            let mut bad = 0;
            for n in 1..=n_max {
                if !satisfies_juul(spec, n, CONFORMANCE_BIT_CAP)? {
                    bad += 1;
                }
            }
            Ok(bad)
        })
        .sum::<Result<u64>>()?;
    Ok(violations("juul", format!("d<={d_max};n<={n_max};checks={checked}"), bad, started))
}

fn random_elem(ctx: &HeightCtx, rng: &mut ChaCha8Rng, bound: i64) -> GlobalElem {
    match ctx {
        HeightCtx::Rationals => {
            let n = rng.random_range(-bound..=bound);
            let d = rng.random_range(1..=bound);
            ctx.rational(n, d).expect("nonzero denominator")
        }
        HeightCtx::FunctionField(k) => {
            let q = k.size().expect("small constant field");
            let mut poly = |deg: usize| {
                Poly::new((0..=deg).map(|_| k.elem_at(rng.random_range(0..q))).collect())
            };
            let num = poly(4);
            let den = poly(3);
            let den = if den.is_zero() { Poly::one(k) } else { den };
            ctx.ratfunc(num, den).expect("nonzero denominator")
        }
    }
}

fn random_nonzero(ctx: &HeightCtx, rng: &mut ChaCha8Rng, bound: i64) -> GlobalElem {
    loop {
        let x = random_elem(ctx, rng, bound);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Seeded height inequalities over `Q` and `F_3(s)`:
/// the product formula and agreement of the two height evaluations on
/// `samples` elements, `H(a+b) <= 2^ar H(a) H(b)` on `samples` pairs,
/// `H(phi(gamma)) <= b H(gamma)^d` on `samples / 5` random maps, and
/// `H(phi^m(0)) < c^{d^n}` for `m <= n <= 5` on unicritical families.
pub fn height_suite(seed: u64, samples: usize) -> Result<Report> {
    let started = Instant::now();
    let mut bad = 0u64;
    for ctx in [HeightCtx::rationals(), HeightCtx::function_field(3)?] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let x = random_nonzero(&ctx, &mut rng, 1000);
            if !ctx.product_formula_check(&x)? || ctx.height(&x) != ctx.height_literal(&x) {
                bad += 1;
            }
        }
        let factor = count(1u64 << ctx.ar());
        for _ in 0..samples {
            let (a, b) = (random_elem(&ctx, &mut rng, 1000), random_elem(&ctx, &mut rng, 1000));
            if ctx.height(&ctx.add(&a, &b)) > &factor * ctx.height(&a) * ctx.height(&b) {
                bad += 1;
            }
        }
        let mut done = 0;
        while done < samples / 5 {
            let d = rng.random_range(1..=3usize);
            let mut f: Vec<GlobalElem> = (0..d).map(|_| random_elem(&ctx, &mut rng, 100)).collect();
            f.push(random_nonzero(&ctx, &mut rng, 100));
            let f = KPoly(f);
            // g = 1, a constant, or X - a with f(a) != 0, so gcd(f, g) = 1
            let g = match rng.random_range(0..3) {
                0 => KPoly(vec![ctx.one()]),
                1 => KPoly(vec![random_nonzero(&ctx, &mut rng, 100)]),
                _ => {
                    let a = random_elem(&ctx, &mut rng, 100);
                    if ctx.eval(&f, &a).is_zero() {
                        continue;
                    }
                    KPoly(vec![ctx.neg(&a), ctx.one()])
                }
            };
            let deg = f.degree().unwrap_or(0).max(g.degree().unwrap_or(0));
            let gamma = match rng.random_range(0..8) {
                0 => KPoint::Infinity,
                _ => KPoint::Affine(random_elem(&ctx, &mut rng, 100)),
            };
            let image = ctx.eval_map(&f, &g, &gamma)?;
            let rhs = ctx.b_const(&f, &g)? * ctx.height_kpoint(&gamma).pow(deg as i32);
            if ctx.height_kpoint(&image) > rhs {
                bad += 1;
            }
            done += 1;
        }
    }
    // iterate heights stay below c^{d^n}
    let mut families = Vec::new();
    for q in [3u64, 5] {
        let ctx = HeightCtx::function_field(q)?;
        for d in 2..=3usize {
            for m in 1..=2u32 {
                let c0 = ctx.pow(&ctx.s()?, m);
                families.push(FamilyMap::unicritical(&ctx, d, c0));
            }
        }
    }
    let qq = HeightCtx::rationals();
    families.push(FamilyMap::unicritical(&qq, 2, qq.from_i64(-1)));
    families.push(FamilyMap::unicritical(&qq, 2, qq.rational(1, 2)?));
    for fam in &families {
        let ctx = fam.ctx();
        let crit = [KPoint::Affine(ctx.zero()), KPoint::Infinity];
        let c = ctx.c_const(fam.num(), fam.den(), &crit)?;
        let orbit = orbit_symbolic(fam, &crit[0], 5)?;
        for n in 0..=5u32 {
            let bound = c.pow((fam.degree() as i32).pow(n));
            bad += orbit[..=n as usize].iter().filter(|p| ctx.height_kpoint(p) >= bound).count() as u64;
        }
    }
    Ok(violations("heights", format!("seed={seed};samples={samples}"), bad, started))
}
