//! Fixed-point proportions of iterated wreath products `[G]^n` acting on `S^n`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational values (always reduced, positive denominator).
pub type ExactRational = BigRational;

/// Largest degree for which groups are enumerated element by element.
pub const ENUMERATION_CAP: usize = 8;
/// Default cap on the predicted denominator size of an exact `fix_n`.
pub const DEFAULT_BIT_CAP: u64 = 1_000_000;
/// Largest `|[G]^n|` the brute-force oracle will enumerate.
pub const ORACLE_CAP: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Symmetric group.
    S,
    /// Alternating group.
    A,
    /// Dihedral group of order `2d`.
    D,
    /// Cyclic group `Z/dZ`.
    C,
    /// A user-supplied permutation group.
    Custom,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::S => "S",
            Family::A => "A",
            Family::D => "D",
            Family::C => "C",
            Family::Custom => "custom",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        match s {
            "S" | "s" => Ok(Family::S),
            "A" | "a" => Ok(Family::A),
            "D" | "d" => Ok(Family::D),
            "C" | "c" => Ok(Family::C),
            _ => Err(Error::Invalid(format!("unknown group family {s:?} (expected S, A, D or C)"))),
        }
    }
}

/// A permutation action of a finite group on `{0, ..., d-1}`, summarized by
/// its fixed-point-count distribution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionSpec {
    pub family: Family,
    pub d: usize,
    pub group_order: BigUint,
    /// `fpc[j]` = number of group elements with exactly `j` fixed points.
    pub fpc: BTreeMap<usize, BigUint>,
    /// Explicit elements, kept only for custom groups.
    elements: Option<Vec<Vec<usize>>>,
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

fn binomial(n: usize, k: usize) -> BigUint {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Number of fixed-point-free permutations of `m` letters.
pub fn derangements(m: usize) -> BigUint {
    // D_m = m D_{m-1} + (-1)^m
    let mut d = BigInt::one();
    for k in 1..=m {
        d = d * BigInt::from(k) + if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    }
    d.to_biguint().expect("derangement numbers are nonnegative")
}

/// All permutations of `0..d` in lexicographic order.
fn permutations(d: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..d).collect();
    let mut out = vec![p.clone()];
    loop {
        let Some(i) = (0..d.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
            return out;
        };
        let j = (i + 1..d).rev().find(|&j| p[j] > p[i]).expect("successor exists");
        p.swap(i, j);
        p[i + 1..].reverse();
        out.push(p.clone());
    }
}

fn is_even(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    let mut transpositions = 0;
    for s in 0..p.len() {
        let mut len = 0usize;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        transpositions += len.saturating_sub(1);
    }
    transpositions % 2 == 0
}

/// Explicit elements of a built-in group acting on `0..d`.
pub fn group_elements(family: Family, d: usize) -> Result<Vec<Vec<usize>>> {
    let unsupported = || Error::UnsupportedDegree { family: family.to_string(), d };
    match family {
        Family::S | Family::A if d > ENUMERATION_CAP => Err(unsupported()),
        Family::S => Ok(permutations(d)),
        Family::A => Ok(permutations(d).into_iter().filter(|p| is_even(p)).collect()),
        Family::C => Ok((0..d).map(|k| (0..d).map(|i| (i + k) % d).collect()).collect()),
        Family::D => {
            let rotations = (0..d).map(|k| (0..d).map(|i| (i + k) % d).collect());
            let reflections = (0..d).map(|k| (0..d).map(|i| (k + d - i) % d).collect());
            Ok(rotations.chain(reflections).collect())
        }
        Family::Custom => Err(Error::Invalid("custom groups carry their own elements".into())),
    }
}

fn fpc_of(elements: &[Vec<usize>]) -> BTreeMap<usize, BigUint> {
    let mut fpc = BTreeMap::new();
    for g in elements {
        let fixed = g.iter().enumerate().filter(|&(i, &x)| i == x).count();
        *fpc.entry(fixed).or_insert_with(BigUint::zero) += 1u32;
    }
    fpc
}

impl ActionSpec {
    /// The standard action of a built-in family on `d` points.
    pub fn new(family: Family, d: usize) -> Result<ActionSpec> {
        if d < 2 {
            return Err(Error::Invalid(format!("group degree must be at least 2, got {d}")));
        }
        if family == Family::D && d < 3 {
            return Err(Error::Invalid("dihedral actions need d >= 3".into()));
        }
        let fpc = match family {
            Family::S => (0..=d)
                .filter(|&j| j != d - 1)
                .map(|j| (j, binomial(d, j) * derangements(d - j)))
                .collect(),
            Family::C => BTreeMap::from([(0, BigUint::from(d - 1)), (d, BigUint::one())]),
            Family::A | Family::D => {
                if d > ENUMERATION_CAP {
                    return Err(Error::UnsupportedDegree { family: family.to_string(), d });
                }
                fpc_of(&group_elements(family, d)?)
            }
            Family::Custom => unreachable!("custom specs are built from elements"),
        };
        let group_order = fpc.values().sum();
        Ok(ActionSpec { family, d, group_order, fpc, elements: None })
    }

    /// A custom group given by all of its elements as permutations of `0..d`.
    pub fn from_elements(d: usize, elements: Vec<Vec<usize>>) -> Result<ActionSpec> {
        let identity: Vec<usize> = (0..d).collect();
        let valid = elements.iter().all(|g| {
            let mut s = g.clone();
            s.sort_unstable();
            s == identity
        });
        if d < 1 || !valid || !elements.contains(&identity) {
            return Err(Error::Invalid("elements must be permutations including the identity".into()));
        }
        let fpc = fpc_of(&elements);
        let group_order = BigUint::from(elements.len());
        Ok(ActionSpec { family: Family::Custom, d, group_order, fpc, elements: Some(elements) })
    }

    pub fn elements(&self) -> Result<Vec<Vec<usize>>> {
        match &self.elements {
            Some(e) => Ok(e.clone()),
            None => group_elements(self.family, self.d),
        }
    }

    /// `fix(rho)`: the proportion of group elements with a fixed point.
    pub fn fix_1(&self) -> ExactRational {
        let with_fixed: BigUint = self.fpc.iter().filter(|(&j, _)| j > 0).map(|(_, c)| c).sum();
        BigRational::new(with_fixed.into(), self.group_order.clone().into())
    }
}

/// `|[G]^n| = |G|^{1 + d + ... + d^{n-1}}`.
pub fn wreath_order(spec: &ActionSpec, n: u32) -> BigUint {
    spec.group_order.pow(exponent(spec.d, n))
}

fn exponent(d: usize, n: u32) -> u32 {
    let e = (0..n).fold(0u128, |acc, _| acc * d as u128 + 1);
    u32::try_from(e).expect("wreath exponent overflows")
}

/// Predicted bit size of the denominator of `fix_n`.
pub fn predicted_bits(spec: &ActionSpec, n: u32) -> f64 {
    let log2_g = spec.group_order.to_f64().unwrap_or(f64::INFINITY).log2();
    let d = spec.d as f64;
    log2_g * (d.powi(n as i32) - 1.0) / (d - 1.0)
}

/// Exact `fix_n` via `F_n = (1/|G|) sum_j fpc[j] (1 - (1 - F_{n-1})^j)`, `F_0 = 1`.
pub fn fix_n_exact(spec: &ActionSpec, n: u32, bit_cap: u64) -> Result<ExactRational> {
    let bits = predicted_bits(spec, n);
    if bits > bit_cap as f64 {
        return Err(Error::ExactOverflow { bits: bits.ceil().min(u64::MAX as f64) as u64, cap: bit_cap });
    }
    let order = BigRational::from_integer(spec.group_order.clone().into());
    let mut f = BigRational::one();
    for _ in 0..n {
        let u = BigRational::one() - &f;
        let mut total = BigRational::zero();
        let mut upow = BigRational::one();
        let mut k = 0;
        for (&j, count) in &spec.fpc {
            while k < j {
                upow *= &u;
                k += 1;
            }
            total += (BigRational::one() - &upow) * BigRational::from_integer(count.clone().into());
        }
        f = total / &order;
    }
    Ok(f)
}

pub(crate) fn up(x: f64) -> f64 {
    x.next_up()
}

pub(crate) fn down(x: f64) -> f64 {
    x.next_down()
}

/// A certified upper bound on `fix_n`: every operation is rounded toward the
/// side that can only increase the final value (the recursion is monotone).
pub fn fix_n_upper(spec: &ActionSpec, n: u32) -> f64 {
    fix_n_directed(spec, n, true)
}

/// A certified lower bound on `fix_n`, rounding the other way.
pub fn fix_n_lower(spec: &ActionSpec, n: u32) -> f64 {
    fix_n_directed(spec, n, false)
}

fn fix_n_directed(spec: &ActionSpec, n: u32, upward: bool) -> f64 {
    let (hi, lo): (fn(f64) -> f64, fn(f64) -> f64) = if upward { (up, down) } else { (down, up) };
    let order = spec.group_order.to_f64().unwrap_or(f64::MAX);
    let mut f = 1.0f64;
    for _ in 0..n {
        let u = lo(1.0 - f).clamp(0.0, 1.0);
        let mut total = 0.0f64;
        let mut upow = 1.0f64;
        let mut k = 0;
        for (&j, count) in &spec.fpc {
            while k < j {
                upow = lo(upow * u).clamp(0.0, 1.0);
                k += 1;
            }
            let count = count.to_f64().unwrap_or(f64::MAX);
            let term = hi(hi(1.0 - upow).clamp(0.0, 1.0) * hi(count));
            total = hi(total + term);
        }
        f = hi(total / lo(order)).clamp(0.0, 1.0);
    }
    f
}

/// Either an exact value or a certified upper bound.
#[derive(Clone, Debug, PartialEq)]
pub enum FixValue {
    Exact(ExactRational),
    Upper(f64),
}

impl FixValue {
    pub fn upper_f64(&self) -> f64 {
        match self {
            FixValue::Exact(r) => rational_upper_f64(r),
            FixValue::Upper(x) => *x,
        }
    }
}

/// `fix_n` exactly when the denominator stays under `bit_cap`, otherwise a certified upper bound.
pub fn fix_n(spec: &ActionSpec, n: u32, bit_cap: u64) -> FixValue {
    match fix_n_exact(spec, n, bit_cap) {
        Ok(r) => FixValue::Exact(r),
        Err(_) => FixValue::Upper(fix_n_upper(spec, n)),
    }
}

/// Smallest-magnitude `f64` not below `r` (for nonnegative `r`).
pub fn rational_upper_f64(r: &BigRational) -> f64 {
    let x = r.to_f64().unwrap_or(f64::INFINITY);
    match BigRational::from_float(x) {
        Some(xr) if &xr >= r => x,
        _ => x.next_up(),
    }
}

/// `fix_n` by constructing every element of `[G]^n` as a permutation of `S^n`.
pub fn fix_n_oracle(spec: &ActionSpec, n: u32) -> Result<ExactRational> {
    let order = wreath_order(spec, n);
    if order > BigUint::from(ORACLE_CAP) {
        return Err(Error::TooLarge(format!("[G]^{n} of order {order}")));
    }
    let base = spec.elements()?;
    let d = spec.d;
    // level[k] = all permutations of S^k realized by [G]^k; point (s, t) of
    // S^{k-1} x S is numbered t * d^{k-1} + s.
    let mut level: Vec<Vec<u32>> =
        base.iter().map(|g| g.iter().map(|&x| x as u32).collect()).collect();
    let mut m = d;
    for _ in 1..n.saturating_sub(1) {
        let mut next = Vec::new();
        for_each_next_level(&base, &level, m, d, |perm| next.push(perm.to_vec()));
        level = next;
        m *= d;
    }
    if n == 1 {
        let with_fixed = level.iter().filter(|g| g.iter().enumerate().any(|(i, &x)| i == x as usize));
        return Ok(BigRational::new(BigInt::from(with_fixed.count()), BigInt::from(level.len())));
    }
    let mut with_fixed = 0u64;
    let mut total = 0u64;
    for_each_next_level(&base, &level, m, d, |perm| {
        total += 1;
        if perm.iter().enumerate().any(|(i, &x)| i == x as usize) {
            with_fixed += 1;
        }
    });
    Ok(BigRational::new(BigInt::from(with_fixed), BigInt::from(total)))
}

/// Visits every `((g_t)_t, h)` as the permutation `(s, t) -> (g_t(s), h(t))`.
fn for_each_next_level(
    top: &[Vec<usize>],
    lower: &[Vec<u32>],
    m: usize,
    d: usize,
    mut visit: impl FnMut(&[u32]),
) {
    let mut perm = vec![0u32; m * d];
    let mut choice = vec![0usize; d];
    for h in top {
        choice.iter_mut().for_each(|c| *c = 0);
        loop {
            for t in 0..d {
                let g = &lower[choice[t]];
                let base = (h[t] * m) as u32;
                for s in 0..m {
                    perm[t * m + s] = base + g[s];
                }
            }
            visit(&perm);
            // odometer over the d lower components
            let mut t = 0;
            while t < d {
                choice[t] += 1;
                if choice[t] < lower.len() {
                    break;
                }
                choice[t] = 0;
                t += 1;
            }
            if t == d {
                break;
            }
        }
    }
}

/// The published upper bounds on `fix_n` for the built-in families.
pub fn juul_bound(family: Family, d: usize, n: u32) -> Result<f64> {
    let nf = n as f64;
    match family {
        _ if d < 2 || n < 1 => Err(Error::OutOfHypothesis(format!("need d >= 2 and n >= 1, got d = {d}, n = {n}"))),
        Family::S => Ok(2.0 / (nf + 2.0)),
        Family::A if d >= 5 => Ok(2.0 / (nf + 2.0)),
        Family::A if d == 4 => Ok(2.0 / (nf + 1.0 - nf.ln())),
        Family::D if d >= 3 => Ok(2.0 / (nf + 2.0)),
        Family::C => Ok(2.0 / ((d as f64 - 1.0) * (nf + 1.0))),
        Family::A => Err(Error::OutOfHypothesis(format!("alternating bound needs d >= 4, got {d}"))),
        Family::D => Err(Error::OutOfHypothesis(format!("dihedral bound needs d >= 3, got {d}"))),
        Family::Custom => Err(Error::OutOfHypothesis("no published bound for custom groups".into())),
    }
}

/// A value guaranteed not to exceed the true bound of [`juul_bound`].
pub fn juul_bound_lower(family: Family, d: usize, n: u32) -> Result<f64> {
    let value = juul_bound(family, d, n)?;
    if family == Family::A && d == 4 {
        // recompute with every rounding pushed downward
        let nf = n as f64;
        let ln_lo = down(down(nf.ln())).max(0.0);
        let den_hi = up(nf + 1.0 - ln_lo);
        return Ok(down(2.0 / den_hi));
    }
    Ok(down(value))
}

/// The bound as an exact rational when it has no logarithm (every case but `A_4`).
pub fn juul_bound_rational(family: Family, d: usize, n: u32) -> Result<Option<ExactRational>> {
    juul_bound(family, d, n)?;
    let r = |num: usize, den: usize| BigRational::new(BigInt::from(num), BigInt::from(den));
    Ok(match family {
        Family::A if d == 4 => None,
        Family::C => Some(r(2, (d - 1) * (n as usize + 1))),
        _ => Some(r(2, n as usize + 2)),
    })
}

/// Whether `fix_n(spec) <= juul_bound(spec.family, spec.d, n)`, decided exactly
/// where possible and otherwise with certified one-sided rounding.
pub fn satisfies_juul(spec: &ActionSpec, n: u32, bit_cap: u64) -> Result<bool> {
    let rational = juul_bound_rational(spec.family, spec.d, n)?;
    let value = fix_n(spec, n, bit_cap);
    Ok(match (rational, value) {
        (Some(b), FixValue::Exact(v)) => v <= b,
        (Some(b), FixValue::Upper(u)) => BigRational::from_float(u).is_some_and(|u| u <= b),
        (None, v) => {
            let lo = juul_bound_lower(spec.family, spec.d, n)?;
            match v {
                FixValue::Exact(v) => v <= BigRational::from_float(lo).expect("finite"),
                FixValue::Upper(u) => u <= lo,
            }
        }
    })
}
