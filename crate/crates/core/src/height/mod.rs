//! Places, absolute values and heights over the global fields `Q` and `F_q(s)`.

pub mod hiprec;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ffield::{field_of_order, FieldCtx, Poly};

/// A supported global field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HeightCtx {
    Rationals,
    /// `F_q(s)` with constant field `GF(q)`.
    FunctionField(FieldCtx),
}

/// A place of the global field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    /// The real place of `Q`.
    Real,
    /// A rational prime.
    Prime(BigUint),
    /// A monic irreducible of `F_q[s]`.
    Irreducible(Poly),
    /// The degree place of `F_q(s)` (`s -> infinity`).
    Degree,
}

impl Place {
    pub fn is_archimedean(&self) -> bool {
        matches!(self, Place::Real)
    }

    pub fn display(&self) -> String {
        match self {
            Place::Real => "real".into(),
            Place::Prime(p) => p.to_string(),
            Place::Irreducible(pi) => pi.display("s"),
            Place::Degree => "inf".into(),
        }
    }
}

/// An element of the global field, reduced to lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GlobalElem {
    Q(BigRational),
    /// `num/den` with `gcd = 1` and `den` monic.
    F { num: Poly, den: Poly },
}

impl fmt::Display for GlobalElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GlobalElem::Q(r) => write!(f, "{r}"),
            GlobalElem::F { num, den } if den.degree() == Some(0) => write!(f, "{}", num.display("s")),
            GlobalElem::F { num, den } => write!(f, "({})/({})", num.display("s"), den.display("s")),
        }
    }
}

/// A point of `P^1(k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum KPoint {
    Affine(GlobalElem),
    Infinity,
}

impl fmt::Display for KPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KPoint::Affine(a) => write!(f, "{a}"),
            KPoint::Infinity => write!(f, "inf"),
        }
    }
}

/// A polynomial in `X` with coefficients in the global field, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KPoly(pub Vec<GlobalElem>);

impl KPoly {
    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.iter().rposition(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }
}

impl GlobalElem {
    pub fn is_zero(&self) -> bool {
        match self {
            GlobalElem::Q(r) => r.is_zero(),
            GlobalElem::F { num, .. } => num.is_zero(),
        }
    }
}

/// Distinct prime factors by trial division.
pub(crate) fn prime_factors(n: &BigUint) -> Vec<BigUint> {
    let mut out = Vec::new();
    let mut n = n.clone();
    if let Some(mut m) = n.to_u64() {
        let mut p = 2u64;
        while p.saturating_mul(p) <= m {
            if m % p == 0 {
                out.push(BigUint::from(p));
                while m % p == 0 {
                    m /= p;
                }
            }
            p += if p == 2 { 1 } else { 2 };
        }
        if m > 1 {
            out.push(BigUint::from(m));
        }
        return out;
    }
    let mut p = BigUint::from(2u32);
    while &p * &p <= n {
        if (&n % &p).is_zero() {
            while (&n % &p).is_zero() {
                n /= &p;
            }
            out.push(p.clone());
        }
        p += 1u32;
    }
    if n > BigUint::one() {
        out.push(n);
    }
    out
}

/// Distinct monic irreducible factors by trial division over monic candidates.
pub(crate) fn poly_factors(ctx: &FieldCtx, f: &Poly) -> Vec<Poly> {
    let mut f = f.make_monic(ctx);
    let mut out = Vec::new();
    let q = ctx.size().expect("small constant field");
    let mut k = 1;
    while 2 * k <= f.deg0() {
        let total = q.pow(k as u32);
        for idx in 0..total {
            let mut coeffs = Vec::with_capacity(k + 1);
            let mut i = idx;
            for _ in 0..k {
                coeffs.push(ctx.elem_at(i % q));
                i /= q;
            }
            coeffs.push(ctx.one());
            let cand = Poly::new(coeffs);
            if f.rem(&cand, ctx).expect("nonzero").is_zero() {
                while f.rem(&cand, ctx).expect("nonzero").is_zero() {
                    f = f.div_exact(&cand, ctx).expect("divides");
                }
                out.push(cand);
            }
        }
        k += 1;
    }
    if f.deg0() >= 1 {
        out.push(f);
    }
    out
}

/// Natural log of a positive integer in double precision.
pub fn ln_biguint_f64(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        n.to_f64().expect("finite").ln()
    } else {
        let shift = bits - 64;
        (n >> shift).to_f64().expect("finite").ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// Natural log of a positive rational in double precision.
pub fn ln_rational_f64(r: &BigRational) -> f64 {
    ln_biguint_f64(r.numer().magnitude()) - ln_biguint_f64(r.denom().magnitude())
}

/// Result of evaluating the iterate-depth function at a place.
#[derive(Clone, Debug, PartialEq)]
pub struct NEps {
    pub value: i64,
    /// The quantity inside the floor.
    pub pre_floor: f64,
    /// Whether the floor was settled in extended precision.
    pub extended: bool,
}

impl NEps {
    /// `false` when the formula yields no usable iterate depth (`n <= 0`).
    pub fn usable(&self) -> bool {
        self.value >= 1
    }
}

fn big(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl HeightCtx {
    pub fn rationals() -> HeightCtx {
        HeightCtx::Rationals
    }

    /// `F_q(s)` for a prime power `q`.
    pub fn function_field(q: u64) -> Result<HeightCtx> {
        Ok(HeightCtx::FunctionField(field_of_order(q)?))
    }

    /// Number of real places plus twice the number of complex places.
    pub fn ar(&self) -> u32 {
        match self {
            HeightCtx::Rationals => 1,
            HeightCtx::FunctionField(_) => 0,
        }
    }

    pub fn constant_field(&self) -> Option<&FieldCtx> {
        match self {
            HeightCtx::Rationals => None,
            HeightCtx::FunctionField(k) => Some(k),
        }
    }

    pub fn name(&self) -> String {
        match self {
            HeightCtx::Rationals => "Q".into(),
            HeightCtx::FunctionField(k) => format!("F{}(s)", k.q()),
        }
    }

    fn fq(&self) -> &FieldCtx {
        self.constant_field().expect("function field context")
    }

    fn q_big(&self) -> BigUint {
        self.fq().q().clone()
    }

    // ---- arithmetic ----

    pub fn zero(&self) -> GlobalElem {
        self.from_i64(0)
    }

    pub fn one(&self) -> GlobalElem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> GlobalElem {
        match self {
            HeightCtx::Rationals => GlobalElem::Q(BigRational::from_integer(n.into())),
            HeightCtx::FunctionField(k) => {
                GlobalElem::F { num: Poly::constant(k.from_i64(n)), den: Poly::one(k) }
            }
        }
    }

    pub fn rational(&self, num: i64, den: i64) -> Result<GlobalElem> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        self.div(&self.from_i64(num), &self.from_i64(den))
    }

    /// The transcendental `s` of `F_q(s)`.
    pub fn s(&self) -> Result<GlobalElem> {
        match self {
            HeightCtx::Rationals => Err(Error::FieldMismatch("Q has no variable s".into())),
            HeightCtx::FunctionField(k) => Ok(GlobalElem::F { num: Poly::x(k), den: Poly::one(k) }),
        }
    }

    /// `num/den` in `F_q(s)`, reduced.
    pub fn ratfunc(&self, num: Poly, den: Poly) -> Result<GlobalElem> {
        let k = self.fq();
        let lead = den.leading().ok_or(Error::DivisionByZero)?.clone();
        if num.is_zero() {
            return Ok(self.zero());
        }
        let g = num.gcd(&den, k);
        let (num, den) = (num.div_exact(&g, k)?, den.div_exact(&g, k)?);
        let inv = k.inv(den.leading().unwrap_or(&lead))?;
        Ok(GlobalElem::F { num: num.scale(&inv, k), den: den.scale(&inv, k) })
    }

    pub fn poly_elem(&self, p: Poly) -> GlobalElem {
        let k = self.fq();
        GlobalElem::F { num: p, den: Poly::one(k) }
    }

    fn check(&self, a: &GlobalElem) {
        debug_assert_eq!(matches!(a, GlobalElem::Q(_)), matches!(self, HeightCtx::Rationals));
    }

    pub fn add(&self, a: &GlobalElem, b: &GlobalElem) -> GlobalElem {
        self.check(a);
        match (a, b) {
            (GlobalElem::Q(x), GlobalElem::Q(y)) => GlobalElem::Q(x + y),
            (GlobalElem::F { num: an, den: ad }, GlobalElem::F { num: bn, den: bd }) => {
                let k = self.fq();
                let num = an.mul(bd, k).add(&bn.mul(ad, k), k);
                self.ratfunc(num, ad.mul(bd, k)).expect("nonzero denominators")
            }
            _ => panic!("mixed global fields"),
        }
    }

    pub fn neg(&self, a: &GlobalElem) -> GlobalElem {
        match a {
            GlobalElem::Q(x) => GlobalElem::Q(-x),
            GlobalElem::F { num, den } => GlobalElem::F { num: num.neg(self.fq()), den: den.clone() },
        }
    }

    pub fn sub(&self, a: &GlobalElem, b: &GlobalElem) -> GlobalElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &GlobalElem, b: &GlobalElem) -> GlobalElem {
        self.check(a);
        match (a, b) {
            (GlobalElem::Q(x), GlobalElem::Q(y)) => GlobalElem::Q(x * y),
            (GlobalElem::F { num: an, den: ad }, GlobalElem::F { num: bn, den: bd }) => {
                let k = self.fq();
                self.ratfunc(an.mul(bn, k), ad.mul(bd, k)).expect("nonzero denominators")
            }
            _ => panic!("mixed global fields"),
        }
    }

    pub fn inv(&self, a: &GlobalElem) -> Result<GlobalElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match a {
            GlobalElem::Q(x) => GlobalElem::Q(x.recip()),
            GlobalElem::F { num, den } => self.ratfunc(den.clone(), num.clone())?,
        })
    }

    pub fn div(&self, a: &GlobalElem, b: &GlobalElem) -> Result<GlobalElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &GlobalElem, e: u32) -> GlobalElem {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// Evaluates a `k`-polynomial at an element of `k` (Horner).
    pub fn eval(&self, f: &KPoly, x: &GlobalElem) -> GlobalElem {
        f.0.iter().rev().fold(self.zero(), |acc, c| self.add(&self.mul(&acc, x), c))
    }

    /// `phi(pt)` for `phi = f/g`, via homogenization at degree `max(deg f, deg g)`.
    pub fn eval_map(&self, f: &KPoly, g: &KPoly, pt: &KPoint) -> Result<KPoint> {
        let d = f.degree().unwrap_or(0).max(g.degree().ok_or(Error::ZeroDenominator)?);
        let (a, b) = match pt {
            KPoint::Affine(x) => (self.eval(f, x), self.eval(g, x)),
            KPoint::Infinity => {
                let top = |p: &KPoly| p.0.get(d).cloned().unwrap_or_else(|| self.zero());
                (top(f), top(g))
            }
        };
        match (a.is_zero(), b.is_zero()) {
            (true, true) => Err(Error::Indeterminate),
            (_, true) => Ok(KPoint::Infinity),
            _ => Ok(KPoint::Affine(self.div(&a, &b)?)),
        }
    }

    // ---- places ----

    /// Residue field size `N(v)`; `None` at the archimedean place.
    pub fn norm(&self, place: &Place) -> Option<BigUint> {
        match place {
            Place::Real => None,
            Place::Prime(p) => Some(p.clone()),
            Place::Irreducible(pi) => Some(self.q_big().pow(pi.deg0() as u32)),
            Place::Degree => Some(self.q_big()),
        }
    }

    /// The place at infinity: the real place of `Q` or the degree place of `F_q(s)`.
    pub fn infinite_place(&self) -> Place {
        match self {
            HeightCtx::Rationals => Place::Real,
            HeightCtx::FunctionField(_) => Place::Degree,
        }
    }

    /// Monic irreducibles of degree `r` (function field) or primes up to `r` (rationals).
    pub fn places_of(&self, r: u64) -> Vec<Place> {
        match self {
            HeightCtx::Rationals => (2..=r)
                .filter(|&p| crate::ffield::is_prime(p))
                .map(|p| Place::Prime(BigUint::from(p)))
                .collect(),
            HeightCtx::FunctionField(k) => {
                k.irreducible_polys(r as usize).map(Place::Irreducible).collect()
            }
        }
    }

    /// Normalized valuation at a nonarchimedean place.
    pub fn valuation(&self, place: &Place, x: &GlobalElem) -> Result<i64> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        match (place, x) {
            (Place::Prime(p), GlobalElem::Q(r)) => {
                let v = |n: &BigInt| {
                    let mut n = n.magnitude().clone();
                    let mut k = 0i64;
                    while (&n % p).is_zero() {
                        n /= p;
                        k += 1;
                    }
                    k
                };
                Ok(v(r.numer()) - v(r.denom()))
            }
            (Place::Irreducible(pi), GlobalElem::F { num, den }) => {
                let k = self.fq();
                let v = |f: &Poly| {
                    let mut f = f.clone();
                    let mut e = 0i64;
                    while f.rem(pi, k).expect("nonzero").is_zero() {
                        f = f.div_exact(pi, k).expect("divides");
                        e += 1;
                    }
                    e
                };
                Ok(v(num) - v(den))
            }
            (Place::Degree, GlobalElem::F { num, den }) => Ok(den.deg0() as i64 - num.deg0() as i64),
            _ => Err(Error::FieldMismatch(format!("place {} does not belong to {}", place.display(), self.name()))),
        }
    }

    /// `||x||_v`: `N(v)^{-v(x)}` at finite places, `|x|` at the real place.
    pub fn local_norm(&self, place: &Place, x: &GlobalElem) -> Result<BigRational> {
        if x.is_zero() {
            return Ok(BigRational::zero());
        }
        if let (Place::Real, GlobalElem::Q(r)) = (place, x) {
            return Ok(r.abs());
        }
        let v = self.valuation(place, x)?;
        let n = BigRational::from_integer(self.norm(place).expect("nonarchimedean").into());
        Ok(if v >= 0 { n.pow(-(v as i32)) } else { n.pow((-v) as i32) })
    }

    /// Finite places where `x` has nonzero valuation, followed by the infinite place.
    pub fn support(&self, x: &GlobalElem) -> Vec<Place> {
        let mut out: Vec<Place> = match x {
            GlobalElem::Q(r) => {
                let mut ps = prime_factors(r.numer().magnitude());
                ps.extend(prime_factors(r.denom().magnitude()));
                ps.sort();
                ps.dedup();
                ps.into_iter().map(Place::Prime).collect()
            }
            GlobalElem::F { num, den } => {
                let k = self.fq();
                let mut fs = poly_factors(k, num);
                fs.extend(poly_factors(k, den));
                fs.into_iter().map(Place::Irreducible).collect()
            }
        };
        out.push(self.infinite_place());
        out
    }

    /// `H(x)` by closed form: `max(|a|, |b|)` over `Q`, `q^{max(deg a, deg b)}` over `F_q(s)`.
    pub fn height(&self, x: &GlobalElem) -> BigRational {
        match x {
            _ if x.is_zero() => BigRational::one(),
            GlobalElem::Q(r) => {
                BigRational::from_integer(r.numer().abs().max(r.denom().clone()))
            }
            GlobalElem::F { num, den } => {
                let e = num.deg0().max(den.deg0());
                BigRational::from_integer(self.q_big().pow(e as u32).into())
            }
        }
    }

    /// `H(x)` as the literal product of `max(1, ||x||_v)` over the contributing places.
    pub fn height_literal(&self, x: &GlobalElem) -> BigRational {
        if x.is_zero() {
            return BigRational::one();
        }
        self.support(x)
            .iter()
            .map(|v| self.local_norm(v, x).expect("place of this field").max(BigRational::one()))
            .product()
    }

    /// Whether the product of `||x||_v` over all places is exactly 1.
    pub fn product_formula_check(&self, x: &GlobalElem) -> Result<bool> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        let mut prod = BigRational::one();
        for v in self.support(x) {
            prod *= self.local_norm(&v, x)?;
        }
        Ok(prod.is_one())
    }

    /// `H([a : b])`.
    pub fn height_point(&self, a: &GlobalElem, b: &GlobalElem) -> Result<BigRational> {
        match (a.is_zero(), b.is_zero()) {
            (true, true) => Err(Error::ZeroPoint),
            (_, false) => Ok(self.height(&self.div(a, b)?)),
            (false, true) => Ok(self.height(&self.div(b, a)?)),
        }
    }

    pub fn height_kpoint(&self, pt: &KPoint) -> BigRational {
        match pt {
            KPoint::Affine(a) => self.height(a),
            KPoint::Infinity => BigRational::one(),
        }
    }

    /// `H(f, g) = prod_v max(||f||_v, ||g||_v)`, `||f||_v` the largest coefficient norm.
    pub fn pair_height(&self, f: &KPoly, g: &KPoly) -> Result<BigRational> {
        if g.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let coeffs: Vec<&GlobalElem> = f.0.iter().chain(&g.0).filter(|c| !c.is_zero()).collect();
        let mut places: Vec<Place> = Vec::new();
        for c in &coeffs {
            for v in self.support(c) {
                if !places.contains(&v) {
                    places.push(v);
                }
            }
        }
        let mut prod = BigRational::one();
        for v in &places {
            let mut best = BigRational::zero();
            for c in &coeffs {
                best = best.max(self.local_norm(v, c)?);
            }
            prod *= best;
        }
        Ok(prod)
    }

    fn map_degree(f: &KPoly, g: &KPoly) -> usize {
        f.degree().unwrap_or(0).max(g.degree().unwrap_or(0))
    }

    /// `b = max(2, (d + 1)^{ar} H(f, g))`.
    pub fn b_const(&self, f: &KPoly, g: &KPoly) -> Result<BigRational> {
        let d = Self::map_degree(f, g) as u64;
        let scaled = big(d + 1).pow(self.ar() as i32) * self.pair_height(f, g)?;
        Ok(scaled.max(big(2)))
    }

    /// `c = b * max_{gamma in C} H(gamma)`.
    pub fn c_const(&self, f: &KPoly, g: &KPoly, crit: &[KPoint]) -> Result<BigRational> {
        let hmax = crit.iter().map(|p| self.height_kpoint(p)).max().ok_or(Error::EmptyCritSet)?;
        Ok(self.b_const(f, g)? * hmax)
    }

    /// The iterate depth
    /// `floor((ln(ln N - ar ln 2) - ln max(2 ln c, 4 ln(d!)/eps)) / (2 ln d))`.
    pub fn n_eps(
        &self,
        f: &KPoly,
        g: &KPoly,
        crit: &[KPoint],
        eps: f64,
        place_norm: &BigUint,
    ) -> Result<NEps> {
        let d = Self::map_degree(f, g);
        if d < 2 {
            return Err(Error::Invalid(format!("the iterate depth needs degree >= 2, got {d}")));
        }
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::Invalid(format!("epsilon must be positive, got {eps}")));
        }
        let ar = self.ar();
        if place_norm <= &(BigUint::one() << ar) {
            return Err(Error::OutOfDomain(format!("N(v) = {place_norm} <= 2^{ar}")));
        }
        let c = self.c_const(f, g, crit)?;
        let ln_d_fact: f64 = (2..=d).map(|k| (k as f64).ln()).sum();

        let inner = ln_biguint_f64(place_norm) - ar as f64 * std::f64::consts::LN_2;
        if inner <= 1.0 {
            return Err(Error::NonpositiveLogArgument(format!(
                "ln N(v) - ar ln 2 = {inner:.6} <= 1"
            )));
        }
        let m = (2.0 * ln_rational_f64(&c)).max(4.0 * ln_d_fact / eps);
        let t = (inner.ln() - m.ln()) / (2.0 * (d as f64).ln());
        if (t - t.round()).abs() > 1e-9 {
            return Ok(NEps { value: t.floor() as i64, pre_floor: t, extended: false });
        }
        // Too close to an integer for double precision: redo the whole formula in fixed point.
        use hiprec::{ln, ln_biguint, ln2, Fixed};
        let inner = ln_biguint(place_norm).sub(&Fixed(ln2().0 * ar));
        let d_fact: BigUint = (1..=d as u64).map(BigUint::from).product();
        let eps_r = BigRational::from_float(eps).expect("finite");
        let a = Fixed(ln(&c).0 * 2);
        let b = Fixed::from_rational(&(ln_biguint(&d_fact).to_rational() * big(4) / eps_r));
        let m = a.max(b);
        let t_hi = hiprec::ln_fixed(&inner).sub(&hiprec::ln_fixed(&m)).div(&Fixed(ln(&big(d as u64)).0 * 2));
        let value = t_hi.floor().to_i64().expect("small");
        Ok(NEps { value, pre_floor: t, extended: true })
    }

    /// The iterate depth at a function-field place of degree `deg` (norm `q^deg`).
    pub fn n_eps_at_degree(
        &self,
        f: &KPoly,
        g: &KPoly,
        crit: &[KPoint],
        eps: f64,
        deg: u32,
    ) -> Result<NEps> {
        let q = match self {
            HeightCtx::FunctionField(k) => k.q().clone(),
            HeightCtx::Rationals => {
                return Err(Error::FieldMismatch("place degrees need a function field".into()))
            }
        };
        self.n_eps(f, g, crit, eps, &q.pow(deg))
    }
}

#[cfg(test)]
mod tests;
