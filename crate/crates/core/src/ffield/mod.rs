//! Finite fields `GF(p^r)` as polynomials over `GF(p)` modulo a fixed monic
//! irreducible, plus enumeration and irreducible-polynomial discovery.
//!
//! Elements are dense coefficient vectors in the power basis. The element
//! order used everywhere (enumeration, successor tables, reports) is the
//! ascending lexicographic order on `(c_{r-1}, ..., c_0)`, which coincides
//! with the integer index `sum c_i p^i`.

mod poly;

pub use poly::Poly;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Splits `n = p^k` with `p` prime, if possible.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    if is_prime(n) {
        return Some((n, 1));
    }
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut m = n;
            let mut k = 0;
            while m.is_multiple_of(p) {
                m /= p;
                k += 1;
            }
            return (m == 1).then_some((p, k));
        }
        p += 1;
    }
    None
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// An element of a finite field: `r` residues mod `p`, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FieldElem {
    coeffs: Vec<u64>,
}

impl FieldElem {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// True when the element lies in the prime subfield.
    pub fn is_prime_field(&self) -> bool {
        self.coeffs.iter().skip(1).all(|&c| c == 0)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Debug)]
struct Inner {
    p: u64,
    r: usize,
    /// Monic, little-endian, length `r + 1`.
    modulus: Vec<u64>,
    /// Degree `s` of the designated base field `GF(p^s)`.
    base_degree: usize,
    canonical: bool,
    q: BigUint,
    size: Option<u64>,
}

/// An immutable finite-field context. Cloning is cheap.
#[derive(Clone, Debug)]
pub struct FieldCtx(Arc<Inner>);

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.modulus == other.0.modulus
    }
}

impl Eq for FieldCtx {}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = Poly::from_raw(self, &self.0.modulus);
        write!(f, "GF({}^{}) = GF({})[x]/({})", self.0.p, self.0.r, self.0.p, m.display("x"))
    }
}

/// `GF(p)`, with modulus `x`.
pub fn prime_field(p: u64) -> Result<FieldCtx> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(FieldCtx::build(p, vec![0, 1], 1, true))
}

/// `GF(p^r)` with the lexicographically first monic irreducible of degree `r`.
pub fn extension_field(p: u64, r: usize) -> Result<FieldCtx> {
    if r == 0 {
        return Err(Error::ZeroDegree);
    }
    let base = prime_field(p)?;
    if r == 1 {
        return Ok(base);
    }
    let modulus = base
        .irreducible_polys(r)
        .next()
        .expect("irreducible polynomials exist in every degree");
    let raw: Vec<u64> = modulus.coeffs().iter().map(|c| c.coeffs[0]).collect();
    Ok(FieldCtx::build(p, raw, 1, true))
}

/// The field with `q` elements, designated as an extension of degree `r`
/// over its subfield `GF(q)`: returns `GF(q^r)` with base `GF(q)`.
pub fn field_over(q: u64, r: usize) -> Result<FieldCtx> {
    let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    extension_field(p, k as usize * r)?.with_base_degree(k as usize)
}

/// The canonical field with `q` elements.
pub fn field_of_order(q: u64) -> Result<FieldCtx> {
    let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    extension_field(p, k as usize)
}

impl FieldCtx {
    fn build(p: u64, modulus: Vec<u64>, base_degree: usize, canonical: bool) -> Self {
        let r = modulus.len() - 1;
        let q = BigUint::from(p).pow(r as u32);
        let size = q.to_u64();
        FieldCtx(Arc::new(Inner { p, r, modulus, base_degree, canonical, q, size }))
    }

    /// `GF(p)[x]/(modulus)` for a caller-supplied monic irreducible, given
    /// lowest degree first. Used for residue fields of function-field places.
    pub fn with_modulus(p: u64, modulus: &[u64]) -> Result<FieldCtx> {
        let base = prime_field(p)?;
        let poly = Poly::new(modulus.iter().map(|&c| base.from_u64(c)).collect());
        match poly.degree() {
            Some(d) if d >= 1 => {}
            _ => return Err(Error::ZeroDegree),
        }
        if !poly.is_monic() || !poly.is_irreducible(&base) {
            return Err(Error::NotIrreducible);
        }
        let raw: Vec<u64> = poly.coeffs().iter().map(|c| c.coeffs[0]).collect();
        let canonical = extension_field(p, raw.len() - 1)?.modulus() == raw.as_slice();
        Ok(FieldCtx::build(p, raw, 1, canonical))
    }

    /// Same field, with `GF(p^s)` designated as the base for [`generates`](Self::generates).
    pub fn with_base_degree(&self, s: usize) -> Result<FieldCtx> {
        if s == 0 || !self.0.r.is_multiple_of(s) {
            return Err(Error::BadBase { base: s, degree: self.0.r });
        }
        Ok(FieldCtx(Arc::new(Inner {
            p: self.0.p,
            r: self.0.r,
            modulus: self.0.modulus.clone(),
            base_degree: s,
            canonical: self.0.canonical,
            q: self.0.q.clone(),
            size: self.0.size,
        })))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.r
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn modulus_poly(&self) -> Poly {
        let base = prime_field(self.0.p).expect("characteristic is prime");
        Poly::from_raw(&base, &self.0.modulus)
    }

    pub fn q(&self) -> &BigUint {
        &self.0.q
    }

    /// Number of elements, when it fits in a `u64`.
    pub fn size(&self) -> Option<u64> {
        self.0.size
    }

    pub fn base_degree(&self) -> usize {
        self.0.base_degree
    }

    pub fn is_canonical(&self) -> bool {
        self.0.canonical
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.r == 1
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem { coeffs: vec![0; self.0.r] }
    }

    pub fn one(&self) -> FieldElem {
        self.from_u64(1)
    }

    pub fn from_u64(&self, v: u64) -> FieldElem {
        let mut e = self.zero();
        e.coeffs[0] = v % self.0.p;
        e
    }

    pub fn from_i64(&self, v: i64) -> FieldElem {
        let p = self.0.p as i128;
        self.from_u64((v as i128).rem_euclid(p) as u64)
    }

    /// Element from power-basis coefficients (lowest first); shorter input is zero-padded.
    pub fn elem(&self, coeffs: &[u64]) -> Result<FieldElem> {
        if coeffs.len() > self.0.r {
            return Err(Error::FieldMismatch(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                self.0.r
            )));
        }
        let mut e = self.zero();
        for (slot, &c) in e.coeffs.iter_mut().zip(coeffs) {
            *slot = c % self.0.p;
        }
        Ok(e)
    }

    /// The class of `x`, the power-basis generator.
    pub fn generator(&self) -> FieldElem {
        if self.0.r == 1 {
            // x = -m_0 modulo the linear modulus x + m_0
            return self.from_u64(self.0.p - self.0.modulus[0]);
        }
        let mut e = self.zero();
        e.coeffs[1] = 1;
        e
    }

    pub fn contains(&self, a: &FieldElem) -> bool {
        a.coeffs.len() == self.0.r && a.coeffs.iter().all(|&c| c < self.0.p)
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let p = self.0.p;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| {
                let s = x as u128 + y as u128;
                (s % p as u128) as u64
            })
            .collect();
        FieldElem { coeffs }
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        let p = self.0.p;
        let coeffs = a.coeffs.iter().map(|&x| if x == 0 { 0 } else { p - x }).collect();
        FieldElem { coeffs }
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let p = self.0.p;
        let r = self.0.r;
        if r == 1 {
            return FieldElem { coeffs: vec![mul_mod(a.coeffs[0], b.coeffs[0], p)] };
        }
        let mut t = vec![0u64; 2 * r - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                if y != 0 {
                    t[i + j] = ((t[i + j] as u128 + x as u128 * y as u128) % p as u128) as u64;
                }
            }
        }
        let m = &self.0.modulus;
        for i in (r..2 * r - 1).rev() {
            let c = t[i];
            if c == 0 {
                continue;
            }
            t[i] = 0;
            // x^r = -(m_0 + ... + m_{r-1} x^{r-1})
            for j in 0..r {
                if m[j] != 0 {
                    let sub = mul_mod(c, m[j], p);
                    let slot = &mut t[i - r + j];
                    *slot = if *slot >= sub { *slot - sub } else { *slot + p - sub };
                }
            }
        }
        t.truncate(r);
        FieldElem { coeffs: t }
    }

    pub fn square(&self, a: &FieldElem) -> FieldElem {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &FieldElem, mut e: u64) -> FieldElem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.square(&base);
            e >>= 1;
        }
        acc
    }

    pub fn pow_big(&self, a: &FieldElem, e: &BigUint) -> FieldElem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.square(&acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.0.r == 1 {
            let p = self.0.p;
            return Ok(FieldElem { coeffs: vec![pow_mod(a.coeffs[0], p - 2, p)] });
        }
        let e = &self.0.q - BigUint::from(2u32);
        Ok(self.pow_big(a, &e))
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `a^p`.
    pub fn frobenius(&self, a: &FieldElem) -> FieldElem {
        self.pow(a, self.0.p)
    }

    pub fn is_square(&self, a: &FieldElem) -> bool {
        if a.is_zero() {
            return true;
        }
        if self.0.p == 2 {
            return true;
        }
        let e = (&self.0.q - BigUint::one()) >> 1;
        self.pow_big(a, &e) == self.one()
    }

    /// Position of `a` in enumeration order.
    pub fn index_of(&self, a: &FieldElem) -> u64 {
        a.coeffs.iter().rev().fold(0u64, |acc, &c| acc * self.0.p + c)
    }

    pub fn elem_at(&self, mut idx: u64) -> FieldElem {
        let p = self.0.p;
        let coeffs = (0..self.0.r)
            .map(|_| {
                let c = idx % p;
                idx /= p;
                c
            })
            .collect();
        FieldElem { coeffs }
    }

    /// All `q` elements in ascending coefficient-tuple order.
    ///
    /// Panics if `q` does not fit in a `u64`.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        let n = self.0.size.expect("field too large to enumerate");
        (0..n).map(move |i| self.elem_at(i))
    }

    /// Whether `a` generates the whole field over the designated base `GF(p^s)`.
    pub fn generates(&self, a: &FieldElem) -> Result<bool> {
        self.generates_over(a, self.0.base_degree)
    }

    /// True iff the orbit of `a` under `x -> x^{p^s}` has exactly `r/s` elements.
    pub fn generates_over(&self, a: &FieldElem, s: usize) -> Result<bool> {
        if s == 0 || !self.0.r.is_multiple_of(s) {
            return Err(Error::BadBase { base: s, degree: self.0.r });
        }
        Ok(self.frobenius_orbit_len(a, s) == self.0.r / s)
    }

    pub(crate) fn frobenius_orbit_len(&self, a: &FieldElem, s: usize) -> usize {
        let mut b = a.clone();
        let mut len = 0;
        loop {
            for _ in 0..s {
                b = self.frobenius(&b);
            }
            len += 1;
            if &b == a {
                return len;
            }
        }
    }

    /// Monic irreducibles of degree `r` over this field, ascending coefficient order.
    pub fn irreducible_polys(&self, r: usize) -> impl Iterator<Item = Poly> + '_ {
        let q = self.0.size.expect("field too large to enumerate");
        let total = (q as u128).checked_pow(r as u32).expect("candidate count overflows");
        (0..total).filter_map(move |mut k| {
            let mut coeffs = vec![self.zero(); r + 1];
            coeffs[r] = self.one();
            for slot in coeffs.iter_mut().take(r) {
                *slot = self.elem_at((k % q as u128) as u64);
                k /= q as u128;
            }
            let f = Poly::new(coeffs);
            f.is_irreducible(self).then_some(f)
        })
    }

    /// Number of monic irreducibles of degree `r` over `GF(q)` by Mobius inversion.
    pub fn irreducible_count(q: &BigUint, r: usize) -> BigUint {
        let mut plus = BigUint::zero();
        let mut minus = BigUint::zero();
        for e in 1..=r {
            if !r.is_multiple_of(e) {
                continue;
            }
            match mobius(e as u64) {
                1 => plus += q.pow((r / e) as u32),
                -1 => minus += q.pow((r / e) as u32),
                _ => {}
            }
        }
        (plus - minus) / BigUint::from(r)
    }
}

fn mobius(mut n: u64) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

pub(crate) fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_irreducible(ctx: &FieldCtx, f: &Poly) -> bool {
        // no factor of degree 1..=deg/2 among monic candidates
        let d = f.degree().unwrap();
        let q = ctx.size().unwrap();
        for k in 1..=d / 2 {
            for mut idx in 0..q.pow(k as u32) {
                let mut c = vec![ctx.zero(); k + 1];
                c[k] = ctx.one();
                for slot in c.iter_mut().take(k) {
                    *slot = ctx.elem_at(idx % q);
                    idx /= q;
                }
                let g = Poly::new(c);
                if f.rem(&g, ctx).unwrap().is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn primality() {
        assert!(prime_field(5).is_ok());
        assert!(prime_field(3).is_ok());
        assert_eq!(prime_field(4).unwrap_err(), Error::NotPrime(4));
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1));
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(12), None);
    }

    #[test]
    fn canonical_moduli() {
        assert_eq!(extension_field(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(extension_field(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(extension_field(7, 1).unwrap(), prime_field(7).unwrap());
        assert_eq!(prime_field(7).unwrap().modulus(), &[0, 1]);
    }

    #[test]
    fn canonical_modulus_is_first_irreducible_by_scan() {
        for (p, r) in [(2u64, 2usize), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)] {
            let base = prime_field(p).unwrap();
            let q = p.pow(r as u32);
            let first = (0..q)
                .map(|mut k| {
                    let mut c = vec![base.zero(); r + 1];
                    c[r] = base.one();
                    for slot in c.iter_mut().take(r) {
                        *slot = base.from_u64(k % p);
                        k /= p;
                    }
                    Poly::new(c)
                })
                .find(|f| brute_irreducible(&base, f))
                .unwrap();
            let raw: Vec<u64> = first.coeffs().iter().map(|c| c.coeffs()[0]).collect();
            assert_eq!(extension_field(p, r).unwrap().modulus(), raw.as_slice());
        }
    }

    #[test]
    fn arithmetic_examples() {
        let f5 = prime_field(5).unwrap();
        assert_eq!(f5.inv(&f5.from_u64(3)).unwrap(), f5.from_u64(2));
        assert_eq!(f5.pow(&f5.from_u64(2), 4), f5.one());
        assert_eq!(f5.inv(&f5.zero()).unwrap_err(), Error::DivisionByZero);

        let f9 = extension_field(3, 2).unwrap();
        let a = f9.elem(&[1, 1]).unwrap();
        assert_eq!(f9.mul(&a, &a), f9.elem(&[0, 2]).unwrap());
    }

    #[test]
    fn enumeration_order() {
        let f3 = prime_field(3).unwrap();
        let v: Vec<_> = f3.elements().collect();
        assert_eq!(v, vec![f3.from_u64(0), f3.from_u64(1), f3.from_u64(2)]);

        let f9 = extension_field(3, 2).unwrap();
        let v: Vec<_> = f9.elements().collect();
        assert_eq!(v.len(), 9);
        assert!(v[0].is_zero());
        assert_eq!(v[8], f9.elem(&[2, 2]).unwrap());
        assert_eq!(v[8].to_string(), "2x+2");

        assert_eq!(extension_field(2, 3).unwrap().elements().count(), 8);
    }

    #[test]
    fn enumeration_is_bijective() {
        for (p, r) in [(3u64, 6usize), (2, 9), (5, 4), (3, 1)] {
            let ctx = extension_field(p, r).unwrap();
            let mut seen = std::collections::HashSet::new();
            for (i, e) in ctx.elements().enumerate() {
                assert_eq!(ctx.index_of(&e), i as u64);
                assert!(seen.insert(e));
            }
            assert_eq!(seen.len() as u64, ctx.size().unwrap());
        }
    }

    #[test]
    fn field_identities_exhaustive() {
        for (p, r) in [(2u64, 1usize), (2, 4), (3, 4), (5, 2), (7, 2), (3, 3), (2, 6)] {
            let ctx = extension_field(p, r).unwrap();
            let q = ctx.size().unwrap();
            for a in ctx.elements() {
                assert_eq!(ctx.pow(&a, q), a);
                if !a.is_zero() {
                    assert_eq!(ctx.mul(&a, &ctx.inv(&a).unwrap()), ctx.one());
                }
            }
        }
    }

    #[test]
    fn generators() {
        let f9 = extension_field(3, 2).unwrap();
        assert!(f9.generates(&f9.generator()).unwrap());
        assert!(!f9.generates(&f9.from_u64(2)).unwrap());
        assert_eq!(f9.generates_over(&f9.one(), 4).unwrap_err(), Error::BadBase { base: 4, degree: 2 });

        let big = extension_field(3, 9).unwrap();
        let count = big.elements().filter(|a| big.generates(a).unwrap()).count();
        assert_eq!(count, 19683 - 27);

        let f81 = field_over(9, 2).unwrap();
        assert_eq!(f81.base_degree(), 2);
        let count = f81.elements().filter(|a| f81.generates(a).unwrap()).count();
        assert_eq!(count, 81 - 9);
    }

    #[test]
    fn irreducible_examples() {
        let f3 = prime_field(3).unwrap();
        let quad: Vec<String> = f3.irreducible_polys(2).map(|f| f.display("s")).collect();
        assert_eq!(quad, vec!["s^2+1", "s^2+s+2", "s^2+2s+2"]);
        let lin: Vec<String> = f3.irreducible_polys(1).map(|f| f.display("s")).collect();
        assert_eq!(lin, vec!["s", "s+1", "s+2"]);
        assert_eq!(prime_field(2).unwrap().irreducible_polys(3).count(), 2);
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        for (p, k) in [(2u64, 1usize), (3, 1), (2, 2), (3, 2), (5, 1), (7, 1), (3, 3)] {
            let ctx = extension_field(p, k).unwrap();
            let q = ctx.size().unwrap();
            let mut r = 1;
            while (q as u128).pow(r as u32) <= 729 {
                let expected = FieldCtx::irreducible_count(ctx.q(), r);
                let got = ctx.irreducible_polys(r).count();
                assert_eq!(BigUint::from(got), expected, "q={q} r={r}");
                if r <= 3 && q <= 9 {
                    for f in ctx.irreducible_polys(r) {
                        assert!(brute_irreducible(&ctx, &f));
                    }
                }
                r += 1;
            }
        }
    }

    #[test]
    fn custom_modulus() {
        let ctx = FieldCtx::with_modulus(3, &[1, 1, 1]);
        assert_eq!(ctx.unwrap_err(), Error::NotIrreducible); // s^2+s+1 = (s-1)^2
        let ctx = FieldCtx::with_modulus(3, &[2, 1, 1]).unwrap();
        assert!(!ctx.is_canonical());
        let canon = FieldCtx::with_modulus(3, &[1, 0, 1]).unwrap();
        assert!(canon.is_canonical());
        assert_ne!(ctx, canon);
    }
}
