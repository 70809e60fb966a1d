use num_bigint::BigUint;

use super::{prime_divisors, FieldCtx, FieldElem};
use crate::error::{Error, Result};

/// A univariate polynomial over a [`FieldCtx`], lowest degree first, with no
/// trailing zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<FieldElem>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last().is_some_and(FieldElem::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElem) -> Self {
        Poly::new(vec![c])
    }

    pub fn one(ctx: &FieldCtx) -> Self {
        Poly::constant(ctx.one())
    }

    /// `X`.
    pub fn x(ctx: &FieldCtx) -> Self {
        Poly::new(vec![ctx.zero(), ctx.one()])
    }

    pub fn monomial(ctx: &FieldCtx, c: FieldElem, k: usize) -> Self {
        let mut coeffs = vec![ctx.zero(); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    /// Prime-field coefficients given as residues, lowest first.
    pub fn from_raw(ctx: &FieldCtx, raw: &[u64]) -> Self {
        Poly::new(raw.iter().map(|&c| ctx.from_u64(c)).collect())
    }

    pub fn from_ints(ctx: &FieldCtx, ints: &[i64]) -> Self {
        Poly::new(ints.iter().map(|&c| ctx.from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<FieldElem> {
        self.coeffs
    }

    pub fn coeff(&self, ctx: &FieldCtx, i: usize) -> FieldElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| ctx.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as 0.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<&FieldElem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading()
            .is_some_and(|c| c.coeffs()[0] == 1 && c.coeffs()[1..].iter().all(|&x| x == 0))
    }

    pub fn add(&self, other: &Poly, ctx: &FieldCtx) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => ctx.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(coeffs)
    }

    pub fn neg(&self, ctx: &FieldCtx) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| ctx.neg(c)).collect() }
    }

    pub fn sub(&self, other: &Poly, ctx: &FieldCtx) -> Poly {
        self.add(&other.neg(ctx), ctx)
    }

    pub fn scale(&self, c: &FieldElem, ctx: &FieldCtx) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| ctx.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly, ctx: &FieldCtx) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![ctx.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = ctx.add(&out[i + j], &ctx.mul(a, b));
                }
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, mut e: u32, ctx: &FieldCtx) -> Poly {
        let mut acc = Poly::one(ctx);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, ctx);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, ctx);
            }
        }
        acc
    }

    pub fn divrem(&self, divisor: &Poly, ctx: &FieldCtx) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = ctx.inv(divisor.leading().expect("nonzero"))?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![ctx.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let c = ctx.mul(&rem[i], &lead_inv);
            for (j, b) in divisor.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    let t = ctx.mul(&c, b);
                    rem[i - dd + j] = ctx.sub(&rem[i - dd + j], &t);
                }
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    pub fn rem(&self, divisor: &Poly, ctx: &FieldCtx) -> Result<Poly> {
        Ok(self.divrem(divisor, ctx)?.1)
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly, ctx: &FieldCtx) -> Result<Poly> {
        let (q, r) = self.divrem(divisor, ctx)?;
        if !r.is_zero() {
            return Err(Error::Invalid("inexact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn make_monic(&self, ctx: &FieldCtx) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => self.scale(&ctx.inv(l).expect("nonzero leading coefficient"), ctx),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly, ctx: &FieldCtx) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, ctx).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.make_monic(ctx)
    }

    pub fn derivative(&self, ctx: &FieldCtx) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| ctx.mul(c, &ctx.from_u64(i as u64)))
            .collect();
        Poly::new(coeffs)
    }

    pub fn eval(&self, x: &FieldElem, ctx: &FieldCtx) -> FieldElem {
        self.coeffs
            .iter()
            .rev()
            .fold(ctx.zero(), |acc, c| ctx.add(&ctx.mul(&acc, x), c))
    }

    /// Multiplicity of `x` as a root (0 if not a root). Zero polynomial gives `usize::MAX`.
    pub fn root_multiplicity(&self, x: &FieldElem, ctx: &FieldCtx) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = Poly::new(vec![ctx.neg(x), ctx.one()]);
        let mut f = self.clone();
        let mut k = 0;
        loop {
            let (q, r) = f.divrem(&lin, ctx).expect("nonzero divisor");
            if !r.is_zero() {
                return k;
            }
            f = q;
            k += 1;
        }
    }

    /// `self^e mod m`.
    pub fn powmod(&self, e: &BigUint, m: &Poly, ctx: &FieldCtx) -> Result<Poly> {
        let base = self.rem(m, ctx)?;
        let mut acc = Poly::one(ctx).rem(m, ctx)?;
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc, ctx).rem(m, ctx)?;
            if e.bit(i) {
                acc = acc.mul(&base, ctx).rem(m, ctx)?;
            }
        }
        Ok(acc)
    }

    /// Rabin's test: `X^{q^r} = X mod f`, and `gcd(X^{q^{r/l}} - X, f) = 1`
    /// for every prime `l | r`.
    pub fn is_irreducible(&self, ctx: &FieldCtx) -> bool {
        let r = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(r) => r,
        };
        let f = self.make_monic(ctx);
        let x = Poly::x(ctx);
        // frob[k] = X^{q^k} mod f
        let mut frob = vec![x.rem(&f, ctx).expect("nonzero")];
        for k in 0..r {
            let next = frob[k].powmod(ctx.q(), &f, ctx).expect("nonzero modulus");
            frob.push(next);
        }
        if frob[r] != frob[0] {
            return false;
        }
        prime_divisors(r as u64).into_iter().all(|l| {
            let h = frob[r / l as usize].sub(&x, ctx);
            f.gcd(&h, ctx).degree() == Some(0)
        })
    }

    /// Renders with `var` as the variable; non-prime-field coefficients are parenthesized.
    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !out.is_empty() {
                out.push('+');
            }
            let cs = if c.is_prime_field() { c.to_string() } else { format!("({c})") };
            let unit = c.is_prime_field() && c.coeffs()[0] == 1;
            match i {
                0 => out.push_str(&cs),
                _ => {
                    if !unit {
                        out.push_str(&cs);
                    }
                    out.push_str(var);
                    if i > 1 {
                        out.push_str(&format!("^{i}"));
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::{extension_field, prime_field};

    #[test]
    fn division_identity() {
        let ctx = prime_field(7).unwrap();
        let a = Poly::from_ints(&ctx, &[3, 0, 5, 1, 6]);
        let b = Poly::from_ints(&ctx, &[1, 2, 3]);
        let (q, r) = a.divrem(&b, &ctx).unwrap();
        assert!(r.deg0() < 2);
        assert_eq!(q.mul(&b, &ctx).add(&r, &ctx), a);
        assert_eq!(a.divrem(&Poly::zero(), &ctx).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn gcd_and_derivative() {
        let ctx = prime_field(5).unwrap();
        // (X+1)(X+2) and (X+1)(X+3)
        let f = Poly::from_ints(&ctx, &[2, 3, 1]);
        let g = Poly::from_ints(&ctx, &[3, 4, 1]);
        assert_eq!(f.gcd(&g, &ctx), Poly::from_ints(&ctx, &[1, 1]));
        assert_eq!(f.derivative(&ctx), Poly::from_ints(&ctx, &[3, 2]));
        let sq = Poly::from_ints(&ctx, &[0, 0, 0, 0, 0, 1]);
        assert!(sq.derivative(&ctx).is_zero());
        assert_eq!(sq.root_multiplicity(&ctx.zero(), &ctx), 5);
    }

    #[test]
    fn display_forms() {
        let f9 = extension_field(3, 2).unwrap();
        let p = Poly::new(vec![f9.generator(), f9.zero(), f9.one()]);
        assert_eq!(p.display("X"), "X^2+(x)");
        let f3 = prime_field(3).unwrap();
        assert_eq!(Poly::from_ints(&f3, &[2, 2, 1]).display("s"), "s^2+2s+2");
    }
}
