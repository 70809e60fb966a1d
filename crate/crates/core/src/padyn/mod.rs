//! Rational maps on the projective line over a finite field and the
//! statistics of their functional graphs.

mod fast;
mod graph;

pub use fast::UnicriticalSweep;
pub use graph::{graph_stats, GraphStats};

use std::fmt;

use crate::error::{Error, Result};
use crate::ffield::{FieldCtx, FieldElem, Poly};

/// A point of `P^1(F_q)`: `Affine(a)` is `[a : 1]`, `Infinity` is `[1 : 0]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum P1Point {
    Affine(FieldElem),
    Infinity,
}

impl P1Point {
    /// Position in the canonical point order: field enumeration order, then infinity.
    pub fn index(&self, ctx: &FieldCtx) -> u64 {
        match self {
            P1Point::Affine(a) => ctx.index_of(a),
            P1Point::Infinity => ctx.size().expect("field too large to index"),
        }
    }

    pub fn from_index(ctx: &FieldCtx, i: u64) -> P1Point {
        if Some(i) == ctx.size() {
            P1Point::Infinity
        } else {
            P1Point::Affine(ctx.elem_at(i))
        }
    }
}

impl fmt::Display for P1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            P1Point::Affine(a) => write!(f, "{a}"),
            P1Point::Infinity => write!(f, "inf"),
        }
    }
}

/// `phi = f/g` over a finite field with `gcd(f, g) = 1` and `g` monic.
#[derive(Clone, Debug)]
pub struct RationalMap {
    ctx: FieldCtx,
    num: Poly,
    den: Poly,
    degree: usize,
    separable: bool,
}

impl PartialEq for RationalMap {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.num == other.num && self.den == other.den
    }
}

impl RationalMap {
    /// Normalizes `num/den`: cancels the gcd and makes the denominator monic.
    pub fn new(ctx: &FieldCtx, num: Poly, den: Poly) -> Result<RationalMap> {
        let lead = den.leading().ok_or(Error::ZeroDenominator)?.clone();
        let g = num.gcd(&den, ctx);
        let (mut num, mut den) = (num.div_exact(&g, ctx)?, den.div_exact(&g, ctx)?);
        let inv = ctx.inv(den.leading().unwrap_or(&lead))?;
        num = num.scale(&inv, ctx);
        den = den.scale(&inv, ctx);
        let degree = num.deg0().max(den.deg0());
        let w = num.derivative(ctx).mul(&den, ctx).sub(&num.mul(&den.derivative(ctx), ctx), ctx);
        Ok(RationalMap { ctx: ctx.clone(), num, den, degree, separable: !w.is_zero() })
    }

    /// The polynomial map `f`.
    pub fn polynomial(ctx: &FieldCtx, f: Poly) -> RationalMap {
        RationalMap::new(ctx, f, Poly::one(ctx)).expect("nonzero denominator")
    }

    /// `X^d + c`.
    pub fn unicritical(ctx: &FieldCtx, d: usize, c: FieldElem) -> RationalMap {
        let f = Poly::monomial(ctx, ctx.one(), d).add(&Poly::constant(c), ctx);
        RationalMap::polynomial(ctx, f)
    }

    /// `x -> (a x + b)/(c x + d)`.
    pub fn mobius(
        ctx: &FieldCtx,
        a: &FieldElem,
        b: &FieldElem,
        c: &FieldElem,
        d: &FieldElem,
    ) -> Result<RationalMap> {
        if ctx.sub(&ctx.mul(a, d), &ctx.mul(b, c)).is_zero() {
            return Err(Error::SingularMobius);
        }
        let num = Poly::new(vec![b.clone(), a.clone()]);
        let den = Poly::new(vec![d.clone(), c.clone()]);
        RationalMap::new(ctx, num, den)
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// False when the formal derivative vanishes identically.
    pub fn is_separable(&self) -> bool {
        self.separable
    }

    /// Degree-0 (constant) maps are representable but excluded from every bound.
    pub fn is_degenerate(&self) -> bool {
        self.degree == 0
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// Coefficients of the homogenized forms at degree `self.degree`.
    fn homog_at_infinity(&self) -> (FieldElem, FieldElem) {
        (self.num.coeff(&self.ctx, self.degree), self.den.coeff(&self.ctx, self.degree))
    }

    pub fn evaluate(&self, pt: &P1Point) -> Result<P1Point> {
        let ctx = &self.ctx;
        let (f, g) = match pt {
            P1Point::Affine(a) => (self.num.eval(a, ctx), self.den.eval(a, ctx)),
            P1Point::Infinity => self.homog_at_infinity(),
        };
        match (f.is_zero(), g.is_zero()) {
            (true, true) => Err(Error::Indeterminate),
            (_, true) => Ok(P1Point::Infinity),
            _ => Ok(P1Point::Affine(ctx.div(&f, &g)?)),
        }
    }

    /// `self(inner(X))`. Fails only when the result is the constant map to infinity,
    /// which has no `f/g` representation.
    pub fn compose(&self, inner: &RationalMap) -> Result<RationalMap> {
        let ctx = &self.ctx;
        let (u, v) = (&inner.num, &inner.den);
        let d = self.degree;
        // Powers u^i and v^i for i <= d.
        let mut up = vec![Poly::one(ctx)];
        let mut vp = vec![Poly::one(ctx)];
        for i in 0..d {
            up.push(up[i].mul(u, ctx));
            vp.push(vp[i].mul(v, ctx));
        }
        let homog = |p: &Poly| {
            p.coeffs().iter().enumerate().fold(Poly::zero(), |acc, (i, c)| {
                acc.add(&up[i].mul(&vp[d - i], ctx).scale(c, ctx), ctx)
            })
        };
        RationalMap::new(ctx, homog(&self.num), homog(&self.den))
    }

    /// The `n`-th iterate (`n = 0` is the identity).
    pub fn iterate(&self, n: usize) -> Result<RationalMap> {
        let mut acc = RationalMap::polynomial(&self.ctx, Poly::x(&self.ctx));
        for _ in 0..n {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    /// `mu o self o mu^{-1}`.
    pub fn conjugate(&self, mu: &RationalMap) -> Result<RationalMap> {
        if mu.degree != 1 {
            return Err(Error::SingularMobius);
        }
        let ctx = &self.ctx;
        let (b, a) = (mu.num.coeff(ctx, 0), mu.num.coeff(ctx, 1));
        let (d, c) = (mu.den.coeff(ctx, 0), mu.den.coeff(ctx, 1));
        let inv = RationalMap::mobius(ctx, &d, &ctx.neg(&b), &ctx.neg(&c), &a)?;
        mu.compose(&self.compose(&inv)?)
    }

    /// Index of `phi(point_i)` for every point in canonical order.
    pub fn successor_table(&self) -> Vec<u32> {
        let ctx = &self.ctx;
        let n = ctx.size().expect("field too large to enumerate");
        assert!(n < u32::MAX as u64, "field too large for a successor table");
        (0..=n)
            .map(|i| {
                let pt = P1Point::from_index(ctx, i);
                let img = self.evaluate(&pt).expect("normalized maps are defined everywhere");
                img.index(ctx) as u32
            })
            .collect()
    }

    /// `|phi^n(P^1(F_q))|` by `n` rounds of set-image application.
    pub fn image_size(&self, n: usize) -> u64 {
        image_size_of_table(&self.successor_table(), n)
    }

    pub fn display(&self) -> String {
        if self.is_polynomial() {
            self.num.display("X")
        } else {
            format!("({})/({})", self.num.display("X"), self.den.display("X"))
        }
    }
}

/// `|phi^n(S)|` for the functional graph `table` by explicit set iteration.
pub fn image_size_of_table(table: &[u32], n: usize) -> u64 {
    let mut set = vec![true; table.len()];
    for _ in 0..n {
        let mut next = vec![false; table.len()];
        for (i, &alive) in set.iter().enumerate() {
            if alive {
                next[table[i] as usize] = true;
            }
        }
        set = next;
    }
    set.iter().filter(|&&b| b).count() as u64
}
