//! Polynomial arithmetic over a global field.

use crate::error::{Error, Result};
use crate::height::{GlobalElem, HeightCtx, KPoly};

pub fn trim(mut p: Vec<GlobalElem>) -> KPoly {
    while p.last().is_some_and(GlobalElem::is_zero) {
        p.pop();
    }
    KPoly(p)
}

pub fn constant(c: GlobalElem) -> KPoly {
    trim(vec![c])
}

/// `X`.
pub fn x(ctx: &HeightCtx) -> KPoly {
    KPoly(vec![ctx.zero(), ctx.one()])
}

pub fn add(ctx: &HeightCtx, a: &KPoly, b: &KPoly) -> KPoly {
    let n = a.0.len().max(b.0.len());
    let zero = ctx.zero();
    trim((0..n).map(|i| ctx.add(a.0.get(i).unwrap_or(&zero), b.0.get(i).unwrap_or(&zero))).collect())
}

pub fn scale(ctx: &HeightCtx, a: &KPoly, c: &GlobalElem) -> KPoly {
    trim(a.0.iter().map(|x| ctx.mul(x, c)).collect())
}

pub fn sub(ctx: &HeightCtx, a: &KPoly, b: &KPoly) -> KPoly {
    add(ctx, a, &scale(ctx, b, &ctx.from_i64(-1)))
}

pub fn mul(ctx: &HeightCtx, a: &KPoly, b: &KPoly) -> KPoly {
    if a.is_zero() || b.is_zero() {
        return KPoly(vec![]);
    }
    let mut out = vec![ctx.zero(); a.0.len() + b.0.len() - 1];
    for (i, x) in a.0.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.0.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = ctx.add(&out[i + j], &ctx.mul(x, y));
            }
        }
    }
    trim(out)
}

pub fn divrem(ctx: &HeightCtx, a: &KPoly, b: &KPoly) -> Result<(KPoly, KPoly)> {
    let db = b.degree().ok_or(Error::DivisionByZero)?;
    let lead_inv = ctx.inv(&b.0[db])?;
    let mut rem = trim(a.0.clone()).0;
    if rem.len() <= db {
        return Ok((KPoly(vec![]), trim(rem)));
    }
    let mut quot = vec![ctx.zero(); rem.len() - db];
    for i in (db..rem.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let c = ctx.mul(&rem[i], &lead_inv);
        for (j, y) in b.0.iter().enumerate().take(db + 1) {
            if !y.is_zero() {
                rem[i - db + j] = ctx.sub(&rem[i - db + j], &ctx.mul(&c, y));
            }
        }
        quot[i - db] = c;
    }
    rem.truncate(db);
    Ok((trim(quot), trim(rem)))
}

pub fn monic(ctx: &HeightCtx, a: &KPoly) -> KPoly {
    match a.degree() {
        None => KPoly(vec![]),
        Some(d) => scale(ctx, a, &ctx.inv(&a.0[d]).expect("nonzero leading coefficient")),
    }
}

/// Monic gcd.
pub fn gcd(ctx: &HeightCtx, a: &KPoly, b: &KPoly) -> KPoly {
    let (mut a, mut b) = (trim(a.0.clone()), trim(b.0.clone()));
    while !b.is_zero() {
        let r = divrem(ctx, &a, &b).expect("nonzero divisor").1;
        a = b;
        b = r;
    }
    monic(ctx, &a)
}

pub fn derivative(ctx: &HeightCtx, a: &KPoly) -> KPoly {
    trim(a.0.iter().enumerate().skip(1).map(|(i, c)| ctx.mul(c, &ctx.from_i64(i as i64))).collect())
}

/// Multiplicity of `r` as a root of `a` (`usize::MAX` for the zero polynomial).
pub fn root_multiplicity(ctx: &HeightCtx, a: &KPoly, r: &GlobalElem) -> usize {
    if a.is_zero() {
        return usize::MAX;
    }
    let lin = KPoly(vec![ctx.neg(r), ctx.one()]);
    let mut f = a.clone();
    let mut k = 0;
    loop {
        let (q, rem) = divrem(ctx, &f, &lin).expect("nonzero divisor");
        if !rem.is_zero() {
            return k;
        }
        f = q;
        k += 1;
    }
}

/// `X^d a(1/X)` for `d >= deg a`.
pub fn reverse(ctx: &HeightCtx, a: &KPoly, d: usize) -> KPoly {
    let mut c = a.0.clone();
    c.resize(d + 1, ctx.zero());
    c.reverse();
    trim(c)
}
