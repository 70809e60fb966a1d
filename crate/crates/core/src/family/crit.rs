//! Critical points: roots of the Wronskian `f'g - fg'`, with the point at
//! infinity handled through `psi(X) = 1/phi(1/X)`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{kpoly, FamilyMap};
use crate::error::{Error, Result};
use crate::ffield::Poly;
use crate::height::{poly_factors, prime_factors, GlobalElem, HeightCtx, KPoint, KPoly};
use crate::padyn::{P1Point, RationalMap};

/// Largest number of candidate roots tried by the rational-root search.
const CANDIDATE_CAP: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CritPoint<P> {
    pub point: P,
    /// Local degree of the map at the point.
    pub ramification: usize,
    /// Multiplicity of the point in the ramification divisor.
    pub different: usize,
    /// The residue characteristic divides the ramification index.
    pub wild: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CritSet<P> {
    pub points: Vec<CritPoint<P>>,
    /// All `2d - 2` ramification (counted with multiplicity) is at rational points.
    pub all_rational: bool,
    pub wild: bool,
}

impl<P: Clone> CritSet<P> {
    pub fn point_set(&self) -> Vec<P> {
        self.points.iter().map(|c| c.point.clone()).collect()
    }
}

fn build<P>(points: Vec<CritPoint<P>>, d: usize) -> CritSet<P> {
    let total: usize = points.iter().map(|c| c.different).sum();
    let wild = points.iter().any(|c| c.wild);
    CritSet { points, all_rational: total == 2 * d - 2 || d == 0, wild }
}

// ---------- finite fields ----------

fn wronskian(map: &RationalMap) -> Poly {
    let ctx = map.ctx();
    let (f, g) = (map.num(), map.den());
    f.derivative(ctx).mul(g, ctx).sub(&f.mul(&g.derivative(ctx), ctx), ctx)
}

fn reversed(ctx: &crate::ffield::FieldCtx, p: &Poly, d: usize) -> Poly {
    let mut c = p.coeffs().to_vec();
    c.resize(d + 1, ctx.zero());
    c.reverse();
    Poly::new(c)
}

/// Local degree at an affine point `a`.
fn ramification_at(map: &RationalMap, a: &crate::ffield::FieldElem) -> usize {
    let ctx = map.ctx();
    let (f, g) = (map.num(), map.den());
    let ga = g.eval(a, ctx);
    if ga.is_zero() {
        return g.root_multiplicity(a, ctx);
    }
    let c = ctx.div(&f.eval(a, ctx), &ga).expect("nonzero");
    f.sub(&g.scale(&c, ctx), ctx).root_multiplicity(a, ctx)
}

/// `psi(X) = 1/phi(1/X)`, whose behavior at 0 is that of `phi` at infinity.
fn flip(map: &RationalMap) -> RationalMap {
    let ctx = map.ctx();
    let d = map.degree();
    RationalMap::new(ctx, reversed(ctx, map.den(), d), reversed(ctx, map.num(), d))
        .expect("reversed numerator is nonzero")
}

/// Critical points of a map over a finite field, found by exhaustive evaluation.
pub fn critical_points(map: &RationalMap) -> Result<CritSet<P1Point>> {
    if !map.is_separable() {
        return Err(Error::InseparableMap);
    }
    let ctx = map.ctx();
    let p = ctx.p() as usize;
    let w = wronskian(map);
    let mut points = Vec::new();
    for a in ctx.elements() {
        if w.eval(&a, ctx).is_zero() {
            let e = ramification_at(map, &a);
            let different = w.root_multiplicity(&a, ctx);
            points.push(CritPoint { point: P1Point::Affine(a), ramification: e, different, wild: e.is_multiple_of(p) });
        }
    }
    let psi = flip(map);
    let w_inf = wronskian(&psi);
    let zero = ctx.zero();
    let different = w_inf.root_multiplicity(&zero, ctx);
    if different > 0 {
        let e = ramification_at(&psi, &zero);
        points.push(CritPoint { point: P1Point::Infinity, ramification: e, different, wild: e.is_multiple_of(p) });
    }
    Ok(build(points, map.degree()))
}

// ---------- global fields ----------

fn k_wronskian(ctx: &HeightCtx, f: &KPoly, g: &KPoly) -> KPoly {
    kpoly::sub(ctx, &kpoly::mul(ctx, &kpoly::derivative(ctx, f), g), &kpoly::mul(ctx, f, &kpoly::derivative(ctx, g)))
}

fn k_ramification_at(ctx: &HeightCtx, f: &KPoly, g: &KPoly, a: &GlobalElem) -> usize {
    let ga = ctx.eval(g, a);
    if ga.is_zero() {
        return kpoly::root_multiplicity(ctx, g, a);
    }
    let c = ctx.div(&ctx.eval(f, a), &ga).expect("nonzero");
    kpoly::root_multiplicity(ctx, &kpoly::sub(ctx, f, &kpoly::scale(ctx, g, &c)), a)
}

/// All divisors of `n` (positive).
fn int_divisors(n: &BigUint) -> Result<Vec<BigUint>> {
    let mut divs = vec![BigUint::one()];
    let mut m = n.clone();
    for p in prime_factors(n) {
        let mut k = 0;
        while (&m % &p).is_zero() {
            m /= &p;
            k += 1;
        }
        let mut next = Vec::new();
        for d in &divs {
            let mut pk = BigUint::one();
            for _ in 0..=k {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
        if divs.len() > CANDIDATE_CAP {
            return Err(Error::TooLarge(format!("divisor list of {n}")));
        }
    }
    Ok(divs)
}

/// All monic divisors of a nonzero polynomial.
fn poly_divisors(k: &crate::ffield::FieldCtx, f: &Poly) -> Result<Vec<Poly>> {
    let mut divs = vec![Poly::one(k)];
    let mut m = f.make_monic(k);
    for p in poly_factors(k, f) {
        let mut e = 0;
        while m.rem(&p, k)?.is_zero() {
            m = m.div_exact(&p, k)?;
            e += 1;
        }
        let mut next = Vec::new();
        for d in &divs {
            let mut pk = Poly::one(k);
            for _ in 0..=e {
                next.push(d.mul(&pk, k));
                pk = pk.mul(&p, k);
            }
        }
        divs = next;
        if divs.len() > CANDIDATE_CAP {
            return Err(Error::TooLarge("divisor list".into()));
        }
    }
    Ok(divs)
}

/// Roots in `k` of a nonzero polynomial, by the rational root theorem.
fn rational_roots(ctx: &HeightCtx, w: &KPoly) -> Result<Vec<GlobalElem>> {
    let w = kpoly::trim(w.0.clone());
    let Some(deg) = w.degree() else {
        return Err(Error::InseparableMap);
    };
    let mut roots = Vec::new();
    let low = w.0.iter().position(|c| !c.is_zero()).expect("nonzero");
    if low > 0 {
        roots.push(ctx.zero());
    }
    if low == deg {
        return Ok(roots);
    }
    let prim = super::primitive_parts(ctx, &w.0);
    let candidates: Vec<GlobalElem> = match ctx {
        HeightCtx::Rationals => {
            let as_int = |x: &GlobalElem| match x {
                GlobalElem::Q(r) => r.numer().abs().to_biguint().expect("nonnegative"),
                _ => unreachable!(),
            };
            let (us, vs) = (int_divisors(&as_int(&prim[low]))?, int_divisors(&as_int(&prim[deg]))?);
            if us.len() * vs.len() > CANDIDATE_CAP {
                return Err(Error::TooLarge("rational root candidates".into()));
            }
            let mut out = Vec::new();
            for u in &us {
                for v in &vs {
                    if u.gcd(v).is_one() {
                        let r = BigRational::new(BigInt::from(u.clone()), BigInt::from(v.clone()));
                        out.push(GlobalElem::Q(r.clone()));
                        out.push(GlobalElem::Q(-r));
                    }
                }
            }
            out
        }
        HeightCtx::FunctionField(k) => {
            let as_poly = |x: &GlobalElem| match x {
                GlobalElem::F { num, .. } => num.clone(),
                _ => unreachable!(),
            };
            let us = poly_divisors(k, &as_poly(&prim[low]))?;
            let vs = poly_divisors(k, &as_poly(&prim[deg]))?;
            let units: Vec<_> = k.elements().skip(1).collect();
            if us.len() * vs.len() * units.len() > CANDIDATE_CAP {
                return Err(Error::TooLarge("rational root candidates".into()));
            }
            let mut out = Vec::new();
            for u in &us {
                for v in &vs {
                    if u.gcd(v, k).degree() == Some(0) {
                        for c in &units {
                            out.push(ctx.ratfunc(u.scale(c, k), v.clone())?);
                        }
                    }
                }
            }
            out
        }
    };
    for c in candidates {
        if !roots.contains(&c) && ctx.eval(&w, &c).is_zero() {
            roots.push(c);
        }
    }
    Ok(roots)
}

/// Critical points of a map over `Q` or `F_q(s)` that are defined over the field.
pub fn critical_points_over_k(fam: &FamilyMap) -> Result<CritSet<KPoint>> {
    let ctx = fam.ctx();
    let (f, g) = (fam.num(), fam.den());
    let d = fam.degree();
    let w = k_wronskian(ctx, f, g);
    if w.is_zero() {
        return Err(Error::InseparableMap);
    }
    let p = match ctx {
        HeightCtx::Rationals => 0usize,
        HeightCtx::FunctionField(k) => k.p() as usize,
    };
    let wild = |e: usize| p != 0 && e.is_multiple_of(p);
    let mut points = Vec::new();
    for a in rational_roots(ctx, &w)? {
        let e = k_ramification_at(ctx, f, g, &a);
        let different = kpoly::root_multiplicity(ctx, &w, &a);
        points.push(CritPoint { point: KPoint::Affine(a), ramification: e, different, wild: wild(e) });
    }
    // psi = g_rev / f_rev
    let (pf, pg) = (kpoly::reverse(ctx, g, d), kpoly::reverse(ctx, f, d));
    let w_inf = k_wronskian(ctx, &pf, &pg);
    let zero = ctx.zero();
    let different = kpoly::root_multiplicity(ctx, &w_inf, &zero);
    if different > 0 {
        let gcd = kpoly::gcd(ctx, &pf, &pg);
        let pf = kpoly::divrem(ctx, &pf, &gcd)?.0;
        let pg = kpoly::divrem(ctx, &pg, &gcd)?.0;
        let e = k_ramification_at(ctx, &pf, &pg, &zero);
        points.push(CritPoint { point: KPoint::Infinity, ramification: e, different, wild: wild(e) });
    }
    Ok(build(points, d))
}
