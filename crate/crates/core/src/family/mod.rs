//! Parameterized families over `F_q(s)` (and maps over `Q`): specialization at
//! places, critical points, exact orbits and orbit disjointness.

mod crit;
pub mod kpoly;

pub use crit::{critical_points, critical_points_over_k, CritPoint, CritSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ffield::{prime_field, FieldCtx, FieldElem, Poly};
use crate::height::{GlobalElem, HeightCtx, KPoint, KPoly, Place};
use crate::padyn::{P1Point, RationalMap};

/// Default cap on orbit entry size (polynomial degree in `s`, or bits over `Q`).
pub const DEFAULT_SIZE_CAP: u64 = 1_000_000;

/// `phi = f/g` with coefficients in a global field, `gcd(f, g) = 1`, `g` monic.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyMap {
    ctx: HeightCtx,
    num: KPoly,
    den: KPoly,
    degree: usize,
}

impl FamilyMap {
    pub fn new(ctx: &HeightCtx, num: KPoly, den: KPoly) -> Result<FamilyMap> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let g = kpoly::gcd(ctx, &num, &den);
        let num = kpoly::divrem(ctx, &num, &g)?.0;
        let den = kpoly::divrem(ctx, &den, &g)?.0;
        let lead = ctx.inv(&den.0[den.degree().expect("nonzero")])?;
        let (num, den) = (kpoly::scale(ctx, &num, &lead), kpoly::scale(ctx, &den, &lead));
        let degree = num.degree().unwrap_or(0).max(den.degree().unwrap_or(0));
        Ok(FamilyMap { ctx: ctx.clone(), num, den, degree })
    }

    pub fn polynomial(ctx: &HeightCtx, f: KPoly) -> Result<FamilyMap> {
        FamilyMap::new(ctx, f, KPoly(vec![ctx.one()]))
    }

    /// `X^d + c`.
    pub fn unicritical(ctx: &HeightCtx, d: usize, c: GlobalElem) -> FamilyMap {
        let mut coeffs = vec![c];
        coeffs.extend((1..d).map(|_| ctx.zero()));
        coeffs.push(ctx.one());
        FamilyMap::polynomial(ctx, kpoly::trim(coeffs)).expect("monic polynomial")
    }

    pub fn ctx(&self) -> &HeightCtx {
        &self.ctx
    }

    pub fn num(&self) -> &KPoly {
        &self.num
    }

    pub fn den(&self) -> &KPoly {
        &self.den
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn eval(&self, pt: &KPoint) -> Result<KPoint> {
        self.ctx.eval_map(&self.num, &self.den, pt)
    }

    /// `self(inner(X))`.
    pub fn compose(&self, inner: &FamilyMap) -> Result<FamilyMap> {
        let ctx = &self.ctx;
        let d = self.degree;
        let (mut up, mut vp) = (vec![kpoly::constant(ctx.one())], vec![kpoly::constant(ctx.one())]);
        for i in 0..d {
            up.push(kpoly::mul(ctx, &up[i], &inner.num));
            vp.push(kpoly::mul(ctx, &vp[i], &inner.den));
        }
        let homog = |p: &KPoly| {
            p.0.iter().enumerate().fold(KPoly(vec![]), |acc, (i, c)| {
                let term = kpoly::scale(ctx, &kpoly::mul(ctx, &up[i], &vp[d - i]), c);
                kpoly::add(ctx, &acc, &term)
            })
        };
        FamilyMap::new(ctx, homog(&self.num), homog(&self.den))
    }

    pub fn iterate(&self, n: usize) -> Result<FamilyMap> {
        let mut acc = FamilyMap::polynomial(&self.ctx, kpoly::x(&self.ctx))?;
        for _ in 0..n {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    pub fn display(&self) -> String {
        let show = |p: &KPoly| {
            let terms: Vec<String> = p
                .0
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| match i {
                    0 => format!("({c})"),
                    1 => format!("({c})X"),
                    _ => format!("({c})X^{i}"),
                })
                .collect();
            if terms.is_empty() { "0".to_string() } else { terms.join("+") }
        };
        format!("[{}]/[{}]", show(&self.num), show(&self.den))
    }
}

/// Size of an orbit entry: degree in `s` for `F_q(s)`, bit length for `Q`.
fn entry_size(pt: &KPoint) -> u64 {
    match pt {
        KPoint::Infinity => 0,
        KPoint::Affine(GlobalElem::Q(r)) => r.numer().bits().max(r.denom().bits()),
        KPoint::Affine(GlobalElem::F { num, den }) => num.deg0().max(den.deg0()) as u64,
    }
}

/// `[gamma, phi(gamma), ..., phi^n(gamma)]`, exactly.
pub fn orbit_symbolic(fam: &FamilyMap, gamma: &KPoint, n: usize) -> Result<Vec<KPoint>> {
    orbit_symbolic_capped(fam, gamma, n, DEFAULT_SIZE_CAP)
}

pub fn orbit_symbolic_capped(
    fam: &FamilyMap,
    gamma: &KPoint,
    n: usize,
    cap: u64,
) -> Result<Vec<KPoint>> {
    let mut out = vec![gamma.clone()];
    for _ in 0..n {
        let last = out.last().expect("nonempty");
        // the next entry has size about d times the current one
        if entry_size(last).saturating_mul(fam.degree.max(1) as u64) > cap {
            return Err(Error::DegreeOverflow(cap));
        }
        let next = fam.eval(last)?;
        out.push(next);
    }
    Ok(out)
}

/// Outcome of a disjointness test; the witness is `(gamma1, m1, gamma2, m2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Disjointness {
    pub disjoint: bool,
    pub witness: Option<(KPoint, usize, KPoint, usize)>,
}

/// Whether the values `phi^m(gamma)`, `gamma in C`, `0 <= m <= n` are pairwise
/// distinct. Scans `gamma` in the given order and `m` ascending, reporting the
/// first collision against an earlier value.
pub fn phi_disjoint(fam: &FamilyMap, crit: &[KPoint], n: usize) -> Result<Disjointness> {
    let mut distinct: Vec<KPoint> = Vec::new();
    for g in crit {
        if !distinct.contains(g) {
            distinct.push(g.clone());
        }
    }
    let mut seen: Vec<(KPoint, usize, KPoint)> = Vec::new();
    for g in &distinct {
        for (m, value) in orbit_symbolic(fam, g, n)?.into_iter().enumerate() {
            if let Some((g1, m1, _)) = seen.iter().find(|(_, _, v)| *v == value) {
                return Ok(Disjointness {
                    disjoint: false,
                    witness: Some((g1.clone(), *m1, g.clone(), m)),
                });
            }
            seen.push((g.clone(), m, value));
        }
    }
    Ok(Disjointness { disjoint: true, witness: None })
}

/// A place of the global field together with its residue field.
#[derive(Clone, Debug)]
pub struct Reduction {
    place: Place,
    residue: FieldCtx,
    /// The prime field the integral coefficients reduce from.
    base: FieldCtx,
}

impl Reduction {
    /// The residue field at `place`; for `F_q(s)` it is built with `pi` itself
    /// as modulus, so only prime `q` is supported.
    pub fn new(ctx: &HeightCtx, place: &Place) -> Result<Reduction> {
        let residue = match (ctx, place) {
            (HeightCtx::Rationals, Place::Prime(p)) => {
                let p = u64::try_from(p).map_err(|_| Error::TooLarge(format!("residue field GF({p})")))?;
                prime_field(p)?
            }
            (HeightCtx::FunctionField(k), Place::Irreducible(pi)) => {
                if !k.is_prime_field() {
                    return Err(Error::Invalid(
                        "specialization needs a prime constant field".into(),
                    ));
                }
                let raw: Vec<u64> = pi.coeffs().iter().map(|c| c.coeffs()[0]).collect();
                FieldCtx::with_modulus(k.p(), &raw)?
            }
            _ => {
                return Err(Error::FieldMismatch(format!(
                    "place {} is not a finite place of {}",
                    place.display(),
                    ctx.name()
                )))
            }
        };
        let base = prime_field(residue.p())?;
        Ok(Reduction { place: place.clone(), residue, base })
    }

    pub fn residue(&self) -> &FieldCtx {
        &self.residue
    }

    pub fn place(&self) -> &Place {
        &self.place
    }

    /// Reduces an integral element (an integer or a polynomial in `s`).
    fn reduce_integral(&self, x: &GlobalElem) -> FieldElem {
        match (x, &self.place) {
            (GlobalElem::Q(r), Place::Prime(_)) => {
                debug_assert!(r.is_integer());
                let p = BigInt::from(self.residue.p());
                let v = r.numer().mod_floor(&p);
                self.residue.from_u64(u64::try_from(&v).expect("residue fits"))
            }
            (GlobalElem::F { num, den }, Place::Irreducible(pi)) => {
                debug_assert_eq!(den.degree(), Some(0));
                let r = num.rem(pi, &self.base).expect("nonzero modulus");
                let digits: Vec<u64> = r.coeffs().iter().map(|c| c.coeffs()[0]).collect();
                self.residue.elem(&digits).expect("degree below modulus")
            }
            _ => unreachable!("place and element from the same field"),
        }
    }

    /// Reduction of a point of `P^1(k)` into `P^1` of the residue field.
    pub fn reduce_point(&self, ctx: &HeightCtx, pt: &KPoint) -> P1Point {
        let KPoint::Affine(x) = pt else { return P1Point::Infinity };
        let (a, b) = integral_parts(ctx, x);
        let (ra, rb) = (self.reduce_integral(&a), self.reduce_integral(&b));
        if rb.is_zero() {
            P1Point::Infinity
        } else {
            P1Point::Affine(self.residue.div(&ra, &rb).expect("nonzero"))
        }
    }
}

/// `x = a/b` with `a, b` integral and coprime.
fn integral_parts(ctx: &HeightCtx, x: &GlobalElem) -> (GlobalElem, GlobalElem) {
    match x {
        GlobalElem::Q(r) => (
            GlobalElem::Q(BigRational::from_integer(r.numer().clone())),
            GlobalElem::Q(BigRational::from_integer(r.denom().clone())),
        ),
        GlobalElem::F { num, den } => (ctx.poly_elem(num.clone()), ctx.poly_elem(den.clone())),
    }
}

/// Scales a list of coefficients to be integral with trivial content.
fn primitive_parts(ctx: &HeightCtx, coeffs: &[GlobalElem]) -> Vec<GlobalElem> {
    match ctx {
        HeightCtx::Rationals => {
            let vals: Vec<&BigRational> = coeffs
                .iter()
                .map(|c| match c {
                    GlobalElem::Q(r) => r,
                    _ => unreachable!(),
                })
                .collect();
            let lcm = vals.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
            let ints: Vec<BigInt> = vals.iter().map(|r| (*r * &lcm).to_integer()).collect();
            let content = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            let content = if content.is_zero() { BigInt::one() } else { content.abs() };
            ints.into_iter().map(|x| GlobalElem::Q(BigRational::from_integer(x / &content))).collect()
        }
        HeightCtx::FunctionField(k) => {
            let parts: Vec<(&Poly, &Poly)> = coeffs
                .iter()
                .map(|c| match c {
                    GlobalElem::F { num, den } => (num, den),
                    _ => unreachable!(),
                })
                .collect();
            let lcm = parts.iter().fold(Poly::one(k), |acc, (_, d)| {
                let g = acc.gcd(d, k);
                acc.mul(d, k).div_exact(&g, k).expect("divides")
            });
            let polys: Vec<Poly> = parts
                .iter()
                .map(|(n, d)| n.mul(&lcm.div_exact(d, k).expect("divides"), k))
                .collect();
            let content = polys.iter().fold(Poly::zero(), |acc, p| acc.gcd(p, k));
            let content = if content.is_zero() { Poly::one(k) } else { content };
            polys
                .into_iter()
                .map(|p| ctx.poly_elem(p.div_exact(&content, k).expect("divides")))
                .collect()
        }
    }
}

/// A family reduced at a place.
#[derive(Clone, Debug)]
pub struct Specialization {
    pub reduction: Reduction,
    /// `None` when the reduction is the constant map to infinity.
    pub map: Option<RationalMap>,
    /// True iff the reduced map keeps the generic degree.
    pub good_reduction: bool,
}

pub fn specialize(fam: &FamilyMap, place: &Place) -> Result<Specialization> {
    let ctx = &fam.ctx;
    let reduction = Reduction::new(ctx, place)?;
    let (nf, ng) = (fam.num.0.len(), fam.den.0.len());
    let all: Vec<GlobalElem> = fam.num.0.iter().chain(&fam.den.0).cloned().collect();
    let prim = primitive_parts(ctx, &all);
    let red: Vec<FieldElem> = prim.iter().map(|c| reduction.reduce_integral(c)).collect();
    let res = &reduction.residue;
    let num = Poly::new(red[..nf].to_vec());
    let den = Poly::new(red[nf..nf + ng].to_vec());
    let map = if den.is_zero() { None } else { Some(RationalMap::new(res, num, den)?) };
    let good_reduction = map.as_ref().is_some_and(|m| m.degree() == fam.degree);
    Ok(Specialization { reduction, map, good_reduction })
}

/// An embedding of a finite field into another of the same characteristic,
/// sending the power-basis generator to a fixed root of the source modulus.
#[derive(Clone, Debug)]
pub struct FieldEmbedding {
    source: FieldCtx,
    target: FieldCtx,
    root_powers: Vec<FieldElem>,
}

impl FieldEmbedding {
    pub fn new(source: &FieldCtx, target: &FieldCtx) -> Result<FieldEmbedding> {
        if source.p() != target.p() || !target.degree().is_multiple_of(source.degree()) {
            return Err(Error::FieldMismatch(format!("no embedding of {source} into {target}")));
        }
        let m: Vec<FieldElem> = source.modulus().iter().map(|&c| target.from_u64(c)).collect();
        let m = Poly::new(m);
        let root = target
            .elements()
            .find(|x| m.eval(x, target).is_zero())
            .ok_or_else(|| Error::FieldMismatch("modulus has no root in the target".into()))?;
        let mut root_powers = vec![target.one()];
        for i in 1..source.degree() {
            root_powers.push(target.mul(&root_powers[i - 1], &root));
        }
        Ok(FieldEmbedding { source: source.clone(), target: target.clone(), root_powers })
    }

    pub fn source(&self) -> &FieldCtx {
        &self.source
    }

    pub fn target(&self) -> &FieldCtx {
        &self.target
    }

    pub fn map(&self, a: &FieldElem) -> FieldElem {
        a.coeffs().iter().zip(&self.root_powers).fold(self.target.zero(), |acc, (&c, rp)| {
            self.target.add(&acc, &self.target.mul(&self.target.from_u64(c), rp))
        })
    }

    pub fn map_point(&self, pt: &P1Point) -> P1Point {
        match pt {
            P1Point::Affine(a) => P1Point::Affine(self.map(a)),
            P1Point::Infinity => P1Point::Infinity,
        }
    }

    pub fn map_rational_map(&self, phi: &RationalMap) -> Result<RationalMap> {
        let t = &self.target;
        let lift = |p: &Poly| Poly::new(p.coeffs().iter().map(|c| self.map(c)).collect());
        RationalMap::new(t, lift(phi.num()), lift(phi.den()))
    }
}
