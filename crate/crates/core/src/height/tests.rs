use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn f3() -> HeightCtx {
    HeightCtx::function_field(3).unwrap()
}

/// `sum_i coeffs[i] s^i` in `F_q(s)`.
fn spoly(ctx: &HeightCtx, coeffs: &[i64]) -> GlobalElem {
    let k = ctx.constant_field().unwrap();
    ctx.poly_elem(Poly::from_ints(k, coeffs))
}

fn kpoly(coeffs: &[GlobalElem]) -> KPoly {
    KPoly(coeffs.to_vec())
}

fn random_elem(ctx: &HeightCtx, rng: &mut ChaCha8Rng, bound: i64) -> GlobalElem {
    match ctx {
        HeightCtx::Rationals => {
            let n = rng.random_range(-bound..=bound);
            let d = rng.random_range(1..=bound);
            ctx.rational(n, d).unwrap()
        }
        HeightCtx::FunctionField(k) => {
            let q = k.size().unwrap();
            let mut gen = |deg: usize| {
                let coeffs: Vec<_> = (0..=deg).map(|_| k.elem_at(rng.random_range(0..q))).collect();
                Poly::new(coeffs)
            };
            let num = gen(4);
            let mut den = gen(3);
            if den.is_zero() {
                den = Poly::one(k);
            }
            ctx.ratfunc(num, den).unwrap()
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

#[test]
fn local_norm_examples() {
    let q = HeightCtx::rationals();
    let two = Place::Prime(BigUint::from(2u32));
    assert_eq!(q.local_norm(&two, &q.from_i64(6)).unwrap(), rat(1, 2));
    assert_eq!(q.local_norm(&Place::Real, &q.rational(-3, 2).unwrap()).unwrap(), rat(3, 2));
    let f = f3();
    let s = f.s().unwrap();
    let pi_s = Place::Irreducible(Poly::x(f.constant_field().unwrap()));
    assert_eq!(f.local_norm(&pi_s, &s).unwrap(), rat(1, 3));
    assert_eq!(f.local_norm(&Place::Degree, &s).unwrap(), rat(3, 1));
    assert_eq!(f.local_norm(&Place::Degree, &f.zero()).unwrap(), rat(0, 1));
}

#[test]
fn height_examples() {
    let q = HeightCtx::rationals();
    let x = q.rational(3, 2).unwrap();
    assert_eq!(q.height(&x), rat(3, 1));
    assert_eq!(q.height_literal(&x), rat(3, 1));
    assert_eq!(q.height(&q.one()), rat(1, 1));
    assert_eq!(q.height(&q.zero()), rat(1, 1));
    let f = f3();
    let s = f.s().unwrap();
    assert_eq!(f.height(&s), rat(3, 1));
    assert_eq!(f.height_literal(&s), rat(3, 1));
    assert_eq!(f.height(&f.one()), rat(1, 1));
}

#[test]
fn point_heights() {
    let q = HeightCtx::rationals();
    assert_eq!(q.height_point(&q.one(), &q.zero()).unwrap(), rat(1, 1));
    assert_eq!(q.height_point(&q.from_i64(3), &q.from_i64(2)).unwrap(), rat(3, 1));
    assert_eq!(q.height_point(&q.zero(), &q.zero()).unwrap_err(), Error::ZeroPoint);
    let f = f3();
    assert_eq!(f.height_point(&f.s().unwrap(), &f.one()).unwrap(), rat(3, 1));
}

#[test]
fn pair_height_examples() {
    let f = f3();
    let x2s = kpoly(&[f.s().unwrap(), f.zero(), f.one()]);
    let one = kpoly(&[f.one()]);
    assert_eq!(f.pair_height(&x2s, &one).unwrap(), rat(3, 1));
    let q = HeightCtx::rationals();
    let x2p1 = kpoly(&[q.one(), q.zero(), q.one()]);
    assert_eq!(q.pair_height(&x2p1, &kpoly(&[q.one()])).unwrap(), rat(1, 1));
    let lin = kpoly(&[q.from_i64(3), q.from_i64(2)]);
    assert_eq!(q.pair_height(&lin, &kpoly(&[q.from_i64(5)])).unwrap(), rat(5, 1));
    assert_eq!(q.pair_height(&lin, &KPoly(vec![])).unwrap_err(), Error::ZeroDenominator);
}

#[test]
fn b_and_c_constants() {
    let f = f3();
    let one_f = kpoly(&[f.one()]);
    let x2s = kpoly(&[f.s().unwrap(), f.zero(), f.one()]);
    assert_eq!(f.b_const(&x2s, &one_f).unwrap(), rat(3, 1));
    let zero_pt = [KPoint::Affine(f.zero())];
    assert_eq!(f.c_const(&x2s, &one_f, &zero_pt).unwrap(), rat(3, 1));
    let s_pt = [KPoint::Affine(f.s().unwrap())];
    assert_eq!(f.c_const(&x2s, &one_f, &s_pt).unwrap(), rat(9, 1));
    assert_eq!(f.c_const(&x2s, &one_f, &[]).unwrap_err(), Error::EmptyCritSet);

    let q = HeightCtx::rationals();
    let x2 = kpoly(&[q.zero(), q.zero(), q.one()]);
    let one_q = kpoly(&[q.one()]);
    assert_eq!(q.b_const(&x2, &one_q).unwrap(), rat(3, 1));
    let pts = [KPoint::Affine(q.zero()), KPoint::Infinity];
    assert_eq!(q.c_const(&x2, &one_q, &pts).unwrap(), rat(3, 1));

    // X^d + s^m over F_q(s) has b = c = q^m
    for qq in [2u64, 3, 4, 5, 7] {
        let ctx = HeightCtx::function_field(qq).unwrap();
        for d in 2..=4usize {
            for m in 1..=3u32 {
                let mut coeffs = vec![ctx.pow(&ctx.s().unwrap(), m)];
                coeffs.extend((1..d).map(|_| ctx.zero()));
                coeffs.push(ctx.one());
                let fam = KPoly(coeffs);
                let one = KPoly(vec![ctx.one()]);
                let expect = BigRational::from_integer(BigInt::from(qq.pow(m)));
                assert_eq!(ctx.b_const(&fam, &one).unwrap(), expect);
                assert_eq!(ctx.c_const(&fam, &one, &[KPoint::Affine(ctx.zero())]).unwrap(), expect);
            }
        }
    }
}

#[test]
fn iterate_depth_examples() {
    let f = f3();
    let x2s = kpoly(&[f.s().unwrap(), f.zero(), f.one()]);
    let one = kpoly(&[f.one()]);
    let crit = [KPoint::Affine(f.zero())];
    let n11 = f.n_eps_at_degree(&x2s, &one, &crit, 1.0, 11).unwrap();
    assert_eq!(n11.value, 1);
    assert!((n11.pre_floor - 1.06).abs() < 0.01);
    assert_eq!(f.n_eps_at_degree(&x2s, &one, &crit, 1.0, 41).unwrap().value, 2);

    let q = HeightCtx::rationals();
    let x2 = kpoly(&[q.zero(), q.zero(), q.one()]);
    let one_q = kpoly(&[q.one()]);
    let pts = [KPoint::Affine(q.zero())];
    let err = q.n_eps(&x2, &one_q, &pts, 1.0, &BigUint::from(2u32)).unwrap_err();
    assert!(matches!(err, Error::OutOfDomain(_)));
    // ln 5 - ln 2 < 1
    let err = q.n_eps(&x2, &one_q, &pts, 1.0, &BigUint::from(5u32)).unwrap_err();
    assert!(matches!(err, Error::NonpositiveLogArgument(_)));
    // a small place gives a nonpositive, flagged depth rather than an error
    let small = f.n_eps_at_degree(&x2s, &one, &crit, 1.0, 3).unwrap();
    assert!(!small.usable());
}

/// Independent evaluation of the floor formula in fixed point.
fn n_eps_fixed(norm: &BigUint, ar: u32, c: &BigRational, d: u64, eps_num: i64) -> i64 {
    use hiprec::*;
    let inner = ln_biguint(norm).sub(&Fixed(ln2().0 * ar));
    let d_fact: BigUint = (1..=d).map(BigUint::from).product();
    let a = Fixed(ln(c).0 * 2);
    let b = Fixed::from_rational(&(ln_biguint(&d_fact).to_rational() * BigRational::from_integer(4.into()) / BigRational::from_integer(eps_num.into())));
    let t = ln_fixed(&inner).sub(&ln_fixed(&a.max(b))).div(&Fixed(ln(&BigRational::from_integer(BigInt::from(d))).0 * 2));
    t.floor().to_i64().unwrap()
}

#[test]
fn iterate_depth_agrees_with_fixed_point_evaluation() {
    for qq in [3u64, 5] {
        let ctx = HeightCtx::function_field(qq).unwrap();
        for d in 2..=3usize {
            let mut coeffs = vec![ctx.s().unwrap()];
            coeffs.extend((1..d).map(|_| ctx.zero()));
            coeffs.push(ctx.one());
            let (fam, one) = (KPoly(coeffs), KPoly(vec![ctx.one()]));
            let crit = [KPoint::Affine(ctx.zero())];
            let c = ctx.c_const(&fam, &one, &crit).unwrap();
            for deg in 2..=200u32 {
                let norm = BigUint::from(qq).pow(deg);
                for eps in [1i64, 2] {
                    match ctx.n_eps(&fam, &one, &crit, eps as f64, &norm) {
                        Ok(n) => assert_eq!(n.value, n_eps_fixed(&norm, 0, &c, d as u64, eps)),
                        Err(Error::NonpositiveLogArgument(_)) => assert!((deg as f64) * (qq as f64).ln() <= 1.0),
                        Err(e) => panic!("{e}"),
                    }
                }
            }
        }
    }
}

#[test]
fn product_formula_examples() {
    let q = HeightCtx::rationals();
    assert!(q.product_formula_check(&q.from_i64(6)).unwrap());
    assert!(q.product_formula_check(&q.rational(-5, 9).unwrap()).unwrap());
    assert_eq!(q.product_formula_check(&q.zero()).unwrap_err(), Error::ZeroElement);
    let f = f3();
    let x = spoly(&f, &[1, 0, 1]);
    assert!(f.product_formula_check(&x).unwrap());
    let pi = Place::Irreducible(Poly::from_ints(f.constant_field().unwrap(), &[1, 0, 1]));
    assert_eq!(f.local_norm(&pi, &x).unwrap(), rat(1, 9));
    assert_eq!(f.local_norm(&Place::Degree, &x).unwrap(), rat(9, 1));
}

#[test]
fn places() {
    let f = f3();
    let ps = f.places_of(2);
    assert_eq!(ps.len(), 3);
    assert!(ps.iter().all(|p| f.norm(p) == Some(BigUint::from(9u32))));
    let q = HeightCtx::rationals();
    let primes: Vec<_> = q.places_of(10).iter().map(|p| f.norm(p).unwrap().to_u64().unwrap()).collect();
    assert_eq!(primes, vec![2, 3, 5, 7]);
    let f2 = HeightCtx::function_field(2).unwrap();
    let ps = f2.places_of(1);
    assert_eq!(ps.len(), 2);
    assert!(ps.iter().all(|p| f2.norm(p) == Some(BigUint::from(2u32))));
}

fn contexts() -> Vec<HeightCtx> {
    vec![HeightCtx::rationals(), f3()]
}

#[test]
fn product_formula_and_literal_heights_on_random_elements() {
    for ctx in contexts() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let x = random_nonzero(&ctx, &mut rng, 1000);
            assert!(ctx.product_formula_check(&x).unwrap(), "{x}");
            assert_eq!(ctx.height(&x), ctx.height_literal(&x), "{x}");
        }
    }
}

#[test]
fn height_of_sum_is_bounded() {
    for ctx in contexts() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let factor = BigRational::from_integer(BigInt::from(2u32.pow(ctx.ar())));
        for _ in 0..1000 {
            let (a, b) = (random_elem(&ctx, &mut rng, 1000), random_elem(&ctx, &mut rng, 1000));
            let lhs = ctx.height(&ctx.add(&a, &b));
            assert!(lhs <= &factor * ctx.height(&a) * ctx.height(&b), "{a} + {b}");
        }
    }
}

#[test]
fn heights_grow_at_most_like_b_times_power() {
    for ctx in contexts() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let mut done = 0;
        while done < 200 {
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
            let deg = f.degree().unwrap().max(g.degree().unwrap());
            let gamma = match rng.random_range(0..8) {
                0 => KPoint::Infinity,
                _ => KPoint::Affine(random_elem(&ctx, &mut rng, 100)),
            };
            let image = ctx.eval_map(&f, &g, &gamma).unwrap();
            let b = ctx.b_const(&f, &g).unwrap();
            let rhs = b * ctx.height_kpoint(&gamma).pow(deg as i32);
            assert!(ctx.height_kpoint(&image) <= rhs);
            done += 1;
        }
    }
}

#[test]
fn iterate_heights_stay_below_c_power() {
    for qq in [3u64, 5] {
        let ctx = HeightCtx::function_field(qq).unwrap();
        for d in 2..=3usize {
            for m in 1..=2u32 {
                let mut coeffs = vec![ctx.pow(&ctx.s().unwrap(), m)];
                coeffs.extend((1..d).map(|_| ctx.zero()));
                coeffs.push(ctx.one());
                let (fam, one) = (KPoly(coeffs), KPoly(vec![ctx.one()]));
                let crit = [KPoint::Affine(ctx.zero())];
                let c = ctx.c_const(&fam, &one, &crit).unwrap();
                let mut orbit = vec![KPoint::Affine(ctx.zero())];
                for _ in 0..5 {
                    let next = ctx.eval_map(&fam, &one, orbit.last().unwrap()).unwrap();
                    orbit.push(next);
                }
                for n in 0..=5u32 {
                    let bound = c.pow((d as i32).pow(n));
                    for pt in &orbit[..=n as usize] {
                        assert!(ctx.height_kpoint(pt) < bound);
                    }
                }
            }
        }
    }
    // and over Q for X^2 - 1 and X^2 + 1/2
    let q = HeightCtx::rationals();
    for (c0, name) in [(q.from_i64(-1), "X^2-1"), (q.rational(1, 2).unwrap(), "X^2+1/2")] {
        let fam = KPoly(vec![c0, q.zero(), q.one()]);
        let one = KPoly(vec![q.one()]);
        let crit = [KPoint::Affine(q.zero()), KPoint::Infinity];
        let c = q.c_const(&fam, &one, &crit).unwrap();
        let mut orbit = vec![KPoint::Affine(q.zero())];
        for _ in 0..5 {
            let next = q.eval_map(&fam, &one, orbit.last().unwrap()).unwrap();
            orbit.push(next);
        }
        for n in 0..=5u32 {
            let bound = c.pow(2i32.pow(n));
            assert!(orbit[..=n as usize].iter().all(|p| q.height_kpoint(p) < bound), "{name}");
        }
    }
}
