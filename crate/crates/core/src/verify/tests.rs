use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use super::baseline::{enumerated_cyclic_mean, expected_cyclic, random_map_baseline};
use super::census::census;
use super::checks::*;
use super::suites::*;
use super::*;
use crate::family::FamilyMap;
use crate::ffield::{field_of_order, prime_field};
use crate::height::{HeightCtx, KPoint};
use crate::padyn::RationalMap;
use crate::wreath::Family;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn judge_statuses() {
    assert_eq!(judge(&q(1, 2), 0.75), Status::Pass);
    assert_eq!(judge(&q(1, 2), 2.0), Status::VacuousPass);
    assert_eq!(judge(&q(1, 2), 0.25), Status::Fail);
    assert_eq!(judge(&q(3, 2), 1.25), Status::Fail);
    // equality passes, and a bound a rounding error below lhs is not failed
    assert_eq!(judge(&q(1, 2), 0.5), Status::Pass);
    assert_eq!(judge(&q(1, 3), 1.0 / 3.0), Status::Pass);
    assert_eq!(judge(&q(0, 1), 0.0), Status::Pass);
    assert_eq!(judge(&q(1, 1), f64::INFINITY), Status::VacuousPass);
    assert_eq!(judge(&q(0, 1), f64::NAN), Status::Fail);
}

#[test]
fn csv_layout() {
    let reports = vec![
        Report {
            check: "x".into(),
            params: "a=1;b=2".into(),
            lhs: Some(q(1, 6)),
            rhs: Some(2.5),
            status: Status::VacuousPass,
            runtime_ms: 3,
            seed: None,
        },
        Report::out_of_hypothesis("y", "q=4".into()),
    ];
    let mut buf = Vec::new();
    write_csv(&mut buf, &reports).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert_eq!(
        text,
        "check,params,lhs_num,lhs_den,rhs,status,runtime_ms,seed\n\
         x,a=1;b=2,1,6,2.5,vacuous-pass,3,\n\
         y,q=4,,,,out-of-hypothesis,0,\n"
    );
    let mut empty = Vec::new();
    write_csv(&mut empty, &[]).unwrap();
    assert_eq!(String::from_utf8(empty).unwrap(), "check,params,lhs_num,lhs_den,rhs,status,runtime_ms,seed\n");
    assert_eq!(overall(&reports), Status::OutOfHypothesis);
    assert_eq!(overall(&reports[..1]), Status::VacuousPass);
}

#[test]
fn image_size_examples() {
    let gf5 = prime_field(5).unwrap();
    let r = check_image_size(&gf5, 2, &gf5.one(), 1).unwrap();
    assert_eq!(r.lhs, Some(q(1, 6)));
    let expected = 7.0 * 2.0 * 2.0 / 5f64.sqrt() / 6.0;
    assert!(close(r.rhs.unwrap(), expected, 1e-12));
    assert!(r.status.is_ok());

    for order in [5u64, 7, 9, 11, 13] {
        let k = field_of_order(order).unwrap();
        for a in k.elements() {
            assert_eq!(RationalMap::unicritical(&k, 2, a).image_size(1), (order + 3) / 2);
        }
    }
    let gf4 = field_of_order(4).unwrap();
    assert!(matches!(check_image_size(&gf4, 2, &gf4.zero(), 1), Err(Error::OutOfHypothesis(_))));
    let gf7 = prime_field(7).unwrap();
    assert!(matches!(check_image_size(&gf7, 4, &gf7.one(), 1), Err(Error::OutOfHypothesis(_))));
    // d = 3 needs q = 1 mod 3
    assert!(check_image_size(&gf7, 3, &gf7.one(), 2).unwrap().status.is_ok());
}

#[test]
fn single_parameter_bound() {
    // independent evaluation of the formula at (3, 9, 2, 1)
    let gap = ((9.0 * 3f64.ln()) - 2f64.ln()).ln() - (2.0 * 3f64.ln()).max(4.0 * 2f64.ln()).ln();
    let want = 4.0 * 2f64.ln() / gap + 14.0 / 3f64.powf(4.5);
    let got = thm12_rhs(3, 9, 2, 1).unwrap();
    assert!(close(got, want, 1e-12));
    assert!(close(got, 2.41, 0.01));
    assert!(matches!(check_thm12(3, 8, 2, 1), Err(Error::OutOfHypothesis(_))));
    assert!(matches!(check_thm12(4, 20, 2, 1), Err(Error::OutOfHypothesis(_))));
    assert!(close(unicritical_threshold(3, 2, 1), 8.0, 0.0));
    assert!(close(4.0 * 2.0 * 2f64.ln() / 3f64.ln(), 5.047, 1e-3));
}

#[test]
fn averaged_bounds() {
    let got = thm13_rhs(3, 9).unwrap();
    assert!(close(got, 2.43, 0.01));
    assert!(matches!(check_thm13(2, 9), Err(Error::OutOfHypothesis(_))));
    assert!(matches!(check_thm13(3, 8), Err(Error::OutOfHypothesis(_))));

    let got = cor11_rhs(3, 7).unwrap();
    assert!(close(got, 22.0 / (7.0 * 3f64.ln()).ln(), 1e-12));
    assert!(close(got, 10.8, 0.05));
    assert!(matches!(check_cor11(3, 6), Err(Error::OutOfHypothesis(_))));
    let r = check_cor11(3, 7).unwrap();
    assert_eq!(r.status, Status::VacuousPass);
    let lhs = r.lhs.unwrap();
    assert!(lhs > q(0, 1) && lhs <= q(1, 1));

    // with m = 1 the gcd factor is 1 and the averaged bound differs from the
    // single-parameter bound only by the extra 2/q^{r/2}
    let diff = thm64_rhs(3, 9, 2, 1).unwrap() - thm12_rhs(3, 9, 2, 1).unwrap();
    assert!(close(diff, 2.0 / 3f64.powf(4.5), 1e-12));
    assert!(matches!(check_thm64(3, 9, 2, 2), Err(Error::OutOfHypothesis(_))));
    // gcd(3^40 - 1, 2) = 2 multiplies both terms
    let gap = (40.0 * 3f64.ln() - 2f64.ln()).ln() - (4.0 * 3f64.ln()).max(4.0 * 2f64.ln()).ln();
    let want = 2.0 * (4.0 * 2f64.ln() / gap + 16.0 / 3f64.powf(20.0));
    assert!(close(thm64_rhs(3, 40, 2, 2).unwrap(), want, 1e-12));
}

#[test]
fn place_size_bound() {
    let n = BigUint::from(3u32).pow(9);
    let first = 4.0 * 2f64.ln() / (9.0 * 3f64.ln()).ln();
    let tail = 14.0 / 3f64.powf(4.5);
    assert!(close(first, 1.211, 1e-3));
    assert!(close(tail, 0.0998, 1e-4));
    assert!(close(thm63_bound(Family::C, 2, 1.0, &n).unwrap(), first + tail, 1e-12));
    let m = BigUint::from(1_000_000u32);
    let a4 = thm63_bound(Family::A, 4, 1.0, &m).unwrap();
    let want = (1.0 + 4.0 * 4f64.ln()) / (1e6f64.ln()).ln() + 28.0 / 1e3;
    assert!(close(a4, want, 1e-12));
    let s4 = thm63_bound(Family::S, 4, 1.0, &m).unwrap();
    assert!(close(a4 - s4, 1.0 / (1e6f64.ln()).ln(), 1e-12));
    assert!(matches!(thm63_bound(Family::C, 2, 1.0, &BigUint::from(2u32)), Err(Error::OutOfDomain(_))));
    assert!(thm63_bound(Family::C, 2, 1.0, &BigUint::from(3u32)).is_ok());
}

#[test]
fn disjointness_depth_thresholds() {
    let f3 = HeightCtx::function_field(3).unwrap();
    let zero = [KPoint::Affine(f3.zero())];
    let fam = FamilyMap::unicritical(&f3, 2, f3.s().unwrap());
    assert_eq!(porism_threshold(&fam, &zero, &BigUint::from(3u32)).unwrap(), BigUint::from(6561u32));
    let cubic = FamilyMap::unicritical(&f3, 3, f3.s().unwrap());
    let t = porism_threshold(&cubic, &zero, &BigUint::from(3u32)).unwrap();
    let (a, b) = (BigUint::from(3u32).pow(18), BigUint::from(6u32).pow(12));
    assert_eq!(t, a.clone().max(b.clone()));
    assert_eq!(t, b);
    // X^2 + 1 over F_3(s) with C = {0} has c = 2: c^8 = 256 = (2!)^8
    let fam = FamilyMap::unicritical(&f3, 2, f3.one());
    let t = porism_threshold(&fam, &zero, &BigUint::from(1u32)).unwrap();
    assert_eq!(t, BigUint::from(256u32));
    // over Q the archimedean factor (d+1)^ar makes c = 3
    let qq = HeightCtx::rationals();
    let fam = FamilyMap::unicritical(&qq, 2, qq.from_i64(1));
    let t = porism_threshold(&fam, &[KPoint::Affine(qq.zero())], &BigUint::from(1u32)).unwrap();
    assert_eq!(t, BigUint::from(6561u32));
}

#[test]
fn random_map_expectations() {
    assert_eq!(expected_cyclic(1).unwrap(), q(1, 1));
    assert_eq!(expected_cyclic(2).unwrap(), q(3, 2));
    for n in 1..=6 {
        assert_eq!(expected_cyclic(n).unwrap(), enumerated_cyclic_mean(n).unwrap(), "n={n}");
    }
    let one = random_map_baseline(1, 10, 5).unwrap();
    assert_eq!(one.lhs, Some(q(0, 1)));
    assert_eq!(one.status, Status::Pass);

    let r = random_map_baseline(1000, 200, 42).unwrap();
    assert!(r.status.is_ok(), "{r:?}");
    assert_eq!(r.seed, Some(42));
    let again = random_map_baseline(1000, 200, 42).unwrap();
    assert_eq!(r.lhs, again.lhs);
    assert_eq!(r.rhs, again.rhs);
    let other = random_map_baseline(1000, 200, 43).unwrap();
    assert_ne!(r.lhs, other.lhs);
}

#[test]
fn census_at_nine() {
    let c = census(&field_of_order(9).unwrap()).unwrap();
    assert_eq!(c.fibers, vec![72; 9]);
    assert_eq!(c.fibers.iter().sum::<u64>(), 648);
    assert_eq!(c.full_average, c.weighted_average);
    assert!(c.counts_agree);
    assert!(census_report(9).unwrap().status.is_ok());
    assert!(matches!(census(&field_of_order(4).unwrap()), Err(Error::OutOfHypothesis(_))));
}

#[test]
fn invariant_suites() {
    assert_eq!(image_size_identity(30).unwrap().status, Status::Pass);
    assert_eq!(prop48_contrapositive(3, 2, 5).unwrap().status, Status::Pass);
    assert_eq!(juul_conformance(4, 8).unwrap().status, Status::Pass);
}

#[test]
fn out_of_hypothesis_reports() {
    let r = or_out_of_hypothesis("thm13", "q=2;r=9".into(), check_thm13(2, 9)).unwrap();
    assert_eq!(r.status, Status::OutOfHypothesis);
    assert!(or_out_of_hypothesis("x", String::new(), Err(Error::ZeroPoint)).is_err());
}
