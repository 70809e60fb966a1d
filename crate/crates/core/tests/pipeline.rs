//! End-to-end checks through the public API: text expressions are parsed,
//! turned into maps over a finite field, and their functional graphs are
//! compared with brute-force evaluation.

use num_bigint::BigInt;
use num_rational::BigRational;
use perdyn_core::ffield::field_of_order;
use perdyn_core::padyn::{image_size_of_table, P1Point};
use perdyn_core::verify::parse::{parse_elem, parse_map};
use perdyn_core::verify::{judge, Status};
use perdyn_core::Error;
use proptest::prelude::*;

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| *c == BigInt::from(0)) {
        v.pop();
    }
    v
}

/// Render integer coefficients (lowest degree first) as `c0+c1*X+...`.
fn render(coeffs: &[i64]) -> String {
    let mut out = String::new();
    for (i, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if !out.is_empty() || c < 0 {
            out.push(if c < 0 { '-' } else { '+' });
        }
        out.push_str(&c.unsigned_abs().to_string());
        match i {
            0 => {}
            1 => out.push('X'),
            _ => out.push_str(&format!("X^{i}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[test]
fn parsed_map_matches_direct_evaluation() {
    let ctx = field_of_order(7).unwrap();
    let map = parse_map("X^3 + 2X / X^2 + 3").unwrap().to_rational_map(&ctx).unwrap();
    let table = map.successor_table();
    for i in 0..table.len() as u64 {
        let pt = P1Point::from_index(&ctx, i);
        let expected = match &pt {
            P1Point::Infinity => P1Point::Infinity,
            P1Point::Affine(x) => {
                let num = ctx.add(&ctx.mul(&ctx.mul(x, x), x), &ctx.mul(&ctx.from_u64(2), x));
                let den = ctx.add(&ctx.mul(x, x), &ctx.from_u64(3));
                if den.is_zero() {
                    P1Point::Infinity
                } else {
                    P1Point::Affine(ctx.mul(&num, &ctx.inv(&den).unwrap()))
                }
            }
        };
        assert_eq!(map.evaluate(&pt).unwrap(), expected);
        assert_eq!(table[i as usize] as u64, expected.index(&ctx));
    }
}

#[test]
fn image_sizes_decrease_to_periodic_part() {
    let ctx = field_of_order(11).unwrap();
    let map = parse_map("X^2 + 3").unwrap().to_rational_map(&ctx).unwrap();
    let table = map.successor_table();
    let mut prev = table.len() as u64;
    for n in 1..=12 {
        let size = image_size_of_table(&table, n);
        assert!(size <= prev);
        // Brute force: the set of n-fold images.
        let mut seen = vec![false; table.len()];
        for start in 0..table.len() {
            let mut x = start;
            for _ in 0..n {
                x = table[x] as usize;
            }
            seen[x] = true;
        }
        assert_eq!(size, seen.iter().filter(|&&b| b).count() as u64);
        prev = size;
    }
}

#[test]
fn malformed_inputs_report_positions() {
    match parse_map("X^2 + * 3") {
        Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
        other => panic!("unexpected {other:?}"),
    }
    assert!(matches!(parse_elem("1/"), Err(Error::Parse { .. })));
}

proptest! {
    #[test]
    fn rendered_polynomials_round_trip(coeffs in prop::collection::vec(-50i64..50, 1..6)) {
        let expr = parse_map(&render(&coeffs)).unwrap();
        let parsed: Vec<BigInt> = expr
            .num
            .iter()
            .map(|s| trim(s.clone()).first().cloned().unwrap_or_default())
            .collect();
        let expected: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        prop_assert_eq!(trim(parsed), trim(expected));
    }

    #[test]
    fn parser_never_panics(src in "[Xs0-9+\\-*/^() ]{0,24}") {
        let _ = parse_map(&src);
        let _ = parse_elem(&src);
    }

    #[test]
    fn judge_is_monotone_in_lhs(a in 0u32..10_000, b in 0u32..10_000, rhs in 0.0f64..2.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let lhs = |v: u32| BigRational::new(BigInt::from(v), BigInt::from(10_000));
        if judge(&lhs(hi), rhs) != Status::Fail {
            prop_assert_ne!(judge(&lhs(lo), rhs), Status::Fail);
        }
    }
}
