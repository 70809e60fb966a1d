//! Recursive-descent parser for map expressions, field elements, critical
//! point lists and field names.
//!
//! ```text
//! expr   := poly | poly "/" poly
//! poly   := ["+"|"-"] term (("+"|"-") term)*
//! term   := coeff? ("X" ("^" int)?)?          (nonempty)
//! coeff  := int | "(" spoly ")" | int? "s" ("^" int)?
//! spoly  := ["+"|"-"] sterm (("+"|"-") sterm)*
//! sterm  := int? ("s" ("^" int)?)?            (nonempty)
//! ```
//!
//! Whitespace is ignored. Coefficients are polynomials in `s` with integer
//! coefficients; how `s` is interpreted depends on the target field.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::family::{kpoly, FamilyMap};
use crate::ffield::{FieldCtx, FieldElem, Poly};
use crate::height::{GlobalElem, HeightCtx, KPoint, KPoly};
use crate::padyn::RationalMap;

/// A polynomial in `s` with integer coefficients, lowest degree first.
pub type SPoly = Vec<BigInt>;

/// A polynomial in `X` whose coefficients are polynomials in `s`.
pub type XPoly = Vec<SPoly>;

/// A parsed map expression `num / den`.
#[derive(Clone, Debug, PartialEq)]
pub struct MapExpr {
    pub num: XPoly,
    pub den: XPoly,
}

/// A parsed element `num / den` of a field of the form `K(s)` or `Q`.
#[derive(Clone, Debug, PartialEq)]
pub struct ElemExpr {
    pub num: SPoly,
    pub den: SPoly,
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    at: usize,
    src: &'a str,
}

fn add_at<T: Clone>(v: &mut Vec<T>, i: usize, zero: T, x: T, add: impl Fn(&T, &T) -> T) {
    if v.len() <= i {
        v.resize(i + 1, zero);
    }
    v[i] = add(&v[i], &x);
}

fn spoly_add(a: &SPoly, b: &SPoly) -> SPoly {
    let mut out = a.clone();
    for (i, c) in b.iter().enumerate() {
        add_at(&mut out, i, BigInt::from(0), c.clone(), |x, y| x + y);
    }
    out
}

fn spoly_neg(a: &SPoly) -> SPoly {
    a.iter().map(|c| -c).collect()
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        let chars = src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        Parser { chars, at: 0, src }
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or(self.src.len(), |&(p, _)| p)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn fail<T>(&self, expected: &str) -> Result<T> {
        Err(Error::Parse { pos: self.pos(), expected: expected.into() })
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.fail(&format!("'{c}'"))
        }
    }

    fn end(&self) -> Result<()> {
        if self.peek().is_some() {
            self.fail("end of input")
        } else {
            Ok(())
        }
    }

    fn int(&mut self) -> Option<BigInt> {
        let start = self.at;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.at += 1;
        }
        if start == self.at {
            return None;
        }
        let digits: String = self.chars[start..self.at].iter().map(|&(_, c)| c).collect();
        Some(digits.parse().expect("digits"))
    }

    fn exponent(&mut self) -> Result<usize> {
        if !self.eat('^') {
            return Ok(1);
        }
        let pos = self.pos();
        let e = self.int().map_or_else(|| self.fail("exponent"), Ok)?;
        usize::try_from(&e)
            .ok()
            .filter(|&e| e <= 1 << 20)
            .ok_or(Error::Parse { pos, expected: "exponent at most 2^20".into() })
    }

    /// `int? ("s" ("^" int)?)?`; `None` if nothing was consumed.
    fn sterm(&mut self) -> Result<Option<SPoly>> {
        let c = self.int();
        let e = if self.eat('s') { Some(self.exponent()?) } else { None };
        Ok(match (c, e) {
            (None, None) => None,
            (c, e) => {
                let e = e.unwrap_or(0);
                let mut v = vec![BigInt::from(0); e + 1];
                v[e] = c.unwrap_or_else(|| BigInt::from(1));
                Some(v)
            }
        })
    }

    fn spoly(&mut self) -> Result<SPoly> {
        let mut acc = SPoly::new();
        let mut neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        loop {
            let Some(t) = self.sterm()? else { return self.fail("integer or 's'") };
            acc = spoly_add(&acc, &if neg { spoly_neg(&t) } else { t });
            if self.eat('+') {
                neg = false;
            } else if self.eat('-') {
                neg = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn coeff(&mut self) -> Result<Option<SPoly>> {
        if self.eat('(') {
            let p = self.spoly()?;
            self.expect(')')?;
            return Ok(Some(p));
        }
        self.sterm()
    }

    fn term(&mut self) -> Result<Option<XPoly>> {
        let c = self.coeff()?;
        let e = if self.eat('X') || self.eat('x') { Some(self.exponent()?) } else { None };
        Ok(match (c, e) {
            (None, None) => None,
            (c, e) => {
                let e = e.unwrap_or(0);
                let mut v = vec![SPoly::new(); e + 1];
                v[e] = c.unwrap_or_else(|| vec![BigInt::from(1)]);
                Some(v)
            }
        })
    }

    fn poly(&mut self) -> Result<XPoly> {
        let mut acc = XPoly::new();
        let mut neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        loop {
            let Some(t) = self.term()? else { return self.fail("integer, '(', 's' or 'X'") };
            for (i, c) in t.into_iter().enumerate() {
                let c = if neg { spoly_neg(&c) } else { c };
                add_at(&mut acc, i, SPoly::new(), c, spoly_add);
            }
            if self.eat('+') {
                neg = false;
            } else if self.eat('-') {
                neg = true;
            } else {
                return Ok(acc);
            }
        }
    }

    /// A polynomial in `s`, optionally parenthesized.
    fn sfactor(&mut self) -> Result<SPoly> {
        if self.eat('(') {
            let p = self.spoly()?;
            self.expect(')')?;
            Ok(p)
        } else {
            self.spoly()
        }
    }
}

pub fn parse_map(src: &str) -> Result<MapExpr> {
    let mut p = Parser::new(src);
    let num = p.poly()?;
    let den = if p.eat('/') { p.poly()? } else { vec![vec![BigInt::from(1)]] };
    p.end()?;
    Ok(MapExpr { num, den })
}

pub fn parse_elem(src: &str) -> Result<ElemExpr> {
    let mut p = Parser::new(src);
    let num = p.sfactor()?;
    let den = if p.eat('/') { p.sfactor()? } else { vec![BigInt::from(1)] };
    p.end()?;
    Ok(ElemExpr { num, den })
}

/// `"Q"` or `"F<q>(s)"`.
pub fn parse_field(src: &str) -> Result<HeightCtx> {
    let t: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    if t == "Q" {
        return Ok(HeightCtx::rationals());
    }
    let q = t
        .strip_prefix('F')
        .and_then(|r| r.strip_suffix("(s)"))
        .and_then(|q| q.parse::<u64>().ok())
        .ok_or(Error::Parse { pos: 0, expected: "'Q' or 'F<q>(s)'".into() })?;
    HeightCtx::function_field(q)
}

fn mod_p(c: &BigInt, p: u64) -> u64 {
    let p = BigInt::from(p);
    u64::try_from(((c % &p) + &p) % &p).expect("residue")
}

/// Value of an `s`-polynomial in `GF(q)`, with `s` read as the power-basis generator.
pub fn spoly_in_field(ctx: &FieldCtx, s: &SPoly) -> FieldElem {
    let x = ctx.generator();
    s.iter().rev().fold(ctx.zero(), |acc, c| {
        ctx.add(&ctx.mul(&acc, &x), &ctx.from_u64(mod_p(c, ctx.p())))
    })
}

/// Value of an `s`-polynomial in `Q` (which must be constant) or `F_q[s]`.
pub fn spoly_in_global(ctx: &HeightCtx, s: &SPoly) -> Result<GlobalElem> {
    match ctx {
        HeightCtx::Rationals => {
            if s.iter().skip(1).any(|c| c != &BigInt::from(0)) {
                return Err(Error::FieldMismatch("'s' does not occur in Q".into()));
            }
            let c = s.first().cloned().unwrap_or_default();
            Ok(GlobalElem::Q(BigRational::from_integer(c)))
        }
        HeightCtx::FunctionField(k) => {
            // integers land in the prime subfield of the constants
            let coeffs = s.iter().map(|c| k.from_u64(mod_p(c, k.p()))).collect();
            Ok(ctx.poly_elem(Poly::new(coeffs)))
        }
    }
}

impl MapExpr {
    /// The map over `GF(q)`, with `s` read as the generator of `GF(q)`.
    pub fn to_rational_map(&self, ctx: &FieldCtx) -> Result<RationalMap> {
        let conv = |x: &XPoly| Poly::new(x.iter().map(|c| spoly_in_field(ctx, c)).collect());
        RationalMap::new(ctx, conv(&self.num), conv(&self.den))
    }

    /// The map over `Q` or `F_q(s)`.
    pub fn to_family_map(&self, ctx: &HeightCtx) -> Result<FamilyMap> {
        let conv = |x: &XPoly| -> Result<KPoly> {
            Ok(kpoly::trim(x.iter().map(|c| spoly_in_global(ctx, c)).collect::<Result<_>>()?))
        };
        FamilyMap::new(ctx, conv(&self.num)?, conv(&self.den)?)
    }
}

impl ElemExpr {
    pub fn to_global(&self, ctx: &HeightCtx) -> Result<GlobalElem> {
        let (n, d) = (spoly_in_global(ctx, &self.num)?, spoly_in_global(ctx, &self.den)?);
        ctx.div(&n, &d)
    }
}

/// A comma-separated list of points of `P^1(k)`; `inf` denotes infinity.
pub fn parse_points(ctx: &HeightCtx, src: &str) -> Result<Vec<KPoint>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in src.split(',') {
        let t = part.trim();
        if t.is_empty() {
            if src.trim().is_empty() {
                break;
            }
            return Err(Error::Parse { pos: offset, expected: "point".into() });
        }
        if t == "inf" {
            out.push(KPoint::Infinity);
        } else {
            let e = parse_elem(part).map_err(|e| match e {
                Error::Parse { pos, expected } => Error::Parse { pos: pos + offset, expected },
                other => other,
            })?;
            out.push(KPoint::Affine(e.to_global(ctx)?));
        }
        offset += part.len() + 1;
    }
    Ok(out)
}
