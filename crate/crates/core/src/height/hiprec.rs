//! Fixed-point natural logarithms at a few hundred bits, used to settle floors
//! of values that land too close to an integer for double precision.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Working precision in bits.
pub const PREC: u64 = 320;

/// A real number `value / 2^PREC`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fixed(pub BigInt);

impl Fixed {
    pub fn from_rational(r: &BigRational) -> Fixed {
        Fixed((r.numer() << PREC).div_floor(r.denom()))
    }

    pub fn from_int(n: i64) -> Fixed {
        Fixed(BigInt::from(n) << PREC)
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.0.clone(), BigInt::one() << PREC)
    }

    pub fn add(&self, o: &Fixed) -> Fixed {
        Fixed(&self.0 + &o.0)
    }

    pub fn sub(&self, o: &Fixed) -> Fixed {
        Fixed(&self.0 - &o.0)
    }

    pub fn mul(&self, o: &Fixed) -> Fixed {
        Fixed((&self.0 * &o.0) >> PREC)
    }

    pub fn div(&self, o: &Fixed) -> Fixed {
        Fixed((&self.0 << PREC).div_floor(&o.0))
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn floor(&self) -> BigInt {
        self.0.div_floor(&(BigInt::one() << PREC))
    }

    /// Distance to the nearest integer.
    pub fn dist_to_int(&self) -> Fixed {
        let one = BigInt::one() << PREC;
        let frac = self.0.mod_floor(&one);
        Fixed(frac.clone().min(one - frac))
    }
}

/// `2 atanh(z) = 2 (z + z^3/3 + z^5/5 + ...)` for `0 <= z <= 1/3`.
fn two_atanh(z: &Fixed) -> Fixed {
    let z2 = z.mul(z);
    let mut term = z.clone();
    let mut sum = Fixed(BigInt::zero());
    let mut k = 1i64;
    while !term.0.is_zero() {
        sum = sum.add(&Fixed(&term.0 / BigInt::from(k)));
        term = term.mul(&z2);
        k += 2;
    }
    Fixed(sum.0 * 2)
}

pub fn ln2() -> Fixed {
    two_atanh(&Fixed::from_rational(&BigRational::new(BigInt::one(), BigInt::from(3))))
}

/// Natural log of a positive rational.
pub fn ln(x: &BigRational) -> Fixed {
    assert!(x.is_positive(), "logarithm of a nonpositive number");
    // x = m * 2^e with m in [1, 2)
    let (n, d) = (x.numer().magnitude(), x.denom().magnitude());
    let mut e = n.bits() as i64 - d.bits() as i64;
    let mut m = if e >= 0 {
        BigRational::new(BigInt::from(n.clone()), BigInt::from(d << e as u64))
    } else {
        BigRational::new(BigInt::from(n << (-e) as u64), BigInt::from(d.clone()))
    };
    let two = BigRational::from_integer(BigInt::from(2));
    if m >= two {
        m /= &two;
        e += 1;
    } else if m < BigRational::one() {
        m *= &two;
        e -= 1;
    }
    let z = (&m - BigRational::one()) / (&m + BigRational::one());
    let lm = two_atanh(&Fixed::from_rational(&z));
    lm.add(&Fixed(ln2().0 * e))
}

pub fn ln_fixed(x: &Fixed) -> Fixed {
    ln(&x.to_rational())
}

pub fn ln_biguint(n: &BigUint) -> Fixed {
    ln(&BigRational::from_integer(BigInt::from(n.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_double_precision() {
        for (n, d) in [(2i64, 1i64), (3, 1), (10, 1), (1, 7), (123456789, 1000), (59049, 1)] {
            let x = BigRational::new(BigInt::from(n), BigInt::from(d));
            let got = ln(&x).to_rational();
            let f = num_traits::ToPrimitive::to_f64(&got).unwrap();
            assert!((f - (n as f64 / d as f64).ln()).abs() < 1e-14, "{n}/{d}");
        }
    }

    #[test]
    fn log_identities_hold_to_high_precision() {
        // ln 6 = ln 2 + ln 3, ln 8 = 3 ln 2
        let r = |n: i64| BigRational::from_integer(BigInt::from(n));
        let err = ln(&r(6)).sub(&ln(&r(2)).add(&ln(&r(3))));
        assert!(err.0.abs() < BigInt::from(1u32) << 16);
        let err = ln(&r(8)).sub(&Fixed(ln2().0 * 3));
        assert!(err.0.abs() < BigInt::from(1u32) << 16);
    }
}
