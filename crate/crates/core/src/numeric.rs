//! Exact arithmetic substrate: big integers, reduced rationals and
//! rational-endpoint intervals.
//!
//! Integers and rationals come from `num-bigint` / `num-rational`; a
//! [`Rational`] is always kept in lowest terms with a positive denominator.
//! Intervals never touch floating point. Operations on intervals are exact
//! on the endpoints, so the enclosure property holds without rounding;
//! [`RationalInterval::round_outward`] exists only to keep endpoint sizes in
//! check during long refinement chains.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use num_bigint::BigInt;
pub use num_rational::BigRational as Rational;

use crate::error::DomainError;

/// Build a rational from a pair of machine integers. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `10^-exp` as an exact rational.
pub fn pow10_neg(exp: u32) -> Rational {
    Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), exp as usize))
}

/// Floor of a rational to the multiple of `2^-bits` below it.
pub fn floor_dyadic(x: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits as usize;
    let scaled = x * Rational::from_integer(scale.clone());
    Rational::new(scaled.floor().to_integer(), scale)
}

pub fn ceil_dyadic(x: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits as usize;
    let scaled = x * Rational::from_integer(scale.clone());
    Rational::new(scaled.ceil().to_integer(), scale)
}

/// Closed interval `[lo, hi]` with exact rational endpoints.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalInterval {
    lo: Rational,
    hi: Rational,
}

/// Binary operation selector for [`interval_op`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntervalOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Outcome of a certified sign test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CertifiedSign {
    Positive,
    Negative,
    Indeterminate,
}

impl RationalInterval {
    /// Panics if `lo > hi`.
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order: [{lo}, {hi}]");
        RationalInterval { lo, hi }
    }

    /// Interval with endpoints in either order.
    pub fn spanning(a: Rational, b: Rational) -> Self {
        if a <= b {
            RationalInterval { lo: a, hi: b }
        } else {
            RationalInterval { lo: b, hi: a }
        }
    }

    pub fn point(x: Rational) -> Self {
        RationalInterval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::point(int(v))
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        Self::point(Rational::from_integer(v.clone()))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains_int(&self, v: &BigInt) -> bool {
        self.contains(&Rational::from_integer(v.clone()))
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Smallest interval containing both operands.
    pub fn hull(&self, other: &Self) -> Self {
        RationalInterval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    pub fn abs_max(&self) -> Rational {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn sign(&self) -> CertifiedSign {
        sign_certify(self)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, DomainError> {
        if rhs.contains_zero() {
            return Err(DomainError::DivisionByZeroInterval);
        }
        let inv = RationalInterval::spanning(rhs.hi.recip(), rhs.lo.recip());
        Ok(self * &inv)
    }

    pub fn square(&self) -> Self {
        let a = &self.lo * &self.lo;
        let b = &self.hi * &self.hi;
        let hi = a.clone().max(b.clone());
        let lo = if self.contains_zero() {
            Rational::zero()
        } else {
            a.min(b)
        };
        RationalInterval { lo, hi }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalInterval::spanning(&self.lo * c, &self.hi * c)
    }

    /// Widen to dyadic endpoints with denominator `2^bits`; the result
    /// contains `self`.
    pub fn round_outward(&self, bits: u32) -> Self {
        RationalInterval {
            lo: floor_dyadic(&self.lo, bits),
            hi: ceil_dyadic(&self.hi, bits),
        }
    }

    /// Integer-scaled powers are rare enough that repeated multiplication is fine.
    pub fn powi(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_bracket_string(&self) -> String {
        alloc::format!("[{}, {}]", self.lo, self.hi)
    }
}

impl fmt::Debug for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl From<Rational> for RationalInterval {
    fn from(x: Rational) -> Self {
        Self::point(x)
    }
}

impl<'a> Add<&'a RationalInterval> for &'a RationalInterval {
    type Output = RationalInterval;
    fn add(self, rhs: &RationalInterval) -> RationalInterval {
        RationalInterval {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
    }
}

impl<'a> Sub<&'a RationalInterval> for &'a RationalInterval {
    type Output = RationalInterval;
    fn sub(self, rhs: &RationalInterval) -> RationalInterval {
        RationalInterval {
            lo: &self.lo - &rhs.hi,
            hi: &self.hi - &rhs.lo,
        }
    }
}

impl<'a> Mul<&'a RationalInterval> for &'a RationalInterval {
    type Output = RationalInterval;
    fn mul(self, rhs: &RationalInterval) -> RationalInterval {
        if self.is_point() && rhs.is_point() {
            return RationalInterval::point(&self.lo * &rhs.lo);
        }
        let products = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let mut lo = products[0].clone();
        let mut hi = products[0].clone();
        for p in &products[1..] {
            if p < &lo {
                lo = p.clone();
            }
            if p > &hi {
                hi = p.clone();
            }
        }
        RationalInterval { lo, hi }
    }
}

impl Neg for &RationalInterval {
    type Output = RationalInterval;
    fn neg(self) -> RationalInterval {
        RationalInterval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RationalInterval> for RationalInterval {
            type Output = RationalInterval;
            fn $m(self, rhs: RationalInterval) -> RationalInterval {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a RationalInterval> for RationalInterval {
            type Output = RationalInterval;
            fn $m(self, rhs: &RationalInterval) -> RationalInterval {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RationalInterval {
    type Output = RationalInterval;
    fn neg(self) -> RationalInterval {
        -&self
    }
}

/// Apply one interval operation. Division by an interval containing zero fails.
pub fn interval_op(
    a: &RationalInterval,
    b: &RationalInterval,
    op: IntervalOp,
) -> Result<RationalInterval, DomainError> {
    match op {
        IntervalOp::Add => Ok(a + b),
        IntervalOp::Sub => Ok(a - b),
        IntervalOp::Mul => Ok(a * b),
        IntervalOp::Div => a.checked_div(b),
    }
}

pub fn sign_certify(x: &RationalInterval) -> CertifiedSign {
    if x.lo.is_positive() {
        CertifiedSign::Positive
    } else if x.hi.is_negative() {
        CertifiedSign::Negative
    } else {
        CertifiedSign::Indeterminate
    }
}

/// Sign of an exact rational as `-1`, `0` or `1`.
pub fn sign_of(x: &Rational) -> i8 {
    match x.cmp(&Rational::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// `Some(n)` when the rational is an integer.
pub fn as_integer(x: &Rational) -> Option<BigInt> {
    if x.is_integer() {
        Some(x.to_integer())
    } else {
        None
    }
}

pub fn lcm_of_denominators<'a, I: IntoIterator<Item = &'a Rational>>(values: I) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: (i64, i64), hi: (i64, i64)) -> RationalInterval {
        RationalInterval::new(ratio(lo.0, lo.1), ratio(hi.0, hi.1))
    }

    #[test]
    fn endpoint_addition() {
        let r = interval_op(
            &iv((1, 1), (2, 1)),
            &iv((3, 1), (4, 1)),
            IntervalOp::Add,
        )
        .unwrap();
        assert_eq!(r, iv((4, 1), (6, 1)));
    }

    #[test]
    fn symmetric_product() {
        let a = iv((-1, 1), (1, 1));
        let r = interval_op(&a, &a, IntervalOp::Mul).unwrap();
        assert_eq!(r, iv((-1, 1), (1, 1)));
    }

    #[test]
    fn division_by_zero_straddling_interval() {
        let r = interval_op(&iv((1, 1), (2, 1)), &iv((0, 1), (1, 1)), IntervalOp::Div);
        assert_eq!(r, Err(DomainError::DivisionByZeroInterval));
    }

    #[test]
    fn division_by_negative_interval() {
        let r = iv((1, 1), (2, 1)).checked_div(&iv((-4, 1), (-2, 1))).unwrap();
        assert_eq!(r, iv((-1, 1), (-1, 4)));
    }

    #[test]
    fn sign_cases() {
        assert_eq!(sign_certify(&iv((1, 3), (1, 2))), CertifiedSign::Positive);
        assert_eq!(sign_certify(&iv((-2, 1), (-1, 1))), CertifiedSign::Negative);
        assert_eq!(
            sign_certify(&iv((-1, 1000), (1, 1000))),
            CertifiedSign::Indeterminate
        );
        assert_eq!(sign_certify(&iv((0, 1), (1, 1))), CertifiedSign::Indeterminate);
    }

    #[test]
    fn square_of_straddling_interval_starts_at_zero() {
        assert_eq!(iv((-2, 1), (1, 1)).square(), iv((0, 1), (4, 1)));
        assert_eq!(iv((-3, 1), (-2, 1)).square(), iv((4, 1), (9, 1)));
    }

    #[test]
    fn outward_rounding_contains_original() {
        let a = iv((1, 3), (2, 3));
        let r = a.round_outward(8);
        assert!(r.lo() <= a.lo() && r.hi() >= a.hi());
        assert_eq!(r.lo().denom() % BigInt::from(2), BigInt::zero());
        assert!(r.width() <= a.width() + ratio(2, 256));
    }

    #[test]
    #[should_panic]
    fn reversed_endpoints_panic() {
        let _ = iv((2, 1), (1, 1));
    }
}
