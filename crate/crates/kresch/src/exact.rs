//! Exact rational arithmetic and the two combinatorial primitives
//! (rising factorial, binomial coefficient) everything else is built from.
//!
//! Every scalar in this crate is a [`Rational`]: an arbitrary-precision
//! fraction kept in canonical lowest terms with a positive denominator.
//! No floating point appears anywhere in the evaluation paths.

use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Non-negative machine-range index (the `n`, `k`, `m`, `s`, `T` of the
/// various formulas).
pub type Index = u64;

/// An arbitrary-precision rational number in canonical form.
///
/// Invariants (maintained by every public operation):
/// * the denominator is strictly positive,
/// * numerator and denominator are coprime,
/// * equality is structural equality of the canonical form.
///
/// The canonical text form is `p/q` in lowest terms with `q > 0`, or a bare
/// integer `p` when `q = 1` (e.g. `-2/3`, `7`). [`fmt::Display`] and
/// [`FromStr`] speak exactly this format; it is also the wire format used
/// by the CLI and in serialized reports.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num/den` from machine integers, reducing to lowest terms.
    ///
    /// Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Builds `num/den` from big integers, reducing to lowest terms.
    pub fn from_big(num: BigInt, den: BigInt) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num, den)))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rational(self.0.recip())
    }

    /// If `self` is an integer `<= 0`, returns its magnitude.
    ///
    /// This is the test behind series termination: a numerator parameter
    /// `-n` caps the series at `n + 1` terms.
    pub fn nonpositive_integer_magnitude(&self) -> Option<BigUint> {
        if self.is_integer() && !self.0.is_positive() {
            Some(self.numer().magnitude().clone())
        } else {
            None
        }
    }

    /// True when `self` is an integer in the inclusive range `[lo, hi]`
    /// for machine-range `lo <= hi`.
    pub fn is_integer_in(&self, lo: i64, hi: i64) -> bool {
        if !self.is_integer() {
            return false;
        }
        let n = self.numer();
        *n >= BigInt::from(lo) && *n <= BigInt::from(hi)
    }

    /// Parses the canonical text form. Accepts any `p/q` or `p` (not
    /// necessarily reduced) and canonicalizes.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let bad = || Error::ParseRational {
            text: text.to_owned(),
        };
        let t = text.trim();
        if t.is_empty() {
            return Err(bad());
        }
        match t.split_once('/') {
            None => {
                let n = BigInt::from_str(t).map_err(|_| bad())?;
                Ok(Rational(BigRational::from_integer(n)))
            }
            Some((ns, ds)) => {
                let n = BigInt::from_str(ns.trim()).map_err(|_| bad())?;
                let d = BigInt::from_str(ds.trim()).map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Rational(BigRational::new(n, d)))
            }
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rational::parse(s)
    }
}

impl serde::Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Rational {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = <String as serde::Deserialize>::deserialize(deserializer)?;
        Rational::parse(&text).map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<Index> for Rational {
    fn from(n: Index) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }
}

macro_rules! binop_impl {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

binop_impl!(Add, add);
binop_impl!(Sub, sub);
binop_impl!(Mul, mul);
binop_impl!(Div, div);

macro_rules! assign_impl {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            fn $method(&mut self, rhs: Rational) {
                self.0.$method(rhs.0);
            }
        }
        impl $trait<&Rational> for Rational {
            fn $method(&mut self, rhs: &Rational) {
                self.0.$method(&rhs.0);
            }
        }
    };
}

assign_impl!(AddAssign, add_assign);
assign_impl!(SubAssign, sub_assign);
assign_impl!(MulAssign, mul_assign);
assign_impl!(DivAssign, div_assign);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// Rising factorial (Pochhammer symbol) `(a)_n = a (a+1) ... (a+n-1)`,
/// with `(a)_0 = 1`.
///
/// Short-circuits to an exact 0 when `a` is a non-positive integer whose
/// magnitude is `< n`: a zero factor is provably hit, and callers such as
/// the vanishing-band identities rely on getting 0 without rounding doubt.
pub fn rising_factorial(a: &Rational, n: Index) -> Rational {
    if n == 0 {
        return Rational::one();
    }
    if let Some(mag) = a.nonpositive_integer_magnitude() {
        if mag < BigUint::from(n) {
            return Rational::zero();
        }
    }
    // With a = p/q the product is prod_k (p + kq) / q^n; accumulating the
    // integer numerator and reducing once beats reducing per factor.
    let mut num = a.numer().clone();
    let mut den = a.denom().clone();
    let mut factor = a.numer().clone();
    for _ in 1..n {
        factor += a.denom();
        num *= &factor;
        den *= a.denom();
    }
    Rational::from_big(num, den).expect("q^n is positive")
}

/// Factorial `n!` as an exact integer-valued rational.
pub fn factorial(n: Index) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    Rational::from(acc)
}

/// Binomial coefficient `C(n, k)` as an exact integer-valued rational;
/// returns 0 when `k > n` (the summation convention used throughout).
///
/// Computed by the multiplicative running product with an exact division
/// at every step, keeping intermediates no bigger than the result.
pub fn binomial(n: Index, k: Index) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 1..=k {
        acc *= BigInt::from(n - k + i);
        // C(n-k+i, i) is an integer, so this division is exact.
        acc /= BigInt::from(i);
    }
    Rational::from(acc)
}
