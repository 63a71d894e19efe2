//! Exact dyadic rationals `± mantissa · 2^exponent`.
//!
//! Every number that flows through GNN and FNN evaluation in this crate is a
//! [`Dyadic`]. The set is closed under addition, subtraction, multiplication
//! and division by powers of two, which is all the constructions need, so no
//! value is ever rounded.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An exact signed rational with a power-of-two denominator.
///
/// The representation is normalized: the mantissa is odd, or the value is
/// zero with exponent 0. Structural equality is therefore value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: i64,
}

impl Dyadic {
    pub fn new(mantissa: impl Into<BigInt>, exponent: i64) -> Self {
        Self::normalized(mantissa.into(), exponent)
    }

    fn normalized(mut mantissa: BigInt, mut exponent: i64) -> Self {
        match mantissa.trailing_zeros() {
            None => Self { mantissa: BigInt::zero(), exponent: 0 },
            Some(0) => Self { mantissa, exponent },
            Some(tz) => {
                mantissa >>= tz;
                exponent += tz as i64;
                Self { mantissa, exponent }
            }
        }
    }

    pub fn zero() -> Self {
        Self { mantissa: BigInt::zero(), exponent: 0 }
    }

    pub fn one() -> Self {
        Self { mantissa: BigInt::one(), exponent: 0 }
    }

    pub fn from_int(v: i64) -> Self {
        Self::new(v, 0)
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Self::normalized(v, 0)
    }

    /// `2^exponent`.
    pub fn pow2(exponent: i64) -> Self {
        Self { mantissa: BigInt::one(), exponent }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn signum(&self) -> i32 {
        match self.mantissa.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Self { mantissa: self.mantissa.abs(), exponent: self.exponent }
    }

    pub fn is_integer(&self) -> bool {
        self.exponent >= 0
    }

    /// The value as an integer, if it is one.
    pub fn to_bigint(&self) -> Option<BigInt> {
        if self.exponent < 0 {
            return None;
        }
        Some(&self.mantissa << self.exponent as usize)
    }

    /// Number of bits in the (odd) mantissa magnitude; 0 for zero.
    pub fn mantissa_bits(&self) -> u64 {
        self.mantissa.bits()
    }

    /// Multiplication by `2^k`, for any integer `k`.
    pub fn scale_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self { mantissa: self.mantissa.clone(), exponent: self.exponent + k }
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        Self::normalized(&self.mantissa * k, self.exponent)
    }

    pub fn mul_u64(&self, k: u64) -> Self {
        Self::normalized(&self.mantissa * k, self.exponent)
    }

    /// Division by an arbitrary integer, defined only when the divisor is a
    /// power of two.
    pub fn div_pow2_int(&self, divisor: &BigInt) -> Result<Self, Error> {
        let d = divisor.abs();
        if d.is_zero() || d.magnitude().count_ones() != 1 {
            return Err(Error::NonDyadic(format!("division by {divisor}")));
        }
        let k = d.trailing_zeros().unwrap_or(0) as i64;
        let q = self.scale_pow2(-k);
        Ok(if divisor.is_negative() { -q } else { q })
    }

    /// Lossy conversion for reporting only.
    pub fn to_f64(&self) -> f64 {
        let m = self.mantissa.to_f64().unwrap_or(f64::NAN);
        if self.exponent > i32::MAX as i64 || self.exponent < i32::MIN as i64 {
            return if self.is_zero() { 0.0 } else { m * f64::INFINITY };
        }
        m * 2f64.powi(self.exponent as i32)
    }

    fn aligned(a: &Self, b: &Self) -> (BigInt, BigInt, i64) {
        let e = a.exponent.min(b.exponent);
        let ma = &a.mantissa << (a.exponent - e) as usize;
        let mb = &b.mantissa << (b.exponent - e) as usize;
        (ma, mb, e)
    }
}

impl Default for Dyadic {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Dyadic {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<i32> for Dyadic {
    fn from(v: i32) -> Self {
        Self::from_int(v as i64)
    }
}

impl From<u64> for Dyadic {
    fn from(v: u64) -> Self {
        Self::new(v, 0)
    }
}

impl From<BigInt> for Dyadic {
    fn from(v: BigInt) -> Self {
        Self::from_bigint(v)
    }
}

impl<'a> Add<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &'a Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (a, b, e) = Dyadic::aligned(self, rhs);
        Dyadic::normalized(a + b, e)
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        &self + &rhs
    }
}

impl AddAssign<&Dyadic> for Dyadic {
    fn add_assign(&mut self, rhs: &Dyadic) {
        *self = &*self + rhs;
    }
}

impl<'a> Sub<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &'a Dyadic) -> Dyadic {
        if rhs.is_zero() {
            return self.clone();
        }
        let (a, b, e) = Dyadic::aligned(self, rhs);
        Dyadic::normalized(a - b, e)
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        &self - &rhs
    }
}

impl<'a> Mul<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &'a Dyadic) -> Dyadic {
        if self.is_zero() || rhs.is_zero() {
            return Dyadic::zero();
        }
        // product of odd mantissas is odd, so no renormalization is needed
        Dyadic { mantissa: &self.mantissa * &rhs.mantissa, exponent: self.exponent + rhs.exponent }
    }
}

impl Mul for Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: Dyadic) -> Dyadic {
        &self * &rhs
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { mantissa: -self.mantissa, exponent: self.exponent }
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { mantissa: -&self.mantissa, exponent: self.exponent }
    }
}

impl Sum for Dyadic {
    fn sum<I: Iterator<Item = Dyadic>>(iter: I) -> Self {
        iter.fold(Dyadic::zero(), |acc, x| &acc + &x)
    }
}

impl<'a> Sum<&'a Dyadic> for Dyadic {
    fn sum<I: Iterator<Item = &'a Dyadic>>(iter: I) -> Self {
        iter.fold(Dyadic::zero(), |acc, x| &acc + x)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.signum(), other.signum()) {
            (a, b) if a != b => a.cmp(&b),
            _ => {
                let (a, b, _) = Dyadic::aligned(self, other);
                a.cmp(&b)
            }
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Renders as an exact fraction: `-3`, `7/8`, `23/8`.
impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent >= 0 {
            write!(f, "{}", &self.mantissa << self.exponent as usize)
        } else {
            let den = BigInt::one() << (-self.exponent) as usize;
            write!(f, "{}/{}", self.mantissa, den)
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dyadic({self})")
    }
}

/// Parses `a`, `a/b` (b a power of two) or `a*2^e`.
impl FromStr for Dyadic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::Parse(format!("malformed dyadic number {s:?}"));
        if let Some((m, e)) = s.split_once("*2^") {
            let m: BigInt = m.trim().parse().map_err(|_| bad())?;
            let e: i64 = e.trim().trim_matches(|c| c == '(' || c == ')').parse().map_err(|_| bad())?;
            return Ok(Dyadic::new(m, e));
        }
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            return Dyadic::from_bigint(n).div_pow2_int(&d);
        }
        let n: BigInt = s.parse().map_err(|_| bad())?;
        Ok(Dyadic::from_bigint(n))
    }
}

#[derive(Serialize, Deserialize)]
struct DyadicRepr {
    m: String,
    e: i64,
}

/// Serialized as `{"m": "<base-10 mantissa>", "e": <exponent>}`.
impl Serialize for Dyadic {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        DyadicRepr { m: self.mantissa.to_string(), e: self.exponent }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Dyadic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = DyadicRepr::deserialize(deserializer)?;
        let m: BigInt = repr
            .m
            .trim()
            .parse()
            .map_err(|_| serde::de::Error::custom(format!("malformed mantissa {:?}", repr.m)))?;
        Ok(Dyadic::new(m, repr.e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn small_arithmetic() {
        assert_eq!(d("1/2") + d("1/4"), d("3/4"));
        assert_eq!(d("7/8").mul_u64(4), d("7/2"));
        assert_eq!(d("7/8") * Dyadic::from_int(4), d("7/2"));
        assert_eq!(d("3/4") - d("3/4"), Dyadic::zero());
        assert_eq!(d("5/8").scale_pow2(3), Dyadic::from_int(5));
    }

    #[test]
    fn normalization_makes_equality_structural() {
        let a = Dyadic::new(12, -3);
        assert_eq!(a.mantissa(), &BigInt::from(3));
        assert_eq!(a.exponent(), -1);
        assert_eq!(a, d("3/2"));
        assert_eq!(Dyadic::new(0, 17), Dyadic::zero());
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(d("23/8").to_string(), "23/8");
        assert_eq!(d("-6").to_string(), "-6");
        assert_eq!(d("5*2^-3"), d("5/8"));
        assert!("1/3".parse::<Dyadic>().is_err());
        assert!("abc".parse::<Dyadic>().is_err());
    }

    #[test]
    fn general_division_is_rejected() {
        assert!(Dyadic::one().div_pow2_int(&BigInt::from(3)).is_err());
        assert_eq!(Dyadic::one().div_pow2_int(&BigInt::from(-4)).unwrap(), d("-1/4"));
    }

    #[test]
    fn mantissa_bits() {
        assert_eq!(d("7/8").mantissa_bits(), 3);
        assert_eq!(d("4").mantissa_bits(), 1);
        assert_eq!(Dyadic::zero().mantissa_bits(), 0);
    }

    #[test]
    fn json_round_trip() {
        let x = d("-115/8");
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"m":"-115","e":-3}"#);
        assert_eq!(serde_json::from_str::<Dyadic>(&s).unwrap(), x);
    }

    fn big_dyadic() -> impl Strategy<Value = Dyadic> {
        (prop::collection::vec(any::<u32>(), 1..=8), any::<bool>(), -300i64..300)
            .prop_map(|(digits, neg, e)| {
                let mag = num_bigint::BigUint::new(digits);
                let sign = if neg { Sign::Minus } else { Sign::Plus };
                Dyadic::new(BigInt::from_biguint(sign, mag), e)
            })
    }

    proptest! {
        #[test]
        fn add_then_sub_is_identity(a in big_dyadic(), b in big_dyadic()) {
            prop_assert_eq!(&(&a + &b) - &b, a);
        }

        #[test]
        fn order_agrees_with_subtraction(a in big_dyadic(), b in big_dyadic()) {
            let diff = &a - &b;
            prop_assert_eq!(a.cmp(&b), diff.signum().cmp(&0));
        }

        #[test]
        fn multiplication_distributes(a in big_dyadic(), b in big_dyadic(), c in big_dyadic()) {
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }
    }
}
