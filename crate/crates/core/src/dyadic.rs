//! Exact dyadic rationals and big binomial coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Arbitrary-precision nonnegative integer.
pub type BigCount = BigUint;

/// `numerator / 2^exponent`, kept with an odd numerator (or zero over `2^0`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DyadicValue {
    numerator: BigUint,
    exponent: u32,
}

impl DyadicValue {
    pub fn new(numerator: BigUint, exponent: u32) -> Self {
        let mut value = DyadicValue {
            numerator,
            exponent,
        };
        value.reduce();
        value
    }

    pub fn zero() -> Self {
        DyadicValue {
            numerator: BigUint::zero(),
            exponent: 0,
        }
    }

    pub fn from_integer(n: impl Into<BigUint>) -> Self {
        Self::new(n.into(), 0)
    }

    /// `2^{-k}`.
    pub fn pow2_neg(k: u32) -> Self {
        DyadicValue {
            numerator: BigUint::one(),
            exponent: k,
        }
    }

    fn reduce(&mut self) {
        if self.numerator.is_zero() {
            self.exponent = 0;
            return;
        }
        let tz = self.numerator.trailing_zeros().unwrap_or(0);
        let shift = tz.min(u64::from(self.exponent));
        if shift > 0 {
            self.numerator >>= shift;
            self.exponent -= shift as u32;
        }
    }

    pub fn numerator(&self) -> &BigUint {
        &self.numerator
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Numerator rescaled to denominator `2^exponent` (`exponent` ≥ own exponent).
    fn scaled_to(&self, exponent: u32) -> BigUint {
        &self.numerator << (exponent - self.exponent)
    }

    /// `self - rhs`, or `None` when the result would be negative.
    pub fn checked_sub(&self, rhs: &DyadicValue) -> Option<DyadicValue> {
        let e = self.exponent.max(rhs.exponent);
        let (a, b) = (self.scaled_to(e), rhs.scaled_to(e));
        (a >= b).then(|| DyadicValue::new(a - b, e))
    }

    /// Multiply by a nonnegative integer.
    pub fn scale(&self, k: &BigUint) -> DyadicValue {
        DyadicValue::new(&self.numerator * k, self.exponent)
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.numerator.bits();
        // keep the mantissa within f64 range before dividing
        let drop = bits.saturating_sub(960);
        let mut value = (&self.numerator >> drop).to_f64().unwrap_or(f64::INFINITY);
        let mut exp = drop as i64 - i64::from(self.exponent);
        while exp < -1000 && value != 0.0 {
            value *= 2f64.powi(-1000);
            exp += 1000;
        }
        value * 2f64.powi(exp.clamp(-1000, 1000) as i32)
    }

    /// Exact decimal expansion; dyadic values always terminate.
    pub fn to_decimal_string(&self) -> String {
        if self.exponent == 0 {
            return self.numerator.to_string();
        }
        // n / 2^k = n * 5^k / 10^k
        let scaled = &self.numerator * BigUint::from(5u32).pow(self.exponent);
        let digits = scaled.to_string();
        let k = self.exponent as usize;
        let (int_part, frac_part) = if digits.len() > k {
            let (a, b) = digits.split_at(digits.len() - k);
            (a.to_string(), b.to_string())
        } else {
            (
                "0".to_string(),
                format!("{}{}", "0".repeat(k - digits.len()), digits),
            )
        };
        let frac = frac_part.trim_end_matches('0');
        if frac.is_empty() {
            int_part
        } else {
            format!("{int_part}.{frac}")
        }
    }

    /// Parses the `numerator/2^exponent` rendering produced by `Display`.
    pub fn parse_exact(s: &str) -> Option<DyadicValue> {
        let (num, exp) = s.split_once("/2^")?;
        Some(DyadicValue::new(num.parse().ok()?, exp.parse().ok()?))
    }
}

impl Default for DyadicValue {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for DyadicValue {
    type Output = DyadicValue;

    fn add(self, rhs: DyadicValue) -> DyadicValue {
        &self + &rhs
    }
}

impl Add<&DyadicValue> for &DyadicValue {
    type Output = DyadicValue;

    fn add(self, rhs: &DyadicValue) -> DyadicValue {
        let e = self.exponent.max(rhs.exponent);
        DyadicValue::new(self.scaled_to(e) + rhs.scaled_to(e), e)
    }
}

impl std::iter::Sum for DyadicValue {
    fn sum<I: Iterator<Item = DyadicValue>>(iter: I) -> Self {
        iter.fold(DyadicValue::zero(), |a, b| a + b)
    }
}

impl Ord for DyadicValue {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exponent.max(other.exponent);
        self.scaled_to(e).cmp(&other.scaled_to(e))
    }
}

impl PartialOrd for DyadicValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Renders as `numerator/2^exponent`.
impl fmt::Display for DyadicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.numerator, self.exponent)
    }
}

/// Exact `C(a, b)`; zero when `b > a`.
pub fn binomial(a: u64, b: u64) -> BigCount {
    if b > a {
        return BigUint::zero();
    }
    let k = b.min(a - b);
    let mut acc = BigUint::one();
    for i in 1..=k {
        // acc = C(a-k+i-1, i-1) here, so the division is exact
        acc *= a - k + i;
        acc /= i;
    }
    acc
}
