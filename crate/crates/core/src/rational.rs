//! Exact fractions over `i64` with checked arithmetic.
//!
//! Every value is kept reduced with a positive denominator, so structural
//! equality coincides with numeric equality. Intermediate products are formed
//! in `i128`; a result that does not fit back into `i64` is reported as
//! [`Overflow`] instead of wrapping.

use std::cmp::Ordering;
use std::fmt;

/// Arithmetic left the representable range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("arithmetic overflow")]
pub struct Overflow;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i64,
    den: i64,
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };

    pub const fn from_int(value: i64) -> Self {
        Rational { num: value, den: 1 }
    }

    /// Builds `num / den` in lowest terms. Fails on a zero denominator or
    /// when the reduced value does not fit.
    pub fn new(num: i64, den: i64) -> Result<Self, Overflow> {
        Self::from_wide(num as i128, den as i128)
    }

    pub(crate) fn from_wide(num: i128, den: i128) -> Result<Self, Overflow> {
        if den == 0 {
            return Err(Overflow);
        }
        let (num, den) = if den < 0 {
            (num.checked_neg().ok_or(Overflow)?, den.checked_neg().ok_or(Overflow)?)
        } else {
            (num, den)
        };
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()).max(1) as i128;
        let num = i64::try_from(num / g).map_err(|_| Overflow)?;
        let den = i64::try_from(den / g).map_err(|_| Overflow)?;
        Ok(Rational { num, den })
    }

    pub fn numer(&self) -> i64 {
        self.num
    }

    pub fn denom(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn checked_add(self, rhs: Rational) -> Result<Rational, Overflow> {
        let num = self.num as i128 * rhs.den as i128 + rhs.num as i128 * self.den as i128;
        Self::from_wide(num, self.den as i128 * rhs.den as i128)
    }

    pub fn checked_sub(self, rhs: Rational) -> Result<Rational, Overflow> {
        let num = self.num as i128 * rhs.den as i128 - rhs.num as i128 * self.den as i128;
        Self::from_wide(num, self.den as i128 * rhs.den as i128)
    }

    pub fn checked_mul(self, rhs: Rational) -> Result<Rational, Overflow> {
        Self::from_wide(self.num as i128 * rhs.num as i128, self.den as i128 * rhs.den as i128)
    }

    pub fn checked_div(self, rhs: Rational) -> Result<Rational, Overflow> {
        Self::from_wide(self.num as i128 * rhs.den as i128, self.den as i128 * rhs.num as i128)
    }

    /// Decimal rendering rounded half away from zero.
    pub fn to_decimal(&self, places: u32) -> String {
        let scale = 10i128.pow(places);
        let num = self.num as i128 * scale;
        let den = self.den as i128;
        let mut q = num.abs() / den;
        if 2 * (num.abs() % den) >= den {
            q += 1;
        }
        let sign = if num < 0 && q != 0 { "-" } else { "" };
        let int = q / scale;
        let frac = q % scale;
        if places == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac:0width$}", width = places as usize)
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::ZERO
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::from_int(value)
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl std::str::FromStr for Rational {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let n: i64 = n.trim().parse().map_err(|e| format!("bad numerator: {e}"))?;
        let d: i64 = d.trim().parse().map_err(|e| format!("bad denominator: {e}"))?;
        Rational::new(n, d).map_err(|_| format!("invalid fraction {s}"))
    }
}
