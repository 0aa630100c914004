//! Exact rational numbers over arbitrary-precision integers.

use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::iter::Sum;
use core::ops::{Add, Div, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FractionError {
    ZeroDenominator,
    Malformed(String),
}

impl fmt::Display for FractionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FractionError::ZeroDenominator => f.write_str("zero denominator"),
            FractionError::Malformed(s) => write!(f, "malformed fraction {s:?}"),
        }
    }
}

impl core::error::Error for FractionError {}

/// A reduced fraction with a strictly positive denominator.
///
/// Shares in the domain are non-negative, but intermediate results such as
/// `1 - fixed_total` may dip below zero, so the numerator is signed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Fraction {
    numer: BigInt,
    denom: BigInt,
}

impl Fraction {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, FractionError> {
        let numer = numer.into();
        let denom = denom.into();
        if denom.is_zero() {
            return Err(FractionError::ZeroDenominator);
        }
        Ok(Self::reduced(numer, denom))
    }

    fn reduced(mut numer: BigInt, mut denom: BigInt) -> Self {
        if denom.is_negative() {
            numer = -numer;
            denom = -denom;
        }
        let g = numer.gcd(&denom);
        if !g.is_zero() && !g.is_one() {
            numer /= &g;
            denom /= &g;
        }
        if numer.is_zero() {
            denom = BigInt::one();
        }
        Fraction { numer, denom }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Fraction {
            numer: n.into(),
            denom: BigInt::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn numer(&self) -> &BigInt {
        &self.numer
    }

    pub fn denom(&self) -> &BigInt {
        &self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.numer.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.denom.is_one()
    }

    pub fn recip(&self) -> Result<Self, FractionError> {
        Fraction::new(self.denom.clone(), self.numer.clone())
    }

    pub fn abs(&self) -> Self {
        Fraction {
            numer: self.numer.abs(),
            denom: self.denom.clone(),
        }
    }

    /// Multiply by an integer.
    pub fn scale(&self, k: impl Into<BigInt>) -> Self {
        Self::reduced(&self.numer * k.into(), self.denom.clone())
    }

    /// Integer quotient, if the value is integral.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.numer.clone())
    }

    /// Round to the nearest integer, ties to even.
    pub fn round_half_even(&self) -> BigInt {
        let (q, r) = self.numer.div_mod_floor(&self.denom);
        let twice = &r * 2u8;
        match twice.cmp(&self.denom) {
            Ordering::Less => q,
            Ordering::Greater => q + 1u8,
            Ordering::Equal => {
                if q.is_even() {
                    q
                } else {
                    q + 1u8
                }
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        match (self.numer.to_f64(), self.denom.to_f64()) {
            (Some(n), Some(d)) if d.is_finite() && n.is_finite() => n / d,
            _ => {
                // Scale down both sides until they fit.
                let shift = self
                    .denom
                    .bits()
                    .max(self.numer.bits())
                    .saturating_sub(1000);
                let n = (&self.numer >> shift).to_f64().unwrap_or(0.0);
                let d = (&self.denom >> shift).to_f64().unwrap_or(1.0);
                n / d
            }
        }
    }

    /// Render as `n/d` over the requested denominator, which must be a
    /// multiple of the reduced denominator.
    pub fn over(&self, denominator: &BigUint) -> Option<String> {
        let target = BigInt::from_biguint(Sign::Plus, denominator.clone());
        if target.is_zero() {
            return None;
        }
        let (factor, rem) = target.div_rem(&self.denom);
        if !rem.is_zero() {
            return None;
        }
        Some(alloc::format!("{}/{}", &self.numer * factor, target))
    }
}

impl Default for Fraction {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Debug for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer, self.denom)
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer, self.denom)
    }
}

impl FromStr for Fraction {
    type Err = FractionError;

    /// Accepts `n/d`, a bare integer, ASCII or Arabic-Indic digits, and
    /// the Arabic fraction slash.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let cleaned: String = s
            .trim()
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '\u{0660}'..='\u{0669}' => char::from(b'0' + (c as u32 - 0x0660) as u8),
                '\u{06F0}'..='\u{06F9}' => char::from(b'0' + (c as u32 - 0x06F0) as u8),
                '\u{2044}' | '\u{2215}' | '\u{066D}' => '/',
                other => other,
            })
            .collect();
        let malformed = || FractionError::Malformed(s.to_string());
        let parse_int = |t: &str| -> Result<BigInt, FractionError> {
            if t.is_empty()
                || !t
                    .trim_start_matches('-')
                    .chars()
                    .all(|c| c.is_ascii_digit())
            {
                return Err(malformed());
            }
            t.parse::<BigInt>().map_err(|_| malformed())
        };
        match cleaned.split_once('/') {
            Some((n, d)) => Fraction::new(parse_int(n)?, parse_int(d)?),
            None => Ok(Fraction::from_integer(parse_int(&cleaned)?)),
        }
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.numer * &other.denom).cmp(&(&other.numer * &self.denom))
    }
}

impl Add for &Fraction {
    type Output = Fraction;
    fn add(self, rhs: &Fraction) -> Fraction {
        Fraction::reduced(
            &self.numer * &rhs.denom + &rhs.numer * &self.denom,
            &self.denom * &rhs.denom,
        )
    }
}

impl Sub for &Fraction {
    type Output = Fraction;
    fn sub(self, rhs: &Fraction) -> Fraction {
        Fraction::reduced(
            &self.numer * &rhs.denom - &rhs.numer * &self.denom,
            &self.denom * &rhs.denom,
        )
    }
}

impl Mul for &Fraction {
    type Output = Fraction;
    fn mul(self, rhs: &Fraction) -> Fraction {
        Fraction::reduced(&self.numer * &rhs.numer, &self.denom * &rhs.denom)
    }
}

/// Panics on division by zero, like integer division.
impl Div for &Fraction {
    type Output = Fraction;
    fn div(self, rhs: &Fraction) -> Fraction {
        assert!(!rhs.is_zero(), "fraction division by zero");
        Fraction::reduced(&self.numer * &rhs.denom, &self.denom * &rhs.numer)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Fraction {
            type Output = Fraction;
            fn $m(self, rhs: Fraction) -> Fraction { (&self).$m(&rhs) }
        }
        impl $tr<&Fraction> for Fraction {
            type Output = Fraction;
            fn $m(self, rhs: &Fraction) -> Fraction { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Fraction {
    type Output = Fraction;
    fn neg(self) -> Fraction {
        Fraction {
            numer: -self.numer,
            denom: self.denom,
        }
    }
}

impl Sum for Fraction {
    fn sum<I: Iterator<Item = Fraction>>(iter: I) -> Fraction {
        iter.fold(Fraction::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Fraction> for Fraction {
    fn sum<I: Iterator<Item = &'a Fraction>>(iter: I) -> Fraction {
        iter.fold(Fraction::zero(), |acc, x| acc + x)
    }
}

impl serde::Serialize for Fraction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Fraction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Least common multiple of the denominators of `fractions` (1 for none).
pub fn lcm_of_denominators<'a>(fractions: impl IntoIterator<Item = &'a Fraction>) -> BigInt {
    fractions
        .into_iter()
        .fold(BigInt::one(), |acc, f| acc.lcm(f.denom()))
}

/// A percentage held as an exact decimal.
///
/// Values computed by the solver are rounded half-to-even to two decimals;
/// parsed values keep whatever precision the text carried.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Percentage(Fraction);

impl Percentage {
    /// `share * 100` rounded half-to-even to two decimal places.
    pub fn from_share(share: &Fraction) -> Self {
        let hundredths = share.scale(10_000).round_half_even();
        Percentage(Fraction::reduced(hundredths, BigInt::from(100)))
    }

    pub fn value(&self) -> &Fraction {
        &self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    /// Parse `"25"`, `"25.0"`, `"25.0%"` or `"٪25"`.
    pub fn parse(text: &str) -> Option<Self> {
        let t = text
            .trim()
            .trim_end_matches(['%', '\u{066A}'])
            .trim_start_matches('\u{066A}')
            .trim();
        let t: String = t
            .chars()
            .map(|c| match c {
                '\u{0660}'..='\u{0669}' => char::from(b'0' + (c as u32 - 0x0660) as u8),
                '\u{066B}' => '.',
                other => other,
            })
            .collect();
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t.as_str()),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        if !int_part
            .chars()
            .chain(frac_part.chars())
            .all(|c| c.is_ascii_digit())
        {
            return None;
        }
        let digits = alloc::format!("{int_part}{frac_part}");
        let numer: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().ok()?
        };
        let denom = num_traits::pow(BigInt::from(10), frac_part.len());
        let value = Fraction::reduced(if neg { -numer } else { numer }, denom);
        Some(Percentage(value))
    }

    /// Two-decimal rendering with a trailing percent sign.
    pub fn render(&self) -> String {
        alloc::format!("{self}%")
    }
}

impl fmt::Display for Percentage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hundredths = self.0.scale(100).round_half_even();
        let neg = hundredths.is_negative();
        let abs = hundredths.abs();
        let (whole, cents) = abs.div_rem(&BigInt::from(100));
        write!(
            f,
            "{}{}.{:02}",
            if neg { "-" } else { "" },
            whole,
            cents.to_u32().unwrap_or(0)
        )
    }
}

impl fmt::Debug for Percentage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}%")
    }
}
