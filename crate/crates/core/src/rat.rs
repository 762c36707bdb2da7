//! Exact rational helpers.
//!
//! Every probability in the crate is a [`Rat`]: an arbitrary-precision
//! rational kept in lowest terms with a positive denominator.

use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number, always in canonical reduced form.
pub type Rat = BigRational;

/// `numer / denom` as a reduced rational. Panics on a zero denominator.
pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn half() -> Rat {
    rat(1, 2)
}

/// Displays a rational as `p/q`, including `/1` for integers.
pub struct Frac<'a>(pub &'a Rat);

impl fmt::Display for Frac<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse `{0}` as a rational (expected p/q or an integer)")]
pub struct ParseRatError(pub alloc::string::String);

/// Parses `p/q` or a bare integer.
pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    let err = || ParseRatError(s.into());
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Rat::new(n, d))
        }
        None => BigInt::from_str(s).map(Rat::from_integer).map_err(|_| err()),
    }
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact comparison `r <= sqrt(s)` for `s >= 0`, by squaring.
pub fn le_sqrt(r: &Rat, s: &Rat) -> bool {
    !r.is_positive() || r * r <= *s
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Numerators of `values` scaled to the common denominator `denom`, as `i128`.
/// Returns `None` on overflow.
pub fn scaled_numerators<'a>(
    values: impl IntoIterator<Item = &'a Rat>,
    denom: &BigInt,
) -> Option<alloc::vec::Vec<i128>> {
    values
        .into_iter()
        .map(|r| (r.numer() * (denom / r.denom())).to_i128())
        .collect()
}

/// A number of the form `a + b·√d` with rational `a`, `b` and a square-free
/// radicand `d`. Used where threshold constants involve a single surd.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Surd {
    pub rational: Rat,
    pub coeff: Rat,
    pub radicand: u32,
}

impl Surd {
    pub fn new(rational: Rat, coeff: Rat, radicand: u32) -> Self {
        Surd {
            rational,
            coeff,
            radicand,
        }
    }

    pub fn from_rat(r: Rat, radicand: u32) -> Self {
        Surd::new(r, Rat::zero(), radicand)
    }

    pub fn scale(&self, k: &Rat) -> Self {
        Surd::new(&self.rational * k, &self.coeff * k, self.radicand)
    }

    pub fn add_rat(&self, k: &Rat) -> Self {
        Surd::new(&self.rational + k, self.coeff.clone(), self.radicand)
    }

    pub fn mul(&self, other: &Surd) -> Surd {
        assert_eq!(self.radicand, other.radicand, "mixed radicands");
        let d = Rat::from_integer(BigInt::from(self.radicand));
        Surd::new(
            &self.rational * &other.rational + &self.coeff * &other.coeff * d,
            &self.rational * &other.coeff + &self.coeff * &other.rational,
            self.radicand,
        )
    }

    pub fn square(&self) -> Surd {
        self.mul(self)
    }

    /// `Some(q)` if the surd part vanishes.
    pub fn as_rational(&self) -> Option<&Rat> {
        self.coeff.is_zero().then_some(&self.rational)
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.rational) + to_f64(&self.coeff) * libm::sqrt(self.radicand as f64)
    }

    /// Sign of the value, decided exactly.
    pub fn signum(&self) -> i32 {
        let sign = |r: &Rat| {
            if r.is_positive() {
                1
            } else if r.is_negative() {
                -1
            } else {
                0
            }
        };
        let (sa, sb) = (sign(&self.rational), sign(&self.coeff));
        if sa == sb || sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        // Opposite signs: compare a² with b²·d.
        let lhs = &self.rational * &self.rational;
        let rhs = &self.coeff * &self.coeff * Rat::from_integer(BigInt::from(self.radicand));
        match lhs.cmp(&rhs) {
            core::cmp::Ordering::Greater => sa,
            core::cmp::Ordering::Less => sb,
            core::cmp::Ordering::Equal => 0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn frac_always_shows_denominator() {
        assert_eq!(Frac(&int(4)).to_string(), "4/1");
        assert_eq!(Frac(&rat(6, -8)).to_string(), "-3/4");
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rat("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rat(" 2 ").unwrap(), int(2));
        assert_eq!(parse_rat("10/4").unwrap(), rat(5, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("0.5").is_err());
    }

    #[test]
    fn sqrt_comparison() {
        assert!(le_sqrt(&rat(2824, 1000), &int(8)));
        assert!(!le_sqrt(&rat(2832, 1000), &int(8)));
        assert!(le_sqrt(&int(-5), &int(0)));
    }

    #[test]
    fn surd_sign_and_square() {
        // 4√6/3 squared is 32/3
        let s = Surd::new(Rat::zero(), rat(4, 3), 6);
        assert_eq!(s.square().as_rational(), Some(&rat(32, 3)));
        // 3 - 2√2 > 0, 2 - 2√2 < 0
        assert_eq!(Surd::new(int(3), int(-2), 2).signum(), 1);
        assert_eq!(Surd::new(int(2), int(-2), 2).signum(), -1);
        assert_eq!(Surd::new(int(0), int(0), 2).signum(), 0);
    }
}
