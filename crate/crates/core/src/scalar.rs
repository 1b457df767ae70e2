//! Exact scalar fields.
//!
//! Everything in this crate is generic over [`Field`], which any exact
//! commutative field type satisfies through a blanket impl. The default field
//! is [`GaussianRational`]: complex numbers whose real and imaginary parts are
//! arbitrary-precision reduced fractions.

use std::fmt::Debug;
use std::hash::Hash;
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, One, Zero};

use crate::error::{Error, Result};

/// An exact field. Equality must be exact equality of values.
pub trait Field: Clone + Debug + Eq + Hash + Num + Neg<Output = Self> {
    /// Embeds a machine integer.
    fn from_int(value: i64) -> Self {
        let mut acc = Self::zero();
        let unit = if value < 0 { -Self::one() } else { Self::one() };
        // Doubling keeps this logarithmic in |value|.
        let mut power = unit;
        let mut rest = value.unsigned_abs();
        while rest > 0 {
            if rest & 1 == 1 {
                acc = acc + power.clone();
            }
            power = power.clone() + power;
            rest >>= 1;
        }
        acc
    }

    /// `numer / denom` embedded in the field. Panics on a zero denominator.
    fn from_ratio(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Self::from_int(numer) / Self::from_int(denom)
    }
}

impl<T> Field for T where T: Clone + Debug + Eq + Hash + Num + Neg<Output = T> {}

/// Complex number with exact rational parts.
pub type GaussianRational = Complex<BigRational>;

/// `re + im·i` with integer parts.
pub fn gaussian(re: i64, im: i64) -> GaussianRational {
    Complex::new(
        BigRational::from_integer(BigInt::from(re)),
        BigRational::from_integer(BigInt::from(im)),
    )
}

/// Renders a Gaussian rational as `p/q+r/s i` without the space, dropping
/// zero parts: `0`, `3`, `-1/2`, `i`, `-2/3i`, `1/2+3/4i`, `1-i`.
pub fn format_gaussian(z: &GaussianRational) -> String {
    let im = match &z.im {
        v if v.is_zero() => return z.re.to_string(),
        v if v.is_one() => "i".to_string(),
        v if (-v.clone()).is_one() => "-i".to_string(),
        v => format!("{v}i"),
    };
    if z.re.is_zero() {
        im
    } else if im.starts_with('-') {
        format!("{}{im}", z.re)
    } else {
        format!("{}+{im}", z.re)
    }
}

/// Parses the format produced by [`format_gaussian`]. Whitespace is ignored
/// and a trailing `j` is accepted in place of `i`.
pub fn parse_gaussian(input: &str) -> Result<GaussianRational> {
    let fail = |reason: &str| Error::ParseScalar {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(fail("empty"));
    }
    let rational = |part: &str| -> Result<BigRational> {
        let part = part.strip_prefix('+').unwrap_or(part);
        let r = BigRational::from_str(part).map_err(|_| fail("bad rational"))?;
        Ok(r)
    };
    let Some(body) = s.strip_suffix('i').or_else(|| s.strip_suffix('j')) else {
        return Ok(Complex::new(rational(&s)?, BigRational::zero()));
    };
    // The last sign past position 0 separates the real part from the imaginary part.
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(_, c)| c == '+' || c == '-')
        .map(|(i, _)| i)
        .last();
    let (re_part, im_part) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("", body),
    };
    let re = if re_part.is_empty() {
        BigRational::zero()
    } else {
        rational(re_part)?
    };
    let im = match im_part {
        "" | "+" => BigRational::one(),
        "-" => -BigRational::one(),
        other => rational(other)?,
    };
    Ok(Complex::new(re, im))
}
