use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::laurent::LaurentPoly;
use super::rational::{parse_rational, rational_to_f64, render_f64, render_rational};
use crate::error::{Error, Result};

/// A value from one of the three scalar worlds. Arithmetic between
/// different variants is refused rather than coerced.
#[derive(Clone, PartialEq, Debug)]
pub enum RingScalar {
    Rational(BigRational),
    Laurent(LaurentPoly),
    Float(f64),
}

/// Which [`RingScalar`] variant a textual value should be parsed into.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ScalarKind {
    Rational,
    Laurent,
    Float,
}

impl RingScalar {
    pub fn kind(&self) -> ScalarKind {
        match self {
            RingScalar::Rational(_) => ScalarKind::Rational,
            RingScalar::Laurent(_) => ScalarKind::Laurent,
            RingScalar::Float(_) => ScalarKind::Float,
        }
    }

    fn variant_name(&self) -> &'static str {
        match self {
            RingScalar::Rational(_) => "rational",
            RingScalar::Laurent(_) => "laurent",
            RingScalar::Float(_) => "float",
        }
    }

    pub fn zero_like(&self) -> RingScalar {
        match self {
            RingScalar::Rational(_) => RingScalar::Rational(BigRational::zero()),
            RingScalar::Laurent(_) => RingScalar::Laurent(LaurentPoly::zero()),
            RingScalar::Float(_) => RingScalar::Float(0.0),
        }
    }

    pub fn one_like(&self) -> RingScalar {
        match self {
            RingScalar::Rational(_) => RingScalar::Rational(BigRational::one()),
            RingScalar::Laurent(_) => RingScalar::Laurent(LaurentPoly::one()),
            RingScalar::Float(_) => RingScalar::Float(1.0),
        }
    }

    /// Multiplies by a rational constant, staying in the same variant.
    pub fn scale(&self, c: &BigRational) -> RingScalar {
        match self {
            RingScalar::Rational(r) => RingScalar::Rational(r * c),
            RingScalar::Laurent(p) => RingScalar::Laurent(p.scale(c)),
            RingScalar::Float(x) => RingScalar::Float(x * rational_to_f64(c)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RingScalar::Rational(r) => r.is_zero(),
            RingScalar::Laurent(p) => p.is_zero(),
            RingScalar::Float(x) => *x == 0.0,
        }
    }

    fn mixed(&self, other: &RingScalar) -> Error {
        Error::MixedVariants(self.variant_name(), other.variant_name())
    }

    pub fn try_add(&self, other: &RingScalar) -> Result<RingScalar> {
        Ok(match (self, other) {
            (RingScalar::Rational(a), RingScalar::Rational(b)) => RingScalar::Rational(a + b),
            (RingScalar::Laurent(a), RingScalar::Laurent(b)) => RingScalar::Laurent(a + b),
            (RingScalar::Float(a), RingScalar::Float(b)) => RingScalar::Float(a + b),
            _ => return Err(self.mixed(other)),
        })
    }

    pub fn try_sub(&self, other: &RingScalar) -> Result<RingScalar> {
        Ok(match (self, other) {
            (RingScalar::Rational(a), RingScalar::Rational(b)) => RingScalar::Rational(a - b),
            (RingScalar::Laurent(a), RingScalar::Laurent(b)) => RingScalar::Laurent(a - b),
            (RingScalar::Float(a), RingScalar::Float(b)) => RingScalar::Float(a - b),
            _ => return Err(self.mixed(other)),
        })
    }

    pub fn try_mul(&self, other: &RingScalar) -> Result<RingScalar> {
        Ok(match (self, other) {
            (RingScalar::Rational(a), RingScalar::Rational(b)) => RingScalar::Rational(a * b),
            (RingScalar::Laurent(a), RingScalar::Laurent(b)) => RingScalar::Laurent(a * b),
            (RingScalar::Float(a), RingScalar::Float(b)) => RingScalar::Float(a * b),
            _ => return Err(self.mixed(other)),
        })
    }

    /// Exact quotient for the exact variants, plain division for floats.
    pub fn try_div(&self, other: &RingScalar) -> Result<RingScalar> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match (self, other) {
            (RingScalar::Rational(a), RingScalar::Rational(b)) => RingScalar::Rational(a / b),
            (RingScalar::Laurent(a), RingScalar::Laurent(b)) => RingScalar::Laurent(a.exact_div(b)?),
            (RingScalar::Float(a), RingScalar::Float(b)) => RingScalar::Float(a / b),
            _ => return Err(self.mixed(other)),
        })
    }

    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        match self {
            RingScalar::Laurent(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            RingScalar::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            RingScalar::Float(x) => Some(*x),
            _ => None,
        }
    }

    /// Parses the canonical rendering of a value of the given kind.
    pub fn parse(s: &str, kind: ScalarKind) -> Result<RingScalar> {
        Ok(match kind {
            ScalarKind::Rational => RingScalar::Rational(parse_rational(s)?),
            ScalarKind::Laurent => RingScalar::Laurent(s.parse()?),
            ScalarKind::Float => RingScalar::Float(
                s.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("invalid float `{s}`")))?,
            ),
        })
    }
}

impl fmt::Display for RingScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingScalar::Rational(r) => f.write_str(&render_rational(r)),
            RingScalar::Laurent(p) => write!(f, "{p}"),
            RingScalar::Float(x) => f.write_str(&render_f64(*x)),
        }
    }
}
