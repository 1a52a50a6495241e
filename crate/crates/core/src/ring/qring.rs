//! The scalar abstraction shared by every algorithm.
//!
//! A [`QRing`] is a ring *object*: it owns the meaning of `q` (a formal
//! variable, an exact rational, or a float) and performs arithmetic on its
//! element type. All q-combinatorial algorithms are written once against
//! this trait.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::laurent::{pow_i64, q_monomial, LaurentPoly};
use super::rational::{parse_rational, rational_to_f64, render_rational};
use super::scalar::{RingScalar, ScalarKind};
use crate::error::{Error, Result};

pub trait QRing: Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_rational(&self, c: &BigRational) -> Self::Elem;
    /// Image of a Laurent polynomial under `q ↦ self.q()`.
    fn from_laurent(&self, p: &LaurentPoly) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Exact division (or float division).
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    /// `q^e` for any integer `e`.
    fn q_pow(&self, e: i64) -> Self::Elem;
    /// Equality used by identity checks: exact for exact rings, relative
    /// tolerance for floats.
    fn same(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn to_scalar(&self, a: &Self::Elem) -> RingScalar;
    fn from_scalar(&self, s: &RingScalar) -> Result<Self::Elem>;
    fn is_exact(&self) -> bool;

    fn from_int(&self, n: i64) -> Self::Elem {
        self.from_rational(&BigRational::from_integer(n.into()))
    }

    fn pow(&self, a: &Self::Elem, mut n: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn sign(&self, a: &Self::Elem, negative: bool) -> Self::Elem {
        if negative {
            self.neg(a)
        } else {
            a.clone()
        }
    }

    /// The q-integer `[n]_q = 1 + q + ... + q^(n-1)`.
    fn q_int(&self, n: u64) -> Self::Elem {
        self.from_laurent(&crate::qcore::q_integer(n))
    }

    /// `m [i]_q + r`, the weight attached to index `i`.
    fn weight(&self, m: &Self::Elem, r: &Self::Elem, i: u64) -> Self::Elem {
        self.add(&self.mul(m, &self.q_int(i)), r)
    }

    fn sum<I: IntoIterator<Item = Self::Elem>>(&self, it: I) -> Self::Elem {
        it.into_iter().fold(self.zero(), |acc, x| self.add(&acc, &x))
    }

    fn product<I: IntoIterator<Item = Self::Elem>>(&self, it: I) -> Self::Elem {
        it.into_iter().fold(self.one(), |acc, x| self.mul(&acc, &x))
    }
}

/// `q` kept as a formal variable; elements are Laurent polynomials.
#[derive(Clone, Copy, Debug, Default)]
pub struct SymbolicQ;

impl QRing for SymbolicQ {
    type Elem = LaurentPoly;

    fn zero(&self) -> LaurentPoly {
        LaurentPoly::zero()
    }
    fn one(&self) -> LaurentPoly {
        LaurentPoly::one()
    }
    fn from_rational(&self, c: &BigRational) -> LaurentPoly {
        LaurentPoly::constant(c.clone())
    }
    fn from_laurent(&self, p: &LaurentPoly) -> LaurentPoly {
        p.clone()
    }
    fn add(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        a + b
    }
    fn sub(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        a - b
    }
    fn mul(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        a * b
    }
    fn neg(&self, a: &LaurentPoly) -> LaurentPoly {
        -a
    }
    fn is_zero(&self, a: &LaurentPoly) -> bool {
        a.is_zero()
    }
    fn div(&self, a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly> {
        a.exact_div(b)
    }
    fn q_pow(&self, e: i64) -> LaurentPoly {
        q_monomial(e)
    }
    fn same(&self, a: &LaurentPoly, b: &LaurentPoly) -> bool {
        a == b
    }
    fn to_scalar(&self, a: &LaurentPoly) -> RingScalar {
        RingScalar::Laurent(a.clone())
    }
    fn from_scalar(&self, s: &RingScalar) -> Result<LaurentPoly> {
        match s {
            RingScalar::Laurent(p) => Ok(p.clone()),
            RingScalar::Rational(_) => Err(Error::MixedVariants("laurent", "rational")),
            RingScalar::Float(_) => Err(Error::MixedVariants("laurent", "float")),
        }
    }
    fn is_exact(&self) -> bool {
        true
    }
    fn pow(&self, a: &LaurentPoly, n: u32) -> LaurentPoly {
        a.pow(n)
    }
}

/// `q` fixed to a nonzero rational.
#[derive(Clone, Debug)]
pub struct RationalQ {
    q0: BigRational,
}

impl RationalQ {
    pub fn new(q0: BigRational) -> Result<Self> {
        if q0.is_zero() {
            return Err(Error::Domain("q0 must be nonzero".into()));
        }
        Ok(Self { q0 })
    }

    pub fn q0(&self) -> &BigRational {
        &self.q0
    }
}

impl QRing for RationalQ {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_rational(&self, c: &BigRational) -> BigRational {
        c.clone()
    }
    fn from_laurent(&self, p: &LaurentPoly) -> BigRational {
        p.eval(&self.q0).expect("q0 is nonzero")
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn div(&self, a: &BigRational, b: &BigRational) -> Result<BigRational> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(a / b)
    }
    fn q_pow(&self, e: i64) -> BigRational {
        pow_i64(&self.q0, e)
    }
    fn same(&self, a: &BigRational, b: &BigRational) -> bool {
        a == b
    }
    fn to_scalar(&self, a: &BigRational) -> RingScalar {
        RingScalar::Rational(a.clone())
    }
    fn from_scalar(&self, s: &RingScalar) -> Result<BigRational> {
        match s {
            RingScalar::Rational(r) => Ok(r.clone()),
            RingScalar::Laurent(_) => Err(Error::MixedVariants("rational", "laurent")),
            RingScalar::Float(_) => Err(Error::MixedVariants("rational", "float")),
        }
    }
    fn is_exact(&self) -> bool {
        true
    }
}

/// `q` fixed to a float; equality is judged with a relative tolerance.
#[derive(Clone, Debug)]
pub struct FloatQ {
    q0: f64,
    tol: f64,
}

impl FloatQ {
    pub const DEFAULT_TOL: f64 = 1e-9;

    pub fn new(q0: f64) -> Result<Self> {
        Self::with_tol(q0, Self::DEFAULT_TOL)
    }

    pub fn with_tol(q0: f64, tol: f64) -> Result<Self> {
        if !q0.is_finite() || q0 == 0.0 {
            return Err(Error::Domain(format!("float q0 must be finite and nonzero, got {q0}")));
        }
        Ok(Self { q0, tol })
    }

    pub fn q0(&self) -> f64 {
        self.q0
    }
}

impl QRing for FloatQ {
    type Elem = f64;

    fn zero(&self) -> f64 {
        0.0
    }
    fn one(&self) -> f64 {
        1.0
    }
    fn from_rational(&self, c: &BigRational) -> f64 {
        rational_to_f64(c)
    }
    fn from_laurent(&self, p: &LaurentPoly) -> f64 {
        p.eval_f64(self.q0)
    }
    fn add(&self, a: &f64, b: &f64) -> f64 {
        a + b
    }
    fn sub(&self, a: &f64, b: &f64) -> f64 {
        a - b
    }
    fn mul(&self, a: &f64, b: &f64) -> f64 {
        a * b
    }
    fn neg(&self, a: &f64) -> f64 {
        -a
    }
    fn is_zero(&self, a: &f64) -> bool {
        *a == 0.0
    }
    fn div(&self, a: &f64, b: &f64) -> Result<f64> {
        if *b == 0.0 {
            return Err(Error::DivisionByZero);
        }
        Ok(a / b)
    }
    fn q_pow(&self, e: i64) -> f64 {
        self.q0.powi(e as i32)
    }
    fn same(&self, a: &f64, b: &f64) -> bool {
        (a - b).abs() <= self.tol * b.abs().max(1.0)
    }
    fn to_scalar(&self, a: &f64) -> RingScalar {
        RingScalar::Float(*a)
    }
    fn from_scalar(&self, s: &RingScalar) -> Result<f64> {
        match s {
            RingScalar::Float(x) => Ok(*x),
            RingScalar::Rational(_) => Err(Error::MixedVariants("float", "rational")),
            RingScalar::Laurent(_) => Err(Error::MixedVariants("float", "laurent")),
        }
    }
    fn is_exact(&self) -> bool {
        false
    }
}

/// How `q` is interpreted for a computation.
#[derive(Clone, Debug, PartialEq)]
pub enum QMode {
    Symbolic,
    Rational(BigRational),
    Float(f64),
}

impl QMode {
    /// `symbolic` or a rational literal.
    pub fn parse_exact(s: &str) -> Result<QMode> {
        if s.trim() == "symbolic" {
            return Ok(QMode::Symbolic);
        }
        let q0 = parse_rational(s)?;
        if q0.is_zero() {
            return Err(Error::Domain("q0 must be nonzero".into()));
        }
        Ok(QMode::Rational(q0))
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            QMode::Symbolic => Ok(()),
            QMode::Rational(q0) => RationalQ::new(q0.clone()).map(|_| ()),
            QMode::Float(q0) => FloatQ::new(*q0).map(|_| ()),
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, QMode::Float(_))
    }

    pub fn scalar_kind(&self) -> ScalarKind {
        match self {
            QMode::Symbolic => ScalarKind::Laurent,
            QMode::Rational(_) => ScalarKind::Rational,
            QMode::Float(_) => ScalarKind::Float,
        }
    }

    /// Short label used in reports: `symbolic`, `q=1/2`, `q=0.5`.
    pub fn label(&self) -> String {
        match self {
            QMode::Symbolic => "symbolic".to_string(),
            QMode::Rational(q0) => format!("q={}", render_rational(q0)),
            QMode::Float(q0) => format!("q={q0}"),
        }
    }
}

impl fmt::Display for QMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Runs `$body` with `$ring` bound to the concrete ring for `$mode`.
/// Every arm must produce the same type, so bodies usually end by converting
/// through [`QRing::to_scalar`].
#[macro_export]
macro_rules! with_ring {
    ($mode:expr, |$ring:ident| $body:expr) => {
        match $mode {
            $crate::ring::QMode::Symbolic => {
                let $ring = $crate::ring::SymbolicQ;
                $body
            }
            $crate::ring::QMode::Rational(q0) => {
                let $ring = $crate::ring::RationalQ::new(q0.clone())?;
                $body
            }
            $crate::ring::QMode::Float(q0) => {
                let $ring = $crate::ring::FloatQ::new(*q0)?;
                $body
            }
        }
    };
}
