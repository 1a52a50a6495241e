//! Laurent polynomials in one formal variable `q` with exact rational
//! coefficients.
//!
//! A [`LaurentPoly`] is stored densely from its lowest to its highest
//! nonzero exponent. Leading and trailing zeros are trimmed after every
//! operation, so two polynomials are equal exactly when their fields are.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::rational::{parse_rational, render_rational};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    /// Exponent of `coeffs[0]`. Zero for the zero polynomial.
    low: i64,
    /// First and last entries are nonzero; empty for zero.
    coeffs: Vec<BigRational>,
}

/// The single-term polynomial `q^e`.
pub fn q_monomial(e: i64) -> LaurentPoly {
    LaurentPoly::monomial(BigRational::one(), e)
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: BigRational, e: i64) -> Self {
        Self::from_dense(e, vec![c])
    }

    /// Builds from `coeffs[i]` being the coefficient of `q^(low + i)`.
    pub fn from_dense(low: i64, coeffs: Vec<BigRational>) -> Self {
        let mut p = Self { low, coeffs };
        p.normalize();
        p
    }

    /// Builds from arbitrary `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (i64, BigRational)>>(terms: I) -> Self {
        let terms: Vec<_> = terms.into_iter().collect();
        let Some(low) = terms.iter().map(|t| t.0).min() else {
            return Self::zero();
        };
        let high = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![BigRational::zero(); (high - low + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - low) as usize] += c;
        }
        Self::from_dense(low, coeffs)
    }

    fn normalize(&mut self) {
        let Some(first) = self.coeffs.iter().position(|c| !c.is_zero()) else {
            self.coeffs.clear();
            self.low = 0;
            return;
        };
        let last = self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
        self.coeffs.truncate(last + 1);
        self.coeffs.drain(..first);
        self.low += first as i64;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn min_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, e: i64) -> BigRational {
        let i = e - self.low;
        if i < 0 || i as usize >= self.coeffs.len() {
            BigRational::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            low: self.low + e,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            low: self.low,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact value at `q = q0`.
    pub fn eval(&self, q0: &BigRational) -> Result<BigRational> {
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        if q0.is_zero() && self.low < 0 {
            return Err(Error::EvalAtZero);
        }
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * q0 + c;
        }
        Ok(acc * pow_i64(q0, self.low))
    }

    /// Float value at `q = q0`, computed with the coefficients rounded.
    pub fn eval_f64(&self, q0: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * q0 + super::rational::rational_to_f64(c);
        }
        acc * q0.powi(self.low as i32)
    }

    /// Exact quotient `self / divisor`, if one exists as a Laurent polynomial.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        // Both dense vectors start with a nonzero constant term, so `q` (a
        // unit) is factored out and ordinary polynomial division decides.
        let d = &divisor.coeffs;
        let mut rem = self.coeffs.clone();
        if rem.len() < d.len() {
            return Err(Error::InexactDivision);
        }
        let lead = d.last().unwrap();
        let qlen = rem.len() - d.len() + 1;
        let mut quot = vec![BigRational::zero(); qlen];
        for i in (0..qlen).rev() {
            let top = &rem[i + d.len() - 1];
            if top.is_zero() {
                continue;
            }
            let f = top / lead;
            for (j, dj) in d.iter().enumerate() {
                rem[i + j] -= &f * dj;
            }
            quot[i] = f;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision);
        }
        Ok(Self::from_dense(self.low - divisor.low, quot))
    }
}

/// Exact quotient `a / b` as a free function.
pub fn laurent_exact_div(a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly> {
    a.exact_div(b)
}

/// Exact evaluation `p(q0)`.
pub fn laurent_eval(p: &LaurentPoly, q0: &BigRational) -> Result<BigRational> {
    p.eval(q0)
}

pub(crate) fn pow_i64(x: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

fn add_scaled(a: &LaurentPoly, b: &LaurentPoly, negate_b: bool) -> LaurentPoly {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate_b { -b } else { b.clone() };
    }
    let low = a.low.min(b.low);
    let high = a.max_exp().unwrap().max(b.max_exp().unwrap());
    let mut coeffs = vec![BigRational::zero(); (high - low + 1) as usize];
    for (i, c) in a.coeffs.iter().enumerate() {
        coeffs[(a.low - low) as usize + i] += c;
    }
    for (i, c) in b.coeffs.iter().enumerate() {
        let slot = &mut coeffs[(b.low - low) as usize + i];
        if negate_b {
            *slot -= c;
        } else {
            *slot += c;
        }
    }
    LaurentPoly::from_dense(low, coeffs)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        add_scaled(self, rhs, false)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        add_scaled(self, rhs, true)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        LaurentPoly::from_dense(self.low + rhs.low, coeffs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident::$f:ident),*) => {$(
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$f(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl From<BigRational> for LaurentPoly {
    fn from(c: BigRational) -> Self {
        Self::constant(c)
    }
}

impl fmt::Display for LaurentPoly {
    /// `-1*q^-1 + 2 + 1/3*q^2`; the zero polynomial renders as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            f.write_str(&render_rational(c))?;
            if e != 0 {
                write!(f, "*q^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Parses the canonical rendering. Terms may come in any order.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut terms = Vec::new();
        for term in s.split(" + ") {
            let (c, e) = match term.split_once("*q^") {
                Some((c, e)) => {
                    let e: i64 = e
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{term}`")))?;
                    (c, e)
                }
                None => (term, 0),
            };
            let c = parse_rational(c)?;
            if c.is_zero() {
                return Err(Error::Parse(format!("zero coefficient in `{term}`")));
            }
            terms.push((e, c));
        }
        Ok(Self::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rational::{rat, ratio};

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, rat(c))))
    }

    #[test]
    fn monomials() {
        assert!(q_monomial(0).is_one());
        assert_eq!(q_monomial(-1).min_exp(), Some(-1));
        assert!((&q_monomial(3) * &q_monomial(-3)).is_one());
    }

    #[test]
    fn zero_is_canonical() {
        let p = poly(&[(2, 1), (5, -1)]);
        let z = &p - &p;
        assert_eq!(z, LaurentPoly::zero());
        assert_eq!(poly(&[(4, 0)]), LaurentPoly::zero());
    }

    #[test]
    fn exact_division_examples() {
        let a = poly(&[(2, 1), (0, -1)]);
        let b = poly(&[(1, 1), (0, -1)]);
        assert_eq!(a.exact_div(&b).unwrap(), poly(&[(1, 1), (0, 1)]));

        let a = poly(&[(1, 1), (0, 1)]);
        assert_eq!(
            a.exact_div(&q_monomial(1)).unwrap(),
            poly(&[(0, 1), (-1, 1)])
        );
        assert_eq!(a.exact_div(&b), Err(Error::InexactDivision));
        assert_eq!(a.exact_div(&LaurentPoly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn evaluation_examples() {
        let p = poly(&[(0, 1), (1, 1), (2, 1)]);
        assert_eq!(p.eval(&rat(1)).unwrap(), rat(3));
        assert_eq!(q_monomial(-1).eval(&ratio(1, 2)).unwrap(), rat(2));
        assert_eq!(q_monomial(-1).eval(&rat(0)), Err(Error::EvalAtZero));
        assert_eq!(q_monomial(2).eval(&rat(0)).unwrap(), rat(0));
    }

    #[test]
    fn canonical_rendering() {
        let p = LaurentPoly::from_terms([(-1, rat(-1)), (0, rat(2)), (2, ratio(1, 3))]);
        assert_eq!(p.to_string(), "-1*q^-1 + 2 + 1/3*q^2");
        assert_eq!(p.to_string().parse::<LaurentPoly>().unwrap(), p);
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(q_monomial(1).to_string(), "1*q^1");
        assert!("1*q^x".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn pow_matches_repeated_product() {
        let p = poly(&[(-1, 2), (0, 1), (3, -1)]);
        let mut acc = LaurentPoly::one();
        for n in 0..6 {
            assert_eq!(p.pow(n), acc);
            acc = &acc * &p;
        }
    }
}
