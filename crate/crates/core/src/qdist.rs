//! Heine and Euler q-Poisson distributions.
//!
//! The Heine law has `P(Y = y)` proportional to `q^C(y,2) λ^y / [y]_q!` and
//! the Euler law has `P(Z = z)` proportional to `λ^z / [z]_q!`. Normalisers
//! are `1 / ê_q(λ)` and `1 / e_q(λ)` respectively.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::qcore::{q_exp, q_exp_hat};
use crate::ring::rational::rational_from_f64;
use crate::whitney::{choose2, whitney_second_triangle, WhitneyParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Heine,
    Euler,
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "heine" => Ok(Family::Heine),
            "euler" => Ok(Family::Euler),
            other => Err(Error::Parse(format!("unknown family `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QDistSpec {
    pub family: Family,
    pub q: f64,
    pub lambda: f64,
    /// Series truncation tolerance.
    pub tol: f64,
    pub term_cap: usize,
}

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_TERM_CAP: usize = 1_000_000;
/// Consecutive negligible terms required before a series is cut off.
const QUIET_RUN: usize = 10;
/// Sampling tables stop once this much mass is covered.
const SAMPLE_MASS: f64 = 1.0 - 1e-12;

impl QDistSpec {
    pub fn new(family: Family, q: f64, lambda: f64) -> Result<Self> {
        let spec = Self {
            family,
            q,
            lambda,
            tol: DEFAULT_TOL,
            term_cap: DEFAULT_TERM_CAP,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn heine(q: f64, lambda: f64) -> Result<Self> {
        Self::new(Family::Heine, q, lambda)
    }

    pub fn euler(q: f64, lambda: f64) -> Result<Self> {
        Self::new(Family::Euler, q, lambda)
    }

    pub fn with_tol(mut self, tol: f64) -> Result<Self> {
        self.tol = tol;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.q > 0.0 && self.q < 1.0) {
            return Err(Error::Domain(format!("q must lie in (0,1), got {}", self.q)));
        }
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return Err(Error::Domain(format!("lambda must be positive, got {}", self.lambda)));
        }
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(Error::Domain(format!("tol must lie in (0,1), got {}", self.tol)));
        }
        if self.family == Family::Euler && self.lambda * (1.0 - self.q) >= 1.0 {
            return Err(Error::Domain(format!(
                "euler requires lambda*(1-q) < 1, got {}",
                self.lambda * (1.0 - self.q)
            )));
        }
        Ok(())
    }

    /// `E[[Y]_q]`: `λ / (1 + λ(1-q))` for Heine, `λ` for Euler.
    pub fn mean(&self) -> f64 {
        match self.family {
            Family::Heine => self.lambda / (1.0 + self.lambda * (1.0 - self.q)),
            Family::Euler => self.lambda,
        }
    }

    fn normalizer(&self) -> Result<f64> {
        Ok(match self.family {
            Family::Heine => 1.0 / q_exp_hat(self.lambda, self.q, self.tol)?,
            Family::Euler => 1.0 / q_exp(self.lambda, self.q, self.tol)?,
        })
    }

    /// `pmf(x) / pmf(x-1)`.
    fn ratio(&self, x: u64) -> f64 {
        let qx = q_int_f64(x, self.q);
        match self.family {
            Family::Heine => self.q.powi(x as i32 - 1) * self.lambda / qx,
            Family::Euler => self.lambda / qx,
        }
    }

    /// Probabilities `pmf(0), pmf(1), ...` computed by successive ratios.
    fn masses(&self) -> Result<impl Iterator<Item = f64> + '_> {
        let first = self.normalizer()?;
        Ok((0u64..).scan(first, move |p, x| {
            if x > 0 {
                *p *= self.ratio(x);
            }
            Some(*p)
        }))
    }
}

fn q_int_f64(x: u64, q: f64) -> f64 {
    (1.0 - q.powi(x as i32)) / (1.0 - q)
}

/// `1 + λ(1-q)q^(j-1)` multiplied over `j = 1..=k`.
fn heine_denominator(lambda: f64, q: f64, k: u64) -> f64 {
    (1..=k).map(|j| 1.0 + lambda * (1.0 - q) * q.powi(j as i32 - 1)).product()
}

pub fn pmf(spec: &QDistSpec, x: u64) -> Result<f64> {
    spec.validate()?;
    Ok(spec.masses()?.nth(x as usize).unwrap_or(0.0))
}

/// `E[[X]_(r,q)]` in closed form.
pub fn q_factorial_moment(spec: &QDistSpec, order: u64) -> Result<f64> {
    spec.validate()?;
    let (q, lambda) = (spec.q, spec.lambda);
    Ok(match spec.family {
        Family::Euler => lambda.powi(order as i32),
        Family::Heine => {
            q.powi(choose2(order as i64) as i32) * lambda.powi(order as i32) / heine_denominator(lambda, q, order)
        }
    })
}

/// Sums `term(0) + term(1) + ...`, stopping after a run of negligible terms.
fn sum_until_quiet(tol: f64, cap: usize, mut term: impl FnMut(u64) -> f64) -> Result<f64> {
    let mut sum = 0.0;
    let mut quiet = 0;
    for x in 0..cap as u64 {
        let t = term(x);
        sum += t;
        if t.abs() <= tol * sum.abs() {
            quiet += 1;
            if quiet >= QUIET_RUN {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence(cap))
}

/// `sum_x pmf(x) g(x)`, summed term by term.
pub fn direct_moment_oracle(spec: &QDistSpec, g: impl Fn(u64) -> f64, tol: f64) -> Result<f64> {
    spec.validate()?;
    let mut masses = spec.masses()?;
    sum_until_quiet(tol, spec.term_cap, |x| {
        let p = masses.next().unwrap_or(0.0);
        if p == 0.0 {
            0.0
        } else {
            p * g(x)
        }
    })
}

/// `E[(m[X]_q + r)^n] = sum_k m^k W(n,k) E[[X]_(k,q)]`, with `W` computed
/// exactly and evaluated at `q` only at the end.
pub fn whitney_moment(spec: &QDistSpec, m: f64, r: f64, n: u64) -> Result<f64> {
    spec.validate()?;
    let params = WhitneyParams::symbolic(rational_from_f64(m)?, rational_from_f64(r)?);
    let tri = whitney_second_triangle(&params, n as usize)?;
    let mut sum = 0.0;
    for k in 0..=n {
        let w = tri.get(n as i64, k as i64);
        let w = w.as_laurent().expect("symbolic triangle").eval_f64(spec.q);
        sum += m.powi(k as i32) * w * q_factorial_moment(spec, k)?;
    }
    Ok(sum)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UpperLimit {
    /// Summation limits as displayed, ending at `n`.
    Finite,
    /// Limits extended until the truncation tolerance is met.
    TruncatedInfinite,
}

/// The displayed moment sums.
///
/// For Euler both variants use `ê_q(-λ) sum_l λ^l/[l]_q! (m[l]_q + r)^n`.
/// For Heine the finite variant is the displayed double sum with exponent
/// `-C(l,2) - l i`; the extended variant sums
/// `(-1)^i q^(2C(i,2) + C(l,2) + l i) λ^(l+i) / ([l]_q! [i]_q!)
///  (m[l]_q + r)^n / prod_(j=1..l+i) (1 + λ(1-q) q^(j-1))` over all `l, i`.
pub fn paper_form_moment(spec: &QDistSpec, m: f64, r: f64, n: u64, upper: UpperLimit) -> Result<f64> {
    spec.validate()?;
    let (q, lambda) = (spec.q, spec.lambda);
    let power = |l: u64| (m * q_int_f64(l, q) + r).powi(n as i32);
    let fact = |l: u64| (1..=l).map(|i| q_int_f64(i, q)).product::<f64>();
    match (spec.family, upper) {
        (Family::Euler, UpperLimit::Finite) => {
            let s: f64 = (0..=n).map(|l| lambda.powi(l as i32) / fact(l) * power(l)).sum();
            Ok(s * spec.normalizer()?)
        }
        (Family::Euler, UpperLimit::TruncatedInfinite) => {
            let mut term = 1.0;
            let s = sum_until_quiet(spec.tol, spec.term_cap, |l| {
                if l > 0 {
                    term *= lambda / q_int_f64(l, q);
                }
                term * power(l)
            })?;
            Ok(s * spec.normalizer()?)
        }
        (Family::Heine, UpperLimit::Finite) => {
            let mut s = 0.0;
            for l in 0..=n {
                for i in 0..=n {
                    let e = -choose2(l as i64) - (l * i) as i64;
                    let t = (-lambda).powi(i as i32) * q.powi(e as i32) * lambda.powi(l as i32)
                        / (fact(l) * fact(i))
                        * power(l)
                        / heine_denominator(lambda, q, l + i);
                    s += t;
                }
            }
            Ok(s)
        }
        (Family::Heine, UpperLimit::TruncatedInfinite) => {
            let heine_term = |l: u64, i: u64| {
                let e = 2 * choose2(i as i64) + choose2(l as i64) + (l * i) as i64;
                let sign = if i % 2 == 1 { -1.0 } else { 1.0 };
                sign * q.powi(e as i32) * lambda.powi((l + i) as i32) / (fact(l) * fact(i)) * power(l)
                    / heine_denominator(lambda, q, l + i)
            };
            sum_until_quiet(spec.tol, spec.term_cap, |l| {
                sum_until_quiet(spec.tol, spec.term_cap, |i| heine_term(l, i)).unwrap_or(f64::NAN)
            })
            .and_then(|s| {
                if s.is_nan() {
                    Err(Error::NonConvergence(spec.term_cap))
                } else {
                    Ok(s)
                }
            })
        }
    }
}

/// `count` draws by inverse CDF over the cumulative mass table.
pub fn sample(spec: &QDistSpec, count: usize, seed: u64) -> Result<Vec<u64>> {
    spec.validate()?;
    if count == 0 {
        return Ok(Vec::new());
    }
    let mut cdf = Vec::new();
    let mut acc = 0.0;
    for p in spec.masses()? {
        acc += p;
        cdf.push(acc);
        if acc >= SAMPLE_MASS || p.is_zero() && cdf.len() > 1 {
            break;
        }
        if cdf.len() >= spec.term_cap {
            return Err(Error::NonConvergence(spec.term_cap));
        }
    }
    let last = cdf.len() as u64 - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| {
            let u: f64 = rng.gen();
            (cdf.partition_point(|&c| c <= u) as u64).min(last)
        })
        .collect())
}
