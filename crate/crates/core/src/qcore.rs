//! q-combinatorial primitives: q-integers, q-factorials, Gaussian binomials,
//! q-falling factorials, symmetric-polynomial evaluators and the two
//! numeric q-exponentials.

use crate::error::{Error, Result};
use crate::ring::{LaurentPoly, QRing};

/// `[n]_q = 1 + q + ... + q^(n-1)`.
pub fn q_integer(n: u64) -> LaurentPoly {
    LaurentPoly::from_dense(0, vec![crate::ring::rational::rat(1); n as usize])
}

/// `[n]_q! = [1]_q [2]_q ... [n]_q`.
pub fn q_factorial(n: u64) -> LaurentPoly {
    (1..=n).fold(LaurentPoly::one(), |acc, i| &acc * &q_integer(i))
}

/// Gaussian binomial coefficient, computed as a quotient of q-factorials.
/// Zero outside `0 <= k <= n`.
pub fn q_binomial(n: u64, k: i64) -> Result<LaurentPoly> {
    if k < 0 || k as u64 > n {
        return Ok(LaurentPoly::zero());
    }
    let k = k as u64;
    let den = &q_factorial(k) * &q_factorial(n - k);
    q_factorial(n).exact_div(&den)
}

/// `[x]_q [x-1]_q ... [x-n+1]_q`; zero as soon as a factor `[0]_q` appears.
pub fn q_falling_factorial(x: u64, n: u64) -> LaurentPoly {
    if n > x {
        return LaurentPoly::zero();
    }
    (0..n).fold(LaurentPoly::one(), |acc, i| &acc * &q_integer(x - i))
}

/// An ordered list of weights `w_0, w_1, ...`. Order matters only for the
/// index-based subset semantics; the symmetric functions themselves do not
/// depend on it.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightList<E>(Vec<E>);

impl<E> WeightList<E> {
    pub fn new(ws: Vec<E>) -> Self {
        Self(ws)
    }

    /// The Whitney weights `m [i]_q + r` for `i` in `indices`.
    pub fn whitney<R: QRing<Elem = E>>(
        ring: &R,
        m: &E,
        r: &E,
        indices: impl IntoIterator<Item = u64>,
    ) -> Self {
        Self(indices.into_iter().map(|i| ring.weight(m, r, i)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[E] {
        &self.0
    }
}

/// All elementary symmetric polynomials `e_0, ..., e_L` of the list.
pub fn elementary_all<R: QRing>(ring: &R, ws: &WeightList<R::Elem>) -> Vec<R::Elem> {
    let mut e = vec![ring.zero(); ws.len() + 1];
    e[0] = ring.one();
    for (i, w) in ws.as_slice().iter().enumerate() {
        for k in (1..=i + 1).rev() {
            e[k] = ring.add(&e[k], &ring.mul(w, &e[k - 1]));
        }
    }
    e
}

/// `e_k` of the list; zero when `k` exceeds its length.
pub fn elementary_symmetric<R: QRing>(ring: &R, ws: &WeightList<R::Elem>, k: usize) -> R::Elem {
    if k > ws.len() {
        return ring.zero();
    }
    elementary_all(ring, ws).swap_remove(k)
}

/// Complete homogeneous symmetric polynomials `h_0, ..., h_kmax`.
pub fn complete_all<R: QRing>(ring: &R, ws: &WeightList<R::Elem>, kmax: usize) -> Vec<R::Elem> {
    let mut h = vec![ring.zero(); kmax + 1];
    h[0] = ring.one();
    for w in ws.as_slice() {
        for k in 1..=kmax {
            h[k] = ring.add(&h[k], &ring.mul(w, &h[k - 1]));
        }
    }
    h
}

/// `h_k` of the list.
pub fn complete_homogeneous<R: QRing>(ring: &R, ws: &WeightList<R::Elem>, k: usize) -> R::Elem {
    complete_all(ring, ws, k).swap_remove(k)
}

/// Hard cap on the number of series terms summed.
pub const TERM_CAP: usize = 1_000_000;

fn check_q(q: f64) -> Result<()> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::Domain(format!("q must lie in (0,1), got {q}")));
    }
    Ok(())
}

/// Sums `sum_k c_k t^k / [k]_q!` where `c_k = q^(k(k-1)/2)` when `hat`.
fn series(t: f64, q: f64, tol: f64, hat: bool) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..TERM_CAP {
        // term_k / term_{k-1} = t q^{[hat](k-1)} / [k]_q
        let qk = (1.0 - q.powi(k as i32)) / (1.0 - q);
        term *= t / qk;
        if hat {
            term *= q.powi(k as i32 - 1);
        }
        sum += term;
        if term.abs() < tol * sum.abs() || term == 0.0 {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence(TERM_CAP))
}

/// `e_q(t) = sum_k t^k / [k]_q!`. Negative arguments go through
/// `e_q(t) = 1 / ê_q(-t)`.
pub fn q_exp(t: f64, q: f64, tol: f64) -> Result<f64> {
    check_q(q)?;
    if t < 0.0 {
        return Ok(1.0 / q_exp_hat(-t, q, tol)?);
    }
    q_exp_direct(t, q, tol)
}

/// Direct summation of the `e_q` series, alternating for negative `t`.
/// Only meant for checking the reciprocal identity itself.
pub fn q_exp_direct(t: f64, q: f64, tol: f64) -> Result<f64> {
    check_q(q)?;
    let growth = t.abs() * (1.0 - q);
    if growth >= 1.0 {
        return Err(Error::DivergentSeries(growth));
    }
    series(t, q, tol, false)
}

/// `ê_q(t) = sum_k q^(k(k-1)/2) t^k / [k]_q!`, entire in `t`.
pub fn q_exp_hat(t: f64, q: f64, tol: f64) -> Result<f64> {
    check_q(q)?;
    series(t, q, tol, true)
}
