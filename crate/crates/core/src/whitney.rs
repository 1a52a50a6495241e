//! `(q,r)`-Whitney numbers of both kinds.
//!
//! Triangles are built from the triangular recurrences
//!
//! ```text
//! w(n+1,k) = q^-n ( w(n,k-1) - (m[n]_q + r) w(n,k) )
//! W(n+1,k) = q^(k-1) W(n,k-1) + (m[k]_q + r) W(n,k)
//! ```
//!
//! and every closed form (elementary symmetric, compositions, complete
//! homogeneous, alternating q-binomial sum) is available as an independent
//! route to the same numbers. Values with `k < 0` or `k > n` are zero.
//!
//! The `*_in` functions are generic over a [`QRing`] and take `m`, `r` as
//! ring elements, so derived families such as `(m q^p, m[p]_q + r)` can be
//! computed without leaving the ring.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::qcore::{self, complete_homogeneous, elementary_symmetric, WeightList};
use crate::report::{IdentityId, IdentityReport, Point};
use crate::ring::{q_monomial, LaurentPoly, QMode, QRing, RingScalar, SymbolicQ};
use crate::with_ring;

/// `n(n-1)/2`, valid for any integer `n` (zero for `n` in `{0, 1}`).
pub fn choose2(n: i64) -> i64 {
    n * (n - 1) / 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    First,
    Second,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::First => "first",
            Kind::Second => "second",
        }
    }
}

/// The parameter triple `(m, r, q)` fixing one Whitney family.
#[derive(Clone, Debug, PartialEq)]
pub struct WhitneyParams {
    pub m: BigRational,
    pub r: BigRational,
    pub qmode: QMode,
}

impl WhitneyParams {
    pub fn new(m: BigRational, r: BigRational, qmode: QMode) -> Result<Self> {
        qmode.validate()?;
        Ok(Self { m, r, qmode })
    }

    pub fn symbolic(m: BigRational, r: BigRational) -> Self {
        Self {
            m,
            r,
            qmode: QMode::Symbolic,
        }
    }

    pub fn point(&self) -> Point {
        Point::new(&self.m, &self.r, self.qmode.label())
    }
}

/// Entry `(n, k)` of a row-major triangle, zero outside `0 <= k <= n <= nmax`.
pub fn entry<R: QRing>(ring: &R, rows: &[Vec<R::Elem>], n: i64, k: i64) -> R::Elem {
    if n < 0 || k < 0 || k > n || n as usize >= rows.len() {
        return ring.zero();
    }
    rows[n as usize][k as usize].clone()
}

/// First-kind rows `0..=nmax` by the triangular recurrence.
pub fn first_rows<R: QRing>(ring: &R, m: &R::Elem, r: &R::Elem, nmax: usize) -> Vec<Vec<R::Elem>> {
    let mut rows = vec![vec![ring.one()]];
    for n in 0..nmax {
        let prev = &rows[n];
        let wn = ring.weight(m, r, n as u64);
        let shift = ring.q_pow(-(n as i64));
        let row = (0..=n + 1)
            .map(|k| {
                let left = if k >= 1 { prev[k - 1].clone() } else { ring.zero() };
                let here = prev.get(k).cloned().unwrap_or_else(|| ring.zero());
                ring.mul(&shift, &ring.sub(&left, &ring.mul(&wn, &here)))
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// Second-kind rows `0..=nmax` by the triangular recurrence.
pub fn second_rows<R: QRing>(ring: &R, m: &R::Elem, r: &R::Elem, nmax: usize) -> Vec<Vec<R::Elem>> {
    let weights: Vec<_> = (0..=nmax as u64).map(|k| ring.weight(m, r, k)).collect();
    let mut rows = vec![vec![ring.one()]];
    for n in 0..nmax {
        let prev = &rows[n];
        let row = (0..=n + 1)
            .map(|k| {
                let left = if k >= 1 {
                    ring.mul(&ring.q_pow(k as i64 - 1), &prev[k - 1])
                } else {
                    ring.zero()
                };
                match prev.get(k) {
                    Some(here) => ring.add(&left, &ring.mul(&weights[k], here)),
                    None => left,
                }
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// `w(n,k) = (-1)^(n-k) q^-C(n,2) e_(n-k)(m[0]+r, ..., m[n-1]+r)`.
pub fn first_elementary_in<R: QRing>(ring: &R, m: &R::Elem, r: &R::Elem, n: usize, k: i64) -> R::Elem {
    if k < 0 || k as usize > n {
        return ring.zero();
    }
    let ws = WeightList::whitney(ring, m, r, 0..n as u64);
    let e = elementary_symmetric(ring, &ws, n - k as usize);
    let v = ring.mul(&ring.q_pow(-choose2(n as i64)), &e);
    ring.sign(&v, (n - k as usize) % 2 == 1)
}

/// `W(n,k) = q^C(k,2) sum over compositions c_0+...+c_k = n-k of
/// prod_j (m[j]_q + r)^c_j`, by explicit enumeration.
pub fn second_compositions_in<R: QRing>(ring: &R, m: &R::Elem, r: &R::Elem, n: usize, k: i64) -> R::Elem {
    if k < 0 || k as usize > n {
        return ring.zero();
    }
    let k = k as usize;
    let total = n - k;
    // powers[j][c] = (m[j]_q + r)^c
    let powers: Vec<Vec<R::Elem>> = (0..=k as u64)
        .map(|j| {
            let w = ring.weight(m, r, j);
            let mut p = vec![ring.one()];
            for c in 1..=total {
                p.push(ring.mul(&p[c - 1], &w));
            }
            p
        })
        .collect();

    fn walk<R: QRing>(
        ring: &R,
        powers: &[Vec<R::Elem>],
        part: usize,
        left: usize,
        acc: R::Elem,
        out: &mut R::Elem,
    ) {
        if part + 1 == powers.len() {
            *out = ring.add(out, &ring.mul(&acc, &powers[part][left]));
            return;
        }
        for c in 0..=left {
            walk(ring, powers, part + 1, left - c, ring.mul(&acc, &powers[part][c]), out);
        }
    }

    let mut sum = ring.zero();
    walk(ring, &powers, 0, total, ring.one(), &mut sum);
    ring.mul(&ring.q_pow(choose2(k as i64)), &sum)
}

/// `W(n,k) = q^C(k,2) h_(n-k)(m[0]+r, ..., m[k]+r)`.
pub fn second_multisets_in<R: QRing>(ring: &R, m: &R::Elem, r: &R::Elem, n: usize, k: i64) -> R::Elem {
    if k < 0 || k as usize > n {
        return ring.zero();
    }
    let ws = WeightList::whitney(ring, m, r, 0..=k as u64);
    let h = complete_homogeneous(ring, &ws, n - k as usize);
    ring.mul(&ring.q_pow(choose2(k)), &h)
}

/// `W(n,k) = 1/(m^k [k]_q!) sum_l (-1)^(k-l) q^C(k-l,2) [k,l]_q (m[l]_q + r)^n`.
pub fn second_alternating_in<R: QRing>(ring: &R, m: &R::Elem, r: &R::Elem, n: usize, k: i64) -> Result<R::Elem> {
    if ring.is_zero(m) {
        return Err(Error::ZeroM);
    }
    if k < 0 || k as usize > n {
        return Ok(ring.zero());
    }
    let ku = k as u64;
    let mut sum = ring.zero();
    for l in 0..=ku {
        let binom = ring.from_laurent(&qcore::q_binomial(ku, l as i64)?);
        let term = ring.mul(
            &ring.mul(&ring.q_pow(choose2((ku - l) as i64)), &binom),
            &ring.pow(&ring.weight(m, r, l), n as u32),
        );
        sum = if (ku - l) % 2 == 1 {
            ring.sub(&sum, &term)
        } else {
            ring.add(&sum, &term)
        };
    }
    let den = ring.mul(&ring.pow(m, k as u32), &ring.from_laurent(&qcore::q_factorial(ku)));
    ring.div(&sum, &den)
}

/// One kind of Whitney numbers for one parameter set, rows `0..=nmax`.
#[derive(Clone, Debug, PartialEq)]
pub struct Triangle {
    pub kind: Kind,
    pub params: WhitneyParams,
    rows: Vec<Vec<RingScalar>>,
}

impl Triangle {
    pub fn from_rows(kind: Kind, params: WhitneyParams, rows: Vec<Vec<RingScalar>>) -> Self {
        Self { kind, params, rows }
    }

    pub fn nmax(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn rows(&self) -> &[Vec<RingScalar>] {
        &self.rows
    }

    /// `T(n,k)`; zero (of the triangle's scalar variant) outside the triangle.
    pub fn get(&self, n: i64, k: i64) -> RingScalar {
        if n < 0 || k < 0 || k > n || n as usize >= self.rows.len() {
            return self.rows[0][0].zero_like();
        }
        self.rows[n as usize][k as usize].clone()
    }
}

fn rows_to_scalars<R: QRing>(ring: &R, rows: Vec<Vec<R::Elem>>) -> Vec<Vec<RingScalar>> {
    rows.into_iter()
        .map(|row| row.iter().map(|v| ring.to_scalar(v)).collect())
        .collect()
}

fn check_k(n: usize, k: i64) -> bool {
    k >= 0 && k as usize <= n
}

pub fn whitney_first_triangle(params: &WhitneyParams, nmax: usize) -> Result<Triangle> {
    let rows = with_ring!(&params.qmode, |ring| {
        let (m, r) = (ring.from_rational(&params.m), ring.from_rational(&params.r));
        rows_to_scalars(&ring, first_rows(&ring, &m, &r, nmax))
    });
    Ok(Triangle::from_rows(Kind::First, params.clone(), rows))
}

pub fn whitney_second_triangle(params: &WhitneyParams, nmax: usize) -> Result<Triangle> {
    let rows = with_ring!(&params.qmode, |ring| {
        let (m, r) = (ring.from_rational(&params.m), ring.from_rational(&params.r));
        rows_to_scalars(&ring, second_rows(&ring, &m, &r, nmax))
    });
    Ok(Triangle::from_rows(Kind::Second, params.clone(), rows))
}

pub fn whitney_first_elementary(params: &WhitneyParams, n: usize, k: i64) -> Result<RingScalar> {
    Ok(with_ring!(&params.qmode, |ring| {
        let (m, r) = (ring.from_rational(&params.m), ring.from_rational(&params.r));
        ring.to_scalar(&first_elementary_in(&ring, &m, &r, n, k))
    }))
}

pub fn whitney_second_compositions(params: &WhitneyParams, n: usize, k: i64) -> Result<RingScalar> {
    Ok(with_ring!(&params.qmode, |ring| {
        let (m, r) = (ring.from_rational(&params.m), ring.from_rational(&params.r));
        ring.to_scalar(&second_compositions_in(&ring, &m, &r, n, k))
    }))
}

pub fn whitney_second_multisets(params: &WhitneyParams, n: usize, k: i64) -> Result<RingScalar> {
    Ok(with_ring!(&params.qmode, |ring| {
        let (m, r) = (ring.from_rational(&params.m), ring.from_rational(&params.r));
        ring.to_scalar(&second_multisets_in(&ring, &m, &r, n, k))
    }))
}

pub fn whitney_second_alternating(params: &WhitneyParams, n: usize, k: i64) -> Result<RingScalar> {
    if params.m.is_zero() {
        return Err(Error::ZeroM);
    }
    Ok(with_ring!(&params.qmode, |ring| {
        let (m, r) = (ring.from_rational(&params.m), ring.from_rational(&params.r));
        ring.to_scalar(&second_alternating_in(&ring, &m, &r, n, k)?)
    }))
}

/// Unsigned q-Stirling number of the first kind,
/// `q^-C(n,2) e_(n-k)([0]_q, ..., [n-1]_q)`.
pub fn q_stirling_first(n: usize, k: i64) -> LaurentPoly {
    let ring = SymbolicQ;
    let w = first_elementary_in(&ring, &LaurentPoly::one(), &LaurentPoly::zero(), n, k);
    if check_k(n, k) && (n - k as usize) % 2 == 1 {
        -w
    } else {
        w
    }
}

/// The same number through the complement form
/// `q^-C(n,2) [n-1]_q! sum_L 1 / prod_(l in L) [l]_q`, where `L` runs over
/// the `(k-1)`-subsets of `{1, ..., n-1}`. Each summand is an exact quotient.
pub fn q_stirling_first_reciprocal(n: usize, k: i64) -> Result<LaurentPoly> {
    if !check_k(n, k) {
        return Ok(LaurentPoly::zero());
    }
    if n == 0 {
        return Ok(LaurentPoly::one());
    }
    if k == 0 {
        return Ok(LaurentPoly::zero());
    }
    let fact = qcore::q_factorial(n as u64 - 1);
    let mut sum = LaurentPoly::zero();
    for subset in crate::tableaux::enumerate_distinct(n as i64 - 2, k as usize - 1) {
        // Column lengths come from {0..n-2}; shift to {1..n-1}.
        let den = subset
            .columns()
            .iter()
            .fold(LaurentPoly::one(), |acc, &c| &acc * &qcore::q_integer(c as u64 + 1));
        sum = &sum + &fact.exact_div(&den)?;
    }
    Ok(&q_monomial(-choose2(n as i64)) * &sum)
}

/// q-Stirling number of the second kind, `W_{1,0,q}(n,k)`.
pub fn q_stirling_second(n: usize, k: i64) -> LaurentPoly {
    let ring = SymbolicQ;
    second_multisets_in(&ring, &LaurentPoly::one(), &LaurentPoly::zero(), n, k)
}

/// `sum_k W(n,k) x^k` over precomputed second-kind rows.
pub fn dowling_in<R: QRing>(ring: &R, rows: &[Vec<R::Elem>], n: usize, x: &R::Elem) -> R::Elem {
    let mut acc = ring.zero();
    for v in rows[n].iter().rev() {
        acc = ring.add(&ring.mul(&acc, x), v);
    }
    acc
}

pub fn dowling_number(params: &WhitneyParams, n: usize) -> Result<RingScalar> {
    dowling_polynomial(params, n, &BigRational::from_integer(1.into()))
}

pub fn dowling_polynomial(params: &WhitneyParams, n: usize, x: &BigRational) -> Result<RingScalar> {
    Ok(with_ring!(&params.qmode, |ring| {
        let (m, r) = (ring.from_rational(&params.m), ring.from_rational(&params.r));
        let rows = second_rows(&ring, &m, &r, n);
        ring.to_scalar(&dowling_in(&ring, &rows, n, &ring.from_rational(x)))
    }))
}

/// `[l]_q [l-1]_q ... [l-n+1]_q` in the ring.
fn falling_in<R: QRing>(ring: &R, ell: u64, n: u64) -> R::Elem {
    ring.from_laurent(&qcore::q_falling_factorial(ell, n))
}

/// Both sides of `m^n [l]_(q,n) = sum_k w(n,k) (m[l]_q + r)^k`.
pub fn defining_first_sides<R: QRing>(
    ring: &R,
    m: &R::Elem,
    r: &R::Elem,
    first: &[Vec<R::Elem>],
    ell: u64,
    n: usize,
) -> (R::Elem, R::Elem) {
    let lhs = ring.mul(&ring.pow(m, n as u32), &falling_in(ring, ell, n as u64));
    let y = ring.weight(m, r, ell);
    let rhs = ring.sum((0..=n).map(|k| ring.mul(&first[n][k], &ring.pow(&y, k as u32))));
    (lhs, rhs)
}

/// Both sides of `(m[l]_q + r)^n = sum_k m^k W(n,k) [l]_(q,k)`.
pub fn defining_second_sides<R: QRing>(
    ring: &R,
    m: &R::Elem,
    r: &R::Elem,
    second: &[Vec<R::Elem>],
    ell: u64,
    n: usize,
) -> (R::Elem, R::Elem) {
    let lhs = ring.pow(&ring.weight(m, r, ell), n as u32);
    let rhs = ring.sum((0..=n).map(|k| {
        ring.mul(
            &ring.mul(&ring.pow(m, k as u32), &second[n][k]),
            &falling_in(ring, ell, k as u64),
        )
    }));
    (lhs, rhs)
}

/// Checks both defining relations at the integer argument `ell`.
pub fn defining_relation_check(params: &WhitneyParams, ell: u64, n: usize) -> Result<Vec<IdentityReport>> {
    if !params.qmode.is_exact() {
        return Err(Error::IncompatibleMode("defining_relation_check"));
    }
    Ok(with_ring!(&params.qmode, |ring| {
        let (m, r) = (ring.from_rational(&params.m), ring.from_rational(&params.r));
        let first = first_rows(&ring, &m, &r, n);
        let second = second_rows(&ring, &m, &r, n);
        let point = || params.point().idx("ell", ell as i64).idx("n", n as i64);
        let (l1, r1) = defining_first_sides(&ring, &m, &r, &first, ell, n);
        let (l2, r2) = defining_second_sides(&ring, &m, &r, &second, ell, n);
        vec![
            IdentityReport::check(&ring, IdentityId::DefiningFirst, point(), &l1, &r1),
            IdentityReport::check(&ring, IdentityId::DefiningSecond, point(), &l2, &r2),
        ]
    }))
}
