//! The identity catalogue, binomial transforms and Hankel transforms.
//!
//! [`verify`] evaluates both sides of one identity at every admissible
//! lattice point for a single `(m, r, q)` and returns one report per point.
//! [`verify_grid`] fans the work out across identities and grid points.

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::report::{IdentityId, IdentityReport, Point};
use crate::ring::rational::{binomial, ratio};
use crate::ring::{QMode, QRing, RingScalar};
use crate::whitney::{
    choose2, defining_first_sides, defining_second_sides, dowling_in, entry, first_rows, second_rows,
    WhitneyParams,
};
use crate::with_ring;

/// Index ranges for a verification run.
#[derive(Clone, Debug, PartialEq)]
pub struct Bounds {
    pub nmax: usize,
    /// Largest `nmax` accepted.
    pub ceiling: usize,
    /// Cap on `p + j` for convolutions and on `n` for orthogonality.
    pub conv_max: usize,
    /// Largest `l` for the defining relations.
    pub ell_max: u64,
    /// Cap on `n` for the Privault identity.
    pub privault_max: usize,
    /// Arguments at which Dowling polynomials are compared.
    pub privault_x: Vec<BigRational>,
}

impl Bounds {
    pub fn new(nmax: usize) -> Self {
        Self {
            nmax,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.nmax > self.ceiling {
            return Err(Error::Domain(format!(
                "nmax {} exceeds the ceiling {}",
                self.nmax, self.ceiling
            )));
        }
        Ok(())
    }
}

impl Default for Bounds {
    fn default() -> Self {
        Self {
            nmax: 10,
            ceiling: 12,
            conv_max: 10,
            ell_max: 6,
            privault_max: 10,
            privault_x: vec![ratio(0, 1), ratio(1, 1), ratio(-2, 1), ratio(1, 3)],
        }
    }
}

/// `{1, 2, 3/2} x {0, 1, 5/2}`.
pub fn default_grid() -> Vec<(BigRational, BigRational)> {
    let ms = [ratio(1, 1), ratio(2, 1), ratio(3, 2)];
    let rs = [ratio(0, 1), ratio(1, 1), ratio(5, 2)];
    ms.iter()
        .flat_map(|m| rs.iter().map(move |r| (m.clone(), r.clone())))
        .collect()
}

fn needs_exact(id: IdentityId) -> bool {
    matches!(
        id,
        IdentityId::GenfuncSecond | IdentityId::DefiningFirst | IdentityId::DefiningSecond
    )
}

/// All reports for one identity at one parameter set, sorted by point.
pub fn verify(id: IdentityId, params: &WhitneyParams, bounds: &Bounds) -> Result<Vec<IdentityReport>> {
    bounds.validate()?;
    params.qmode.validate()?;
    if !params.qmode.is_exact() && needs_exact(id) {
        return Err(Error::IncompatibleMode(id.as_str()));
    }
    let mut reports = with_ring!(&params.qmode, |ring| Ctx::new(&ring, params, bounds).run(id)?);
    reports.sort_by(|a, b| a.point.cmp(&b.point));
    Ok(reports)
}

/// Runs every `(id, (m, r))` combination in parallel; output is sorted by
/// `(id, point)` so it does not depend on scheduling.
pub fn verify_grid(
    ids: &[IdentityId],
    grid: &[(BigRational, BigRational)],
    qmode: &QMode,
    bounds: &Bounds,
) -> Result<Vec<IdentityReport>> {
    let jobs: Vec<_> = ids
        .iter()
        .flat_map(|&id| grid.iter().map(move |mr| (id, mr)))
        .collect();
    let chunks = jobs
        .par_iter()
        .map(|&(id, (m, r))| {
            let params = WhitneyParams::new(m.clone(), r.clone(), qmode.clone())?;
            verify(id, &params, bounds)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut all: Vec<_> = chunks.into_iter().flatten().collect();
    all.sort_by(|a, b| (a.id, &a.point).cmp(&(b.id, &b.point)));
    Ok(all)
}

struct Ctx<'a, R: QRing> {
    ring: &'a R,
    params: &'a WhitneyParams,
    bounds: &'a Bounds,
    m: R::Elem,
    r: R::Elem,
}

impl<'a, R: QRing> Ctx<'a, R> {
    fn new(ring: &'a R, params: &'a WhitneyParams, bounds: &'a Bounds) -> Self {
        Self {
            ring,
            params,
            bounds,
            m: ring.from_rational(&params.m),
            r: ring.from_rational(&params.r),
        }
    }

    fn run(&self, id: IdentityId) -> Result<Vec<IdentityReport>> {
        Ok(match id {
            IdentityId::VerticalFirst => self.vertical_first(),
            IdentityId::VerticalSecond => self.vertical_second(),
            IdentityId::HorizontalFirst => self.horizontal_first(),
            IdentityId::HorizontalSecond => self.horizontal_second(),
            IdentityId::GenfuncSecond => self.genfunc_second(),
            IdentityId::Boundary => self.boundary(),
            IdentityId::RDecompFirst => self.r_decomp(IdentityId::RDecompFirst, &self.splits(), true),
            IdentityId::RDecompSecond => self.r_decomp(IdentityId::RDecompSecond, &self.splits(), false),
            IdentityId::RShift => {
                let split = [&self.params.r - BigRational::one()];
                let mut out = self.r_decomp(IdentityId::RShift, &split, true);
                out.extend(self.r_decomp(IdentityId::RShift, &split, false));
                out
            }
            IdentityId::ConvoFirstA => self.convo_first_a(),
            IdentityId::ConvoFirstB => self.convo_first_b(),
            IdentityId::ConvoSecondA => self.convo_second_a(),
            IdentityId::ConvoSecondB => self.convo_second_b(),
            IdentityId::DowlingBinomialFwd => self.dowling_binomial(true),
            IdentityId::DowlingBinomialInv => self.dowling_binomial(false),
            IdentityId::Orthogonality => self.orthogonality()?,
            IdentityId::PrivaultQ => self.privault(),
            IdentityId::DefiningFirst => self.defining(true),
            IdentityId::DefiningSecond => self.defining(false),
        })
    }

    fn nmax(&self) -> usize {
        self.bounds.nmax
    }

    fn conv(&self) -> usize {
        self.nmax().min(self.bounds.conv_max)
    }

    fn point(&self) -> Point {
        self.params.point()
    }

    fn report(&self, id: IdentityId, point: Point, lhs: &R::Elem, rhs: &R::Elem) -> IdentityReport {
        IdentityReport::check(self.ring, id, point, lhs, rhs)
    }

    fn e(&self, rows: &[Vec<R::Elem>], n: i64, k: i64) -> R::Elem {
        entry(self.ring, rows, n, k)
    }

    fn wt(&self, i: i64) -> R::Elem {
        self.ring.weight(&self.m, &self.r, i as u64)
    }

    fn qp(&self, e: i64) -> R::Elem {
        self.ring.q_pow(e)
    }

    fn binom(&self, n: i64, k: i64) -> R::Elem {
        self.ring.from_rational(&BigRational::from_integer(binomial(n, k)))
    }

    fn mul(&self, a: &R::Elem, b: &R::Elem) -> R::Elem {
        self.ring.mul(a, b)
    }

    fn signed(&self, a: R::Elem, exponent: i64) -> R::Elem {
        self.ring.sign(&a, exponent.rem_euclid(2) == 1)
    }

    fn delta(&self, a: i64, b: i64) -> R::Elem {
        if a == b {
            self.ring.one()
        } else {
            self.ring.zero()
        }
    }

    fn vertical_first(&self) -> Vec<IdentityReport> {
        let n_top = self.nmax() as i64;
        let w = first_rows(self.ring, &self.m, &self.r, self.nmax());
        let mut out = Vec::new();
        for n in 0..n_top {
            for k in 0..=n {
                let rhs = self.ring.sum((k..=n).map(|j| {
                    let tail = self.ring.product((j + 1..=n).map(|i| self.wt(i)));
                    let t = self.mul(&self.mul(&self.qp(choose2(j) - choose2(n + 1)), &self.e(&w, j, k)), &tail);
                    self.signed(t, n - j)
                }));
                let lhs = self.e(&w, n + 1, k + 1);
                out.push(self.report(IdentityId::VerticalFirst, self.point().idx("n", n).idx("k", k), &lhs, &rhs));
            }
        }
        out
    }

    fn vertical_second(&self) -> Vec<IdentityReport> {
        let n_top = self.nmax() as i64;
        let w = second_rows(self.ring, &self.m, &self.r, self.nmax());
        let mut out = Vec::new();
        for n in 0..n_top {
            for k in 0..=n {
                let base = self.wt(k + 1);
                let sum = self.ring.sum(
                    (k..=n).map(|j| self.mul(&self.ring.pow(&base, (n - j) as u32), &self.e(&w, j, k))),
                );
                let rhs = self.mul(&self.qp(k), &sum);
                let lhs = self.e(&w, n + 1, k + 1);
                out.push(self.report(IdentityId::VerticalSecond, self.point().idx("n", n).idx("k", k), &lhs, &rhs));
            }
        }
        out
    }

    fn horizontal_first(&self) -> Vec<IdentityReport> {
        let n_top = self.nmax() as i64;
        let w = first_rows(self.ring, &self.m, &self.r, self.nmax() + 1);
        let mut out = Vec::new();
        for n in 0..=n_top {
            let base = self.wt(n);
            for k in 0..=n {
                let sum = self.ring.sum(
                    (0..=n - k).map(|j| self.mul(&self.ring.pow(&base, j as u32), &self.e(&w, n + 1, k + j + 1))),
                );
                let rhs = self.mul(&self.qp(n), &sum);
                let lhs = self.e(&w, n, k);
                out.push(self.report(IdentityId::HorizontalFirst, self.point().idx("n", n).idx("k", k), &lhs, &rhs));
            }
        }
        out
    }

    fn horizontal_second(&self) -> Vec<IdentityReport> {
        let n_top = self.nmax() as i64;
        let w = second_rows(self.ring, &self.m, &self.r, self.nmax() + 1);
        let mut out = Vec::new();
        for n in 0..=n_top {
            for k in 0..=n {
                let rhs = self.ring.sum((0..=n - k).map(|j| {
                    let ratio = self.ring.product((k + 1..=k + j).map(|i| self.wt(i)));
                    let t = self.mul(
                        &self.mul(&self.qp(choose2(k) - choose2(k + j + 1)), &ratio),
                        &self.e(&w, n + 1, k + j + 1),
                    );
                    self.signed(t, j)
                }));
                let lhs = self.e(&w, n, k);
                out.push(self.report(IdentityId::HorizontalSecond, self.point().idx("n", n).idx("k", k), &lhs, &rhs));
            }
        }
        out
    }

    /// Expands `q^C(k,2) t^k / prod_(i<=k) (1 - (m[i]_q + r) t)` by clearing
    /// the denominator and solving for coefficients one degree at a time.
    fn genfunc_second(&self) -> Vec<IdentityReport> {
        let n_top = self.nmax();
        let w = second_rows(self.ring, &self.m, &self.r, n_top);
        let mut out = Vec::new();
        for k in 0..=n_top {
            // Denominator coefficients d_0..d_(k+1).
            let mut den = vec![self.ring.one()];
            for i in 0..=k as i64 {
                let wi = self.wt(i);
                let mut next = den.clone();
                next.push(self.ring.zero());
                for (j, dj) in den.iter().enumerate() {
                    next[j + 1] = self.ring.sub(&next[j + 1], &self.mul(&wi, dj));
                }
                den = next;
            }
            let mut series: Vec<R::Elem> = Vec::with_capacity(n_top + 1);
            for n in 0..=n_top {
                let mut s = if n == k { self.qp(choose2(k as i64)) } else { self.ring.zero() };
                for j in 1..=n.min(k + 1) {
                    s = self.ring.sub(&s, &self.mul(&den[j], &series[n - j]));
                }
                series.push(s);
            }
            for n in k..=n_top {
                let lhs = self.e(&w, n as i64, k as i64);
                out.push(self.report(
                    IdentityId::GenfuncSecond,
                    self.point().idx("n", n).idx("k", k),
                    &lhs,
                    &series[n],
                ));
            }
        }
        out
    }

    fn boundary(&self) -> Vec<IdentityReport> {
        let n_top = self.nmax();
        let w1 = first_rows(self.ring, &self.m, &self.r, n_top);
        let w2 = second_rows(self.ring, &self.m, &self.r, n_top);
        let mut out = Vec::new();
        for n in 0..=n_top as i64 {
            let c = choose2(n);
            let prod = self.ring.product((0..n).map(|i| self.wt(i)));
            let sides = [
                (self.e(&w1, n, 0), self.signed(self.mul(&self.qp(-c), &prod), n)),
                (self.e(&w1, n, n), self.qp(-c)),
                (self.e(&w2, n, 0), self.ring.pow(&self.r, n as u32)),
                (self.e(&w2, n, n), self.qp(c)),
            ];
            for (eq, (lhs, rhs)) in sides.iter().enumerate() {
                out.push(self.report(IdentityId::Boundary, self.point().idx("n", n).idx("eq", eq + 1), lhs, rhs));
            }
        }
        out
    }

    /// `r1` values `{0, 1, r - 1}` without repeats.
    fn splits(&self) -> Vec<BigRational> {
        let mut out: Vec<BigRational> = Vec::new();
        for r1 in [BigRational::zero(), BigRational::one(), &self.params.r - BigRational::one()] {
            if !out.contains(&r1) {
                out.push(r1);
            }
        }
        out
    }

    fn r_decomp(&self, id: IdentityId, splits: &[BigRational], first: bool) -> Vec<IdentityReport> {
        let n_top = self.nmax();
        let mut out = Vec::new();
        let full = if first {
            first_rows(self.ring, &self.m, &self.r, n_top)
        } else {
            second_rows(self.ring, &self.m, &self.r, n_top)
        };
        for r1 in splits {
            let r2 = &self.params.r - r1;
            let r1e = self.ring.from_rational(r1);
            let r2e = self.ring.from_rational(&r2);
            let part = if first {
                first_rows(self.ring, &self.m, &r1e, n_top)
            } else {
                second_rows(self.ring, &self.m, &r1e, n_top)
            };
            for n in 0..=n_top as i64 {
                for k in 0..=n {
                    let rhs = if first {
                        let neg = self.ring.neg(&r2e);
                        self.ring.sum((k..=n).map(|j| {
                            self.mul(
                                &self.mul(&self.binom(j, k), &self.ring.pow(&neg, (j - k) as u32)),
                                &self.e(&part, n, j),
                            )
                        }))
                    } else {
                        self.ring.sum((k..=n).map(|j| {
                            self.mul(
                                &self.mul(&self.binom(n, j), &self.ring.pow(&r2e, (n - j) as u32)),
                                &self.e(&part, j, k),
                            )
                        }))
                    };
                    let lhs = self.e(&full, n, k);
                    let point = self
                        .point()
                        .idx("kind", if first { 1 } else { 2 })
                        .idx("n", n)
                        .idx("k", k)
                        .extra("r1", r1)
                        .extra("r2", &r2);
                    out.push(self.report(id, point, &lhs, &rhs));
                }
            }
        }
        out
    }

    /// `(m q^s, m[s]_q + r)` for `s = 0..=top`.
    fn shifted(&self, top: usize) -> Vec<(R::Elem, R::Elem)> {
        (0..=top as i64)
            .map(|s| (self.mul(&self.m, &self.qp(s)), self.wt(s)))
            .collect()
    }

    fn first_families(&self) -> Vec<Vec<Vec<R::Elem>>> {
        let c = self.conv();
        self.shifted(c)
            .iter()
            .map(|(m, r)| first_rows(self.ring, m, r, c))
            .collect()
    }

    fn second_families(&self) -> Vec<Vec<Vec<R::Elem>>> {
        let c = self.conv();
        self.shifted(c)
            .iter()
            .map(|(m, r)| second_rows(self.ring, m, r, c))
            .collect()
    }

    fn convo_first_a(&self) -> Vec<IdentityReport> {
        let c = self.conv() as i64;
        let fam = self.first_families();
        let w = &fam[0];
        let mut out = Vec::new();
        for p in 0..=c {
            for j in 0..=c - p {
                for n in 0..=p + j {
                    let sum = self
                        .ring
                        .sum((0..=n).map(|k| self.mul(&self.e(w, p, k), &self.e(&fam[p as usize], j, n - k))));
                    let rhs = self.mul(&self.qp(-p * j), &sum);
                    let lhs = self.e(w, p + j, n);
                    let point = self.point().idx("p", p).idx("j", j).idx("n", n);
                    out.push(self.report(IdentityId::ConvoFirstA, point, &lhs, &rhs));
                }
            }
        }
        out
    }

    /// The second family is `(m q^(k+1), m[k+1]_q + r)`, varying with the
    /// summation index.
    fn convo_first_b(&self) -> Vec<IdentityReport> {
        let c = self.conv() as i64;
        let fam = self.first_families();
        let w = &fam[0];
        let mut out = Vec::new();
        for n in 0..c {
            for p in 0..=n {
                for j in 0..=n - p {
                    let rhs = self.ring.sum((0..=n).map(|k| {
                        self.mul(
                            &self.mul(&self.qp(k * k - n * k - n), &self.e(w, k, p)),
                            &self.e(&fam[(k + 1) as usize], n - k, j),
                        )
                    }));
                    let lhs = self.e(w, n + 1, j + p + 1);
                    let point = self.point().idx("n", n).idx("p", p).idx("j", j);
                    out.push(self.report(IdentityId::ConvoFirstB, point, &lhs, &rhs));
                }
            }
        }
        out
    }

    fn convo_second_a(&self) -> Vec<IdentityReport> {
        let c = self.conv() as i64;
        let fam = self.second_families();
        let w = &fam[0];
        let mut out = Vec::new();
        for n in 0..c {
            for p in 0..=n {
                for j in 0..=n - p {
                    let hat = &fam[(p + 1) as usize];
                    let sum = self
                        .ring
                        .sum((0..=n).map(|k| self.mul(&self.e(w, k, p), &self.e(hat, n - k, j))));
                    let rhs = self.mul(&self.qp(p + p * j + j), &sum);
                    let lhs = self.e(w, n + 1, j + p + 1);
                    let point = self.point().idx("n", n).idx("p", p).idx("j", j);
                    out.push(self.report(IdentityId::ConvoSecondA, point, &lhs, &rhs));
                }
            }
        }
        out
    }

    /// The second family is `(m q^k, m[k]_q + r)`, varying with the
    /// summation index.
    fn convo_second_b(&self) -> Vec<IdentityReport> {
        let c = self.conv() as i64;
        let fam = self.second_families();
        let w = &fam[0];
        let mut out = Vec::new();
        for p in 0..=c {
            for j in 0..=c - p {
                for n in 0..=p + j {
                    let rhs = self.ring.sum((0..=n).map(|k| {
                        self.mul(
                            &self.mul(&self.qp(n * k - k * k), &self.e(w, p, k)),
                            &self.e(&fam[k as usize], j, n - k),
                        )
                    }));
                    let lhs = self.e(w, p + j, n);
                    let point = self.point().idx("p", p).idx("j", j).idx("n", n);
                    out.push(self.report(IdentityId::ConvoSecondB, point, &lhs, &rhs));
                }
            }
        }
        out
    }

    fn dowling_binomial(&self, forward: bool) -> Vec<IdentityReport> {
        let n_top = self.nmax();
        let one = self.ring.one();
        let r_next = self.ring.add(&self.r, &one);
        let lo = second_rows(self.ring, &self.m, &self.r, n_top);
        let hi = second_rows(self.ring, &self.m, &r_next, n_top);
        let d_lo: Vec<_> = (0..=n_top).map(|n| dowling_in(self.ring, &lo, n, &one)).collect();
        let d_hi: Vec<_> = (0..=n_top).map(|n| dowling_in(self.ring, &hi, n, &one)).collect();
        let (id, target, source) = if forward {
            (IdentityId::DowlingBinomialFwd, &d_hi, &d_lo)
        } else {
            (IdentityId::DowlingBinomialInv, &d_lo, &d_hi)
        };
        (0..=n_top as i64)
            .map(|n| {
                let rhs = self.ring.sum((0..=n).map(|j| {
                    let t = self.mul(&self.binom(n, j), &source[j as usize]);
                    if forward {
                        t
                    } else {
                        self.signed(t, n - j)
                    }
                }));
                self.report(id, self.point().idx("n", n), &target[n as usize], &rhs)
            })
            .collect()
    }

    fn orthogonality(&self) -> Result<Vec<IdentityReport>> {
        if self.ring.is_zero(&self.m) {
            return Err(Error::ZeroM);
        }
        let top = self.conv();
        let w1 = first_rows(self.ring, &self.m, &self.r, top);
        let w2 = second_rows(self.ring, &self.m, &self.r, top);
        let mut out = Vec::new();
        for (order, (a, b)) in [(&w1, &w2), (&w2, &w1)].into_iter().enumerate() {
            for n in 0..=top as i64 {
                for j in 0..=top as i64 {
                    let lhs = self.ring.sum((0..=n).map(|k| self.mul(&self.e(a, n, k), &self.e(b, k, j))));
                    let point = self.point().idx("order", order + 1).idx("n", n).idx("j", j);
                    out.push(self.report(IdentityId::Orthogonality, point, &lhs, &self.delta(n, j)));
                }
            }
        }
        Ok(out)
    }

    /// Checked at the given `m` and at `m = 1`.
    fn privault(&self) -> Vec<IdentityReport> {
        let top = self.nmax().min(self.bounds.privault_max);
        let stirling = second_rows(self.ring, &self.ring.one(), &self.ring.zero(), top);
        let mut ms = vec![self.params.m.clone()];
        if !self.params.m.is_one() {
            ms.push(BigRational::one());
        }
        let mut out = Vec::new();
        for m_rat in &ms {
            let m = self.ring.from_rational(m_rat);
            let rows = second_rows(self.ring, &m, &self.r, top);
            for x_rat in &self.bounds.privault_x {
                let x = self.ring.from_rational(x_rat);
                for n in 0..=top as i64 {
                    let lhs = dowling_in(self.ring, &rows, n as usize, &x);
                    let rhs = self.ring.sum((0..=n).map(|k| {
                        let inner = self.ring.sum((0..=k).map(|j| {
                            self.mul(
                                &self.mul(&self.ring.pow(&m, (k - j) as u32), &self.e(&stirling, k, j)),
                                &self.ring.pow(&x, j as u32),
                            )
                        }));
                        self.mul(&self.mul(&self.binom(n, k), &self.ring.pow(&self.r, (n - k) as u32)), &inner)
                    }));
                    let point = Point::new(m_rat, &self.params.r, self.params.qmode.label())
                        .idx("n", n)
                        .extra("x", x_rat);
                    out.push(self.report(IdentityId::PrivaultQ, point, &lhs, &rhs));
                }
            }
        }
        out
    }

    fn defining(&self, first: bool) -> Vec<IdentityReport> {
        let n_top = self.nmax();
        let rows = if first {
            first_rows(self.ring, &self.m, &self.r, n_top)
        } else {
            second_rows(self.ring, &self.m, &self.r, n_top)
        };
        let mut out = Vec::new();
        for ell in 0..=self.bounds.ell_max {
            for n in 0..=n_top {
                let (lhs, rhs, id) = if first {
                    let (l, r) = defining_first_sides(self.ring, &self.m, &self.r, &rows, ell, n);
                    (l, r, IdentityId::DefiningFirst)
                } else {
                    let (l, r) = defining_second_sides(self.ring, &self.m, &self.r, &rows, ell, n);
                    (l, r, IdentityId::DefiningSecond)
                };
                out.push(self.report(id, self.point().idx("ell", ell).idx("n", n), &lhs, &rhs));
            }
        }
        out
    }
}

/// `f_n = sum_j C(n,j) g_j`.
pub fn binomial_transform(seq: &[RingScalar]) -> Result<Vec<RingScalar>> {
    transform(seq, false)
}

/// `g_n = sum_j (-1)^(n-j) C(n,j) f_j`.
pub fn binomial_inverse(seq: &[RingScalar]) -> Result<Vec<RingScalar>> {
    transform(seq, true)
}

fn transform(seq: &[RingScalar], alternate: bool) -> Result<Vec<RingScalar>> {
    let first = seq
        .first()
        .ok_or_else(|| Error::Domain("empty sequence".into()))?;
    (0..seq.len() as i64)
        .map(|n| {
            (0..=n).try_fold(first.zero_like(), |acc, j| {
                let mut c = BigRational::from_integer(binomial(n, j));
                if alternate && (n - j) % 2 == 1 {
                    c = -c;
                }
                acc.try_add(&seq[j as usize].scale(&c))
            })
        })
        .collect()
}

/// Determinant by fraction-free elimination, swapping rows on zero pivots.
pub fn bareiss_determinant(mut a: Vec<Vec<RingScalar>>) -> Result<RingScalar> {
    let n = a.len();
    let Some(first) = a.first().and_then(|row| row.first()) else {
        return Err(Error::Domain("empty matrix".into()));
    };
    let one = first.one_like();
    let mut negate = false;
    let mut prev = one.clone();
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(one.zero_like()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].try_mul(&a[k][k])?.try_sub(&a[i][k].try_mul(&a[k][j])?)?;
                a[i][j] = num.try_div(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { det.scale(&-BigRational::one()) } else { det })
}

/// `H_N = det[seq_(i+j)]_(0<=i,j<N)` for `N = 1..=order`.
pub fn hankel_transform(seq: &[RingScalar], order: usize) -> Result<Vec<RingScalar>> {
    let need = (2 * order).saturating_sub(1);
    if seq.len() < need {
        return Err(Error::InsufficientSequence { need, got: seq.len() });
    }
    (1..=order)
        .map(|size| {
            let matrix = (0..size)
                .map(|i| (0..size).map(|j| seq[i + j].clone()).collect())
                .collect();
            bareiss_determinant(matrix)
        })
        .collect()
}

/// Hankel transforms of Dowling-number sequences for several `r`.
#[derive(Clone, Debug, PartialEq)]
pub struct HankelProbe {
    pub m: BigRational,
    pub qmode: QMode,
    pub order: usize,
    pub rows: Vec<(BigRational, Vec<RingScalar>)>,
}

impl HankelProbe {
    /// All rows equal.
    pub fn consistent(&self) -> bool {
        self.rows.windows(2).all(|w| w[0].1 == w[1].1)
    }

    /// The shared Hankel sequence when the rows agree.
    pub fn common(&self) -> Option<&[RingScalar]> {
        if self.consistent() {
            self.rows.first().map(|(_, h)| h.as_slice())
        } else {
            None
        }
    }
}

/// Largest order accepted with symbolic `q`.
pub const SYMBOLIC_HANKEL_CAP: usize = 4;

/// Dowling numbers `D_{m,r,q}(n)` for `n < len`.
pub fn dowling_sequence(params: &WhitneyParams, len: usize) -> Result<Vec<RingScalar>> {
    if len == 0 {
        return Ok(Vec::new());
    }
    Ok(with_ring!(&params.qmode, |ring| {
        let (m, r) = (ring.from_rational(&params.m), ring.from_rational(&params.r));
        let rows = second_rows(&ring, &m, &r, len - 1);
        (0..len)
            .map(|n| ring.to_scalar(&dowling_in(&ring, &rows, n, &ring.one())))
            .collect()
    }))
}

pub fn hankel_probe(m: &BigRational, r_values: &[BigRational], qmode: &QMode, order: usize) -> Result<HankelProbe> {
    if !qmode.is_exact() {
        return Err(Error::IncompatibleMode("hankel_probe"));
    }
    if matches!(qmode, QMode::Symbolic) && order > SYMBOLIC_HANKEL_CAP {
        return Err(Error::Domain(format!(
            "symbolic Hankel order is capped at {SYMBOLIC_HANKEL_CAP}"
        )));
    }
    let len = (2 * order).saturating_sub(1).max(1);
    let rows = r_values
        .iter()
        .map(|r| {
            let params = WhitneyParams::new(m.clone(), r.clone(), qmode.clone())?;
            let seq = dowling_sequence(&params, len)?;
            Ok((r.clone(), hankel_transform(&seq, order)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HankelProbe {
        m: m.clone(),
        qmode: qmode.clone(),
        order,
        rows,
    })
}
