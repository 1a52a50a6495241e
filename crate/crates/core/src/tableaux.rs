//! A-tableaux represented by their column lengths, and the weight sums that
//! reproduce the Whitney numbers by brute-force enumeration.
//!
//! A tableau with `count` columns whose lengths come from `{0..=universe_max}`
//! is stored as its length vector sorted in decreasing order. Enumeration is
//! lexicographic on that vector.

use crate::ring::QRing;
use crate::whitney::choose2;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ATableau {
    columns: Vec<usize>,
    distinct: bool,
    universe_max: i64,
}

impl ATableau {
    /// Builds a tableau from column lengths in any order.
    pub fn new(mut columns: Vec<usize>, distinct: bool, universe_max: i64) -> Option<Self> {
        columns.sort_unstable_by(|a, b| b.cmp(a));
        let in_range = columns.iter().all(|&c| (c as i64) <= universe_max);
        let ok_distinct = !distinct || columns.windows(2).all(|w| w[0] > w[1]);
        (in_range && ok_distinct).then_some(Self {
            columns,
            distinct,
            universe_max,
        })
    }

    /// Column lengths, longest first.
    pub fn columns(&self) -> &[usize] {
        &self.columns
    }

    pub fn distinct(&self) -> bool {
        self.distinct
    }

    pub fn universe_max(&self) -> i64 {
        self.universe_max
    }

    /// Checks the representation invariants.
    pub fn is_valid(&self) -> bool {
        let sorted = self.columns.windows(2).all(|w| {
            if self.distinct {
                w[0] > w[1]
            } else {
                w[0] >= w[1]
            }
        });
        sorted && self.columns.iter().all(|&c| (c as i64) <= self.universe_max)
    }

    /// Product of `m [|c|]_q + r` over the columns.
    pub fn weight<R: QRing>(&self, ring: &R, m: &R::Elem, r: &R::Elem) -> R::Elem {
        ring.product(self.columns.iter().map(|&c| ring.weight(m, r, c as u64)))
    }
}

/// Lexicographic generator of tableaux with a fixed number of columns.
///
/// Internally walks increasing (or nondecreasing) index vectors in colex
/// order, which is the lexicographic order of the reversed (decreasing)
/// vector.
pub struct TableauIter {
    /// Ascending lengths; `None` once exhausted.
    state: Option<Vec<usize>>,
    distinct: bool,
    universe_max: i64,
}

impl TableauIter {
    fn new(universe_max: i64, count: usize, distinct: bool) -> Self {
        let size = (universe_max + 1).max(0) as usize;
        let state = if count == 0 {
            Some(Vec::new())
        } else if size == 0 || (distinct && count > size) {
            None
        } else if distinct {
            Some((0..count).collect())
        } else {
            Some(vec![0; count])
        };
        Self {
            state,
            distinct,
            universe_max,
        }
    }

    /// Advances the ascending vector in colex order.
    fn advance(&self, cur: &[usize]) -> Option<Vec<usize>> {
        let top = self.universe_max as usize;
        let mut next = cur.to_vec();
        let len = next.len();
        // Find the lowest position that can be bumped while staying below
        // its right neighbour (or the universe bound for the last one).
        for i in 0..len {
            let limit = if i + 1 < len {
                if self.distinct {
                    next[i + 1] - 1
                } else {
                    next[i + 1]
                }
            } else {
                top
            };
            if next[i] < limit {
                next[i] += 1;
                for (j, slot) in next.iter_mut().enumerate().take(i) {
                    *slot = if self.distinct { j } else { 0 };
                }
                return Some(next);
            }
        }
        None
    }
}

impl Iterator for TableauIter {
    type Item = ATableau;

    fn next(&mut self) -> Option<ATableau> {
        let cur = self.state.take()?;
        self.state = self.advance(&cur);
        let mut columns = cur;
        columns.reverse();
        Some(ATableau {
            columns,
            distinct: self.distinct,
            universe_max: self.universe_max,
        })
    }
}

/// All tableaux with `count` columns of pairwise distinct lengths drawn from
/// `{0..=universe_max}`; a negative bound means the empty universe.
pub fn enumerate_distinct(universe_max: i64, count: usize) -> TableauIter {
    TableauIter::new(universe_max, count, true)
}

/// All tableaux with `count` columns, lengths drawn with repetition.
pub fn enumerate_weak(universe_max: i64, count: usize) -> TableauIter {
    TableauIter::new(universe_max, count, false)
}

/// Weight sum over distinct tableaux with `n-k` columns from `{0..n-1}`;
/// equals `(-1)^(n-k) q^C(n,2) w(n,k)`.
pub fn tableau_sum_first<R: QRing>(ring: &R, m: &R::Elem, r: &R::Elem, n: usize, k: i64) -> R::Elem {
    if k < 0 || k as usize > n {
        return ring.zero();
    }
    ring.sum(enumerate_distinct(n as i64 - 1, n - k as usize).map(|t| t.weight(ring, m, r)))
}

/// Weight sum over weak tableaux with `n-k` columns from `{0..k}`;
/// equals `q^-C(k,2) W(n,k)`.
pub fn tableau_sum_second<R: QRing>(ring: &R, m: &R::Elem, r: &R::Elem, n: usize, k: i64) -> R::Elem {
    if k < 0 || k as usize > n {
        return ring.zero();
    }
    ring.sum(enumerate_weak(k, n - k as usize).map(|t| t.weight(ring, m, r)))
}

/// The normalisation relating a first-kind Whitney value to its tableau sum.
pub fn first_kind_normalizer<R: QRing>(ring: &R, n: usize, k: i64) -> R::Elem {
    let v = ring.q_pow(choose2(n as i64));
    ring.sign(&v, (n as i64 - k) % 2 != 0)
}
