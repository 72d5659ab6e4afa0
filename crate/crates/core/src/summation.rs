//! Compensated accumulation.
//!
//! [`Compensated`] is Neumaier's variant of Kahan summation. Partial
//! accumulators can be merged, which is how chunked (and parallel) sums are
//! reduced: chunk-local accumulators are combined in ascending chunk order,
//! so the result depends only on the chunk size, never on the worker count.

use crate::par;

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Compensated {
    sum: f64,
    comp: f64,
}

impl Compensated {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn merge(&mut self, other: &Compensated) {
        self.add(other.sum);
        self.add(other.comp);
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for Compensated {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Compensated::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Compensated sum of `term(i)` for `i` in `start..end`, ascending.
pub fn sum_range<F>(start: u64, end: u64, workers: usize, term: F) -> f64
where
    F: Fn(u64) -> f64 + Sync,
{
    sum_range_acc(start, end, workers, term).value()
}

pub(crate) fn sum_range_acc<F>(start: u64, end: u64, workers: usize, term: F) -> Compensated
where
    F: Fn(u64) -> f64 + Sync,
{
    if end <= start {
        return Compensated::new();
    }
    let chunks = par::chunk_bounds(start, end);
    let partials = par::map_ordered(&chunks, workers, |&(lo, hi)| {
        (lo..hi).map(&term).collect::<Compensated>()
    });
    let mut total = Compensated::new();
    for p in &partials {
        total.merge(p);
    }
    total
}
