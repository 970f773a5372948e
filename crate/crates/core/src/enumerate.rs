//! Exhaustive generation of Dyck paths and brute-force aggregation of path
//! statistics. Every closed form and recurrence in the crate is checked
//! against these counts.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use thiserror::Error;

use crate::path::{DParam, Path, Step};

/// Largest semi-length enumerated by default (`C_16` is about 35.4 million).
pub const DEFAULT_MAX_EXHAUSTIVE: usize = 16;

/// Environment variable overriding [`DEFAULT_MAX_EXHAUSTIVE`].
pub const MAX_EXHAUSTIVE_ENV: &str = "DDYCK_MAX_EXHAUSTIVE";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerateError {
    #[error("semi-length {n} exceeds the exhaustive bound {max} (raise it with --max-exhaustive or {MAX_EXHAUSTIVE_ENV})")]
    TooLarge { n: usize, max: usize },
}

/// All Dyck paths of semi-length `n` in lexicographic order with `U < D`,
/// starting from `U^n D^n`. Paths are produced one at a time; nothing is
/// materialized.
#[derive(Clone, Debug)]
pub struct DyckPaths {
    current: Option<Vec<Step>>,
}

impl DyckPaths {
    pub fn new(n: usize) -> Self {
        let mut first = vec![Step::Up; n];
        first.extend(std::iter::repeat_n(Step::Down, n));
        DyckPaths {
            current: Some(first),
        }
    }

    /// Lexicographic successor: flip the rightmost `U` that may become a `D`
    /// (height before it is positive), then refill with all remaining `U`s
    /// followed by `D`s.
    fn advance(steps: &mut [Step]) -> bool {
        let n = steps.len() / 2;
        let mut heights = Vec::with_capacity(steps.len());
        let mut ups_before = Vec::with_capacity(steps.len());
        let (mut h, mut ups) = (0usize, 0usize);
        for s in steps.iter() {
            heights.push(h);
            ups_before.push(ups);
            match s {
                Step::Up => {
                    h += 1;
                    ups += 1;
                }
                Step::Down => h -= 1,
            }
        }
        let Some(i) = (0..steps.len())
            .rev()
            .find(|&i| steps[i] == Step::Up && heights[i] > 0)
        else {
            return false;
        };
        steps[i] = Step::Down;
        let remaining_ups = n - ups_before[i];
        for (k, s) in steps[i + 1..].iter_mut().enumerate() {
            *s = if k < remaining_ups {
                Step::Up
            } else {
                Step::Down
            };
        }
        true
    }
}

impl Iterator for DyckPaths {
    type Item = Path;

    fn next(&mut self) -> Option<Path> {
        let steps = self.current.as_mut()?;
        let out = Path::from_steps_unchecked(steps.clone());
        if !DyckPaths::advance(steps) {
            self.current = None;
        }
        Some(out)
    }
}

/// Streams every Dyck path of semi-length `n`.
pub fn gen_dyck(n: usize) -> DyckPaths {
    DyckPaths::new(n)
}

/// Condition on where the last valley sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LastValley {
    /// No valley at all (pyramids and the empty path).
    Absent,
    /// At least one valley; the last one at level 0.
    Ground,
    /// At least one valley; the last one at exactly this level.
    AtLevel(u32),
    /// Either no valley or the last valley at level 0.
    AbsentOrGround,
    /// Either no valley or the last valley strictly below this level.
    AbsentOrBelow(u32),
}

impl LastValley {
    pub fn matches(self, level: Option<u32>) -> bool {
        match (self, level) {
            (LastValley::Absent, l) => l.is_none(),
            (LastValley::Ground, l) => l == Some(0),
            (LastValley::AtLevel(t), l) => l == Some(t),
            (LastValley::AbsentOrGround, l) => l.is_none() || l == Some(0),
            (LastValley::AbsentOrBelow(_), None) => true,
            (LastValley::AbsentOrBelow(t), Some(l)) => l < t,
        }
    }
}

/// A conjunction of optional conditions on a path.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PathFilter {
    pub d: Option<DParam>,
    pub peak_count: Option<usize>,
    pub last_valley: Option<LastValley>,
    pub avoids: Option<Vec<Step>>,
}

impl PathFilter {
    pub fn all() -> Self {
        PathFilter::default()
    }

    pub fn d_dyck(d: impl Into<DParam>) -> Self {
        PathFilter::all().with_d(d)
    }

    /// The (-1)-Dyck paths with at least one valley, the last at ground level.
    pub fn ground_last_valley() -> Self {
        PathFilter::d_dyck(-1).with_last_valley(LastValley::Ground)
    }

    /// The (-1)-Dyck paths with no valley or with the last valley at ground level.
    pub fn ground_or_pyramid() -> Self {
        PathFilter::d_dyck(-1).with_last_valley(LastValley::AbsentOrGround)
    }

    pub fn with_d(mut self, d: impl Into<DParam>) -> Self {
        self.d = Some(d.into());
        self
    }

    pub fn with_peaks(mut self, k: usize) -> Self {
        self.peak_count = Some(k);
        self
    }

    pub fn with_last_valley(mut self, lv: LastValley) -> Self {
        self.last_valley = Some(lv);
        self
    }

    pub fn avoiding(mut self, pattern: &Path) -> Self {
        self.avoids = Some(pattern.steps().to_vec());
        self
    }

    /// Like [`PathFilter::avoiding`] but for factors that are not Dyck paths
    /// themselves (e.g. `UUDU`).
    pub fn avoiding_steps(mut self, pattern: Vec<Step>) -> Self {
        self.avoids = Some(pattern);
        self
    }

    pub fn matches(&self, p: &Path) -> bool {
        if let Some(k) = self.peak_count {
            if p.peaks() != k {
                return false;
            }
        }
        if let Some(pattern) = &self.avoids {
            if p.contains_factor(pattern) {
                return false;
            }
        }
        if self.d.is_none() && self.last_valley.is_none() {
            return true;
        }
        let nu = p.valley_vector();
        if let Some(d) = self.d {
            if !nu.admits(d) {
                return false;
            }
        }
        match self.last_valley {
            Some(lv) => lv.matches(nu.levels().last().copied()),
            None => true,
        }
    }
}

/// Which statistic a histogram is taken over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Statistic {
    Peaks,
    Area,
}

impl Statistic {
    pub fn of(self, p: &Path) -> u64 {
        match self {
            Statistic::Peaks => p.peaks() as u64,
            Statistic::Area => p.area(),
        }
    }
}

/// Front end to the exhaustive oracle that enforces a bound on `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Enumerator {
    max_n: usize,
}

impl Default for Enumerator {
    fn default() -> Self {
        Enumerator {
            max_n: DEFAULT_MAX_EXHAUSTIVE,
        }
    }
}

impl Enumerator {
    pub fn with_bound(max_n: usize) -> Self {
        Enumerator { max_n }
    }

    /// Default bound, overridden by `DDYCK_MAX_EXHAUSTIVE` when it parses.
    pub fn from_env() -> Self {
        std::env::var(MAX_EXHAUSTIVE_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(Enumerator::with_bound)
            .unwrap_or_default()
    }

    pub fn bound(&self) -> usize {
        self.max_n
    }

    fn check(&self, n: usize) -> Result<(), EnumerateError> {
        if n > self.max_n {
            Err(EnumerateError::TooLarge { n, max: self.max_n })
        } else {
            Ok(())
        }
    }

    pub fn paths<'a>(
        &self,
        n: usize,
        filter: &'a PathFilter,
    ) -> Result<impl Iterator<Item = Path> + 'a, EnumerateError> {
        self.check(n)?;
        Ok(gen_dyck(n).filter(move |p| filter.matches(p)))
    }

    pub fn count_filtered(&self, n: usize, filter: &PathFilter) -> Result<BigUint, EnumerateError> {
        Ok(BigUint::from(self.paths(n, filter)?.count()))
    }

    /// `q_n`: (-1)-Dyck paths whose last valley exists and is at ground level.
    pub fn count_q(&self, n: usize) -> Result<BigUint, EnumerateError> {
        self.count_filtered(n, &PathFilter::ground_last_valley())
    }

    /// `b(n)`: as `q_n` but also counting the pyramid (and `b(0) = 1`).
    pub fn count_b(&self, n: usize) -> Result<BigUint, EnumerateError> {
        self.count_filtered(n, &PathFilter::ground_or_pyramid())
    }

    pub fn total_area(&self, n: usize, filter: &PathFilter) -> Result<BigUint, EnumerateError> {
        let total: u128 = self.paths(n, filter)?.map(|p| u128::from(p.area())).sum();
        Ok(BigUint::from(total))
    }

    /// Exact histogram of `stat` over the matching paths.
    pub fn statistic_distribution(
        &self,
        n: usize,
        filter: &PathFilter,
        stat: Statistic,
    ) -> Result<BTreeMap<u64, BigUint>, EnumerateError> {
        let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
        for p in self.paths(n, filter)? {
            *counts.entry(stat.of(&p)).or_default() += 1;
        }
        Ok(counts
            .into_iter()
            .map(|(k, v)| (k, BigUint::from(v)))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn catalan(n: u64) -> u64 {
        // C_n = binom(2n, n) / (n + 1), evaluated incrementally.
        (0..n).fold(1u64, |c, k| c * 2 * (2 * k + 1) / (k + 2))
    }

    #[test]
    fn generator_counts_are_catalan() {
        assert_eq!(gen_dyck(0).collect::<Vec<_>>(), vec![Path::empty()]);
        assert_eq!(gen_dyck(3).count(), 5);
        assert_eq!(gen_dyck(10).count(), 16796);
        for n in 0..=12 {
            let paths: Vec<Path> = gen_dyck(n).collect();
            assert_eq!(paths.len() as u64, catalan(n as u64), "n = {n}");
            let unique: HashSet<&Path> = paths.iter().collect();
            assert_eq!(unique.len(), paths.len());
        }
    }

    #[test]
    fn generator_is_lexicographic() {
        let paths: Vec<Path> = gen_dyck(6).collect();
        assert_eq!(paths.first().unwrap(), &Path::pyramid(6));
        assert!(paths.windows(2).all(|w| w[0].steps() < w[1].steps()));
        assert_eq!(
            gen_dyck(2).map(|p| p.to_string()).collect::<Vec<_>>(),
            ["UUDD", "UDUD"]
        );
    }

    #[test]
    fn filtered_counts() {
        let e = Enumerator::default();
        assert_eq!(
            e.count_filtered(5, &PathFilter::d_dyck(-1)).unwrap(),
            big(41)
        );
        assert_eq!(
            e.count_filtered(7, &PathFilter::d_dyck(-2)).unwrap(),
            big(419)
        );
        assert_eq!(
            e.count_filtered(4, &PathFilter::d_dyck(-1).with_peaks(3))
                .unwrap(),
            big(6)
        );
    }

    #[test]
    fn q_and_b_counts() {
        let e = Enumerator::default();
        assert_eq!(e.count_q(1).unwrap(), big(0));
        assert_eq!(e.count_q(2).unwrap(), big(1));
        assert_eq!(e.count_q(3).unwrap(), big(3));
        assert_eq!(e.count_q(4).unwrap(), big(8));
        assert_eq!(e.count_b(0).unwrap(), big(1));
        assert_eq!(e.count_b(4).unwrap(), big(9));
        for n in 1..=10 {
            assert_eq!(e.count_b(n).unwrap(), e.count_q(n).unwrap() + 1u32);
        }
    }

    #[test]
    fn total_areas() {
        let e = Enumerator::default();
        assert_eq!(e.total_area(3, &PathFilter::d_dyck(-1)).unwrap(), big(29));
        assert_eq!(e.total_area(2, &PathFilter::all()).unwrap(), big(6));
        assert_eq!(
            e.total_area(4, &PathFilter::ground_last_valley()).unwrap(),
            big(58)
        );
    }

    #[test]
    fn distributions() {
        let e = Enumerator::default();
        let hist = |n, stat| {
            e.statistic_distribution(n, &PathFilter::d_dyck(-1), stat)
                .unwrap()
                .into_iter()
                .map(|(k, v)| (k, u64::try_from(v).unwrap()))
                .collect::<Vec<_>>()
        };
        assert_eq!(hist(4, Statistic::Peaks), [(1, 1), (2, 6), (3, 6), (4, 1)]);
        assert_eq!(
            hist(5, Statistic::Peaks),
            [(1, 1), (2, 10), (3, 19), (4, 10), (5, 1)]
        );
        assert_eq!(hist(1, Statistic::Area), [(1, 1)]);
    }

    #[test]
    fn distribution_marginals_match_counts() {
        let e = Enumerator::default();
        let ds = [
            DParam::Finite(-1),
            DParam::Finite(-2),
            DParam::Finite(-3),
            DParam::Finite(-4),
            DParam::Unrestricted,
        ];
        for n in 0..=10 {
            for d in ds {
                let f = PathFilter::d_dyck(d);
                let hist = e.statistic_distribution(n, &f, Statistic::Peaks).unwrap();
                let total: BigUint = hist.values().sum();
                assert_eq!(total, e.count_filtered(n, &f).unwrap(), "n={n} d={d}");
            }
        }
    }

    #[test]
    fn catalan_prefix_and_antitonicity() {
        let e = Enumerator::default();
        for ab in 1..=4i64 {
            for n in 1..=(ab as usize + 3) {
                assert_eq!(
                    e.count_filtered(n, &PathFilter::d_dyck(-ab)).unwrap(),
                    big(catalan(n as u64))
                );
            }
        }
        for n in 1..=10 {
            let counts: Vec<BigUint> = (1..=8i64)
                .map(|ab| e.count_filtered(n, &PathFilter::d_dyck(-ab)).unwrap())
                .collect();
            assert!(counts.windows(2).all(|w| w[0] <= w[1]));
            assert!(counts.iter().all(|c| *c <= big(catalan(n as u64))));
        }
    }

    #[test]
    fn total_dyck_area_identity() {
        let e = Enumerator::default();
        for n in 0..=12u32 {
            let binom = (0..n).fold(1u64, |acc, k| {
                acc * u64::from(2 * n + 1 - k) / u64::from(k + 1)
            });
            let expected = 4u64.pow(n) - binom;
            assert_eq!(
                e.total_area(n as usize, &PathFilter::all()).unwrap(),
                big(expected),
                "n = {n}"
            );
        }
    }

    #[test]
    fn bound_is_enforced() {
        let e = Enumerator::with_bound(5);
        assert_eq!(
            e.count_filtered(6, &PathFilter::all()),
            Err(EnumerateError::TooLarge { n: 6, max: 5 })
        );
        assert!(e.count_filtered(5, &PathFilter::all()).is_ok());
    }

    #[test]
    fn last_valley_filters() {
        assert!(LastValley::AbsentOrBelow(2).matches(None));
        assert!(LastValley::AbsentOrBelow(2).matches(Some(1)));
        assert!(!LastValley::AbsentOrBelow(2).matches(Some(2)));
        assert!(LastValley::AtLevel(3).matches(Some(3)));
        assert!(!LastValley::Ground.matches(None));
    }
}
