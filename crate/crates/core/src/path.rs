//! Lattice paths built from `U = (1,1)` and `D = (1,-1)` steps, together with
//! the pointwise statistics used everywhere else in the crate.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("unexpected token {token:?} at position {position} (expected U/D or X/Y)")]
    BadToken { token: char, position: usize },
    #[error("path dips below the x-axis after step {position}")]
    BelowAxis { position: usize },
    #[error("path does not return to the x-axis ({ups} up steps, {downs} down steps)")]
    Unbalanced { ups: usize, downs: usize },
    #[error("invalid d parameter {0:?} (expected an integer or -inf)")]
    BadDParam(String),
}

/// A single step. `Up < Down`, which fixes the lexicographic order used by the
/// enumerator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    Up,
    Down,
}

impl Step {
    fn delta(self) -> i64 {
        match self {
            Step::Up => 1,
            Step::Down => -1,
        }
    }

    fn token(self) -> char {
        match self {
            Step::Up => 'U',
            Step::Down => 'D',
        }
    }
}

/// The restriction parameter `d`. `Unrestricted` stands for `d = -inf`, under
/// which every Dyck path qualifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DParam {
    Finite(i64),
    Unrestricted,
}

impl DParam {
    /// `e = |d|` for negative `d`.
    pub fn e(self) -> Option<u32> {
        match self {
            DParam::Finite(d) if d < 0 => u32::try_from(-d).ok(),
            _ => None,
        }
    }
}

impl From<i64> for DParam {
    fn from(d: i64) -> Self {
        DParam::Finite(d)
    }
}

impl fmt::Display for DParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DParam::Finite(d) => write!(f, "{d}"),
            DParam::Unrestricted => f.write_str("-inf"),
        }
    }
}

impl FromStr for DParam {
    type Err = PathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("-inf") {
            return Ok(DParam::Unrestricted);
        }
        t.parse::<i64>()
            .map(DParam::Finite)
            .map_err(|_| PathError::BadDParam(s.to_string()))
    }
}

/// Left-to-right levels of the valley vertices of a path.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ValleyVector(Vec<u32>);

impl ValleyVector {
    pub fn levels(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Differences `nu[i+1] - nu[i]` between consecutive valleys.
    pub fn differences(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.windows(2).map(|w| i64::from(w[1]) - i64::from(w[0]))
    }

    pub fn min_difference(&self) -> Option<i64> {
        self.differences().min()
    }

    /// The d-Dyck admissibility test on the valley vector alone.
    pub fn admits(&self, d: DParam) -> bool {
        match d {
            DParam::Unrestricted => true,
            DParam::Finite(d) => self.len() <= 1 || self.differences().all(|diff| diff >= d),
        }
    }
}

impl From<Vec<u32>> for ValleyVector {
    fn from(levels: Vec<u32>) -> Self {
        ValleyVector(levels)
    }
}

/// A valley vertex: `position` is the index of the lattice point between the
/// `D` and the `U` (so `steps[position - 1] == Down`, `steps[position] == Up`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Valley {
    pub position: usize,
    pub level: u32,
}

/// A Dyck path. Always balanced and never below the axis; the empty path is
/// allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    steps: Vec<Step>,
}

impl Path {
    pub fn empty() -> Self {
        Path::default()
    }

    /// `U^a D^a`.
    pub fn pyramid(a: usize) -> Self {
        let mut steps = vec![Step::Up; a];
        steps.extend(std::iter::repeat_n(Step::Down, a));
        Path { steps }
    }

    /// Parses `U`/`D` tokens (aliases `X`/`Y`), case-insensitive, no whitespace.
    pub fn parse(text: &str) -> Result<Self, PathError> {
        let steps = text
            .chars()
            .enumerate()
            .map(|(position, token)| match token.to_ascii_uppercase() {
                'U' | 'X' => Ok(Step::Up),
                'D' | 'Y' => Ok(Step::Down),
                _ => Err(PathError::BadToken { token, position }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Path::from_steps(steps)
    }

    pub fn from_steps(steps: Vec<Step>) -> Result<Self, PathError> {
        let mut height = 0i64;
        for (i, s) in steps.iter().enumerate() {
            height += s.delta();
            if height < 0 {
                return Err(PathError::BelowAxis { position: i });
            }
        }
        if height != 0 {
            let ups = steps.iter().filter(|s| **s == Step::Up).count();
            return Err(PathError::Unbalanced {
                ups,
                downs: steps.len() - ups,
            });
        }
        Ok(Path { steps })
    }

    /// Caller guarantees the Dyck conditions.
    pub(crate) fn from_steps_unchecked(steps: Vec<Step>) -> Self {
        debug_assert!(Path::from_steps(steps.clone()).is_ok());
        Path { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn semi_length(&self) -> usize {
        self.steps.len() / 2
    }

    /// Heights of all `2n + 1` lattice points, starting and ending at 0.
    pub fn heights(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut h = 0u32;
        out.push(h);
        for s in &self.steps {
            match s {
                Step::Up => h += 1,
                Step::Down => h -= 1,
            }
            out.push(h);
        }
        out
    }

    pub fn valleys(&self) -> Vec<Valley> {
        let mut out = Vec::new();
        let mut h = 0u32;
        for (i, s) in self.steps.iter().enumerate() {
            match s {
                Step::Up => {
                    if i > 0 && self.steps[i - 1] == Step::Down {
                        out.push(Valley {
                            position: i,
                            level: h,
                        });
                    }
                    h += 1;
                }
                Step::Down => h -= 1,
            }
        }
        out
    }

    pub fn valley_vector(&self) -> ValleyVector {
        ValleyVector(self.valleys().into_iter().map(|v| v.level).collect())
    }

    pub fn valley_count(&self) -> usize {
        self.steps
            .windows(2)
            .filter(|w| w[0] == Step::Down && w[1] == Step::Up)
            .count()
    }

    /// Number of `UD` factors.
    pub fn peaks(&self) -> usize {
        self.steps
            .windows(2)
            .filter(|w| w[0] == Step::Up && w[1] == Step::Down)
            .count()
    }

    /// Sum of the heights of all lattice points.
    pub fn area(&self) -> u64 {
        self.heights().iter().map(|&h| u64::from(h)).sum()
    }

    pub fn last_valley_level(&self) -> Option<u32> {
        self.valleys().last().map(|v| v.level)
    }

    pub fn is_d_dyck(&self, d: DParam) -> bool {
        match d {
            DParam::Unrestricted => true,
            _ => self.valley_vector().admits(d),
        }
    }

    /// `U^a D^a` with `a >= 1`.
    pub fn is_pyramid(&self) -> bool {
        !self.is_empty() && self.valley_count() == 0
    }

    /// True when `pattern` occurs as a contiguous factor.
    pub fn contains_factor(&self, pattern: &[Step]) -> bool {
        !pattern.is_empty() && self.steps.windows(pattern.len()).any(|w| w == pattern)
    }

    /// Concatenation of two Dyck paths.
    pub fn concat(&self, other: &Path) -> Path {
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        Path { steps }
    }

    /// Splits at every return to the axis.
    pub fn prime_factors(&self) -> Vec<Path> {
        let mut out = Vec::new();
        let mut start = 0;
        let mut h = 0i64;
        for (i, s) in self.steps.iter().enumerate() {
            h += s.delta();
            if h == 0 {
                out.push(Path {
                    steps: self.steps[start..=i].to_vec(),
                });
                start = i + 1;
            }
        }
        out
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}", s.token())?;
        }
        Ok(())
    }
}

impl FromStr for Path {
    type Err = PathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Path::parse(s)
    }
}

impl Serialize for Path {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Path {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        Path::parse(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    /// A 28-step path with valley levels (0,1,0,3,4,3,2) and area 70.
    pub(crate) const FIGURE_ONE: &str = "UDUUDUDDUUUUDUUDUDDUUDDDUDDD";

    fn p(s: &str) -> Path {
        Path::parse(s).unwrap()
    }

    #[test]
    fn parses_small_paths() {
        assert_eq!(p("UD").semi_length(), 1);
        assert_eq!(p("UUDD").semi_length(), 2);
        assert_eq!(p("xxyy"), p("UUDD"));
        assert_eq!(p("uudd"), p("UUDD"));
        assert!(p("").is_empty());
    }

    #[test]
    fn rejects_malformed_paths() {
        assert_eq!(
            Path::parse("UDDU"),
            Err(PathError::BelowAxis { position: 2 })
        );
        assert_eq!(
            Path::parse("UUD"),
            Err(PathError::Unbalanced { ups: 2, downs: 1 })
        );
        assert_eq!(
            Path::parse("UZ"),
            Err(PathError::BadToken {
                token: 'Z',
                position: 1
            })
        );
        assert!(matches!(
            Path::parse("U D"),
            Err(PathError::BadToken { .. })
        ));
    }

    #[test]
    fn figure_one_statistics() {
        let fig = p(FIGURE_ONE);
        assert_eq!(fig.semi_length(), 14);
        assert_eq!(fig.area(), 70);
        assert_eq!(fig.valley_vector().levels(), &[0, 1, 0, 3, 4, 3, 2]);
        assert!(fig.is_d_dyck(DParam::Finite(-1)));
        assert!(!fig.is_d_dyck(DParam::Finite(0)));
        assert_eq!(fig.last_valley_level(), Some(2));
    }

    #[test]
    fn valley_vectors() {
        assert!(Path::pyramid(5).valley_vector().is_empty());
        assert_eq!(p("UUUDUDDDUD").valley_vector().levels(), &[2, 0]);
        assert_eq!(
            p("UDUD").valleys(),
            vec![Valley {
                position: 2,
                level: 0
            }]
        );
    }

    #[test]
    fn d_dyck_membership() {
        let bad = p("UUUDUDDDUD");
        assert!(!bad.is_d_dyck(DParam::Finite(-1)));
        assert!(bad.is_d_dyck(DParam::Finite(-2)));
        assert!(bad.is_d_dyck(DParam::Unrestricted));
        for a in 1..6 {
            for d in -3..3 {
                assert!(Path::pyramid(a).is_d_dyck(DParam::Finite(d)));
            }
        }
        assert!(Path::empty().is_d_dyck(DParam::Finite(5)));
    }

    #[test]
    fn peaks_and_area() {
        assert_eq!(p("UD").peaks(), 1);
        assert_eq!(p("UDUDUD").peaks(), 3);
        assert_eq!(p("UUDUDD").peaks(), 2);
        assert_eq!(Path::empty().peaks(), 0);

        assert_eq!(p("UD").area(), 1);
        assert_eq!(Path::empty().area(), 0);
        for a in 1..10 {
            assert_eq!(Path::pyramid(a).area(), (a * a) as u64);
        }
    }

    #[test]
    fn last_valley() {
        assert_eq!(p("UUDD").last_valley_level(), None);
        assert_eq!(p("UDUD").last_valley_level(), Some(0));
    }

    #[test]
    fn d_param_parsing() {
        assert_eq!("-inf".parse::<DParam>().unwrap(), DParam::Unrestricted);
        assert_eq!("-3".parse::<DParam>().unwrap(), DParam::Finite(-3));
        assert_eq!(DParam::Finite(-3).e(), Some(3));
        assert_eq!(DParam::Finite(2).e(), None);
        assert!("abc".parse::<DParam>().is_err());
    }

    /// Random Dyck paths from a random walk, reflected at the axis and closed.
    pub(crate) fn arb_path(max_half: usize) -> impl Strategy<Value = Path> {
        proptest::collection::vec(any::<bool>(), 0..=2 * max_half).prop_map(|bits| {
            let mut steps = Vec::new();
            let mut h = 0usize;
            for up in bits {
                if up || h == 0 {
                    steps.push(Step::Up);
                    h += 1;
                } else {
                    steps.push(Step::Down);
                    h -= 1;
                }
            }
            steps.extend(std::iter::repeat_n(Step::Down, h));
            Path::from_steps(steps).unwrap()
        })
    }

    proptest! {
        #[test]
        fn peaks_exceed_valleys_by_one(path in arb_path(12)) {
            prop_assume!(!path.is_empty());
            prop_assert_eq!(path.peaks(), path.valley_count() + 1);
            prop_assert_eq!(path.valley_count(), path.valley_vector().len());
        }

        #[test]
        fn area_is_additive_over_ground_returns(path in arb_path(12)) {
            let total: u64 = path.prime_factors().iter().map(Path::area).sum();
            prop_assert_eq!(total, path.area());
        }

        #[test]
        fn d_dyck_is_monotone_in_d(path in arb_path(12), d in -6i64..4) {
            if path.is_d_dyck(DParam::Finite(d)) {
                for smaller in (d - 4)..=d {
                    prop_assert!(path.is_d_dyck(DParam::Finite(smaller)));
                }
            }
        }

        #[test]
        fn render_then_parse_round_trips(path in arb_path(12)) {
            prop_assert_eq!(Path::parse(&path.to_string()).unwrap(), path);
        }
    }
}
