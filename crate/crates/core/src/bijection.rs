//! The encoding of (-1)-Dyck paths as a tuple of building blocks plus a
//! composition, and its inverse.
//!
//! A building block is the empty path, a pyramid `U^a D^a`, or a (-1)-Dyck
//! path whose last valley is at ground level. An encoding
//! `((P_1, ..., P_i), (C_1, ..., C_{i+1}))` produces
//!
//! ```text
//! U^{C_1} M_1 U^{C_2} M_2 ... U^{C_i} M_i U^{C_{i+1}} D^h
//! ```
//!
//! where `M_k` is `D^{C_k}` for the empty block, `P_k` for a pyramid and
//! `P_k D` otherwise, and `D^h` returns to ground.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::enumerate::gen_dyck;
use crate::path::{DParam, Path, Step};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BijectionError {
    #[error("malformed encoding: {0}")]
    MalformedEncoding(String),
    #[error("not a nonempty (-1)-Dyck path: {0}")]
    NotMinusOneDyck(String),
}

/// The kind of a building block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Block {
    Empty,
    Pyramid,
    GroundLastValley,
}

impl Block {
    pub fn classify(p: &Path) -> Option<Block> {
        if p.is_empty() {
            Some(Block::Empty)
        } else if p.is_pyramid() {
            Some(Block::Pyramid)
        } else if p.is_d_dyck(DParam::Finite(-1)) && p.last_valley_level() == Some(0) {
            Some(Block::GroundLastValley)
        } else {
            None
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Encoding {
    pub components: Vec<Path>,
    pub exponents: Vec<usize>,
}

impl Encoding {
    pub fn new(components: Vec<Path>, exponents: Vec<usize>) -> Self {
        Encoding {
            components,
            exponents,
        }
    }

    /// Semi-length of the encoded path.
    pub fn semi_length(&self) -> usize {
        self.exponents.iter().sum::<usize>()
            + self.components.iter().map(Path::semi_length).sum::<usize>()
    }

    pub fn validate(&self) -> Result<(), BijectionError> {
        if self.exponents.len() != self.components.len() + 1 {
            return Err(BijectionError::MalformedEncoding(format!(
                "{} components need {} exponents, got {}",
                self.components.len(),
                self.components.len() + 1,
                self.exponents.len()
            )));
        }
        if self.exponents.contains(&0) {
            return Err(BijectionError::MalformedEncoding(
                "exponents must be positive".into(),
            ));
        }
        for (k, p) in self.components.iter().enumerate() {
            if Block::classify(p).is_none() {
                return Err(BijectionError::MalformedEncoding(format!(
                    "component {} ({p}) is not empty, a pyramid, or a (-1)-Dyck path with last valley at ground",
                    k + 1
                )));
            }
        }
        Ok(())
    }
}

fn push_run(steps: &mut Vec<Step>, step: Step, len: usize) {
    steps.extend(std::iter::repeat_n(step, len));
}

pub fn phi(enc: &Encoding) -> Result<Path, BijectionError> {
    enc.validate()?;
    let mut steps = Vec::with_capacity(2 * enc.semi_length());
    let mut height = 0usize;
    for (p, &c) in enc.components.iter().zip(&enc.exponents) {
        push_run(&mut steps, Step::Up, c);
        height += c;
        match Block::classify(p).expect("validated") {
            Block::Empty => {
                push_run(&mut steps, Step::Down, c);
                height -= c;
            }
            Block::Pyramid => steps.extend_from_slice(p.steps()),
            Block::GroundLastValley => {
                steps.extend_from_slice(p.steps());
                steps.push(Step::Down);
                height -= 1;
            }
        }
    }
    let tail = *enc.exponents.last().expect("validated");
    push_run(&mut steps, Step::Up, tail);
    push_run(&mut steps, Step::Down, height + tail);
    Ok(Path::from_steps_unchecked(steps))
}

/// Point indices of the valleys whose level is exactly one below the level
/// of the preceding valley.
pub fn minus1_valley_positions(p: &Path) -> Vec<usize> {
    p.valleys()
        .windows(2)
        .filter(|w| i64::from(w[1].level) - i64::from(w[0].level) == -1)
        .map(|w| w[1].position)
        .collect()
}

/// Splits `steps[start..end]` into maximal runs `U^u D^d`. A trailing bare
/// `U^u` gets `d = 0`.
fn run_pairs(steps: &[Step], start: usize, end: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    let mut i = start;
    while i < end {
        let mut u = 0;
        while i < end && steps[i] == Step::Up {
            u += 1;
            i += 1;
        }
        let mut d = 0;
        while i < end && steps[i] == Step::Down {
            d += 1;
            i += 1;
        }
        pairs.push((u, d));
    }
    pairs
}

/// Decodes a segment without (-1)-valleys into blocks. Every pair except
/// the last is an empty block (`d = u`) or a pyramid (`d < u`); the last pair
/// supplies the exponent that follows.
fn parse_increasing(
    pairs: &[(usize, usize)],
    components: &mut Vec<Path>,
    exponents: &mut Vec<usize>,
) -> Result<usize, BijectionError> {
    let (last, body) = pairs
        .split_last()
        .ok_or_else(|| BijectionError::NotMinusOneDyck("empty segment between blocks".into()))?;
    for &(u, d) in body {
        if d == u {
            components.push(Path::empty());
            exponents.push(u);
        } else if d < u && d > 0 {
            components.push(Path::pyramid(d));
            exponents.push(u - d);
        } else {
            return Err(BijectionError::NotMinusOneDyck(format!(
                "run U^{u} D^{d} cannot start a block"
            )));
        }
    }
    Ok(last.0)
}

pub fn phi_inverse(p: &Path) -> Result<Encoding, BijectionError> {
    if p.is_empty() || !p.is_d_dyck(DParam::Finite(-1)) {
        return Err(BijectionError::NotMinusOneDyck(p.to_string()));
    }
    let steps = p.steps();
    let heights = p.heights();
    let levels: Vec<(usize, u32)> = p.valleys().iter().map(|v| (v.position, v.level)).collect();

    // Cut off blocks with a trailing D, right to left. Each entry is
    // (block start, red valley position).
    let mut cuts = Vec::new();
    let mut limit = steps.len();
    for t in (1..levels.len()).rev() {
        let (pos, level) = levels[t];
        if pos >= limit || i64::from(level) - i64::from(levels[t - 1].1) != -1 {
            continue;
        }
        let mut s = pos - 1;
        while s > 0 && heights[s - 1] > level {
            s -= 1;
        }
        cuts.push((s, pos));
        limit = s;
    }
    cuts.reverse();

    let mut components = Vec::new();
    let mut exponents = Vec::new();
    let mut seg_start = 0;
    for &(s, pos) in &cuts {
        let pairs = run_pairs(steps, seg_start, s);
        if pairs.last().is_none_or(|&(_, d)| d != 0) {
            return Err(BijectionError::NotMinusOneDyck(format!(
                "block at step {s} is not preceded by an up-run"
            )));
        }
        let c = parse_increasing(&pairs, &mut components, &mut exponents)?;
        exponents.push(c);
        components.push(Path::from_steps_unchecked(steps[s..pos - 1].to_vec()));
        seg_start = pos;
    }
    let pairs = run_pairs(steps, seg_start, steps.len());
    let tail = parse_increasing(&pairs, &mut components, &mut exponents)?;
    exponents.push(tail);
    Ok(Encoding::new(components, exponents))
}

/// Every building block of semi-length `m`.
pub fn blocks(m: usize) -> Vec<Path> {
    if m == 0 {
        return vec![Path::empty()];
    }
    gen_dyck(m)
        .filter(|p| Block::classify(p).is_some())
        .collect()
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    if total < parts {
        return Vec::new();
    }
    let mut out = Vec::new();
    for first in 1..=total - (parts - 1) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every encoding of total semi-length `n >= 1`.
pub fn encodings(n: usize) -> Vec<Encoding> {
    let by_len: Vec<Vec<Path>> = (0..n).map(blocks).collect();
    let mut out = Vec::new();
    // Tuples of blocks with total length `used`, extended one block at a time.
    let mut frontier: Vec<(Vec<Path>, usize)> = vec![(Vec::new(), 0)];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (tuple, used) in frontier {
            let i = tuple.len();
            for exps in compositions(n - used, i + 1) {
                out.push(Encoding::new(tuple.clone(), exps));
            }
            // Adding a block costs its length plus one more exponent.
            if n >= used + i + 2 {
                for m in 0..=n - used - i - 2 {
                    for b in &by_len[m] {
                        let mut t = tuple.clone();
                        t.push(b.clone());
                        next.push((t, used + m));
                    }
                }
            }
        }
        frontier = next;
    }
    out
}
