//! The dominant singularity of the (-1)-Dyck counting series and the
//! resulting estimate for `r(n)`, in software floating point.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use thiserror::Error;

use crate::recurrences::{MinusOneTables, RMethod};

pub const DEFAULT_DIGITS: usize = 50;
pub const MIN_DIGITS: usize = 6;
const RM: RoundingMode = RoundingMode::ToEven;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AsymptoticsError {
    #[error("precision must be at least {MIN_DIGITS} digits, got {0}")]
    PrecisionTooLow(usize),
    #[error("the two evaluations of rho disagree: {closed} vs {bisection}")]
    Disagreement { closed: String, bisection: String },
    #[error("n must be at least 1")]
    ZeroIndex,
    #[error("floating point failure: {0}")]
    Float(String),
}

/// Working precision in bits for `digits` decimal digits, with guard bits
/// for the large powers of `1/rho`.
fn bits_for(digits: usize) -> usize {
    (digits * 3322).div_ceil(1000) + 128
}

fn int(v: u64, p: usize) -> BigFloat {
    BigFloat::from_u64(v, p)
}

fn consts() -> Consts {
    Consts::new().expect("constant cache")
}

/// `1 - 4x + 2x^2 + x^4`.
pub fn quartic(x: &BigFloat, p: usize) -> BigFloat {
    let x2 = x.mul(x, p, RM);
    let x4 = x2.mul(&x2, p, RM);
    int(1, p)
        .sub(&x.mul(&int(4, p), p, RM), p, RM)
        .add(&x2.mul(&int(2, p), p, RM), p, RM)
        .add(&x4, p, RM)
}

/// `(-1 - 4 * 2^(2/3) / cbrt(13 + 3 sqrt 33) + cbrt(2 (13 + 3 sqrt 33))) / 3`.
pub fn rho_closed_form(p: usize) -> BigFloat {
    let s = int(33, p).sqrt(p, RM);
    let inner = int(13, p).add(&s.mul(&int(3, p), p, RM), p, RM);
    let c1 = inner.cbrt(p, RM);
    let c2 = inner.mul(&int(2, p), p, RM).cbrt(p, RM);
    let two_23 = int(4, p).cbrt(p, RM);
    let middle = two_23.mul(&int(4, p), p, RM).div(&c1, p, RM);
    int(0, p)
        .sub(&int(1, p), p, RM)
        .sub(&middle, p, RM)
        .add(&c2, p, RM)
        .div(&int(3, p), p, RM)
}

/// Bisection for the root of the quartic in `[0, 1/2]`, where it is
/// decreasing and changes sign once.
pub fn rho_bisection(p: usize) -> BigFloat {
    let mut lo = int(0, p);
    let mut hi = int(1, p).div(&int(2, p), p, RM);
    let half = hi.clone();
    for _ in 0..p {
        let mid = lo.add(&hi, p, RM).mul(&half, p, RM);
        if quartic(&mid, p).is_positive() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo.add(&hi, p, RM).mul(&half, p, RM)
}

/// `rho` and the amplitude `sqrt(rho (4 - 4 rho - 4 rho^3)) / (4 (-1 + 4 rho - 2 rho^2))`.
#[derive(Clone, Debug)]
pub struct SingularityData {
    pub digits: usize,
    pub precision_bits: usize,
    pub rho: BigFloat,
    pub rho_bisection: BigFloat,
    pub amplitude: BigFloat,
}

pub fn compute_rho(digits: usize) -> Result<SingularityData, AsymptoticsError> {
    if digits < MIN_DIGITS {
        return Err(AsymptoticsError::PrecisionTooLow(digits));
    }
    let p = bits_for(digits);
    let rho = rho_closed_form(p);
    let rho_bisection = rho_bisection(p);
    let (a, b) = (
        to_fixed(&rho, digits + 2)?,
        to_fixed(&rho_bisection, digits + 2)?,
    );
    if round_fixed(&a, digits) != round_fixed(&b, digits) {
        return Err(AsymptoticsError::Disagreement {
            closed: a,
            bisection: b,
        });
    }
    let r2 = rho.mul(&rho, p, RM);
    let r3 = r2.mul(&rho, p, RM);
    let under = int(4, p)
        .sub(&rho.mul(&int(4, p), p, RM), p, RM)
        .sub(&r3.mul(&int(4, p), p, RM), p, RM)
        .mul(&rho, p, RM);
    let denom = rho
        .mul(&int(4, p), p, RM)
        .sub(&int(1, p), p, RM)
        .sub(&r2.mul(&int(2, p), p, RM), p, RM)
        .mul(&int(4, p), p, RM);
    let amplitude = under.sqrt(p, RM).div(&denom, p, RM);
    Ok(SingularityData {
        digits,
        precision_bits: p,
        rho,
        rho_bisection,
        amplitude,
    })
}

impl SingularityData {
    pub fn residual(&self) -> BigFloat {
        quartic(&self.rho, self.precision_bits)
    }

    /// `rho^(-n) / sqrt(pi n^3) * amplitude`.
    pub fn estimate(&self, n: u64) -> Result<BigFloat, AsymptoticsError> {
        if n == 0 {
            return Err(AsymptoticsError::ZeroIndex);
        }
        let p = self.precision_bits;
        let pi = consts().pi(p, RM);
        let n3 = int(n, p).powi(3, p, RM);
        let root = n3.mul(&pi, p, RM).sqrt(p, RM);
        let growth = int(1, p).div(&self.rho, p, RM).powi(n as usize, p, RM);
        Ok(growth.div(&root, p, RM).mul(&self.amplitude, p, RM))
    }

    /// `estimate / exact - 1`.
    pub fn relative_error(&self, n: u64, exact: &BigInt) -> Result<BigFloat, AsymptoticsError> {
        let p = self.precision_bits;
        let exact = from_bigint(exact, p)?;
        Ok(self.estimate(n)?.div(&exact, p, RM).sub(&int(1, p), p, RM))
    }
}

pub fn from_bigint(v: &BigInt, p: usize) -> Result<BigFloat, AsymptoticsError> {
    let x = BigFloat::parse(&v.to_string(), Radix::Dec, p, RM, &mut consts());
    if x.is_nan() {
        return Err(AsymptoticsError::Float(format!("cannot convert {v}")));
    }
    Ok(x)
}

/// Estimate of `r(n)` at the default precision.
pub fn r_asymptotic(n: u64) -> Result<BigFloat, AsymptoticsError> {
    compute_rho(DEFAULT_DIGITS)?.estimate(n)
}

/// Sign, decimal digits and exponent `e` such that `|x| = 0.d1d2... * 10^e`.
fn decimal_parts(x: &BigFloat) -> Result<(bool, Vec<u8>, i64), AsymptoticsError> {
    let text = x
        .format(Radix::Dec, RM, &mut consts())
        .map_err(|e| AsymptoticsError::Float(format!("{e:?}")))?;
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.as_str()),
    };
    let (mantissa, exp) = match body.split_once('e') {
        Some((m, e)) => (
            m,
            e.parse::<i64>()
                .map_err(|_| AsymptoticsError::Float(text.clone()))?,
        ),
        None => (body, 0),
    };
    let (whole, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits: Vec<u8> = whole
        .bytes()
        .chain(frac.bytes())
        .map(|b| b - b'0')
        .collect();
    let first = digits.iter().position(|&d| d != 0);
    match first {
        None => Ok((false, Vec::new(), 0)),
        Some(i) => {
            let point = whole.len() as i64 + exp;
            Ok((negative, digits[i..].to_vec(), point - i as i64))
        }
    }
}

/// Rounds a digit string (half up), returning the new digits and whether a
/// carry lengthened the number.
fn round_digits(digits: &[u8], keep: usize) -> (Vec<u8>, bool) {
    if digits.len() <= keep {
        let mut d = digits.to_vec();
        d.resize(keep, 0);
        return (d, false);
    }
    let mut d = digits[..keep].to_vec();
    if digits[keep] >= 5 {
        let mut i = keep;
        loop {
            if i == 0 {
                d.insert(0, 1);
                d.pop();
                return (d, true);
            }
            i -= 1;
            if d[i] == 9 {
                d[i] = 0;
            } else {
                d[i] += 1;
                break;
            }
        }
    }
    (d, false)
}

/// Fixed-point decimal with `frac` digits after the point.
pub fn to_fixed(x: &BigFloat, frac: usize) -> Result<String, AsymptoticsError> {
    let (negative, digits, exp) = decimal_parts(x)?;
    // Digits of |x| * 10^frac rounded to an integer.
    let keep = exp + frac as i64;
    let mut value = match keep {
        k if k < 0 => Vec::new(),
        0 if digits.first().is_some_and(|&d| d >= 5) => vec![1],
        0 => Vec::new(),
        k => {
            let (mut d, carry) = round_digits(&digits, k as usize);
            if carry {
                d.push(0);
            }
            d
        }
    };
    while value.len() <= frac {
        value.insert(0, 0);
    }
    let split = value.len() - frac;
    let mut out = String::new();
    if negative && value.iter().any(|&d| d != 0) {
        out.push('-');
    }
    out.extend(value[..split].iter().map(|d| char::from(b'0' + d)));
    if frac > 0 {
        out.push('.');
        out.extend(value[split..].iter().map(|d| char::from(b'0' + d)));
    }
    Ok(out)
}

/// Rounds a fixed-point string to `frac` fractional digits.
fn round_fixed(s: &str, frac: usize) -> String {
    let x = BigFloat::parse(s, Radix::Dec, bits_for(s.len()), RM, &mut consts());
    to_fixed(&x, frac).unwrap_or_else(|_| s.to_string())
}

/// Scientific notation with `sig` significant digits: `4.6e3`.
pub fn to_scientific(x: &BigFloat, sig: usize) -> Result<String, AsymptoticsError> {
    let (negative, digits, exp) = decimal_parts(x)?;
    if digits.is_empty() {
        return Ok("0".to_string());
    }
    let sig = sig.max(1);
    let (d, carry) = round_digits(&digits, sig);
    let exp = exp - 1 + i64::from(carry);
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push(char::from(b'0' + d[0]));
    if sig > 1 {
        out.push('.');
        out.extend(d[1..].iter().map(|d| char::from(b'0' + d)));
    }
    out.push_str(&format!("e{exp}"));
    Ok(out)
}

/// One line of the accuracy table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AccuracyRow {
    pub n: u64,
    pub exact: BigInt,
    pub estimate: String,
    pub ratio: String,
    pub relative_error: String,
}

/// Compares the estimate with exact `r(n)` from the order-6 recurrence.
pub fn accuracy_table(
    data: &SingularityData,
    ns: &[u64],
) -> Result<Vec<AccuracyRow>, AsymptoticsError> {
    let tables = MinusOneTables::new();
    let p = data.precision_bits;
    let shown = data.digits.min(20);
    ns.iter()
        .map(|&n| {
            let exact = tables.r_by(n as usize, RMethod::PRecurrence);
            let estimate = data.estimate(n)?;
            let ratio = estimate.div(&from_bigint(&exact, p)?, p, RM);
            let err = ratio.sub(&int(1, p), p, RM);
            Ok(AccuracyRow {
                n,
                estimate: to_scientific(&estimate, shown)?,
                ratio: to_fixed(&ratio, shown)?,
                relative_error: to_fixed(&err.abs(), shown)?,
                exact,
            })
        })
        .collect()
}

/// `n = 25 * 2^k` for `k = 0..5`.
pub const LADDER: [u64; 5] = [25, 50, 100, 200, 400];
