//! Truncated power series in `x` whose coefficients are exact polynomials in a
//! marker variable, plus solvers for the generating functions of d-Dyck paths.
//!
//! Everything here is exact rational arithmetic. A series of order `N` stores
//! the coefficients of `x^0 ..= x^N`; binary operations truncate to the
//! smaller order.

mod area;
mod gf;
mod poly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{Number, Value};
use thiserror::Error;

pub use area::{pyramid_series, solve_area_system, AreaSystem};
pub use gf::{
    lagrange_le, narayana_limit, s_relation_residual, series_b, series_l_closed_minus1,
    series_l_nonneg, series_l_univariate_minus1, series_q_closed, series_v, solve_le_system,
    LeSystem,
};
pub use poly::MarkerPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("division by a series whose constant term is not a nonzero constant")]
    DivisionByNonUnit,
    #[error("square root of a series whose constant term is not 1")]
    SqrtOfNonUnitConstant,
    #[error("series is not divisible by x^{power}")]
    NotDivisibleByX { power: usize },
    #[error("fixed-point iteration did not stabilise within {sweeps} sweeps")]
    NonConvergence { sweeps: usize },
    #[error("coefficient of x^{index} is not an integer")]
    NonIntegral { index: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed series JSON: {0}")]
    Json(String),
}

/// A power series in `x` truncated after `x^order`, with [`MarkerPoly`]
/// coefficients. Univariate series are the special case of constant
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateSeries {
    coeffs: Vec<MarkerPoly>,
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl BivariateSeries {
    pub fn zero(order: usize) -> Self {
        BivariateSeries {
            coeffs: vec![MarkerPoly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        BivariateSeries::constant(MarkerPoly::one(), order)
    }

    pub fn constant(c: MarkerPoly, order: usize) -> Self {
        let mut s = BivariateSeries::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// Pads with zeros or truncates so that the result has exactly `order + 1`
    /// coefficients.
    pub fn from_coeffs(mut coeffs: Vec<MarkerPoly>, order: usize) -> Self {
        coeffs.resize(order + 1, MarkerPoly::zero());
        BivariateSeries { coeffs }
    }

    /// A univariate series from rational coefficients.
    pub fn univariate(coeffs: Vec<BigRational>, order: usize) -> Self {
        BivariateSeries::from_coeffs(
            coeffs.into_iter().map(MarkerPoly::constant).collect(),
            order,
        )
    }

    /// A polynomial in `x` with integer coefficients, lowest power first.
    pub fn x_poly(coeffs: &[i64], order: usize) -> Self {
        BivariateSeries::univariate(coeffs.iter().map(|&c| rat(c)).collect(), order)
    }

    /// Sum of `c * x^i * y^j` over `(i, j, c)`.
    pub fn from_terms(terms: &[(usize, usize, i64)], order: usize) -> Self {
        let mut s = BivariateSeries::zero(order);
        for &(i, j, c) in terms {
            if i <= order {
                s.coeffs[i] = &s.coeffs[i] + &MarkerPoly::monomial(j, rat(c));
            }
        }
        s
    }

    /// `1 / (1 - x)`.
    pub fn geometric(order: usize) -> Self {
        BivariateSeries {
            coeffs: vec![MarkerPoly::one(); order + 1],
        }
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        BivariateSeries::from_terms(&[(1, 0, 1)], order)
    }

    /// The series `y` (marker only).
    pub fn marker(order: usize) -> Self {
        BivariateSeries::from_terms(&[(0, 1, 1)], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[MarkerPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &MarkerPoly {
        &self.coeffs[n]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MarkerPoly::is_zero)
    }

    pub fn with_order(&self, order: usize) -> Self {
        BivariateSeries::from_coeffs(self.coeffs.clone(), order)
    }

    /// Coefficientwise equality up to the smaller of the two orders.
    pub fn agrees_with(&self, other: &BivariateSeries) -> bool {
        self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a == b)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        BivariateSeries {
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&rat(c))
    }

    /// Multiplies by `x^k`, keeping the order.
    pub fn mul_x_pow(&self, k: usize) -> Self {
        let order = self.order();
        let mut coeffs = vec![MarkerPoly::zero(); k.min(order + 1)];
        coeffs.extend(
            self.coeffs
                .iter()
                .take((order + 1).saturating_sub(k))
                .cloned(),
        );
        BivariateSeries { coeffs }
    }

    /// Divides by `x^k`; the order drops by `k`.
    pub fn div_x_pow(&self, k: usize) -> Result<Self, SeriesError> {
        if k > self.order() || self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(SeriesError::NotDivisibleByX { power: k });
        }
        Ok(BivariateSeries {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// Multiplication that also drops marker degrees above `marker_cap`.
    pub fn mul_capped(&self, rhs: &BivariateSeries, marker_cap: Option<usize>) -> Self {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![MarkerPoly::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                let mut prod = a * b;
                if let Some(cap) = marker_cap {
                    prod = prod.truncate(cap);
                }
                coeffs[i + j] = &coeffs[i + j] + &prod;
            }
        }
        BivariateSeries { coeffs }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = BivariateSeries::one(self.order());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Multiplicative inverse; the constant term must be a nonzero constant.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let c0 = self.coeffs[0]
            .as_constant()
            .filter(|c| !c.is_zero())
            .ok_or(SeriesError::DivisionByNonUnit)?;
        let inv_c0 = c0.recip();
        let mut out: Vec<MarkerPoly> = Vec::with_capacity(self.coeffs.len());
        out.push(MarkerPoly::constant(inv_c0.clone()));
        for n in 1..self.coeffs.len() {
            let mut acc = MarkerPoly::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc = &acc + &(&self.coeffs[k] * &out[n - k]);
                }
            }
            out.push(acc.scale(&-inv_c0.clone()));
        }
        Ok(BivariateSeries { coeffs: out })
    }

    pub fn div(&self, rhs: &BivariateSeries) -> Result<Self, SeriesError> {
        Ok(self * &rhs.inverse()?)
    }

    /// Square root by Newton iteration `s <- (s + a/s) / 2`, doubling the
    /// working order each round. The constant term must be exactly 1.
    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        if self.coeffs[0] != MarkerPoly::one() {
            return Err(SeriesError::SqrtOfNonUnitConstant);
        }
        let target = self.order();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut s = BivariateSeries::one(0);
        let mut prec = 0;
        while prec < target {
            prec = (2 * prec + 1).min(target);
            let s_ext = s.with_order(prec);
            let a = self.with_order(prec);
            s = (&s_ext + &a.div(&s_ext)?).scale(&half);
        }
        Ok(s.with_order(target))
    }

    /// `c_n(q) x^n -> c_n(q) q^(2n) x^n`, i.e. the substitution `x -> x q^2`.
    pub fn subst_xq2(&self) -> Self {
        BivariateSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c.shift(2 * n))
                .collect(),
        }
    }

    /// Substitutes `x -> x * c` for a rational constant `c`.
    pub fn subst_scale_x(&self, c: &BigRational) -> Self {
        let mut factor = BigRational::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for p in &self.coeffs {
            coeffs.push(p.scale(&factor));
            factor = &factor * c;
        }
        BivariateSeries { coeffs }
    }

    pub fn truncate_marker(&self, max_degree: usize) -> Self {
        BivariateSeries {
            coeffs: self.coeffs.iter().map(|c| c.truncate(max_degree)).collect(),
        }
    }

    /// Sets the marker to `at`, giving univariate coefficients.
    pub fn eval_marker(&self, at: &BigRational) -> Vec<BigRational> {
        self.coeffs.iter().map(|c| c.eval(at)).collect()
    }

    /// Coefficients with the marker set to 1.
    pub fn at_marker_one(&self) -> Vec<BigRational> {
        self.eval_marker(&BigRational::one())
    }

    /// Integer coefficients with the marker set to 1.
    pub fn integers_at_one(&self) -> Result<Vec<BigInt>, SeriesError> {
        self.at_marker_one()
            .into_iter()
            .enumerate()
            .map(|(index, c)| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(SeriesError::NonIntegral { index })
                }
            })
            .collect()
    }

    /// Coefficients of `d/dq` evaluated at `q = 1`.
    pub fn marker_derivative_at_one(&self) -> Vec<BigRational> {
        self.coeffs
            .iter()
            .map(MarkerPoly::derivative_at_one)
            .collect()
    }

    /// JSON form: one array per power of `x`, each holding `[numerator,
    /// denominator]` pairs for increasing powers of the marker.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coeffs
                .iter()
                .map(|p| {
                    Value::Array(
                        p.coeffs()
                            .iter()
                            .map(|c| {
                                Value::Array(vec![big_number(c.numer()), big_number(c.denom())])
                            })
                            .collect(),
                    )
                })
                .collect(),
        )
    }

    pub fn from_json(value: &Value) -> Result<Self, SeriesError> {
        let bad = |msg: &str| SeriesError::Json(msg.to_string());
        let rows = value
            .as_array()
            .ok_or_else(|| bad("expected an array of rows"))?;
        if rows.is_empty() {
            return Err(bad("a series needs at least the x^0 row"));
        }
        let coeffs = rows
            .iter()
            .map(|row| {
                let cells = row.as_array().ok_or_else(|| bad("row is not an array"))?;
                let rats = cells
                    .iter()
                    .map(|cell| match cell.as_array().map(Vec::as_slice) {
                        Some([n, d]) => {
                            let (n, d) = (parse_big(n)?, parse_big(d)?);
                            if d.is_zero() {
                                return Err(bad("zero denominator"));
                            }
                            Ok(BigRational::new(n, d))
                        }
                        _ => Err(bad("coefficient is not a [numerator, denominator] pair")),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(MarkerPoly::from_coeffs(rats))
            })
            .collect::<Result<Vec<_>, SeriesError>>()?;
        Ok(BivariateSeries { coeffs })
    }
}

fn big_number(v: &BigInt) -> Value {
    // Exact for any size thanks to serde_json's arbitrary_precision feature.
    Value::Number(v.to_string().parse::<Number>().expect("integer literal"))
}

fn parse_big(v: &Value) -> Result<BigInt, SeriesError> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return Err(SeriesError::Json("expected an integer".into())),
    };
    text.parse()
        .map_err(|_| SeriesError::Json(format!("not an integer: {text}")))
}

impl Add for &BivariateSeries {
    type Output = BivariateSeries;

    fn add(self, rhs: &BivariateSeries) -> BivariateSeries {
        BivariateSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &BivariateSeries {
    type Output = BivariateSeries;

    fn sub(self, rhs: &BivariateSeries) -> BivariateSeries {
        BivariateSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &BivariateSeries {
    type Output = BivariateSeries;

    fn neg(self) -> BivariateSeries {
        BivariateSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &BivariateSeries {
    type Output = BivariateSeries;

    fn mul(self, rhs: &BivariateSeries) -> BivariateSeries {
        self.mul_capped(rhs, None)
    }
}

impl fmt::Display for BivariateSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let xpow = match n {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{n}"),
            };
            match (n, c.as_constant()) {
                (0, _) => write!(f, "{c}")?,
                (_, Some(k)) if k.is_one() => write!(f, "{xpow}")?,
                (_, Some(k)) => write!(f, "{k}*{xpow}")?,
                _ => write!(f, "{xpow}*({c})")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(s: &BivariateSeries) -> Vec<i64> {
        s.integers_at_one()
            .unwrap()
            .into_iter()
            .map(|v| i64::try_from(v).unwrap())
            .collect()
    }

    #[test]
    fn sqrt_of_perfect_square() {
        let one_plus_x = BivariateSeries::x_poly(&[1, 1], 10);
        let sq = &one_plus_x * &one_plus_x;
        assert_eq!(sq.sqrt().unwrap(), one_plus_x);
    }

    #[test]
    fn sqrt_of_bivariate_square() {
        let p = BivariateSeries::from_terms(&[(0, 0, 1), (1, 1, 2), (2, 0, -3), (3, 2, 1)], 9);
        assert_eq!((&p * &p).sqrt().unwrap(), p);
    }

    #[test]
    fn subst_xq2_shifts_marker() {
        let xq = BivariateSeries::from_terms(&[(1, 1, 1)], 4);
        assert_eq!(xq.subst_xq2(), BivariateSeries::from_terms(&[(1, 3, 1)], 4));
    }

    #[test]
    fn geometric_inverse() {
        let one_minus_x = BivariateSeries::x_poly(&[1, -1], 12);
        let prod = &one_minus_x * &BivariateSeries::geometric(12);
        assert_eq!(prod, BivariateSeries::one(12));
        assert_eq!(
            one_minus_x.inverse().unwrap(),
            BivariateSeries::geometric(12)
        );
    }

    #[test]
    fn catalan_from_radical() {
        // (1 - sqrt(1 - 4x)) / (2x)
        let r = BivariateSeries::x_poly(&[1, -4], 11).sqrt().unwrap();
        let c = (&BivariateSeries::one(11) - &r)
            .div_x_pow(1)
            .unwrap()
            .scale(&BigRational::new(1.into(), 2.into()));
        assert_eq!(ints(&c), [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796]);
    }

    #[test]
    fn error_paths() {
        let x = BivariateSeries::x(5);
        assert_eq!(x.inverse(), Err(SeriesError::DivisionByNonUnit));
        let y = BivariateSeries::marker(5);
        assert_eq!(y.inverse(), Err(SeriesError::DivisionByNonUnit));
        assert_eq!(
            BivariateSeries::x_poly(&[4, 1], 5).sqrt(),
            Err(SeriesError::SqrtOfNonUnitConstant)
        );
        assert_eq!(
            BivariateSeries::one(5).div_x_pow(1),
            Err(SeriesError::NotDivisibleByX { power: 1 })
        );
    }

    #[test]
    fn truncates_to_smaller_order() {
        let a = BivariateSeries::geometric(3);
        let b = BivariateSeries::geometric(7);
        assert_eq!((&a * &b).order(), 3);
        assert_eq!((&a + &b).order(), 3);
        assert_eq!(
            BivariateSeries::x(4).mul_x_pow(10),
            BivariateSeries::zero(4)
        );
    }

    #[test]
    fn display() {
        let s = BivariateSeries::from_terms(&[(1, 1, 1), (2, 2, 1), (2, 1, 1)], 2);
        assert_eq!(s.to_string(), "x*(y) + x^2*(y^2+y) + O(x^3)");
    }

    #[test]
    fn json_accepts_string_integers() {
        let v: Value = serde_json::from_str(r#"[[["1","2"]],[]]"#).unwrap();
        let s = BivariateSeries::from_json(&v).unwrap();
        assert_eq!(s.coeff(0).coeff(0), BigRational::new(1.into(), 2.into()));
        assert!(BivariateSeries::from_json(&serde_json::json!([[[1, 0]]])).is_err());
        assert!(BivariateSeries::from_json(&serde_json::json!([[1]])).is_err());
    }

    fn arb_unit_series() -> impl Strategy<Value = BivariateSeries> {
        (1usize..=20).prop_flat_map(|order| {
            proptest::collection::vec(
                proptest::collection::vec((-5i64..=5, 1i64..=4), 0..4),
                order,
            )
            .prop_map(move |rows| {
                let mut coeffs = vec![MarkerPoly::one()];
                coeffs.extend(rows.into_iter().map(|r| {
                    MarkerPoly::from_coeffs(
                        r.into_iter()
                            .map(|(n, d)| BigRational::new(n.into(), d.into()))
                            .collect(),
                    )
                }));
                BivariateSeries::from_coeffs(coeffs, order)
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn sqrt_of_square_is_identity(s in arb_unit_series()) {
            prop_assert_eq!((&s * &s).sqrt().unwrap(), s);
        }

        #[test]
        fn inverse_is_two_sided(s in arb_unit_series()) {
            let one = BivariateSeries::one(s.order());
            prop_assert_eq!(&s * &s.inverse().unwrap(), one);
        }

        #[test]
        fn json_round_trip(s in arb_unit_series()) {
            let text = serde_json::to_string(&s.to_json()).unwrap();
            let back: Value = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(BivariateSeries::from_json(&back).unwrap(), s);
        }
    }
}
