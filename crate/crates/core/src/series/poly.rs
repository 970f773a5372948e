use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Polynomial in a single marker variable (`y` for peaks, `q` for area) with
/// exact rational coefficients, lowest degree first. Trailing zeros are
/// always trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MarkerPoly {
    coeffs: Vec<BigRational>,
}

impl MarkerPoly {
    pub fn zero() -> Self {
        MarkerPoly::default()
    }

    pub fn one() -> Self {
        MarkerPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        MarkerPoly::from_coeffs(vec![c])
    }

    pub fn from_int(c: i64) -> Self {
        MarkerPoly::constant(BigRational::from_integer(c.into()))
    }

    /// `c * marker^k`.
    pub fn monomial(k: usize, c: BigRational) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        MarkerPoly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        MarkerPoly { coeffs }
    }

    pub fn from_ints<I: IntoIterator<Item = i64>>(coeffs: I) -> Self {
        MarkerPoly::from_coeffs(
            coeffs
                .into_iter()
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// The value when the polynomial is a constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        MarkerPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `marker^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        MarkerPoly { coeffs }
    }

    /// Drops all terms of degree above `max_degree`.
    pub fn truncate(&self, max_degree: usize) -> Self {
        MarkerPoly::from_coeffs(self.coeffs.iter().take(max_degree + 1).cloned().collect())
    }

    pub fn eval(&self, at: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * at + c)
    }

    /// Value of the derivative at `marker = 1`.
    pub fn derivative_at_one(&self) -> BigRational {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .fold(BigRational::zero(), |acc, (k, c)| {
                acc + c * BigRational::from_integer(BigInt::from(k))
            })
    }

    /// Integer coefficients, or `None` if any coefficient is fractional.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

impl Add for &MarkerPoly {
    type Output = MarkerPoly;

    fn add(self, rhs: &MarkerPoly) -> MarkerPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        MarkerPoly::from_coeffs((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &MarkerPoly {
    type Output = MarkerPoly;

    fn sub(self, rhs: &MarkerPoly) -> MarkerPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        MarkerPoly::from_coeffs((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &MarkerPoly {
    type Output = MarkerPoly;

    fn neg(self) -> MarkerPoly {
        MarkerPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &MarkerPoly {
    type Output = MarkerPoly;

    fn mul(self, rhs: &MarkerPoly) -> MarkerPoly {
        if self.is_zero() || rhs.is_zero() {
            return MarkerPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        MarkerPoly::from_coeffs(coeffs)
    }
}

impl MarkerPoly {
    /// Highest degree first with `var` as the marker: `q^2+3q+1`.
    pub fn render(&self, var: char) -> String {
        let mut out = String::new();
        self.write_with(&mut out, var).expect("writing to a String");
        out
    }

    fn write_with(&self, f: &mut impl fmt::Write, var: char) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            let coeff = if mag.is_one() && k > 0 {
                String::new()
            } else {
                mag.to_string()
            };
            let var = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            write!(f, "{sign}{coeff}{var}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Display for MarkerPoly {
    /// Renders with `y` as the marker: `y^2+3y+1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_with(f, 'y')
    }
}
