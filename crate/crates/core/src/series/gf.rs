//! Generating functions for d-Dyck paths counted by semi-length (`x`) and
//! peaks (`y`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{BivariateSeries as Series, SeriesError};
use crate::recurrences::binomial;

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// `1 - 4x + 2x^2 + x^4`, the radicand shared by the d = -1 closed forms.
fn quartic(order: usize) -> Series {
    Series::x_poly(&[1, -4, 2, 0, 1], order)
}

/// `1 - x - 2xy - 2x^2y + x^2y^2 - x^3y^2`.
fn minus1_radicand(order: usize) -> Series {
    Series::from_terms(
        &[
            (0, 0, 1),
            (1, 0, -1),
            (1, 1, -2),
            (2, 1, -2),
            (2, 2, 1),
            (3, 2, -1),
        ],
        order,
    )
}

/// Rational generating function of the d-Dyck paths for `d >= 0`, empty path
/// included.
pub fn series_l_nonneg(d: u32, order: usize) -> Series {
    let d = d as usize;
    let num = Series::from_terms(
        &[(1, 1, 1), (2, 1, -2), (3, 1, 1), (2, 2, 1), (d + 2, 2, -1)],
        order,
    );
    let den = &Series::x_poly(&[1, -1], order)
        * &Series::from_terms(&[(0, 0, 1), (1, 0, -2), (2, 0, 1), (d + 1, 1, -1)], order);
    let frac = num.div(&den).expect("denominator has constant term 1");
    &Series::one(order) + &frac
}

/// Solution of the functional system for `e = |d|`: the peak generating
/// function `L_e`, the auxiliary `S_e`, and `Q_0 ..= Q_{e-1}`, where `Q_i`
/// counts paths whose last valley is at level `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeSystem {
    pub e: u32,
    pub l: Series,
    pub s: Series,
    pub q: Vec<Series>,
    /// Sweeps taken until two consecutive iterates agreed.
    pub sweeps: usize,
}

impl LeSystem {
    pub fn order(&self) -> usize {
        self.l.order()
    }

    /// `Q_i` recomputed from `S_e` by its closed form
    /// `x^(i+2) y S / ((1 - x)(1 - x S)^(i+1))`.
    pub fn closed_form_q(&self, i: usize) -> Series {
        let order = self.order();
        let one_minus_xs = &Series::one(order) - &self.s.mul_x_pow(1);
        let den = &Series::x_poly(&[1, -1], order) * &one_minus_xs.pow(i as u32 + 1);
        let num = (&Series::marker(order) * &self.s).mul_x_pow(i + 2);
        num.div(&den).expect("denominator has constant term 1")
    }

    /// `S_e` recomputed from `Q_{e-1}` by solving the quadratic. One order is
    /// lost to the division by `x`.
    pub fn closed_form_s(&self) -> Series {
        let order = self.order();
        let q_last = self.q.last().expect("e >= 1");
        let radicand = &Series::from_terms(
            &[
                (0, 0, 1),
                (1, 0, -2),
                (2, 0, 1),
                (1, 1, -2),
                (2, 1, -2),
                (2, 2, 1),
            ],
            order,
        ) + &q_last.mul_x_pow(2).scale_int(4);
        let num = &Series::from_terms(&[(0, 0, 1), (1, 0, -1), (1, 1, 1)], order)
            - &radicand.sqrt().expect("radicand has constant term 1");
        num.div_x_pow(1)
            .expect("numerator vanishes at x = 0")
            .scale(&half())
    }

    /// `L_e` recomputed as `x y / (1 - x - x S_e)`.
    pub fn l_from_s(&self) -> Series {
        let order = self.order();
        let den = &(&Series::one(order) - &Series::x(order)) - &self.s.mul_x_pow(1);
        Series::from_terms(&[(1, 1, 1)], order)
            .div(&den)
            .expect("denominator has constant term 1")
    }
}

/// Solves the system for `L_e`, `S_e` and the `Q_i` by Gauss-Seidel sweeps
/// from zero. Each right-hand side carries a factor `x` on the unknowns, so
/// one more coefficient becomes exact per sweep; the loop stops when two
/// consecutive sweeps agree and gives up after `order + 2` sweeps.
pub fn solve_le_system(e: u32, order: usize) -> Result<LeSystem, SeriesError> {
    if e == 0 {
        return Err(SeriesError::InvalidParameter("e must be at least 1".into()));
    }
    if order == 0 {
        return Err(SeriesError::InvalidParameter(
            "order must be at least 1".into(),
        ));
    }
    let x = Series::x(order);
    let xy = Series::from_terms(&[(1, 1, 1)], order);
    let y_geo = &Series::marker(order) * &Series::geometric(order);
    let xy_geo = y_geo.mul_x_pow(1);

    let mut l = Series::zero(order);
    let mut s = Series::zero(order);
    let mut q = vec![Series::zero(order); e as usize];
    let max_sweeps = order + 2;
    for sweep in 1..=max_sweeps {
        let xs = s.mul_x_pow(1);
        let mut next_q = Vec::with_capacity(q.len());
        for (i, qi) in q.iter().enumerate() {
            let feed = if i == 0 { &xy_geo } else { &next_q[i - 1] };
            let source = if i == 0 { &xs * feed } else { &x * feed };
            next_q.push(&source + &(&xs * qi));
        }
        let next_s = next_q.iter().fold(y_geo.clone(), |acc, qi| &acc + qi);
        let next_l = &(&xy + &(&x * &l)) + &(&next_s.mul_x_pow(1) * &l);
        let settled = next_l == l && next_s == s && next_q == q;
        l = next_l;
        s = next_s;
        q = next_q;
        if settled {
            return Ok(LeSystem {
                e,
                l,
                s,
                q,
                sweeps: sweep,
            });
        }
    }
    Err(SeriesError::NonConvergence { sweeps: max_sweeps })
}

/// The algebraic relation satisfied by `S_e`:
/// `(1 - xS)^e (y + (1 - y) x S) - S (1 - xS)^(e+1) - x^(e+2) y S / (1 - x)`.
/// Vanishes when `s` is the true `S_e`.
pub fn s_relation_residual(e: u32, s: &Series) -> Series {
    let order = s.order();
    let xs = s.mul_x_pow(1);
    let one_minus_xs = &Series::one(order) - &xs;
    let one_minus_y = Series::from_terms(&[(0, 0, 1), (0, 1, -1)], order);
    let first = &one_minus_xs.pow(e) * &(&Series::marker(order) + &(&one_minus_y * &xs));
    let second = s * &one_minus_xs.pow(e + 1);
    let third =
        (&(&Series::marker(order) * &Series::geometric(order)) * s).mul_x_pow(e as usize + 2);
    &(&first - &second) - &third
}

/// Closed radical form of `L(x, y)` for `d = -1`.
pub fn series_l_closed_minus1(order: usize) -> Series {
    let inner = minus1_radicand(order)
        .div(&Series::x_poly(&[1, -1], order))
        .expect("1 - x is a unit");
    let root = inner.sqrt().expect("radicand has constant term 1");
    let bracket = &Series::from_terms(&[(0, 0, 1), (1, 0, -2), (1, 1, -1)], order) - &root;
    let num = &Series::from_terms(&[(1, 1, 1), (0, 1, -1)], order) * &bracket;
    let den = Series::from_terms(
        &[(0, 0, 2), (1, 0, -4), (2, 0, 2), (1, 1, -4), (2, 1, 2)],
        order,
    );
    num.div(&den).expect("denominator has constant term 2")
}

/// Closed form of `Q(x, y)`, the paths of `D_{-1}` with at least one valley
/// and the last valley at ground level.
pub fn series_q_closed(order: usize) -> Series {
    let ext = order + 1;
    let radicand = &Series::x_poly(&[1, -1], ext) * &minus1_radicand(ext);
    let num = &Series::from_terms(&[(0, 0, 1), (1, 0, -1), (1, 1, -1), (2, 1, -1)], ext)
        - &radicand.sqrt().expect("radicand has constant term 1");
    num.div_x_pow(1)
        .expect("numerator vanishes at x = 0")
        .div(&Series::x_poly(&[2, -2], order))
        .expect("2 - 2x is a unit")
}

/// Generating function of `b(n)`: `Q(x, 1) + 1/(1 - x)`.
pub fn series_b(order: usize) -> Series {
    let ext = order + 1;
    let num = &Series::x_poly(&[1, 0, -1], ext) - &quartic(ext).sqrt().expect("constant term 1");
    num.div_x_pow(1)
        .expect("numerator vanishes at x = 0")
        .div(&Series::x_poly(&[2, -2], order))
        .expect("2 - 2x is a unit")
}

/// Closed form of `L(x) = L(x, 1)` for `d = -1`.
pub fn series_l_univariate_minus1(order: usize) -> Series {
    let num =
        &Series::x_poly(&[-1, 4, -3], order) + &quartic(order).sqrt().expect("constant term 1");
    num.div(&Series::x_poly(&[2, -8, 4], order))
        .expect("denominator has constant term 2")
}

/// Generating function of the total area `a(n)` over `D_{-1}(n)`.
pub fn series_v(order: usize) -> Series {
    let b = Series::x_poly(&[0, 2, -23, 107, -262, 359, -256, 82, -5, -10, 6], order);
    let c = Series::x_poly(&[0, 1, -10, 41, -89, 108, -73, 18, 2], order);
    let num = &b - &(&c * &quartic(order).sqrt().expect("constant term 1"));
    let one_minus_x = Series::x_poly(&[1, -1], order);
    let den = &(&one_minus_x.pow(2) * &Series::x_poly(&[1, -4, 2], order).pow(3))
        * &Series::x_poly(&[1, -3, -1, -1], order);
    num.div(&den).expect("denominator has constant term 1")
}

/// The `e -> infinity` limit of `L_e(x, y)`: the Narayana generating function
/// of all nonempty Dyck paths.
pub fn narayana_limit(order: usize) -> Series {
    let ext = order + 1;
    let radicand = Series::from_terms(
        &[
            (0, 0, 1),
            (1, 0, -2),
            (2, 0, 1),
            (1, 1, -2),
            (2, 1, -2),
            (2, 2, 1),
        ],
        ext,
    );
    let num = &Series::from_terms(&[(0, 0, 1), (1, 0, -1), (1, 1, -1)], ext)
        - &radicand.sqrt().expect("constant term 1");
    num.div_x_pow(1)
        .expect("numerator vanishes at x = 0")
        .scale(&half())
}

/// Vectors `(i_2, ..., i_{e+1})` of nonnegative integers with
/// `sum_j j * i_j = total`.
fn weighted_compositions(e: usize, total: usize) -> Vec<Vec<usize>> {
    fn rec(j: usize, last: usize, rem: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if j > last {
            if rem == 0 {
                out.push(acc.clone());
            }
            return;
        }
        for k in 0..=rem / j {
            acc.push(k);
            rec(j + 1, last, rem - j * k, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(2, e + 1, total, &mut Vec::new(), &mut out);
    out
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Cached powers `base^0, base^1, ...` of a series.
struct Powers {
    base: Series,
    table: Vec<Series>,
}

impl Powers {
    fn new(base: Series) -> Self {
        let one = Series::one(base.order());
        Powers {
            base,
            table: vec![one],
        }
    }

    fn get(&mut self, k: usize) -> &Series {
        while self.table.len() <= k {
            let next = self.table.last().expect("nonempty") * &self.base;
            self.table.push(next);
        }
        &self.table[k]
    }
}

/// Coefficients of `L_e(x, 1)` from the Lagrange-inversion sum over weighted
/// compositions `2 i_2 + ... + (e+1) i_{e+1} = n - 1`.
///
/// The `n`-th summand has `x`-valuation at least `(n + 1) / 2`, so summands
/// with `n <= 2 * order` cover every coefficient up to `x^order`.
pub fn lagrange_le(e: u32, order: usize) -> Result<Series, SeriesError> {
    if e == 0 {
        return Err(SeriesError::InvalidParameter("e must be at least 1".into()));
    }
    let e = e as usize;
    let growth = e as i64 + 2;
    // t = ((e+2) x (1-x) - 1 + x (1+x)) / (1-x)
    let t_num = Series::x_poly(&[-1, growth + 1, 1 - growth], order);
    let t = t_num
        .div(&Series::x_poly(&[1, -1], order))
        .expect("1 - x is a unit");
    let mut t_pow = Powers::new(t);
    // g_j = x binom(e+2, j) - binom(e, j-1), j = 2..=e
    let mut g_pows: Vec<Powers> = (2..=e)
        .map(|j| {
            let c1 = i64::try_from(binomial(growth, j as i64)).expect("small binomial");
            let c0 = i64::try_from(binomial(e as i64, j as i64 - 1)).expect("small binomial");
            Powers::new(Series::x_poly(&[-c0, c1], order))
        })
        .collect();
    let mut inv_den = Powers::new(
        Series::x_poly(&[1, -growth], order)
            .inverse()
            .expect("constant term 1"),
    );

    let mut total = Series::zero(order);
    for n in 1..=2 * order {
        let mut inner = Series::zero(order);
        for comp in weighted_compositions(e, n - 1) {
            let used: usize = comp.iter().sum();
            let x_power = n - used;
            if x_power > order {
                continue;
            }
            let mut coeff = factorial(n) / factorial(n - used);
            for &k in &comp {
                coeff /= factorial(k);
            }
            let mut term = t_pow.get(comp[e - 1]).clone();
            for (g, &k) in g_pows.iter_mut().zip(&comp[..e - 1]) {
                if k > 0 {
                    term = &term * g.get(k);
                }
            }
            let term = term
                .mul_x_pow(x_power)
                .scale(&BigRational::from_integer(coeff));
            inner = &inner + &term;
        }
        if inner.is_zero() {
            continue;
        }
        let summand =
            (&inner * inv_den.get(n)).scale(&BigRational::new(BigInt::one(), BigInt::from(n)));
        total = &total + &summand;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::MarkerPoly;

    fn ints(s: &Series) -> Vec<i64> {
        s.integers_at_one()
            .unwrap()
            .into_iter()
            .map(|v| i64::try_from(v).unwrap())
            .collect()
    }

    const R_MINUS1: [i64; 9] = [1, 2, 5, 14, 41, 123, 375, 1157, 3603];
    const R_MINUS2: [i64; 9] = [1, 2, 5, 14, 42, 131, 419, 1365, 4511];
    const R_MINUS3: [i64; 9] = [1, 2, 5, 14, 42, 132, 428, 1419, 4785];

    #[test]
    fn nonneg_d_counts() {
        let s0 = series_l_nonneg(0, 5);
        assert_eq!(ints(&s0), [1, 1, 2, 5, 13, 34]);
        for d in 0..5 {
            let s = series_l_nonneg(d, 3);
            assert_eq!(s.coeff(1), &MarkerPoly::from_ints([0, 1]));
        }
    }

    #[test]
    fn le_system_counts() {
        let sys1 = solve_le_system(1, 9).unwrap();
        assert_eq!(ints(&sys1.l)[1..], R_MINUS1);
        assert!(sys1.sweeps <= 11);
        let sys3 = solve_le_system(3, 9).unwrap();
        assert_eq!(ints(&sys3.l)[1..], R_MINUS3);
        assert_eq!(ints(&solve_le_system(2, 9).unwrap().l)[1..], R_MINUS2);
    }

    #[test]
    fn le_system_peak_polynomial() {
        let sys = solve_le_system(1, 6).unwrap();
        assert_eq!(
            sys.l.coeff(6),
            &MarkerPoly::from_ints([0, 1, 15, 45, 46, 15, 1])
        );
    }

    #[test]
    fn le_system_satisfies_its_closed_forms() {
        for e in 1..=3 {
            let sys = solve_le_system(e, 10).unwrap();
            assert!(
                sys.closed_form_s().agrees_with(&sys.s),
                "S closed form, e = {e}"
            );
            for i in 0..e as usize {
                assert_eq!(sys.closed_form_q(i), sys.q[i], "Q_{i} closed form, e = {e}");
            }
            assert_eq!(sys.l_from_s(), sys.l);
        }
    }

    #[test]
    fn le_system_rejects_bad_parameters() {
        assert!(matches!(
            solve_le_system(0, 5),
            Err(SeriesError::InvalidParameter(_))
        ));
        assert!(matches!(
            solve_le_system(1, 0),
            Err(SeriesError::InvalidParameter(_))
        ));
    }

    #[test]
    fn closed_minus1_forms() {
        let l = series_l_closed_minus1(9);
        assert_eq!(l.coeff(1), &MarkerPoly::from_ints([0, 1]));
        assert_eq!(l.coeff(4), &MarkerPoly::from_ints([0, 1, 6, 6, 1]));
        assert_eq!(ints(&l)[1..], R_MINUS1);
        assert_eq!(l, solve_le_system(1, 9).unwrap().l);
        assert_eq!(ints(&series_l_univariate_minus1(9))[1..], R_MINUS1);
    }

    #[test]
    fn q_closed_form() {
        let q = ints(&series_q_closed(6));
        assert_eq!(q[1], 0);
        assert_eq!(q[3], 3);
        assert_eq!(q[6], 56);
        assert_eq!(series_q_closed(8), solve_le_system(1, 8).unwrap().q[0]);
    }

    #[test]
    fn b_series() {
        assert_eq!(ints(&series_b(8)), [1, 1, 2, 4, 9, 22, 57, 154, 429]);
    }

    #[test]
    fn lagrange_expansion() {
        let l2 = lagrange_le(2, 6).unwrap();
        assert_eq!(ints(&l2)[1..], [1, 2, 5, 14, 42, 131]);
        assert_eq!(ints(&lagrange_le(1, 5).unwrap())[5], 41);
        for e in 1..=5 {
            assert_eq!(ints(&lagrange_le(e, 1).unwrap())[1], 1);
        }
        assert!(lagrange_le(0, 3).is_err());
    }

    #[test]
    fn v_series() {
        assert_eq!(
            ints(&series_v(8))[1..],
            [1, 6, 29, 130, 547, 2198, 8551, 32508]
        );
    }

    #[test]
    fn s_relation_vanishes() {
        for e in 1..=3 {
            let sys = solve_le_system(e, 12).unwrap();
            assert!(s_relation_residual(e, &sys.s).is_zero(), "e = {e}");
        }
        // A perturbed S must not satisfy it.
        let sys = solve_le_system(2, 8).unwrap();
        let wrong = &sys.s + &Series::from_terms(&[(5, 1, 1)], 8);
        assert!(!s_relation_residual(2, &wrong).is_zero());
    }

    #[test]
    fn weighted_compositions_small() {
        assert_eq!(weighted_compositions(2, 5), vec![vec![1, 1]]);
        assert_eq!(weighted_compositions(1, 4), vec![vec![2]]);
        assert!(weighted_compositions(1, 3).is_empty());
        assert_eq!(weighted_compositions(3, 0), vec![vec![0, 0, 0]]);
    }
}
