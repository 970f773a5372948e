//! Area generating functions for (-1)-Dyck paths, with `q` marking area.

use super::{BivariateSeries as Series, SeriesError};

/// `E(x, q) = sum_{j >= 1} x^j q^(j^2)`: nonempty pyramids by semi-length and
/// area.
pub fn pyramid_series(order: usize) -> Series {
    let terms: Vec<(usize, usize, i64)> = (1..=order).map(|j| (j, j * j, 1)).collect();
    Series::from_terms(&terms, order)
}

/// `A(x, q)` over all of `D_{-1}` and `B(x, q)` over the paths whose last
/// valley is at ground level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AreaSystem {
    pub a: Series,
    pub b: Series,
    pub sweeps: usize,
}

impl AreaSystem {
    /// Total area per semi-length: `dA/dq` at `q = 1`.
    pub fn total_area(&self) -> Vec<num_rational::BigRational> {
        self.a.marker_derivative_at_one()
    }
}

/// Solves
///
/// ```text
/// A = xq + xq A(xq^2, q) + E A + xq B(xq^2, q) A
/// B = E^2 + E B + xq B(xq^2, q) B + xq B(xq^2, q) E
/// ```
///
/// by sweeps from zero, truncating `q`-degrees at `order^2` (the largest area
/// of a path of semi-length `order`).
pub fn solve_area_system(order: usize) -> Result<AreaSystem, SeriesError> {
    if order == 0 {
        return Err(SeriesError::InvalidParameter(
            "order must be at least 1".into(),
        ));
    }
    let cap = Some(order * order);
    let e = pyramid_series(order);
    let xq = Series::from_terms(&[(1, 1, 1)], order);
    let e_sq = e.mul_capped(&e, cap);

    let mut a = Series::zero(order);
    let mut b = Series::zero(order);
    let max_sweeps = order + 2;
    for sweep in 1..=max_sweeps {
        let lifted_b = xq.mul_capped(&b.subst_xq2(), cap);
        let next_b = &(&(&e_sq + &e.mul_capped(&b, cap)) + &lifted_b.mul_capped(&b, cap))
            + &lifted_b.mul_capped(&e, cap);

        let lifted_b = xq.mul_capped(&next_b.subst_xq2(), cap);
        let lifted_a = xq.mul_capped(&a.subst_xq2(), cap);
        let next_a = &(&(&xq + &lifted_a) + &e.mul_capped(&a, cap)) + &lifted_b.mul_capped(&a, cap);

        let next_a = next_a.truncate_marker(order * order);
        let next_b = next_b.truncate_marker(order * order);
        let settled = next_a == a && next_b == b;
        a = next_a;
        b = next_b;
        if settled {
            return Ok(AreaSystem {
                a,
                b,
                sweeps: sweep,
            });
        }
    }
    Err(SeriesError::NonConvergence { sweeps: max_sweeps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{series_l_closed_minus1, MarkerPoly};
    use num_rational::BigRational;

    #[test]
    fn first_coefficients() {
        let sys = solve_area_system(4).unwrap();
        assert_eq!(sys.a.coeff(1), &MarkerPoly::from_ints([0, 1]));
        assert_eq!(sys.a.coeff(2), &MarkerPoly::from_ints([0, 0, 1, 0, 1]));
        assert!(sys.b.coeff(1).is_zero());
        // UDUD is the only ground-last-valley path of semi-length 2.
        assert_eq!(sys.b.coeff(2), &MarkerPoly::from_ints([0, 0, 1]));
    }

    #[test]
    fn derivative_gives_total_area() {
        let sys = solve_area_system(8).unwrap();
        let expected = [0, 1, 6, 29, 130, 547, 2198, 8551, 32508];
        let got = sys.total_area();
        for (n, want) in expected.iter().enumerate() {
            assert_eq!(got[n], BigRational::from_integer((*want).into()), "n = {n}");
        }
    }

    #[test]
    fn setting_q_to_one_recovers_counts() {
        let sys = solve_area_system(8).unwrap();
        let counts = series_l_closed_minus1(8).at_marker_one();
        assert_eq!(sys.a.at_marker_one(), counts);
    }

    #[test]
    fn ground_area_totals() {
        let sys = solve_area_system(4).unwrap();
        let totals = sys.b.marker_derivative_at_one();
        let want = [0, 0, 2, 13, 58];
        for n in 0..=4 {
            assert_eq!(totals[n], BigRational::from_integer(want[n].into()));
        }
    }

    #[test]
    fn pyramids() {
        let e = pyramid_series(3);
        assert_eq!(
            e.coeff(3),
            &MarkerPoly::from_ints([0, 0, 0, 0, 0, 0, 0, 0, 0, 1])
        );
    }
}
