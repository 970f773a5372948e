//! Every independent way the crate can compute a count, a peak distribution
//! or a total area, keyed by method name.

use num_bigint::{BigInt, BigUint};

use super::CliError;
use crate::enumerate::{Enumerator, PathFilter, Statistic};
use crate::path::DParam;
use crate::recurrences::{
    area_seq, catalan, dyck_total_area, narayana, p_nonneg, r_minus1, r_nonneg,
    r_nonneg_closed_sum, RMethod,
};
use crate::series::{
    lagrange_le, narayana_limit, series_l_closed_minus1, series_l_nonneg,
    series_l_univariate_minus1, series_v, solve_area_system, solve_le_system, BivariateSeries,
    MarkerPoly,
};

pub const ORACLE: &str = "oracle";

type Compute<T> = Box<dyn Fn(usize) -> Result<T, CliError>>;

pub struct Method<T> {
    pub name: &'static str,
    compute: Compute<T>,
}

fn method<T>(name: &'static str, f: impl Fn(usize) -> Result<T, CliError> + 'static) -> Method<T> {
    Method {
        name,
        compute: Box::new(f),
    }
}

/// The result of one method: its value, or why it was skipped.
pub struct Evaluated<T> {
    pub name: &'static str,
    pub outcome: Result<T, String>,
}

/// Which methods to run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Selection {
    All,
    Named(String),
}

impl Selection {
    pub fn parse(s: Option<&str>) -> Selection {
        match s {
            None | Some("all") => Selection::All,
            Some(name) => Selection::Named(name.to_ascii_lowercase().replace('-', "_")),
        }
    }
}

/// Runs the selected methods at `n`. With [`Selection::All`] the oracle is
/// skipped above the exhaustive bound; a named oracle fails instead.
pub fn evaluate<T>(
    methods: &[Method<T>],
    selection: &Selection,
    n: usize,
    enumerator: &Enumerator,
) -> Result<Vec<Evaluated<T>>, CliError> {
    let chosen: Vec<&Method<T>> =
        match selection {
            Selection::All => methods.iter().collect(),
            Selection::Named(name) => {
                let m = methods.iter().find(|m| m.name == name).ok_or_else(|| {
                    CliError::UnknownMethod {
                        name: name.clone(),
                        available: methods
                            .iter()
                            .map(|m| m.name)
                            .collect::<Vec<_>>()
                            .join(", "),
                    }
                })?;
                vec![m]
            }
        };
    chosen
        .into_iter()
        .map(|m| {
            if m.name == ORACLE && n > enumerator.bound() && *selection == Selection::All {
                return Ok(Evaluated {
                    name: m.name,
                    outcome: Err(format!(
                        "n exceeds the exhaustive bound {}",
                        enumerator.bound()
                    )),
                });
            }
            Ok(Evaluated {
                name: m.name,
                outcome: Ok((m.compute)(n)?),
            })
        })
        .collect()
}

/// The common value if every method that ran agrees.
pub fn agreed<T: PartialEq + Clone>(results: &[Evaluated<T>]) -> Option<T> {
    let mut values = results.iter().filter_map(|r| r.outcome.as_ref().ok());
    let first = values.next()?;
    values.all(|v| v == first).then(|| first.clone())
}

fn to_int(v: BigUint) -> BigInt {
    BigInt::from(v)
}

fn coeff_at_one(s: &BivariateSeries, n: usize) -> Result<BigInt, CliError> {
    Ok(s.integers_at_one()?.swap_remove(n))
}

fn distribution(p: &MarkerPoly, n: usize) -> Result<Vec<BigInt>, CliError> {
    let mut v = p
        .to_integers()
        .ok_or_else(|| CliError::Internal("fractional peak count".into()))?;
    v.resize(n + 1, BigInt::from(0));
    Ok(v)
}

fn minus_e(d: DParam) -> Option<u32> {
    match d {
        DParam::Finite(v) if v < 0 => d.e(),
        _ => None,
    }
}

/// Methods counting the d-Dyck paths of semi-length `n`.
pub fn count_methods(d: DParam, enumerator: Enumerator) -> Vec<Method<BigInt>> {
    let mut out = Vec::new();
    match d {
        DParam::Finite(v) if v >= 0 => {
            let d = v as u32;
            out.push(method("recursion", move |n| Ok(r_nonneg(d, n))));
            if d >= 1 {
                out.push(method("closed_sum", move |n| {
                    Ok(r_nonneg_closed_sum(d, n)?)
                }));
            }
            out.push(method("series", move |n| {
                coeff_at_one(&series_l_nonneg(d, n), n)
            }));
        }
        DParam::Unrestricted => {
            out.push(method("catalan", |n| Ok(catalan(n as u64))));
            out.push(method("series", |n| coeff_at_one(&narayana_limit(n), n)));
        }
        _ => {
            let e = minus_e(d).expect("negative d");
            out.push(method("le_system", move |n| {
                coeff_at_one(&solve_le_system(e, n)?.l, n)
            }));
            out.push(method("lagrange", move |n| {
                coeff_at_one(&lagrange_le(e, n)?, n)
            }));
            if e == 1 {
                out.push(method("closed_form", |n| {
                    coeff_at_one(&series_l_closed_minus1(n), n)
                }));
                out.push(method("univariate", |n| {
                    coeff_at_one(&series_l_univariate_minus1(n), n)
                }));
                for m in RMethod::ALL {
                    out.push(method(m.name(), move |n| Ok(r_minus1(n, m))));
                }
            }
        }
    }
    out.push(method(ORACLE, move |n| {
        Ok(to_int(
            enumerator.count_filtered(n, &PathFilter::d_dyck(d))?,
        ))
    }));
    out
}

/// Methods for the peak distribution: entry `k` counts paths with `k` peaks.
pub fn peak_methods(d: DParam, enumerator: Enumerator) -> Vec<Method<Vec<BigInt>>> {
    let mut out = Vec::new();
    match d {
        DParam::Finite(v) if v >= 0 => {
            let d = v as u32;
            out.push(method("formula", move |n| {
                Ok((0..=n).map(|k| p_nonneg(d, n, k)).collect())
            }));
            out.push(method("series", move |n| {
                distribution(series_l_nonneg(d, n).coeff(n), n)
            }));
        }
        DParam::Unrestricted => {
            out.push(method("narayana", |n| {
                (0..=n as u64)
                    .map(|k| narayana(n as u64, k).map_err(CliError::from))
                    .collect()
            }));
            out.push(method("series", |n| {
                distribution(narayana_limit(n).coeff(n), n)
            }));
        }
        _ => {
            let e = minus_e(d).expect("negative d");
            if e == 1 {
                out.push(method("closed_form", |n| {
                    distribution(series_l_closed_minus1(n).coeff(n), n)
                }));
            }
            out.push(method("le_system", move |n| {
                distribution(solve_le_system(e, n)?.l.coeff(n), n)
            }));
        }
    }
    out.push(method(ORACLE, move |n| {
        let hist =
            enumerator.statistic_distribution(n, &PathFilter::d_dyck(d), Statistic::Peaks)?;
        let mut v = vec![BigInt::from(0); n + 1];
        for (k, c) in hist {
            v[k as usize] = to_int(c);
        }
        Ok(v)
    }));
    out
}

/// Methods for the total area over the d-Dyck paths of semi-length `n`.
pub fn area_methods(d: DParam, enumerator: Enumerator) -> Vec<Method<BigInt>> {
    let mut out = Vec::new();
    match d {
        DParam::Finite(-1) => {
            out.push(method("series", |n| coeff_at_one(&series_v(n), n)));
            out.push(method("recurrence", |n| Ok(area_seq(n))));
            out.push(method("area_system", |n| {
                let total = solve_area_system(n.max(1))?.total_area().swap_remove(n);
                Ok(total.to_integer())
            }));
        }
        DParam::Unrestricted => {
            out.push(method("formula", |n| Ok(dyck_total_area(n as u64))));
        }
        _ => {}
    }
    out.push(method(ORACLE, move |n| {
        Ok(to_int(enumerator.total_area(n, &PathFilter::d_dyck(d))?))
    }));
    out
}

/// Area histogram `(area, count)` from the bivariate area series (d = -1) or
/// from the oracle.
pub fn area_histogram(
    d: DParam,
    n: usize,
    enumerator: &Enumerator,
) -> Result<Vec<(u64, BigInt)>, CliError> {
    if d == DParam::Finite(-1) && n >= 1 {
        let sys = solve_area_system(n)?;
        let ints = distribution(sys.a.coeff(n), n * n)?;
        return Ok(ints
            .into_iter()
            .enumerate()
            .filter(|(_, c)| *c != BigInt::from(0))
            .map(|(k, c)| (k as u64, c))
            .collect());
    }
    let hist = enumerator.statistic_distribution(n, &PathFilter::d_dyck(d), Statistic::Area)?;
    Ok(hist.into_iter().map(|(k, c)| (k, to_int(c))).collect())
}
