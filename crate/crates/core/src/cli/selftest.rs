use num_bigint::BigInt;

use super::methods::{self, agreed, Evaluated, Selection};
use super::schema::{CheckResult, SelftestReport};
use super::{CliError, Context, Format};
use crate::bijection::{phi, phi_inverse};
use crate::enumerate::PathFilter;
use crate::path::DParam;
use crate::recurrences::{b_closed, catalan, BFormula};
use crate::series::{s_relation_residual, series_b, solve_le_system};

const DS: [DParam; 9] = [
    DParam::Finite(-4),
    DParam::Finite(-3),
    DParam::Finite(-2),
    DParam::Finite(-1),
    DParam::Finite(0),
    DParam::Finite(1),
    DParam::Finite(2),
    DParam::Finite(3),
    DParam::Unrestricted,
];

fn disagreement<T: std::fmt::Debug>(n: usize, results: &[Evaluated<T>]) -> String {
    let parts: Vec<String> = results
        .iter()
        .filter_map(|r| r.outcome.as_ref().ok().map(|v| format!("{}={v:?}", r.name)))
        .collect();
    format!("n = {n}: {}", parts.join(", "))
}

/// Every method agrees at each `n` in `1..=max_n`.
fn all_agree<T: PartialEq + Clone + std::fmt::Debug>(
    ctx: &Context<'_>,
    methods: &[methods::Method<T>],
    max_n: usize,
) -> Result<Option<String>, CliError> {
    for n in 1..=max_n {
        let results = methods::evaluate(methods, &Selection::All, n, &ctx.enumerator)?;
        if agreed(&results).is_none() {
            return Ok(Some(disagreement(n, &results)));
        }
    }
    Ok(None)
}

fn check(name: String, failure: Option<String>) -> CheckResult {
    CheckResult {
        name,
        passed: failure.is_none(),
        detail: failure,
    }
}

pub(super) fn run(ctx: &mut Context<'_>, max_n: usize) -> Result<(), CliError> {
    let mut checks = Vec::new();
    let en = ctx.enumerator;

    for d in DS {
        let failure = all_agree(ctx, &methods::count_methods(d, en), max_n)?;
        checks.push(check(format!("counts d={d}"), failure));
        let failure = all_agree(ctx, &methods::peak_methods(d, en), max_n)?;
        checks.push(check(format!("peaks d={d}"), failure));
    }
    for d in [DParam::Finite(-1), DParam::Finite(0), DParam::Unrestricted] {
        let failure = all_agree(ctx, &methods::area_methods(d, en), max_n)?;
        checks.push(check(format!("area totals d={d}"), failure));
    }

    let mut failure = None;
    let minus1 = DParam::Finite(-1);
    for n in 1..=max_n.min(en.bound()) {
        let from_series = methods::area_histogram(minus1, n, &en)?;
        let oracle = en.statistic_distribution(
            n,
            &PathFilter::d_dyck(minus1),
            crate::enumerate::Statistic::Area,
        )?;
        let oracle: Vec<(u64, BigInt)> = oracle.into_iter().map(|(k, c)| (k, c.into())).collect();
        if from_series != oracle {
            failure = Some(format!("n = {n}"));
            break;
        }
    }
    checks.push(check("area histogram d=-1".into(), failure));

    let b = series_b(max_n.max(1)).integers_at_one()?;
    let mut failure = None;
    for (n, from_series) in b.iter().enumerate().take(max_n + 1) {
        let mut values = vec![
            from_series.clone(),
            b_closed(n, BFormula::InclusionExclusion),
            b_closed(n, BFormula::NarayanaSum),
        ];
        if n <= en.bound() {
            let oracle = if n == 0 {
                BigInt::from(1)
            } else {
                en.count_b(n)?.into()
            };
            values.push(oracle);
        }
        if values.windows(2).any(|w| w[0] != w[1]) {
            failure = Some(format!("n = {n}: {values:?}"));
            break;
        }
    }
    checks.push(check("b(n)".into(), failure));

    let mut failure = None;
    for e in 1..=4u32 {
        let sys = solve_le_system(e, (e as usize + 3).max(1))?;
        let counts = sys.l.integers_at_one()?;
        for n in 1..=(e as usize + 3) {
            if counts[n] != catalan(n as u64) {
                failure = Some(format!("d = -{e}, n = {n}"));
            }
        }
    }
    checks.push(check("catalan prefix".into(), failure));

    let mut failure = None;
    for e in 1..=3u32 {
        let sys = solve_le_system(e, max_n.max(1))?;
        if !s_relation_residual(e, &sys.s).is_zero() {
            failure = Some(format!("e = {e}"));
        }
    }
    checks.push(check("S_e relation".into(), failure));

    let mut failure = None;
    for n in 1..=max_n.min(8).min(en.bound()) {
        for p in en.paths(n, &PathFilter::d_dyck(minus1))? {
            let ok = phi_inverse(&p).and_then(|e| phi(&e)).is_ok_and(|q| q == p);
            if !ok {
                failure = Some(format!("{p}"));
                break;
            }
        }
    }
    checks.push(check("bijection round trip".into(), failure));

    let passed = checks.iter().all(|c| c.passed);
    match ctx.format {
        Format::Json => ctx.json(&SelftestReport {
            max_n,
            checks,
            passed,
        })?,
        Format::Text => {
            for c in &checks {
                let status = if c.passed { "ok  " } else { "FAIL" };
                match &c.detail {
                    Some(detail) => writeln!(ctx.out, "{status} {} ({detail})", c.name)?,
                    None => writeln!(ctx.out, "{status} {}", c.name)?,
                }
            }
        }
    }
    if passed {
        Ok(())
    } else {
        Err(CliError::SelftestFailed)
    }
}
