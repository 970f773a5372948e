use std::process::Command;

use serde::de::DeserializeOwned;

use ddyck::cli::run;
use ddyck::cli::schema::{
    bigint, AreaReport, AsymptoteReport, BijectionReport, CheckReport, CountReport,
    EnumerateReport, PeaksReport, SelftestReport, SeriesReport,
};

fn ddyck(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ddyck").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json<T: DeserializeOwned + serde::Serialize + PartialEq + std::fmt::Debug>(args: &[&str]) -> T {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let (code, out, err) = ddyck(&full);
    assert_eq!(code, 0, "{err}");
    let value: T = serde_json::from_str(&out).unwrap();
    let again: T = serde_json::from_str(&serde_json::to_string(&value).unwrap()).unwrap();
    assert_eq!(again, value);
    value
}

#[test]
fn count_reports_every_method() {
    let (code, out, _) = ddyck(&["count", "--d", "-1", "--n", "9", "--method", "all"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("3603"));
    assert!(out.contains("all 8 methods agree"));

    let report: CountReport = json(&["count", "--d", "-3", "--n", "9"]);
    assert_eq!(bigint(&report.value), 4785.into());
    assert!(report.agree);
    assert!(report.methods.iter().any(|m| m.method == "oracle"));
}

#[test]
fn single_method() {
    let (code, out, _) = ddyck(&["count", "--n", "6", "--method", "p_recurrence"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("123"));
    let (code, _, err) = ddyck(&["count", "--n", "6", "--method", "magic"]);
    assert_eq!(code, 1);
    assert!(err.contains("available"));
}

#[test]
fn series_of_total_area() {
    let (code, out, _) = ddyck(&["series", "--what", "V", "--order", "8"]);
    assert_eq!(code, 0);
    assert_eq!(out, "1 6 29 130 547 2198 8551 32508\n");

    let report: SeriesReport = json(&["series", "--what", "b", "--order", "8"]);
    let b: Vec<_> = report.coefficients.unwrap().iter().map(bigint).collect();
    assert_eq!(b, [1, 1, 2, 4, 9, 22, 57, 154, 429].map(Into::into));

    let report: SeriesReport = json(&["series", "--what", "L", "--order", "4"]);
    let rows = report.rows.unwrap();
    assert_eq!(
        rows[4].iter().map(bigint).collect::<Vec<_>>(),
        [0, 1, 6, 6, 1].map(Into::into)
    );
}

#[test]
fn bivariate_text() {
    let (_, out, _) = ddyck(&["series", "--what", "A", "--order", "2"]);
    assert_eq!(out, "x^1: q\nx^2: q^4+q^2\n");
    let (code, _, err) = ddyck(&["series", "--what", "V", "--order", "3", "--d", "-2"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:"));
}

#[test]
fn check_explains_failures() {
    let (code, out, _) = ddyck(&["check", "--path", "UUUDUDDDUD", "--d", "-1"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "not d-Dyck: valley levels (2,0), min difference -2 < -1\n"
    );
    let (_, out, _) = ddyck(&["check", "--path", "UUUDUDDDUD", "--d", "-2"]);
    assert!(out.starts_with("d-Dyck:"));

    let report: CheckReport = json(&["check", "--path", "UUDUDDUD", "--d", "0"]);
    assert!(!report.is_d_dyck);
    assert_eq!(report.valley_levels, vec![1, 0]);
    assert_eq!(report.min_difference, Some(-1));
    assert_eq!(report.area, 8);

    let (code, _, err) = ddyck(&["check", "--path", "UDDU"]);
    assert_eq!(code, 1);
    assert_eq!(err.lines().count(), 1);
}

#[test]
fn peaks_and_area() {
    let report: PeaksReport = json(&["peaks", "--d", "-1", "--n", "6"]);
    assert_eq!(report.polynomial, "y^6+15y^5+46y^4+45y^3+15y^2+y");

    let report: AreaReport = json(&["area", "--n", "5", "--histogram"]);
    assert_eq!(bigint(&report.total), 547.into());
    assert_eq!(report.ground_total.as_ref().map(bigint), Some(219.into()));
    let hist = report.histogram.unwrap();
    let paths: num_bigint::BigInt = hist.iter().map(|b| bigint(&b.count)).sum();
    assert_eq!(paths, 41.into());

    let report: AreaReport = json(&["area", "--d", "-inf", "--n", "6"]);
    assert_eq!(bigint(&report.total), (4i64.pow(6) - 1716).into());
}

#[test]
fn enumerate_lists_and_respects_the_bound() {
    let report: EnumerateReport = json(&["enumerate", "--d", "-1", "--n", "4"]);
    assert_eq!(report.count, 14);
    assert_eq!(report.paths.len(), 14);

    let (code, _, err) = ddyck(&["--max-exhaustive", "3", "enumerate", "--n", "4"]);
    assert_eq!(code, 1);
    assert!(err.contains("exhaustive bound 3"));

    let (code, out, _) = ddyck(&["--max-exhaustive", "3", "count", "--n", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains("oracle") && out.contains("skipped"));
}

#[test]
fn bijection_both_ways() {
    let report: BijectionReport = json(&["bijection", "encode", "--path", "UDUD"]);
    assert_eq!(
        serde_json::to_string(&report.encoding).unwrap(),
        r#"{"components":[""],"exponents":[1,1]}"#
    );
    let encoding = r#"{"components":["UD","UDUD"],"exponents":[1,1,2]}"#;
    let report: BijectionReport = json(&["bijection", "decode", "--encoding", encoding]);
    let back: BijectionReport = json(&["bijection", "encode", "--path", &report.path.to_string()]);
    assert_eq!(back.encoding, report.encoding);

    let (code, _, _) = ddyck(&["bijection", "encode", "--path", "UUUDUDDDUD"]);
    assert_eq!(code, 1);
    let (code, _, _) = ddyck(&[
        "bijection",
        "decode",
        "--encoding",
        r#"{"components":[],"exponents":[]}"#,
    ]);
    assert_eq!(code, 1);
}

#[test]
fn asymptote_table() {
    let report: AsymptoteReport = json(&["asymptote", "--n", "25", "--n", "400", "--digits", "20"]);
    assert!(report.rho.starts_with("0.295597742522084770"));
    assert_eq!(report.rows.len(), 2);
    let first: f64 = report.rows[0].relative_error.parse().unwrap();
    let last: f64 = report.rows[1].relative_error.parse().unwrap();
    assert!(last < first);
}

#[test]
fn selftest_passes() {
    let report: SelftestReport = json(&["selftest", "--n", "7"]);
    assert!(report.passed);
    assert!(report.checks.len() > 20);
}

#[test]
fn usage_errors_exit_2_with_one_line() {
    for args in [
        &["count", "--n"][..],
        &["count", "--d", "x", "--n", "3"],
        &["frobnicate"],
        &["count", "--n", "3", "--format", "xml"],
    ] {
        let (code, out, err) = ddyck(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(out.is_empty());
        assert_eq!(err.lines().count(), 1, "{err}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["--format", "json", "peaks", "--d", "-2", "--n", "7"];
    assert_eq!(ddyck(&args), ddyck(&args));
}

#[test]
fn binary_exit_codes_and_environment() {
    let bin = env!("CARGO_BIN_EXE_ddyck");
    let status = Command::new(bin)
        .args(["count", "--n", "5"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let status = Command::new(bin).args(["count"]).output().unwrap();
    assert_eq!(status.status.code(), Some(2));
    let output = Command::new(bin)
        .args(["enumerate", "--n", "4"])
        .env("DDYCK_MAX_EXHAUSTIVE", "3")
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    let output = Command::new(bin)
        .args(["--max-exhaustive", "4", "enumerate", "--n", "4"])
        .env("DDYCK_MAX_EXHAUSTIVE", "3")
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
}
