//! JSON shapes printed by `--format json`. Integers are JSON numbers of
//! unbounded size; the `d` parameter is always a string such as `"-1"` or
//! `"-inf"`. See `docs/json.md` for the field reference.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Number;

use crate::bijection::Encoding;
use crate::path::Path;

pub fn number(v: &BigInt) -> Number {
    v.to_string().parse().expect("integer literal")
}

pub fn bigint(v: &Number) -> BigInt {
    v.to_string().parse().expect("integer literal")
}

/// One method's answer, or the reason it did not run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Deserialize<'de>"))]
pub struct MethodValue<T> {
    pub method: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<T>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub d: String,
    pub n: usize,
    pub value: Number,
    pub methods: Vec<MethodValue<Number>>,
    pub agree: bool,
}

/// `counts[k]` is the number of paths with `k` peaks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeaksReport {
    pub d: String,
    pub n: usize,
    pub polynomial: String,
    pub counts: Vec<Number>,
    pub methods: Vec<MethodValue<Vec<Number>>>,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AreaBin {
    pub area: u64,
    pub count: Number,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AreaReport {
    pub d: String,
    pub n: usize,
    pub total: Number,
    pub methods: Vec<MethodValue<Number>>,
    /// Total area over the paths whose last valley is at ground level (d = -1
    /// only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ground_total: Option<Number>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub histogram: Option<Vec<AreaBin>>,
    pub agree: bool,
}

/// Coefficients of `x^0 ..= x^order`. Univariate series fill
/// `coefficients`; bivariate ones fill `rows`, where `rows[n][k]` is the
/// coefficient of `x^n marker^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub what: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<String>,
    pub order: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marker: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<Number>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<Vec<Number>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub path: Path,
    pub d: String,
    pub is_d_dyck: bool,
    pub semi_length: usize,
    pub peaks: usize,
    pub area: u64,
    pub valley_levels: Vec<u32>,
    pub min_difference: Option<i64>,
}

/// Written incrementally, so `count` comes after `paths`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerateReport {
    pub d: String,
    pub n: usize,
    pub paths: Vec<Path>,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionReport {
    pub path: Path,
    pub encoding: Encoding,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AccuracyRow {
    pub n: u64,
    pub exact: Number,
    pub estimate: String,
    pub ratio: String,
    pub relative_error: String,
}

/// Real numbers are decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AsymptoteReport {
    pub digits: usize,
    pub rho: String,
    pub amplitude: String,
    pub rows: Vec<AccuracyRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub max_n: usize,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}
