//! Drives the command-line front end from code and reads its JSON back.

use ddyck::cli::{run, schema::CountReport};

fn main() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let args = [
        "ddyck", "--format", "json", "count", "--d", "-2", "--n", "10",
    ];
    let code = run(args, &mut out, &mut err);
    assert_eq!(code, 0, "{}", String::from_utf8_lossy(&err));
    let report: CountReport = serde_json::from_slice(&out).expect("valid report");
    for m in &report.methods {
        match (&m.value, &m.skipped) {
            (Some(v), _) => println!("{:<12} {v}", m.method),
            (None, Some(why)) => println!("{:<12} skipped: {why}", m.method),
            _ => {}
        }
    }
    println!("agree: {}", report.agree);
}
