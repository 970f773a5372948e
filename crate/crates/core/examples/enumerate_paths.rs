//! Lists the (-1)-Dyck paths of a given semi-length and tallies them by
//! peaks.

use std::collections::BTreeMap;

use ddyck::{Enumerator, PathFilter};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: usize = std::env::args().nth(1).map_or(Ok(4), |s| s.parse())?;
    let en = Enumerator::default();
    let mut by_peaks = BTreeMap::new();
    for p in en.paths(n, &PathFilter::d_dyck(-1))? {
        println!("{p}");
        *by_peaks.entry(p.peaks()).or_insert(0u64) += 1;
    }
    for (k, c) in by_peaks {
        println!("{c:>4} with {k} peaks");
    }
    Ok(())
}
