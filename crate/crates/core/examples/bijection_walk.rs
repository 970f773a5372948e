//! Decomposes every (-1)-Dyck path of semi-length n into blocks and
//! rebuilds it.

use ddyck::bijection::{phi, phi_inverse};
use ddyck::{Enumerator, PathFilter};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: usize = std::env::args().nth(1).map_or(Ok(4), |s| s.parse())?;
    let en = Enumerator::default();
    for p in en.paths(n, &PathFilter::d_dyck(-1))? {
        let enc = phi_inverse(&p)?;
        assert_eq!(phi(&enc)?, p);
        println!("{p:<12} {}", serde_json::to_string(&enc)?);
    }
    Ok(())
}
