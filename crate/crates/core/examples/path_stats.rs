//! Valley vector, peaks and area of a path, and which `d` it satisfies.
//!
//! ```text
//! cargo run --example path_stats -- UUUDUDDDUD
//! ```

use ddyck::{DParam, Path};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "UUUDUDDDUD".into());
    let p = Path::parse(&text)?;
    let vv = p.valley_vector();
    println!("path         {p}");
    println!("semi-length  {}", p.semi_length());
    println!("peaks        {}", p.peaks());
    println!("area         {}", p.area());
    println!("valleys      {:?}", vv.levels());
    match vv.min_difference() {
        Some(m) => println!("smallest d   {m}"),
        None => println!("smallest d   -inf (at most one valley)"),
    }
    for d in [-3, -2, -1, 0, 1] {
        println!("  {d:>2}-Dyck: {}", p.is_d_dyck(DParam::Finite(d)));
    }
    Ok(())
}
