//! Dominant singularity of the (-1)-Dyck generating function and how the
//! leading-term estimate approaches the exact counts.

use ddyck::asymptotics::{accuracy_table, compute_rho, to_fixed, LADDER};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let digits = 40;
    let data = compute_rho(digits)?;
    println!("rho       = {}", to_fixed(&data.rho, digits)?);
    println!("amplitude = {}", to_fixed(&data.amplitude, digits)?);
    for row in accuracy_table(&data, &LADDER)? {
        println!(
            "n = {:>3}  ratio {}  rel. error {}",
            row.n, row.ratio, row.relative_error
        );
    }
    Ok(())
}
