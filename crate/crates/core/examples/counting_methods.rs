//! Counts (-1)-Dyck paths several independent ways and prints them side by
//! side.

use ddyck::recurrences::{r_minus1, RMethod};
use ddyck::series::{lagrange_le, series_l_closed_minus1, solve_le_system};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let order = 15;
    let system = solve_le_system(1, order)?.l.integers_at_one()?;
    let closed = series_l_closed_minus1(order).integers_at_one()?;
    let lagrange = lagrange_le(1, order)?.integers_at_one()?;

    println!(
        "{:>3} {:>12} {:>12} {:>12} {:>12}",
        "n", "system", "closed", "lagrange", "p-rec"
    );
    for n in 1..=order {
        let prec = r_minus1(n, RMethod::PRecurrence);
        println!(
            "{n:>3} {:>12} {:>12} {:>12} {prec:>12}",
            system[n], closed[n], lagrange[n]
        );
    }
    Ok(())
}
