//! Area generating function for (-1)-Dyck paths: the q-refined counts and
//! their totals from the recurrence.

use ddyck::recurrences::{area_seq, ground_area_seq};
use ddyck::series::{series_v, solve_area_system};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let order = 6;
    let sys = solve_area_system(order)?;
    for n in 1..=order {
        println!("x^{n}: {}", sys.a.coeff(n).render('q'));
    }
    let v = series_v(order).integers_at_one()?;
    println!();
    println!("{:>3} {:>8} {:>8} {:>8}", "n", "a(n)", "V_n", "A_n");
    for n in 1..=order {
        println!(
            "{n:>3} {:>8} {:>8} {:>8}",
            area_seq(n),
            v[n],
            ground_area_seq(n)
        );
    }
    Ok(())
}
