//! Peak-counting polynomials for d = -1 ..= -4, set against the Narayana
//! polynomials they agree with for small n.

use ddyck::recurrences::narayana;
use ddyck::series::solve_le_system;
use ddyck::MarkerPoly;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let order = 7;
    for e in 1..=4u32 {
        let sys = solve_le_system(e, order)?;
        println!("d = -{e}");
        for n in 1..=order {
            let nar = MarkerPoly::from_coeffs(
                (0..=n as u64)
                    .map(|k| narayana(n as u64, k).map(num_rational::BigRational::from_integer))
                    .collect::<Result<_, _>>()?,
            );
            let mark = if sys.l.coeff(n) == &nar {
                ""
            } else {
                "  (differs from Narayana)"
            };
            println!("  x^{n}: {}{mark}", sys.l.coeff(n));
        }
    }
    Ok(())
}
