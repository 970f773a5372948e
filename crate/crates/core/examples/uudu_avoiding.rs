use ddyck::recurrences::{b_closed, q_seq, BFormula};
use ddyck::series::series_b;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let order = 12;
    let b = series_b(order).integers_at_one()?;
    for n in 0..=order {
        let ie = b_closed(n, BFormula::InclusionExclusion);
        let ns = b_closed(n, BFormula::NarayanaSum);
        assert_eq!(ie, ns);
        let q = if n == 0 {
            "-".to_string()
        } else {
            q_seq(n).to_string()
        };
        println!("b({n:>2}) = {:>8}   q = {q}", b[n]);
    }
    Ok(())
}
