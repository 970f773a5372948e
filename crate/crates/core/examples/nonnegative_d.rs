use ddyck::recurrences::{p_nonneg, r_nonneg, r_nonneg_closed_sum};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for d in 0..=3u32 {
        let row: Vec<String> = (1..=10).map(|n| r_nonneg(d, n).to_string()).collect();
        println!("d = {d}: {}", row.join(" "));
        if d >= 1 {
            assert_eq!(r_nonneg_closed_sum(d, 10)?, r_nonneg(d, 10));
        }
    }
    let peaks: Vec<String> = (0..=8).map(|k| p_nonneg(1, 8, k).to_string()).collect();
    println!("d = 1, n = 8 by peaks: {}", peaks.join(" "));
    Ok(())
}
