//! Exact pushforward μ∘F^{-n} of a Markov measure, one depth at a time.

use cesaro_ca::catalog;
use cesaro_ca::format::parse_measure_str;
use cesaro_ca::measures::pushforward_snapshot;
use cesaro_ca::{Caps, Result};
use num::BigRational;

fn main() -> Result<()> {
    let xor = catalog::xor_right();
    // Golden-mean Markov chain: no two consecutive ones.
    let mu = parse_measure_str("alphabet: 0 1\nmarkov:\n1/2 1/2\n1 0\n")?;
    for n in 0..4 {
        let snap = pushforward_snapshot(&xor, &mu, n, 2, &Caps::default())?;
        let row: Vec<String> = snap
            .table
            .iter()
            .map(|(u, v)| format!("{}:{v}", xor.alphabet().render(u)))
            .collect();
        let total: BigRational = snap.table.iter().map(|(_, v)| v.clone()).sum();
        println!("n={n}  {}  (total {total})", row.join("  "));
    }
    Ok(())
}
