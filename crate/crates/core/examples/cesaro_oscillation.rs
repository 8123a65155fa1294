//! Raw pushforwards oscillate while their Cesàro means settle.

use cesaro_ca::catalog;
use cesaro_ca::measures::{cesaro_mean, convergence_diagnostic, MarkovMeasure};
use cesaro_ca::{Caps, Result};

fn main() -> Result<()> {
    let f = catalog::walls_and_parity();
    let a = f.alphabet();
    let mu = MarkovMeasure::bernoulli_ratios(a.clone(), &[(1, 2), (1, 4), (1, 4)])?;
    for u in ["2012", "2112"] {
        let s = cesaro_mean(&f, &mu, &a.parse_word(u)?, 64, &Caps::default())?;
        println!(
            "{u}: raw n≤10 {:?}, means at N=64 {:?}; μ_64 = {}",
            convergence_diagnostic(&s.raw[..11], 5, 1e-3),
            convergence_diagnostic(&s.means, 5, 1e-3),
            s.last()
        );
    }
    Ok(())
}
