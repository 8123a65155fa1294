//! For an equicontinuous rule the Cesàro limit is a finite average.

use cesaro_ca::blocking::{classify_equicontinuity, SearchParams};
use cesaro_ca::catalog;
use cesaro_ca::measures::{cesaro_mean, equicontinuous_cesaro_limit, MarkovMeasure};
use cesaro_ca::{Caps, Result};

fn main() -> Result<()> {
    let neg = catalog::negation();
    let a = neg.alphabet();
    let caps = Caps::default();
    let mu = MarkovMeasure::bernoulli_ratios(a.clone(), &[(1, 3), (2, 3)])?;
    let verdict = classify_equicontinuity(&neg, &SearchParams::default(), &caps)?;
    println!("class {:?}, (p, p') = {:?}", verdict.class, verdict.global);
    for u in ["0", "00", "01"] {
        let w = a.parse_word(u)?;
        let limit = equicontinuous_cesaro_limit(&neg, &mu, &verdict, &w, &caps)?;
        let s = cesaro_mean(&neg, &mu, &w, 6, &caps)?;
        let means: Vec<String> = s.means.iter().map(|v| v.to_string()).collect();
        println!("{u}: limit {limit}; μ_1..μ_6 = {}", means.join(", "));
    }
    Ok(())
}
