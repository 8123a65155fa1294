//! The blocking-word formula W_m(u) next to the direct Cesàro series.

use cesaro_ca::blocking::certify_blocking;
use cesaro_ca::catalog;
use cesaro_ca::measures::{mu_c_estimate, MarkovMeasure};
use cesaro_ca::{Caps, Error, Result};
use num::ToPrimitive;

fn main() -> Result<()> {
    let f = catalog::walls_and_parity();
    let a = f.alphabet();
    let caps = Caps::default();
    let mu = MarkovMeasure::bernoulli_ratios(a.clone(), &[(1, 2), (1, 4), (1, 4)])?;
    let b = certify_blocking(&f, &a.parse_word("2")?, 0, 1, 1, &caps)?
        .certificate()
        .ok_or_else(|| Error::HypothesisNotMet("`2` not certified".into()))?;
    for u in ["0", "1", "2"] {
        let est = mu_c_estimate(&f, &mu, std::slice::from_ref(&b), &a.parse_word(u)?, &[1, 2, 3, 4], 200, &caps)?;
        let ws: Vec<String> = est.points.iter().map(|p| format!("W_{}={}", p.m, p.value)).collect();
        println!("u={u}: {}", ws.join(" "));
        println!(
            "      μ_200={:.6} gap={:.6} slack={:.6} non-decreasing={}",
            est.cesaro.last().to_f64().unwrap_or(f64::NAN),
            est.gap.to_f64().unwrap_or(f64::NAN),
            est.slack.to_f64().unwrap_or(f64::NAN),
            est.non_decreasing
        );
    }
    Ok(())
}
