//! Every word charged by μ is charged by the Cesàro limit.

use cesaro_ca::blocking::{certify_word, SearchParams};
use cesaro_ca::catalog;
use cesaro_ca::measures::{support_tests, MarkovMeasure};
use cesaro_ca::{Caps, Result};

fn main() -> Result<()> {
    let f = catalog::walls_and_parity();
    let a = f.alphabet();
    let caps = Caps::default();
    let mu = MarkovMeasure::bernoulli_ratios(a.clone(), &[(1, 2), (1, 4), (1, 4)])?;
    let mut certs = Vec::new();
    for b in ["2", "02"] {
        certs.extend(certify_word(&f, &a.parse_word(b)?, &SearchParams::default(), &caps)?);
    }
    let report = support_tests(&f, &mu, &certs, 2, &caps)?;
    for e in &report.entries {
        match &e.witness {
            Some((m, v)) => println!("{:<2} W_{m} = {v}", a.render(&e.word)),
            None => println!("{:<2} no witness", a.render(&e.word)),
        }
    }
    println!("all witnessed: {}", report.all_witnessed());
    if let Some(c) = report.comparison {
        println!("late windows under `2` and `02` agree at m={}: {}", c.m, c.agree());
    }
    Ok(())
}
