//! The walls-and-parity rule on {0,1,2}: `2` is a blocking word, the rule
//! is onto, and yet the measure sequence never settles.

use cesaro_ca::blocking::{certify_blocking, falsify_blocking, Certification};
use cesaro_ca::ca::{is_surjective, preimage_count};
use cesaro_ca::catalog;
use cesaro_ca::measures::{cesaro_mean, MarkovMeasure};
use cesaro_ca::{Caps, Result};

fn main() -> Result<()> {
    let f = catalog::walls_and_parity();
    let caps = Caps::default();
    let a = f.alphabet();

    let wall = a.parse_word("2")?;
    match certify_blocking(&f, &wall, 0, 1, 1, &caps)? {
        Certification::Certified(c) => {
            let column: Vec<String> = c.column.iter().map(|w| a.render(w)).collect();
            println!("`2` is blocking: column {column:?}, preperiod {}, period {}", c.preperiod, c.period);
        }
        Certification::Unknown { step } => println!("`2` undecided at step {step}"),
    }
    let witness = falsify_blocking(&f, &wall, 0, 1, 8, 0, &caps)?;
    println!("falsifier at horizon 8: {}", if witness.is_none() { "no witness" } else { "witness" });

    let verdict = is_surjective(&f, &caps)?;
    println!("onto: {}  (preimages of `0110`: {})", verdict.surjective, preimage_count(&f, &a.parse_word("0110")?));

    let mu = MarkovMeasure::bernoulli_ratios(a.clone(), &[(1, 2), (1, 4), (1, 4)])?;
    for u in ["2012", "2112"] {
        let s = cesaro_mean(&f, &mu, &a.parse_word(u)?, 10, &caps)?;
        let raw: Vec<String> = s.raw.iter().map(|v| v.to_string()).collect();
        println!("μ(F^-n[{u}]), n<10: {}", raw.join(" "));
    }
    Ok(())
}
