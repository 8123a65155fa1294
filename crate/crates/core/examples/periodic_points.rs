//! F-periodic points through every short word, built around a blocking word.

use cesaro_ca::blocking::{certify_blocking, construct_f_periodic_point};
use cesaro_ca::catalog;
use cesaro_ca::{Caps, Error, Result};

fn main() -> Result<()> {
    let f = catalog::walls_and_parity();
    let a = f.alphabet();
    let caps = Caps::default();
    let b = certify_blocking(&f, &a.parse_word("2")?, 0, 1, 1, &caps)?
        .certificate()
        .ok_or_else(|| Error::HypothesisNotMet("`2` not certified".into()))?;
    for len in 0..=2 {
        for v in a.words(len) {
            let (x, m) = construct_f_periodic_point(&f, &v, &b, 256)?;
            println!("v={:<2} point ({})^∞  F-period {m}", a.render(&v), a.render(&x.generator));
        }
    }
    Ok(())
}
