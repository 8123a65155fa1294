//! Blocking-word search and classification over the elementary rules.

use cesaro_ca::blocking::{classify_equicontinuity, EquicontinuityClass, SearchParams};
use cesaro_ca::catalog;
use cesaro_ca::{Caps, Result};

fn main() -> Result<()> {
    let caps = Caps::default();
    let params = SearchParams { max_len: 3, ..Default::default() };
    let mut counts = [0usize; 3];
    for n in 0..=255u8 {
        let rule = catalog::elementary(n);
        let v = classify_equicontinuity(&rule, &params, &caps)?;
        let slot = match v.class {
            EquicontinuityClass::E1 => 0,
            EquicontinuityClass::E2 => 1,
            EquicontinuityClass::NoBlockingWordFound => 2,
        };
        counts[slot] += 1;
        if [0, 4, 90, 108, 128, 170, 204].contains(&n) {
            let first = v.certificates.first().map(|c| rule.alphabet().render(&c.word));
            println!("rule {n:>3}: {:?}, global {:?}, first certificate {:?}", v.class, v.global, first);
        }
    }
    println!("E1 {}  E2 {}  none found {}", counts[0], counts[1], counts[2]);
    Ok(())
}
