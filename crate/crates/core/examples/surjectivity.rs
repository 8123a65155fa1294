//! Exact surjectivity on the full shift, with unbalanced witnesses.

use cesaro_ca::ca::{is_surjective, preimage_count};
use cesaro_ca::catalog;
use cesaro_ca::{Caps, Result};

fn main() -> Result<()> {
    let caps = Caps::default();
    let rules = [
        ("walls and parity", catalog::walls_and_parity()),
        ("xor right", catalog::xor_right()),
        ("constant 0", catalog::constant(2, 0)),
        ("min right", catalog::min_right()),
        ("elementary 30", catalog::elementary(30)),
    ];
    for (name, rule) in &rules {
        let v = is_surjective(rule, &caps)?;
        let witness = v.witness.as_ref().map(|w| rule.alphabet().render(w));
        let counts: Vec<u128> = rule.alphabet().words(2).map(|u| preimage_count(rule, &u)).collect();
        println!("{name:<17} onto={:<5} witness={witness:?} preimages of 2-words {counts:?}", v.surjective);
    }
    Ok(())
}
