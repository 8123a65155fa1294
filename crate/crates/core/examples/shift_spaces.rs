//! Shifts of finite type, Parry measures and images of a rule.

use cesaro_ca::ca::{image_sofic, limit_set_approx, LocalRule};
use cesaro_ca::symbolic::{Alphabet, ShiftSpace};
use cesaro_ca::{Caps, Result};

fn main() -> Result<()> {
    let caps = Caps::default();
    let a = Alphabet::with_size(2)?;
    let golden = ShiftSpace::sft(a.clone(), vec![a.parse_word("11")?])?;
    let words: Vec<String> = golden.language_words(3).iter().map(|w| a.render(w)).collect();
    println!("golden mean 3-words: {words:?}, mixing: {}", golden.is_mixing());

    let parry = golden.parry_measure()?;
    println!("entropy base {:.10}", parry.eigenvalue);
    for w in ["0", "1", "00", "01", "10"] {
        println!("  parry[{w}] = {:.6}", parry.cylinder_prob(&a.parse_word(w)?));
    }

    // x_i AND x_{i+1} never produces an isolated 0.
    let and = LocalRule::from_fn(a.clone(), 1, |w| w[1] & w[2])?;
    let full = ShiftSpace::full(a.clone());
    let image = image_sofic(&and, &full, &caps)?;
    println!("image has {} states; contains 101: {}", image.graph().vertex_count(), image.contains(&a.parse_word("101")?));
    for (i, x) in limit_set_approx(&and, &full, 3, &caps)?.iter().enumerate() {
        println!("  F^{}(X): {} words of length 5", i + 1, x.language_words(5).len());
    }
    Ok(())
}
