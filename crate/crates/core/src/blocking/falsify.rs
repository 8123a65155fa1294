//! Counterexamples to the blocking property: two configurations that share
//! the occurrence of `B` but disagree on the window at some step.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::certify::check_window;
use crate::ca::LocalRule;
use crate::caps::{pow_saturating, Caps};
use crate::error::Result;
use crate::symbolic::{decode, Symbol, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FalsificationWitness {
    pub left_a: Word,
    pub right_a: Word,
    pub left_b: Word,
    pub right_b: Word,
    pub step: usize,
    pub window_a: Word,
    pub window_b: Word,
}

impl FalsificationWitness {
    /// Re-simulates both configurations and returns their windows at `step`.
    pub fn replay(&self, rule: &LocalRule, word: &Word, offset: usize, width: usize) -> Result<(Word, Word)> {
        let run = |left: &Word, right: &Word| -> Result<Word> {
            let mut x = left.0.clone();
            x.extend_from_slice(word);
            x.extend_from_slice(right);
            let y = rule.apply_window_n(&x, self.step)?;
            // After `step` steps, index 0 of y sits at original position
            // r·step - |left|.
            let start = left.len() - rule.radius() * self.step;
            Ok(Word(y[start + offset..start + offset + width].to_vec()))
        };
        Ok((run(&self.left_a, &self.right_a)?, run(&self.left_b, &self.right_b)?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FalsifyMode {
    Exhaustive,
    Randomized { samples: usize, seed: u64 },
}

/// Mode used for a given horizon under the caps.
pub fn falsify_mode(rule: &LocalRule, horizon: usize, seed: u64, caps: &Caps) -> FalsifyMode {
    let q = rule.alphabet().len();
    if pow_saturating(q, 2 * rule.radius() * horizon) <= caps.exhaustive_extensions {
        FalsifyMode::Exhaustive
    } else {
        FalsifyMode::Randomized {
            samples: caps.random_samples,
            seed,
        }
    }
}

/// Searches for a witness at steps `1..=horizon`. `None` is not a proof
/// that `B` is blocking.
pub fn falsify_blocking(
    rule: &LocalRule,
    word: &Word,
    offset: usize,
    width: usize,
    horizon: usize,
    seed: u64,
    caps: &Caps,
) -> Result<Option<FalsificationWitness>> {
    check_window(rule, word, offset, width)?;
    if rule.radius() == 0 || horizon == 0 {
        return Ok(None);
    }
    match falsify_mode(rule, horizon, seed, caps) {
        FalsifyMode::Exhaustive => Ok(exhaustive(rule, word, offset, width, horizon)),
        FalsifyMode::Randomized { samples, seed } => {
            Ok(randomized(rule, word, offset, width, horizon, samples, seed))
        }
    }
}

fn exhaustive(rule: &LocalRule, word: &Word, offset: usize, width: usize, horizon: usize) -> Option<FalsificationWitness> {
    let q = rule.alphabet().len();
    let r = rule.radius();
    let mut buf = Vec::new();
    let mut next = Vec::new();
    for step in 1..=horizon {
        let ext = r * step;
        let total = q.pow(2 * ext as u32);
        let mut reference: Option<(Word, Word, Word)> = None;
        for code in 0..total {
            let ext_word = decode(code, q, 2 * ext);
            buf.clear();
            buf.extend_from_slice(&ext_word[..ext]);
            buf.extend_from_slice(word);
            buf.extend_from_slice(&ext_word[ext..]);
            for _ in 0..step {
                rule.apply_into(&buf, &mut next);
                std::mem::swap(&mut buf, &mut next);
            }
            let window = Word(buf[offset..offset + width].to_vec());
            match &reference {
                None => {
                    reference = Some((
                        Word(ext_word[..ext].to_vec()),
                        Word(ext_word[ext..].to_vec()),
                        window,
                    ))
                }
                Some((left, right, first)) if *first != window => {
                    return Some(FalsificationWitness {
                        left_a: left.clone(),
                        right_a: right.clone(),
                        left_b: Word(ext_word[..ext].to_vec()),
                        right_b: Word(ext_word[ext..].to_vec()),
                        step,
                        window_a: first.clone(),
                        window_b: window,
                    });
                }
                Some(_) => {}
            }
        }
    }
    None
}

fn randomized(
    rule: &LocalRule,
    word: &Word,
    offset: usize,
    width: usize,
    horizon: usize,
    samples: usize,
    seed: u64,
) -> Option<FalsificationWitness> {
    let q = rule.alphabet().len() as Symbol;
    let r = rule.radius();
    let ext = r * horizon;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut buf = Vec::new();
    let mut next = Vec::new();
    let mut run = |left: &[Symbol], right: &[Symbol]| -> Vec<Word> {
        buf.clear();
        buf.extend_from_slice(left);
        buf.extend_from_slice(word);
        buf.extend_from_slice(right);
        let mut windows = Vec::with_capacity(horizon);
        for step in 1..=horizon {
            rule.apply_into(&buf, &mut next);
            std::mem::swap(&mut buf, &mut next);
            let start = ext - r * step + offset;
            windows.push(Word(buf[start..start + width].to_vec()));
        }
        windows
    };
    let mut reference: Option<(Word, Word, Vec<Word>)> = None;
    for _ in 0..samples {
        let left: Vec<Symbol> = (0..ext).map(|_| rng.gen_range(0..q)).collect();
        let right: Vec<Symbol> = (0..ext).map(|_| rng.gen_range(0..q)).collect();
        let windows = run(&left, &right);
        match &reference {
            None => reference = Some((Word(left), Word(right), windows)),
            Some((left_a, right_a, first)) => {
                if let Some(i) = (0..horizon).find(|&i| first[i] != windows[i]) {
                    return Some(FalsificationWitness {
                        left_a: left_a.clone(),
                        right_a: right_a.clone(),
                        left_b: Word(left),
                        right_b: Word(right),
                        step: i + 1,
                        window_a: first[i].clone(),
                        window_b: windows[i].clone(),
                    });
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn parse(rule: &LocalRule, s: &str) -> Word {
        rule.alphabet().parse_word(s).unwrap()
    }

    #[test]
    fn shift_is_falsified_quickly() {
        let s = catalog::left_shift(2);
        let b = parse(&s, "00");
        let w = falsify_blocking(&s, &b, 0, 1, 2, 0, &Caps::default()).unwrap().unwrap();
        assert!(w.step <= 2);
        let (a, bb) = w.replay(&s, &b, 0, 1).unwrap();
        assert_eq!(a, w.window_a);
        assert_eq!(bb, w.window_b);
        assert_ne!(a, bb);
    }

    #[test]
    fn wall_survives() {
        let f = catalog::walls_and_parity();
        let b = parse(&f, "2");
        assert_eq!(
            falsify_mode(&f, 8, 0, &Caps::default()),
            FalsifyMode::Randomized { samples: 4096, seed: 0 }
        );
        assert!(falsify_blocking(&f, &b, 0, 1, 8, 0, &Caps::default()).unwrap().is_none());
        assert!(falsify_blocking(&f, &b, 0, 1, 4, 0, &Caps::default()).unwrap().is_none());
    }

    #[test]
    fn identity_survives() {
        let id = catalog::identity(3);
        for b in ["0", "12", "201"] {
            let w = parse(&id, b);
            assert!(falsify_blocking(&id, &w, 0, 1, 5, 0, &Caps::default()).unwrap().is_none());
        }
    }

    #[test]
    fn parity_letter_is_falsified_in_both_modes() {
        let f = catalog::walls_and_parity();
        let b = parse(&f, "0");
        let exhaustive = falsify_blocking(&f, &b, 0, 1, 3, 0, &Caps::default()).unwrap().unwrap();
        let randomized = falsify_blocking(&f, &b, 0, 1, 9, 7, &Caps::default()).unwrap().unwrap();
        for w in [exhaustive, randomized] {
            let (a, c) = w.replay(&f, &b, 0, 1).unwrap();
            assert_ne!(a, c);
        }
    }
}
