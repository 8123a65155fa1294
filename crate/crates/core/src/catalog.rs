//! Small named rules used in examples and tests.

use crate::ca::LocalRule;
use crate::symbolic::{Alphabet, Symbol};

fn alphabet(size: usize) -> Alphabet {
    Alphabet::with_size(size).expect("small alphabets always exist")
}

fn build(size: usize, radius: usize, f: impl Fn(&[Symbol]) -> Symbol) -> LocalRule {
    LocalRule::from_fn(alphabet(size), radius, f).expect("catalog rules fit the default caps")
}

/// Radius-1 rule on `{0,1,2}`: `f(a,b,2) = b`, `f(a,2,c) = 2`, and
/// `f(a,b,c) = b + c mod 2` when `b, c ∈ {0,1}`. The letter `2` is a wall
/// that never moves; `0`/`1` runs between walls evolve by right parity.
pub fn walls_and_parity() -> LocalRule {
    build(3, 1, |w| match (w[1], w[2]) {
        (b, 2) => b,
        (2, _) => 2,
        (b, c) => (b + c) % 2,
    })
}

pub fn identity(size: usize) -> LocalRule {
    build(size, 0, |w| w[0])
}

/// Radius-0 `b ↦ 1 - b` on `{0,1}`.
pub fn negation() -> LocalRule {
    build(2, 0, |w| 1 - w[0])
}

/// `f(a,b,c) = b + c mod 2` on `{0,1}`.
pub fn xor_right() -> LocalRule {
    build(2, 1, |w| (w[1] + w[2]) % 2)
}

/// `f(a,b,c) = c`, i.e. the shift `σ`.
pub fn left_shift(size: usize) -> LocalRule {
    build(size, 1, |w| w[2])
}

pub fn constant(size: usize, value: Symbol) -> LocalRule {
    build(size, 1, move |_| value)
}

/// `f(a,b,c) = min(b,c)` on `{0,1}`.
pub fn min_right() -> LocalRule {
    build(2, 1, |w| w[1].min(w[2]))
}

/// Elementary rule in Wolfram numbering.
pub fn elementary(number: u8) -> LocalRule {
    build(2, 1, move |w| {
        let index = (w[0] << 2) | (w[1] << 1) | w[2];
        (number >> index) & 1
    })
}
