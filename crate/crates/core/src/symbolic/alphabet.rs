use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

/// Index of a letter in its [`Alphabet`].
pub type Symbol = u8;

/// A finite ordered alphabet of single-character symbols.
///
/// Symbols are kept sorted so that the index of a letter, and every
/// enumeration derived from it, is canonical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self> {
        let mut symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        if let Some(c) = symbols
            .iter()
            .find(|c| c.is_whitespace() || **c == '*' || **c == '#')
        {
            return Err(Error::InvalidAlphabet(format!("reserved symbol {c:?}")));
        }
        symbols.sort_unstable();
        let before = symbols.len();
        symbols.dedup();
        if symbols.len() != before {
            return Err(Error::InvalidAlphabet("duplicate symbols".into()));
        }
        if symbols.len() > Symbol::MAX as usize {
            return Err(Error::InvalidAlphabet("too many symbols".into()));
        }
        Ok(Alphabet { symbols })
    }

    /// The alphabet `{0, 1, ..., size-1}` written with digits, then letters.
    pub fn with_size(size: usize) -> Result<Self> {
        const DIGITS: &str = "0123456789abcdefghijklmnopqrstuvwxyz";
        if size > DIGITS.len() {
            return Err(Error::InvalidAlphabet(format!("no default symbols for size {size}")));
        }
        Alphabet::new(DIGITS.chars().take(size))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn char_of(&self, s: Symbol) -> char {
        self.symbols[s as usize]
    }

    pub fn index_of(&self, c: char) -> Option<Symbol> {
        self.symbols.binary_search(&c).ok().map(|i| i as Symbol)
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        text.chars()
            .map(|c| {
                self.index_of(c).ok_or_else(|| {
                    Error::InvalidWord(format!("`{text}`: symbol {c:?} not in alphabet"))
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn render(&self, word: &[Symbol]) -> String {
        word.iter().map(|&s| self.char_of(s)).collect()
    }

    /// All words of the given length in lexicographic order.
    pub fn words(&self, len: usize) -> AllWords {
        AllWords {
            size: self.len() as Symbol,
            next: Some(vec![0; len]),
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Odometer over `A^n`.
pub struct AllWords {
    size: Symbol,
    next: Option<Vec<Symbol>>,
}

impl Iterator for AllWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut i = succ.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            succ[i] += 1;
            if succ[i] < self.size {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(Word(current))
    }
}

/// A finite word, stored as symbol indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn as_slice(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Symbol> {
        self.0
    }

    /// Whether `pattern` occurs in `self` starting anywhere in `[from, to]`
    /// with the whole occurrence inside `[from, to]`.
    pub fn occurs_within(&self, pattern: &[Symbol], from: usize, to: usize) -> bool {
        if pattern.is_empty() {
            return true;
        }
        if to >= self.0.len() || from > to || to + 1 - from < pattern.len() {
            return false;
        }
        self.0[from..=to].windows(pattern.len()).any(|w| w == pattern)
    }

    pub fn contains(&self, pattern: &[Symbol]) -> bool {
        pattern.is_empty() || self.0.windows(pattern.len()).any(|w| w == pattern)
    }
}

impl Deref for Word {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl From<&[Symbol]> for Word {
    fn from(v: &[Symbol]) -> Self {
        Word(v.to_vec())
    }
}

/// Mixed-radix code of a word, most significant symbol first.
pub fn encode(word: &[Symbol], base: usize) -> usize {
    word.iter().fold(0usize, |acc, &s| acc * base + s as usize)
}

/// Inverse of [`encode`] for a fixed length.
pub fn decode(mut code: usize, base: usize, len: usize) -> Vec<Symbol> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = (code % base) as Symbol;
        code /= base;
    }
    out
}

/// The cylinder set `[u]_t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cylinder {
    pub word: Word,
    pub position: i64,
}

impl Cylinder {
    pub fn new(word: Word, position: i64) -> Self {
        Cylinder { word, position }
    }

    /// Position-0 cylinder.
    pub fn at_origin(word: Word) -> Self {
        Cylinder { word, position: 0 }
    }

    /// Whether the configuration described by `cell` lies in the cylinder.
    pub fn contains(&self, cell: impl Fn(i64) -> Symbol) -> bool {
        self.word
            .iter()
            .enumerate()
            .all(|(j, &s)| cell(self.position + j as i64) == s)
    }
}

/// A shift-periodic configuration: `generator` repeated forever, with
/// `generator[0]` sitting at coordinate `phase`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PeriodicConfig {
    pub generator: Word,
    pub phase: i64,
}

impl PeriodicConfig {
    pub fn new(generator: Word) -> Result<Self> {
        Self::with_phase(generator, 0)
    }

    pub fn with_phase(generator: Word, phase: i64) -> Result<Self> {
        if generator.is_empty() {
            return Err(Error::InvalidWord("periodic generator is empty".into()));
        }
        Ok(PeriodicConfig { generator, phase })
    }

    pub fn period(&self) -> usize {
        self.generator.len()
    }

    pub fn cell(&self, i: i64) -> Symbol {
        let len = self.generator.len() as i64;
        self.generator[(i - self.phase).rem_euclid(len) as usize]
    }

    /// The block `x(from, from+len-1)`.
    pub fn block(&self, from: i64, len: usize) -> Word {
        Word((0..len as i64).map(|j| self.cell(from + j)).collect())
    }

    /// Applies the shift σ: `σ(x)_i = x_{i+1}`.
    pub fn shifted(&self) -> Self {
        PeriodicConfig {
            generator: self.generator.clone(),
            phase: self.phase - 1,
        }
    }

    /// Same point with the generator rotated so that it starts at coordinate 0.
    pub fn normalized(&self) -> Self {
        PeriodicConfig {
            generator: self.block(0, self.period()),
            phase: 0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_is_sorted_and_unique() {
        let a = Alphabet::new("201".chars()).unwrap();
        assert_eq!(a.symbols(), &['0', '1', '2']);
        assert!(Alphabet::new("00".chars()).is_err());
        assert!(Alphabet::new("".chars()).is_err());
        assert!(Alphabet::new("0*".chars()).is_err());
    }

    #[test]
    fn words_enumerate_lexicographically() {
        let a = Alphabet::with_size(2).unwrap();
        let words: Vec<String> = a.words(2).map(|w| a.render(&w)).collect();
        assert_eq!(words, ["00", "01", "10", "11"]);
        assert_eq!(a.words(0).count(), 1);
        assert_eq!(Alphabet::with_size(3).unwrap().words(4).count(), 81);
    }

    #[test]
    fn encode_roundtrip() {
        for code in 0..27 {
            assert_eq!(encode(&decode(code, 3, 3), 3), code);
        }
    }

    #[test]
    fn occurrence_is_contained() {
        let a = Alphabet::with_size(3).unwrap();
        let w = a.parse_word("01220").unwrap();
        assert!(w.occurs_within(&[2, 2], 2, 3));
        assert!(!w.occurs_within(&[2, 2], 3, 4));
        assert!(w.contains(&[2, 0]));
        assert!(!w.contains(&[1, 1]));
    }

    #[test]
    fn periodic_cells_wrap() {
        let x = PeriodicConfig::with_phase(Word(vec![0, 1, 2]), 1).unwrap();
        assert_eq!(x.cell(1), 0);
        assert_eq!(x.cell(0), 2);
        assert_eq!(x.cell(-5), 0);
        assert_eq!(x.normalized().generator, Word(vec![2, 0, 1]));
        assert_eq!(x.shifted().cell(0), x.cell(1));
    }
}
