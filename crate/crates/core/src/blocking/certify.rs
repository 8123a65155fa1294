//! Sound certification of blocking words by strip abstraction.
//!
//! The abstraction tracks the set `S_n` of every content a strip of fixed
//! width around the window can have at time `n`, letting the `r` cells on
//! each side of the strip take every value at every step. `S_n` contains
//! the true set of strip contents, and `S_{n+1}` depends only on `S_n`, so
//! the sequence is eventually periodic. When the window projection of every
//! `S_n` is a single word, the window is determined for all times.

use std::collections::HashMap;

use sha2::{Digest, Sha256};

use crate::ca::LocalRule;
use crate::caps::{pow_saturating, Caps};
use crate::error::{Error, Result};
use crate::symbolic::{decode, encode, Symbol, Word};

/// A blocking word `B` together with its determined window column.
///
/// For every configuration with `B` at positions `0..|B|`, the cells
/// `offset..offset+width` at time `n` read `column_at(n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockingCertificate {
    pub word: Word,
    pub offset: usize,
    pub width: usize,
    pub strip_width: usize,
    /// `v_0, ..., v_{preperiod+period-1}`; later terms repeat the tail.
    pub column: Vec<Word>,
    pub preperiod: usize,
    pub period: usize,
    /// SHA-256 of the abstract strip sets visited, hex encoded.
    pub trace: String,
}

impl BlockingCertificate {
    pub fn column_at(&self, n: usize) -> &Word {
        if n < self.preperiod {
            &self.column[n]
        } else {
            &self.column[self.preperiod + (n - self.preperiod) % self.period]
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certification {
    Certified(BlockingCertificate),
    /// The window projection stopped being a single word at `step`, or the
    /// abstraction ran out of steps. Says nothing about the true answer.
    Unknown { step: usize },
}

impl Certification {
    pub fn certificate(self) -> Option<BlockingCertificate> {
        match self {
            Certification::Certified(c) => Some(c),
            Certification::Unknown { .. } => None,
        }
    }
}

pub(crate) fn check_window(rule: &LocalRule, word: &[Symbol], offset: usize, width: usize) -> Result<()> {
    if width < rule.radius().max(1) {
        return Err(Error::InvalidParameter(format!(
            "window width {width} is smaller than the radius {}",
            rule.radius()
        )));
    }
    if offset + width > word.len() {
        return Err(Error::InvalidParameter(format!(
            "window {offset}..{} is not inside a word of length {}",
            offset + width,
            word.len()
        )));
    }
    Ok(())
}

pub fn certify_blocking(
    rule: &LocalRule,
    word: &Word,
    offset: usize,
    width: usize,
    strip_width: usize,
    caps: &Caps,
) -> Result<Certification> {
    check_window(rule, word, offset, width)?;
    if strip_width < width {
        return Err(Error::InvalidParameter(format!(
            "strip width {strip_width} is smaller than the window width {width}"
        )));
    }
    if strip_width > caps.strip_width {
        return Err(Error::cap("strip_width", caps.strip_width as u64, strip_width as u64));
    }
    let q = rule.alphabet().len();
    if pow_saturating(q, strip_width) == u64::MAX {
        return Err(Error::cap("strip_width", caps.strip_width as u64, strip_width as u64));
    }
    let r = rule.radius();
    let left_pad = (strip_width - width) / 2;
    let strip_start = offset as i64 - left_pad as i64;

    // S_0: B fixed inside the strip, free cells elsewhere.
    let fixed: Vec<Option<Symbol>> = (0..strip_width as i64)
        .map(|j| {
            let pos = strip_start + j;
            (0..word.len() as i64).contains(&pos).then(|| word[pos as usize])
        })
        .collect();
    let free = fixed.iter().filter(|c| c.is_none()).count();
    let initial_count = pow_saturating(q, free);
    if initial_count > caps.strip_states as u64 {
        return Err(Error::cap("strip_states", caps.strip_states as u64, initial_count));
    }
    let mut initial: Vec<usize> = rule
        .alphabet()
        .words(free)
        .map(|fill| {
            let mut it = fill.iter();
            let strip: Vec<Symbol> = fixed.iter().map(|c| c.unwrap_or_else(|| *it.next().unwrap())).collect();
            encode(&strip, q)
        })
        .collect();
    initial.sort_unstable();

    let project = |code: usize| -> usize {
        let strip = decode(code, q, strip_width);
        encode(&strip[left_pad..left_pad + width], q)
    };

    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut column: Vec<usize> = Vec::new();
    let mut hasher = Sha256::new();
    let mut current = initial;
    let ext_count = q.pow(2 * r as u32);
    let mut buf = vec![0 as Symbol; strip_width + 2 * r];
    let mut out = Vec::with_capacity(strip_width);

    for step in 0..=caps.strip_steps {
        let window = project(current[0]);
        if current.iter().any(|&c| project(c) != window) {
            return Ok(Certification::Unknown { step });
        }
        if let Some(&first) = seen.get(&current) {
            let (preperiod, period) = minimal_tail(&column, first, step - first);
            let column = column[..preperiod + period]
                .iter()
                .map(|&c| Word(decode(c, q, width)))
                .collect();
            return Ok(Certification::Certified(BlockingCertificate {
                word: word.clone(),
                offset,
                width,
                strip_width,
                column,
                preperiod,
                period,
                trace: hex::encode(&hasher.finalize()[..16]),
            }));
        }
        hasher.update((step as u64).to_le_bytes());
        for &c in &current {
            hasher.update((c as u64).to_le_bytes());
        }
        column.push(window);
        seen.insert(current.clone(), step);

        let mut next: Vec<usize> = Vec::with_capacity(current.len() * ext_count);
        for &code in &current {
            let strip = decode(code, q, strip_width);
            buf[r..r + strip_width].copy_from_slice(&strip);
            for ext in 0..ext_count {
                let ext_word = decode(ext, q, 2 * r);
                buf[..r].copy_from_slice(&ext_word[..r]);
                buf[r + strip_width..].copy_from_slice(&ext_word[r..]);
                rule.apply_into(&buf, &mut out);
                next.push(encode(&out, q));
            }
        }
        next.sort_unstable();
        next.dedup();
        if next.len() > caps.strip_states {
            return Err(Error::cap("strip_states", caps.strip_states as u64, next.len() as u64));
        }
        current = next;
    }
    Ok(Certification::Unknown {
        step: caps.strip_steps,
    })
}

/// Minimal `(preperiod, period)` of a sequence known to be periodic with
/// period `period` from index `start`; `values` holds indices `0..start+period`.
pub(crate) fn minimal_tail<T: PartialEq>(values: &[T], start: usize, period: usize) -> (usize, usize) {
    let at = |n: usize| -> &T {
        if n < start {
            &values[n]
        } else {
            &values[start + (n - start) % period]
        }
    };
    let minimal_period = (1..=period)
        .filter(|q| period % q == 0)
        .find(|&q| (0..period).all(|j| at(start + j) == at(start + j + q)))
        .unwrap_or(period);
    let mut pre = start;
    while pre > 0 && at(pre - 1) == at(pre - 1 + minimal_period) {
        pre -= 1;
    }
    (pre, minimal_period)
}
