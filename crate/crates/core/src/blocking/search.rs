use num::integer::lcm;

use super::certify::{certify_blocking, BlockingCertificate, Certification};
use super::falsify::falsify_blocking;
use crate::ca::LocalRule;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::symbolic::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchParams {
    pub max_len: usize,
    /// Initial strip width; `None` uses `|B|` rounded to the window parity.
    pub strip_width: Option<usize>,
    pub horizon: usize,
    pub seed: u64,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams {
            max_len: 3,
            strip_width: None,
            horizon: 6,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum EquicontinuityClass {
    /// Every admissible word of some odd length is blocking.
    E1,
    /// Some blocking word exists.
    E2,
    /// No word up to the tested length was certified. Not a proof of
    /// sensitivity.
    NoBlockingWordFound,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExhaustionReport {
    pub words_tested: usize,
    pub falsified: usize,
    pub unknown: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquicontinuityVerdict {
    pub class: EquicontinuityClass,
    pub certificates: Vec<BlockingCertificate>,
    /// `(p, p')`: lcm of the column periods and max of the preperiods.
    pub global: Option<(usize, usize)>,
    pub report: ExhaustionReport,
}

enum Attempt {
    Certified(BlockingCertificate),
    Falsified,
    Unknown,
}

/// Window width used for a word: the smallest width `>= max(r, 1)`,
/// bumped by one when `centered` requires matching the word's parity.
fn window_width(rule: &LocalRule, len: usize, centered: bool) -> Option<usize> {
    let mut w = rule.radius().max(1);
    if centered && (len - w.min(len)) % 2 == 1 {
        w += 1;
    }
    (w <= len).then_some(w)
}

/// Falsify, then certify along the strip ladder `W, W+2, ...` up to the cap.
fn attempt(rule: &LocalRule, word: &Word, offset: usize, width: usize, params: &SearchParams, caps: &Caps) -> Result<Attempt> {
    if falsify_blocking(rule, word, offset, width, params.horizon, params.seed, caps)?.is_some() {
        return Ok(Attempt::Falsified);
    }
    let default_strip = if (word.len() - width) % 2 == 0 {
        word.len()
    } else {
        word.len() + 1
    };
    let mut strip = params.strip_width.unwrap_or(default_strip).max(width);
    while strip <= caps.strip_width {
        match certify_blocking(rule, word, offset, width, strip, caps) {
            Ok(Certification::Certified(c)) => return Ok(Attempt::Certified(c)),
            Ok(Certification::Unknown { .. }) | Err(Error::CapExceeded { .. }) => {}
            Err(e) => return Err(e),
        }
        strip += 2;
    }
    Ok(Attempt::Unknown)
}

/// Certifies one given word: minimal window width, centred offset first,
/// falsification before the strip ladder. `None` when no offset succeeds.
pub fn certify_word(rule: &LocalRule, word: &Word, params: &SearchParams, caps: &Caps) -> Result<Option<BlockingCertificate>> {
    if word.is_empty() || !rule.domain().contains(word) {
        return Err(Error::Inadmissible(rule.alphabet().render(word)));
    }
    let Some(width) = window_width(rule, word.len(), false) else {
        return Ok(None);
    };
    let centre = (word.len() - width) / 2;
    for d in std::iter::once(centre).chain((0..=word.len() - width).filter(|&d| d != centre)) {
        if let Attempt::Certified(c) = attempt(rule, word, d, width, params, caps)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Certified blocking words up to `max_len`, shortest first, then
/// lexicographic. Each word is tried with the minimal window width, at the
/// centred offset first and then at every other offset.
pub fn search_blocking_words(rule: &LocalRule, params: &SearchParams, caps: &Caps) -> Result<Vec<BlockingCertificate>> {
    Ok(search_with_report(rule, params, caps)?.0)
}

fn search_with_report(rule: &LocalRule, params: &SearchParams, caps: &Caps) -> Result<(Vec<BlockingCertificate>, ExhaustionReport)> {
    let mut found = Vec::new();
    let mut report = ExhaustionReport::default();
    for len in 1..=params.max_len {
        let Some(width) = window_width(rule, len, false) else {
            continue;
        };
        let centre = (len - width) / 2;
        let offsets: Vec<usize> = std::iter::once(centre)
            .chain((0..=len - width).filter(|&d| d != centre))
            .collect();
        for word in rule.domain().language_words(len) {
            report.words_tested += 1;
            let mut outcome = Attempt::Falsified;
            for &d in &offsets {
                outcome = attempt(rule, &word, d, width, params, caps)?;
                if matches!(outcome, Attempt::Certified(_)) {
                    break;
                }
            }
            match outcome {
                Attempt::Certified(c) => found.push(c),
                Attempt::Falsified => report.falsified += 1,
                Attempt::Unknown => report.unknown += 1,
            }
        }
    }
    Ok((found, report))
}

/// E1 if every admissible word of some odd length `2k+1 <= max_len` is
/// certified with a centred window; E2 if any blocking word is found.
pub fn classify_equicontinuity(rule: &LocalRule, params: &SearchParams, caps: &Caps) -> Result<EquicontinuityVerdict> {
    for len in (1..=params.max_len).step_by(2) {
        let Some(width) = window_width(rule, len, true) else {
            continue;
        };
        let offset = (len - width) / 2;
        let mut certificates = Vec::new();
        for word in rule.domain().language_words(len) {
            match attempt(rule, &word, offset, width, params, caps)? {
                Attempt::Certified(c) => certificates.push(c),
                _ => break,
            }
        }
        if certificates.len() == rule.domain().language_words(len).len() {
            let global = certificates.iter().fold((1usize, 0usize), |(p, pre), c| {
                (lcm(p, c.period), pre.max(c.preperiod))
            });
            return Ok(EquicontinuityVerdict {
                class: EquicontinuityClass::E1,
                report: ExhaustionReport {
                    words_tested: certificates.len(),
                    ..Default::default()
                },
                certificates,
                global: Some(global),
            });
        }
    }
    let (certificates, report) = search_with_report(rule, params, caps)?;
    let class = if certificates.is_empty() {
        EquicontinuityClass::NoBlockingWordFound
    } else {
        EquicontinuityClass::E2
    };
    Ok(EquicontinuityVerdict {
        class,
        certificates,
        global: None,
        report,
    })
}
