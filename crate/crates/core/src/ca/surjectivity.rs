//! Surjectivity of a local rule.
//!
//! On the full shift a rule is onto iff every word has a preimage, which a
//! subset construction over the de Bruijn graph of `(2r)`-words decides:
//! the empty subset is reachable iff some word has no preimage. Onto rules
//! are balanced, so a word without preimages is also an unbalanced witness.
//! On a shift of finite type the answer is only numerical: the rule is
//! reported onto when the Parry measure is invariant on short cylinders.

use std::collections::{HashMap, VecDeque};

use super::LocalRule;
use crate::caps::{pow_saturating, Caps};
use crate::error::{Error, Result};
use crate::symbolic::{Symbol, Word};

pub const PARRY_INVARIANCE_TOLERANCE: f64 = 1e-8;
pub const PARRY_CHECK_LENGTH: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurjectivityMethod {
    /// Subset construction on the de Bruijn graph; a proof.
    Exact,
    /// Parry-measure invariance up to a word length; a numerical verdict.
    Numerical { max_len: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurjectivityVerdict {
    pub surjective: bool,
    /// A word with no preimage (exact) or whose Parry mass is not preserved.
    pub witness: Option<Word>,
    pub method: SurjectivityMethod,
}

pub fn is_surjective(rule: &LocalRule, caps: &Caps) -> Result<SurjectivityVerdict> {
    if rule.domain().is_full() {
        exact_full_shift(rule, caps)
    } else {
        parry_invariance(rule, PARRY_CHECK_LENGTH)
    }
}

fn exact_full_shift(rule: &LocalRule, caps: &Caps) -> Result<SurjectivityVerdict> {
    let q = rule.alphabet().len();
    let memory = 2 * rule.radius();
    let vertices = pow_saturating(q, memory);
    if vertices > caps.table_entries {
        return Err(Error::cap("table_entries", caps.table_entries, vertices));
    }
    let vertices = vertices as usize;
    let blocks = vertices.div_ceil(64);
    // successors[v][a] = (v', f(v·a))
    let successors: Vec<Vec<(usize, Symbol)>> = (0..vertices)
        .map(|v| {
            (0..q)
                .map(|a| {
                    let code = v * q + a;
                    (code % vertices.max(1), rule.image_of_code(code))
                })
                .collect()
        })
        .collect();

    let mut start = vec![0u64; blocks];
    for v in 0..vertices {
        start[v / 64] |= 1 << (v % 64);
    }
    let mut parent: HashMap<Vec<u64>, Option<(Vec<u64>, Symbol)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);
    while let Some(set) = queue.pop_front() {
        for b in 0..q as Symbol {
            let mut next = vec![0u64; blocks];
            for v in 0..vertices {
                if set[v / 64] >> (v % 64) & 1 == 1 {
                    for &(to, label) in &successors[v] {
                        if label == b {
                            next[to / 64] |= 1 << (to % 64);
                        }
                    }
                }
            }
            if parent.contains_key(&next) {
                continue;
            }
            if parent.len() >= caps.subset_states {
                return Err(Error::cap(
                    "subset_states",
                    caps.subset_states as u64,
                    parent.len() as u64 + 1,
                ));
            }
            let empty = next.iter().all(|&x| x == 0);
            parent.insert(next.clone(), Some((set.clone(), b)));
            if empty {
                let mut witness = Vec::new();
                let mut cursor = next;
                while let Some(Some((prev, label))) = parent.get(&cursor) {
                    witness.push(*label);
                    cursor = prev.clone();
                }
                witness.reverse();
                return Ok(SurjectivityVerdict {
                    surjective: false,
                    witness: Some(Word(witness)),
                    method: SurjectivityMethod::Exact,
                });
            }
            queue.push_back(next);
        }
    }
    Ok(SurjectivityVerdict {
        surjective: true,
        witness: None,
        method: SurjectivityMethod::Exact,
    })
}

fn parry_invariance(rule: &LocalRule, max_len: usize) -> Result<SurjectivityVerdict> {
    let domain = rule.domain();
    let parry = domain.parry_measure()?;
    for n in 1..=max_len {
        let mut image_mass: HashMap<Word, f64> = HashMap::new();
        for w in domain.language_words(n + 2 * rule.radius()) {
            let u = rule.apply_window(&w)?;
            *image_mass.entry(u).or_insert(0.0) += parry.cylinder_prob(&w);
        }
        for u in domain.language_words(n) {
            let pushed = image_mass.get(&u).copied().unwrap_or(0.0);
            if (pushed - parry.cylinder_prob(&u)).abs() > PARRY_INVARIANCE_TOLERANCE {
                return Ok(SurjectivityVerdict {
                    surjective: false,
                    witness: Some(u),
                    method: SurjectivityMethod::Numerical { max_len },
                });
            }
        }
    }
    Ok(SurjectivityVerdict {
        surjective: true,
        witness: None,
        method: SurjectivityMethod::Numerical { max_len },
    })
}

/// Number of words `w` of length `|u| + 2r` with `apply_window(w) = u`,
/// by a transfer count over the de Bruijn graph.
pub fn preimage_count(rule: &LocalRule, u: &[Symbol]) -> u128 {
    let q = rule.alphabet().len();
    let memory = 2 * rule.radius();
    let vertices = q.pow(memory as u32);
    let mut counts = vec![1u128; vertices];
    for &target in u {
        let mut next = vec![0u128; vertices];
        for (v, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for a in 0..q {
                let code = v * q + a;
                if rule.image_of_code(code) == target {
                    next[code % vertices] += c;
                }
            }
        }
        counts = next;
    }
    counts.iter().sum()
}
