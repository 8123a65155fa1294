use std::collections::HashMap;

use num::integer::lcm;
use num::{BigRational, Zero};

use super::measure::MarkovMeasure;
use super::pushforward::check_compatible;
use crate::blocking::{certify_blocking, BlockingCertificate, Certification};
use crate::ca::{orbit_periodic, LocalRule};
use crate::caps::{pow_saturating, Caps};
use crate::error::{Error, Result};
use crate::symbolic::{PeriodicConfig, Symbol, Word};

/// The words of length `2(k+m)+1` with an occurrence of a blocking word
/// entirely inside each flank `[-m-k, -k]` and `[k, m+k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RkmSpec {
    pub blocking: Vec<Word>,
    pub k: usize,
    pub m: usize,
    pub qualifying: Vec<Word>,
    pub mass: BigRational,
}

/// Whether `w` (indexed from `-m-k`) qualifies for `R(k, m)`.
pub fn qualifies(w: &[Symbol], blocking: &[Word], k: usize, m: usize) -> bool {
    let w = Word::from(w);
    let hit = |from, to| blocking.iter().any(|b| w.occurs_within(b, from, to));
    hit(0, m) && hit(2 * k + m, 2 * k + 2 * m)
}

pub fn build_rkm(mu: &MarkovMeasure, blocking: &Word, k: usize, m: usize, caps: &Caps) -> Result<RkmSpec> {
    build_rkm_set(mu, std::slice::from_ref(blocking), k, m, caps)
}

/// `R(k, m)` for a set of blocking words: an occurrence of any of them
/// counts.
pub fn build_rkm_set(mu: &MarkovMeasure, blocking: &[Word], k: usize, m: usize, caps: &Caps) -> Result<RkmSpec> {
    let longest = blocking.iter().map(|b| b.len()).max().ok_or(Error::EmptySpec)?;
    if blocking.iter().any(|b| b.is_empty()) {
        return Err(Error::InvalidWord("blocking word is empty".into()));
    }
    if m + 1 < longest {
        return Err(Error::FlankTooShort {
            available: m + 1,
            needed: longest,
        });
    }
    let len = 2 * (k + m) + 1;
    if len > caps.rkm_length {
        return Err(Error::cap("rkm_length", caps.rkm_length as u64, len as u64));
    }
    let count = pow_saturating(mu.alphabet().len(), len);
    if count > caps.enumeration {
        return Err(Error::cap("enumeration", caps.enumeration, count));
    }
    let mut mass = BigRational::zero();
    let qualifying: Vec<Word> = mu
        .alphabet()
        .words(len)
        .filter(|w| qualifies(w, blocking, k, m))
        .inspect(|w| mass += mu.cylinder_prob(w))
        .collect();
    Ok(RkmSpec {
        blocking: blocking.to_vec(),
        k,
        m,
        qualifying,
        mass,
    })
}

/// The central `(2k+1)`-window sequence of the orbit of the shift-periodic
/// point built on one qualifying word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalColumn {
    pub word: Word,
    pub probability: BigRational,
    pub preperiod: usize,
    pub period: usize,
    /// Windows at steps `0..preperiod + period`.
    pub windows: Vec<Word>,
}

impl LocalColumn {
    pub fn window_at(&self, step: usize) -> &Word {
        if step < self.preperiod {
            &self.windows[step]
        } else {
            &self.windows[self.preperiod + (step - self.preperiod) % self.period]
        }
    }
}

fn central_column(rule: &LocalRule, w: &Word, k: usize, caps: &Caps) -> Result<(usize, usize, Vec<Word>)> {
    if w.len() % 2 == 0 || w.len() < 2 * k + 1 {
        return Err(Error::InvalidParameter(format!(
            "word of length {} cannot be centred around a window of length {}",
            w.len(),
            2 * k + 1
        )));
    }
    let m = (w.len() - 1) / 2 - k;
    let start = PeriodicConfig::new(w.clone())?;
    let orbit = orbit_periodic(rule, &start, caps.orbit_steps)?;
    let steps = orbit.preperiod + orbit.period;
    let mut windows = Vec::with_capacity(steps);
    let mut x = start;
    for _ in 0..steps {
        windows.push(Word::from(&x.generator[m..m + 2 * k + 1]));
        x = crate::ca::apply_periodic(rule, &x)?;
    }
    let (pre, per) = crate::blocking::minimal_tail(&windows, orbit.preperiod, orbit.period);
    windows.truncate(pre + per);
    Ok((pre, per, windows))
}

/// `(preperiod, period)` of the central window sequence of the
/// shift-periodic point on `w`.
pub fn local_period(rule: &LocalRule, w: &Word, k: usize, caps: &Caps) -> Result<(usize, usize)> {
    let (pre, per, _) = central_column(rule, w, k, caps)?;
    Ok((pre, per))
}

fn combine(columns: impl Iterator<Item = (usize, usize)>, caps: &Caps) -> Result<(usize, usize)> {
    let mut acc = (1usize, 0usize);
    for (pre, per) in columns {
        let p = lcm(acc.0, per);
        if p > caps.orbit_steps {
            return Err(Error::cap("orbit_steps", caps.orbit_steps as u64, p as u64));
        }
        acc = (p, acc.1.max(pre));
    }
    Ok(acc)
}

/// `(p(k,m), p'(k,m))`: lcm of the local periods and max of the local
/// preperiods over the qualifying words.
pub fn pkm(rule: &LocalRule, spec: &RkmSpec, caps: &Caps) -> Result<(usize, usize)> {
    if spec.qualifying.is_empty() {
        return Err(Error::EmptySpec);
    }
    let periods = spec
        .qualifying
        .iter()
        .map(|w| local_period(rule, w, spec.k, caps))
        .collect::<Result<Vec<_>>>()?;
    combine(periods.into_iter(), caps)
}

/// Everything needed to evaluate `W_m(u)` for every `u` at one `(k, m)`.
#[derive(Debug, Clone)]
pub struct FormulaEvaluation {
    pub spec: RkmSpec,
    pub columns: Vec<LocalColumn>,
    pub p: usize,
    pub p_prime: usize,
}

impl FormulaEvaluation {
    pub fn k(&self) -> usize {
        self.spec.k
    }

    pub fn m(&self) -> usize {
        self.spec.m
    }

    pub fn mass(&self) -> &BigRational {
        &self.spec.mass
    }

    fn check_word(&self, u: &[Symbol]) -> Result<()> {
        if u.is_empty() || u.len() > 2 * self.k() + 1 {
            return Err(Error::InvalidParameter(format!(
                "word of length {} does not fit the central window of length {}",
                u.len(),
                2 * self.k() + 1
            )));
        }
        Ok(())
    }

    /// `W_m(u)`, with `u` read at coordinates `[-k, -k+|u|-1]`. Each word
    /// contributes over its own cycle, which equals averaging over
    /// `p(k,m)` steps from `p'(k,m)`.
    pub fn value(&self, u: &[Symbol]) -> Result<BigRational> {
        self.check_word(u)?;
        let mut total = BigRational::zero();
        for c in &self.columns {
            if c.probability.is_zero() {
                continue;
            }
            let hits = c.windows[c.preperiod..]
                .iter()
                .filter(|w| &w[..u.len()] == u)
                .count();
            if hits > 0 {
                total += &c.probability * BigRational::new((hits as i64).into(), (c.period as i64).into());
            }
        }
        Ok(total)
    }

    /// The same quantity by the displayed average over
    /// `i = 0..p(k,m)-1` at steps `i + p'(k,m)`.
    pub fn value_literal(&self, u: &[Symbol]) -> Result<BigRational> {
        self.check_word(u)?;
        let mut total = BigRational::zero();
        for i in 0..self.p {
            for c in &self.columns {
                if &c.window_at(i + self.p_prime)[..u.len()] == u {
                    total += &c.probability;
                }
            }
        }
        Ok(total / BigRational::from_integer((self.p as i64).into()))
    }

    /// Late-time windows (truncated to `len`) reached from some qualifying
    /// word, whatever its measure.
    pub fn late_windows(&self, len: usize) -> Vec<Word> {
        let mut out: Vec<Word> = self
            .columns
            .iter()
            .flat_map(|c| c.windows[c.preperiod..].iter().map(move |w| Word::from(&w[..len])))
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

fn verify_certificates(rule: &LocalRule, blocking: &[BlockingCertificate], caps: &Caps) -> Result<()> {
    for c in blocking {
        match certify_blocking(rule, &c.word, c.offset, c.width, c.strip_width, caps)? {
            Certification::Certified(again) if again.column == c.column => {}
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "`{}` is not certified blocking for this rule",
                    rule.alphabet().render(&c.word)
                )))
            }
        }
    }
    Ok(())
}

/// Evaluates the blocking-word formula at `(k, m)`. The certificates are
/// re-checked against `rule`; at least one must have positive measure.
pub fn evaluate_formula(
    rule: &LocalRule,
    mu: &MarkovMeasure,
    blocking: &[BlockingCertificate],
    k: usize,
    m: usize,
    caps: &Caps,
) -> Result<FormulaEvaluation> {
    check_compatible(rule, mu)?;
    verify_certificates(rule, blocking, caps)?;
    if blocking.iter().all(|c| mu.cylinder_prob(&c.word).is_zero()) {
        return Err(Error::HypothesisNotMet("no positive-measure blocking word".into()));
    }
    let words: Vec<Word> = blocking.iter().map(|c| c.word.clone()).collect();
    let spec = build_rkm_set(mu, &words, k, m, caps)?;
    if spec.qualifying.is_empty() {
        return Err(Error::EmptySpec);
    }
    let mut columns = Vec::with_capacity(spec.qualifying.len());
    for w in &spec.qualifying {
        let (preperiod, period, windows) = central_column(rule, w, k, caps)?;
        columns.push(LocalColumn {
            word: w.clone(),
            probability: mu.cylinder_prob(w),
            preperiod,
            period,
            windows,
        });
    }
    let (p, p_prime) = combine(columns.iter().map(|c| (c.preperiod, c.period)), caps)?;
    Ok(FormulaEvaluation {
        spec,
        columns,
        p,
        p_prime,
    })
}

/// `W_m(u)` for one word.
pub fn theorem_formula(
    rule: &LocalRule,
    mu: &MarkovMeasure,
    blocking: &[BlockingCertificate],
    u: &[Symbol],
    k: usize,
    m: usize,
    caps: &Caps,
) -> Result<BigRational> {
    evaluate_formula(rule, mu, blocking, k, m, caps)?.value(u)
}

/// Cache of evaluations keyed by `(k, m)`.
#[derive(Default)]
pub(crate) struct FormulaCache {
    entries: HashMap<(usize, usize), FormulaEvaluation>,
}

impl FormulaCache {
    pub fn get(
        &mut self,
        rule: &LocalRule,
        mu: &MarkovMeasure,
        blocking: &[BlockingCertificate],
        k: usize,
        m: usize,
        caps: &Caps,
    ) -> Result<&FormulaEvaluation> {
        if !self.entries.contains_key(&(k, m)) {
            let e = evaluate_formula(rule, mu, blocking, k, m, caps)?;
            self.entries.insert((k, m), e);
        }
        Ok(&self.entries[&(k, m)])
    }
}

/// Smallest `m` whose flanks hold every blocking word.
pub fn min_feasible_m(blocking: &[BlockingCertificate]) -> usize {
    blocking.iter().map(|c| c.word.len()).max().unwrap_or(1).saturating_sub(1)
}
