use num::{BigRational, One, Signed, Zero};

use super::formula::{min_feasible_m, FormulaCache};
use super::measure::MarkovMeasure;
use super::pushforward::{cesaro_mean, check_compatible, CesaroSeries};
use crate::blocking::{search_blocking_words, BlockingCertificate, SearchParams};
use crate::ca::{is_surjective, LocalRule};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::symbolic::{Symbol, Word};

/// Outcome of looking for a certified blocking word of positive measure.
/// `false` only means none was found up to the searched length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureEquicontinuity {
    pub equicontinuous: bool,
    pub witness: Option<(BlockingCertificate, BigRational)>,
    pub certificates: Vec<BlockingCertificate>,
}

pub fn is_equicontinuous_measure(
    rule: &LocalRule,
    mu: &MarkovMeasure,
    max_len: usize,
    params: &SearchParams,
    caps: &Caps,
) -> Result<MeasureEquicontinuity> {
    check_compatible(rule, mu)?;
    let params = SearchParams { max_len, ..*params };
    let certificates = search_blocking_words(rule, &params, caps)?;
    let witness = certificates.iter().find_map(|c| {
        let p = mu.cylinder_prob(&c.word);
        p.is_positive().then(|| (c.clone(), p))
    });
    Ok(MeasureEquicontinuity {
        equicontinuous: witness.is_some(),
        witness,
        certificates,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaPoint {
    pub m: usize,
    pub p: usize,
    pub p_prime: usize,
    /// `μ(R(k, m))`.
    pub mass: BigRational,
    /// `W_m(u)`.
    pub value: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuCEstimate {
    pub word: Word,
    pub k: usize,
    pub points: Vec<FormulaPoint>,
    pub non_decreasing: bool,
    pub cesaro: CesaroSeries,
    /// `|W_{m_max}(u) - μ_N([u])|`.
    pub gap: BigRational,
    /// `1 - μ(R(k, m_max))`.
    pub slack: BigRational,
}

/// `W_m(u)` along an increasing schedule of `m`, next to the direct Cesàro
/// series up to `n_max`, with `k = |u| / 2`.
pub fn mu_c_estimate(
    rule: &LocalRule,
    mu: &MarkovMeasure,
    blocking: &[BlockingCertificate],
    u: &[Symbol],
    m_schedule: &[usize],
    n_max: usize,
    caps: &Caps,
) -> Result<MuCEstimate> {
    mu_c_estimate_at(rule, mu, blocking, u, u.len() / 2, m_schedule, n_max, caps)
}

/// [`mu_c_estimate`] with an explicit `k`; `u` sits at coordinates
/// `[-k, -k+|u|-1]` and must fit in `[-k, k]`.
#[allow(clippy::too_many_arguments)]
pub fn mu_c_estimate_at(
    rule: &LocalRule,
    mu: &MarkovMeasure,
    blocking: &[BlockingCertificate],
    u: &[Symbol],
    k: usize,
    m_schedule: &[usize],
    n_max: usize,
    caps: &Caps,
) -> Result<MuCEstimate> {
    if m_schedule.is_empty() || m_schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter("m schedule must be non-empty and increasing".into()));
    }
    if u.is_empty() {
        return Err(Error::InvalidWord("empty word".into()));
    }
    let mut cache = FormulaCache::default();
    let mut points = Vec::with_capacity(m_schedule.len());
    for &m in m_schedule {
        let e = cache.get(rule, mu, blocking, k, m, caps)?;
        points.push(FormulaPoint {
            m,
            p: e.p,
            p_prime: e.p_prime,
            mass: e.mass().clone(),
            value: e.value(u)?,
        });
    }
    let non_decreasing = points.windows(2).all(|w| w[0].value <= w[1].value);
    let cesaro = cesaro_mean(rule, mu, u, n_max, caps)?;
    let last = points.last().expect("schedule is non-empty");
    let gap = (&last.value - cesaro.last()).abs();
    let slack = BigRational::one() - &last.mass;
    Ok(MuCEstimate {
        word: Word::from(u),
        k,
        points,
        non_decreasing,
        cesaro,
        gap,
        slack,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportEntry {
    pub word: Word,
    pub probability: BigRational,
    /// First `(m, W_m(y))` with `W_m(y) > 0`.
    pub witness: Option<(usize, BigRational)>,
}

/// Late-time window sets for two blocking words at the same `(k, m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockingComparison {
    pub first: Word,
    pub second: Word,
    pub k: usize,
    pub m: usize,
    /// Words reached under exactly one of the two blocking words.
    pub differing: Vec<Word>,
}

impl BlockingComparison {
    pub fn agree(&self) -> bool {
        self.differing.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportReport {
    pub entries: Vec<SupportEntry>,
    pub comparison: Option<BlockingComparison>,
}

impl SupportReport {
    /// Whether every word of positive measure got a positive witness.
    pub fn all_witnessed(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.probability.is_zero() || e.witness.is_some())
    }
}

/// For every word `y` with `|y| <= depth` and `μ([y]) > 0`, looks for a
/// feasible `m` with `W_m(y) > 0`. With two or more certificates, also
/// compares the late-time windows reachable from `R(k, m, B)` for the first
/// two.
pub fn support_tests(
    rule: &LocalRule,
    mu: &MarkovMeasure,
    blocking: &[BlockingCertificate],
    depth: usize,
    caps: &Caps,
) -> Result<SupportReport> {
    check_compatible(rule, mu)?;
    if !is_surjective(rule, caps)?.surjective {
        return Err(Error::HypothesisNotMet("rule is not surjective".into()));
    }
    if blocking.iter().all(|c| mu.cylinder_prob(&c.word).is_zero()) {
        return Err(Error::HypothesisNotMet("no positive-measure blocking word".into()));
    }
    let m_min = min_feasible_m(blocking);
    let mut cache = FormulaCache::default();
    let mut entries = Vec::new();
    for len in 1..=depth {
        let k = len / 2;
        let m_max = (caps.rkm_length.saturating_sub(1) / 2).saturating_sub(k);
        for y in rule.alphabet().words(len) {
            let probability = mu.cylinder_prob(&y);
            let mut witness = None;
            if probability.is_positive() {
                for m in m_min..=m_max {
                    let v = cache.get(rule, mu, blocking, k, m, caps)?.value(&y)?;
                    if v.is_positive() {
                        witness = Some((m, v));
                        break;
                    }
                }
            }
            entries.push(SupportEntry {
                word: y,
                probability,
                witness,
            });
        }
    }
    let comparison = match blocking {
        [a, b, ..] if depth > 0 => Some(compare_blocking(rule, mu, a, b, depth, caps)?),
        _ => None,
    };
    Ok(SupportReport { entries, comparison })
}

fn compare_blocking(
    rule: &LocalRule,
    mu: &MarkovMeasure,
    a: &BlockingCertificate,
    b: &BlockingCertificate,
    depth: usize,
    caps: &Caps,
) -> Result<BlockingComparison> {
    let k = depth / 2;
    let m_cap = (caps.rkm_length.saturating_sub(1) / 2).saturating_sub(k);
    let m = (min_feasible_m(&[a.clone(), b.clone()]) + 1).min(m_cap);
    // Late windows of length `depth` cover every shorter word as a prefix.
    let reached = |c: &BlockingCertificate| -> Result<Vec<Word>> {
        let mut cache = FormulaCache::default();
        let e = cache.get(rule, mu, std::slice::from_ref(c), k, m, caps)?;
        let full = e.late_windows(depth);
        let mut all: Vec<Word> = (1..=depth)
            .flat_map(|len| full.iter().map(move |w| Word::from(&w[..len])))
            .collect();
        all.sort();
        all.dedup();
        Ok(all)
    };
    let first = reached(a)?;
    let second = reached(b)?;
    let mut differing: Vec<Word> = first
        .iter()
        .filter(|w| second.binary_search(w).is_err())
        .chain(second.iter().filter(|w| first.binary_search(w).is_err()))
        .cloned()
        .collect();
    differing.sort();
    Ok(BlockingComparison {
        first: a.word.clone(),
        second: b.word.clone(),
        k,
        m,
        differing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocking::certify_blocking;
    use crate::catalog;
    use crate::measures::pushforward::rational;
    use crate::measures::equicontinuous_cesaro_limit;
    use crate::blocking::classify_equicontinuity;
    use crate::symbolic::Alphabet;

    fn walls() -> (LocalRule, MarkovMeasure) {
        let f = catalog::walls_and_parity();
        let mu = MarkovMeasure::bernoulli_ratios(f.alphabet().clone(), &[(1, 2), (1, 4), (1, 4)]).unwrap();
        (f, mu)
    }

    fn cert(rule: &LocalRule, b: &str, offset: usize) -> BlockingCertificate {
        let w = rule.alphabet().parse_word(b).unwrap();
        certify_blocking(rule, &w, offset, 1, w.len(), &Caps::default())
            .unwrap()
            .certificate()
            .unwrap()
    }

    #[test]
    fn measure_equicontinuity() {
        let (f, mu) = walls();
        let v = is_equicontinuous_measure(&f, &mu, 1, &SearchParams::default(), &Caps::default()).unwrap();
        assert!(v.equicontinuous);
        let (c, p) = v.witness.unwrap();
        assert_eq!(f.alphabet().render(&c.word), "2");
        assert_eq!(p, rational(1, 4));
        let no_walls = MarkovMeasure::bernoulli_ratios(f.alphabet().clone(), &[(1, 2), (1, 2), (0, 1)]).unwrap();
        let v = is_equicontinuous_measure(&f, &no_walls, 1, &SearchParams::default(), &Caps::default()).unwrap();
        assert!(!v.equicontinuous);
        assert_eq!(v.certificates.len(), 1);
    }

    #[test]
    fn wall_letter_estimate_is_exact() {
        let (f, mu) = walls();
        let est = mu_c_estimate(&f, &mu, &[cert(&f, "2", 0)], &[2], &[1, 2, 3], 16, &Caps::default()).unwrap();
        assert!(est.non_decreasing);
        assert!(est.cesaro.raw.iter().all(|v| *v == rational(1, 4)));
        assert!(est.gap.is_zero());
    }

    #[test]
    fn e1_estimate_matches_limit() {
        let neg = catalog::negation();
        let mu = MarkovMeasure::bernoulli_ratios(Alphabet::with_size(2).unwrap(), &[(1, 3), (2, 3)]).unwrap();
        let verdict = classify_equicontinuity(&neg, &SearchParams::default(), &Caps::default()).unwrap();
        for u in [&[0][..], &[0, 0], &[0, 1, 1]] {
            let est = mu_c_estimate(&neg, &mu, &verdict.certificates, u, &[1, 2], 8, &Caps::default()).unwrap();
            let limit = equicontinuous_cesaro_limit(&neg, &mu, &verdict, u, &Caps::default()).unwrap();
            assert_eq!(est.points.last().unwrap().value, limit);
            assert!(est.slack.is_zero());
        }
    }

    #[test]
    fn support_of_walls_measure() {
        let (f, mu) = walls();
        let report = support_tests(&f, &mu, &[cert(&f, "2", 0), cert(&f, "02", 1)], 2, &Caps::default()).unwrap();
        assert_eq!(report.entries.len(), 3 + 9);
        assert!(report.all_witnessed());
        assert!(report.comparison.unwrap().agree());
    }

    #[test]
    fn zero_measure_words_are_skipped() {
        let id = catalog::identity(3);
        let mu = MarkovMeasure::bernoulli_ratios(id.alphabet().clone(), &[(1, 2), (1, 2), (0, 1)]).unwrap();
        let report = support_tests(&id, &mu, &[cert(&id, "0", 0)], 1, &Caps::default()).unwrap();
        assert!(report.all_witnessed());
        assert!(report.entries[2].witness.is_none());
        assert!(report.entries[..2].iter().all(|e| e.witness.is_some()));
    }

    #[test]
    fn hypotheses_are_checked() {
        let c = catalog::constant(2, 0);
        let mu = MarkovMeasure::uniform(c.alphabet().clone());
        let b = cert(&c, "0", 0);
        assert!(matches!(support_tests(&c, &mu, &[b], 1, &Caps::default()), Err(Error::HypothesisNotMet(_))));
    }
}
