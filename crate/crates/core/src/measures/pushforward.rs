use num::{BigRational, Signed, ToPrimitive, Zero};

use super::diagram::PreimageDiagram;
use super::measure::MarkovMeasure;
use crate::blocking::{EquicontinuityClass, EquicontinuityVerdict};
use crate::ca::LocalRule;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::symbolic::{Symbol, Word};

pub(crate) fn check_compatible(rule: &LocalRule, mu: &MarkovMeasure) -> Result<()> {
    if !rule.domain().is_full() {
        return Err(Error::InvalidParameter(
            "measure computations need a rule on the full shift".into(),
        ));
    }
    if rule.alphabet() != mu.alphabet() {
        return Err(Error::InvalidParameter("rule and measure alphabets differ".into()));
    }
    Ok(())
}

/// Successive values `μ(F^{-n}[u]_0)` for `n = 0, 1, 2, ...`.
pub struct Pushforwards<'a> {
    rule: &'a LocalRule,
    mu: &'a MarkovMeasure,
    caps: &'a Caps,
    diagram: Option<PreimageDiagram>,
    started: bool,
}

impl<'a> Pushforwards<'a> {
    pub fn new(rule: &'a LocalRule, mu: &'a MarkovMeasure, u: &[Symbol], caps: &'a Caps) -> Result<Self> {
        check_compatible(rule, mu)?;
        Ok(Pushforwards {
            rule,
            mu,
            caps,
            diagram: Some(PreimageDiagram::word(u, rule.alphabet().len())),
            started: false,
        })
    }
}

impl Iterator for Pushforwards<'_> {
    type Item = Result<BigRational>;

    fn next(&mut self) -> Option<Result<BigRational>> {
        let mut d = self.diagram.take()?;
        if self.started {
            d = match d.preimage(self.rule, self.caps) {
                Ok(next) => next,
                Err(e) => return Some(Err(e)),
            };
        }
        self.started = true;
        let value = d.measure(self.mu);
        self.diagram = Some(d);
        Some(Ok(value))
    }
}

/// `μ(F^{-n}[u]_0)`, exactly.
pub fn pushforward_cylinder(rule: &LocalRule, mu: &MarkovMeasure, u: &[Symbol], n: usize, caps: &Caps) -> Result<BigRational> {
    check_compatible(rule, mu)?;
    let mut d = PreimageDiagram::word(u, rule.alphabet().len());
    for _ in 0..n {
        d = d.preimage(rule, caps)?;
    }
    Ok(d.measure(mu))
}

/// The cylinder probabilities of `μ∘F^{-n}` at one depth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PushforwardSnapshot {
    pub step: usize,
    pub depth: usize,
    /// Every word of length `depth`, in lexicographic order.
    pub table: Vec<(Word, BigRational)>,
}

pub fn pushforward_snapshot(rule: &LocalRule, mu: &MarkovMeasure, n: usize, depth: usize, caps: &Caps) -> Result<PushforwardSnapshot> {
    let table = rule
        .alphabet()
        .words(depth)
        .map(|u| {
            let v = pushforward_cylinder(rule, mu, &u, n, caps)?;
            Ok((u, v))
        })
        .collect::<Result<_>>()?;
    Ok(PushforwardSnapshot { step: n, depth, table })
}

/// Raw values `μ(F^{-n}[u])` for `n = 0..N-1` and their running averages
/// `μ_n([u])` for `n = 1..N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CesaroSeries {
    pub word: Word,
    pub raw: Vec<BigRational>,
    pub means: Vec<BigRational>,
}

impl CesaroSeries {
    pub fn from_raw(word: Word, raw: Vec<BigRational>) -> Self {
        let mut sum = BigRational::zero();
        let means = raw
            .iter()
            .enumerate()
            .map(|(i, v)| {
                sum += v;
                &sum / BigRational::from_integer((i as i64 + 1).into())
            })
            .collect();
        CesaroSeries { word, raw, means }
    }

    /// `μ_N([u])`.
    pub fn last(&self) -> &BigRational {
        self.means.last().expect("series has at least one term")
    }
}

pub fn cesaro_mean(rule: &LocalRule, mu: &MarkovMeasure, u: &[Symbol], n_max: usize, caps: &Caps) -> Result<CesaroSeries> {
    if n_max == 0 {
        return Err(Error::InvalidParameter("Cesàro horizon must be at least 1".into()));
    }
    let raw = Pushforwards::new(rule, mu, u, caps)?
        .take(n_max)
        .collect::<Result<Vec<_>>>()?;
    Ok(CesaroSeries::from_raw(Word::from(u), raw))
}

/// `(1/p) Σ_{i<p} μ(F^{-(i+p')}[u])` for a rule certified E1 with global
/// `(p, p')`.
pub fn equicontinuous_cesaro_limit(
    rule: &LocalRule,
    mu: &MarkovMeasure,
    verdict: &EquicontinuityVerdict,
    u: &[Symbol],
    caps: &Caps,
) -> Result<BigRational> {
    let (p, p_prime) = match (verdict.class, verdict.global) {
        (EquicontinuityClass::E1, Some(g)) => g,
        _ => return Err(Error::NotE1),
    };
    let values = Pushforwards::new(rule, mu, u, caps)?
        .skip(p_prime)
        .take(p)
        .collect::<Result<Vec<_>>>()?;
    let sum: BigRational = values.into_iter().sum();
    Ok(sum / BigRational::from_integer((p as i64).into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convergence {
    /// Every consecutive gap in the last window exceeds the tolerance.
    Oscillating,
    /// The last window spreads by at most the tolerance.
    CauchyLike,
    /// Neither pattern, or the series is shorter than two windows.
    Inconclusive,
}

/// Finite-horizon heuristic on the tail of a series. It is evidence about
/// the computed terms only, never a statement about the limit.
pub fn convergence_diagnostic(series: &[BigRational], window: usize, tol: f64) -> Convergence {
    if window == 0 || series.len() < 2 * window {
        return Convergence::Inconclusive;
    }
    let tail: Vec<f64> = series[series.len() - window - 1..]
        .iter()
        .map(|v| v.to_f64().unwrap_or(f64::NAN))
        .collect();
    let exact_tail = &series[series.len() - window - 1..];
    if exact_tail
        .windows(2)
        .all(|w| (&w[1] - &w[0]).abs().to_f64().unwrap_or(0.0) > tol)
    {
        return Convergence::Oscillating;
    }
    let max = tail[1..].iter().cloned().fold(f64::MIN, f64::max);
    let min = tail[1..].iter().cloned().fold(f64::MAX, f64::min);
    if max - min <= tol {
        Convergence::CauchyLike
    } else {
        Convergence::Inconclusive
    }
}

#[cfg(test)]
pub(crate) fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[cfg(test)]
pub(crate) fn one() -> BigRational {
    num::One::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocking::{classify_equicontinuity, SearchParams};
    use crate::catalog;
    use crate::symbolic::Alphabet;

    fn walls_measure() -> MarkovMeasure {
        MarkovMeasure::bernoulli_ratios(Alphabet::with_size(3).unwrap(), &[(1, 2), (1, 4), (1, 4)]).unwrap()
    }

    #[test]
    fn identity_keeps_the_measure() {
        let id = catalog::identity(3);
        let mu = walls_measure();
        let u = id.alphabet().parse_word("0210").unwrap();
        let v = pushforward_cylinder(&id, &mu, &u, 7, &Caps::default()).unwrap();
        assert_eq!(v, mu.cylinder_prob(&u));
    }

    #[test]
    fn one_step_examples() {
        let caps = Caps::default();
        let xor = catalog::xor_right();
        let uniform = MarkovMeasure::uniform(Alphabet::with_size(2).unwrap());
        assert_eq!(pushforward_cylinder(&xor, &uniform, &[0], 1, &caps).unwrap(), rational(1, 2));
        let f = catalog::walls_and_parity();
        assert_eq!(pushforward_cylinder(&f, &walls_measure(), &[2], 1, &caps).unwrap(), rational(1, 4));
    }

    #[test]
    fn mass_is_conserved() {
        let f = catalog::walls_and_parity();
        let mu = walls_measure();
        for n in 0..=6 {
            for depth in 1..=3 {
                let snap = pushforward_snapshot(&f, &mu, n, depth, &Caps::default()).unwrap();
                let total: BigRational = snap.table.iter().map(|(_, v)| v.clone()).sum();
                assert_eq!(total, one());
            }
        }
    }

    #[test]
    fn negation_cesaro() {
        let neg = catalog::negation();
        let mu = MarkovMeasure::bernoulli_ratios(Alphabet::with_size(2).unwrap(), &[(1, 3), (2, 3)]).unwrap();
        let s = cesaro_mean(&neg, &mu, &[0], 6, &Caps::default()).unwrap();
        assert_eq!(s.means[0], rational(1, 3));
        assert_eq!(s.means[1], rational(1, 2));
        assert_eq!(s.means[3], rational(1, 2));
        let v = classify_equicontinuity(&neg, &SearchParams::default(), &Caps::default()).unwrap();
        let lim = |u: &[Symbol]| equicontinuous_cesaro_limit(&neg, &mu, &v, u, &Caps::default()).unwrap();
        assert_eq!(lim(&[0]), rational(1, 2));
        assert_eq!(lim(&[0, 0]), rational(5, 18));
    }

    #[test]
    fn not_e1_is_rejected() {
        let f = catalog::walls_and_parity();
        let v = classify_equicontinuity(&f, &SearchParams::default(), &Caps::default()).unwrap();
        assert!(matches!(
            equicontinuous_cesaro_limit(&f, &walls_measure(), &v, &[0], &Caps::default()),
            Err(Error::NotE1)
        ));
    }

    #[test]
    fn diagnostic() {
        let constant = vec![rational(1, 3); 12];
        assert_eq!(convergence_diagnostic(&constant, 5, 1e-3), Convergence::CauchyLike);
        let alternating: Vec<_> = (0..12).map(|n| rational(1 + (n % 2), 4)).collect();
        assert_eq!(convergence_diagnostic(&alternating, 5, 1e-3), Convergence::Oscillating);
        assert_eq!(convergence_diagnostic(&alternating[..4], 5, 1e-3), Convergence::Inconclusive);
    }
}
