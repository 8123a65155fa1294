use std::collections::HashMap;

use super::LocalRule;
use crate::error::{Error, Result};
use crate::symbolic::{PeriodicConfig, Symbol, Word};

/// Orbit of a shift-periodic point: `F^{p'+p}(x) = F^{p'}(x)` with both
/// integers minimal. `cycle[j]` is `F^{p'+j}(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitSummary {
    pub preperiod: usize,
    pub period: usize,
    pub cycle: Vec<PeriodicConfig>,
}

fn check_admissible(rule: &LocalRule, x: &PeriodicConfig) -> Result<()> {
    if !rule.domain().is_full() && !rule.domain().admits_periodic(&x.generator) {
        return Err(Error::Inadmissible(rule.alphabet().render(&x.generator)));
    }
    Ok(())
}

/// Cyclic application of `f` to one period, keeping the phase.
pub(crate) fn step_cyclic(rule: &LocalRule, generator: &[Symbol], out: &mut Vec<Symbol>) {
    let len = generator.len();
    let r = rule.radius();
    let q = rule.alphabet().len();
    out.clear();
    for i in 0..len {
        let mut code = 0usize;
        for j in 0..rule.span() {
            code = code * q + generator[(i + len * (r + 1) + j - r) % len] as usize;
        }
        out.push(rule.image_of_code(code));
    }
}

pub fn apply_periodic(rule: &LocalRule, x: &PeriodicConfig) -> Result<PeriodicConfig> {
    check_admissible(rule, x)?;
    let mut out = Vec::with_capacity(x.period());
    step_cyclic(rule, &x.generator, &mut out);
    Ok(PeriodicConfig {
        generator: Word(out),
        phase: x.phase,
    })
}

/// Exact cycle detection on the finite set of generators of fixed length.
pub fn orbit_periodic(rule: &LocalRule, x: &PeriodicConfig, max_steps: usize) -> Result<OrbitSummary> {
    if max_steps == 0 {
        return Err(Error::InvalidParameter("max_steps must be at least 1".into()));
    }
    check_admissible(rule, x)?;
    let mut seen: HashMap<Vec<Symbol>, usize> = HashMap::new();
    let mut trail: Vec<Vec<Symbol>> = Vec::new();
    let mut current = x.generator.0.clone();
    let mut next = Vec::with_capacity(current.len());
    for step in 0..=max_steps {
        if let Some(&first) = seen.get(&current) {
            let cycle = trail[first..]
                .iter()
                .map(|g| PeriodicConfig {
                    generator: Word(g.clone()),
                    phase: x.phase,
                })
                .collect();
            return Ok(OrbitSummary {
                preperiod: first,
                period: step - first,
                cycle,
            });
        }
        seen.insert(current.clone(), step);
        trail.push(current.clone());
        step_cyclic(rule, &current, &mut next);
        std::mem::swap(&mut current, &mut next);
    }
    Err(Error::HorizonExceeded { steps: max_steps })
}
