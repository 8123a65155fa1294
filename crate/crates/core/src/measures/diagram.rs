use std::collections::HashMap;

use num::{BigRational, BigUint, One, Zero};

use super::measure::MarkovMeasure;
use crate::ca::LocalRule;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::symbolic::Symbol;

const NONE: u32 = u32::MAX;

/// Reduced layered automaton accepting exactly the words `w` of one length
/// with `F^n(w) = u`.
///
/// Layer `t` holds the nodes reached after reading `t` symbols; the single
/// accepting node sits past the last layer. Equivalent nodes are merged and
/// dead nodes removed after every preimage step, which keeps the diagram
/// small for rules whose preimage sets are highly structured.
#[derive(Debug, Clone)]
pub struct PreimageDiagram {
    q: usize,
    /// `layers[t][node * q + a]` is the child in layer `t + 1`, or `NONE`.
    layers: Vec<Vec<u32>>,
}

impl PreimageDiagram {
    /// The diagram accepting only `u`.
    pub fn word(u: &[Symbol], q: usize) -> Self {
        let layers = u
            .iter()
            .map(|&s| {
                let mut row = vec![NONE; q];
                row[s as usize] = 0;
                row
            })
            .collect();
        PreimageDiagram { q, layers }
    }

    /// Length of the accepted words.
    pub fn word_len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.first().is_some_and(|l| l.is_empty())
    }

    pub fn node_count(&self) -> usize {
        self.layers.iter().map(|l| l.len() / self.q).sum()
    }

    fn child(&self, t: usize, node: u32, a: usize) -> u32 {
        self.layers[t][node as usize * self.q + a]
    }

    /// The diagram of one-step preimages: words `w`, `2r` longer, with
    /// `F(w)` accepted by `self`.
    pub fn preimage(&self, rule: &LocalRule, caps: &Caps) -> Result<Self> {
        let q = self.q;
        let r2 = 2 * rule.radius();
        let new_len = self.word_len() + r2;
        if self.is_empty() {
            return Ok(PreimageDiagram {
                q,
                layers: vec![Vec::new(); new_len],
            });
        }
        let modulus = (q as u64).pow(r2 as u32);
        // Forward pass: state = (node of `self`, last min(t, 2r) symbols).
        let mut keys: Vec<Vec<(u32, u64)>> = vec![vec![(0, 0)]];
        let mut children: Vec<Vec<u32>> = Vec::with_capacity(new_len);
        let mut total = 1u64;
        for t in 0..new_len {
            let mut index: HashMap<(u32, u64), u32> = HashMap::new();
            let mut next_keys = Vec::new();
            let mut row = Vec::with_capacity(keys[t].len() * q);
            for &(node, code) in &keys[t] {
                for a in 0..q {
                    let extended = code * q as u64 + a as u64;
                    let next = if t < r2 {
                        (node, extended)
                    } else {
                        let b = rule.image_of_code(extended as usize) as usize;
                        let c = self.child(t - r2, node, b);
                        if c == NONE {
                            row.push(NONE);
                            continue;
                        }
                        (c, extended % modulus)
                    };
                    let id = *index.entry(next).or_insert_with(|| {
                        next_keys.push(next);
                        (next_keys.len() - 1) as u32
                    });
                    row.push(id);
                }
            }
            total += next_keys.len() as u64;
            if total > caps.diagram_states {
                return Err(Error::cap("diagram_states", caps.diagram_states, total));
            }
            children.push(row);
            keys.push(next_keys);
        }
        Ok(Self::reduce(q, children, keys[new_len].len()))
    }

    /// Backward hash-consing: merges nodes with identical futures and drops
    /// nodes that cannot reach the end.
    fn reduce(q: usize, children: Vec<Vec<u32>>, final_count: usize) -> Self {
        let len = children.len();
        let mut mapping: Vec<u32> = vec![0; final_count];
        let mut layers = vec![Vec::new(); len];
        for t in (0..len).rev() {
            let mut index: HashMap<Vec<u32>, u32> = HashMap::new();
            let mut reduced = Vec::new();
            let mut next_mapping = Vec::with_capacity(children[t].len() / q);
            for node in children[t].chunks(q) {
                let sig: Vec<u32> = node
                    .iter()
                    .map(|&c| if c == NONE { NONE } else { mapping[c as usize] })
                    .collect();
                if sig.iter().all(|&c| c == NONE) {
                    next_mapping.push(NONE);
                    continue;
                }
                let id = *index.entry(sig.clone()).or_insert_with(|| {
                    reduced.extend_from_slice(&sig);
                    (reduced.len() / q - 1) as u32
                });
                next_mapping.push(id);
            }
            layers[t] = reduced;
            mapping = next_mapping;
        }
        PreimageDiagram { q, layers }
    }

    /// Number of accepted words.
    pub fn count(&self) -> BigUint {
        if self.is_empty() {
            return BigUint::zero();
        }
        let mut values = vec![BigUint::one()];
        for t in 0..self.word_len() {
            let mut next = vec![BigUint::zero(); self.next_layer_size(t)];
            for (node, v) in values.iter().enumerate() {
                for a in 0..self.q {
                    let c = self.child(t, node as u32, a);
                    if c != NONE {
                        next[c as usize] += v;
                    }
                }
            }
            values = next;
        }
        values.into_iter().next().unwrap_or_default()
    }

    fn next_layer_size(&self, t: usize) -> usize {
        if t + 1 == self.word_len() {
            1
        } else {
            self.layers[t + 1].len() / self.q
        }
    }

    /// Exact measure of the union of the accepted cylinders.
    pub fn measure(&self, mu: &MarkovMeasure) -> BigRational {
        if self.word_len() == 0 {
            return BigRational::one();
        }
        if self.is_empty() {
            return BigRational::zero();
        }
        let w = mu.integer_weights();
        let q = self.q;
        let len = self.word_len();
        // values[node * q + a]: weight of prefixes ending in `a` at `node`.
        let mut values: Vec<BigUint> = vec![BigUint::zero(); self.next_layer_size(0) * q];
        for a in 0..q {
            let c = self.child(0, 0, a);
            if c != NONE && !w.initial[a].is_zero() {
                values[c as usize * q + a] += &w.initial[a];
            }
        }
        for t in 1..len {
            let mut next = vec![BigUint::zero(); self.next_layer_size(t) * q];
            for node in 0..self.layers[t].len() / q {
                for prev in 0..q {
                    let v = &values[node * q + prev];
                    if v.is_zero() {
                        continue;
                    }
                    for a in 0..q {
                        let c = self.child(t, node as u32, a);
                        if c != NONE && !w.transition[prev][a].is_zero() {
                            next[c as usize * q + a] += v * &w.transition[prev][a];
                        }
                    }
                }
            }
            values = next;
        }
        let numer: BigUint = values.into_iter().sum();
        let denom = w.initial_den * num::pow(w.transition_den, len - 1);
        BigRational::new(numer.into(), denom.into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::symbolic::Alphabet;

    fn brute_force(rule: &LocalRule, u: &[Symbol], n: usize) -> Vec<Vec<Symbol>> {
        let len = u.len() + 2 * rule.radius() * n;
        rule.alphabet()
            .words(len)
            .filter(|w| rule.apply_window_n(w, n).unwrap().as_slice() == u)
            .map(|w| w.into_inner())
            .collect()
    }

    #[test]
    fn counts_match_enumeration() {
        let f = catalog::walls_and_parity();
        let caps = Caps::default();
        for u in f.alphabet().words(2) {
            let mut d = PreimageDiagram::word(&u, 3);
            for n in 1..=3 {
                d = d.preimage(&f, &caps).unwrap();
                assert_eq!(d.count(), BigUint::from(brute_force(&f, &u, n).len()));
            }
        }
    }

    #[test]
    fn non_surjective_rule_has_empty_preimages() {
        let c = catalog::constant(2, 0);
        let d = PreimageDiagram::word(&[1], 2).preimage(&c, &Caps::default()).unwrap();
        assert!(d.is_empty());
        assert_eq!(d.count(), BigUint::zero());
        let mu = MarkovMeasure::uniform(Alphabet::with_size(2).unwrap());
        assert!(d.measure(&mu).is_zero());
    }

    #[test]
    fn diagram_cap_is_enforced() {
        let f = catalog::elementary(30);
        let caps = Caps { diagram_states: 16, ..Caps::default() };
        let mut d = PreimageDiagram::word(&[1, 0, 1], 2);
        let mut result = Ok(());
        for _ in 0..4 {
            match d.preimage(&f, &caps) {
                Ok(next) => d = next,
                Err(e) => {
                    result = Err(e);
                    break;
                }
            }
        }
        assert!(matches!(result, Err(Error::CapExceeded { cap: "diagram_states", .. })));
    }
}
