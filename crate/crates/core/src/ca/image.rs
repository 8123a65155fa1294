use std::collections::HashMap;

use super::LocalRule;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::symbolic::{Edge, LabeledGraph, ShiftSpace, Symbol};

/// Word length up to which consecutive images are checked for inclusion.
pub const LIMIT_SET_CHECK_LENGTH: usize = 6;

/// Presentation of `F(X)`: the `2r`-path graph of `X`'s presentation with
/// each `(2r+1)`-path relabelled by `f`, then determinized and trimmed.
pub fn image_sofic(rule: &LocalRule, space: &ShiftSpace, caps: &Caps) -> Result<ShiftSpace> {
    if space.alphabet() != rule.alphabet() {
        return Err(Error::InvalidParameter("space alphabet differs from rule alphabet".into()));
    }
    let g = space.graph();
    let memory = 2 * rule.radius();

    // Paths of `memory` edges, identified by their edge-index sequence.
    let mut paths: Vec<Vec<usize>> = (0..g.vertex_count()).map(|_| Vec::new()).collect();
    let mut ends: Vec<usize> = (0..g.vertex_count()).collect();
    for _ in 0..memory {
        let mut next_paths = Vec::new();
        let mut next_ends = Vec::new();
        for (p, &end) in paths.iter().zip(&ends) {
            for (i, e) in g.edges().iter().enumerate() {
                if e.from == end {
                    let mut q = p.clone();
                    q.push(i);
                    next_paths.push(q);
                    next_ends.push(e.to);
                }
            }
        }
        if next_paths.len() > caps.subset_states {
            return Err(Error::cap(
                "subset_states",
                caps.subset_states as u64,
                next_paths.len() as u64,
            ));
        }
        paths = next_paths;
        ends = next_ends;
    }

    let edge_graph = if memory == 0 {
        let edges = g
            .edges()
            .iter()
            .map(|e| Edge {
                from: e.from,
                to: e.to,
                label: rule.image(&[e.label]),
            })
            .collect();
        LabeledGraph::new(g.vertex_count(), edges)
    } else {
        let index: HashMap<&[usize], usize> =
            paths.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        let mut edges = Vec::new();
        let mut labels: Vec<Symbol> = Vec::with_capacity(memory + 1);
        let mut key: Vec<usize> = Vec::with_capacity(memory);
        for (from, (p, &end)) in paths.iter().zip(&ends).enumerate() {
            for (i, e) in g.edges().iter().enumerate() {
                if e.from != end {
                    continue;
                }
                labels.clear();
                labels.extend(p.iter().map(|&j| g.edges()[j].label));
                labels.push(e.label);
                key.clear();
                key.extend_from_slice(&p[1..]);
                key.push(i);
                let to = index[key.as_slice()];
                edges.push(Edge {
                    from,
                    to,
                    label: rule.image(&labels),
                });
            }
        }
        LabeledGraph::new(paths.len(), edges)
    };
    ShiftSpace::sofic(space.alphabet().clone(), &edge_graph, caps)
}

/// Presentations of `F^i(X)` for `i = 1..=n`, checking
/// `L(F^{i+1}(X)) ⊆ L(F^i(X))` on words up to [`LIMIT_SET_CHECK_LENGTH`].
pub fn limit_set_approx(rule: &LocalRule, space: &ShiftSpace, n: usize, caps: &Caps) -> Result<Vec<ShiftSpace>> {
    if n == 0 {
        return Err(Error::InvalidParameter("limit-set depth must be at least 1".into()));
    }
    let mut images: Vec<ShiftSpace> = Vec::with_capacity(n);
    let mut current = space.clone();
    for _ in 0..n {
        let next = image_sofic(rule, &current, caps)?;
        for len in 1..=LIMIT_SET_CHECK_LENGTH {
            if let Some(w) = next.language_words(len).into_iter().find(|w| !current.contains(w)) {
                return Err(Error::NotClosed(rule.alphabet().render(&w)));
            }
        }
        images.push(next.clone());
        current = next;
    }
    Ok(images)
}

/// `{ apply_window(w) : w ∈ L(X), |w| = len + 2r }`, sorted.
pub fn word_images(rule: &LocalRule, space: &ShiftSpace, len: usize) -> Result<Vec<crate::symbolic::Word>> {
    let mut out = space
        .language_words(len + 2 * rule.radius())
        .iter()
        .map(|w| rule.apply_window(w))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::symbolic::{Alphabet, Word};

    fn brute_images(rule: &LocalRule, len: usize) -> Vec<Word> {
        let mut out: Vec<Word> = rule
            .alphabet()
            .words(len + 2 * rule.radius())
            .map(|w| rule.apply_window(&w).unwrap())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn identity_image_is_input() {
        let caps = Caps::default();
        let a = Alphabet::with_size(2).unwrap();
        let golden = ShiftSpace::sft(a.clone(), vec![a.parse_word("11").unwrap()]).unwrap();
        let id = catalog::identity(2);
        let image = image_sofic(&id, &golden, &caps).unwrap();
        assert!(image.same_language_up_to(&golden, 8));
        let full = ShiftSpace::full(a);
        assert!(image_sofic(&id, &full, &caps).unwrap().same_language_up_to(&full, 8));
    }

    #[test]
    fn constant_image_is_a_fixed_point() {
        let c = catalog::constant(2, 0);
        let image = image_sofic(&c, &ShiftSpace::full(c.alphabet().clone()), &Caps::default()).unwrap();
        for n in 1..=6 {
            assert_eq!(image.language_words(n), vec![Word(vec![0; n])]);
        }
    }

    #[test]
    fn min_rule_image_matches_brute_force() {
        let rule = catalog::min_right();
        let full = ShiftSpace::full(rule.alphabet().clone());
        let image = image_sofic(&rule, &full, &Caps::default()).unwrap();
        for n in 1..=8 {
            assert_eq!(image.language_words(n), brute_images(&rule, n), "n={n}");
        }
        // 1 0 1 cannot appear: a lone 0 between ones needs a 0 to its right.
        assert!(!image.contains(&[1, 0, 1]));
        assert_eq!(word_images(&rule, &full, 5).unwrap(), brute_images(&rule, 5));
    }

    #[test]
    fn surjective_rules_have_full_image() {
        for rule in [catalog::xor_right(), catalog::walls_and_parity()] {
            let full = ShiftSpace::full(rule.alphabet().clone());
            let image = image_sofic(&rule, &full, &Caps::default()).unwrap();
            assert!(image.same_language_up_to(&full, 6));
        }
    }

    #[test]
    fn limit_set_is_nested() {
        let rule = catalog::elementary(128);
        let full = ShiftSpace::full(rule.alphabet().clone());
        let images = limit_set_approx(&rule, &full, 3, &Caps::default()).unwrap();
        assert_eq!(images.len(), 3);
        for (i, image) in images.iter().enumerate() {
            for n in 1..=6 {
                let mut expected = full.language_words(n + 2 * (i + 1));
                expected = expected
                    .iter()
                    .map(|w| rule.apply_window_n(w, i + 1).unwrap())
                    .collect();
                expected.sort();
                expected.dedup();
                assert_eq!(image.language_words(n), expected, "i={i} n={n}");
            }
        }
    }
}
