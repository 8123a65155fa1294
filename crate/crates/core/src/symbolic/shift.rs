use super::alphabet::{Alphabet, Symbol, Word};
use super::graph::{Edge, LabeledGraph};
use crate::caps::{pow_saturating, Caps};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftKind {
    Full,
    Sft,
    Sofic,
}

/// A subshift given by a trimmed labelled-graph presentation.
///
/// Full shifts and shifts of finite type are stored as vertex shifts on
/// their memory words, so the presentation is deterministic and every
/// bi-infinite path determines a unique point. Sofic shifts carry a
/// determinized, trimmed presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftSpace {
    alphabet: Alphabet,
    kind: ShiftKind,
    graph: LabeledGraph,
    forbidden: Vec<Word>,
    memory: usize,
}

impl ShiftSpace {
    pub fn full(alphabet: Alphabet) -> Self {
        let edges = (0..alphabet.len())
            .map(|a| Edge {
                from: 0,
                to: 0,
                label: a as Symbol,
            })
            .collect();
        ShiftSpace {
            alphabet,
            kind: ShiftKind::Full,
            graph: LabeledGraph::new(1, edges),
            forbidden: Vec::new(),
            memory: 0,
        }
    }

    /// The shift of finite type avoiding `forbidden`, presented as a vertex
    /// shift on words of length `max |e| - 1`.
    pub fn sft(alphabet: Alphabet, forbidden: Vec<Word>) -> Result<Self> {
        Self::sft_with_caps(alphabet, forbidden, &Caps::default())
    }

    pub fn sft_with_caps(alphabet: Alphabet, mut forbidden: Vec<Word>, caps: &Caps) -> Result<Self> {
        if forbidden.iter().any(|w| w.is_empty()) {
            return Err(Error::InvalidWord("forbidden word is empty".into()));
        }
        if let Some(w) = forbidden
            .iter()
            .find(|w| w.iter().any(|&s| s as usize >= alphabet.len()))
        {
            return Err(Error::InvalidWord(format!("{w:?} is outside the alphabet")));
        }
        if forbidden.is_empty() {
            return Ok(Self::full(alphabet));
        }
        forbidden.sort_unstable_by(|a, b| (a.len(), &a.0).cmp(&(b.len(), &b.0)));
        forbidden.dedup();
        let memory = forbidden.iter().map(|w| w.len()).max().unwrap_or(1) - 1;
        let q = alphabet.len();
        let count = pow_saturating(q, memory);
        if count > caps.enumeration {
            return Err(Error::cap("enumeration", caps.enumeration, count));
        }
        let avoids = |w: &[Symbol]| !forbidden.iter().any(|e| Word::from(w).contains(e));
        let vertices: Vec<Word> = alphabet.words(memory).filter(|w| avoids(w)).collect();
        let index = |w: &[Symbol]| vertices.binary_search_by(|v| v.as_slice().cmp(w)).ok();
        let mut edges = Vec::new();
        for (from, v) in vertices.iter().enumerate() {
            for a in 0..q as Symbol {
                let mut ext = v.0.clone();
                ext.push(a);
                if !forbidden.iter().any(|e| ext.ends_with(e)) {
                    if let Some(to) = index(&ext[1..]) {
                        edges.push(Edge { from, to, label: a });
                    }
                }
            }
        }
        let (graph, _) = LabeledGraph::new(vertices.len(), edges).trimmed();
        if graph.vertex_count() == 0 {
            return Err(Error::EmptyLanguage);
        }
        Ok(ShiftSpace {
            alphabet,
            kind: ShiftKind::Sft,
            graph,
            forbidden,
            memory,
        })
    }

    /// The sofic shift of labels of bi-infinite paths in `graph`.
    pub fn sofic(alphabet: Alphabet, graph: &LabeledGraph, caps: &Caps) -> Result<Self> {
        let (graph, _) = graph.trimmed();
        if graph.vertex_count() == 0 {
            return Err(Error::EmptyLanguage);
        }
        let det = graph.determinized(alphabet.len(), caps.subset_states)?;
        let (det, _) = det.trimmed();
        if det.vertex_count() == 0 {
            return Err(Error::EmptyLanguage);
        }
        Ok(ShiftSpace {
            alphabet,
            kind: ShiftKind::Sofic,
            graph: det,
            forbidden: Vec::new(),
            memory: 0,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn kind(&self) -> ShiftKind {
        self.kind
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn forbidden(&self) -> &[Word] {
        &self.forbidden
    }

    pub fn memory(&self) -> usize {
        self.memory
    }

    pub fn is_full(&self) -> bool {
        self.kind == ShiftKind::Full
    }

    /// Whether the labels of `word` trace some path of the presentation.
    pub fn contains(&self, word: &[Symbol]) -> bool {
        let mut set: Vec<usize> = (0..self.graph.vertex_count()).collect();
        for &s in word {
            set = self.graph.step_set(&set, s);
            if set.is_empty() {
                return false;
            }
        }
        true
    }

    /// `L(X) ∩ A^len` in lexicographic order.
    pub fn language_words(&self, len: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(len);
        let start: Vec<usize> = (0..self.graph.vertex_count()).collect();
        self.collect_words(&start, len, &mut prefix, &mut out);
        out
    }

    fn collect_words(&self, set: &[usize], len: usize, prefix: &mut Vec<Symbol>, out: &mut Vec<Word>) {
        if prefix.len() == len {
            out.push(Word(prefix.clone()));
            return;
        }
        for a in 0..self.alphabet.len() as Symbol {
            let next = self.graph.step_set(set, a);
            if !next.is_empty() {
                prefix.push(a);
                self.collect_words(&next, len, prefix, out);
                prefix.pop();
            }
        }
    }

    /// Whether the shift-periodic point built on `generator` lies in the space.
    pub fn admits_periodic(&self, generator: &[Symbol]) -> bool {
        if generator.is_empty() {
            return false;
        }
        let mut set: Vec<usize> = (0..self.graph.vertex_count()).collect();
        let mut seen = std::collections::HashSet::new();
        loop {
            if !seen.insert(set.clone()) {
                return true;
            }
            for &s in generator {
                set = self.graph.step_set(&set, s);
            }
            if set.is_empty() {
                return false;
            }
        }
    }

    /// Transitive iff the trimmed presentation is strongly connected.
    ///
    /// For sofic spaces this is a statement about the stored presentation;
    /// a transitive sofic shift whose subset presentation keeps a transient
    /// component reports `false`.
    pub fn is_transitive(&self) -> bool {
        self.graph.is_strongly_connected()
    }

    pub fn is_mixing(&self) -> bool {
        self.is_transitive() && self.graph.period() == 1
    }

    /// Agreement of the languages on every length up to `max_len`.
    pub fn same_language_up_to(&self, other: &ShiftSpace, max_len: usize) -> bool {
        self.alphabet == other.alphabet
            && (0..=max_len).all(|n| self.language_words(n) == other.language_words(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binary() -> Alphabet {
        Alphabet::with_size(2).unwrap()
    }

    fn golden_mean() -> ShiftSpace {
        let a = binary();
        let w = a.parse_word("11").unwrap();
        ShiftSpace::sft(a, vec![w]).unwrap()
    }

    fn brute_force(alphabet: &Alphabet, forbidden: &[Word], n: usize) -> Vec<Word> {
        alphabet
            .words(n)
            .filter(|w| !forbidden.iter().any(|e| w.contains(e)))
            .collect()
    }

    #[test]
    fn empty_list_is_full_shift() {
        let s = ShiftSpace::sft(binary(), vec![]).unwrap();
        assert!(s.is_full());
        assert_eq!(s.graph().vertex_count(), 1);
        assert_eq!(s.graph().edges().len(), 2);
    }

    #[test]
    fn golden_mean_presentation() {
        let s = golden_mean();
        assert_eq!(s.kind(), ShiftKind::Sft);
        assert_eq!(s.graph().vertex_count(), 2);
        assert_eq!(s.graph().edges().len(), 3);
        let render = |n| -> Vec<String> {
            s.language_words(n).iter().map(|w| s.alphabet().render(w)).collect()
        };
        assert_eq!(render(2), ["00", "01", "10"]);
        assert_eq!(s.language_words(3).len(), 5);
        assert!(s.is_transitive());
        assert!(s.is_mixing());
    }

    #[test]
    fn everything_forbidden_is_empty() {
        let a = Alphabet::new(['0']).unwrap();
        let w = a.parse_word("0").unwrap();
        assert!(matches!(ShiftSpace::sft(a, vec![w]), Err(Error::EmptyLanguage)));
    }

    #[test]
    fn two_fixed_points_are_not_transitive() {
        let a = binary();
        let f = vec![a.parse_word("01").unwrap(), a.parse_word("10").unwrap()];
        let s = ShiftSpace::sft(a, f).unwrap();
        assert!(!s.is_transitive());
        assert!(!s.is_mixing());
    }

    #[test]
    fn full_shift_language() {
        let s = ShiftSpace::full(binary());
        assert_eq!(s.language_words(2).len(), 4);
        assert!(s.is_transitive() && s.is_mixing());
    }

    #[test]
    fn periodic_admissibility() {
        let s = golden_mean();
        assert!(s.admits_periodic(&[0, 1]));
        assert!(!s.admits_periodic(&[1]));
        // "1" then wrap to "1": the wrap-around word 11 is forbidden.
        assert!(!s.admits_periodic(&[1, 0, 1]));
    }

    #[test]
    fn language_matches_brute_force_filter() {
        let a = Alphabet::with_size(3).unwrap();
        let lists: [&[&str]; 4] = [&["11"], &["012", "22"], &["0", "121"], &["10", "2"]];
        for list in lists {
            let forbidden: Vec<Word> = list.iter().map(|s| a.parse_word(s).unwrap()).collect();
            let s = ShiftSpace::sft(a.clone(), forbidden.clone()).unwrap();
            for n in 0..=8 {
                let expected = brute_force(&a, &forbidden, n);
                // Words of the trimmed presentation must also extend both ways;
                // every listed SFT here is extendable, so the sets agree.
                assert_eq!(s.language_words(n), expected, "{list:?} n={n}");
            }
        }
    }
}
