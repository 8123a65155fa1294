use crate::caps::{pow_saturating, Caps};
use crate::error::{Error, Result};
use crate::symbolic::{encode, Alphabet, ShiftSpace, Symbol, Word};

/// A radius-`r` block map `f: A^(2r+1) -> A` with its domain subshift.
///
/// The table is dense and indexed by the mixed-radix code of the
/// neighbourhood `x_{i-r} .. x_{i+r}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalRule {
    alphabet: Alphabet,
    radius: usize,
    table: Vec<Symbol>,
    domain: ShiftSpace,
}

impl LocalRule {
    pub fn new(alphabet: Alphabet, radius: usize, table: Vec<Symbol>) -> Result<Self> {
        Self::with_caps(alphabet, radius, table, &Caps::default())
    }

    pub fn with_caps(alphabet: Alphabet, radius: usize, table: Vec<Symbol>, caps: &Caps) -> Result<Self> {
        let entries = table_size(alphabet.len(), radius, caps)?;
        if table.len() != entries {
            return Err(Error::InvalidParameter(format!(
                "rule table has {} entries, expected {entries}",
                table.len()
            )));
        }
        if let Some(s) = table.iter().find(|&&s| s as usize >= alphabet.len()) {
            return Err(Error::InvalidParameter(format!("rule output {s} outside the alphabet")));
        }
        let domain = ShiftSpace::full(alphabet.clone());
        Ok(LocalRule {
            alphabet,
            radius,
            table,
            domain,
        })
    }

    /// Tabulates `f` over every neighbourhood.
    pub fn from_fn(alphabet: Alphabet, radius: usize, f: impl Fn(&[Symbol]) -> Symbol) -> Result<Self> {
        Self::from_fn_with_caps(alphabet, radius, f, &Caps::default())
    }

    pub fn from_fn_with_caps(
        alphabet: Alphabet,
        radius: usize,
        f: impl Fn(&[Symbol]) -> Symbol,
        caps: &Caps,
    ) -> Result<Self> {
        table_size(alphabet.len(), radius, caps)?;
        let table = alphabet.words(2 * radius + 1).map(|w| f(&w)).collect();
        Self::with_caps(alphabet, radius, table, caps)
    }

    /// Attaches a domain subshift, checking `F(X) ⊆ X` on admissible words.
    ///
    /// Every forbidden word has length at most `memory + 1`, so images of
    /// admissible words of length `2r + max(memory + 1, 3)` decide closure.
    pub fn with_domain(mut self, domain: ShiftSpace) -> Result<Self> {
        if domain.alphabet() != &self.alphabet {
            return Err(Error::InvalidParameter("domain alphabet differs from rule alphabet".into()));
        }
        let len = 2 * self.radius + (domain.memory() + 1).max(3);
        for w in domain.language_words(len) {
            let image = self.apply_window(&w)?;
            if !domain.contains(&image) {
                return Err(Error::NotClosed(self.alphabet.render(&image)));
            }
        }
        self.domain = domain;
        Ok(self)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn table(&self) -> &[Symbol] {
        &self.table
    }

    pub fn domain(&self) -> &ShiftSpace {
        &self.domain
    }

    /// Number of cells in a neighbourhood, `2r + 1`.
    pub fn span(&self) -> usize {
        2 * self.radius + 1
    }

    #[inline]
    pub fn image(&self, neighbourhood: &[Symbol]) -> Symbol {
        self.table[encode(neighbourhood, self.alphabet.len())]
    }

    #[inline]
    pub fn image_of_code(&self, code: usize) -> Symbol {
        self.table[code]
    }

    /// `f` applied at every full window of `u`; length `|u| - 2r`.
    pub fn apply_window(&self, u: &[Symbol]) -> Result<Word> {
        if u.len() < self.span() {
            return Err(Error::WindowTooShort {
                len: u.len(),
                needed: self.span(),
            });
        }
        let mut out = Vec::with_capacity(u.len() - 2 * self.radius);
        self.apply_into(u, &mut out);
        Ok(Word(out))
    }

    /// Unchecked form of [`apply_window`](Self::apply_window) writing into `out`.
    pub fn apply_into(&self, u: &[Symbol], out: &mut Vec<Symbol>) {
        out.clear();
        let q = self.alphabet.len();
        let span = self.span();
        if u.len() < span {
            return;
        }
        let top = q.pow(span as u32 - 1);
        let mut code = encode(&u[..span - 1], q);
        for &s in &u[span - 1..] {
            code = code * q + s as usize;
            out.push(self.table[code]);
            code %= top;
        }
    }

    /// Iterates `apply_window` `n` times.
    pub fn apply_window_n(&self, u: &[Symbol], n: usize) -> Result<Word> {
        let mut w = Word(u.to_vec());
        for _ in 0..n {
            w = self.apply_window(&w)?;
        }
        Ok(w)
    }

    /// `F^n` as a block map of radius `n·r`.
    pub fn compose_power(&self, n: usize, caps: &Caps) -> Result<LocalRule> {
        if n == 0 {
            return Err(Error::InvalidParameter("power must be at least 1".into()));
        }
        let radius = n * self.radius;
        table_size(self.alphabet.len(), radius, caps)?;
        let mut buf = Vec::new();
        let mut next = Vec::new();
        let table = self
            .alphabet
            .words(2 * radius + 1)
            .map(|w| {
                buf.clear();
                buf.extend_from_slice(&w);
                for _ in 0..n {
                    self.apply_into(&buf, &mut next);
                    std::mem::swap(&mut buf, &mut next);
                }
                buf[0]
            })
            .collect();
        let rule = LocalRule::with_caps(self.alphabet.clone(), radius, table, caps)?;
        Ok(LocalRule {
            domain: self.domain.clone(),
            ..rule
        })
    }

    /// `F ∘ σ^{-k}` as a block map of radius `r + |k|`:
    /// `(F ∘ σ^{-k})(x)_i = f(x_{i-k-r}, ..., x_{i-k+r})`.
    pub fn shift_compose(&self, k: i64, caps: &Caps) -> Result<LocalRule> {
        let radius = self.radius + k.unsigned_abs() as usize;
        let offset = (radius as i64 - k - self.radius as i64) as usize;
        let span = self.span();
        let rule = LocalRule::from_fn_with_caps(
            self.alphabet.clone(),
            radius,
            |w| self.image(&w[offset..offset + span]),
            caps,
        )?;
        Ok(LocalRule {
            domain: self.domain.clone(),
            ..rule
        })
    }

    /// The same map seen with a larger radius.
    pub fn padded(&self, radius: usize, caps: &Caps) -> Result<LocalRule> {
        if radius < self.radius {
            return Err(Error::InvalidParameter("cannot shrink a radius".into()));
        }
        let extra = radius - self.radius;
        let span = self.span();
        let rule = LocalRule::from_fn_with_caps(
            self.alphabet.clone(),
            radius,
            |w| self.image(&w[extra..extra + span]),
            caps,
        )?;
        Ok(LocalRule {
            domain: self.domain.clone(),
            ..rule
        })
    }
}

fn table_size(q: usize, radius: usize, caps: &Caps) -> Result<usize> {
    let entries = pow_saturating(q, 2 * radius + 1);
    if entries > caps.table_entries {
        return Err(Error::cap("table_entries", caps.table_entries, entries));
    }
    Ok(entries as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn w(rule: &LocalRule, s: &str) -> Word {
        rule.alphabet().parse_word(s).unwrap()
    }

    #[test]
    fn walls_rule_window() {
        let f = catalog::walls_and_parity();
        let out = f.apply_window(&w(&f, "012")).unwrap();
        assert_eq!(f.alphabet().render(&out), "1");
    }

    #[test]
    fn identity_and_xor_windows() {
        let id = catalog::identity(3);
        let u = w(&id, "0120");
        assert_eq!(id.apply_window(&u).unwrap(), u);
        let xor = catalog::xor_right();
        let out = xor.apply_window(&w(&xor, "0110")).unwrap();
        // windows 011 and 110 give 1+1 and 1+0
        assert_eq!(xor.alphabet().render(&out), "01");
    }

    #[test]
    fn short_window_is_an_error() {
        let f = catalog::walls_and_parity();
        assert!(matches!(
            f.apply_window(&w(&f, "01")),
            Err(Error::WindowTooShort { len: 2, needed: 3 })
        ));
    }

    #[test]
    fn power_of_identity() {
        let id = catalog::identity(2).compose_power(5, &Caps::default()).unwrap();
        assert_eq!(id.radius(), 0);
        assert_eq!(id, catalog::identity(2));
    }

    #[test]
    fn power_matches_iteration() {
        let caps = Caps::default();
        for rule in [catalog::xor_right(), catalog::walls_and_parity()] {
            let sq = rule.compose_power(2, &caps).unwrap();
            for u in rule.alphabet().words(5) {
                assert_eq!(sq.apply_window(&u).unwrap(), rule.apply_window_n(&u, 2).unwrap());
            }
        }
        let f = catalog::walls_and_parity();
        let u = w(&f, "01220");
        let sq = f.compose_power(2, &caps).unwrap();
        assert_eq!(sq.apply_window(&u).unwrap(), f.apply_window_n(&u, 2).unwrap());
    }

    #[test]
    fn power_cap_is_enforced() {
        let caps = Caps::default().with_overrides("table_entries=100").unwrap();
        assert!(matches!(
            catalog::walls_and_parity().compose_power(2, &caps),
            Err(Error::CapExceeded { cap: "table_entries", .. })
        ));
    }

    #[test]
    fn shift_composition() {
        let caps = Caps::default();
        let id = catalog::identity(2).shift_compose(1, &caps).unwrap();
        assert_eq!(id.radius(), 1);
        for u in id.alphabet().words(3) {
            assert_eq!(id.image(&u), u[0]);
        }
        let xor = catalog::xor_right();
        let same = xor.shift_compose(0, &caps).unwrap();
        assert_eq!(same, xor);
        // F∘σ^{-1}: output at i is F(x)_{i-1}.
        let g = xor.shift_compose(1, &caps).unwrap();
        for u in xor.alphabet().words(5) {
            let fx = xor.apply_window(&u).unwrap();
            let gx = g.apply_window(&u).unwrap();
            assert_eq!(gx[0], fx[0]);
            assert_eq!(g.image(&u), xor.image(&u[0..3]));
        }
        let back = xor.shift_compose(-1, &caps).unwrap();
        for u in xor.alphabet().words(5) {
            assert_eq!(back.image(&u), xor.image(&u[2..5]));
        }
    }

    #[test]
    fn domain_closure() {
        let a = Alphabet::with_size(2).unwrap();
        let golden = ShiftSpace::sft(a.clone(), vec![a.parse_word("11").unwrap()]).unwrap();
        assert!(catalog::identity(2).with_domain(golden.clone()).is_ok());
        // Negation maps 0000 to 1111, which leaves the golden-mean shift.
        assert!(matches!(
            catalog::negation().with_domain(golden),
            Err(Error::NotClosed(_))
        ));
    }
}
