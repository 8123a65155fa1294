//! Text formats for rules, measures and shift spaces.
//!
//! Rule files:
//!
//! ```text
//! alphabet: 0 1 2
//! radius: 1
//! *** -> 0
//! *2* -> 2
//! ```
//!
//! `*` matches any symbol; later lines override earlier ones, and every
//! neighbourhood must end up assigned. `#` starts a comment.

use std::path::Path;

use num::{BigInt, BigRational};

use crate::ca::LocalRule;
use crate::error::{Error, Result};
use crate::measures::{MarkovMeasure, MeasureKind};
use crate::symbolic::{decode, encode, Alphabet, ShiftSpace, Symbol, Word};

struct Line<'a> {
    number: usize,
    text: &'a str,
    /// Column of `text[0]` in the original line, 1-based.
    column: usize,
}

fn lines(src: &str) -> impl Iterator<Item = Line<'_>> {
    src.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        let column = content.len() - trimmed.len() + 1;
        let text = trimmed.trim_end();
        (!text.is_empty()).then_some(Line {
            number: i + 1,
            text,
            column,
        })
    })
}

fn header<'a>(line: &Line<'a>, key: &str) -> Option<(&'a str, usize)> {
    let rest = line.text.strip_prefix(key)?.strip_prefix(':')?;
    let value = rest.trim_start();
    Some((value, line.column + key.len() + 1 + rest.len() - value.len()))
}

fn parse_alphabet(value: &str, line: usize, column: usize) -> Result<Alphabet> {
    let tokens: Vec<&str> = value.split_whitespace().collect();
    let symbols: Vec<char> = match tokens.as_slice() {
        [single] => single.chars().collect(),
        many => {
            if let Some(t) = many.iter().find(|t| t.chars().count() != 1) {
                return Err(Error::parse(line, column, format!("symbol `{t}` is not a single character")));
            }
            many.iter().filter_map(|t| t.chars().next()).collect()
        }
    };
    Alphabet::new(symbols).map_err(|e| Error::parse(line, column, e.to_string()))
}

pub fn parse_rational(token: &str) -> Option<BigRational> {
    let (n, d) = match token.split_once('/') {
        Some((n, d)) => (n.parse::<BigInt>().ok()?, d.parse::<BigInt>().ok()?),
        None => (token.parse::<BigInt>().ok()?, BigInt::from(1)),
    };
    (d != BigInt::from(0)).then(|| BigRational::new(n, d))
}

fn rationals(value: &str, line: usize, column: usize) -> Result<Vec<BigRational>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for token in value.split_whitespace() {
        let at = value[offset..].find(token).map_or(offset, |i| offset + i);
        offset = at + token.len();
        out.push(
            parse_rational(token)
                .ok_or_else(|| Error::parse(line, column + at, format!("`{token}` is not a rational p/q")))?,
        );
    }
    Ok(out)
}

pub fn parse_rule_str(src: &str) -> Result<LocalRule> {
    let mut alphabet: Option<Alphabet> = None;
    let mut radius: Option<usize> = None;
    let mut table: Vec<Option<Symbol>> = Vec::new();
    let mut seen: Vec<(String, usize)> = Vec::new();
    let mut last_line = 0;
    for line in lines(src) {
        last_line = line.number;
        if let Some((value, col)) = header(&line, "alphabet") {
            if alphabet.is_some() {
                return Err(Error::parse(line.number, line.column, "duplicate `alphabet` header"));
            }
            alphabet = Some(parse_alphabet(value, line.number, col)?);
            continue;
        }
        if let Some((value, col)) = header(&line, "radius") {
            if radius.is_some() {
                return Err(Error::parse(line.number, line.column, "duplicate `radius` header"));
            }
            radius = Some(
                value
                    .parse()
                    .map_err(|_| Error::parse(line.number, col, format!("radius `{value}` is not a number")))?,
            );
            continue;
        }
        let (Some(a), Some(r)) = (&alphabet, radius) else {
            return Err(Error::parse(line.number, line.column, "`alphabet` and `radius` must precede entries"));
        };
        let span = 2 * r + 1;
        if table.is_empty() {
            let size = crate::caps::pow_saturating(a.len(), span);
            if size > crate::Caps::default().table_entries {
                return Err(Error::cap("table_entries", crate::Caps::default().table_entries, size));
            }
            table = vec![None; size as usize];
        }
        let Some((lhs, rhs)) = line.text.split_once("->") else {
            return Err(Error::parse(line.number, line.column, "expected `neighbourhood -> symbol`"));
        };
        let pattern: String = lhs.chars().filter(|c| !c.is_whitespace()).collect();
        if pattern.chars().count() != span {
            return Err(Error::parse(
                line.number,
                line.column,
                format!("neighbourhood `{pattern}` has length {}, expected {span}", pattern.chars().count()),
            ));
        }
        if let Some((_, first)) = seen.iter().find(|(p, _)| *p == pattern) {
            return Err(Error::parse(
                line.number,
                line.column,
                format!("duplicate entry `{pattern}` (first on line {first})"),
            ));
        }
        seen.push((pattern.clone(), line.number));
        let rhs_col = line.column + line.text.find("->").unwrap_or(0) + 2;
        let rhs = rhs.trim();
        let mut rhs_chars = rhs.chars();
        let image = match (rhs_chars.next(), rhs_chars.next()) {
            (Some(c), None) => a
                .index_of(c)
                .ok_or_else(|| Error::parse(line.number, rhs_col, format!("symbol {c:?} not in alphabet")))?,
            _ => return Err(Error::parse(line.number, rhs_col, format!("expected one symbol, found `{rhs}`"))),
        };
        let mut slots: Vec<Option<Symbol>> = Vec::with_capacity(span);
        for (i, c) in pattern.chars().enumerate() {
            if c == '*' {
                slots.push(None);
            } else {
                let s = a.index_of(c).ok_or_else(|| {
                    Error::parse(line.number, line.column + i, format!("symbol {c:?} not in alphabet"))
                })?;
                slots.push(Some(s));
            }
        }
        for (code, entry) in table.iter_mut().enumerate() {
            let w = decode(code, a.len(), span);
            if slots.iter().zip(&w).all(|(slot, s)| slot.is_none_or(|x| x == *s)) {
                *entry = Some(image);
            }
        }
    }
    let alphabet = alphabet.ok_or_else(|| Error::parse(last_line.max(1), 1, "missing `alphabet` header"))?;
    let radius = radius.ok_or_else(|| Error::parse(last_line.max(1), 1, "missing `radius` header"))?;
    if table.is_empty() {
        return Err(Error::parse(last_line.max(1), 1, "rule has no entries"));
    }
    let span = 2 * radius + 1;
    let table = table
        .into_iter()
        .enumerate()
        .map(|(code, s)| {
            s.ok_or_else(|| {
                let w = decode(code, alphabet.len(), span);
                Error::parse(last_line, 1, format!("neighbourhood `{}` is not assigned", alphabet.render(&w)))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    LocalRule::new(alphabet, radius, table)
}

/// One explicit line per neighbourhood, in lexicographic order.
pub fn emit_rule(rule: &LocalRule) -> String {
    let a = rule.alphabet();
    let mut out = format!("alphabet: {a}\nradius: {}\n", rule.radius());
    for w in a.words(rule.span()) {
        let image = rule.image_of_code(encode(&w, a.len()));
        out.push_str(&format!("{} -> {}\n", a.render(&w), a.char_of(image)));
    }
    out
}

/// ```text
/// bernoulli: 1/2 1/4 1/4
/// ```
/// or `markov:` followed by one row per line, with an optional
/// `stationary:` line. An `alphabet:` header is optional.
pub fn parse_measure_str(src: &str) -> Result<MarkovMeasure> {
    let mut alphabet: Option<Alphabet> = None;
    let mut bernoulli: Option<(Vec<BigRational>, usize)> = None;
    let mut markov: Option<(Vec<Vec<BigRational>>, usize)> = None;
    let mut stationary: Option<Vec<BigRational>> = None;
    let mut last_line = 0;
    for line in lines(src) {
        last_line = line.number;
        if let Some((value, col)) = header(&line, "alphabet") {
            alphabet = Some(parse_alphabet(value, line.number, col)?);
        } else if let Some((value, col)) = header(&line, "bernoulli") {
            if bernoulli.is_some() || markov.is_some() {
                return Err(Error::parse(line.number, line.column, "measure defined twice"));
            }
            bernoulli = Some((rationals(value, line.number, col)?, line.number));
        } else if let Some((value, col)) = header(&line, "markov") {
            if bernoulli.is_some() || markov.is_some() {
                return Err(Error::parse(line.number, line.column, "measure defined twice"));
            }
            if !value.is_empty() {
                return Err(Error::parse(line.number, col, "matrix rows go on the following lines"));
            }
            markov = Some((Vec::new(), line.number));
        } else if let Some((value, col)) = header(&line, "stationary") {
            stationary = Some(rationals(value, line.number, col)?);
        } else if let Some((rows, _)) = markov.as_mut() {
            rows.push(rationals(line.text, line.number, line.column)?);
        } else {
            return Err(Error::parse(line.number, line.column, format!("unexpected line `{}`", line.text)));
        }
    }
    let at = |line: usize| move |e: Error| Error::parse(line, 1, e.to_string());
    match (bernoulli, markov) {
        (Some((probs, line)), None) => {
            let a = match alphabet {
                Some(a) => a,
                None => Alphabet::with_size(probs.len()).map_err(at(line))?,
            };
            MarkovMeasure::bernoulli(a, probs).map_err(at(line))
        }
        (None, Some((rows, line))) => {
            let a = match alphabet {
                Some(a) => a,
                None => Alphabet::with_size(rows.len()).map_err(at(line))?,
            };
            match stationary {
                Some(pi) => MarkovMeasure::markov_with_stationary(a, rows, pi).map_err(at(line)),
                None => MarkovMeasure::markov(a, rows).map_err(at(line)),
            }
        }
        _ => Err(Error::parse(last_line.max(1), 1, "expected `bernoulli:` or `markov:`")),
    }
}

pub fn emit_measure(mu: &MarkovMeasure) -> String {
    let join = |row: &[BigRational]| row.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ");
    let mut out = format!("alphabet: {}\n", mu.alphabet());
    match mu.kind() {
        MeasureKind::Bernoulli => out.push_str(&format!("bernoulli: {}\n", join(mu.marginal()))),
        MeasureKind::Markov => {
            out.push_str("markov:\n");
            for row in mu.transition() {
                out.push_str(&join(row));
                out.push('\n');
            }
            out.push_str(&format!("stationary: {}\n", join(mu.marginal())));
        }
    }
    out
}

/// `alphabet:` then any number of `forbid: <word>` lines.
pub fn parse_space_str(src: &str) -> Result<ShiftSpace> {
    let mut alphabet: Option<Alphabet> = None;
    let mut forbidden: Vec<(String, usize, usize)> = Vec::new();
    let mut last_line = 0;
    for line in lines(src) {
        last_line = line.number;
        if let Some((value, col)) = header(&line, "alphabet") {
            if alphabet.is_some() {
                return Err(Error::parse(line.number, line.column, "duplicate `alphabet` header"));
            }
            alphabet = Some(parse_alphabet(value, line.number, col)?);
        } else if let Some((value, col)) = header(&line, "forbid") {
            if value.is_empty() || value.contains(char::is_whitespace) {
                return Err(Error::parse(line.number, col, "expected one word"));
            }
            forbidden.push((value.to_string(), line.number, col));
        } else {
            return Err(Error::parse(line.number, line.column, format!("unexpected line `{}`", line.text)));
        }
    }
    let alphabet = alphabet.ok_or_else(|| Error::parse(last_line.max(1), 1, "missing `alphabet` header"))?;
    let words = forbidden
        .iter()
        .map(|(w, line, col)| alphabet.parse_word(w).map_err(|e| Error::parse(*line, *col, e.to_string())))
        .collect::<Result<Vec<Word>>>()?;
    if words.is_empty() {
        Ok(ShiftSpace::full(alphabet))
    } else {
        ShiftSpace::sft(alphabet, words).map_err(|e| Error::parse(last_line, 1, e.to_string()))
    }
}

pub fn emit_space(space: &ShiftSpace) -> String {
    let mut out = format!("alphabet: {}\n", space.alphabet());
    for w in space.forbidden() {
        out.push_str(&format!("forbid: {}\n", space.alphabet().render(w)));
    }
    out
}

pub fn parse_rule(path: impl AsRef<Path>) -> Result<LocalRule> {
    parse_rule_str(&std::fs::read_to_string(path)?)
}

pub fn parse_measure(path: impl AsRef<Path>) -> Result<MarkovMeasure> {
    parse_measure_str(&std::fs::read_to_string(path)?)
}

pub fn parse_space(path: impl AsRef<Path>) -> Result<ShiftSpace> {
    parse_space_str(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    const WALLS: &str = "\
# walls and parity
alphabet: 0 1 2
radius: 1
*00 -> 0
*01 -> 1
*10 -> 1
*11 -> 0
*20 -> 2
*21 -> 2
*02 -> 0
*12 -> 1
*22 -> 2
";

    #[test]
    fn walls_rule_file() {
        let rule = parse_rule_str(WALLS).unwrap();
        assert_eq!(rule, catalog::walls_and_parity());
    }

    #[test]
    fn wildcards_and_override() {
        let src = "alphabet: 01\nradius: 1\n*** -> 0\n*1* -> 1\n";
        let rule = parse_rule_str(src).unwrap();
        assert_eq!(rule, catalog::elementary(204));
    }

    #[test]
    fn round_trip() {
        for rule in [
            catalog::walls_and_parity(),
            catalog::identity(3),
            catalog::xor_right(),
            catalog::elementary(110),
            catalog::constant(2, 1),
        ] {
            assert_eq!(parse_rule_str(&emit_rule(&rule)).unwrap(), rule);
        }
    }

    #[test]
    fn rule_errors_name_the_line() {
        let err = parse_rule_str("alphabet: 0 1\nradius: x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 9, .. }), "{err}");
        let err = parse_rule_str("alphabet: 0 1\nradius: 0\n0 -> 1\n0 -> 0\n1 -> 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err}");
        let err = parse_rule_str("alphabet: 0 1\nradius: 0\n0 -> 1\n").unwrap_err();
        assert!(err.to_string().contains("`1` is not assigned"), "{err}");
        let err = parse_rule_str("alphabet: 0 1\nradius: 0\n3 -> 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, column: 1, .. }), "{err}");
        let err = parse_rule_str("0 -> 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn measures() {
        let mu = parse_measure_str("bernoulli: 1/3 1/3 1/3\n").unwrap();
        assert_eq!(mu, MarkovMeasure::uniform(Alphabet::with_size(3).unwrap()));
        let src = "alphabet: a b\nmarkov:\n0 1\n1/2 1/2\n";
        let mu = parse_measure_str(src).unwrap();
        assert_eq!(mu.marginal()[0], BigRational::new(1.into(), 3.into()));
        assert_eq!(parse_measure_str(&emit_measure(&mu)).unwrap(), mu);
        let err = parse_measure_str("bernoulli: 1/2 1/3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = parse_measure_str("bernoulli: 1/2 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, column: 16, .. }), "{err}");
    }

    #[test]
    fn spaces() {
        let golden = parse_space_str("alphabet: 0 1\nforbid: 11\n").unwrap();
        assert_eq!(golden.language_words(3).len(), 5);
        assert_eq!(parse_space_str(&emit_space(&golden)).unwrap(), golden);
        assert!(parse_space_str("alphabet: 0 1\n").unwrap().is_full());
        let err = parse_space_str("alphabet: 0 1\nforbid: 12\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 9, .. }), "{err}");
    }
}
