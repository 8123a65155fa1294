use super::certify::BlockingCertificate;
use crate::ca::{apply_periodic, orbit_periodic, LocalRule};
use crate::error::{Error, Result};
use crate::symbolic::{PeriodicConfig, ShiftSpace, Symbol, Word};

/// Builds `u = B w v w'` whose shift-periodic point lies in the domain,
/// then returns it with its `F`-period `m`, checking `F^m(ū) = ū` exactly.
///
/// For an onto rule on a transitive shift of finite type with a blocking
/// word, such a point is always `F`-periodic; otherwise the orbit's
/// preperiod is reported as [`Error::NotPeriodic`].
pub fn construct_f_periodic_point(
    rule: &LocalRule,
    v: &Word,
    blocking: &BlockingCertificate,
    max_period: usize,
) -> Result<(PeriodicConfig, usize)> {
    let domain = rule.domain();
    if !domain.contains(v) {
        return Err(Error::Inadmissible(rule.alphabet().render(v)));
    }
    let generator = connect(domain, &blocking.word, v)?;
    let point = PeriodicConfig::new(generator)?;
    let orbit = orbit_periodic(rule, &point, max_period)?;
    if orbit.preperiod > 0 {
        return Err(Error::NotPeriodic {
            preperiod: orbit.preperiod,
            period: orbit.period,
        });
    }
    let m = orbit.period;
    let mut image = point.clone();
    for _ in 0..m {
        image = apply_periodic(rule, &image)?;
    }
    debug_assert_eq!(image, point);
    if image != point {
        return Err(Error::NotPeriodic {
            preperiod: orbit.preperiod,
            period: orbit.period,
        });
    }
    Ok((point, m))
}

/// Shortest (then lexicographically least) fillers `w`, `w'` making the
/// periodic point on `B w v w'` admissible.
fn connect(domain: &ShiftSpace, blocking: &Word, v: &Word) -> Result<Word> {
    let join = |w: &[Symbol], tail: &[Symbol]| -> Word {
        let mut g = blocking.0.clone();
        g.extend_from_slice(w);
        g.extend_from_slice(v);
        g.extend_from_slice(tail);
        Word(g)
    };
    if domain.is_full() {
        return Ok(join(&[], &[]));
    }
    let bound = domain.graph().vertex_count() + domain.memory() + 1;
    for len in 0..=bound {
        for w in domain.alphabet().words(len) {
            if !domain.contains(&join(&w, &[])) {
                continue;
            }
            for len2 in 0..=bound {
                for w2 in domain.alphabet().words(len2) {
                    let g = join(&w, &w2);
                    if domain.admits_periodic(&g) {
                        return Ok(g);
                    }
                }
            }
        }
    }
    Err(Error::Inadmissible(domain.alphabet().render(v)))
}
