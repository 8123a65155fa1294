use num::{BigInt, BigRational, BigUint, Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::symbolic::{Alphabet, Symbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureKind {
    Bernoulli,
    Markov,
}

/// A shift-invariant Bernoulli or stationary Markov measure with exact
/// rational parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkovMeasure {
    alphabet: Alphabet,
    kind: MeasureKind,
    /// Symbol probabilities (Bernoulli) or the stationary vector (Markov).
    initial: Vec<BigRational>,
    /// Row-stochastic matrix; for Bernoulli every row equals `initial`.
    transition: Vec<Vec<BigRational>>,
}

/// Integer numerators over common denominators, for exact dynamic
/// programming without intermediate reductions.
#[derive(Debug, Clone)]
pub(crate) struct IntegerWeights {
    pub initial: Vec<BigUint>,
    pub initial_den: BigUint,
    pub transition: Vec<Vec<BigUint>>,
    pub transition_den: BigUint,
}

fn check_probability(p: &BigRational) -> Result<()> {
    if p.is_negative() || *p > BigRational::one() {
        return Err(Error::InvalidParameter(format!("probability {p} outside [0, 1]")));
    }
    Ok(())
}

fn check_distribution(row: &[BigRational], what: &str) -> Result<()> {
    for p in row {
        check_probability(p)?;
    }
    let total: BigRational = row.iter().sum();
    if !total.is_one() {
        return Err(Error::InvalidParameter(format!("{what} sums to {total}, not 1")));
    }
    Ok(())
}

fn common_numerators(values: &[BigRational]) -> (Vec<BigUint>, BigUint) {
    let den = values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let nums = values
        .iter()
        .map(|v| (v.numer() * (&den / v.denom())).to_biguint().expect("probabilities are non-negative"))
        .collect();
    (nums, den.to_biguint().expect("denominators are positive"))
}

impl MarkovMeasure {
    pub fn bernoulli(alphabet: Alphabet, probabilities: Vec<BigRational>) -> Result<Self> {
        if probabilities.len() != alphabet.len() {
            return Err(Error::InvalidParameter(format!(
                "{} probabilities for an alphabet of {} symbols",
                probabilities.len(),
                alphabet.len()
            )));
        }
        check_distribution(&probabilities, "Bernoulli vector")?;
        let transition = vec![probabilities.clone(); alphabet.len()];
        Ok(MarkovMeasure {
            alphabet,
            kind: MeasureKind::Bernoulli,
            initial: probabilities,
            transition,
        })
    }

    /// Bernoulli measure from `(numerator, denominator)` pairs.
    pub fn bernoulli_ratios(alphabet: Alphabet, ratios: &[(i64, i64)]) -> Result<Self> {
        let probs = ratios
            .iter()
            .map(|&(n, d)| {
                if d == 0 {
                    Err(Error::InvalidParameter("zero denominator".into()))
                } else {
                    Ok(BigRational::new(n.into(), d.into()))
                }
            })
            .collect::<Result<_>>()?;
        Self::bernoulli(alphabet, probs)
    }

    pub fn uniform(alphabet: Alphabet) -> Self {
        let q = alphabet.len() as i64;
        let probs = vec![BigRational::new(1.into(), q.into()); alphabet.len()];
        Self::bernoulli(alphabet, probs).expect("uniform vector is a distribution")
    }

    /// Stationary Markov measure of an irreducible stochastic matrix. The
    /// stationary vector is solved for exactly.
    pub fn markov(alphabet: Alphabet, matrix: Vec<Vec<BigRational>>) -> Result<Self> {
        Self::check_matrix(&alphabet, &matrix)?;
        let stationary = stationary_vector(&matrix)?;
        Ok(MarkovMeasure {
            alphabet,
            kind: MeasureKind::Markov,
            initial: stationary,
            transition: matrix,
        })
    }

    /// Same as [`MarkovMeasure::markov`] with a caller-supplied stationary
    /// vector, which must satisfy `πP = π` exactly.
    pub fn markov_with_stationary(
        alphabet: Alphabet,
        matrix: Vec<Vec<BigRational>>,
        stationary: Vec<BigRational>,
    ) -> Result<Self> {
        Self::check_matrix(&alphabet, &matrix)?;
        if stationary.len() != alphabet.len() {
            return Err(Error::InvalidParameter("stationary vector has the wrong length".into()));
        }
        check_distribution(&stationary, "stationary vector")?;
        if left_multiply(&stationary, &matrix) != stationary {
            return Err(Error::InvalidParameter("vector is not stationary for the matrix".into()));
        }
        Ok(MarkovMeasure {
            alphabet,
            kind: MeasureKind::Markov,
            initial: stationary,
            transition: matrix,
        })
    }

    fn check_matrix(alphabet: &Alphabet, matrix: &[Vec<BigRational>]) -> Result<()> {
        let q = alphabet.len();
        if matrix.len() != q || matrix.iter().any(|row| row.len() != q) {
            return Err(Error::InvalidParameter(format!("transition matrix must be {q}x{q}")));
        }
        for (i, row) in matrix.iter().enumerate() {
            check_distribution(row, &format!("row {i}"))?;
        }
        if !irreducible(matrix) {
            return Err(Error::InvalidParameter("transition matrix is not irreducible".into()));
        }
        Ok(())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn kind(&self) -> MeasureKind {
        self.kind
    }

    /// Symbol probabilities, i.e. the one-dimensional marginal.
    pub fn marginal(&self) -> &[BigRational] {
        &self.initial
    }

    pub fn transition(&self) -> &[Vec<BigRational>] {
        &self.transition
    }

    pub fn cylinder_prob(&self, u: &[Symbol]) -> BigRational {
        let Some((&first, rest)) = u.split_first() else {
            return BigRational::one();
        };
        let mut p = self.initial[first as usize].clone();
        let mut prev = first;
        for &s in rest {
            if p.is_zero() {
                break;
            }
            p *= &self.transition[prev as usize][s as usize];
            prev = s;
        }
        p
    }

    /// Whether every admissible word of the full shift has positive mass.
    pub fn has_full_support(&self) -> bool {
        self.transition.iter().flatten().all(|p| p.is_positive())
    }

    pub(crate) fn integer_weights(&self) -> IntegerWeights {
        let (initial, initial_den) = common_numerators(&self.initial);
        let flat: Vec<BigRational> = self.transition.iter().flatten().cloned().collect();
        let (nums, transition_den) = common_numerators(&flat);
        let q = self.alphabet.len();
        IntegerWeights {
            initial,
            initial_den,
            transition: nums.chunks(q).map(<[_]>::to_vec).collect(),
            transition_den,
        }
    }

    /// Floating-point view of `cylinder_prob`, for summaries only.
    pub fn cylinder_prob_f64(&self, u: &[Symbol]) -> f64 {
        self.cylinder_prob(u).to_f64().unwrap_or(f64::NAN)
    }
}

fn left_multiply(v: &[BigRational], m: &[Vec<BigRational>]) -> Vec<BigRational> {
    (0..m.len())
        .map(|j| v.iter().zip(m).map(|(vi, row)| vi * &row[j]).sum())
        .collect()
}

fn irreducible(matrix: &[Vec<BigRational>]) -> bool {
    let q = matrix.len();
    let reach = |forward: bool| -> bool {
        let mut seen = vec![false; q];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..q {
                let p = if forward { &matrix[i][j] } else { &matrix[j][i] };
                if p.is_positive() && !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.iter().all(|&s| s)
    };
    reach(true) && reach(false)
}

/// Solves `π(P - I) = 0`, `Σπ = 1` by exact Gaussian elimination.
fn stationary_vector(matrix: &[Vec<BigRational>]) -> Result<Vec<BigRational>> {
    let q = matrix.len();
    // Rows are equations; column j of (P - I) gives equation j. The last
    // equation is replaced by normalisation.
    let mut a: Vec<Vec<BigRational>> = (0..q)
        .map(|j| {
            let mut eq: Vec<BigRational> = (0..q)
                .map(|i| {
                    let mut c = matrix[i][j].clone();
                    if i == j {
                        c -= BigRational::one();
                    }
                    c
                })
                .collect();
            eq.push(BigRational::zero());
            eq
        })
        .collect();
    a[q - 1] = vec![BigRational::one(); q + 1];
    for col in 0..q {
        let pivot = (col..q)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::InvalidParameter("stationary vector is not unique".into()))?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..q {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in col..=q {
                    let delta = &factor * &a[col][c];
                    a[r][c] -= delta;
                }
            }
        }
    }
    Ok(a.into_iter().map(|row| row[q].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn bernoulli_cylinders() {
        let a = Alphabet::with_size(3).unwrap();
        let mu = MarkovMeasure::bernoulli_ratios(a.clone(), &[(1, 2), (1, 4), (1, 4)]).unwrap();
        assert_eq!(mu.cylinder_prob(&a.parse_word("20").unwrap()), r(1, 8));
        let b = Alphabet::with_size(2).unwrap();
        let uniform = MarkovMeasure::uniform(b.clone());
        assert_eq!(uniform.cylinder_prob(&b.parse_word("0110").unwrap()), r(1, 16));
        assert!(MarkovMeasure::bernoulli_ratios(b.clone(), &[(1, 2), (1, 3)]).is_err());
        assert!(MarkovMeasure::bernoulli_ratios(b, &[(3, 2), (-1, 2)]).is_err());
    }

    #[test]
    fn markov_stationary_is_exact() {
        let a = Alphabet::with_size(2).unwrap();
        let p = vec![vec![r(0, 1), r(1, 1)], vec![r(1, 2), r(1, 2)]];
        let mu = MarkovMeasure::markov(a.clone(), p.clone()).unwrap();
        assert_eq!(mu.marginal(), &[r(1, 3), r(2, 3)]);
        assert_eq!(mu.cylinder_prob(&a.parse_word("01").unwrap()), r(1, 3));
        assert_eq!(mu.cylinder_prob(&a.parse_word("00").unwrap()), r(0, 1));
        assert!(MarkovMeasure::markov_with_stationary(a.clone(), p.clone(), vec![r(1, 2), r(1, 2)]).is_err());
        assert!(MarkovMeasure::markov_with_stationary(a, p, vec![r(1, 3), r(2, 3)]).is_ok());
    }

    #[test]
    fn reducible_matrix_rejected() {
        let a = Alphabet::with_size(2).unwrap();
        let p = vec![vec![r(1, 1), r(0, 1)], vec![r(1, 2), r(1, 2)]];
        assert!(MarkovMeasure::markov(a, p).is_err());
    }

    #[test]
    fn kolmogorov_consistency() {
        let a = Alphabet::with_size(3).unwrap();
        let p = vec![
            vec![r(1, 2), r(1, 3), r(1, 6)],
            vec![r(0, 1), r(1, 4), r(3, 4)],
            vec![r(1, 1), r(0, 1), r(0, 1)],
        ];
        let mu = MarkovMeasure::markov(a.clone(), p).unwrap();
        for u in a.words(3) {
            let right: BigRational = (0..3).map(|s| mu.cylinder_prob(&[&u[..], &[s]].concat())).sum();
            let left: BigRational = (0..3).map(|s| mu.cylinder_prob(&[&[s], &u[..]].concat())).sum();
            assert_eq!(right, mu.cylinder_prob(&u));
            assert_eq!(left, mu.cylinder_prob(&u));
        }
    }
}
