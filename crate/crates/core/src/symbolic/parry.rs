//! Parry (maximal entropy) measure of a transitive shift of finite type.
//!
//! With `θ` the Perron root of the adjacency matrix `A` and `l`, `r` its
//! left and right Perron vectors normalised so that `l·r = 1`, the cylinder
//! of a path `v_0 -> ... -> v_n` has weight `l[v_0] r[v_n] / θ^n`. The
//! cylinder of a word sums the weights of all paths carrying it.

use super::alphabet::Symbol;
use super::graph::LabeledGraph;
use super::shift::{ShiftKind, ShiftSpace};
use crate::error::{Error, Result};

pub const POWER_TOLERANCE: f64 = 1e-13;
pub const POWER_MAX_ITERATIONS: usize = 100_000;

#[derive(Debug, Clone)]
pub struct ParryMeasure {
    pub eigenvalue: f64,
    pub left_vector: Vec<f64>,
    pub right_vector: Vec<f64>,
    graph: LabeledGraph,
    full_size: Option<usize>,
}

impl ShiftSpace {
    pub fn parry_measure(&self) -> Result<ParryMeasure> {
        if self.kind() == ShiftKind::Sofic {
            return Err(Error::NotFiniteType);
        }
        if !self.is_transitive() {
            return Err(Error::NotTransitive);
        }
        let adj = self.graph().adjacency();
        let right = perron_vector(&adj, false);
        let left = perron_vector(&adj, true);
        let n = adj.len();
        let ar: Vec<f64> = (0..n)
            .map(|i| (0..n).map(|j| adj[i][j] * right[j]).sum())
            .collect();
        let eigenvalue = (0..n).map(|i| ar[i] / right[i]).sum::<f64>() / n as f64;
        let dot: f64 = left.iter().zip(&right).map(|(a, b)| a * b).sum();
        let left_vector = left.iter().map(|x| x / dot).collect();
        Ok(ParryMeasure {
            eigenvalue,
            left_vector,
            right_vector: right,
            graph: self.graph().clone(),
            full_size: self.is_full().then(|| self.alphabet().len()),
        })
    }
}

/// Perron vector by power iteration on `A + I` (aperiodic, same vector).
fn perron_vector(adj: &[Vec<f64>], transpose: bool) -> Vec<f64> {
    let n = adj.len();
    let mut v = vec![1.0; n];
    for _ in 0..POWER_MAX_ITERATIONS {
        let mut next = v.clone();
        for i in 0..n {
            for j in 0..n {
                let a = if transpose { adj[j][i] } else { adj[i][j] };
                next[i] += a * v[j];
            }
        }
        let max = next.iter().cloned().fold(0.0, f64::max);
        next.iter_mut().for_each(|x| *x /= max);
        let diff = next
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        v = next;
        if diff < POWER_TOLERANCE {
            break;
        }
    }
    v
}

impl ParryMeasure {
    /// `λ([u])`. Exact powers of `1/|A|` on the full shift.
    pub fn cylinder_prob(&self, word: &[Symbol]) -> f64 {
        if let Some(q) = self.full_size {
            if word.iter().any(|&s| s as usize >= q) {
                return 0.0;
            }
            return (q as f64).powi(-(word.len() as i32));
        }
        let scale = self.eigenvalue.powi(-(word.len() as i32));
        let mut total = 0.0;
        for v0 in 0..self.graph.vertex_count() {
            // Presentations of finite-type spaces are deterministic.
            let mut v = Some(v0);
            for &s in word {
                v = v.and_then(|v| self.graph.out_edges(v).find(|e| e.label == s).map(|e| e.to));
            }
            if let Some(end) = v {
                total += self.left_vector[v0] * self.right_vector[end];
            }
        }
        total * scale
    }

    /// Stationary vertex weights `l[v] r[v]`.
    pub fn stationary(&self) -> Vec<f64> {
        self.left_vector
            .iter()
            .zip(&self.right_vector)
            .map(|(a, b)| a * b)
            .collect()
    }
}
