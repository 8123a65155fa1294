//! Alphabets, words, cylinders and subshift presentations.

mod alphabet;
mod graph;
mod parry;
mod shift;

pub use alphabet::{decode, encode, Alphabet, AllWords, Cylinder, PeriodicConfig, Symbol, Word};
pub use graph::{Edge, LabeledGraph};
pub use parry::{ParryMeasure, POWER_MAX_ITERATIONS, POWER_TOLERANCE};
pub use shift::{ShiftKind, ShiftSpace};
