//! Exact measures, their pushforwards under a rule, Cesàro means and the
//! blocking-word formula for the Cesàro limit.

mod diagram;
mod estimate;
mod formula;
mod measure;
mod pushforward;

pub use diagram::PreimageDiagram;
pub use estimate::{
    is_equicontinuous_measure, mu_c_estimate, mu_c_estimate_at, support_tests, BlockingComparison, FormulaPoint,
    MeasureEquicontinuity, MuCEstimate, SupportEntry, SupportReport,
};
pub use formula::{
    build_rkm, build_rkm_set, evaluate_formula, local_period, min_feasible_m, pkm, qualifies,
    theorem_formula, FormulaEvaluation, LocalColumn, RkmSpec,
};
pub use measure::{MarkovMeasure, MeasureKind};
pub use pushforward::{
    cesaro_mean, convergence_diagnostic, equicontinuous_cesaro_limit, pushforward_cylinder,
    pushforward_snapshot, CesaroSeries, Convergence, PushforwardSnapshot, Pushforwards,
};
