use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("the shift space has an empty language")]
    EmptyLanguage,

    #[error("window of length {len} is too short, need at least {needed}")]
    WindowTooShort { len: usize, needed: usize },

    #[error("cap `{cap}` exceeded: requested {requested}, limit {limit}")]
    CapExceeded {
        cap: &'static str,
        limit: u64,
        requested: u64,
    },

    #[error("shift space is not transitive")]
    NotTransitive,

    #[error("operation needs a full shift or a shift of finite type")]
    NotFiniteType,

    #[error("rule does not map its domain into itself: image contains `{0}`")]
    NotClosed(String),

    #[error("word `{0}` is not admissible in the domain")]
    Inadmissible(String),

    #[error("no cycle found within {steps} steps")]
    HorizonExceeded { steps: usize },

    #[error("orbit is not purely periodic: preperiod {preperiod}, period {period}")]
    NotPeriodic { preperiod: usize, period: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("rule is not certified equicontinuous (E1)")]
    NotE1,

    #[error("flank of width {available} cannot hold a blocking word of length {needed}")]
    FlankTooShort { available: usize, needed: usize },

    #[error("R(k,m) has no qualifying words")]
    EmptySpec,

    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn cap(cap: &'static str, limit: u64, requested: u64) -> Self {
        Error::CapExceeded {
            cap,
            limit,
            requested,
        }
    }

    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
