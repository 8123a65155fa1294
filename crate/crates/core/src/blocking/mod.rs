//! Blocking words: certification, falsification, search and the periodic
//! points they force.

mod certify;
mod falsify;
mod periodic_point;
mod search;

pub use certify::{certify_blocking, BlockingCertificate, Certification};
pub(crate) use certify::minimal_tail;
pub use falsify::{falsify_blocking, falsify_mode, FalsificationWitness, FalsifyMode};
pub use periodic_point::construct_f_periodic_point;
pub use search::{
    certify_word, classify_equicontinuity, search_blocking_words, EquicontinuityClass, EquicontinuityVerdict,
    ExhaustionReport, SearchParams,
};
