//! Local rules and their iteration on windows and periodic points,
//! surjectivity, and images of subshifts.

mod image;
mod periodic;
mod rule;
mod surjectivity;

pub use image::{image_sofic, limit_set_approx, word_images};
pub use periodic::{apply_periodic, orbit_periodic, OrbitSummary};
pub use rule::LocalRule;
pub use surjectivity::{is_surjective, preimage_count, SurjectivityMethod, SurjectivityVerdict};
