pub mod blocking;
pub mod ca;
pub mod caps;
pub mod catalog;
pub mod error;
pub mod experiment;
pub mod format;
pub mod measures;
pub mod symbolic;

pub use caps::Caps;
pub use error::{Error, Result};
