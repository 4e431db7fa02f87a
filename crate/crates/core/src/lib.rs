//! Exact computation of critical L-values of level-one modular forms through
//! Siegel Eisenstein series pullbacks, and Fourier coefficients of
//! Ikeda–Miyawaki lifts.

pub mod eisenstein;
pub mod error;
pub mod kernel;
pub mod lifts;
pub mod modforms;
pub mod pullback;
pub mod qforms;
pub mod qseries;
pub mod siegel;

pub use error::{Error, Result};
