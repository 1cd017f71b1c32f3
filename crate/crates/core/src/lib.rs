//! One-dimensional quaternion offset linear canonical transform (QOLCT).
//!
//! The crate provides
//!
//! * [`quaternion`]: Hamilton quaternions and their `span{1, e₂}` decompositions,
//! * [`params`]: the six-parameter matrix `Λ = (A, B, C, D | p, q)`,
//! * [`olct`]: the scalar transform (direct and chirp-z fast paths, inverse, chirp convolution),
//! * [`qolct`]: the quaternion transform with its convolution and product operators,
//! * [`verify`]: an independent quadrature oracle and property suites for every identity,
//! * [`io`] and [`cli`]: CSV signal files and the `qolct` command-line tool.

pub mod cli;
pub mod czt;
pub mod error;
pub mod grid;
pub mod io;
pub mod olct;
pub mod params;
pub mod qolct;
pub mod quaternion;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
pub use grid::{Grid, Sampled};
pub use olct::{ComplexSignal, ComplexSpectrum, Method};
pub use params::{OlctParams, Preset};
pub use qolct::{SampledSignal, Spectrum};
pub use quaternion::{ComplexE2, Quaternion};
pub use report::VerificationReport;
