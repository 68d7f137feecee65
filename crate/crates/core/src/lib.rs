//! Matrix theory over the complex quaternion (biquaternion) algebra.
//!
//! Every question about a biquaternion matrix is lowered to a complex matrix
//! computation through the faithful complex representations and the answer is
//! lifted back.

pub mod cli;
pub mod complex_linalg;
pub mod det;
pub mod error;
pub mod io;
pub mod matrix;
pub mod sample;
pub mod scalar;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
pub use matrix::{BqMatrix, HalfRank};
pub use scalar::{Biquaternion, CanonicalCase, Classification};
