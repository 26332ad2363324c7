//! Σ∆ quantization of frame expansions with alternative decimation.
//!
//! Pipeline: build a frame ([`frames`]), quantize y = Ex with greedy Σ∆
//! ([`sigma_delta`]), decimate with D_ρS_ρʳ ([`decimation`]), reconstruct through a
//! decimated dual ([`reconstruction`]) and store the decimated samples losslessly
//! ([`bitcodec`]).

pub mod bitcodec;
pub mod decimation;
pub mod error;
pub mod frames;
pub mod numerics;
pub mod reconstruction;
pub mod sigma_delta;

pub use error::{Error, Result};
pub use numerics::{ComplexMatrix, ComplexVector, C64};
