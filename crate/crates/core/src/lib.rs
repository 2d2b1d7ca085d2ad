//! Spiking state-space sequence models.
//!
//! Two architectures share a diagonal state-space memory module and a
//! gated channel mixer; they differ in how memory outputs become binary
//! spike trains:
//!
//! * fixed-refractory thresholding (`FRssm`) with provably equivalent
//!   parallel-mask and streaming modes, and
//! * block-PSN spiking (`Pssm`), a depthwise strided convolution whose
//!   binary output is shared across each block of timesteps.
//!
//! Training is a self-contained reverse-mode engine with a
//! Gaussian-mixture surrogate gradient substituted for every Heaviside,
//! plus AdamW. `theory` and `checks` hold numerical verification of the
//! constructions the models rest on.

pub mod checks;
pub mod data;
pub mod error;
mod fftconv;
pub mod model;
pub mod seq;
pub mod spiking;
pub mod ssm;
pub mod theory;
pub mod train;

pub use error::{Error, Result};
pub use seq::Seq;
pub use spiking::SpikeTrain;
