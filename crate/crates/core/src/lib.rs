//! Incremental test-set selection and weighted predictivity estimation.
//!
//! This crate builds ordered test sets for validating regression surrogates
//! (greedy packing with boundary reflection, greedy support points, kernel
//! herding) and computes bias-corrected predictivity coefficients by
//! optimally weighting the observed residuals under a Gaussian-process
//! error model.
//!
//! The crate is `no_std` (with `alloc`); all IO, file formats and the CLI
//! live in the companion `tessel` crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod discrepancy;
pub mod kernels;
pub mod linalg;
pub mod measures;
pub mod rng;
pub mod selection;
pub mod special;
pub mod surrogate;
pub mod weighting;

mod sobol_table;

pub use kernels::{ConditionedKernel, KernelFamily, KernelForm, KernelSpec};
pub use measures::{Marginal, PointSet, TargetMeasure};
pub use weighting::{PredictivityReport, WeightedTestSet};
