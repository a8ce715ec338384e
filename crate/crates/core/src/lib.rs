#![no_std]
// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod bessel;
pub mod error;
pub mod ingham;
pub mod kernels;
pub mod spectra;

pub use error::{Error, Result};
