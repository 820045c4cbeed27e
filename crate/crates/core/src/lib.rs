#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod diagram;
pub mod error;
pub mod graph;
pub mod homfly;
pub mod skein;

pub use error::{Error, Result};
