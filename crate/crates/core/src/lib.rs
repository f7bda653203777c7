//! Adaptive error-control-coding transmission for wireless sensor networks.
//!
//! The crate is organised bottom-up:
//!
//! - [`linkbudget`]: free-space transmit power and per-bit energy accounting
//! - [`codecs`]: Reed-Solomon over GF(2^m), convolutional encoding, hard and
//!   soft Viterbi decoding, BPSK/AWGN channel
//! - [`gainlab`]: Monte-Carlo BER curves and coding-gain extraction
//! - [`policy`]: critical distances and distance-driven codec selection
//! - [`simkernel`]: multi-round sensor-field energy simulation
//! - [`config`] and [`csv`]: flat `key = value` configuration and CSV emission
//!
//! Data-parallel loops (BER frames, grid points, simulation rounds) go through
//! [`exec::Exec`]. With the `parallel` feature (default) they run on rayon;
//! without it, or with [`exec::Exec::Serial`], they run on the calling thread.
//! Both paths produce identical results because every work item derives its
//! own RNG stream from the master seed and its index.

pub mod codecs;
pub mod config;
pub mod csv;
pub mod exec;
pub mod gainlab;
pub mod linkbudget;
pub mod policy;
pub mod rng;
pub mod simkernel;

pub use exec::Exec;
