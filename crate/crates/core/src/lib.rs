//! Compositions of `n` that are palindromic modulo `m`.
//!
//! A composition `(s_1, ..., s_k)` is palindromic modulo `m` when
//! `s_i ≡ s_{k-i+1} (mod m)` for every mirrored pair. This crate counts them
//! three independent ways (exhaustive enumeration, the rational generating
//! function recurrence, and closed forms for small `m`), builds the explicit
//! bijections for `m = 2` and `m = 3`, implements the structural maps for
//! general `m`, and computes the dominant-pole asymptotic constants.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod asymptotics;
pub mod bijection_m2;
pub mod bijection_m3;
pub mod composition;
pub mod counting;
pub mod error;
pub mod oracle;
pub mod structural;

pub use composition::{Composition, Modulus};
pub use error::{Error, Result};
