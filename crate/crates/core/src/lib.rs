//! Secret-key capacity of QKD rings: trusted-relay versus optical-switch.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only the numerical
//! model:
//!
//! - [`skr`]: decoy-state BB84 secret key rate `f(a)` as a function of link
//!   attenuation, with built-in profiles.
//! - [`topology`]: ring geometry and per-link attenuation budgets.
//! - [`capacity`]: fair per-pair rates `G_R` (relayed) and `G_S` (switched),
//!   and the normalized difference between them.
//! - [`sweep`]: `(N, L)` parameter grids of the comparison.
//! - [`ingest`]: summary statistics of key-rate logs.
//!
//! File formats, configuration and the command line live in the `ringqkd`
//! crate.
//!
//! ```
//! use ringqkd_core::capacity::{compare, ScheduleReading};
//! use ringqkd_core::skr::SkrProfile;
//! use ringqkd_core::topology::RingSpec;
//!
//! let ring = RingSpec::new(30, 4.0).unwrap();
//! let profile = SkrProfile::experimental();
//! let cmp = compare(&ring, &profile, ScheduleReading::default()).unwrap();
//! assert!(cmp.r.unwrap() > 0.0);
//! ```

#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod capacity;
mod error;
pub mod ingest;
mod math;
pub mod skr;
pub mod sweep;
pub mod topology;

pub use error::{Error, Result};
