//! Approximate Gaussian quadrature (AGQ) built from moment sequences.
//!
//! Nodes are the roots of an ε-quasiorthogonal polynomial obtained from a
//! Hankel least-squares problem, weights come from Lagrange interpolation.
//! The same machinery turns uniform samples of a function into a short
//! exponential sum.
//!
//! The crate is `no_std` and only needs `alloc`. All arithmetic runs in
//! software multiprecision with an explicit [`numerics::Context`].
//!
//! ```
//! use agq_core::numerics::Context;
//! use agq_core::measures::lebesgue_pm1;
//! use agq_core::agq::{build_rule, RuleOptions, Stopping};
//!
//! let ctx = Context::new(40);
//! let mu = lebesgue_pm1(40, &ctx).unwrap();
//! let opts = RuleOptions::new(Stopping::Nodes(5));
//! let (rule, _cert) = build_rule(&mu, 20, &opts, &ctx).unwrap();
//! assert_eq!(rule.len(), 5);
//! ```
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod agq;
mod error;
pub mod expsum;
pub mod measures;
pub mod numerics;
pub mod reference;

pub use error::{Error, Result};
