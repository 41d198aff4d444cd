//! Fractional decoding of MDS array codes.
//!
//! A codeword of an `(n, k, l)` array code is an `l x n` matrix whose columns
//! live on separate storage nodes. A fractional decoder may download only an
//! `alpha` fraction of every column and still has to correct column errors.
//! The best possible number of correctable errors is
//! `floor((n - k/alpha) / 2)`; this crate implements two constructions that
//! reach it:
//!
//! * [`trace_scheme`]: Reed-Solomon over `GF(q^l)` with evaluation points in
//!   `GF(q)`, downloading `m` trace combinations per column (`alpha = m/l`);
//! * [`frs`]: folded Reed-Solomon codes read through an `alpha*l` prefix of
//!   each column, plus the same decoder for any bundled scalar RS code.
//!
//! [`bounds`] has the radius formulas and the converse machinery, and
//! [`harness`] the file formats, simulations and demonstrations used by the
//! `fracdec` command line tool.

pub mod bounds;
pub mod codeword;
pub mod combinatorics;
pub mod fields;
pub mod frs;
pub mod harness;
pub mod poly;
pub mod rational;
pub mod rs;
pub mod trace_scheme;

pub use codeword::{ArrayCodeword, DownloadBundle, ErrorPattern};
pub use fields::{ExtElem, ExtField, Field, PrimeField, TraceDualBasis};
pub use frs::{FrsConfig, FrsParams};
pub use poly::Poly;
pub use rational::Rational;
pub use rs::RsCode;
pub use trace_scheme::{TsConfig, TsOverrides};

/// Environment variable capping brute-force enumeration sizes.
pub const BUDGET_ENV: &str = "FRACDEC_BUDGET";

/// Default cap on enumerated candidates (messages, subsets, trials).
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// The enumeration budget: `FRACDEC_BUDGET` when set to an integer, else
/// [`DEFAULT_BUDGET`].
pub fn enumeration_budget() -> u64 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}
