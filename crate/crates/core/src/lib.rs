//! Exact-arithmetic toolkit for the Fibonacci cobweb poset.
//!
//! The crate builds the level-truncated cobweb poset, its incidence algebra
//! (ζ, μ and chain-counting powers of η = ζ − δ) and computes fibonomial
//! coefficients by several independent routes:
//!
//! * the factorial quotient and the two Fibonacci recurrences ([`fib`]),
//! * maximal-chain counting divided by the chain count of one copy ([`chains`]),
//! * summed binomial determinants over index subsets ([`paths`]).
//!
//! Everything is computed over arbitrary-precision integers; nothing here
//! touches floating point.
//!
//! Brute-force oracles that are naturally data-parallel (subset sums,
//! per-source DFS, down-set enumeration) run on rayon when the `parallel`
//! feature is enabled and sequentially otherwise. See [`Exec`].

pub mod chains;
pub mod error;
pub mod fib;
pub mod incidence;
pub mod konvalina;
mod par;
pub mod paths;
pub mod poset;

pub use error::{Error, Result};
pub use par::Exec;

pub use chains::{ChainCountReport, K1Report};
pub use fib::{fib, fibonomial_def, fibonomial_rec, Fibonomial, PsiSequence, RecurrenceForm};
pub use incidence::TriangularMatrix;
pub use konvalina::WeightVector;
pub use paths::{FencePoset, IndexSubset};
pub use poset::{CobwebCopy, CobwebTruncation, Vertex};

/// Big integers travel as decimal strings in every JSON export.
pub(crate) fn ser_decimal<S: serde::Serializer>(
    v: &num_bigint::BigInt,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}
