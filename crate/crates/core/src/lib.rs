//! Verification, construction and backtracking search for fair repeated
//! assignments of `n` items to `n` players over `n` days.
//!
//! A [`RepeatedAssignment`] holds one permutation per day. The
//! [`conditions`] module checks the balance families on it,
//! [`proportionality`] decides ordinal PROP-c for the cumulative bundles,
//! [`construct`] builds top-balanced and value-greedy sequences, [`search`]
//! looks for sequences meeting a condition, and [`bounds`] encodes the
//! closed-form impossibility results.

pub mod assignment;
pub mod bounds;
pub mod conditions;
pub mod construct;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod proportionality;
pub mod search;
pub mod store;

pub use assignment::{Bundle, RankCountIndex, RepeatedAssignment, Violation};
pub use conditions::{check, ConditionKind, Verdict};
pub use error::{Error, Result};
pub use proportionality::{is_ordinal_prop_c, PropCertificate, PropVerdict, Valuation};
pub use search::{search, SearchConfig, SearchOutcome, SearchStatus};
pub use store::ResultStore;
