//! Lex-least binary de Bruijn sequences (Ford sequences), their breakpoint
//! decomposition, and the Fibonacci-like counts of skew and length at the
//! breakpoints.

pub mod cli;
pub mod compositions;
pub mod error;
pub mod ford;
pub mod oracle;
pub mod parallel;
pub mod recurrences;
pub mod series;
pub mod tables;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use ford::{FordDecomposition, FordSequence, Limits};
pub use parallel::Execution;
pub use series::TruncatedSeries;
pub use words::BinaryWord;
