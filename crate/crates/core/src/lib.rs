//! Positive unital circuits (PUnCs): tractable probabilistic models whose
//! units operate on positive semi-definite matrices through unital quantum
//! operations.

pub mod assignment;
pub mod circuit;
pub mod cli;
pub mod d_punc;
pub mod error;
pub mod families;
pub mod format;
pub mod generate;
pub mod linalg;
pub mod oracle;
pub mod partition;
pub mod quantum;
pub mod random;
pub mod report;
pub mod sd_punc;

pub use error::{Error, Result};
