//! File formats, the golden corpus, and the command implementations behind
//! the `qmod` binary. Everything here is deterministic for a fixed
//! (inputs, seed, prime) triple.

pub mod commands;
pub mod corpus;
pub mod formats;
pub mod reconstruct;

pub use formats::{QuiverFile, ReportFile};
