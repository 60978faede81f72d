//! Built-in groups, text formats and the standard corpus.

pub mod builders;
pub mod catalog;
pub mod format;
