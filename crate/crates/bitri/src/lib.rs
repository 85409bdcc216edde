//! Command line, file formats and the threaded search driver on top of
//! [`bitri_core`].

pub mod cli;
pub mod expr;
pub mod format;
pub mod search;

pub use expr::{parse_cosine, CosineExpr, ExprError};
pub use search::parallel_search;
