//! File formats, command-line front end and acceptance battery for
//! `fanval-core`.

pub mod cli;
pub mod json;
pub mod random;
pub mod suite;
