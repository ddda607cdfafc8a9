//! File formats, HTTP scorer backends, configuration and the command line for
//! [`cefrsimp_core`].

pub mod backends;
pub mod cli;
pub mod config;
pub mod exec;
pub mod fixture;
pub mod http;
pub mod io;
pub mod report;

pub use cefrsimp_core as core;
