//! Verification campaigns, report formats and parallel engines behind the
//! `tausum` command-line tool.

pub mod commands;
pub mod config;
pub mod engine;
pub mod render;
pub mod report;
