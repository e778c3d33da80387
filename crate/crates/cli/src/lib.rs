pub mod commands;
pub mod config;
pub mod errors;
pub mod manifest;
pub mod plot;
pub mod report;
pub mod snapshot;
