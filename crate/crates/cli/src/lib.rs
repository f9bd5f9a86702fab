//! Library surface of the batch CLI: command implementations, the
//! report envelope, and the verification battery, shared between the
//! binary and the acceptance suite.

pub mod battery;
pub mod commands;
pub mod report;
