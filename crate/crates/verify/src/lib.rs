//! Session language, suite generators and reports for the `mfk` tool.

pub mod exec;
pub mod report;
pub mod session;
pub mod suites;
