//! Harness around `bca-core`: built-in group catalog, verification
//! suites with machine-readable reports, and a one-stop analyzer.

pub mod analyze;
pub mod catalog;
pub mod report;
pub mod suites;
