//! Seeded Monte Carlo experiments on word measures of unitary groups, with
//! JSON reports and the `wordmeasure` command-line front end.

pub mod cli;
pub mod error;
pub mod experiments;
pub mod parallel;
pub mod report;
pub mod stats;
pub mod verify;

pub use cli::{run_cli, Command, Settings};
pub use error::{LabError, Result};
pub use experiments::{Lab, Metric};
pub use report::{Estimate, Report};
