//! Scenario files, built-in suites and verification reports for the
//! `maskswap` command.

pub mod generate;
pub mod report;
pub mod run;
pub mod schema;

pub use generate::{enumerate_scenarios, suite, Bounds, Family, DEFAULT_SUITE_SEED, SUITES};
pub use report::{ErratumStatus, Verdict, VerificationReport, REPORT_FORMAT};
pub use run::{run_suite, RunOptions};
pub use schema::{load_scenarios, parse_scenario, PredictorKind, ScenarioFile, SchemaError, SCENARIO_FORMAT};
