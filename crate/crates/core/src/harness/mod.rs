//! Verification harness behind the `sumsets` binary: report rows, per-row
//! checks, the result cache and the `scan` / `verify` drivers.

pub mod cache;
pub mod cell;
pub mod checks;
pub mod report;
pub mod verify;

pub use cache::Cache;
pub use cell::{formula_row, CellRunner, Classification, OracleConfig, OracleValue, ParamResult};
pub use checks::{row_checks, CheckKind, CheckOutcome, Verdict};
pub use report::{Format, ReportWriter, Summary, CSV_COLUMNS, SCHEMA_VERSION};
pub use verify::{
    digit_minimizer_checks, parse_group_pattern, parse_range, run_scan, run_verify, DigitSuite,
    ScanParams, VerifyId, VerifyParams,
};
