//! BLER campaigns, reports, oracle checks and the leaf census.

mod campaign;
mod census;
mod report;
mod verify;

pub use campaign::*;
pub use census::*;
pub use report::{emit_report, from_json, to_csv, to_json, to_plotscript, Curve, ReportFormat, CSV_HEADER};
pub use verify::*;
