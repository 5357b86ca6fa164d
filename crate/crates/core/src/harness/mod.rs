//! Instance generation, instance files, batch runs and reports.

pub mod gen;
pub mod io;
pub mod report;
pub mod run;

pub use gen::{blum, generate, tarhio, Draw, Family, GenSpec, Generated, Span};
pub use io::{format_instance, load_instance, parse_instance, save_instance};
pub use report::{
    read_report, write_json, CheckSummary, Falsification, InstanceReport, RatioRow, Report, Source, Summary,
    SweepReport, Timings, SCHEMA_VERSION,
};
pub use run::{ratio_ceiling, sweep_batch, verify_batch};
