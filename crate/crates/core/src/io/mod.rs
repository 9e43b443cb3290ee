//! Text formats and report rendering.

mod format;
mod manifest;
mod report;

pub use format::{parse_generator, print_generator};
pub use manifest::{load_generator, load_problem, read_file, ObservationMode, ProblemFiles};
pub use report::{
    closed_loop_report, synthesis_report, verdicts_report, witness_json, witness_text, GeneratorJson, ReportFormat,
    VerdictJson,
};
