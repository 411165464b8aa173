//! Batch front-end for the `qwalk` ensembles: config files, figure presets,
//! and CSV output.

pub mod config;
pub mod error;
pub mod format;
pub mod presets;
pub mod runner;
pub mod sequence_io;

pub use config::{PositionSpec, RunConfig, ScheduleKind, ScheduleSpec};
pub use error::{CliError, Result};
pub use format::fmt_g17;
pub use presets::{find, presets, Job, Preset};
pub use runner::{run_eta_scan, run_preset, run_pscan, run_replay, run_series};
pub use sequence_io::{export_sequence, import_sequence, sequence_from_text, sequence_to_text};
