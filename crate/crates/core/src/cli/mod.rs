//! Configuration ingestion, sweeps and CSV output behind the `kgo` binary.

pub mod config;
pub mod csv;
pub mod sweep;

pub use config::{format_config, load_config, parse_config};
pub use sweep::{run_sweep, Knob, SweepOptions, SweepRow, SweepSpec, SweepTable};
