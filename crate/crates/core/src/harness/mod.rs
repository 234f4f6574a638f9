//! Instance files, random generators, experiment runs and validation.

mod experiment;
mod format;
mod generate;
mod validate;

pub use experiment::{
    emit_traces, experiment_opt, run_experiment, ExperimentConfig, ExperimentSummary, OutputFormat,
    ResultRecord, CSV_HEADER,
};
pub use format::{
    load_instance, load_spec, save_spec, ConstraintSpec, GraphSpec, InstanceSpec, LaminarSpec,
    Metadata, SystemSpec, ValuationSpec,
};
pub use generate::{generate_instance, GeneratorParams, SystemKind, ValuationKind};
pub use validate::{validate_file, validate_spec, Check, ValidationReport};
