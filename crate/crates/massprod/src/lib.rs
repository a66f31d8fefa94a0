//! File formats, instance generation and the job runner for `massprod-core`.

pub mod error;
pub mod formats;
pub mod instance;
pub mod job;

pub use error::{JobError, JobResult};
pub use instance::{generate_instance, Instance, InstanceKind};
pub use job::{
    count_sweep, run_job, verify_circuit, Command, Format, JobOutcome, JobSpec, NSpec, SweepRow,
};
