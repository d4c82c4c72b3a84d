//! Batch front end for qrank-core: JSON task files in, JSON or text reports out.

pub mod codec;
pub mod render;
pub mod task;

pub use task::{run_command, run_document, run_task, Command, Status, Task, ENGINE_VERSION};
