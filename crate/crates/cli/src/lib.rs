pub mod convert;
pub mod render;
pub mod run;
pub mod scenario;

pub use run::{mask_timings, run_text, ExitClass, Options, Outcome};
