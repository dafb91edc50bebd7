//! Sentence-level modality annotation for scientific prose.
//!
//! The pipeline runs preprocessing, unigram POS tagging, person detection,
//! modal disambiguation and attitude grouping, then renders an annotated
//! text, JSON records and a distribution report. [`pipeline::run_pipeline`]
//! ties the stages together; each stage is usable on its own.

pub mod attitude;
pub mod error;
pub mod interactive;
pub mod lexica;
pub mod modality;
pub mod persons;
pub mod pipeline;
pub mod postag;
pub mod preprocess;
pub mod report;
pub mod tag;

pub use error::{Error, Result, Stage, StageError};
pub use lexica::Lexica;
pub use modality::Label;
pub use pipeline::{process_document, run_pipeline, DocumentOptions, RunConfig, RunOutput};
pub use tag::Tag;
