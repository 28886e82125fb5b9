//! Corpus ingestion, batch sweeps and JSON reports on top of `qtwist-core`.

pub mod corpus;
pub mod report;
pub mod sweep;

pub use corpus::{ingest_corpus, parse_corpus, CorpusError, CurveRecord};
pub use report::VerificationReport;
pub use sweep::{run_sweep, Mode, SweepConfig};
