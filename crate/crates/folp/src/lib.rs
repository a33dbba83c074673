//! File formats, a wall clock and the command-line driver for `folp-core`.

pub mod cli;
pub mod csfile;
pub mod modelfile;
pub mod prooffile;

use std::time::{Duration, Instant};

use folp_core::search::Clock;

pub use csfile::{parse_cs, CsFileError};
pub use modelfile::{model_to_json, parse_model, ModelFile, ModelFileError};
pub use prooffile::{parse_proof, proof_to_json, ProofFile, ProofFileError};

/// Wall-clock time since construction.
pub struct StdClock(Instant);

impl StdClock {
    pub fn start() -> Self {
        StdClock(Instant::now())
    }
}

impl Clock for StdClock {
    fn elapsed(&self) -> Duration {
        self.0.elapsed()
    }
}
