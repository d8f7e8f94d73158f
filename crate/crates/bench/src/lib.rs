//! Shared fixtures for the kernel benchmarks.

use qcprelift::{corpus, ParityCheck, QcLiftSpec};

/// A corpus spec that is known to build.
pub fn spec(name: &str) -> QcLiftSpec {
    corpus::build(name).expect("corpus entry")
}

pub fn matrix(name: &str) -> ParityCheck {
    spec(name).expand().expect("expansion")
}

/// Channel LLRs of the all-zero word at a fixed noise level.
pub fn noisy_llrs(n: usize, sigma2: f64, frame: u64) -> Vec<f64> {
    let zero = vec![0u8; n];
    qcprelift::sim::channel_llrs(&zero, sigma2, &mut qcprelift::sim::frame_rng(1, 0, frame))
}
