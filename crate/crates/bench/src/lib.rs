//! Shared inputs for the criterion benchmarks.

use hampath_core::MultipartiteSpec;

/// Admissible specs of increasing order used by the pipeline benchmarks.
pub const PIPELINE_SPECS: [&str; 5] = ["1^4,2,3", "2,3^4", "1^14", "3^5,4,6", "1^24"];

pub fn spec(text: &str) -> MultipartiteSpec {
    text.parse().expect("benchmark specs are well formed")
}
