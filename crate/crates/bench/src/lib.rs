//! Fixture kernels for the criterion benchmarks.

use mcskel_core::{parse_kernel, random_kernel, SupportKernel};

/// Binary kernel of the given order whose only prohibitions are symbol 1
/// after the suffixes `10` and `111`.
pub fn two_prohibitions(order: usize) -> SupportKernel {
    let doc = format!(
        r#"{{"alphabet": ["0", "1"], "order": {order},
            "contexts": [{{"suffix": "10", "support": [1, 0]}},
                         {{"suffix": "111", "support": [1, 0]}}]}}"#
    );
    parse_kernel(&doc).expect("fixture kernel is valid")
}

pub fn random_binary(order: usize, seed: u64) -> SupportKernel {
    random_kernel(2, order, 0.3, seed).expect("fixture parameters are valid")
}
