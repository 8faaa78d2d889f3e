//! Skeleton extraction and structural classification of higher-order Markov
//! chains on a finite alphabet.
//!
//! An m-th order chain is given by its transition kernel `p(x, a)`, stored
//! here as a suffix context tree of support vectors. The crate extracts the
//! skeleton of the kernel (the minimal suffixes that fix which symbols may
//! follow), builds the boolean skeleton matrix on `A^K`, and classifies the
//! chain from it: recurrent classes, their periods, essential
//! irreducibility and irreducibility. A brute-force classifier on the
//! first-order lift to `A^m` serves as an independent oracle.
//!
//! ```
//! use mcskel_core::{classify, parse_kernel};
//!
//! let kernel = parse_kernel(r#"{
//!     "alphabet": ["0", "1"],
//!     "order": 10,
//!     "contexts": [
//!         {"suffix": "10", "support": [1, 0]},
//!         {"suffix": "111", "support": [1, 0]}
//!     ]
//! }"#).unwrap();
//! let c = classify(&kernel).unwrap();
//! assert_eq!(c.skeleton_order(), 3);
//! assert_eq!(c.class_count(), 1);
//! assert!(!c.irreducibility.irreducible);
//! ```

pub mod binmat;
pub mod classify;
pub mod cost;
pub mod dot;
pub mod error;
pub mod format;
pub mod kernel;
pub mod oracle;
pub mod report;
pub mod skeleton;
pub mod skeleton_matrix;
pub mod word;

pub use binmat::{
    class_period, closed_classes, decompose, strongly_connected_components, BinaryMatrix,
    ClassDecomposition, Components, Digraph, OpCount, ShiftGraph,
};
pub use classify::{
    classify, classify_with, is_essentially_irreducible, is_irreducible, AdmissibleSet,
    Classification, ClassifyOptions, EssentialMethod, Irreducibility, IrreducibleReason,
    RecurrentClass,
};
pub use error::{Error, Result};
pub use format::{parse_kernel, parse_kernel_with, to_document, LoadOptions};
pub use kernel::{random_kernel, Context, Support, SupportKernel};
pub use oracle::{classify_brute_force, lift, prop4_check, BruteForceClassification, LiftedChain};
pub use report::Report;
pub use skeleton::{skeleton_direct, skeleton_pruned, tau, KernelTree, PruneOptions, Skeleton, SkeletonWord};
pub use skeleton_matrix::{build_skeleton_matrix, SkeletonMatrix};
pub use word::{Alphabet, StateSpace, Symbol, Word};
