//! Exact fusion rules, noncrossing partition counts and intertwiner ranks
//! for the free wreath products `H_N^{s+}` and related easy quantum groups.

pub mod dims;
pub mod error;
pub mod exec;
pub mod format;
pub mod fusion;
pub mod linalg;
pub mod mform;
pub mod partition;
pub mod tannaka;
pub mod verify;
pub mod word;

pub use dims::{d_seq, dimension_of_decomposition, dimension_of_word, DSequence, Dimensions, RootInt};
pub use error::{Error, Result};
pub use exec::Exec;
pub use fusion::{fuse_decompositions, fuse_irreducibles, Decomposition, FusionEngine, VirtualDecomposition};
pub use mform::{cross_check_formulations, m_fuse, to_mform, FormulationReport, MForm};
pub use partition::{count_nc_s, enumerate_nc, frobenius_rotate, LabeledTuple, Point, SetPartition};
pub use tannaka::{build_map, compose, hom_dim_oracle, span_rank, sparse_map, ShapeOracle};
pub use word::{Alphabet, FusionAlphabet, Letter, Modulus, Word};
