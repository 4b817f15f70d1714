//! Ternary qubit trees, their Majorana generator sets, and exact Clifford
//! circuits that turn any tree encoding into the Jordan-Wigner chain.

pub mod clifford;
pub mod error;
pub mod oracle;
pub mod pauli;
pub mod straighten;
pub mod tree;

pub use clifford::{Circuit, CliffordGate, PauliFrame};
pub use error::{Error, Location, Result};
pub use oracle::{GaussianMatrix, Oracle, OracleReport, RankStatus};
pub use pauli::{PauliLetter, PauliString, Phase, Sign};
pub use straighten::{
    fix_signs, map_between, straighten, straighten_with, Certificate, Mapping, StraightenOptions, StraightenResult,
};
pub use tree::{GeneratorSet, Label, LabelPerm, Slot, TernaryTree};

/// Dense matrices over Gaussian integers with `i128` components.
pub type ExactMatrix = GaussianMatrix<i128>;
/// The dense-matrix verifier with `i128` entries.
pub type ExactOracle = Oracle<i128>;
