use crate::error::{Error, Result};
use crate::pauli::{PauliString, Phase};

use super::LeafPath;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    /// Leaf the generator came from; `None` for sets given as raw strings.
    pub path: Option<LeafPath>,
    pub pauli: PauliString,
}

/// An ordered list of Majorana generator candidates on `m` qubits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    num_qubits: usize,
    entries: Vec<Generator>,
}

impl GeneratorSet {
    pub(crate) fn from_entries(num_qubits: usize, entries: Vec<Generator>) -> Self {
        Self { num_qubits, entries }
    }

    pub fn from_strings(num_qubits: usize, strings: impl IntoIterator<Item = PauliString>) -> Result<Self> {
        let entries = strings
            .into_iter()
            .map(|pauli| {
                if pauli.num_qubits() != num_qubits {
                    return Err(Error::SizeMismatch {
                        left: num_qubits,
                        right: pauli.num_qubits(),
                    });
                }
                Ok(Generator { path: None, pauli })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { num_qubits, entries })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Generator] {
        &self.entries
    }

    /// Generator `e_rank`, 1-based.
    pub fn get(&self, rank: usize) -> Option<&PauliString> {
        rank.checked_sub(1).and_then(|i| self.entries.get(i)).map(|g| &g.pauli)
    }

    pub fn strings(&self) -> impl Iterator<Item = &PauliString> {
        self.entries.iter().map(|g| &g.pauli)
    }

    /// Checks pairwise anticommutation, unit squares, and whether the ordered
    /// product of all entries is a phase times the identity.
    pub fn check(&self) -> ValidationReport {
        let strings: Vec<&PauliString> = self.strings().collect();
        let mut commuting_pairs = Vec::new();
        for (i, a) in strings.iter().enumerate() {
            for (j, b) in strings.iter().enumerate().skip(i + 1) {
                if a.commutes(b).expect("sizes checked on construction") {
                    commuting_pairs.push((i + 1, j + 1));
                }
            }
        }
        let bad_squares = strings
            .iter()
            .enumerate()
            .filter(|(_, s)| {
                let sq = **s * **s;
                !(sq.is_identity_up_to_phase() && sq.phase() == Phase::ONE)
            })
            .map(|(i, _)| i + 1)
            .collect();
        let identity = PauliString::identity(self.num_qubits.max(1)).expect("non-zero size");
        let total_product = strings.iter().fold(identity, |acc, s| &acc * s);
        ValidationReport {
            commuting_pairs,
            bad_squares,
            total_product,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    /// 1-based rank pairs `(j, k)`, `j < k`, that commute.
    pub commuting_pairs: Vec<(usize, usize)>,
    /// Ranks whose square is not `+1`.
    pub bad_squares: Vec<usize>,
    /// `e_1 · e_2 ⋯ e_n` in list order.
    pub total_product: PauliString,
}

impl ValidationReport {
    pub fn anticommuting(&self) -> bool {
        self.commuting_pairs.is_empty()
    }

    pub fn unit_squares(&self) -> bool {
        self.bad_squares.is_empty()
    }

    /// The total product is proportional to the identity.
    pub fn complete(&self) -> bool {
        self.total_product.is_identity_up_to_phase()
    }

    pub fn total_phase(&self) -> Option<Phase> {
        self.complete().then(|| self.total_product.phase())
    }

    pub fn is_valid(&self) -> bool {
        self.anticommuting() && self.unit_squares() && self.complete()
    }
}
