use crate::clifford::{Circuit, CliffordGate, PauliFrame};
use crate::error::{Error, Result};
use crate::pauli::{PauliLetter, PauliString, Phase, Sign};
use crate::tree::TernaryTree;

use super::straighten;

/// Output of [`straighten`](super::straighten).
///
/// `permutation[i - 1]` is the original qubit sitting at chain position `i`.
/// `signs` and `leaf_of_rank` are indexed by Jordan-Wigner rank: the image of
/// tree generator `leaf_of_rank[r - 1]`, renamed into chain positions, is
/// `signs[r - 1]` times JW generator `e_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StraightenResult {
    pub circuit: Circuit,
    pub permutation: Vec<usize>,
    pub signs: Vec<Sign>,
    pub leaf_of_rank: Vec<usize>,
    /// Pauli gates appended by [`fix_signs`]; they are also part of `circuit`.
    pub signfix: Option<Vec<CliffordGate>>,
}

impl StraightenResult {
    pub fn num_qubits(&self) -> usize {
        self.permutation.len()
    }

    /// Reads `p` in chain coordinates: position `i` takes the letter on
    /// physical qubit `permutation[i - 1]`.
    pub fn rename_to_chain(&self, p: &PauliString) -> PauliString {
        rename(&self.permutation, p)
    }

    /// The original leaf rank matched to JW rank `rank`.
    pub fn leaf_for_rank(&self, rank: usize) -> Option<usize> {
        rank.checked_sub(1).and_then(|i| self.leaf_of_rank.get(i)).copied()
    }

    pub fn negative_ranks(&self) -> Vec<usize> {
        self.signs
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_plus())
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Recomputes the correspondence with the symbolic engine and compares it
    /// with the recorded one.
    pub fn verify(&self, tree: &TernaryTree) -> Result<(), Mismatch> {
        let derived = derive_correspondence(tree, &self.circuit, &self.permutation)?;
        for (i, (&want, &got)) in derived.signs.iter().zip(&self.signs).enumerate() {
            if want != got {
                let leaf = derived.leaf_of_rank[i];
                return Err(Mismatch::new(
                    leaf,
                    format!(
                        "JW rank {} has sign {}, recorded {}",
                        i + 1,
                        want.as_char(),
                        got.as_char()
                    ),
                ));
            }
        }
        if derived.signs.len() != self.signs.len() {
            return Err(Mismatch::new(
                0,
                format!("{} signs recorded, expected {}", self.signs.len(), derived.signs.len()),
            ));
        }
        Ok(())
    }
}

fn rename(permutation: &[usize], p: &PauliString) -> PauliString {
    let letters = permutation.iter().map(|&q| p.letter(q)).collect();
    PauliString::from_letters(letters, p.phase()).expect("permutation is non-empty")
}

/// Failure to match a transformed generator with its expected target.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{}", if *.leaf == 0 { .reason.clone() } else { format!("generator {}: {}", .leaf, .reason) })]
pub struct Mismatch {
    /// 1-based original leaf rank; 0 when the mismatch is not about one leaf.
    pub leaf: usize,
    pub reason: String,
}

impl Mismatch {
    fn new(leaf: usize, reason: impl Into<String>) -> Self {
        Self {
            leaf,
            reason: reason.into(),
        }
    }
}

/// Jordan-Wigner generator `e_rank` on `m` qubits, `1 ≤ rank ≤ 2m + 1`:
/// `Z…Z X I…I` for odd ranks, `Z…Z Y I…I` for even ranks, `Z…Z` last.
pub fn jw_generator(num_qubits: usize, rank: usize) -> Result<PauliString> {
    if num_qubits == 0 || rank == 0 || rank > 2 * num_qubits + 1 {
        return Err(Error::InvalidSize(format!(
            "no JW generator of rank {rank} on {num_qubits} qubits"
        )));
    }
    let mut letters = vec![PauliLetter::I; num_qubits];
    let k = (rank - 1) / 2;
    for l in letters.iter_mut().take(k.min(num_qubits)) {
        *l = PauliLetter::Z;
    }
    if k < num_qubits {
        letters[k] = if rank % 2 == 1 { PauliLetter::X } else { PauliLetter::Y };
    }
    PauliString::from_letters(letters, Phase::ONE)
}

/// Inverse of [`jw_generator`] up to sign; `None` for anything that is not
/// `±e_r`.
pub fn jw_rank_of(p: &PauliString) -> Option<(usize, Sign)> {
    let sign = Sign::from_phase(p.phase())?;
    let letters = p.letters();
    let k = letters.iter().take_while(|&&l| l == PauliLetter::Z).count();
    if k == letters.len() {
        return Some((2 * k + 1, sign));
    }
    let rank = match letters[k] {
        PauliLetter::X => 2 * k + 1,
        PauliLetter::Y => 2 * k + 2,
        _ => return None,
    };
    letters[k + 1..]
        .iter()
        .all(|&l| l == PauliLetter::I)
        .then_some((rank, sign))
}

/// How the tree's generators land on the JW generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Correspondence {
    /// By JW rank.
    pub signs: Vec<Sign>,
    /// By JW rank: the original leaf rank mapped there.
    pub leaf_of_rank: Vec<usize>,
}

/// Conjugates every generator of `tree` through `circuit`, renames by
/// `permutation` and matches the result against the JW generators.
pub fn derive_correspondence(
    tree: &TernaryTree,
    circuit: &Circuit,
    permutation: &[usize],
) -> Result<Correspondence, Mismatch> {
    let m = tree.num_qubits();
    if circuit.num_qubits() > m {
        return Err(Mismatch::new(
            0,
            format!("circuit acts on {} qubits, tree has {m}", circuit.num_qubits()),
        ));
    }
    check_permutation(permutation, m).map_err(|e| Mismatch::new(0, e.to_string()))?;
    let mut frame = PauliFrame::from_strings(m, &tree.generator_strings()).expect("sizes agree");
    frame
        .apply_circuit(circuit)
        .map_err(|e| Mismatch::new(0, e.to_string()))?;
    let n = 2 * m + 1;
    let mut signs = vec![Sign::Plus; n];
    let mut leaf_of_rank = vec![0usize; n];
    for (i, image) in frame.rows().enumerate() {
        let leaf = i + 1;
        let renamed = rename(permutation, &image);
        let (rank, sign) = jw_rank_of(&renamed)
            .ok_or_else(|| Mismatch::new(leaf, format!("image {renamed} is not a JW generator up to sign")))?;
        if leaf_of_rank[rank - 1] != 0 {
            let other = leaf_of_rank[rank - 1];
            return Err(Mismatch::new(
                leaf,
                format!("image coincides with that of generator {other} at JW rank {rank}"),
            ));
        }
        signs[rank - 1] = sign;
        leaf_of_rank[rank - 1] = leaf;
    }
    Ok(Correspondence { signs, leaf_of_rank })
}

pub(crate) fn check_permutation(permutation: &[usize], m: usize) -> Result<()> {
    if permutation.len() != m {
        return Err(Error::SizeMismatch {
            left: m,
            right: permutation.len(),
        });
    }
    let mut seen = vec![false; m + 1];
    for &q in permutation {
        if q == 0 || q > m || std::mem::replace(&mut seen[q], true) {
            return Err(Error::InvalidSize(format!(
                "{permutation:?} is not a permutation of 1..{m}"
            )));
        }
    }
    Ok(())
}

/// SWAP gates moving the qubit at `from[i]` to `to[i]` for every position `i`.
pub(crate) fn swap_network(from: &[usize], to: &[usize]) -> Vec<CliffordGate> {
    let m = from.len();
    let mut at = from.to_vec();
    let mut holder = vec![0usize; m + 1];
    for (i, &q) in from.iter().enumerate() {
        holder[q] = i;
    }
    let mut gates = Vec::new();
    for i in 0..m {
        let (here, there) = (at[i], to[i]);
        if here == there {
            continue;
        }
        let j = holder[there];
        gates.push(CliffordGate::Swap(here.min(there), here.max(there)));
        at.swap(i, j);
        holder[here] = j;
        holder[there] = i;
    }
    gates
}

/// Appends Pauli gates so that JW ranks `1..=2m` all carry `+`.
pub fn fix_signs(tree: &TernaryTree, result: &StraightenResult) -> StraightenResult {
    let m = result.num_qubits();
    let flipped: Vec<usize> = (1..=2 * m).filter(|&r| !result.signs[r - 1].is_plus()).collect();
    if flipped.is_empty() {
        return StraightenResult {
            signfix: Some(Vec::new()),
            ..result.clone()
        };
    }
    let ranks: Vec<usize> = if flipped.len().is_multiple_of(2) {
        flipped
    } else {
        (1..=2 * m).filter(|r| !flipped.contains(r)).collect()
    };
    let identity = PauliString::identity(m).expect("m ≥ 1");
    let correction = ranks
        .iter()
        .fold(identity, |acc, &r| &acc * &jw_generator(m, r).expect("rank in range"));
    let gates: Vec<CliffordGate> = correction
        .letters()
        .iter()
        .enumerate()
        .filter_map(|(i, &l)| CliffordGate::pauli(l, result.permutation[i]))
        .collect();
    let mut circuit = result.circuit.clone();
    for g in &gates {
        circuit.push(*g).expect("permutation targets are in range");
    }
    let c = derive_correspondence(tree, &circuit, &result.permutation)
        .unwrap_or_else(|e| panic!("Pauli layer broke the mapping: {e}"));
    debug_assert!(c.signs[..2 * m].iter().all(|s| s.is_plus()));
    StraightenResult {
        circuit,
        permutation: result.permutation.clone(),
        signs: c.signs,
        leaf_of_rank: c.leaf_of_rank,
        signfix: Some(gates),
    }
}

/// A circuit taking tree `a`'s generators to tree `b`'s, up to sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mapping {
    pub circuit: Circuit,
    /// `(a_leaf, b_leaf, sign)`: generator `a_leaf` of `a` maps to `sign`
    /// times generator `b_leaf` of `b`. Sorted by `a_leaf`.
    pub correspondence: Vec<(usize, usize, Sign)>,
}

impl Mapping {
    pub fn verify(&self, a: &TernaryTree, b: &TernaryTree) -> Result<(), Mismatch> {
        let ga = a.generator_strings();
        let gb = b.generator_strings();
        let mut frame = PauliFrame::from_strings(a.num_qubits(), &ga).map_err(|e| Mismatch::new(0, e.to_string()))?;
        frame
            .apply_circuit(&self.circuit)
            .map_err(|e| Mismatch::new(0, e.to_string()))?;
        if self.correspondence.len() != ga.len() || gb.len() != ga.len() {
            return Err(Mismatch::new(0, "generator counts differ"));
        }
        for &(la, lb, sign) in &self.correspondence {
            let image = frame.row(la - 1);
            let want = gb[lb - 1].clone().with_phase(Phase::from(sign));
            if image != want {
                return Err(Mismatch::new(la, format!("maps to {image}, expected {want}")));
            }
        }
        Ok(())
    }
}

/// Straightens both trees and composes `C_a`, a SWAP layer reconciling the
/// two chain orders, and `C_b⁻¹`.
pub fn map_between(a: &TernaryTree, b: &TernaryTree) -> Result<Mapping> {
    let m = a.num_qubits();
    if b.num_qubits() != m {
        return Err(Error::SizeMismatch {
            left: m,
            right: b.num_qubits(),
        });
    }
    let ra = straighten(a);
    let rb = straighten(b);
    let mut circuit = ra.circuit.clone();
    for g in swap_network(&ra.permutation, &rb.permutation) {
        circuit.push(g)?;
    }
    circuit.append(&rb.circuit.inverse())?;
    let mut correspondence: Vec<(usize, usize, Sign)> = (0..2 * m + 1)
        .map(|r| (ra.leaf_of_rank[r], rb.leaf_of_rank[r], ra.signs[r] * rb.signs[r]))
        .collect();
    correspondence.sort_unstable_by_key(|&(a, b, _)| (a, b));
    Ok(Mapping {
        circuit,
        correspondence,
    })
}
