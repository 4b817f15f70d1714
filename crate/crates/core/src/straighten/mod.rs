//! Reduction of any ternary tree to the Jordan-Wigner chain by Clifford gates.
//!
//! Two moves suffice. A single-qubit relabel permutes the `x`, `y`, `z`
//! subtrees of one node (H exchanges `x`/`z`, S exchanges `x`/`y`). A fork
//! move `CZ(q1, q2)` takes the `x` child `q2` of `q1`, whose `x` and `y` slots
//! are terminals, and re-hangs it on `q1`'s `y` slot:
//!
//! ```text
//!   q1.x = q2, q2.z = T1, q1.y = T2     ──CZ(q1,q2)──▶     q1.x = T1, q1.y = q2, q2.z = T2
//! ```
//!
//! Repeating fork moves drains the `x` branch (then the `z` branch, after an H)
//! into the `y` branch, and a final S, H turns that branch into `q1`'s `z`
//! chain. Forks are resolved deepest first, so each one only ever sees chains
//! below it.

mod certificate;
#[cfg(test)]
mod end_to_end;
mod result;

use std::collections::BTreeSet;

pub use certificate::Certificate;
pub use result::{
    derive_correspondence, fix_signs, jw_generator, jw_rank_of, map_between, Correspondence, Mapping, Mismatch,
    StraightenResult,
};

use crate::clifford::{Circuit, CliffordGate, PauliFrame};
use crate::error::{Error, Result};
use crate::tree::{Label, LabelPerm, Slot, TernaryTree};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StraightenOptions {
    /// Emit SWAP gates so the chain ends up in ascending qubit order.
    pub materialize_swaps: bool,
    /// After every gate, check that the conjugated generators are exactly the
    /// current tree's generators up to sign. Quadratic cost; for tests.
    pub check_steps: bool,
}

/// Gates realizing a label permutation on one qubit. Any sign picked up by a
/// generator is tracked separately.
pub fn relabel_gates(q: usize, perm: LabelPerm) -> Vec<CliffordGate> {
    use Label::{X, Y, Z};
    match perm.images() {
        [X, Y, Z] => vec![],
        [Z, Y, X] => vec![CliffordGate::H(q)],
        [Y, X, Z] => vec![CliffordGate::S(q)],
        [X, Z, Y] => vec![CliffordGate::H(q), CliffordGate::S(q), CliffordGate::H(q)],
        // x→y, y→z, z→x as (x y) then (x z)
        [Y, Z, X] => vec![CliffordGate::S(q), CliffordGate::H(q)],
        // x→z, z→y, y→x as (x z) then (x y)
        [Z, X, Y] => vec![CliffordGate::H(q), CliffordGate::S(q)],
        _ => unreachable!("LabelPerm is always a permutation"),
    }
}

/// Moves the subtree on `from` to `z`, letting the other slots follow the
/// cheapest relabel.
fn onto_z(from: Label) -> LabelPerm {
    use Label::{X, Y, Z};
    match from {
        X => LabelPerm::swap(X, Z),
        Y => LabelPerm::from_images([Y, Z, X]).expect("valid cycle"),
        Z => LabelPerm::IDENTITY,
    }
}

/// Mutable straightening state: the working tree, the gates so far and an
/// optional step checker.
struct Straightener {
    tree: TernaryTree,
    gates: Vec<CliffordGate>,
    checker: Option<PauliFrame>,
}

impl Straightener {
    fn new(tree: &TernaryTree, check_steps: bool) -> Self {
        let checker = check_steps
            .then(|| PauliFrame::from_strings(tree.num_qubits(), &tree.generator_strings()).expect("sizes agree"));
        Self {
            tree: tree.clone(),
            gates: Vec::new(),
            checker,
        }
    }

    fn emit(&mut self, gate: CliffordGate) {
        if let Some(frame) = &mut self.checker {
            frame.apply(&gate).expect("gate targets lie inside the tree");
        }
        self.gates.push(gate);
    }

    /// Conjugated originals must equal the current tree's generators, up to
    /// sign and order, and still satisfy the anticommutation relations.
    fn check(&self, context: &str) {
        let Some(frame) = &self.checker else { return };
        let mut images: Vec<_> = frame.rows().collect();
        for s in &images {
            assert!(s.is_hermitian(), "{context}: image {s} is not Hermitian");
        }
        let set = crate::tree::GeneratorSet::from_strings(self.tree.num_qubits(), images.clone()).expect("sizes");
        let report = set.check();
        assert!(
            report.anticommuting() && report.unit_squares(),
            "{context}: transformed set violates anticommutation"
        );
        let key = |s: &crate::pauli::PauliString| s.letters().to_vec();
        images.sort_by_key(key);
        let mut current = self.tree.generator_strings();
        current.sort_by_key(key);
        let same = images.iter().zip(&current).all(|(a, b)| a.same_letters(b));
        assert!(
            same && images.len() == current.len(),
            "{context}: conjugated generators differ from the tree's"
        );
    }

    fn require(&self, q: usize) -> Result<()> {
        if !self.tree.contains(q) {
            return Err(Error::QubitOutOfRange {
                index: q,
                num_qubits: self.tree.num_qubits(),
            });
        }
        Ok(())
    }

    fn relabel(&mut self, q: usize, perm: LabelPerm) -> Result<()> {
        self.require(q)?;
        for g in relabel_gates(q, perm) {
            self.emit(g);
        }
        self.tree.permute_children(q, perm);
        self.check("relabel");
        Ok(())
    }

    fn fork_move(&mut self, q1: usize) -> Result<CliffordGate> {
        self.require(q1)?;
        let structure = |qubit, message: String| Error::Structure { qubit, message };
        let q2 = self
            .tree
            .child(q1, Label::X)
            .qubit()
            .ok_or_else(|| structure(q1, format!("x slot of q{q1} is a terminal, expected a qubit node")))?;
        for l in [Label::X, Label::Y] {
            if let Slot::Qubit(c) = self.tree.child(q2, l) {
                return Err(structure(
                    q2,
                    format!("{l} slot of q{q2} holds q{c}, expected a terminal"),
                ));
            }
        }
        let t1 = self.tree.child(q2, Label::Z);
        let t2 = self.tree.child(q1, Label::Y);
        self.tree.set_child(q1, Label::X, t1);
        self.tree.set_child(q2, Label::Z, t2);
        self.tree.set_child(q1, Label::Y, Slot::Qubit(q2));
        let gate = CliffordGate::Cz(q1, q2);
        self.emit(gate);
        self.check("fork move");
        Ok(gate)
    }

    fn is_chain_below(&self, start: Slot) -> bool {
        let mut slot = start;
        while let Slot::Qubit(q) = slot {
            let mut kids = self.tree.qubit_children(q);
            match (kids.next(), kids.next()) {
                (None, _) => return true,
                (Some((_, c)), None) => slot = Slot::Qubit(c),
                _ => return false,
            }
        }
        true
    }

    fn straighten_fork(&mut self, q1: usize) -> Result<()> {
        self.require(q1)?;
        for l in Label::ALL {
            if !self.is_chain_below(self.tree.child(q1, l)) {
                return Err(Error::Structure {
                    qubit: q1,
                    message: format!("the {l} branch of q{q1} contains a fork"),
                });
            }
        }
        let occupied = |t: &TernaryTree, l| !t.child(q1, l).is_terminal();
        if !occupied(&self.tree, Label::X) && !occupied(&self.tree, Label::Y) {
            return Ok(());
        }
        while occupied(&self.tree, Label::X) || occupied(&self.tree, Label::Z) {
            if !occupied(&self.tree, Label::X) {
                self.relabel(q1, LabelPerm::swap(Label::X, Label::Z))?;
            }
            let q2 = self.tree.child(q1, Label::X).qubit().expect("x slot occupied");
            let below = self.tree.qubit_children(q2).next().map(|(l, _)| l);
            if let Some(l) = below {
                self.relabel(q2, onto_z(l))?;
            }
            self.fork_move(q1)?;
        }
        self.relabel(q1, onto_z(Label::Y))
    }

    /// Nearest proper ancestor of `q` that is a fork.
    fn fork_ancestor(&self, q: usize) -> Option<usize> {
        let mut cur = self.tree.parent(q);
        while let Some((p, _)) = cur {
            if self.tree.is_fork(p) {
                return Some(p);
            }
            cur = self.tree.parent(p);
        }
        None
    }

    fn straighten_all(&mut self) {
        let m = self.tree.num_qubits();
        let forks: Vec<usize> = (1..=m).filter(|&q| self.tree.is_fork(q)).collect();
        let mut pending = vec![0usize; m + 1];
        for &f in &forks {
            if let Some(a) = self.fork_ancestor(f) {
                pending[a] += 1;
            }
        }
        let mut ready: BTreeSet<usize> = forks.iter().copied().filter(|&f| pending[f] == 0).collect();
        while let Some(q) = ready.pop_first() {
            self.straighten_fork(q).expect("ready forks have only chains below");
            if let Some(a) = self.fork_ancestor(q) {
                pending[a] -= 1;
                if pending[a] == 0 {
                    ready.insert(a);
                }
            }
        }
        let order = self.tree.chain_order().expect("no forks remain");
        for &q in &order {
            let below = self.tree.qubit_children(q).next().map(|(l, _)| l);
            if let Some(l) = below {
                if l != Label::Z {
                    self.relabel(q, onto_z(l)).expect("qubit exists");
                }
            }
        }
        debug_assert!(self.tree.is_z_chain());
    }

    fn circuit(&self) -> Circuit {
        Circuit::from_gates(self.tree.num_qubits(), self.gates.iter().copied()).expect("gates are in range")
    }
}

/// Applies one relabel at `q`; returns its gates and the relabelled tree.
pub fn relabel(tree: &TernaryTree, q: usize, perm: LabelPerm) -> Result<(Circuit, TernaryTree)> {
    let mut s = Straightener::new(tree, false);
    s.relabel(q, perm)?;
    Ok((s.circuit(), s.tree))
}

/// One `CZ(q1, q2)` fork move.
pub fn fork_move(tree: &TernaryTree, q1: usize) -> Result<(CliffordGate, TernaryTree)> {
    let mut s = Straightener::new(tree, false);
    let gate = s.fork_move(q1)?;
    Ok((gate, s.tree))
}

/// Collapses the branches below `q1` into a single `z` chain. Every branch
/// below `q1` must already be a chain.
pub fn straighten_fork(tree: &TernaryTree, q1: usize) -> Result<(Circuit, TernaryTree)> {
    let mut s = Straightener::new(tree, false);
    s.straighten_fork(q1)?;
    Ok((s.circuit(), s.tree))
}

pub fn straighten(tree: &TernaryTree) -> StraightenResult {
    straighten_with(tree, StraightenOptions::default())
}

pub fn straighten_with(tree: &TernaryTree, options: StraightenOptions) -> StraightenResult {
    let mut s = Straightener::new(tree, options.check_steps);
    s.straighten_all();
    let mut permutation = s.tree.chain_order().expect("straightened tree is a chain");
    if options.materialize_swaps {
        for g in result::swap_network(&permutation, &(1..=permutation.len()).collect::<Vec<_>>()) {
            s.emit(g);
        }
        permutation = (1..=permutation.len()).collect();
    }
    let circuit = s.circuit();
    let c = derive_correspondence(tree, &circuit, &permutation)
        .unwrap_or_else(|e| panic!("straightening produced an invalid mapping: {e}"));
    StraightenResult {
        circuit,
        permutation,
        signs: c.signs,
        leaf_of_rank: c.leaf_of_rank,
        signfix: None,
    }
}
