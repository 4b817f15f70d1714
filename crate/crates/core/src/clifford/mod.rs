//! Clifford gates, circuits, and their conjugation action on Pauli strings.
//!
//! Circuits list gates in the order they act on states: for
//! `[g_1, …, g_L]` the unitary is `U = g_L ⋯ g_1` and
//! [`Circuit::conjugate`] returns `U P U†`.
//!
//! Two engines implement the action. [`CliffordGate::apply`] walks one string
//! using fixed per-letter tables; [`PauliFrame`] conjugates many strings at once
//! with word-parallel bit updates. They are kept independent and are checked
//! against each other and against the dense oracle.

mod frame;
mod text;

use std::fmt;
use std::str::FromStr;

pub use frame::PauliFrame;
pub(crate) use text::{parse_circuit_lines, parse_index};

use crate::error::{Error, Result};
use crate::pauli::{PauliLetter, PauliString, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CliffordGate {
    H(usize),
    S(usize),
    Sdg(usize),
    X(usize),
    Y(usize),
    Z(usize),
    Cz(usize, usize),
    /// Control first, target second.
    Cx(usize, usize),
    Swap(usize, usize),
}

use PauliLetter::{I, X, Y, Z};
use Sign::{Minus as M, Plus as P};

// Letter order in the tables below: I, X, Y, Z.
const H_TABLE: [(PauliLetter, Sign); 4] = [(I, P), (Z, P), (Y, M), (X, P)];
const S_TABLE: [(PauliLetter, Sign); 4] = [(I, P), (Y, P), (X, M), (Z, P)];
const SDG_TABLE: [(PauliLetter, Sign); 4] = [(I, P), (Y, M), (X, P), (Z, P)];
const X_TABLE: [(PauliLetter, Sign); 4] = [(I, P), (X, P), (Y, M), (Z, M)];
const Y_TABLE: [(PauliLetter, Sign); 4] = [(I, P), (X, M), (Y, P), (Z, M)];
const Z_TABLE: [(PauliLetter, Sign); 4] = [(I, P), (X, M), (Y, M), (Z, P)];

/// `CZ (a ⊗ b) CZ`, row-major in `(a, b)`. Frozen from the dense oracle.
const CZ_TABLE: [[(PauliLetter, PauliLetter, Sign); 4]; 4] = [
    [(I, I, P), (Z, X, P), (Z, Y, P), (I, Z, P)],
    [(X, Z, P), (Y, Y, P), (Y, X, M), (X, I, P)],
    [(Y, Z, P), (X, Y, M), (X, X, P), (Y, I, P)],
    [(Z, I, P), (I, X, P), (I, Y, P), (Z, Z, P)],
];

/// `CX (a ⊗ b) CX` with `a` on the control. Frozen from the dense oracle.
const CX_TABLE: [[(PauliLetter, PauliLetter, Sign); 4]; 4] = [
    [(I, I, P), (I, X, P), (Z, Y, P), (Z, Z, P)],
    [(X, X, P), (X, I, P), (Y, Z, P), (Y, Y, M)],
    [(Y, X, P), (Y, I, P), (X, Z, M), (X, Y, P)],
    [(Z, I, P), (Z, X, P), (I, Y, P), (I, Z, P)],
];

fn letter_index(l: PauliLetter) -> usize {
    match l {
        I => 0,
        X => 1,
        Y => 2,
        Z => 3,
    }
}

impl CliffordGate {
    pub fn mnemonic(&self) -> &'static str {
        match self {
            CliffordGate::H(_) => "H",
            CliffordGate::S(_) => "S",
            CliffordGate::Sdg(_) => "SDG",
            CliffordGate::X(_) => "X",
            CliffordGate::Y(_) => "Y",
            CliffordGate::Z(_) => "Z",
            CliffordGate::Cz(..) => "CZ",
            CliffordGate::Cx(..) => "CX",
            CliffordGate::Swap(..) => "SWAP",
        }
    }

    pub fn targets(&self) -> Vec<usize> {
        match *self {
            CliffordGate::H(q)
            | CliffordGate::S(q)
            | CliffordGate::Sdg(q)
            | CliffordGate::X(q)
            | CliffordGate::Y(q)
            | CliffordGate::Z(q) => vec![q],
            CliffordGate::Cz(a, b) | CliffordGate::Cx(a, b) | CliffordGate::Swap(a, b) => vec![a, b],
        }
    }

    pub fn is_two_qubit(&self) -> bool {
        matches!(
            self,
            CliffordGate::Cz(..) | CliffordGate::Cx(..) | CliffordGate::Swap(..)
        )
    }

    /// Single-qubit Pauli gate for a non-identity letter.
    pub fn pauli(letter: PauliLetter, qubit: usize) -> Option<CliffordGate> {
        match letter {
            I => None,
            X => Some(CliffordGate::X(qubit)),
            Y => Some(CliffordGate::Y(qubit)),
            Z => Some(CliffordGate::Z(qubit)),
        }
    }

    /// Builds a gate from its mnemonic and 1-based targets (no range check).
    pub fn from_parts(mnemonic: &str, targets: &[usize]) -> Option<CliffordGate> {
        let gate = match (mnemonic, targets) {
            ("H", &[q]) => CliffordGate::H(q),
            ("S", &[q]) => CliffordGate::S(q),
            ("SDG", &[q]) => CliffordGate::Sdg(q),
            ("X", &[q]) => CliffordGate::X(q),
            ("Y", &[q]) => CliffordGate::Y(q),
            ("Z", &[q]) => CliffordGate::Z(q),
            ("CZ", &[a, b]) => CliffordGate::Cz(a, b),
            ("CX", &[a, b]) => CliffordGate::Cx(a, b),
            ("SWAP", &[a, b]) => CliffordGate::Swap(a, b),
            _ => return None,
        };
        Some(gate)
    }

    pub(crate) fn arity(mnemonic: &str) -> Option<usize> {
        match mnemonic {
            "H" | "S" | "SDG" | "X" | "Y" | "Z" => Some(1),
            "CZ" | "CX" | "SWAP" => Some(2),
            _ => None,
        }
    }

    pub fn inverse(&self) -> CliffordGate {
        match *self {
            CliffordGate::S(q) => CliffordGate::Sdg(q),
            CliffordGate::Sdg(q) => CliffordGate::S(q),
            g => g,
        }
    }

    /// Orders the targets of the symmetric gates (CZ, SWAP).
    pub fn normalized(&self) -> CliffordGate {
        match *self {
            CliffordGate::Cz(a, b) if a > b => CliffordGate::Cz(b, a),
            CliffordGate::Swap(a, b) if a > b => CliffordGate::Swap(b, a),
            g => g,
        }
    }

    /// Checks that all targets lie in `1..=num_qubits` and are distinct.
    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        let targets = self.targets();
        for &q in &targets {
            if q == 0 || q > num_qubits {
                return Err(Error::QubitOutOfRange { index: q, num_qubits });
            }
        }
        if targets.len() == 2 && targets[0] == targets[1] {
            return Err(Error::InvalidSize(format!("{self} acts twice on qubit {}", targets[0])));
        }
        Ok(())
    }

    /// In-place conjugation `p ↦ g p g†`.
    pub fn apply(&self, p: &mut PauliString) -> Result<()> {
        self.validate(p.num_qubits())?;
        let sign = {
            let letters = p.letters_mut();
            match *self {
                CliffordGate::H(q) => map_one(&mut letters[q - 1], &H_TABLE),
                CliffordGate::S(q) => map_one(&mut letters[q - 1], &S_TABLE),
                CliffordGate::Sdg(q) => map_one(&mut letters[q - 1], &SDG_TABLE),
                CliffordGate::X(q) => map_one(&mut letters[q - 1], &X_TABLE),
                CliffordGate::Y(q) => map_one(&mut letters[q - 1], &Y_TABLE),
                CliffordGate::Z(q) => map_one(&mut letters[q - 1], &Z_TABLE),
                CliffordGate::Cz(a, b) => map_two(letters, a, b, &CZ_TABLE),
                CliffordGate::Cx(a, b) => map_two(letters, a, b, &CX_TABLE),
                CliffordGate::Swap(a, b) => {
                    letters.swap(a - 1, b - 1);
                    Sign::Plus
                }
            }
        };
        if sign == Sign::Minus {
            let phase = p.phase_mut();
            *phase = -*phase;
        }
        Ok(())
    }

    pub fn conjugate(&self, p: &PauliString) -> Result<PauliString> {
        let mut out = p.clone();
        self.apply(&mut out)?;
        Ok(out)
    }
}

fn map_one(letter: &mut PauliLetter, table: &[(PauliLetter, Sign); 4]) -> Sign {
    let (l, s) = table[letter_index(*letter)];
    *letter = l;
    s
}

fn map_two(
    letters: &mut [PauliLetter],
    a: usize,
    b: usize,
    table: &[[(PauliLetter, PauliLetter, Sign); 4]; 4],
) -> Sign {
    let (la, lb, s) = table[letter_index(letters[a - 1])][letter_index(letters[b - 1])];
    letters[a - 1] = la;
    letters[b - 1] = lb;
    s
}

impl fmt::Display for CliffordGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.mnemonic())?;
        for q in self.targets() {
            write!(f, " {q}")?;
        }
        Ok(())
    }
}

/// An ordered gate sequence on a fixed number of qubits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<CliffordGate>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::InvalidSize("a circuit needs at least one qubit".into()));
        }
        Ok(Self {
            num_qubits,
            gates: Vec::new(),
        })
    }

    pub fn from_gates(num_qubits: usize, gates: impl IntoIterator<Item = CliffordGate>) -> Result<Self> {
        let mut c = Self::new(num_qubits)?;
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[CliffordGate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: CliffordGate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    /// Appends `other`, which acts after `self`.
    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        if other.num_qubits > self.num_qubits {
            return Err(Error::SizeMismatch {
                left: self.num_qubits,
                right: other.num_qubits,
            });
        }
        self.gates.extend_from_slice(&other.gates);
        Ok(())
    }

    pub fn count_cz(&self) -> usize {
        self.gates.iter().filter(|g| matches!(g, CliffordGate::Cz(..))).count()
    }

    pub fn count_two_qubit(&self) -> usize {
        self.gates.iter().filter(|g| g.is_two_qubit()).count()
    }

    fn check_operand(&self, p: &PauliString) -> Result<()> {
        if p.num_qubits() < self.num_qubits {
            return Err(Error::SizeMismatch {
                left: self.num_qubits,
                right: p.num_qubits(),
            });
        }
        Ok(())
    }

    /// `Ad_U(p) = U p U†` for `U = g_L ⋯ g_1`.
    pub fn conjugate(&self, p: &PauliString) -> Result<PauliString> {
        self.check_operand(p)?;
        let mut out = p.clone();
        for g in &self.gates {
            g.apply(&mut out)?;
        }
        Ok(out)
    }

    /// Reversed order with every gate inverted.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            num_qubits: self.num_qubits,
            gates: self.gates.iter().rev().map(CliffordGate::inverse).collect(),
        }
    }

    /// Removes adjacent mutually inverse pairs until none remain.
    pub fn peephole_cancel(&self) -> Circuit {
        let mut kept: Vec<CliffordGate> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            match kept.last() {
                Some(last) if last.inverse().normalized() == g.normalized() => {
                    kept.pop();
                }
                _ => kept.push(*g),
            }
        }
        Circuit {
            num_qubits: self.num_qubits,
            gates: kept,
        }
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QUBITS {}", self.num_qubits)?;
        for g in &self.gates {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

impl FromStr for Circuit {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        parse_circuit_lines(text, |_, _, _| Ok(false))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::pauli::Phase;
    use proptest::prelude::*;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn single_gate_examples() {
        assert_eq!(CliffordGate::Cz(1, 2).conjugate(&p("XI")).unwrap(), p("XZ"));
        assert_eq!(CliffordGate::Cz(1, 2).conjugate(&p("XX")).unwrap(), p("YY"));
        assert_eq!(CliffordGate::S(1).conjugate(&p("Y")).unwrap(), p("-X"));
        assert_eq!(CliffordGate::H(1).conjugate(&p("Z")).unwrap(), p("X"));
        assert!(matches!(
            CliffordGate::H(3).conjugate(&p("XX")),
            Err(Error::QubitOutOfRange {
                index: 3,
                num_qubits: 2
            })
        ));
        assert!(CliffordGate::Cz(1, 1).conjugate(&p("XX")).is_err());
    }

    #[test]
    fn cz_and_swap_are_symmetric() {
        for a in PauliLetter::ALL {
            for b in PauliLetter::ALL {
                let s = PauliString::from_letters(vec![a, b], Phase::ONE).unwrap();
                assert_eq!(
                    CliffordGate::Cz(1, 2).conjugate(&s).unwrap(),
                    CliffordGate::Cz(2, 1).conjugate(&s).unwrap()
                );
                assert_eq!(
                    CliffordGate::Swap(1, 2).conjugate(&s).unwrap(),
                    CliffordGate::Swap(2, 1).conjugate(&s).unwrap()
                );
            }
        }
    }

    #[test]
    fn circuit_examples() {
        let c = Circuit::from_gates(3, [CliffordGate::Cz(1, 2), CliffordGate::Cz(2, 3)]).unwrap();
        assert_eq!(c.conjugate(&p("XII")).unwrap(), p("XZI"));
        assert_eq!(c.conjugate(&p("ZZX")).unwrap(), p("ZIX"));
        let empty = Circuit::new(3).unwrap();
        assert_eq!(empty.conjugate(&p("-iXYZ")).unwrap(), p("-iXYZ"));
    }

    #[test]
    fn inverse_examples() {
        let c = Circuit::from_gates(1, [CliffordGate::S(1)]).unwrap();
        assert_eq!(c.inverse().gates(), &[CliffordGate::Sdg(1)]);
        let c = Circuit::from_gates(2, [CliffordGate::H(1), CliffordGate::Cz(1, 2)]).unwrap();
        assert_eq!(c.inverse().gates(), &[CliffordGate::Cz(1, 2), CliffordGate::H(1)]);
    }

    #[test]
    fn peephole_examples() {
        let c = Circuit::from_gates(1, [CliffordGate::H(1), CliffordGate::H(1)]).unwrap();
        assert!(c.peephole_cancel().is_empty());
        let c = Circuit::from_gates(2, [CliffordGate::S(1), CliffordGate::Sdg(1), CliffordGate::Cz(1, 2)]).unwrap();
        assert_eq!(c.peephole_cancel().gates(), &[CliffordGate::Cz(1, 2)]);
        let c = Circuit::from_gates(
            2,
            [
                CliffordGate::H(1),
                CliffordGate::Cz(1, 2),
                CliffordGate::Cz(2, 1),
                CliffordGate::H(1),
            ],
        )
        .unwrap();
        assert!(c.peephole_cancel().is_empty());
        // S S is not an inverse pair
        let c = Circuit::from_gates(1, [CliffordGate::S(1), CliffordGate::S(1)]).unwrap();
        assert_eq!(c.peephole_cancel().len(), 2);
        let c = Circuit::from_gates(2, [CliffordGate::Cx(1, 2), CliffordGate::Cx(2, 1)]).unwrap();
        assert_eq!(c.peephole_cancel().len(), 2);
    }

    pub(crate) fn arb_gate(m: usize) -> impl Strategy<Value = CliffordGate> {
        let one = (0usize..6, 1..=m).prop_map(|(k, q)| match k {
            0 => CliffordGate::H(q),
            1 => CliffordGate::S(q),
            2 => CliffordGate::Sdg(q),
            3 => CliffordGate::X(q),
            4 => CliffordGate::Y(q),
            _ => CliffordGate::Z(q),
        });
        if m == 1 {
            return one.boxed();
        }
        let two = (0usize..3, 1..=m, 1..m).prop_map(move |(k, a, off)| {
            let b = (a - 1 + off) % m + 1;
            match k {
                0 => CliffordGate::Cz(a, b),
                1 => CliffordGate::Cx(a, b),
                _ => CliffordGate::Swap(a, b),
            }
        });
        prop_oneof![one, two].boxed()
    }

    fn arb_case() -> impl Strategy<Value = (Circuit, PauliString, PauliString)> {
        (1usize..=6).prop_flat_map(|m| {
            let letters = || prop::collection::vec(prop::sample::select(PauliLetter::ALL.to_vec()), m);
            (
                prop::collection::vec(arb_gate(m), 0..50),
                letters(),
                0i64..4,
                letters(),
                0i64..4,
            )
                .prop_map(move |(gates, a, ka, b, kb)| {
                    (
                        Circuit::from_gates(m, gates).unwrap(),
                        PauliString::from_letters(a, Phase::new(ka)).unwrap(),
                        PauliString::from_letters(b, Phase::new(kb)).unwrap(),
                    )
                })
        })
    }

    proptest! {
        #[test]
        fn inverse_round_trip((c, a, _b) in arb_case()) {
            let image = c.conjugate(&a).unwrap();
            prop_assert_eq!(c.inverse().conjugate(&image).unwrap(), a);
        }

        #[test]
        fn preserves_hermiticity_and_commutation((c, a, b) in arb_case()) {
            let (ia, ib) = (c.conjugate(&a).unwrap(), c.conjugate(&b).unwrap());
            prop_assert_eq!(ia.is_hermitian(), a.is_hermitian());
            prop_assert_eq!(ia.commutes(&ib).unwrap(), a.commutes(&b).unwrap());
        }

        #[test]
        fn is_an_automorphism((c, a, b) in arb_case()) {
            prop_assert_eq!(c.conjugate(&(&a * &b)).unwrap(), &c.conjugate(&a).unwrap() * &c.conjugate(&b).unwrap());
        }

        #[test]
        fn peephole_preserves_action((c, a, _b) in arb_case()) {
            prop_assert_eq!(c.peephole_cancel().conjugate(&a).unwrap(), c.conjugate(&a).unwrap());
        }

        #[test]
        fn frame_matches_table_engine((c, a, b) in arb_case()) {
            let mut frame = PauliFrame::from_strings(c.num_qubits(), &[a.clone(), b.clone()]).unwrap();
            frame.apply_circuit(&c).unwrap();
            prop_assert_eq!(frame.row(0), c.conjugate(&a).unwrap());
            prop_assert_eq!(frame.row(1), c.conjugate(&b).unwrap());
        }
    }
}
