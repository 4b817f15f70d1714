//! Dense-matrix ground truth over Gaussian integers.
//!
//! Everything here is exact. The Hadamard gate is kept unnormalized as
//! `[[1, 1], [1, -1]]`, so a circuit matrix is `U = c·V` with `V` unitary and
//! `c² = 2^h`. Conjugation is decided by the scale-free identity
//! `U·M(P) = M(P')·U`, which never divides by `c`.
//!
//! The matrix entry type is generic over any exact signed integer
//! ([`ExactInteger`]); `i64`, `i128` and `num_bigint::BigInt` all work. Qubit 1
//! is the leftmost Kronecker factor, i.e. the most significant index bit.

use std::fmt;

use num_complex::Complex;
use num_integer::Integer;
use num_traits::{FromPrimitive, Num, One, Signed, Zero};

use crate::clifford::{Circuit, CliffordGate};
use crate::error::{Error, Result};
use crate::pauli::{PauliLetter, PauliString, Phase, Sign};
use crate::straighten::{jw_rank_of, StraightenResult};
use crate::tree::TernaryTree;

/// Exact signed integers usable as matrix entries.
pub trait ExactInteger: Clone + PartialEq + fmt::Debug + Num + Signed + Integer + FromPrimitive {}

impl<T> ExactInteger for T where T: Clone + PartialEq + fmt::Debug + Num + Signed + Integer + FromPrimitive {}

/// A Gaussian integer `a + b·i`.
pub type Gaussian<T> = Complex<T>;

pub const DEFAULT_ORACLE_CAP: usize = 8;

/// Square matrix of Gaussian integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussianMatrix<T> {
    dim: usize,
    entries: Vec<Gaussian<T>>,
}

impl<T: ExactInteger> GaussianMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Gaussian::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = Gaussian::one();
        }
        m
    }

    /// Builds a matrix from rows of `(re, im)` pairs.
    pub fn from_rows(rows: &[&[(i64, i64)]]) -> Self {
        let dim = rows.len();
        let mut m = Self::zeros(dim);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim, "matrix must be square");
            for (c, &(re, im)) in row.iter().enumerate() {
                m.entries[r * dim + c] = Gaussian::new(int(re), int(im));
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> &Gaussian<T> {
        &self.entries[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Gaussian<T>) {
        self.entries[r * self.dim + c] = v;
    }

    fn row_nonzeros(&self, r: usize) -> impl Iterator<Item = (usize, &Gaussian<T>)> {
        self.entries[r * self.dim..(r + 1) * self.dim]
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
    }

    /// Matrix product, skipping zero entries on both sides.
    pub fn mul(&self, rhs: &GaussianMatrix<T>) -> GaussianMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let rhs_rows: Vec<Vec<(usize, &Gaussian<T>)>> = (0..n).map(|k| rhs.row_nonzeros(k).collect()).collect();
        let mut out = Self::zeros(n);
        for i in 0..n {
            for (k, a) in self.row_nonzeros(i) {
                for &(j, b) in &rhs_rows[k] {
                    let slot = &mut out.entries[i * n + j];
                    *slot = slot.clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Gaussian<T>]) -> Vec<Gaussian<T>> {
        (0..self.dim)
            .map(|i| {
                self.row_nonzeros(i)
                    .filter(|(k, _)| !v[*k].is_zero())
                    .fold(Gaussian::zero(), |acc, (k, a)| acc + a.clone() * v[k].clone())
            })
            .collect()
    }

    pub fn kron(&self, rhs: &GaussianMatrix<T>) -> GaussianMatrix<T> {
        let n = self.dim * rhs.dim;
        let mut out = Self::zeros(n);
        for r1 in 0..self.dim {
            for c1 in 0..self.dim {
                let a = self.get(r1, c1);
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..rhs.dim {
                    for c2 in 0..rhs.dim {
                        out.set(
                            r1 * rhs.dim + r2,
                            c1 * rhs.dim + c2,
                            a.clone() * rhs.get(r2, c2).clone(),
                        );
                    }
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> GaussianMatrix<T> {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn scale(&self, s: &Gaussian<T>) -> GaussianMatrix<T> {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|v| v.clone() * s.clone()).collect(),
        }
    }

    /// Divides by 2 while every component is even. Keeps entries small
    /// without changing the scale-free conjugation identity.
    pub fn reduce_powers_of_two(&mut self) {
        let two = int::<T>(2);
        while !self.entries.iter().all(Zero::is_zero) && self.entries.iter().all(|v| v.re.is_even() && v.im.is_even()) {
            for v in &mut self.entries {
                *v = Gaussian::new(v.re.clone() / two.clone(), v.im.clone() / two.clone());
            }
        }
    }
}

fn int<T: ExactInteger>(v: i64) -> T {
    T::from_i64(v).expect("small constants fit every entry type")
}

fn unit<T: ExactInteger>(phase: Phase) -> Gaussian<T> {
    match phase.exponent() {
        0 => Gaussian::new(T::one(), T::zero()),
        1 => Gaussian::new(T::zero(), T::one()),
        2 => Gaussian::new(-T::one(), T::zero()),
        _ => Gaussian::new(T::zero(), -T::one()),
    }
}

fn letter_matrix<T: ExactInteger>(l: PauliLetter) -> GaussianMatrix<T> {
    match l {
        PauliLetter::I => GaussianMatrix::from_rows(&[&[(1, 0), (0, 0)], &[(0, 0), (1, 0)]]),
        PauliLetter::X => GaussianMatrix::from_rows(&[&[(0, 0), (1, 0)], &[(1, 0), (0, 0)]]),
        PauliLetter::Y => GaussianMatrix::from_rows(&[&[(0, 0), (0, -1)], &[(0, 1), (0, 0)]]),
        PauliLetter::Z => GaussianMatrix::from_rows(&[&[(1, 0), (0, 0)], &[(0, 0), (-1, 0)]]),
    }
}

/// The gate's own 2×2 or 4×4 matrix; for two-qubit gates the first target is
/// the more significant bit.
fn local_gate_matrix<T: ExactInteger>(g: &CliffordGate) -> GaussianMatrix<T> {
    let o = (0, 0);
    let one = (1, 0);
    match g {
        CliffordGate::H(_) => GaussianMatrix::from_rows(&[&[one, one], &[one, (-1, 0)]]),
        CliffordGate::S(_) => GaussianMatrix::from_rows(&[&[one, o], &[o, (0, 1)]]),
        CliffordGate::Sdg(_) => GaussianMatrix::from_rows(&[&[one, o], &[o, (0, -1)]]),
        CliffordGate::X(_) => letter_matrix(PauliLetter::X),
        CliffordGate::Y(_) => letter_matrix(PauliLetter::Y),
        CliffordGate::Z(_) => letter_matrix(PauliLetter::Z),
        CliffordGate::Cz(..) => {
            GaussianMatrix::from_rows(&[&[one, o, o, o], &[o, one, o, o], &[o, o, one, o], &[o, o, o, (-1, 0)]])
        }
        CliffordGate::Cx(..) => {
            GaussianMatrix::from_rows(&[&[one, o, o, o], &[o, one, o, o], &[o, o, o, one], &[o, o, one, o]])
        }
        CliffordGate::Swap(..) => {
            GaussianMatrix::from_rows(&[&[one, o, o, o], &[o, o, one, o], &[o, one, o, o], &[o, o, o, one]])
        }
    }
}

/// Exact verifier with a qubit cap on matrix sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle<T> {
    cap: usize,
    _entries: std::marker::PhantomData<T>,
}

impl<T: ExactInteger> Default for Oracle<T> {
    fn default() -> Self {
        Self::with_cap(DEFAULT_ORACLE_CAP)
    }
}

impl<T: ExactInteger> Oracle<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_cap(cap: usize) -> Self {
        Self {
            cap,
            _entries: std::marker::PhantomData,
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn check_cap(&self, num_qubits: usize) -> Result<()> {
        if num_qubits > self.cap {
            return Err(Error::OracleCap {
                num_qubits,
                cap: self.cap,
            });
        }
        Ok(())
    }

    /// Kronecker product of the letters, qubit 1 leftmost, times `i^phase`.
    pub fn dense_pauli(&self, p: &PauliString) -> Result<GaussianMatrix<T>> {
        self.check_cap(p.num_qubits())?;
        let m = p
            .letters()
            .iter()
            .fold(GaussianMatrix::identity(1), |acc: GaussianMatrix<T>, &l| {
                acc.kron(&letter_matrix(l))
            });
        Ok(m.scale(&unit(p.phase())))
    }

    /// The gate embedded in an `m`-qubit register, identity elsewhere.
    pub fn dense_gate(&self, g: &CliffordGate, num_qubits: usize) -> Result<GaussianMatrix<T>> {
        self.check_cap(num_qubits)?;
        g.validate(num_qubits)?;
        let local = local_gate_matrix::<T>(g);
        let bits: Vec<usize> = g.targets().iter().map(|&q| num_qubits - q).collect();
        let n = 1usize << num_qubits;
        let target_mask: usize = bits.iter().map(|b| 1 << b).sum();
        let local_index = |i: usize| bits.iter().fold(0, |acc, &b| (acc << 1) | (i >> b & 1));
        let mut out = GaussianMatrix::zeros(n);
        for r in 0..n {
            for c in 0..n {
                if r & !target_mask == c & !target_mask {
                    let v = local.get(local_index(r), local_index(c));
                    if !v.is_zero() {
                        out.set(r, c, v.clone());
                    }
                }
            }
        }
        Ok(out)
    }

    /// `U = g_L ⋯ g_1`, up to a positive power of two.
    pub fn unitary(&self, circuit: &Circuit, num_qubits: usize) -> Result<GaussianMatrix<T>> {
        self.check_cap(num_qubits)?;
        if circuit.num_qubits() > num_qubits {
            return Err(Error::SizeMismatch {
                left: circuit.num_qubits(),
                right: num_qubits,
            });
        }
        let mut u = GaussianMatrix::identity(1 << num_qubits);
        for g in circuit.gates() {
            u = self.dense_gate(g, num_qubits)?.mul(&u);
            u.reduce_powers_of_two();
        }
        Ok(u)
    }

    /// `Ad_U(p)` decided by dense matrices.
    pub fn conjugate(&self, circuit: &Circuit, p: &PauliString) -> Result<PauliString> {
        let u = self.unitary(circuit, p.num_qubits())?;
        self.conjugate_by(&u, p)
    }

    /// Solves `U·M(p) = M(p')·U` for the Pauli string `p'`.
    pub fn conjugate_by(&self, u: &GaussianMatrix<T>, p: &PauliString) -> Result<PauliString> {
        let m = p.num_qubits();
        let n = 1usize << m;
        if u.dim() != n {
            return Err(Error::SizeMismatch {
                left: u.dim().trailing_zeros() as usize,
                right: m,
            });
        }
        let mp = self.dense_pauli(p)?;
        // c² = (U U†)_00
        let scale = (0..n).fold(T::zero(), |acc, k| acc + u.get(0, k).norm_sqr());
        // Column `col` of N = U M(p) U† = c² M(p').
        let column = |col: usize| -> Vec<Gaussian<T>> {
            let udag_col: Vec<Gaussian<T>> = (0..n).map(|k| u.get(col, k).conj()).collect();
            u.mul_vec(&mp.mul_vec(&udag_col))
        };
        let inconsistent = |why: String| Error::OracleInconsistent(format!("{p}: {why}"));

        let col0 = column(0);
        let mut nz = col0.iter().enumerate().filter(|(_, v)| !v.is_zero());
        let (flip, v0) = nz.next().ok_or_else(|| inconsistent("zero image".into()))?;
        if nz.next().is_some() {
            return Err(inconsistent("image column 0 is not monomial".into()));
        }
        let v0 = v0.clone();
        let mut letters = Vec::with_capacity(m);
        for q in 1..=m {
            let bit = 1usize << (m - q);
            let x = flip & bit != 0;
            let vq = column(bit)[bit ^ flip].clone();
            let z = if vq == v0 {
                false
            } else if vq == -v0.clone() {
                true
            } else {
                return Err(inconsistent(format!("qubit {q} is not a Pauli factor")));
            };
            letters.push(PauliLetter::from_bits(x, z));
        }
        let unit_phase = [Phase::ONE, Phase::I, Phase::MINUS_ONE, Phase::MINUS_I]
            .into_iter()
            .find(|&ph| unit::<T>(ph).scale(scale.clone()) == v0)
            .ok_or_else(|| inconsistent("leading entry is not a unit multiple of the scale".into()))?;
        let ys = letters.iter().filter(|&&l| l == PauliLetter::Y).count() as i64;
        let candidate = PauliString::from_letters(letters, unit_phase * Phase::new(-ys))?;

        let lhs = u.mul(&mp);
        let rhs = self.dense_pauli(&candidate)?.mul(u);
        if lhs != rhs {
            return Err(inconsistent(format!("U·M(P) ≠ M({candidate})·U")));
        }
        Ok(candidate)
    }

    /// Re-derives every generator image of `tree` under `result.circuit` with
    /// dense matrices and compares it with the recorded sign times the
    /// Jordan-Wigner generator reached through the permutation.
    pub fn check(&self, tree: &TernaryTree, result: &StraightenResult) -> Result<OracleReport> {
        let m = tree.num_qubits();
        self.check_cap(m)?;
        let u = self.unitary(&result.circuit, m)?;
        let generators = tree.generators();
        let ranks = generators
            .strings()
            .enumerate()
            .map(|(i, g)| {
                let image = self.conjugate_by(&u, g)?;
                let renamed = result.rename_to_chain(&image);
                let status = match jw_rank_of(&renamed) {
                    Some((rank, sign)) if result.leaf_for_rank(rank) == Some(i + 1) => {
                        if sign == result.signs[rank - 1] {
                            RankStatus::Pass { jw_rank: rank }
                        } else {
                            RankStatus::SignMismatch {
                                jw_rank: rank,
                                found: sign,
                            }
                        }
                    }
                    Some((rank, _)) => RankStatus::WrongRank { jw_rank: rank },
                    None => RankStatus::NotJordanWigner(renamed),
                };
                Ok(status)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(OracleReport { ranks })
    }
}

/// Per-rank outcome of [`Oracle::check`], indexed by the original leaf rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RankStatus {
    Pass { jw_rank: usize },
    SignMismatch { jw_rank: usize, found: Sign },
    WrongRank { jw_rank: usize },
    NotJordanWigner(PauliString),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub ranks: Vec<RankStatus>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.ranks.iter().all(|r| matches!(r, RankStatus::Pass { .. }))
    }

    /// 1-based leaf ranks that failed.
    pub fn failures(&self) -> Vec<usize> {
        self.ranks
            .iter()
            .enumerate()
            .filter(|(_, r)| !matches!(r, RankStatus::Pass { .. }))
            .map(|(i, _)| i + 1)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::PauliFrame;
    use crate::straighten::straighten;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type O = Oracle<i128>;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    fn circuit(m: usize, gates: &[CliffordGate]) -> Circuit {
        Circuit::from_gates(m, gates.iter().copied()).unwrap()
    }

    fn all_strings(m: usize) -> Vec<PauliString> {
        let mut out = Vec::new();
        for code in 0..4usize.pow(m as u32) {
            let letters = (0..m)
                .map(|q| PauliLetter::ALL[code >> (2 * (m - 1 - q)) & 3])
                .collect::<Vec<_>>();
            for k in 0..4 {
                out.push(PauliString::from_letters(letters.clone(), Phase::new(k)).unwrap());
            }
        }
        out
    }

    fn all_gates(m: usize) -> Vec<CliffordGate> {
        let mut gates = Vec::new();
        for q in 1..=m {
            gates.extend([
                CliffordGate::H(q),
                CliffordGate::S(q),
                CliffordGate::Sdg(q),
                CliffordGate::X(q),
                CliffordGate::Y(q),
                CliffordGate::Z(q),
            ]);
            for r in 1..=m {
                if q != r {
                    gates.extend([CliffordGate::Cz(q, r), CliffordGate::Cx(q, r), CliffordGate::Swap(q, r)]);
                }
            }
        }
        gates
    }

    #[test]
    fn dense_pauli_examples() {
        let o = O::new();
        assert_eq!(
            o.dense_pauli(&p("Z")).unwrap(),
            GaussianMatrix::from_rows(&[&[(1, 0), (0, 0)], &[(0, 0), (-1, 0)]])
        );
        assert_eq!(
            o.dense_pauli(&p("+iY")).unwrap(),
            GaussianMatrix::from_rows(&[&[(0, 0), (1, 0)], &[(-1, 0), (0, 0)]])
        );
        let xi = o.dense_pauli(&p("XI")).unwrap();
        let x = o.dense_pauli(&p("X")).unwrap();
        assert_eq!(xi, x.kron(&GaussianMatrix::identity(2)));
        assert_eq!(xi.get(0, 2), &Gaussian::new(1, 0));
    }

    #[test]
    fn dense_gate_examples() {
        let o = O::new();
        let s = o.dense_gate(&CliffordGate::S(1), 1).unwrap();
        assert_eq!(s, GaussianMatrix::from_rows(&[&[(1, 0), (0, 0)], &[(0, 0), (0, 1)]]));
        let h = o.dense_gate(&CliffordGate::H(1), 1).unwrap();
        assert_eq!(h, GaussianMatrix::from_rows(&[&[(1, 0), (1, 0)], &[(1, 0), (-1, 0)]]));
        let cz = o.dense_gate(&CliffordGate::Cz(1, 2), 2).unwrap();
        let mut diag = GaussianMatrix::identity(4);
        diag.set(3, 3, Gaussian::new(-1, 0));
        assert_eq!(cz, diag);
        assert_eq!(o.dense_gate(&CliffordGate::Cz(2, 1), 2).unwrap(), diag);
        // CX(2,1): control is the low bit
        let cx = o.dense_gate(&CliffordGate::Cx(2, 1), 2).unwrap();
        assert_eq!(cx.get(1, 3), &Gaussian::new(1, 0));
        assert_eq!(cx.get(3, 1), &Gaussian::new(1, 0));
        assert!(o.dense_gate(&CliffordGate::H(2), 1).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let o = O::with_cap(2);
        assert_eq!(o.cap(), 2);
        assert!(matches!(
            o.dense_pauli(&p("XXX")),
            Err(Error::OracleCap { num_qubits: 3, cap: 2 })
        ));
        assert_eq!(O::new().cap(), DEFAULT_ORACLE_CAP);
    }

    #[test]
    fn conjugate_examples() {
        let o = O::new();
        assert_eq!(
            o.conjugate(&circuit(2, &[CliffordGate::Cz(1, 2)]), &p("XX")).unwrap(),
            p("YY")
        );
        assert_eq!(
            o.conjugate(&circuit(1, &[CliffordGate::S(1)]), &p("Y")).unwrap(),
            p("-X")
        );
        assert_eq!(
            o.conjugate(&circuit(1, &[CliffordGate::H(1)]), &p("Y")).unwrap(),
            p("-Y")
        );
        assert_eq!(o.conjugate(&circuit(2, &[]), &p("-iZX")).unwrap(), p("-iZX"));
        let cz2 = circuit(3, &[CliffordGate::Cz(1, 2), CliffordGate::Cz(2, 3)]);
        assert_eq!(o.conjugate(&cz2, &p("XII")).unwrap(), p("XZI"));
        assert_eq!(o.conjugate(&cz2, &p("ZZX")).unwrap(), p("ZIX"));
    }

    #[test]
    fn non_clifford_input_is_inconsistent() {
        let o = O::new();
        // (H + S)-like sum is not a Clifford unitary
        let u = GaussianMatrix::from_rows(&[&[(2, 0), (1, 0)], &[(1, 0), (-1, 1)]]);
        assert!(matches!(o.conjugate_by(&u, &p("Z")), Err(Error::OracleInconsistent(_))));
    }

    #[test]
    fn exhaustive_agreement_on_two_qubits() {
        let o = O::new();
        for g in all_gates(2) {
            let c = circuit(2, &[g]);
            let u = o.unitary(&c, 2).unwrap();
            for s in all_strings(2) {
                assert_eq!(
                    o.conjugate_by(&u, &s).unwrap(),
                    g.conjugate(&s).unwrap(),
                    "{g:?} on {s}"
                );
            }
        }
    }

    #[test]
    fn multiplicative_on_three_qubits() {
        let o = O::new();
        let strings = all_strings(2);
        for a in strings.iter().step_by(3) {
            for b in strings.iter().step_by(5) {
                let lhs = o.dense_pauli(a).unwrap().mul(&o.dense_pauli(b).unwrap());
                assert_eq!(lhs, o.dense_pauli(&(a * b)).unwrap());
            }
        }
    }

    #[test]
    fn other_entry_types() {
        let c = circuit(
            2,
            &[
                CliffordGate::H(1),
                CliffordGate::Cz(1, 2),
                CliffordGate::S(2),
                CliffordGate::H(2),
            ],
        );
        let s = p("XY");
        let want = c.conjugate(&s).unwrap();
        assert_eq!(Oracle::<i64>::new().conjugate(&c, &s).unwrap(), want);
        assert_eq!(Oracle::<BigInt>::new().conjugate(&c, &s).unwrap(), want);
    }

    #[test]
    fn check_passes_on_straightened_trees() {
        let o = O::new();
        let jw = TernaryTree::jw_chain(3).unwrap();
        assert!(o.check(&jw, &straighten(&jw)).unwrap().passed());
        let tree: TernaryTree = "(q1 :x (q2 :z (q3)) :y (q4))".parse().unwrap();
        let report = o.check(&tree, &straighten(&tree)).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.ranks.len(), 9);
    }

    #[test]
    fn removing_a_hadamard_is_detected() {
        let o = O::new();
        let tree: TernaryTree = "(q1 :x (q2 :z (q3)) :y (q4 :z (q5)))".parse().unwrap();
        let mut r = straighten(&tree);
        let at = r
            .circuit
            .gates()
            .iter()
            .position(|g| matches!(g, CliffordGate::H(_)))
            .expect("uses an H");
        let gates: Vec<_> = r
            .circuit
            .gates()
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != at)
            .map(|(_, g)| *g)
            .collect();
        r.circuit = Circuit::from_gates(5, gates).unwrap();
        let report = o.check(&tree, &r).unwrap();
        assert!(!report.passed());
        assert!(!report.failures().is_empty());
    }

    #[test]
    fn sign_tampering_is_detected() {
        let o = O::new();
        let tree: TernaryTree = "(q1 :x (q2) :y (q3))".parse().unwrap();
        let mut r = straighten(&tree);
        r.signs[0] = -r.signs[0];
        let report = o.check(&tree, &r).unwrap();
        let leaf = r.leaf_of_rank[0];
        assert!(matches!(
            report.ranks[leaf - 1],
            RankStatus::SignMismatch { jw_rank: 1, .. }
        ));
        assert_eq!(report.failures(), vec![leaf]);
    }

    fn arb_circuit(max_m: usize, max_len: usize) -> impl Strategy<Value = Circuit> {
        (1..=max_m).prop_flat_map(move |m| {
            prop::collection::vec(crate::clifford::tests::arb_gate(m), 0..=max_len)
                .prop_map(move |gates| Circuit::from_gates(m, gates).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn random_circuits_agree_with_engine(c in arb_circuit(5, 30), code in any::<u64>(), k in 0i64..4) {
            let m = c.num_qubits();
            let letters = (0..m).map(|q| PauliLetter::ALL[(code >> (2 * q)) as usize & 3]).collect();
            let s = PauliString::from_letters(letters, Phase::new(k)).unwrap();
            let want = c.conjugate(&s).unwrap();
            prop_assert_eq!(O::new().conjugate(&c, &s).unwrap(), want.clone());
            let mut frame = PauliFrame::from_strings(m, &[s]).unwrap();
            frame.apply_circuit(&c).unwrap();
            prop_assert_eq!(frame.row(0), want);
        }
    }
}
