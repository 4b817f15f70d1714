use crate::error::{Error, Result};
use crate::pauli::{PauliLetter, PauliString, Phase};

use super::{Circuit, CliffordGate};

/// A batch of Pauli strings stored column-wise, one bit plane per qubit.
///
/// Each gate touches only the columns of its targets, so conjugating all rows
/// costs `O(rows / 64)` word operations per gate. Phases are `i^k` with
/// `k = lo + 2·hi`; every Clifford letter map is `±letter`, so gates only ever
/// toggle `hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PauliFrame {
    num_qubits: usize,
    rows: usize,
    words: usize,
    xs: Vec<u64>,
    zs: Vec<u64>,
    phase_lo: Vec<u64>,
    phase_hi: Vec<u64>,
}

impl PauliFrame {
    pub fn new(num_qubits: usize, rows: usize) -> Self {
        let words = rows.div_ceil(64).max(1);
        Self {
            num_qubits,
            rows,
            words,
            xs: vec![0; num_qubits * words],
            zs: vec![0; num_qubits * words],
            phase_lo: vec![0; words],
            phase_hi: vec![0; words],
        }
    }

    pub fn from_strings(num_qubits: usize, strings: &[PauliString]) -> Result<Self> {
        let mut frame = Self::new(num_qubits, strings.len());
        for (r, s) in strings.iter().enumerate() {
            if s.num_qubits() != num_qubits {
                return Err(Error::SizeMismatch {
                    left: num_qubits,
                    right: s.num_qubits(),
                });
            }
            for (q, &l) in s.letters().iter().enumerate() {
                frame.set_letter(r, q + 1, l);
            }
            frame.set_phase(r, s.phase());
        }
        Ok(frame)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn num_rows(&self) -> usize {
        self.rows
    }

    fn bit(words: &[u64], r: usize) -> bool {
        words[r / 64] >> (r % 64) & 1 == 1
    }

    fn put(words: &mut [u64], r: usize, v: bool) {
        let mask = 1u64 << (r % 64);
        if v {
            words[r / 64] |= mask;
        } else {
            words[r / 64] &= !mask;
        }
    }

    fn col(&self, q: usize) -> std::ops::Range<usize> {
        (q - 1) * self.words..q * self.words
    }

    /// Sets the letter of row `r` (0-based) on qubit `q` (1-based).
    pub fn set_letter(&mut self, r: usize, q: usize, letter: PauliLetter) {
        let range = self.col(q);
        Self::put(&mut self.xs[range.clone()], r, letter.x_bit());
        Self::put(&mut self.zs[range], r, letter.z_bit());
    }

    pub fn set_phase(&mut self, r: usize, phase: Phase) {
        let k = phase.exponent();
        Self::put(&mut self.phase_lo, r, k & 1 == 1);
        Self::put(&mut self.phase_hi, r, k & 2 == 2);
    }

    pub fn letter(&self, r: usize, q: usize) -> PauliLetter {
        let range = self.col(q);
        PauliLetter::from_bits(Self::bit(&self.xs[range.clone()], r), Self::bit(&self.zs[range], r))
    }

    pub fn phase(&self, r: usize) -> Phase {
        let k = Self::bit(&self.phase_lo, r) as i64 + 2 * Self::bit(&self.phase_hi, r) as i64;
        Phase::new(k)
    }

    /// Row `r` (0-based) as a standalone string.
    pub fn row(&self, r: usize) -> PauliString {
        let letters = (1..=self.num_qubits).map(|q| self.letter(r, q)).collect();
        PauliString::from_letters(letters, self.phase(r)).expect("frame has at least one qubit")
    }

    pub fn rows(&self) -> impl Iterator<Item = PauliString> + '_ {
        (0..self.rows).map(|r| self.row(r))
    }

    pub fn apply_circuit(&mut self, circuit: &Circuit) -> Result<()> {
        if circuit.num_qubits() > self.num_qubits {
            return Err(Error::SizeMismatch {
                left: self.num_qubits,
                right: circuit.num_qubits(),
            });
        }
        circuit.gates().iter().try_for_each(|g| self.apply(g))
    }

    pub fn apply(&mut self, gate: &CliffordGate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        let w = self.words;
        match *gate {
            CliffordGate::H(q) => {
                let o = (q - 1) * w;
                for i in 0..w {
                    let (x, z) = (self.xs[o + i], self.zs[o + i]);
                    self.phase_hi[i] ^= x & z;
                    self.xs[o + i] = z;
                    self.zs[o + i] = x;
                }
            }
            CliffordGate::S(q) => {
                let o = (q - 1) * w;
                for i in 0..w {
                    let (x, z) = (self.xs[o + i], self.zs[o + i]);
                    self.phase_hi[i] ^= x & z;
                    self.zs[o + i] = z ^ x;
                }
            }
            CliffordGate::Sdg(q) => {
                let o = (q - 1) * w;
                for i in 0..w {
                    let (x, z) = (self.xs[o + i], self.zs[o + i]);
                    self.phase_hi[i] ^= x & !z;
                    self.zs[o + i] = z ^ x;
                }
            }
            CliffordGate::X(q) => {
                let o = (q - 1) * w;
                for i in 0..w {
                    self.phase_hi[i] ^= self.zs[o + i];
                }
            }
            CliffordGate::Y(q) => {
                let o = (q - 1) * w;
                for i in 0..w {
                    self.phase_hi[i] ^= self.xs[o + i] ^ self.zs[o + i];
                }
            }
            CliffordGate::Z(q) => {
                let o = (q - 1) * w;
                for i in 0..w {
                    self.phase_hi[i] ^= self.xs[o + i];
                }
            }
            CliffordGate::Cz(a, b) => {
                let (oa, ob) = ((a - 1) * w, (b - 1) * w);
                for i in 0..w {
                    let (xa, za, xb, zb) = (self.xs[oa + i], self.zs[oa + i], self.xs[ob + i], self.zs[ob + i]);
                    self.phase_hi[i] ^= xa & xb & (za ^ zb);
                    self.zs[oa + i] = za ^ xb;
                    self.zs[ob + i] = zb ^ xa;
                }
            }
            CliffordGate::Cx(c, t) => {
                let (oc, ot) = ((c - 1) * w, (t - 1) * w);
                for i in 0..w {
                    let (xc, zc, xt, zt) = (self.xs[oc + i], self.zs[oc + i], self.xs[ot + i], self.zs[ot + i]);
                    self.phase_hi[i] ^= xc & zt & !(xt ^ zc);
                    self.xs[ot + i] = xt ^ xc;
                    self.zs[oc + i] = zc ^ zt;
                }
            }
            CliffordGate::Swap(a, b) => {
                let (oa, ob) = ((a - 1) * w, (b - 1) * w);
                for i in 0..w {
                    self.xs.swap(oa + i, ob + i);
                    self.zs.swap(oa + i, ob + i);
                }
            }
        }
        Ok(())
    }
}
