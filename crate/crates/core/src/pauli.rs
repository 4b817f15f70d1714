//! Signed Pauli strings with exact `i^k` phases.
//!
//! A [`PauliString`] on `m` qubits is `i^k · P_1 ⊗ P_2 ⊗ … ⊗ P_m` where each
//! `P_q` is one of `I, X, Y, Z`. Qubits are numbered from 1 and qubit 1 is the
//! leftmost tensor factor, which is also the leftmost character of the text
//! form (`+XZI`, `-iYY`).

use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use crate::error::{Error, Location, Result};

/// Single-qubit Pauli letter, stored as its (x, z) bit pair with `Y` as a letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum PauliLetter {
    #[default]
    I,
    X,
    Y,
    Z,
}

impl PauliLetter {
    pub const ALL: [PauliLetter; 4] = [PauliLetter::I, PauliLetter::X, PauliLetter::Y, PauliLetter::Z];

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => PauliLetter::I,
            (true, false) => PauliLetter::X,
            (true, true) => PauliLetter::Y,
            (false, true) => PauliLetter::Z,
        }
    }

    pub fn x_bit(self) -> bool {
        matches!(self, PauliLetter::X | PauliLetter::Y)
    }

    pub fn z_bit(self) -> bool {
        matches!(self, PauliLetter::Z | PauliLetter::Y)
    }

    pub fn is_identity(self) -> bool {
        self == PauliLetter::I
    }

    pub fn to_char(self) -> char {
        match self {
            PauliLetter::I => 'I',
            PauliLetter::X => 'X',
            PauliLetter::Y => 'Y',
            PauliLetter::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(PauliLetter::I),
            'X' => Some(PauliLetter::X),
            'Y' => Some(PauliLetter::Y),
            'Z' => Some(PauliLetter::Z),
            _ => None,
        }
    }

    /// Product `self · other = i^k · letter`, returned as `(k, letter)`.
    pub fn product(self, other: PauliLetter) -> (Phase, PauliLetter) {
        use PauliLetter::*;
        let k = match (self, other) {
            (X, Y) | (Y, Z) | (Z, X) => 1,
            (Y, X) | (Z, Y) | (X, Z) => 3,
            _ => 0,
        };
        let letter = PauliLetter::from_bits(self.x_bit() ^ other.x_bit(), self.z_bit() ^ other.z_bit());
        (Phase::new(k), letter)
    }

    /// Two letters anticommute iff both are non-identity and they differ.
    pub fn anticommutes(self, other: PauliLetter) -> bool {
        !self.is_identity() && !other.is_identity() && self != other
    }
}

impl fmt::Display for PauliLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// A power of the imaginary unit, `i^k` with `k` taken modulo 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn new(exponent: i64) -> Self {
        Phase(exponent.rem_euclid(4) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    /// `true` for `±1`.
    pub fn is_real(self) -> bool {
        self.0.is_multiple_of(2)
    }

    pub fn conj(self) -> Phase {
        Phase((4 - self.0) % 4)
    }

    fn prefix(self) -> &'static str {
        match self.0 {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        }
    }
}

impl Mul for Phase {
    type Output = Phase;

    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

impl Neg for Phase {
    type Output = Phase;

    fn neg(self) -> Phase {
        self * Phase::MINUS_ONE
    }
}

impl From<Sign> for Phase {
    fn from(sign: Sign) -> Phase {
        match sign {
            Sign::Plus => Phase::ONE,
            Sign::Minus => Phase::MINUS_ONE,
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "1",
            1 => "i",
            2 => "-1",
            _ => "-i",
        })
    }
}

/// A real phase `±1`, as carried by Hermitian strings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Sign {
    #[default]
    Plus,
    Minus,
}

impl Sign {
    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    /// `None` for the imaginary phases.
    pub fn from_phase(phase: Phase) -> Option<Sign> {
        match phase.exponent() {
            0 => Some(Sign::Plus),
            2 => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    letters: Vec<PauliLetter>,
    phase: Phase,
}

impl PauliString {
    pub fn identity(num_qubits: usize) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::InvalidSize("a Pauli string needs at least one qubit".into()));
        }
        Ok(Self {
            letters: vec![PauliLetter::I; num_qubits],
            phase: Phase::ONE,
        })
    }

    /// `letter` on qubit `qubit` (1-based), identity elsewhere.
    pub fn single(num_qubits: usize, qubit: usize, letter: PauliLetter) -> Result<Self> {
        let mut p = Self::identity(num_qubits)?;
        if qubit == 0 || qubit > num_qubits {
            return Err(Error::QubitOutOfRange {
                index: qubit,
                num_qubits,
            });
        }
        if letter.is_identity() {
            return Err(Error::InvalidSize("single-qubit Pauli factor must not be I".into()));
        }
        p.letters[qubit - 1] = letter;
        Ok(p)
    }

    pub fn from_letters(letters: Vec<PauliLetter>, phase: Phase) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidSize("a Pauli string needs at least one qubit".into()));
        }
        Ok(Self { letters, phase })
    }

    pub fn num_qubits(&self) -> usize {
        self.letters.len()
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn letters(&self) -> &[PauliLetter] {
        &self.letters
    }

    /// Letter on qubit `qubit` (1-based).
    pub fn letter(&self, qubit: usize) -> PauliLetter {
        self.letters[qubit - 1]
    }

    pub fn set_letter(&mut self, qubit: usize, letter: PauliLetter) {
        self.letters[qubit - 1] = letter;
    }

    pub fn with_phase(mut self, phase: Phase) -> Self {
        self.phase = phase;
        self
    }

    pub(crate) fn letters_mut(&mut self) -> &mut [PauliLetter] {
        &mut self.letters
    }

    pub(crate) fn phase_mut(&mut self) -> &mut Phase {
        &mut self.phase
    }

    pub fn is_hermitian(&self) -> bool {
        self.phase.is_real()
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.letters.iter().all(|l| l.is_identity())
    }

    pub fn weight(&self) -> usize {
        self.letters.iter().filter(|l| !l.is_identity()).count()
    }

    /// 1-based positions of the non-identity letters.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.letters
            .iter()
            .enumerate()
            .filter(|(_, l)| !l.is_identity())
            .map(|(i, _)| i + 1)
    }

    fn check_size(&self, other: &PauliString) -> Result<()> {
        if self.num_qubits() != other.num_qubits() {
            return Err(Error::SizeMismatch {
                left: self.num_qubits(),
                right: other.num_qubits(),
            });
        }
        Ok(())
    }

    /// Exact product `self · other`.
    pub fn multiply(&self, other: &PauliString) -> Result<PauliString> {
        self.check_size(other)?;
        let mut phase = self.phase * other.phase;
        let letters = self
            .letters
            .iter()
            .zip(&other.letters)
            .map(|(&a, &b)| {
                let (k, l) = a.product(b);
                phase = phase * k;
                l
            })
            .collect();
        Ok(PauliString { letters, phase })
    }

    pub fn commutes(&self, other: &PauliString) -> Result<bool> {
        self.check_size(other)?;
        let clashes = self
            .letters
            .iter()
            .zip(&other.letters)
            .filter(|(a, b)| a.anticommutes(**b))
            .count();
        Ok(clashes % 2 == 0)
    }

    /// Equality of the letter patterns, ignoring phase.
    pub fn same_letters(&self, other: &PauliString) -> bool {
        self.letters == other.letters
    }

    /// Parses the canonical text form, additionally requiring `num_qubits` letters.
    pub fn parse_sized(text: &str, num_qubits: usize) -> Result<Self> {
        let p: PauliString = text.parse()?;
        if p.num_qubits() != num_qubits {
            return Err(Error::parse(
                Location::new(1, text.chars().count() + 1),
                format!("expected {num_qubits} letters, found {}", p.num_qubits()),
            ));
        }
        Ok(p)
    }
}

impl Mul for &PauliString {
    type Output = PauliString;

    /// Panics on a size mismatch; use [`PauliString::multiply`] for a checked product.
    fn mul(self, rhs: &PauliString) -> PauliString {
        self.multiply(rhs).expect("Pauli strings of different length")
    }
}

impl Neg for PauliString {
    type Output = PauliString;

    fn neg(mut self) -> PauliString {
        self.phase = -self.phase;
        self
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.phase.prefix())?;
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let chars: Vec<char> = text.chars().collect();
        let (phase, start) = match chars.as_slice() {
            ['+', 'i', ..] => (Phase::I, 2),
            ['-', 'i', ..] => (Phase::MINUS_I, 2),
            ['+', ..] => (Phase::ONE, 1),
            ['-', ..] => (Phase::MINUS_ONE, 1),
            _ => (Phase::ONE, 0),
        };
        if start == chars.len() {
            return Err(Error::parse(
                Location::new(1, start + 1),
                "expected at least one Pauli letter",
            ));
        }
        let letters = chars[start..]
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                PauliLetter::from_char(c)
                    .ok_or_else(|| Error::parse(Location::new(1, start + i + 1), format!("unexpected character {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PauliString { letters, phase })
    }
}
