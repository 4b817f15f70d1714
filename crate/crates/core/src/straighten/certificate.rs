//! Certificate text: the circuit format plus `PERM p1 … pm` and
//! `SIGNS s1 … s(2m+1)` directive lines.

use std::fmt;
use std::str::FromStr;

use crate::clifford::{parse_circuit_lines, parse_index, Circuit};
use crate::error::{Error, Location, Result};
use crate::pauli::Sign;
use crate::tree::TernaryTree;

use super::result::{check_permutation, derive_correspondence, Mismatch, StraightenResult};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub circuit: Circuit,
    pub permutation: Option<Vec<usize>>,
    /// By JW rank.
    pub signs: Option<Vec<Sign>>,
}

impl From<&StraightenResult> for Certificate {
    fn from(r: &StraightenResult) -> Self {
        Self {
            circuit: r.circuit.clone(),
            permutation: Some(r.permutation.clone()),
            signs: Some(r.signs.clone()),
        }
    }
}

impl Certificate {
    /// Checks the certificate against `tree` with the symbolic engine. A
    /// missing `PERM` means the identity; missing `SIGNS` are not compared.
    pub fn check(&self, tree: &TernaryTree) -> Result<StraightenResult, Mismatch> {
        let m = tree.num_qubits();
        let permutation = self.permutation.clone().unwrap_or_else(|| (1..=m).collect());
        let derived = derive_correspondence(tree, &self.circuit, &permutation)?;
        if let Some(signs) = &self.signs {
            if signs.len() != derived.signs.len() {
                return Err(Mismatch {
                    leaf: 0,
                    reason: format!("SIGNS has {} entries, expected {}", signs.len(), derived.signs.len()),
                });
            }
            if let Some(r) = (0..signs.len()).find(|&r| signs[r] != derived.signs[r]) {
                return Err(Mismatch {
                    leaf: derived.leaf_of_rank[r],
                    reason: format!(
                        "JW rank {} has sign {}, certificate says {}",
                        r + 1,
                        derived.signs[r].as_char(),
                        signs[r].as_char()
                    ),
                });
            }
        }
        Ok(StraightenResult {
            circuit: self.circuit.clone(),
            permutation,
            signs: derived.signs,
            leaf_of_rank: derived.leaf_of_rank,
            signfix: None,
        })
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.circuit)?;
        if let Some(p) = &self.permutation {
            write!(f, "PERM")?;
            for q in p {
                write!(f, " {q}")?;
            }
            writeln!(f)?;
        }
        if let Some(s) = &self.signs {
            write!(f, "SIGNS")?;
            for sign in s {
                write!(f, " {}", sign.as_char())?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for Certificate {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut permutation: Option<(Vec<usize>, Location)> = None;
        let mut signs: Option<Vec<Sign>> = None;
        let circuit = parse_circuit_lines(text, |keyword, args, loc| match keyword {
            "PERM" => {
                if permutation.is_some() {
                    return Err(Error::parse(loc, "PERM given twice"));
                }
                let p = args
                    .iter()
                    .map(|&t| parse_index(t, loc.line))
                    .collect::<Result<Vec<_>>>()?;
                permutation = Some((p, loc));
                Ok(true)
            }
            "SIGNS" => {
                if signs.is_some() {
                    return Err(Error::parse(loc, "SIGNS given twice"));
                }
                let s = args
                    .iter()
                    .map(|&(tok, col)| match tok {
                        "+" => Ok(Sign::Plus),
                        "-" => Ok(Sign::Minus),
                        _ => Err(Error::parse(
                            Location::new(loc.line, col),
                            format!("expected + or -, found {tok:?}"),
                        )),
                    })
                    .collect::<Result<Vec<_>>>()?;
                signs = Some(s);
                Ok(true)
            }
            _ => Ok(false),
        })?;
        let permutation = match permutation {
            Some((p, loc)) => {
                check_permutation(&p, circuit.num_qubits().max(p.len()))
                    .map_err(|e| Error::parse(loc, e.to_string()))?;
                Some(p)
            }
            None => None,
        };
        Ok(Self {
            circuit,
            permutation,
            signs,
        })
    }
}
