//! Line-oriented circuit text: `QUBITS <m>` header, then one gate per line
//! (`H 1`, `CZ 1 2`), `#` comments.

use crate::error::{Error, Location, Result};

use super::{Circuit, CliffordGate};

/// A whitespace-separated token and its 1-based column.
pub(crate) type Token<'a> = (&'a str, usize);

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((&line[s..i], line[..s].chars().count() + 1));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((&line[s..], line[..s].chars().count() + 1));
    }
    out
}

pub(crate) fn parse_index(token: Token<'_>, line: usize) -> Result<usize> {
    token.0.parse::<usize>().ok().filter(|&q| q >= 1).ok_or_else(|| {
        Error::parse(
            Location::new(line, token.1),
            format!("expected a qubit index, found {:?}", token.0),
        )
    })
}

/// Parses circuit text. Lines whose keyword is neither a gate nor `QUBITS`
/// go to `extra`, which returns `false` to reject them.
pub(crate) fn parse_circuit_lines<F>(text: &str, mut extra: F) -> Result<Circuit>
where
    F: FnMut(&str, &[Token<'_>], Location) -> Result<bool>,
{
    let mut declared: Option<usize> = None;
    let mut gates: Vec<(CliffordGate, Location)> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('#').next().unwrap_or("");
        let toks = tokens(line);
        let Some(&(keyword, col)) = toks.first() else { continue };
        let loc = Location::new(line_no, col);
        let args = &toks[1..];
        if keyword == "QUBITS" {
            if declared.is_some() || !gates.is_empty() {
                return Err(Error::parse(loc, "QUBITS must appear once, before any gate"));
            }
            if args.len() != 1 {
                return Err(Error::parse(loc, "QUBITS takes exactly one count"));
            }
            declared = Some(parse_index(args[0], line_no)?);
        } else if let Some(arity) = CliffordGate::arity(keyword) {
            if args.len() != arity {
                return Err(Error::parse(
                    loc,
                    format!("{keyword} takes {arity} qubit index(es), found {}", args.len()),
                ));
            }
            let targets = args
                .iter()
                .map(|&t| parse_index(t, line_no))
                .collect::<Result<Vec<_>>>()?;
            if targets.len() == 2 && targets[0] == targets[1] {
                return Err(Error::parse(loc, format!("{keyword} needs two distinct qubits")));
            }
            let gate = CliffordGate::from_parts(keyword, &targets).expect("arity checked");
            gates.push((gate, loc));
        } else if !extra(keyword, args, loc)? {
            return Err(Error::parse(loc, format!("unknown mnemonic {keyword:?}")));
        }
    }
    let used = gates.iter().flat_map(|(g, _)| g.targets()).max().unwrap_or(1);
    let num_qubits = declared.unwrap_or(used);
    let mut circuit = Circuit::new(num_qubits)?;
    for (g, loc) in gates {
        circuit.push(g).map_err(|e| Error::parse(loc, e.to_string()))?;
    }
    Ok(circuit)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_gates_comments_and_header() {
        let c: Circuit = "# demo\nQUBITS 5\nH 1\n  SDG 3  # trailing\n\nCZ 1 2\nSWAP 2 5\nCX 4 1\n"
            .parse()
            .unwrap();
        assert_eq!(c.num_qubits(), 5);
        assert_eq!(
            c.gates(),
            &[
                CliffordGate::H(1),
                CliffordGate::Sdg(3),
                CliffordGate::Cz(1, 2),
                CliffordGate::Swap(2, 5),
                CliffordGate::Cx(4, 1)
            ]
        );
        assert_eq!(c.to_string().parse::<Circuit>().unwrap(), c);
    }

    #[test]
    fn infers_size_without_header() {
        let c: Circuit = "CZ 2 4\n".parse().unwrap();
        assert_eq!(c.num_qubits(), 4);
        let c: Circuit = "".parse().unwrap();
        assert_eq!(c.num_qubits(), 1);
        assert!(c.is_empty());
    }

    fn err_at(text: &str) -> Location {
        match text.parse::<Circuit>() {
            Err(Error::Parse { location, .. }) => location,
            other => panic!("expected parse error for {text:?}, got {other:?}"),
        }
    }

    #[test]
    fn reports_locations() {
        assert_eq!(err_at("H 1\nFOO 2\n"), Location::new(2, 1));
        assert_eq!(err_at("H 1\n  CZ 1\n"), Location::new(2, 3));
        assert_eq!(err_at("CZ 1 x"), Location::new(1, 6));
        assert_eq!(err_at("QUBITS 2\nCZ 1 3"), Location::new(2, 1));
        assert_eq!(err_at("CZ 2 2"), Location::new(1, 1));
        assert_eq!(err_at("H 0"), Location::new(1, 3));
        assert_eq!(err_at("H 1\nQUBITS 2"), Location::new(2, 1));
    }
}
