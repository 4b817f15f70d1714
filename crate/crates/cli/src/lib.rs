//! The `tern2jw` command line, as a library so it can be driven in-process.
//!
//! Exit codes: 0 success, 1 verification failed, 2 parse or usage error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand};
use tern2jw::oracle::DEFAULT_ORACLE_CAP;
use tern2jw::{
    fix_signs, map_between, straighten_with, Certificate, Error, ExactOracle, PauliString, StraightenOptions,
    TernaryTree,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "tern2jw",
    version,
    about = "Ternary qubit trees to Jordan-Wigner Clifford circuits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Inputs {
    /// Input files; `-` reads standard input.
    files: Vec<String>,
    /// Inline input text, taken before any file.
    #[arg(short = 'e', value_name = "TEXT")]
    inline: Vec<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the 2m+1 leaf generators and their total product.
    Generators(Inputs),
    /// Emit the circuit, PERM and SIGNS that map a tree onto the JW chain.
    Straighten {
        #[command(flatten)]
        inputs: Inputs,
        /// Append single-qubit Pauli gates making signs 1..2m positive.
        #[arg(long)]
        fix_signs: bool,
        /// Realize the chain order with SWAP gates instead of PERM.
        #[arg(long)]
        swaps: bool,
    },
    /// Print a circuit taking the first tree's generators to the second's.
    Map(Inputs),
    /// Check a tree against a certificate (circuit with PERM/SIGNS).
    Verify {
        #[command(flatten)]
        inputs: Inputs,
        /// Largest qubit count checked with dense matrices.
        #[arg(long, value_name = "N", default_value_t = DEFAULT_ORACLE_CAP)]
        oracle_cap: usize,
    },
    /// Generator weight histogram, maximum and mean.
    Stats(Inputs),
    /// Print the tree with every terminal written out.
    Augment(Inputs),
}

/// A named piece of input text.
struct Source {
    name: String,
    text: String,
}

enum Failure {
    Usage(String),
    Verify(String),
}

type Outcome<T> = Result<T, Failure>;

fn describe(source: &Source, e: Error) -> Failure {
    match e {
        Error::Parse { location, message } => Failure::Usage(format!("{}:{location}: {message}", source.name)),
        other => Failure::Usage(format!("{}: {other}", source.name)),
    }
}

fn gather(inputs: &Inputs, want: usize, what: &str, stdin: &mut dyn Read) -> Outcome<Vec<Source>> {
    let mut sources: Vec<Source> = inputs
        .inline
        .iter()
        .enumerate()
        .map(|(i, t)| Source {
            name: format!("<-e #{}>", i + 1),
            text: t.clone(),
        })
        .collect();
    let mut stdin_used = false;
    for f in &inputs.files {
        let source = if f == "-" {
            if std::mem::replace(&mut stdin_used, true) {
                return Err(Failure::Usage("standard input can be read only once".into()));
            }
            let mut text = String::new();
            stdin
                .read_to_string(&mut text)
                .map_err(|e| Failure::Usage(format!("<stdin>: {e}")))?;
            Source {
                name: "<stdin>".into(),
                text,
            }
        } else {
            let text = std::fs::read_to_string(f).map_err(|e| Failure::Usage(format!("{f}: {e}")))?;
            Source { name: f.clone(), text }
        };
        sources.push(source);
    }
    if sources.len() != want {
        return Err(Failure::Usage(format!(
            "expected {what}, got {} input(s)",
            sources.len()
        )));
    }
    Ok(sources)
}

fn tree_of(source: &Source) -> Outcome<TernaryTree> {
    source.text.parse().map_err(|e| describe(source, e))
}

fn one_tree(inputs: &Inputs, stdin: &mut dyn Read) -> Outcome<TernaryTree> {
    let sources = gather(inputs, 1, "one tree", stdin)?;
    tree_of(&sources[0])
}

fn generators(tree: &TernaryTree) -> String {
    let set = tree.generators();
    let mut out = String::new();
    for (j, g) in set.strings().enumerate() {
        writeln!(out, "e{} {g}", j + 1).unwrap();
    }
    writeln!(out, "product {}", set.check().total_product).unwrap();
    out
}

fn stats(tree: &TernaryTree) -> String {
    let weights: Vec<usize> = tree.generators().strings().map(PauliString::weight).collect();
    let max = weights.iter().copied().max().unwrap_or(0);
    let mut histogram = vec![0usize; max + 1];
    for &w in &weights {
        histogram[w] += 1;
    }
    let mut out = String::new();
    writeln!(out, "qubits {}", tree.num_qubits()).unwrap();
    writeln!(out, "generators {}", weights.len()).unwrap();
    for (w, &count) in histogram.iter().enumerate().filter(|(_, &c)| c > 0) {
        writeln!(out, "weight {w} {count}").unwrap();
    }
    writeln!(out, "max {max}").unwrap();
    let mean = weights.iter().sum::<usize>() as f64 / weights.len() as f64;
    writeln!(out, "mean {mean:.4}").unwrap();
    out
}

fn straighten_cmd(tree: &TernaryTree, fix: bool, swaps: bool) -> String {
    let options = StraightenOptions {
        materialize_swaps: swaps,
        ..Default::default()
    };
    let mut result = straighten_with(tree, options);
    if fix {
        result = fix_signs(tree, &result);
    }
    Certificate::from(&result).to_string()
}

fn map_cmd(a: &TernaryTree, b: &TernaryTree) -> Outcome<String> {
    let mapping = map_between(a, b).map_err(|e| Failure::Usage(e.to_string()))?;
    let mut out = String::new();
    for &(la, lb, sign) in &mapping.correspondence {
        writeln!(out, "# e{la} -> {}e{lb}", sign.as_char()).unwrap();
    }
    write!(out, "{}", mapping.circuit.peephole_cancel()).unwrap();
    Ok(out)
}

fn verify_cmd(tree: &TernaryTree, cert: &Certificate, cap: usize) -> Outcome<String> {
    let mut out = String::new();
    let result = cert.check(tree).map_err(|e| Failure::Verify(format!("engine: {e}")))?;
    writeln!(out, "engine: ok ({} generators)", result.signs.len()).unwrap();
    let m = tree.num_qubits();
    if m <= cap {
        let report = ExactOracle::with_cap(cap)
            .check(tree, &result)
            .map_err(|e| Failure::Verify(format!("oracle: {e}")))?;
        if !report.passed() {
            return Err(Failure::Verify(format!(
                "oracle: generators {:?} fail",
                report.failures()
            )));
        }
        writeln!(out, "oracle: ok").unwrap();
    } else {
        writeln!(out, "oracle: skipped ({m} qubits > cap {cap})").unwrap();
    }
    Ok(out)
}

fn execute(command: &Command, stdin: &mut dyn Read) -> Outcome<String> {
    match command {
        Command::Generators(inputs) => Ok(generators(&one_tree(inputs, stdin)?)),
        Command::Stats(inputs) => Ok(stats(&one_tree(inputs, stdin)?)),
        Command::Augment(inputs) => Ok(one_tree(inputs, stdin)?.to_explicit_string() + "\n"),
        Command::Straighten {
            inputs,
            fix_signs,
            swaps,
        } => Ok(straighten_cmd(&one_tree(inputs, stdin)?, *fix_signs, *swaps)),
        Command::Map(inputs) => {
            let sources = gather(inputs, 2, "two trees", stdin)?;
            map_cmd(&tree_of(&sources[0])?, &tree_of(&sources[1])?)
        }
        Command::Verify { inputs, oracle_cap } => {
            let sources = gather(inputs, 2, "a tree and a circuit", stdin)?;
            let tree = tree_of(&sources[0])?;
            let cert: Certificate = sources[1].text.parse().map_err(|e| describe(&sources[1], e))?;
            verify_cmd(&tree, &cert, *oracle_cap)
        }
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                EXIT_USAGE
            } else {
                let _ = out.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    match execute(&cli.command, stdin) {
        Ok(text) => {
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_USAGE;
            }
            EXIT_OK
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Verify(msg)) => {
            let _ = writeln!(err, "verification failed: {msg}");
            EXIT_VERIFY_FAILED
        }
    }
}
