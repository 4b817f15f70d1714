//! Tree text: `tree := "_" | "(" "q" INT [":x" tree] [":y" tree] [":z" tree] ")"`.
//! Whitespace between tokens is ignored; a missing label is a terminal.

use std::collections::HashMap;
use std::str::FromStr;

use super::{Label, TernaryTree, TreeSketch};
use crate::error::{Error, Location, Result};

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn here(&self) -> Location {
        Location::of_offset(self.text, self.pos)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::parse(self.here(), message)
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected {want:?}, found {c:?}"))),
            None => Err(self.error(format!("expected {want:?}, found end of input"))),
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let digits: String = self.text[self.pos..]
            .chars()
            .take_while(|c| c.is_ascii_digit())
            .collect();
        if digits.is_empty() {
            return Err(self.error("expected a qubit id"));
        }
        let value = digits.parse::<usize>().map_err(|_| self.error("qubit id too large"))?;
        self.pos += digits.len();
        Ok(value)
    }
}

struct Frame {
    sketch: TreeSketch,
    pending: Option<Label>,
    given: [bool; 3],
}

/// Parses tree text into a sketch, rejecting duplicate ids at their position.
pub fn parse_sketch(text: &str) -> Result<TreeSketch> {
    let mut cur = Cursor { text, pos: 0 };
    let mut seen: HashMap<usize, Location> = HashMap::new();
    let mut stack: Vec<Frame> = Vec::new();
    let mut expecting_tree = true;
    loop {
        let delivered: Option<Option<TreeSketch>> = if expecting_tree {
            match cur.peek() {
                Some('_') => {
                    cur.bump();
                    Some(None)
                }
                Some('(') => {
                    cur.bump();
                    let at = {
                        cur.skip_ws();
                        cur.here()
                    };
                    cur.expect('q')?;
                    let id = cur.number()?;
                    if id == 0 {
                        return Err(Error::parse(at, "qubit ids start at 1"));
                    }
                    if let Some(first) = seen.insert(id, at) {
                        return Err(Error::parse(
                            at,
                            format!("duplicate qubit id {id} (first used at {first})"),
                        ));
                    }
                    stack.push(Frame {
                        sketch: TreeSketch::new(id),
                        pending: None,
                        given: [false; 3],
                    });
                    expecting_tree = false;
                    None
                }
                Some(c) => return Err(cur.error(format!("expected '(' or '_', found {c:?}"))),
                None => return Err(cur.error("expected a tree, found end of input")),
            }
        } else {
            match cur.peek() {
                Some(':') => {
                    cur.bump();
                    let label = match cur.peek() {
                        Some('x') => Label::X,
                        Some('y') => Label::Y,
                        Some('z') => Label::Z,
                        _ => return Err(cur.error("expected a link label x, y or z")),
                    };
                    cur.bump();
                    let frame = stack.last_mut().expect("inside a node");
                    if std::mem::replace(&mut frame.given[label.index()], true) {
                        return Err(cur.error(format!("label {label} given twice for q{}", frame.sketch.id)));
                    }
                    frame.pending = Some(label);
                    expecting_tree = true;
                    None
                }
                Some(')') => {
                    cur.bump();
                    Some(Some(stack.pop().expect("inside a node").sketch))
                }
                Some(c) => return Err(cur.error(format!("expected ':' or ')', found {c:?}"))),
                None => return Err(cur.error("unclosed '('")),
            }
        };
        let Some(value) = delivered else { continue };
        match stack.last_mut() {
            Some(parent) => {
                let label = parent.pending.take().expect("a subtree follows a label");
                parent.sketch.children[label.index()] = value.map(Box::new);
                expecting_tree = false;
            }
            None => {
                let Some(root) = value else {
                    return Err(Error::parse(
                        Location::new(1, 1),
                        "a tree needs at least one qubit node",
                    ));
                };
                if let Some(c) = cur.peek() {
                    return Err(cur.error(format!("unexpected {c:?} after the tree")));
                }
                return Ok(root);
            }
        }
    }
}

impl FromStr for TernaryTree {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let sketch = parse_sketch(text)?;
        sketch.augment().map_err(|e| match e {
            Error::InvalidTree(msg) => Error::parse(Location::of_offset(text, text.trim_end().len()), msg),
            other => other,
        })
    }
}
