//! Ternary qubit trees.
//!
//! Every qubit node has three child slots labelled `x`, `y`, `z`; a slot holds
//! either another qubit node or a terminal. A tree on `m` qubits has `2m + 1`
//! terminals, and each root-to-terminal path yields one Majorana generator: the
//! product of `σ^ν_k` over the links `(k, ν)` it follows.
//!
//! Leaves are enumerated depth-first with `x < y < z`; that order defines the
//! generator ranks `e_1 … e_{2m+1}`.

mod generators;
mod parse;

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use generators::{Generator, GeneratorSet, ValidationReport};

use crate::error::{Error, Result};
use crate::pauli::{PauliLetter, PauliString, Phase};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    X,
    Y,
    Z,
}

impl Label {
    pub const ALL: [Label; 3] = [Label::X, Label::Y, Label::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn letter(self) -> PauliLetter {
        match self {
            Label::X => PauliLetter::X,
            Label::Y => PauliLetter::Y,
            Label::Z => PauliLetter::Z,
        }
    }

    pub fn next(self) -> Option<Label> {
        match self {
            Label::X => Some(Label::Y),
            Label::Y => Some(Label::Z),
            Label::Z => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Label::X => 'x',
            Label::Y => 'y',
            Label::Z => 'z',
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A permutation of the three link labels; `apply(l)` is where the subtree
/// currently on `l` ends up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LabelPerm([Label; 3]);

impl LabelPerm {
    pub const IDENTITY: LabelPerm = LabelPerm([Label::X, Label::Y, Label::Z]);

    /// Exchanges `a` and `b`.
    pub fn swap(a: Label, b: Label) -> LabelPerm {
        let mut images = Self::IDENTITY.0;
        images.swap(a.index(), b.index());
        LabelPerm(images)
    }

    /// Builds the permutation from the images of `x`, `y`, `z`.
    pub fn from_images(images: [Label; 3]) -> Option<LabelPerm> {
        let mut seen = [false; 3];
        for l in images {
            seen[l.index()] = true;
        }
        seen.iter().all(|&s| s).then_some(LabelPerm(images))
    }

    pub fn apply(self, l: Label) -> Label {
        self.0[l.index()]
    }

    pub fn images(self) -> [Label; 3] {
        self.0
    }

    pub fn is_identity(self) -> bool {
        self == Self::IDENTITY
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slot {
    Terminal,
    Qubit(usize),
}

impl Slot {
    pub fn qubit(self) -> Option<usize> {
        match self {
            Slot::Terminal => None,
            Slot::Qubit(q) => Some(q),
        }
    }

    pub fn is_terminal(self) -> bool {
        self == Slot::Terminal
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Node {
    children: [Slot; 3],
    parent: Option<(usize, Label)>,
}

/// Root-to-terminal path as `(qubit, label)` steps; the last step's slot is a terminal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LeafPath(pub Vec<(usize, Label)>);

impl LeafPath {
    pub fn steps(&self) -> &[(usize, Label)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for LeafPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (q, l) in &self.0 {
            write!(f, "({q},{l})")?;
        }
        Ok(())
    }
}

/// A tree in construction: absent children are terminals. Turned into a
/// [`TernaryTree`] by [`TreeSketch::augment`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeSketch {
    pub id: usize,
    pub children: [Option<Box<TreeSketch>>; 3],
}

impl TreeSketch {
    pub fn new(id: usize) -> Self {
        Self {
            id,
            children: [None, None, None],
        }
    }

    pub fn with(mut self, label: Label, child: TreeSketch) -> Self {
        self.children[label.index()] = Some(Box::new(child));
        self
    }

    /// Fills every missing slot with a terminal and checks that the ids are
    /// exactly `1..=m`.
    pub fn augment(&self) -> Result<TernaryTree> {
        let mut slots: Vec<Option<Node>> = Vec::new();
        let mut stack = vec![(self, None)];
        while let Some((sketch, parent)) = stack.pop() {
            let id = sketch.id;
            if id == 0 {
                return Err(Error::InvalidTree("qubit ids start at 1".into()));
            }
            if slots.len() < id {
                slots.resize(id, None);
            }
            if slots[id - 1].is_some() {
                return Err(Error::InvalidTree(format!("duplicate qubit id {id}")));
            }
            let mut children = [Slot::Terminal; 3];
            for l in Label::ALL {
                if let Some(child) = &sketch.children[l.index()] {
                    children[l.index()] = Slot::Qubit(child.id);
                    stack.push((child, Some((id, l))));
                }
            }
            slots[id - 1] = Some(Node { children, parent });
        }
        if let Some(missing) = slots.iter().position(Option::is_none) {
            return Err(Error::InvalidTree(format!(
                "qubit ids must be exactly 1..={}; {} is missing",
                slots.len(),
                missing + 1
            )));
        }
        Ok(TernaryTree {
            root: self.id,
            nodes: slots.into_iter().map(Option::unwrap).collect(),
        })
    }
}

/// A complete ternary qubit tree with qubit ids `1..=m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TernaryTree {
    root: usize,
    nodes: Vec<Node>,
}

impl TernaryTree {
    pub fn num_qubits(&self) -> usize {
        self.nodes.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    fn node(&self, q: usize) -> Result<&Node> {
        q.checked_sub(1)
            .and_then(|i| self.nodes.get(i))
            .ok_or(Error::QubitOutOfRange {
                index: q,
                num_qubits: self.nodes.len(),
            })
    }

    pub fn contains(&self, q: usize) -> bool {
        self.node(q).is_ok()
    }

    /// Panics if `q` is not a qubit of the tree.
    pub fn child(&self, q: usize, label: Label) -> Slot {
        self.nodes[q - 1].children[label.index()]
    }

    pub fn children(&self, q: usize) -> [Slot; 3] {
        self.nodes[q - 1].children
    }

    pub fn parent(&self, q: usize) -> Option<(usize, Label)> {
        self.nodes[q - 1].parent
    }

    pub fn qubit_children(&self, q: usize) -> impl Iterator<Item = (Label, usize)> + '_ {
        Label::ALL
            .into_iter()
            .filter_map(move |l| self.child(q, l).qubit().map(|c| (l, c)))
    }

    pub fn is_fork(&self, q: usize) -> bool {
        self.qubit_children(q).count() >= 2
    }

    pub fn num_terminals(&self) -> usize {
        self.nodes
            .iter()
            .flat_map(|n| n.children)
            .filter(|s| s.is_terminal())
            .count()
    }

    /// Node ids from the root down, if the tree has no forks.
    pub fn chain_order(&self) -> Option<Vec<usize>> {
        let mut order = vec![self.root];
        let mut q = self.root;
        loop {
            let mut kids = self.qubit_children(q);
            match (kids.next(), kids.next()) {
                (None, _) => return Some(order),
                (Some((_, c)), None) => {
                    order.push(c);
                    q = c;
                }
                _ => return None,
            }
        }
    }

    /// A chain where every link is a `z` link, in any id order.
    pub fn is_z_chain(&self) -> bool {
        self.chain_order().is_some_and(|order| {
            order
                .windows(2)
                .all(|w| self.child(w[0], Label::Z) == Slot::Qubit(w[1]))
        })
    }

    /// Visits every root-to-terminal path in canonical order.
    pub fn for_each_leaf(&self, mut f: impl FnMut(&[(usize, Label)])) {
        let mut path = vec![(self.root, Label::X)];
        loop {
            let (q, l) = *path.last().expect("path is never empty here");
            match self.child(q, l) {
                Slot::Qubit(c) => {
                    path.push((c, Label::X));
                    continue;
                }
                Slot::Terminal => f(&path),
            }
            loop {
                match path.pop() {
                    None => return,
                    Some((q, l)) => {
                        if let Some(n) = l.next() {
                            path.push((q, n));
                            break;
                        }
                    }
                }
            }
        }
    }

    pub fn leaves(&self) -> Vec<LeafPath> {
        let mut out = Vec::with_capacity(2 * self.num_qubits() + 1);
        self.for_each_leaf(|p| out.push(LeafPath(p.to_vec())));
        out
    }

    fn product_unchecked(&self, steps: &[(usize, Label)]) -> PauliString {
        let mut letters = vec![PauliLetter::I; self.num_qubits()];
        for &(q, l) in steps {
            letters[q - 1] = l.letter();
        }
        PauliString::from_letters(letters, Phase::ONE).expect("tree has at least one qubit")
    }

    /// Product of `σ^ν_k` along a path, which must start at the root, follow
    /// links, and end on a terminal slot.
    pub fn path_product(&self, path: &LeafPath) -> Result<PauliString> {
        let steps = path.steps();
        let Some(&(first, _)) = steps.first() else {
            return Err(Error::InvalidPath("empty path".into()));
        };
        if first != self.root {
            return Err(Error::InvalidPath(format!(
                "path starts at qubit {first}, root is {}",
                self.root
            )));
        }
        for (i, &(q, l)) in steps.iter().enumerate() {
            self.node(q)
                .map_err(|_| Error::InvalidPath(format!("unknown qubit {q}")))?;
            let expected = match steps.get(i + 1) {
                Some(&(next, _)) => Slot::Qubit(next),
                None => Slot::Terminal,
            };
            if self.child(q, l) != expected {
                return Err(Error::InvalidPath(format!(
                    "step {} ({q},{l}) does not lead to {expected:?}",
                    i + 1
                )));
            }
        }
        Ok(self.product_unchecked(steps))
    }

    /// All `2m + 1` path products in canonical leaf order.
    pub fn generators(&self) -> GeneratorSet {
        let mut entries = Vec::with_capacity(2 * self.num_qubits() + 1);
        self.for_each_leaf(|p| {
            entries.push(Generator {
                path: Some(LeafPath(p.to_vec())),
                pauli: self.product_unchecked(p),
            })
        });
        let set = GeneratorSet::from_entries(self.num_qubits(), entries);
        debug_assert!(
            self.num_qubits() > 24 || set.check().is_valid(),
            "tree generators must anticommute"
        );
        set
    }

    /// Just the generator strings, without materializing paths.
    pub(crate) fn generator_strings(&self) -> Vec<PauliString> {
        let mut out = Vec::with_capacity(2 * self.num_qubits() + 1);
        self.for_each_leaf(|p| out.push(self.product_unchecked(p)));
        out
    }

    pub fn to_sketch(&self) -> TreeSketch {
        fn build(t: &TernaryTree, q: usize) -> TreeSketch {
            let mut s = TreeSketch::new(q);
            for (l, c) in t.qubit_children(q) {
                s.children[l.index()] = Some(Box::new(build(t, c)));
            }
            s
        }
        build(self, self.root)
    }

    /// The Jordan-Wigner chain: qubit `k`'s `z` child is `k + 1`.
    pub fn jw_chain(num_qubits: usize) -> Result<TernaryTree> {
        if num_qubits == 0 {
            return Err(Error::InvalidSize("a tree needs at least one qubit".into()));
        }
        let nodes = (1..=num_qubits)
            .map(|k| Node {
                children: [
                    Slot::Terminal,
                    Slot::Terminal,
                    if k < num_qubits {
                        Slot::Qubit(k + 1)
                    } else {
                        Slot::Terminal
                    },
                ],
                parent: (k > 1).then(|| (k - 1, Label::Z)),
            })
            .collect();
        Ok(TernaryTree { root: 1, nodes })
    }

    /// Full ternary tree with `depth` levels below the root, ids in
    /// breadth-first order. Depth 0 is a single qubit; depth 2 has 13.
    pub fn full_ternary(depth: u32) -> Result<TernaryTree> {
        let too_big = || Error::InvalidSize(format!("full ternary tree of depth {depth} overflows u32 qubit ids"));
        let count = 3u64.checked_pow(depth + 1).map(|p| (p - 1) / 2).ok_or_else(too_big)?;
        if count > u64::from(u32::MAX) {
            return Err(too_big());
        }
        let count = count as usize;
        let nodes = (1..=count)
            .map(|k| {
                let has_children = 3 * k < count;
                let mut children = [Slot::Terminal; 3];
                if has_children {
                    for (i, slot) in children.iter_mut().enumerate() {
                        *slot = Slot::Qubit(3 * k - 1 + i);
                    }
                }
                let parent = (k > 1).then(|| ((k + 1) / 3, Label::ALL[(k + 1) % 3]));
                Node { children, parent }
            })
            .collect();
        Ok(TernaryTree { root: 1, nodes })
    }

    /// Attaches qubit `k + 1` to a uniformly chosen free slot of qubits `1..=k`.
    pub fn random(num_qubits: usize, seed: u64) -> Result<TernaryTree> {
        if num_qubits == 0 {
            return Err(Error::InvalidSize("a tree needs at least one qubit".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut tree = TernaryTree {
            root: 1,
            nodes: vec![
                Node {
                    children: [Slot::Terminal; 3],
                    parent: None
                };
                num_qubits
            ],
        };
        let mut free: Vec<(usize, Label)> = Label::ALL.iter().map(|&l| (1, l)).collect();
        for k in 2..=num_qubits {
            let (q, l) = free.swap_remove(rng.gen_range(0..free.len()));
            tree.set_child(q, l, Slot::Qubit(k));
            free.extend(Label::ALL.iter().map(|&l| (k, l)));
        }
        Ok(tree)
    }

    pub(crate) fn set_child(&mut self, q: usize, label: Label, slot: Slot) {
        self.nodes[q - 1].children[label.index()] = slot;
        if let Slot::Qubit(c) = slot {
            self.nodes[c - 1].parent = Some((q, label));
        }
    }

    pub(crate) fn permute_children(&mut self, q: usize, perm: LabelPerm) {
        let old = self.nodes[q - 1].children;
        for l in Label::ALL {
            self.set_child(q, perm.apply(l), old[l.index()]);
        }
    }

    /// Text form with every terminal written out as `_`.
    pub fn to_explicit_string(&self) -> String {
        let mut out = String::new();
        self.write_node(&mut out, self.root, true);
        out
    }

    fn write_node(&self, out: &mut String, q: usize, explicit: bool) {
        out.push_str(&format!("(q{q}"));
        for l in Label::ALL {
            match self.child(q, l) {
                Slot::Qubit(c) => {
                    out.push_str(&format!(" :{l} "));
                    self.write_node(out, c, explicit);
                }
                Slot::Terminal if explicit => out.push_str(&format!(" :{l} _")),
                Slot::Terminal => {}
            }
        }
        out.push(')');
    }
}

impl fmt::Display for TernaryTree {
    /// Compact text form; terminals are left implicit.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        self.write_node(&mut out, self.root, false);
        f.write_str(&out)
    }
}
