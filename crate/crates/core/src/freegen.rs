//! Graphs, computads and the free 2-category on a computad.
//!
//! A 2-cell of the free 2-category is a [`PastingWord`]: a sequence of
//! whiskered generators. Two words denote the same 2-cell iff they are
//! related by interchange swaps; [`normalize_2cell`] picks a canonical
//! representative. Paths are stored in diagrammatic order (first edge first).

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

pub type NodeId = usize;
pub type EdgeId = usize;
pub type CellId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeGenError {
    #[error("duplicate identifier {0:?}")]
    Duplicate(String),
    #[error("unknown node {0:?}")]
    UnknownNode(String),
    #[error("unknown edge {0:?}")]
    UnknownEdge(String),
    #[error("unknown 2-cell {0:?}")]
    UnknownCell(String),
    #[error("edges do not chain: {0}")]
    BrokenPath(String),
    #[error("2-cell {0:?} has non-parallel source and target")]
    ParallelismViolation(String),
    #[error("malformed pasting word: {0}")]
    MalformedWord(String),
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),
}

pub type Result<T> = std::result::Result<T, FreeGenError>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub src: NodeId,
    pub tgt: NodeId,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    nodes: Vec<String>,
    edges: Vec<Edge>,
}

impl Graph {
    pub fn new<S: AsRef<str>>(nodes: &[S], edges: &[(S, S, S)]) -> Result<Graph> {
        let nodes: Vec<String> = nodes.iter().map(|s| s.as_ref().to_string()).collect();
        let mut seen = HashSet::new();
        for n in &nodes {
            if !seen.insert(n.clone()) {
                return Err(FreeGenError::Duplicate(n.clone()));
            }
        }
        let mut g = Graph { nodes, edges: Vec::new() };
        for (name, s, t) in edges {
            if !seen.insert(name.as_ref().to_string()) {
                return Err(FreeGenError::Duplicate(name.as_ref().into()));
            }
            let src = g.node_id(s.as_ref())?;
            let tgt = g.node_id(t.as_ref())?;
            g.edges.push(Edge { name: name.as_ref().into(), src, tgt });
        }
        Ok(g)
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn node_id(&self, name: &str) -> Result<NodeId> {
        self.nodes
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| FreeGenError::UnknownNode(name.into()))
    }

    pub fn edge_id(&self, name: &str) -> Result<EdgeId> {
        self.edges
            .iter()
            .position(|e| e.name == name)
            .ok_or_else(|| FreeGenError::UnknownEdge(name.into()))
    }

    /// Path from named edges in diagrammatic order. An empty list needs `start`.
    pub fn path(&self, start: &str, edges: &[&str]) -> Result<Path> {
        let start = self.node_id(start)?;
        let ids = edges.iter().map(|e| self.edge_id(e)).collect::<Result<Vec<_>>>()?;
        Path::new(self, start, ids)
    }
}

/// A path in a graph; `edges[0]` is traversed first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub start: NodeId,
    pub edges: Vec<EdgeId>,
}

impl Path {
    pub fn new(g: &Graph, start: NodeId, edges: Vec<EdgeId>) -> Result<Path> {
        if start >= g.nodes.len() {
            return Err(FreeGenError::UnknownNode(start.to_string()));
        }
        let mut at = start;
        for &e in &edges {
            let edge = g.edges.get(e).ok_or_else(|| FreeGenError::UnknownEdge(e.to_string()))?;
            if edge.src != at {
                return Err(FreeGenError::BrokenPath(format!("{} does not start at {}", edge.name, g.nodes[at])));
            }
            at = edge.tgt;
        }
        Ok(Path { start, edges })
    }

    pub fn empty(start: NodeId) -> Path {
        Path { start, edges: Vec::new() }
    }

    pub fn end(&self, g: &Graph) -> NodeId {
        self.edges.last().map_or(self.start, |&e| g.edges[e].tgt)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn parallel(&self, other: &Path, g: &Graph) -> bool {
        self.start == other.start && self.end(g) == other.end(g)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Path, g: &Graph) -> Result<Path> {
        if self.end(g) != next.start {
            return Err(FreeGenError::BrokenPath("paths do not meet".into()));
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&next.edges);
        Ok(Path { start: self.start, edges })
    }

    /// Compositional notation, last edge leftmost: `s0∘d0∘d`.
    pub fn display(&self, g: &Graph) -> String {
        if self.edges.is_empty() {
            return format!("id_{}", g.nodes[self.start]);
        }
        let names: Vec<&str> = self.edges.iter().rev().map(|&e| g.edges[e].name.as_str()).collect();
        names.join("∘")
    }
}

/// All paths `a → b` with at most `max_len` edges, in lexicographic order of
/// their edge sequences.
pub fn enumerate_paths(g: &Graph, a: NodeId, b: NodeId, max_len: usize) -> Vec<Path> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    paths_from(g, a, b, max_len, &mut cur, &mut out, a);
    out
}

fn paths_from(g: &Graph, at: NodeId, b: NodeId, left: usize, cur: &mut Vec<EdgeId>, out: &mut Vec<Path>, start: NodeId) {
    if at == b {
        out.push(Path { start, edges: cur.clone() });
    }
    if left == 0 {
        return;
    }
    for (e, edge) in g.edges.iter().enumerate() {
        if edge.src == at {
            cur.push(e);
            paths_from(g, edge.tgt, b, left - 1, cur, out, start);
            cur.pop();
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoCell {
    pub name: String,
    pub src: Path,
    pub tgt: Path,
}

/// A graph together with 2-cell generators between parallel paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Computad {
    base: Graph,
    cells: Vec<TwoCell>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    /// Nodes 0–3, the six generators `σ00 σ20 σ21 n0 n1 ϑ`.
    DeltaDotLax,
    /// Full subcomputad of `DeltaDotLax` on nodes 1, 2, 3.
    DeltaLax,
    /// `DeltaDotLax` plus a reverse cell for `ϑ`.
    DeltaDot,
}

/// Checks that every 2-cell has parallel source and target.
pub fn validate_computad(base: Graph, cells: Vec<TwoCell>) -> Result<Computad> {
    let mut names = HashSet::new();
    for c in &cells {
        if !names.insert(c.name.clone()) {
            return Err(FreeGenError::Duplicate(c.name.clone()));
        }
        Path::new(&base, c.src.start, c.src.edges.clone())?;
        Path::new(&base, c.tgt.start, c.tgt.edges.clone())?;
        if !c.src.parallel(&c.tgt, &base) {
            return Err(FreeGenError::ParallelismViolation(c.name.clone()));
        }
    }
    Ok(Computad { base, cells })
}

// Node and edge names shared by the descent computads.
pub const EDGE_D: &str = "d";
pub const EDGE_D0: &str = "d0";
pub const EDGE_D1: &str = "d1";
pub const EDGE_S0: &str = "s0";
pub const EDGE_P0: &str = "del0";
pub const EDGE_P1: &str = "del1";
pub const EDGE_P2: &str = "del2";
pub const CELL_S00: &str = "sigma00";
pub const CELL_S20: &str = "sigma20";
pub const CELL_S21: &str = "sigma21";
pub const CELL_N0: &str = "n0";
pub const CELL_N1: &str = "n1";
pub const CELL_THETA: &str = "theta";
pub const CELL_THETA_REV: &str = "theta_rev";

pub fn builtin_computad(which: Builtin) -> Computad {
    let full = delta_dot_lax();
    match which {
        Builtin::DeltaDotLax => full,
        Builtin::DeltaLax => full.restrict(&["1", "2", "3"]).expect("restriction of a builtin"),
        Builtin::DeltaDot => {
            let g = full.base.clone();
            let p = |s: &str, es: &[&str]| g.path(s, es).expect("builtin path");
            let mut cells = full.cells.clone();
            cells.push(TwoCell { name: CELL_THETA_REV.into(), src: p("0", &[EDGE_D, EDGE_D0]), tgt: p("0", &[EDGE_D, EDGE_D1]) });
            validate_computad(g, cells).expect("builtin computad")
        }
    }
}

fn delta_dot_lax() -> Computad {
    let g = Graph::new(
        &["0", "1", "2", "3"],
        &[
            (EDGE_D, "0", "1"),
            (EDGE_D0, "1", "2"),
            (EDGE_D1, "1", "2"),
            (EDGE_S0, "2", "1"),
            (EDGE_P0, "2", "3"),
            (EDGE_P1, "2", "3"),
            (EDGE_P2, "2", "3"),
        ],
    )
    .expect("builtin graph");
    let p = |s: &str, es: &[&str]| g.path(s, es).expect("builtin path");
    let cell = |name: &str, src: Path, tgt: Path| TwoCell { name: name.into(), src, tgt };
    let cells = vec![
        cell(CELL_S00, p("1", &[EDGE_D0, EDGE_P0]), p("1", &[EDGE_D0, EDGE_P1])),
        cell(CELL_S20, p("1", &[EDGE_D0, EDGE_P2]), p("1", &[EDGE_D1, EDGE_P0])),
        cell(CELL_S21, p("1", &[EDGE_D1, EDGE_P2]), p("1", &[EDGE_D1, EDGE_P1])),
        cell(CELL_N0, p("1", &[]), p("1", &[EDGE_D0, EDGE_S0])),
        cell(CELL_N1, p("1", &[]), p("1", &[EDGE_D1, EDGE_S0])),
        cell(CELL_THETA, p("0", &[EDGE_D, EDGE_D1]), p("0", &[EDGE_D, EDGE_D0])),
    ];
    validate_computad(g, cells).expect("builtin computad")
}

impl Computad {
    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn cells(&self) -> &[TwoCell] {
        &self.cells
    }

    pub fn cell_id(&self, name: &str) -> Result<CellId> {
        self.cells
            .iter()
            .position(|c| c.name == name)
            .ok_or_else(|| FreeGenError::UnknownCell(name.into()))
    }

    /// Full subcomputad on the named nodes: edges and 2-cells whose
    /// boundaries stay inside, in their original order.
    pub fn restrict<S: AsRef<str>>(&self, keep: &[S]) -> Result<Computad> {
        let old: Vec<NodeId> = keep.iter().map(|n| self.base.node_id(n.as_ref())).collect::<Result<_>>()?;
        let new_node: HashMap<NodeId, NodeId> = old.iter().enumerate().map(|(i, &n)| (n, i)).collect();
        let mut edge_map = HashMap::new();
        let mut edges = Vec::new();
        for (e, edge) in self.base.edges.iter().enumerate() {
            if let (Some(&s), Some(&t)) = (new_node.get(&edge.src), new_node.get(&edge.tgt)) {
                edge_map.insert(e, edges.len());
                edges.push(Edge { name: edge.name.clone(), src: s, tgt: t });
            }
        }
        let nodes = old.iter().map(|&n| self.base.nodes[n].clone()).collect();
        let base = Graph { nodes, edges };
        let map_path = |p: &Path| -> Option<Path> {
            let start = *new_node.get(&p.start)?;
            let edges = p.edges.iter().map(|e| edge_map.get(e).copied()).collect::<Option<Vec<_>>>()?;
            Some(Path { start, edges })
        };
        let cells = self
            .cells
            .iter()
            .filter_map(|c| Some(TwoCell { name: c.name.clone(), src: map_path(&c.src)?, tgt: map_path(&c.tgt)? }))
            .collect();
        validate_computad(base, cells)
    }
}

/// A whiskered generator `left · cell · right`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Step {
    pub left: Path,
    pub cell: CellId,
    pub right: Path,
}

/// A 2-cell of the free 2-category: steps applied in order to `source`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PastingWord {
    source: Path,
    target: Path,
    steps: Vec<Step>,
}

// Position-based form of a step: the generator rewrites the segment starting at `pos`.
type Slot = (usize, CellId);

impl PastingWord {
    /// Checks that each step's whiskered source is the running 1-cell and that
    /// the last 1-cell is `target`.
    pub fn new(c: &Computad, source: Path, target: Path, steps: Vec<Step>) -> Result<PastingWord> {
        let g = &c.base;
        Path::new(g, source.start, source.edges.clone()).map_err(|e| FreeGenError::MalformedWord(e.to_string()))?;
        if !source.parallel(&target, g) {
            return Err(FreeGenError::MalformedWord("boundary paths are not parallel".into()));
        }
        let mut cur = source.clone();
        for (i, s) in steps.iter().enumerate() {
            let cell = c.cells.get(s.cell).ok_or_else(|| FreeGenError::MalformedWord(format!("step {i}: unknown cell")))?;
            let whiskered = s
                .left
                .then(&cell.src, g)
                .and_then(|p| p.then(&s.right, g))
                .map_err(|_| FreeGenError::MalformedWord(format!("step {i}: whiskers do not meet {}", cell.name)))?;
            if whiskered != cur {
                return Err(FreeGenError::MalformedWord(format!(
                    "step {i}: expected source {}, running 1-cell is {}",
                    whiskered.display(g),
                    cur.display(g)
                )));
            }
            cur = s.left.then(&cell.tgt, g).and_then(|p| p.then(&s.right, g))?;
        }
        if cur != target {
            return Err(FreeGenError::MalformedWord(format!(
                "ends at {} instead of {}",
                cur.display(g),
                target.display(g)
            )));
        }
        Ok(PastingWord { source, target, steps })
    }

    pub fn identity(p: Path) -> PastingWord {
        PastingWord { source: p.clone(), target: p, steps: Vec::new() }
    }

    /// Builds a word from `(position, cell)` slots.
    pub fn from_slots(c: &Computad, source: Path, slots: &[(usize, CellId)]) -> Result<PastingWord> {
        let mut cur = source.clone();
        let mut steps = Vec::with_capacity(slots.len());
        for &(pos, cell) in slots {
            let step = slot_to_step(c, &cur, pos, cell)
                .ok_or_else(|| FreeGenError::MalformedWord(format!("cell {cell} does not apply at {pos}")))?;
            cur = apply_slot(c, &cur.edges, pos, cell).map(|edges| Path { start: cur.start, edges }).expect("checked");
            steps.push(step);
        }
        PastingWord::new(c, source, cur, steps)
    }

    pub fn source(&self) -> &Path {
        &self.source
    }

    pub fn target(&self) -> &Path {
        &self.target
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn slots(&self) -> Vec<(usize, CellId)> {
        self.steps.iter().map(|s| (s.left.len(), s.cell)).collect()
    }

    /// Vertical composite: `self` followed by `next`.
    pub fn then(&self, next: &PastingWord) -> Result<PastingWord> {
        if self.target != next.source {
            return Err(FreeGenError::BoundaryMismatch("target ≠ source".into()));
        }
        let mut steps = self.steps.clone();
        steps.extend(next.steps.iter().cloned());
        Ok(PastingWord { source: self.source.clone(), target: next.target.clone(), steps })
    }

    pub fn display(&self, c: &Computad) -> String {
        let g = &c.base;
        let steps: Vec<String> = self
            .steps
            .iter()
            .map(|s| format!("[{} | {} | {}]", s.left.display(g), c.cells[s.cell].name, s.right.display(g)))
            .collect();
        format!("{} => {} : {}", self.source.display(g), self.target.display(g), steps.join(" ; "))
    }
}

fn apply_slot(c: &Computad, word: &[EdgeId], pos: usize, cell: CellId) -> Option<Vec<EdgeId>> {
    let gen = &c.cells[cell];
    let k = gen.src.len();
    if pos + k > word.len() || word[pos..pos + k] != gen.src.edges[..] {
        return None;
    }
    let mut out = Vec::with_capacity(word.len() - k + gen.tgt.len());
    out.extend_from_slice(&word[..pos]);
    out.extend_from_slice(&gen.tgt.edges);
    out.extend_from_slice(&word[pos + k..]);
    Some(out)
}

// Node visited just before edge `pos` of the word (or the end node).
fn node_at(g: &Graph, start: NodeId, word: &[EdgeId], pos: usize) -> NodeId {
    if pos == 0 {
        start
    } else {
        g.edges[word[pos - 1]].tgt
    }
}

fn slot_applies(c: &Computad, start: NodeId, word: &[EdgeId], pos: usize, cell: CellId) -> bool {
    let gen = &c.cells[cell];
    pos <= word.len()
        && node_at(&c.base, start, word, pos) == gen.src.start
        && apply_slot(c, word, pos, cell).is_some()
}

fn slot_to_step(c: &Computad, cur: &Path, pos: usize, cell: CellId) -> Option<Step> {
    if !slot_applies(c, cur.start, &cur.edges, pos, cell) {
        return None;
    }
    let k = c.cells[cell].src.len();
    let left = Path { start: cur.start, edges: cur.edges[..pos].to_vec() };
    let right_start = node_at(&c.base, cur.start, &cur.edges, pos + k);
    let right = Path { start: right_start, edges: cur.edges[pos + k..].to_vec() };
    Some(Step { left, cell, right })
}

/// Ways to exchange adjacent slots `first, second` into `second', first'`.
fn swaps(c: &Computad, first: Slot, second: Slot) -> Vec<(Slot, Slot)> {
    let (p1, c1) = first;
    let (p2, c2) = second;
    let (k1, t1) = (c.cells[c1].src.len(), c.cells[c1].tgt.len());
    let (k2, t2) = (c.cells[c2].src.len(), c.cells[c2].tgt.len());
    let mut out = Vec::with_capacity(2);
    if p2 >= p1 + t1 {
        out.push(((p2 + k1 - t1, c2), (p1, c1)));
    }
    if p2 + k2 <= p1 {
        let swapped = ((p2, c2), (p1 + t2 - k2, c1));
        if !out.contains(&swapped) {
            out.push(swapped);
        }
    }
    out
}

/// Canonical representative of the interchange class of `w`: the
/// lexicographically least slot sequence in the class, slots ordered by
/// position in the running 1-cell and then by generator declaration order.
///
/// The class is enumerated exhaustively. Sorting by bubbling single steps to
/// the front is not enough once generators have an empty source or target:
/// `y ⇒ yx ⇒ x` and `y ⇒ xy ⇒ x` are equal only through `y ⇒ id ⇒ x`.
pub fn normalize_2cell(c: &Computad, w: &PastingWord) -> Result<PastingWord> {
    let w = PastingWord::new(c, w.source.clone(), w.target.clone(), w.steps.clone())?;
    let nf = interchange_class(c, &w).into_iter().min().expect("class contains w");
    PastingWord::from_slots(c, w.source.clone(), &nf)
}

pub fn two_cells_equal(c: &Computad, w1: &PastingWord, w2: &PastingWord) -> bool {
    if w1.source != w2.source || w1.target != w2.target || w1.steps.len() != w2.steps.len() {
        return false;
    }
    match (normalize_2cell(c, w1), normalize_2cell(c, w2)) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}

/// Interchange class of `w` by exhaustive closure under single swaps of
/// adjacent steps. Exponential; meant for cross-checking small words.
pub fn interchange_class(c: &Computad, w: &PastingWord) -> HashSet<Vec<(usize, CellId)>> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    let first = w.slots();
    seen.insert(first.clone());
    queue.push_back(first);
    while let Some(s) = queue.pop_front() {
        for i in 0..s.len().saturating_sub(1) {
            for (a, b) in swaps(c, s[i], s[i + 1]) {
                let mut t = s.clone();
                t[i] = a;
                t[i + 1] = b;
                if seen.insert(t.clone()) {
                    queue.push_back(t);
                }
            }
        }
    }
    seen
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LeqAnswer {
    /// A pasting of generators from the first path to the second.
    Yes(PastingWord),
    NoWithinBudget,
}

impl LeqAnswer {
    pub fn is_yes(&self) -> bool {
        matches!(self, LeqAnswer::Yes(_))
    }
}

pub const DEFAULT_LEQ_BUDGET: usize = 10_000;

/// Semi-decides `f ≤ g` in the locally preordered reflection: breadth-first
/// search over 1-cells with generators as rewrite rules. `budget` bounds the
/// number of visited 1-cells.
pub fn preorder_leq(c: &Computad, f: &Path, g: &Path, budget: usize) -> Result<LeqAnswer> {
    let gr = &c.base;
    if !f.parallel(g, gr) {
        return Err(FreeGenError::BoundaryMismatch(format!("{} and {} are not parallel", f.display(gr), g.display(gr))));
    }
    if f == g {
        return Ok(LeqAnswer::Yes(PastingWord::identity(f.clone())));
    }
    let start = f.start;
    let mut parent: HashMap<Vec<EdgeId>, (Vec<EdgeId>, Slot)> = HashMap::new();
    let mut queue = VecDeque::from([f.edges.clone()]);
    let mut visited = 1usize;
    parent.insert(f.edges.clone(), (Vec::new(), (usize::MAX, 0)));
    while let Some(word) = queue.pop_front() {
        for pos in 0..=word.len() {
            for cell in 0..c.cells.len() {
                if !slot_applies(c, start, &word, pos, cell) {
                    continue;
                }
                let next = apply_slot(c, &word, pos, cell).expect("applies");
                if parent.contains_key(&next) {
                    continue;
                }
                if visited >= budget {
                    return Ok(LeqAnswer::NoWithinBudget);
                }
                visited += 1;
                parent.insert(next.clone(), (word.clone(), (pos, cell)));
                if next == g.edges {
                    let mut slots = Vec::new();
                    let mut at = next;
                    while at != f.edges {
                        let (prev, slot) = parent[&at].clone();
                        slots.push(slot);
                        at = prev;
                    }
                    slots.reverse();
                    return PastingWord::from_slots(c, f.clone(), &slots).map(LeqAnswer::Yes);
                }
                queue.push_back(next);
            }
        }
    }
    Ok(LeqAnswer::NoWithinBudget)
}

impl fmt::Display for LeqAnswer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LeqAnswer::Yes(_) => f.write_str("yes"),
            LeqAnswer::NoWithinBudget => f.write_str("no within budget"),
        }
    }
}
