//! Proper red/blue colourings: exhaustive enumeration for small vertex counts
//! and a backtracking decision procedure with unit propagation for the rest.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph};

/// Default ceiling on the vertex count for exhaustive enumeration.
pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 28;

/// Environment variable overriding [`DEFAULT_EXHAUSTIVE_LIMIT`].
pub const EXHAUSTIVE_LIMIT_ENV: &str = "PROPB_ENUM_LIMIT";

/// Bitmask enumeration works on `u64` masks.
const HARD_LIMIT: usize = 63;

/// Effective exhaustive limit: the environment override if it parses, else the default.
pub fn exhaustive_limit() -> usize {
    std::env::var(EXHAUSTIVE_LIMIT_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .map(|n| n.min(HARD_LIMIT))
        .unwrap_or(DEFAULT_EXHAUSTIVE_LIMIT)
}

/// A red/blue assignment; the red class is stored, blue is its complement.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Colouring {
    red: FixedBitSet,
}

impl Colouring {
    pub fn new(v: usize, red: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut set = FixedBitSet::with_capacity(v);
        for x in red {
            if x >= v {
                return Err(Error::InvalidArgument(format!(
                    "red vertex {x} out of range for {v} vertices"
                )));
            }
            set.insert(x);
        }
        Ok(Colouring { red: set })
    }

    pub fn all_blue(v: usize) -> Self {
        Colouring {
            red: FixedBitSet::with_capacity(v),
        }
    }

    /// Colouring whose red class is the set bits of `mask` (`v` ≤ 64).
    pub fn from_mask(v: usize, mask: u64) -> Self {
        debug_assert!(v <= 64 && (v == 64 || mask >> v == 0));
        let mut red = FixedBitSet::with_capacity(v);
        let mut m = mask;
        while m != 0 {
            red.insert(m.trailing_zeros() as usize);
            m &= m - 1;
        }
        Colouring { red }
    }

    pub fn vertex_count(&self) -> usize {
        self.red.len()
    }

    pub fn is_red(&self, x: usize) -> bool {
        self.red.contains(x)
    }

    pub fn red_count(&self) -> usize {
        self.red.count_ones(..)
    }

    pub fn blue_count(&self) -> usize {
        self.vertex_count() - self.red_count()
    }

    pub fn red_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.red.ones()
    }

    pub fn blue_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.red.zeroes()
    }

    /// Swap the two colours.
    pub fn complement(&self) -> Colouring {
        let mut red = self.red.clone();
        red.toggle_range(..);
        Colouring { red }
    }

    pub fn mask(&self) -> Option<u64> {
        if self.vertex_count() > 64 {
            return None;
        }
        Some(self.red.ones().fold(0u64, |m, x| m | (1 << x)))
    }

    fn edge_is_monochromatic(&self, e: &Edge) -> bool {
        let first = self.is_red(e.members()[0] as usize);
        e.members()
            .iter()
            .all(|&x| self.is_red(x as usize) == first)
    }
}

/// Orders by vertex count, then by the red class read as a binary number
/// (vertex `i` is bit `i`).
impl Ord for Colouring {
    fn cmp(&self, other: &Self) -> Ordering {
        self.vertex_count()
            .cmp(&other.vertex_count())
            .then_with(|| {
                self.red
                    .as_slice()
                    .iter()
                    .rev()
                    .cmp(other.red.as_slice().iter().rev())
            })
    }
}

impl PartialOrd for Colouring {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Colouring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("red={")?;
        for (i, x) in self.red.ones().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Colouring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Colouring(v={}, {})", self.vertex_count(), self)
    }
}

fn check_sizes(h: &Hypergraph, c: &Colouring) -> Result<()> {
    if h.vertex_count() != c.vertex_count() {
        return Err(Error::VertexCountMismatch {
            left: h.vertex_count(),
            right: c.vertex_count(),
        });
    }
    Ok(())
}

/// True iff no edge is entirely red or entirely blue.
pub fn is_proper(h: &Hypergraph, c: &Colouring) -> Result<bool> {
    check_sizes(h, c)?;
    Ok(!h.edges().iter().any(|e| c.edge_is_monochromatic(e)))
}

/// Edges that are entirely red or entirely blue under `c`, in canonical order.
pub fn monochromatic_edges(h: &Hypergraph, c: &Colouring) -> Result<Vec<Edge>> {
    check_sizes(h, c)?;
    Ok(h.edges()
        .iter()
        .filter(|e| c.edge_is_monochromatic(e))
        .cloned()
        .collect())
}

/// Result of an exhaustive scan over all `2^v` colourings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationReport {
    pub total_proper: BigUint,
    /// Those with `|red| = |blue|`.
    pub balanced_count: BigUint,
    /// Every proper colouring in ascending [`Colouring`] order, when requested.
    pub colourings: Option<Vec<Colouring>>,
}

/// Exhaustive enumerator. The scan fixes vertex 0 blue, splits the remaining
/// space into `2^split_bits` prefix blocks scanned in parallel, and doubles
/// every count. Merging is in block order, so results do not depend on the
/// number of worker threads or on `split_bits`.
#[derive(Debug, Clone, Copy)]
pub struct Enumerator {
    pub limit: usize,
    pub split_bits: u32,
}

impl Default for Enumerator {
    fn default() -> Self {
        Enumerator {
            limit: exhaustive_limit(),
            split_bits: 8,
        }
    }
}

#[derive(Default)]
struct BlockResult {
    proper: u64,
    balanced: u64,
    masks: Vec<u64>,
}

struct Scan<'a> {
    v: usize,
    /// `by_last[i]` holds the masks of edges whose largest member is `i`.
    by_last: &'a [Vec<u64>],
    materialize: bool,
}

impl Scan<'_> {
    fn violates(&self, vertex: usize, mask: u64) -> bool {
        self.by_last[vertex]
            .iter()
            .any(|&e| mask & e == 0 || mask & e == e)
    }

    fn dfs(&self, vertex: usize, mask: u64, out: &mut BlockResult) {
        if vertex == self.v {
            out.proper += 1;
            if self.v.is_multiple_of(2) && mask.count_ones() as usize == self.v / 2 {
                out.balanced += 1;
            }
            if self.materialize {
                out.masks.push(mask);
            }
            return;
        }
        for bit in [0u64, 1u64 << vertex] {
            let next = mask | bit;
            if !self.violates(vertex, next) {
                self.dfs(vertex + 1, next, out);
            }
        }
    }

    /// Scan the block whose vertices `1..=depth` are coloured by `prefix`.
    fn block(&self, depth: usize, prefix: u64) -> BlockResult {
        let mut out = BlockResult::default();
        let mask = prefix << 1;
        if (0..=depth).any(|x| self.violates(x, mask)) {
            return out;
        }
        self.dfs(depth + 1, mask, &mut out);
        out
    }
}

impl Enumerator {
    pub fn with_limit(limit: usize) -> Self {
        Enumerator {
            limit: limit.min(HARD_LIMIT),
            ..Self::default()
        }
    }

    pub fn enumerate(&self, h: &Hypergraph, materialize: bool) -> Result<EnumerationReport> {
        let v = h.vertex_count();
        if v > self.limit.min(HARD_LIMIT) {
            return Err(Error::EnumerationLimit {
                v,
                limit: self.limit,
            });
        }
        if v == 0 {
            // edges need two vertices, so the single empty colouring is proper
            return Ok(EnumerationReport {
                total_proper: 1u32.into(),
                balanced_count: 1u32.into(),
                colourings: materialize.then(|| vec![Colouring::all_blue(0)]),
            });
        }

        let mut by_last = vec![Vec::new(); v];
        for e in h.edges() {
            by_last[e.max_vertex()].push(e.mask().expect("v < 64"));
        }
        let scan = Scan {
            v,
            by_last: &by_last,
            materialize,
        };
        let depth = (self.split_bits as usize).min(v - 1);
        let blocks: Vec<BlockResult> = (0..1u64 << depth)
            .into_par_iter()
            .map(|prefix| scan.block(depth, prefix))
            .collect();

        let half: u64 = blocks.iter().map(|b| b.proper).sum();
        let half_balanced: u64 = blocks.iter().map(|b| b.balanced).sum();
        let colourings = materialize.then(|| {
            let full = if v == 64 { u64::MAX } else { (1u64 << v) - 1 };
            let mut masks: Vec<u64> = blocks
                .iter()
                .flat_map(|b| b.masks.iter().flat_map(|&m| [m, full ^ m]))
                .collect();
            masks.sort_unstable();
            masks
                .into_iter()
                .map(|m| Colouring::from_mask(v, m))
                .collect()
        });
        Ok(EnumerationReport {
            total_proper: BigUint::from(half) * 2u32,
            balanced_count: BigUint::from(half_balanced) * 2u32,
            colourings,
        })
    }
}

/// Exhaustive count (and optional list) of proper colourings under the
/// default limit.
pub fn enumerate_proper(h: &Hypergraph, materialize: bool) -> Result<EnumerationReport> {
    Enumerator::default().enumerate(h, materialize)
}

/// Outcome of [`is_two_colourable`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    /// First proper colouring found under the fixed branching order, if any.
    pub witness: Option<Colouring>,
    /// Branching decisions made.
    pub decisions: u64,
}

impl Decision {
    pub fn colourable(&self) -> bool {
        self.witness.is_some()
    }
}

const UNSET: u8 = 2;

struct Solver<'a> {
    edges: Vec<&'a [u32]>,
    incidence: Vec<Vec<usize>>,
    colour: Vec<u8>,
    /// `count[e][c]`: members of edge `e` currently coloured `c` (0 blue, 1 red).
    count: Vec<[u32; 2]>,
    trail: Vec<usize>,
    queue: Vec<(usize, u8)>,
}

impl<'a> Solver<'a> {
    fn new(h: &'a Hypergraph) -> Self {
        let v = h.vertex_count();
        let edges: Vec<&[u32]> = h.edges().iter().map(Edge::members).collect();
        let mut incidence = vec![Vec::new(); v];
        for (i, e) in edges.iter().enumerate() {
            for &x in e.iter() {
                incidence[x as usize].push(i);
            }
        }
        Solver {
            count: vec![[0, 0]; edges.len()],
            edges,
            incidence,
            colour: vec![UNSET; v],
            trail: Vec::new(),
            queue: Vec::new(),
        }
    }

    /// Assign and propagate. Returns false on a monochromatic edge.
    fn assign(&mut self, vertex: usize, c: u8) -> bool {
        self.queue.clear();
        self.queue.push((vertex, c));
        while let Some((x, c)) = self.queue.pop() {
            match self.colour[x] {
                UNSET => {}
                existing if existing == c => continue,
                _ => return false,
            }
            self.colour[x] = c;
            self.trail.push(x);
            let ci = c as usize;
            // every incident count is bumped before bailing out so `undo` stays exact
            let mut conflict = false;
            for &e in &self.incidence[x] {
                let size = self.edges[e].len() as u32;
                let counts = &mut self.count[e];
                counts[ci] += 1;
                if counts[ci] == size {
                    conflict = true;
                }
                if conflict {
                    continue;
                }
                // all but one member share colour c: the last one must differ
                if counts[ci] == size - 1 && counts[1 - ci] == 0 {
                    let last = self.edges[e]
                        .iter()
                        .map(|&y| y as usize)
                        .find(|&y| self.colour[y] == UNSET)
                        .expect("exactly one member unassigned");
                    self.queue.push((last, 1 - c));
                }
            }
            if conflict {
                return false;
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().expect("trail longer than mark");
            let ci = self.colour[x] as usize;
            for &e in &self.incidence[x] {
                self.count[e][ci] -= 1;
            }
            self.colour[x] = UNSET;
        }
    }

    fn solve(&mut self) -> Decision {
        struct Frame {
            vertex: usize,
            mark: usize,
            colour: u8,
        }
        let v = self.colour.len();
        let mut stack: Vec<Frame> = Vec::new();
        let mut decisions = 0u64;
        let mut cursor = 0usize;
        loop {
            while cursor < v && self.colour[cursor] != UNSET {
                cursor += 1;
            }
            if cursor == v {
                let witness = Colouring::new(v, (0..v).filter(|&x| self.colour[x] == 1))
                    .expect("indices are in range");
                return Decision {
                    witness: Some(witness),
                    decisions,
                };
            }
            decisions += 1;
            let mark = self.trail.len();
            stack.push(Frame {
                vertex: cursor,
                mark,
                colour: 0,
            });
            if self.assign(cursor, 0) {
                continue;
            }
            // conflict: flip the deepest blue decision, popping exhausted ones
            loop {
                let Some(frame) = stack.last_mut() else {
                    return Decision {
                        witness: None,
                        decisions,
                    };
                };
                self.undo(frame.mark);
                if frame.colour == 0 {
                    frame.colour = 1;
                    let (vertex, mark) = (frame.vertex, frame.mark);
                    if self.assign(vertex, 1) {
                        cursor = vertex;
                        break;
                    }
                    self.undo(mark);
                } else {
                    stack.pop();
                }
            }
        }
    }
}

/// Decide 2-colourability by backtracking over vertices in index order,
/// blue first, with unit propagation: once all but one member of an edge share
/// a colour, the last member takes the other colour.
pub fn is_two_colourable(h: &Hypergraph) -> Decision {
    Solver::new(h).solve()
}

/// Partition a complement-closed, duplicate-free list into opposite pairs.
/// Each pair leads with the member whose red class contains vertex 0; pairs
/// are sorted by that member.
pub fn pair_opposites(colourings: &[Colouring]) -> Result<Vec<(Colouring, Colouring)>> {
    let mut seen = HashSet::with_capacity(colourings.len());
    for c in colourings {
        if !seen.insert(c) {
            return Err(Error::DuplicateColouring(c.to_string()));
        }
    }
    if let Some(c) = colourings
        .iter()
        .find(|c| c.vertex_count() != colourings[0].vertex_count())
    {
        return Err(Error::VertexCountMismatch {
            left: colourings[0].vertex_count(),
            right: c.vertex_count(),
        });
    }
    let mut pairs = Vec::with_capacity(colourings.len() / 2);
    for c in colourings {
        let opposite = c.complement();
        if &opposite == c {
            return Err(Error::SelfComplementary(c.to_string()));
        }
        if !seen.contains(&opposite) {
            return Err(Error::NotComplementClosed(format!(
                "{c} has no complement in the list"
            )));
        }
        if c.is_red(0) {
            pairs.push((c.clone(), opposite));
        }
    }
    pairs.sort();
    Ok(pairs)
}
