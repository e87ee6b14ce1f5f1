//! Finite hypergraphs with set semantics and a canonical edge order.

use std::cmp::Ordering;
use std::fmt;

use crate::dyadic::DyadicValue;
use crate::error::{Error, Result};

/// Dense 0-based vertex index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A set of at least two distinct vertices, stored sorted.
///
/// Edges order first by size and then lexicographically by members, which is
/// the canonical order used for storage and serialization.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    members: Box<[u32]>,
}

impl Edge {
    /// Builds an edge from any iteration order. `index` is only used to label errors.
    pub(crate) fn from_members(
        index: usize,
        members: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::RepeatedVertex {
                index,
                vertex: w[0],
            });
        }
        if members.len() < 2 {
            return Err(Error::EdgeTooSmall {
                index,
                size: members.len(),
            });
        }
        if let Some(&vertex) = members.last() {
            if vertex > u32::MAX as usize {
                return Err(Error::InvalidArgument(format!(
                    "vertex {vertex} does not fit in 32 bits"
                )));
            }
        }
        Ok(Edge {
            members: members.into_iter().map(|x| x as u32).collect(),
        })
    }

    pub fn new(members: impl IntoIterator<Item = usize>) -> Result<Self> {
        Self::from_members(0, members)
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.members.iter().map(|&x| VertexId(x))
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// Always false: an edge has at least two members.
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, vertex: usize) -> bool {
        self.members.binary_search(&(vertex as u32)).is_ok()
    }

    pub fn max_vertex(&self) -> usize {
        *self.members.last().expect("edges are nonempty") as usize
    }

    /// Bitmask of the members, if they all fit below bit 64.
    pub fn mask(&self) -> Option<u64> {
        if self.max_vertex() >= 64 {
            return None;
        }
        Some(self.members.iter().fold(0u64, |acc, &x| acc | (1u64 << x)))
    }
}

impl Ord for Edge {
    fn cmp(&self, other: &Self) -> Ordering {
        self.members
            .len()
            .cmp(&other.members.len())
            .then_with(|| self.members.cmp(&other.members))
    }
}

impl PartialOrd for Edge {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

/// A vertex count plus a duplicate-free, canonically ordered edge set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    v: usize,
    edges: Vec<Edge>,
}

impl Hypergraph {
    /// Validates and canonicalizes an edge list. Duplicate edges collapse.
    pub fn new<E, I>(v: usize, edges: E) -> Result<Self>
    where
        E: IntoIterator<Item = I>,
        I: IntoIterator<Item = usize>,
    {
        let mut out = Vec::new();
        for (index, members) in edges.into_iter().enumerate() {
            let edge = Edge::from_members(index, members)?;
            if edge.max_vertex() >= v {
                return Err(Error::VertexOutOfRange {
                    index,
                    vertex: edge.max_vertex(),
                    v,
                });
            }
            out.push(edge);
        }
        Ok(Self::from_edges_unchecked(v, out))
    }

    pub fn from_edges(v: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let edges: Vec<Edge> = edges.into_iter().collect();
        for (index, e) in edges.iter().enumerate() {
            if e.max_vertex() >= v {
                return Err(Error::VertexOutOfRange {
                    index,
                    vertex: e.max_vertex(),
                    v,
                });
            }
        }
        Ok(Self::from_edges_unchecked(v, edges))
    }

    fn from_edges_unchecked(v: usize, mut edges: Vec<Edge>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        Hypergraph { v, edges }
    }

    pub fn empty(v: usize) -> Self {
        Hypergraph {
            v,
            edges: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.v
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_edge(&self, edge: &Edge) -> bool {
        self.edges.binary_search(edge).is_ok()
    }

    /// Exact `Σ_e 2^{-|e|}`.
    pub fn q_value(&self) -> DyadicValue {
        self.edges.iter().fold(DyadicValue::zero(), |acc, e| {
            acc + DyadicValue::pow2_neg(e.len() as u32)
        })
    }

    pub fn min_edge_size(&self) -> Result<usize> {
        self.edges.first().map(Edge::len).ok_or(Error::NoEdges)
    }

    pub fn max_edge_size(&self) -> Option<usize> {
        self.edges.last().map(Edge::len)
    }

    /// Edge-set union on a shared vertex set.
    pub fn union(&self, other: &Hypergraph) -> Result<Hypergraph> {
        if self.v != other.v {
            return Err(Error::VertexCountMismatch {
                left: self.v,
                right: other.v,
            });
        }
        let edges = self
            .edges
            .iter()
            .chain(other.edges.iter())
            .cloned()
            .collect();
        Ok(Self::from_edges_unchecked(self.v, edges))
    }

    /// Copy with the `index`-th canonical edge removed.
    pub fn without_edge(&self, index: usize) -> Hypergraph {
        let mut edges = self.edges.clone();
        edges.remove(index);
        Hypergraph { v: self.v, edges }
    }

    /// Number of edges through each vertex.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.v];
        for e in &self.edges {
            for &x in e.members() {
                deg[x as usize] += 1;
            }
        }
        deg
    }
}

/// Convenience wrapper over [`Hypergraph::new`].
pub fn make_hypergraph<E, I>(v: usize, edges: E) -> Result<Hypergraph>
where
    E: IntoIterator<Item = I>,
    I: IntoIterator<Item = usize>,
{
    Hypergraph::new(v, edges)
}
