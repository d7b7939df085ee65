//! Configuration-model multigraphs, simple projections, and structural
//! diagnostics.

mod degree_event;
mod diameter;
mod io;
mod pairing;
mod powerlaw;

pub use degree_event::{check_degree_event, DegreeEventReport, EnvelopeConstants};
pub use diameter::{diameter, diameter_sampled_lower_bound, Diameter, EXACT_DIAMETER_MAX_N};
pub use io::{read_edge_list, write_edge_list, write_graph_with_metadata, GraphMetadata};
pub use pairing::pair_half_edges;
pub use powerlaw::{sample_degree_sequence, PowerLawSampler};

use crate::error::{Error, Result};

/// Degrees drawn i.i.d. from the power law `P(D=k) ∝ k^{-tau}`, `k ≥ 3`,
/// conditioned on an even sum by whole-vector rejection.
#[derive(Clone, Debug)]
pub struct DegreeSequence {
    pub degrees: Vec<u32>,
    pub tau: f64,
    pub seed: u64,
}

impl DegreeSequence {
    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    pub fn sum(&self) -> u64 {
        self.degrees.iter().map(|&d| d as u64).sum()
    }
}

impl std::ops::Deref for DegreeSequence {
    type Target = [u32];
    fn deref(&self) -> &[u32] {
        &self.degrees
    }
}

/// A half-edge is a (vertex, local slot) pair; slots run 0..degree(vertex).
pub type HalfEdge = (u32, u32);

/// Multigraph produced by uniform pairing of half-edges. Self-loops and
/// parallel edges are kept.
#[derive(Clone, Debug)]
pub struct Multigraph {
    n: usize,
    degrees: Vec<u32>,
    pairing: Vec<(HalfEdge, HalfEdge)>,
}

impl Multigraph {
    pub(crate) fn new(degrees: Vec<u32>, pairing: Vec<(HalfEdge, HalfEdge)>) -> Self {
        Multigraph {
            n: degrees.len(),
            degrees,
            pairing,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn pairing(&self) -> &[(HalfEdge, HalfEdge)] {
        &self.pairing
    }

    /// Vertex pairs (u ≤ v) of every edge, loops and multiplicity included.
    pub fn edge_pairs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.pairing.iter().map(|&((u, _), (v, _))| {
            if u <= v {
                (u, v)
            } else {
                (v, u)
            }
        })
    }
}

/// Simple undirected graph: no loops, no parallel edges, CSR adjacency with
/// sorted neighbor lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
    edges: Vec<(u32, u32)>,
}

impl SimpleGraph {
    /// Builds from distinct non-loop edges. Rejects loops, duplicates, and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut normalized: Vec<(u32, u32)> = Vec::new();
        for (u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(Error::InvalidGraphFile(format!(
                    "edge ({u}, {v}) out of range for n = {n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraphFile(format!("self-loop at {u}")));
            }
            normalized.push(if u < v { (u, v) } else { (v, u) });
        }
        normalized.sort_unstable();
        if normalized.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraphFile("duplicate edge".into()));
        }
        Ok(Self::from_dedup_edges(n, normalized))
    }

    /// `edges` must already be normalized (u < v), sorted, and distinct.
    pub(crate) fn from_dedup_edges(n: usize, edges: Vec<(u32, u32)>) -> Self {
        let mut deg = vec![0usize; n];
        for &(u, v) in &edges {
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut acc = 0;
        offsets.push(0);
        for d in &deg {
            acc += d;
            offsets.push(acc);
        }
        let mut cursor = offsets.clone();
        let mut neighbors = vec![0u32; 2 * edges.len()];
        for &(u, v) in &edges {
            neighbors[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            neighbors[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        for v in 0..n {
            neighbors[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        SimpleGraph {
            n,
            offsets,
            neighbors,
            edges,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: u32) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.neighbors[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Edges as (u, v) with u < v, sorted lexicographically.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Star graph: center 0 with `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let edges = (1..=leaves as u32).map(|v| (0, v)).collect();
        Self::from_dedup_edges(leaves + 1, edges)
    }

    /// Path graph on n vertices: 0-1-2-...
    pub fn path(n: usize) -> Self {
        let edges = (1..n as u32).map(|v| (v - 1, v)).collect();
        Self::from_dedup_edges(n, edges)
    }
}

/// Deletes self-loops and collapses parallel edges. Dynamics run on the
/// result, never on the multigraph itself.
pub fn simple_projection(g: &Multigraph) -> SimpleGraph {
    let mut edges: Vec<(u32, u32)> = g.edge_pairs().filter(|&(u, v)| u != v).collect();
    edges.sort_unstable();
    edges.dedup();
    SimpleGraph::from_dedup_edges(g.n(), edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projection_drops_loops_and_collapses_multiedges() {
        // self-loop at 2, triple edge {0,1}
        let pairing = vec![
            (((0, 0)), ((1, 0))),
            (((0, 1)), ((1, 1))),
            (((1, 2)), ((0, 2))),
            (((2, 0)), ((2, 1))),
        ];
        let g = Multigraph::new(vec![3, 3, 2], pairing);
        let s = simple_projection(&g);
        assert_eq!(s.edges(), &[(0, 1)]);
    }

    #[test]
    fn projection_of_simple_multigraph_is_identity() {
        let pairing = vec![((0, 0), (1, 0)), ((1, 1), (2, 0))];
        let g = Multigraph::new(vec![1, 2, 1], pairing);
        let s = simple_projection(&g);
        assert_eq!(s.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn projection_of_only_loops_is_empty() {
        let pairing = vec![((0, 0), (0, 1)), ((1, 0), (1, 1))];
        let g = Multigraph::new(vec![2, 2], pairing);
        let s = simple_projection(&g);
        assert!(s.edges().is_empty());
        assert_eq!(s.n(), 2);
    }

    #[test]
    fn projection_is_idempotent() {
        let pairing = vec![
            ((0, 0), (1, 0)),
            ((0, 1), (1, 1)),
            ((2, 0), (2, 1)),
            ((0, 2), (3, 0)),
        ];
        let g = Multigraph::new(vec![3, 2, 2, 1], pairing);
        let once = simple_projection(&g);
        // re-embed as a multigraph and project again
        let pairing2: Vec<_> = once
            .edges()
            .iter()
            .map(|&(u, v)| ((u, 0), (v, 0)))
            .collect();
        let again = simple_projection(&Multigraph::new(vec![0; once.n()], pairing2));
        assert_eq!(once.edges(), again.edges());
    }

    #[test]
    fn csr_adjacency_is_sorted_and_symmetric() {
        let g = SimpleGraph::from_edges(4, [(2, 1), (0, 3), (1, 0)]).unwrap();
        assert_eq!(g.neighbors(1), &[0, 2]);
        assert!(g.has_edge(3, 0));
        assert!(!g.has_edge(2, 3));
        assert_eq!(g.m(), 3);
    }

    #[test]
    fn from_edges_rejects_loops_and_duplicates() {
        assert!(SimpleGraph::from_edges(3, [(1, 1)]).is_err());
        assert!(SimpleGraph::from_edges(3, [(0, 1), (1, 0)]).is_err());
        assert!(SimpleGraph::from_edges(2, [(0, 5)]).is_err());
    }
}
