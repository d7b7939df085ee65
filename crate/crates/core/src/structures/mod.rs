//! Hierarchical-star structures and lit predicates.
//!
//! A (k1, k2)-hierarchical-star is a center adjacent to ceil(k1) first-layer
//! vertices, each adjacent to its own ceil(k2) private second-layer vertices;
//! only those designated edges belong to the structure, and the host graph
//! may carry any number of additional edges among the same vertices.

mod extract;
mod ladder;
mod plant;

pub use extract::{extract_disjoint_hstars, DegreeWindow, ExtractionWindows};
pub use ladder::{exponent_ladder, EpsilonLadder, LadderKind};
pub use plant::{plant_hstar_graph, PlantLayout};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::state::Configuration;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HierarchicalStar {
    pub center: u32,
    pub first_layer: Vec<u32>,
    /// Row i holds the private second-layer vertices of `first_layer[i]`;
    /// all rows have equal length.
    pub second_layer: Vec<Vec<u32>>,
}

impl HierarchicalStar {
    /// Number of first-layer vertices, ceil(k1).
    pub fn k1(&self) -> usize {
        self.first_layer.len()
    }

    /// Second-layer vertices per first-layer vertex, ceil(k2).
    pub fn k2(&self) -> usize {
        self.second_layer.first().map_or(0, Vec::len)
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> + '_ {
        std::iter::once(self.center)
            .chain(self.first_layer.iter().copied())
            .chain(self.second_layer.iter().flatten().copied())
    }

    /// The designated star edges and nothing else: center to each first-layer
    /// vertex, and each first-layer vertex to its own second-layer row.
    pub fn designated_edges(&self) -> Vec<(u32, u32)> {
        let mut edges = Vec::with_capacity(self.k1() * (1 + self.k2()));
        for (i, &u) in self.first_layer.iter().enumerate() {
            edges.push(ordered(self.center, u));
            for &w in &self.second_layer[i] {
                edges.push(ordered(u, w));
            }
        }
        edges
    }

    /// Checks shape, pairwise distinctness, and adjacency in the host graph.
    pub fn validate(&self, g: &SimpleGraph) -> Result<()> {
        if self.first_layer.is_empty() {
            return Err(Error::InvalidStar("empty first layer".into()));
        }
        if self.second_layer.len() != self.first_layer.len() {
            return Err(Error::InvalidStar(format!(
                "{} second-layer rows for {} first-layer vertices",
                self.second_layer.len(),
                self.first_layer.len()
            )));
        }
        let k2 = self.second_layer[0].len();
        if k2 == 0 || self.second_layer.iter().any(|row| row.len() != k2) {
            return Err(Error::InvalidStar(
                "second-layer rows must be nonempty and of equal length".into(),
            ));
        }
        let mut seen = std::collections::HashSet::new();
        for v in self.vertices() {
            if v as usize >= g.n() {
                return Err(Error::InvalidStar(format!("vertex {v} not in host graph")));
            }
            if !seen.insert(v) {
                return Err(Error::InvalidStar(format!("vertex {v} appears twice")));
            }
        }
        for (i, &u) in self.first_layer.iter().enumerate() {
            if !g.has_edge(self.center, u) {
                return Err(Error::InvalidStar(format!(
                    "center {} not adjacent to first-layer vertex {u}",
                    self.center
                )));
            }
            for &w in &self.second_layer[i] {
                if !g.has_edge(u, w) {
                    return Err(Error::InvalidStar(format!(
                        "first-layer vertex {u} not adjacent to second-layer vertex {w}"
                    )));
                }
            }
        }
        Ok(())
    }
}

fn ordered(u: u32, v: u32) -> (u32, u32) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Is `v` m-lit among `among` in `config`: infected itself, or at least `m`
/// of `among` infected. `among` must be a duplicate-free subset of `v`'s
/// neighbors.
pub fn is_lit(
    config: &Configuration,
    g: &SimpleGraph,
    v: u32,
    among: &[u32],
    m: f64,
) -> Result<bool> {
    let mut seen = std::collections::HashSet::new();
    for &u in among {
        if !g.has_edge(v, u) {
            return Err(Error::NotANeighbor { vertex: u, center: v });
        }
        if !seen.insert(u) {
            return Err(Error::NotANeighbor { vertex: u, center: v });
        }
    }
    Ok(lit_unchecked(config, v, among, m))
}

/// The lit predicate without neighbor validation; callers guarantee `among`
/// is a set of neighbors of `v`.
pub(crate) fn lit_unchecked(config: &Configuration, v: u32, among: &[u32], m: f64) -> bool {
    if config.is_infected(v) {
        return true;
    }
    let infected = among.iter().filter(|&&u| config.is_infected(u)).count();
    infected as f64 >= m
}

/// Is the center (k3, k4)-HS-lit: at least ceil(k3) first-layer vertices are
/// k4-lit among their own second-layer rows. The star is validated against
/// the host graph first.
pub fn is_hs_lit(
    config: &Configuration,
    g: &SimpleGraph,
    hs: &HierarchicalStar,
    k3: f64,
    k4: f64,
) -> Result<bool> {
    hs.validate(g)?;
    Ok(hs_lit_unchecked(config, hs, k3, k4))
}

pub(crate) fn hs_lit_unchecked(
    config: &Configuration,
    hs: &HierarchicalStar,
    k3: f64,
    k4: f64,
) -> bool {
    let lit = hs
        .first_layer
        .iter()
        .zip(&hs.second_layer)
        .filter(|(&u, row)| lit_unchecked(config, u, row, k4))
        .count();
    lit as f64 >= k3.ceil()
}
