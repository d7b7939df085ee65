//! Test-fixture generator: graphs with known disjoint hierarchical-stars.

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::rng::{op_rng, Domain};

use super::HierarchicalStar;

/// Canonical coordinates of the planted instance before label shuffling:
/// star `s` occupies a contiguous block, center first, then the first layer,
/// then the second layer row by row. Extra edges are specified in these
/// coordinates.
#[derive(Clone, Copy, Debug)]
pub struct PlantLayout {
    pub count: usize,
    pub k1: usize,
    pub k2: usize,
}

impl PlantLayout {
    pub fn block(&self) -> usize {
        1 + self.k1 + self.k1 * self.k2
    }

    pub fn n(&self) -> usize {
        self.count * self.block()
    }

    pub fn center(&self, star: usize) -> u32 {
        (star * self.block()) as u32
    }

    pub fn first(&self, star: usize, i: usize) -> u32 {
        (star * self.block() + 1 + i) as u32
    }

    pub fn second(&self, star: usize, i: usize, j: usize) -> u32 {
        (star * self.block() + 1 + self.k1 + i * self.k2 + j) as u32
    }

    /// Builds the instance with canonical labels (no shuffling): centers keep
    /// the lowest index in their block, so greedy degree ties resolve toward
    /// the planted structure.
    pub fn build(
        &self,
        extra_edges: &[(u32, u32)],
    ) -> Result<(SimpleGraph, Vec<HierarchicalStar>)> {
        build_with_permutation(self, extra_edges, None)
    }
}

/// Builds a graph of `count` vertex-disjoint (k1, k2)-hierarchical-stars plus
/// `extra_edges` (canonical coordinates), then shuffles vertex labels with
/// the seed. Extra edges duplicating designated edges are deduplicated
/// silently. Returns the graph and the ground-truth stars in final labels.
/// Use [`PlantLayout::build`] when the canonical labels themselves matter.
pub fn plant_hstar_graph(
    count: usize,
    k1: usize,
    k2: usize,
    extra_edges: &[(u32, u32)],
    seed: u64,
) -> Result<(SimpleGraph, Vec<HierarchicalStar>)> {
    let layout = PlantLayout { count, k1, k2 };
    let mut perm: Vec<u32> = (0..layout.n() as u32).collect();
    perm.shuffle(&mut op_rng(Domain::Plant, seed));
    build_with_permutation(&layout, extra_edges, Some(&perm))
}

fn build_with_permutation(
    layout: &PlantLayout,
    extra_edges: &[(u32, u32)],
    perm: Option<&[u32]>,
) -> Result<(SimpleGraph, Vec<HierarchicalStar>)> {
    if layout.count == 0 || layout.k1 == 0 || layout.k2 == 0 {
        return Err(Error::InvalidStar(
            "count, k1, and k2 must all be at least 1".into(),
        ));
    }
    let n = layout.n();
    for &(u, v) in extra_edges {
        if u as usize >= n || v as usize >= n {
            return Err(Error::InvalidStar(format!(
                "extra edge ({u}, {v}) out of range for {n} vertices"
            )));
        }
        if u == v {
            return Err(Error::InvalidStar(format!("extra edge is a loop at {u}")));
        }
    }
    let relabel = |v: u32| perm.map_or(v, |p| p[v as usize]);

    let mut edges = Vec::new();
    let mut stars = Vec::with_capacity(layout.count);
    for s in 0..layout.count {
        let center = relabel(layout.center(s));
        let mut first_layer = Vec::with_capacity(layout.k1);
        let mut second_layer = Vec::with_capacity(layout.k1);
        for i in 0..layout.k1 {
            let u = relabel(layout.first(s, i));
            edges.push((center, u));
            let mut row = Vec::with_capacity(layout.k2);
            for j in 0..layout.k2 {
                let w = relabel(layout.second(s, i, j));
                edges.push((u, w));
                row.push(w);
            }
            first_layer.push(u);
            second_layer.push(row);
        }
        stars.push(HierarchicalStar {
            center,
            first_layer,
            second_layer,
        });
    }
    edges.extend(
        extra_edges
            .iter()
            .map(|&(u, v)| (relabel(u), relabel(v))),
    );
    let mut normalized: Vec<(u32, u32)> = edges
        .into_iter()
        .map(|(u, v)| if u < v { (u, v) } else { (v, u) })
        .collect();
    normalized.sort_unstable();
    normalized.dedup();
    let graph = SimpleGraph::from_dedup_edges(n, normalized);
    Ok((graph, stars))
}
