//! Uniform random pairing of half-edges.

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::rng::{op_rng, Domain};

use super::{HalfEdge, Multigraph};

/// Pairs all half-edges uniformly at random: a Fisher-Yates shuffle of the
/// half-edge array followed by pairing consecutive entries, which realizes a
/// uniform perfect matching in O(m). Deterministic given `(degrees, seed)`.
pub fn pair_half_edges(degrees: &[u32], seed: u64) -> Result<Multigraph> {
    let sum: u64 = degrees.iter().map(|&d| d as u64).sum();
    if sum % 2 != 0 {
        return Err(Error::OddDegreeSum { sum });
    }
    let mut half_edges: Vec<HalfEdge> = Vec::with_capacity(sum as usize);
    for (v, &d) in degrees.iter().enumerate() {
        for slot in 0..d {
            half_edges.push((v as u32, slot));
        }
    }
    let mut rng = op_rng(Domain::HalfEdgePairing, seed);
    half_edges.shuffle(&mut rng);
    let pairing = half_edges
        .chunks_exact(2)
        .map(|pair| (pair[0], pair[1]))
        .collect();
    Ok(Multigraph::new(degrees.to_vec(), pairing))
}
