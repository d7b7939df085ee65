//! Exact diameter by all-source BFS, with a sampled lower bound for graphs
//! too large for the exact contract.

use serde::{Deserialize, Serialize};

use crate::parallel;

use super::SimpleGraph;

/// Exact computation is refused above this vertex count; callers get a
/// sampled-eccentricity lower bound flagged as such instead.
pub const EXACT_DIAMETER_MAX_N: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Diameter {
    /// Exact hop-count diameter of a connected graph.
    Finite(u32),
    /// The graph is disconnected.
    Infinite,
    /// Eccentricity maximum over a sampled set of sources; the true diameter
    /// is at least this.
    LowerBound(u32),
}

fn bfs_eccentricity(g: &SimpleGraph, source: u32, dist: &mut [u32], queue: &mut Vec<u32>) -> Option<u32> {
    dist.fill(u32::MAX);
    queue.clear();
    dist[source as usize] = 0;
    queue.push(source);
    let mut head = 0;
    let mut ecc = 0;
    while head < queue.len() {
        let v = queue[head];
        head += 1;
        let dv = dist[v as usize];
        ecc = ecc.max(dv);
        for &u in g.neighbors(v) {
            if dist[u as usize] == u32::MAX {
                dist[u as usize] = dv + 1;
                queue.push(u);
            }
        }
    }
    if queue.len() == g.n() {
        Some(ecc)
    } else {
        None // unreachable vertex
    }
}

/// Exact max over vertex pairs of shortest-path hop distance, for
/// `n <= EXACT_DIAMETER_MAX_N`. Disconnected graphs report
/// [`Diameter::Infinite`]; larger graphs fall back to
/// [`diameter_sampled_lower_bound`].
pub fn diameter(g: &SimpleGraph) -> Diameter {
    let n = g.n();
    if n == 0 {
        return Diameter::Finite(0);
    }
    if n > EXACT_DIAMETER_MAX_N {
        return diameter_sampled_lower_bound(g, 64);
    }
    // connectivity first: one BFS decides Infinite without the full sweep
    let mut dist = vec![0u32; n];
    let mut queue = Vec::with_capacity(n);
    if bfs_eccentricity(g, 0, &mut dist, &mut queue).is_none() {
        return Diameter::Infinite;
    }
    let ecc_max = parallel::map_reduce_max(n, || (vec![0u32; n], Vec::with_capacity(n)), |(dist, queue), v| {
        bfs_eccentricity(g, v as u32, dist, queue).expect("connected")
    });
    Diameter::Finite(ecc_max.expect("nonempty vertex set"))
}

/// Max eccentricity over `samples` deterministic evenly spaced sources,
/// reported as an explicit lower bound. Disconnected graphs still report
/// [`Diameter::Infinite`].
pub fn diameter_sampled_lower_bound(g: &SimpleGraph, samples: usize) -> Diameter {
    let n = g.n();
    if n == 0 {
        return Diameter::Finite(0);
    }
    let mut dist = vec![0u32; n];
    let mut queue = Vec::with_capacity(n);
    if bfs_eccentricity(g, 0, &mut dist, &mut queue).is_none() {
        return Diameter::Infinite;
    }
    let samples = samples.clamp(1, n);
    let stride = n / samples;
    let sources: Vec<usize> = (0..samples).map(|i| i * stride).collect();
    let ecc_max = parallel::map_reduce_max(sources.len(), || (vec![0u32; n], Vec::with_capacity(n)), |(dist, queue), i| {
        bfs_eccentricity(g, sources[i] as u32, dist, queue).expect("connected")
    });
    Diameter::LowerBound(ecc_max.expect("nonempty sample set"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_of_four_has_diameter_three() {
        assert_eq!(diameter(&SimpleGraph::path(4)), Diameter::Finite(3));
    }

    #[test]
    fn star_has_diameter_two() {
        for k in [2usize, 5, 17] {
            assert_eq!(diameter(&SimpleGraph::star(k)), Diameter::Finite(2));
        }
    }

    #[test]
    fn two_disjoint_edges_are_disconnected() {
        let g = SimpleGraph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(diameter(&g), Diameter::Infinite);
    }

    #[test]
    fn single_vertex_has_diameter_zero() {
        let g = SimpleGraph::from_edges(1, []).unwrap();
        assert_eq!(diameter(&g), Diameter::Finite(0));
    }

    #[test]
    fn isolated_vertex_disconnects() {
        let g = SimpleGraph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(diameter(&g), Diameter::Infinite);
    }

    #[test]
    fn lower_bound_flag_on_samples() {
        let g = SimpleGraph::path(50);
        match diameter_sampled_lower_bound(&g, 8) {
            Diameter::LowerBound(d) => assert!(d <= 49 && d >= 25),
            other => panic!("expected lower bound, got {other:?}"),
        }
    }
}
