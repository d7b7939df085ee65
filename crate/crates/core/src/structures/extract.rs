//! Greedy construction of vertex-disjoint hierarchical-stars.

use serde::{Deserialize, Serialize};

use crate::graph::SimpleGraph;

use super::HierarchicalStar;

/// Inclusive degree interval.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct DegreeWindow {
    pub min: f64,
    pub max: f64,
}

impl DegreeWindow {
    pub fn contains(&self, degree: usize) -> bool {
        let d = degree as f64;
        d >= self.min && d <= self.max
    }
}

/// Optional degree restrictions for candidate centers and layer vertices.
#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize)]
pub struct ExtractionWindows {
    pub center: Option<DegreeWindow>,
    pub layer: Option<DegreeWindow>,
}

impl ExtractionWindows {
    fn center_ok(&self, degree: usize) -> bool {
        self.center.is_none_or(|w| w.contains(degree))
    }

    fn layer_ok(&self, degree: usize) -> bool {
        self.layer.is_none_or(|w| w.contains(degree))
    }
}

/// Extracts up to `max_count` pairwise vertex-disjoint (k1, k2)-hierarchical-
/// stars by layered greedy exploration: candidate centers in descending
/// degree order (ties to the lower index), first-layer vertices claimed from
/// the center's unclaimed neighbors in the same order, second-layer vertices
/// from each first-layer vertex's unclaimed neighbors in ascending degree
/// order. A candidate that cannot complete all layers releases its claims.
/// No maximality is attempted; an empty result is valid.
pub fn extract_disjoint_hstars(
    g: &SimpleGraph,
    k1: f64,
    k2: f64,
    max_count: usize,
    windows: &ExtractionWindows,
) -> Vec<HierarchicalStar> {
    let need_k1 = (k1.ceil().max(1.0)) as usize;
    let need_k2 = (k2.ceil().max(1.0)) as usize;
    let n = g.n();
    let mut stars = Vec::new();
    if max_count == 0 || n == 0 {
        return stars;
    }

    let mut candidates: Vec<u32> = (0..n as u32)
        .filter(|&v| windows.center_ok(g.degree(v)))
        .collect();
    candidates.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));

    let mut claimed = vec![false; n];
    // round-stamped tentative claims avoid re-clearing between candidates
    let mut tentative = vec![0u32; n];
    let mut round = 0u32;

    'candidates: for &center in &candidates {
        if stars.len() == max_count {
            break;
        }
        if claimed[center as usize] {
            continue;
        }
        round += 1;
        tentative[center as usize] = round;

        let mut first_nbrs: Vec<u32> = g
            .neighbors(center)
            .iter()
            .copied()
            .filter(|&u| !claimed[u as usize] && windows.layer_ok(g.degree(u)))
            .collect();
        if first_nbrs.len() < need_k1 {
            continue;
        }
        first_nbrs.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));

        let mut first_layer = Vec::with_capacity(need_k1);
        let mut second_layer: Vec<Vec<u32>> = Vec::with_capacity(need_k1);
        for &u in &first_nbrs {
            if first_layer.len() == need_k1 {
                break;
            }
            if tentative[u as usize] == round {
                continue;
            }
            let mut leaves: Vec<u32> = g
                .neighbors(u)
                .iter()
                .copied()
                .filter(|&w| !claimed[w as usize] && tentative[w as usize] != round)
                .collect();
            if leaves.len() < need_k2 {
                continue;
            }
            leaves.sort_by(|&a, &b| g.degree(a).cmp(&g.degree(b)).then(a.cmp(&b)));
            leaves.truncate(need_k2);
            tentative[u as usize] = round;
            for &w in &leaves {
                tentative[w as usize] = round;
            }
            first_layer.push(u);
            second_layer.push(leaves);
        }
        if first_layer.len() < need_k1 {
            continue 'candidates; // claims roll back via the round stamp
        }
        let star = HierarchicalStar {
            center,
            first_layer,
            second_layer,
        };
        for v in star.vertices() {
            claimed[v as usize] = true;
        }
        stars.push(star);
    }
    stars
}
