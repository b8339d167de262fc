use std::collections::VecDeque;

/// Sorted adjacency lists from an undirected edge list.
pub fn adjacency(node_count: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); node_count];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    adj
}

/// Flat zones by breadth-first search over equal-weight edges, each zone
/// sorted, zones ordered by their smallest node.
pub fn flat_zones<W: Ord + Copy>(weights: &[W], adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; weights.len()];
    let mut zones = Vec::new();
    for start in 0..weights.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut zone = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(n) = queue.pop_front() {
            for &m in &adj[n] {
                if !seen[m] && weights[m] == weights[n] {
                    seen[m] = true;
                    zone.push(m);
                    queue.push_back(m);
                }
            }
        }
        zone.sort_unstable();
        zones.push(zone);
    }
    zones
}

/// Per-node minimum label (0 outside minima). A flat zone is a minimum when
/// no node adjacent to it is lower; labels go 1..M by smallest member.
pub fn regional_minima<W: Ord + Copy>(weights: &[W], adj: &[Vec<usize>]) -> Vec<u32> {
    let mut labels = vec![0u32; weights.len()];
    let mut next = 0u32;
    for zone in flat_zones(weights, adj) {
        let altitude = weights[zone[0]];
        let has_lower = zone
            .iter()
            .any(|&n| adj[n].iter().any(|&m| weights[m] < altitude));
        if !has_lower {
            next += 1;
            for &n in &zone {
                labels[n] = next;
            }
        }
    }
    labels
}

/// Out-arcs of the drainage graph: each node outside the minima points to
/// all of its lowest neighbours, and equal-weight neighbours that are both
/// outside the minima are linked in both directions.
pub fn drainage_arcs<W: Ord + Copy>(
    weights: &[W],
    adj: &[Vec<usize>],
    minima: &[u32],
) -> Vec<Vec<usize>> {
    let mut arcs = vec![Vec::new(); weights.len()];
    for n in 0..weights.len() {
        if minima[n] != 0 {
            continue;
        }
        let Some(low) = adj[n].iter().map(|&m| weights[m]).min() else {
            continue;
        };
        for &m in &adj[n] {
            let reciprocal = weights[m] == weights[n] && minima[m] == 0;
            if weights[m] == low || reciprocal {
                arcs[n].push(m);
            }
        }
    }
    arcs
}
