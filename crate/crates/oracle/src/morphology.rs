use std::collections::VecDeque;

/// Reconstruction by erosion of `ceiling` above `relief`, by iterating
/// `f <- max(relief, min over the closed neighbourhood of f)` until nothing
/// changes.
pub fn reconstruct_by_erosion_fixpoint<W: Ord + Copy>(
    relief: &[W],
    ceiling: &[W],
    adj: &[Vec<usize>],
) -> Vec<W> {
    let mut current = ceiling.to_vec();
    loop {
        let next: Vec<W> = (0..current.len())
            .map(|p| {
                let eroded = adj[p]
                    .iter()
                    .map(|&q| current[q])
                    .fold(current[p], |a, b| a.min(b));
                eroded.max(relief[p])
            })
            .collect();
        if next == current {
            return current;
        }
        current = next;
    }
}

/// Step distances from `sources` through nodes where `inside` holds.
/// Sources start at 1; unreachable nodes are `None`.
pub fn geodesic_distances(
    adj: &[Vec<usize>],
    inside: &[bool],
    sources: &[usize],
) -> Vec<Option<u32>> {
    let mut dist = vec![None; adj.len()];
    let mut queue = VecDeque::new();
    for &s in sources {
        dist[s] = Some(1);
        queue.push_back(s);
    }
    while let Some(p) = queue.pop_front() {
        let d = dist[p].unwrap();
        for &q in &adj[p] {
            if inside[q] && dist[q].is_none() {
                dist[q] = Some(d + 1);
                queue.push_back(q);
            }
        }
    }
    dist
}
