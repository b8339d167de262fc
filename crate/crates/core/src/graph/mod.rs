//! Node-weighted graphs and the steepest watershed on them.

mod drainage;
pub mod text;

pub use drainage::{
    lexicographic_compare, steepest_watershed_graph, DrainageGraph, DrainagePath, GraphWatershed,
    Steepness,
};

use std::collections::VecDeque;

use num_traits::Bounded;

use crate::error::{Error, Result};

/// Undirected graph with one totally ordered weight (altitude) per node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph<W> {
    weights: Vec<W>,
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl<W: Copy + Ord> WeightedGraph<W> {
    /// Builds the graph, rejecting self-loops, repeated edges (in either
    /// orientation) and endpoints past `weights.len()`.
    pub fn new(weights: Vec<W>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = weights.len();
        let mut adjacency = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::EdgeOutOfRange(a, b));
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for (node, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge(node.min(w[0]), node.max(w[0])));
            }
        }
        Ok(WeightedGraph {
            weights,
            adjacency,
            edge_count: edges.len(),
        })
    }

    /// Node weights from edge weights: each node takes the smallest weight
    /// among its incident edges, isolated nodes the largest value of `W`.
    pub fn from_edge_weights(node_count: usize, edges: &[(usize, usize, W)]) -> Result<Self>
    where
        W: Bounded,
    {
        let mut weights = vec![W::max_value(); node_count];
        for &(a, b, w) in edges {
            if a >= node_count || b >= node_count {
                return Err(Error::EdgeOutOfRange(a, b));
            }
            weights[a] = weights[a].min(w);
            weights[b] = weights[b].min(w);
        }
        let pairs: Vec<_> = edges.iter().map(|&(a, b, _)| (a, b)).collect();
        Self::new(weights, &pairs)
    }

    pub fn node_count(&self) -> usize {
        self.weights.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn weights(&self) -> &[W] {
        &self.weights
    }

    pub fn weight(&self, node: usize) -> W {
        self.weights[node]
    }

    /// Sorted neighbours of `node`.
    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adjacency[node]
    }

    /// Every edge once, as `(a, b)` with `a < b`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(a, list)| list.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
    }
}

/// Maximal connected set of nodes sharing one altitude.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatZone<W> {
    /// Members in ascending order.
    pub nodes: Vec<usize>,
    pub altitude: W,
}

/// A flat zone whose outside neighbours are all strictly higher.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionalMinimum<W> {
    pub label: u32,
    pub nodes: Vec<usize>,
    pub altitude: W,
}

/// Partition of the nodes into flat zones, ordered by smallest member.
pub fn find_flat_zones<W: Copy + Ord>(graph: &WeightedGraph<W>) -> Result<Vec<FlatZone<W>>> {
    if graph.node_count() == 0 {
        return Err(Error::EmptyInput);
    }
    let mut seen = vec![false; graph.node_count()];
    let mut zones = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..graph.node_count() {
        if seen[start] {
            continue;
        }
        let altitude = graph.weight(start);
        seen[start] = true;
        queue.push_back(start);
        let mut nodes = Vec::new();
        while let Some(n) = queue.pop_front() {
            nodes.push(n);
            for &m in graph.neighbors(n) {
                if !seen[m] && graph.weight(m) == altitude {
                    seen[m] = true;
                    queue.push_back(m);
                }
            }
        }
        nodes.sort_unstable();
        zones.push(FlatZone { nodes, altitude });
    }
    Ok(zones)
}

/// Regional minima labelled `1..=M` in order of their smallest node.
pub fn find_regional_minima<W: Copy + Ord>(
    graph: &WeightedGraph<W>,
) -> Result<Vec<RegionalMinimum<W>>> {
    let zones = find_flat_zones(graph)?;
    let mut minima = Vec::new();
    for zone in zones {
        let has_lower = zone.nodes.iter().any(|&n| {
            graph
                .neighbors(n)
                .iter()
                .any(|&m| graph.weight(m) < zone.altitude)
        });
        if !has_lower {
            minima.push(RegionalMinimum {
                label: minima.len() as u32 + 1,
                nodes: zone.nodes,
                altitude: zone.altitude,
            });
        }
    }
    Ok(minima)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn path(weights: &[u32]) -> WeightedGraph<u32> {
        let edges: Vec<_> = (1..weights.len()).map(|i| (i - 1, i)).collect();
        WeightedGraph::new(weights.to_vec(), &edges).unwrap()
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            WeightedGraph::new(vec![0u8; 2], &[(0, 2)]).unwrap_err(),
            Error::EdgeOutOfRange(0, 2)
        );
        assert_eq!(
            WeightedGraph::new(vec![0u8; 2], &[(1, 1)]).unwrap_err(),
            Error::SelfLoop(1)
        );
        assert_eq!(
            WeightedGraph::new(vec![0u8; 2], &[(0, 1), (1, 0)]).unwrap_err(),
            Error::DuplicateEdge(0, 1)
        );
    }

    #[test]
    fn empty_graph_has_no_zones() {
        let g = WeightedGraph::<u8>::new(vec![], &[]).unwrap();
        assert_eq!(find_flat_zones(&g).unwrap_err(), Error::EmptyInput);
        assert_eq!(find_regional_minima(&g).unwrap_err(), Error::EmptyInput);
    }

    #[test]
    fn uniform_graph_is_one_zone() {
        let g = path(&[4, 4, 4, 4, 4]);
        let zones = find_flat_zones(&g).unwrap();
        assert_eq!(zones.len(), 1);
        assert_eq!(zones[0].nodes, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn path_zones() {
        let zones = find_flat_zones(&path(&[1, 2, 2, 1])).unwrap();
        let sets: Vec<_> = zones.into_iter().map(|z| z.nodes).collect();
        assert_eq!(sets, vec![vec![0], vec![1, 2], vec![3]]);
    }

    #[test]
    fn minima_on_paths() {
        let m = find_regional_minima(&path(&[3, 2, 1, 0])).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!((m[0].label, m[0].nodes.clone()), (1, vec![3]));

        let m = find_regional_minima(&path(&[0, 1, 0])).unwrap();
        let sets: Vec<_> = m.iter().map(|r| (r.label, r.nodes.clone())).collect();
        assert_eq!(sets, vec![(1, vec![0]), (2, vec![2])]);
    }

    #[test]
    fn edge_weight_conversion_takes_smallest_incident() {
        let g = WeightedGraph::from_edge_weights(4, &[(0, 1, 5u32), (1, 2, 3), (2, 0, 7)]).unwrap();
        assert_eq!(g.weights(), &[5, 3, 3, u32::MAX]);
        assert_eq!(g.edge_count(), 3);
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> WeightedGraph<u32> {
        let weights = (0..n).map(|_| rng.gen_range(0..4)).collect();
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen_bool(0.3) {
                    edges.push((a, b));
                }
            }
        }
        WeightedGraph::new(weights, &edges).unwrap()
    }

    #[test]
    fn zones_match_bfs_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let g = random_graph(&mut rng, 8);
            let edges: Vec<_> = g.edges().collect();
            let adj = steepwater_oracle::adjacency(8, &edges);
            let expected = steepwater_oracle::flat_zones(g.weights(), &adj);
            let got: Vec<_> = find_flat_zones(&g)
                .unwrap()
                .into_iter()
                .map(|z| z.nodes)
                .collect();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn minima_match_exhaustive_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..300 {
            let g = random_graph(&mut rng, 10);
            let edges: Vec<_> = g.edges().collect();
            let adj = steepwater_oracle::adjacency(10, &edges);
            let expected = steepwater_oracle::regional_minima(g.weights(), &adj);
            let mut got = vec![0u32; 10];
            for m in find_regional_minima(&g).unwrap() {
                for n in m.nodes {
                    got[n] = m.label;
                }
            }
            assert_eq!(got, expected);
        }
    }
}
