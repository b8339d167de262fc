use std::sync::Arc;

use super::{find_regional_minima, WeightedGraph};
use crate::error::{Error, Result};

/// Outcome of comparing two descent profiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Steepness {
    Steeper,
    Flatter,
    Equal,
}

/// Lexicographic steepness of weight profile `a` against `b`.
///
/// The shorter profile is extended with its last value, so `[5, 3]` and
/// `[5, 3, 3]` compare equal.
pub fn lexicographic_compare<W: Copy + Ord>(a: &[W], b: &[W]) -> Result<Steepness> {
    for profile in [a, b] {
        if profile.is_empty() {
            return Err(Error::EmptyInput);
        }
        if profile.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::NotDescent);
        }
    }
    let len = a.len().max(b.len());
    for t in 0..len {
        let x = a[t.min(a.len() - 1)];
        let y = b[t.min(b.len() - 1)];
        if x < y {
            return Ok(Steepness::Steeper);
        }
        if x > y {
            return Ok(Steepness::Flatter);
        }
    }
    Ok(Steepness::Equal)
}

/// Arc-following node sequence with its (original) weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrainagePath<W> {
    pub nodes: Vec<usize>,
    pub weight_profile: Vec<W>,
}

/// Directed graph of admissible descent steps over a [`WeightedGraph`],
/// together with the eroded weights and the labels propagated so far.
///
/// Each step method returns a new snapshot; nothing is mutated in place.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrainageGraph<W> {
    base: Arc<WeightedGraph<W>>,
    weights: Vec<W>,
    arcs: Vec<Vec<usize>>,
    labels: Vec<u32>,
    minimum: Vec<Option<u32>>,
}

impl<W: Copy + Ord> DrainageGraph<W> {
    /// Arcs from every node outside the minima toward each of its lowest
    /// neighbours, plus both arcs between equal-weight neighbours lying
    /// outside the minima. Minimum nodes carry their label and no arcs.
    pub fn build(graph: &WeightedGraph<W>) -> Result<Self> {
        let minima = find_regional_minima(graph)?;
        let n = graph.node_count();
        let mut minimum = vec![None; n];
        for m in &minima {
            for &node in &m.nodes {
                minimum[node] = Some(m.label);
            }
        }
        let mut arcs = vec![Vec::new(); n];
        for (node, out) in arcs.iter_mut().enumerate() {
            if minimum[node].is_some() {
                continue;
            }
            let w = graph.weight(node);
            let Some(low) = graph.neighbors(node).iter().map(|&m| graph.weight(m)).min() else {
                continue;
            };
            out.extend(graph.neighbors(node).iter().copied().filter(|&m| {
                let wm = graph.weight(m);
                wm == low || (wm == w && minimum[m].is_none())
            }));
        }
        Ok(DrainageGraph {
            base: Arc::new(graph.clone()),
            weights: graph.weights().to_vec(),
            labels: minimum.iter().map(|m| m.unwrap_or(0)).collect(),
            minimum,
            arcs,
        })
    }

    pub fn base(&self) -> &WeightedGraph<W> {
        &self.base
    }

    /// Current (eroded) weights.
    pub fn weights(&self) -> &[W] {
        &self.weights
    }

    /// Sorted out-arc targets of `node`.
    pub fn arcs(&self, node: usize) -> &[usize] {
        &self.arcs[node]
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// Label of the regional minimum containing `node`, if any.
    pub fn minimum_of(&self, node: usize) -> Option<u32> {
        self.minimum[node]
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.iter().map(Vec::len).sum()
    }

    pub fn is_fully_labeled(&self) -> bool {
        self.labels.iter().all(|&l| l != 0)
    }

    /// Clears `label` from the nodes holding it, as if that minimum had never
    /// been marked. The nodes keep no arcs, so they stay unlabeled.
    pub fn remove_label(&mut self, label: u32) {
        for l in &mut self.labels {
            if *l == label {
                *l = 0;
            }
        }
    }

    /// Synchronous erosion with pruning: every node with arcs takes the
    /// lowest current weight among its arc targets and keeps only the arcs
    /// reaching that weight. All reads use the previous weights.
    pub fn erode_and_prune(&self) -> Self {
        let mut weights = self.weights.clone();
        let mut arcs = self.arcs.clone();
        for (node, out) in arcs.iter_mut().enumerate() {
            let Some(low) = out.iter().map(|&m| self.weights[m]).min() else {
                continue;
            };
            weights[node] = low;
            out.retain(|&m| self.weights[m] == low);
        }
        DrainageGraph {
            base: Arc::clone(&self.base),
            weights,
            arcs,
            labels: self.labels.clone(),
            minimum: self.minimum.clone(),
        }
    }

    /// Synchronous label propagation: an unlabeled node with arcs toward
    /// labeled nodes takes the largest of their labels and drops its arcs.
    pub fn propagate_labels_once(&self) -> Self {
        let mut labels = self.labels.clone();
        let mut arcs = self.arcs.clone();
        for node in 0..labels.len() {
            if self.labels[node] != 0 {
                continue;
            }
            let best = self.arcs[node]
                .iter()
                .map(|&m| self.labels[m])
                .max()
                .unwrap_or(0);
            if best != 0 {
                labels[node] = best;
                arcs[node].clear();
            }
        }
        DrainageGraph {
            base: Arc::clone(&self.base),
            weights: self.weights.clone(),
            arcs,
            labels,
            minimum: self.minimum.clone(),
        }
    }

    /// Alternates [`erode_and_prune`](Self::erode_and_prune) and
    /// [`propagate_labels_once`](Self::propagate_labels_once) until every
    /// node is labeled or a step changes nothing.
    pub fn run_to_stability(self) -> Result<GraphWatershed<W>> {
        let n = self.labels.len();
        let mut steepest_arcs = vec![Vec::new(); n];
        let mut current = self;
        let mut iterations = 0;
        while !current.is_fully_labeled() {
            let eroded = current.erode_and_prune();
            let next = eroded.propagate_labels_once();
            if next == current {
                break;
            }
            iterations += 1;
            if iterations > n {
                return Err(Error::IterationOverflow(iterations));
            }
            for (node, recorded) in steepest_arcs.iter_mut().enumerate() {
                if current.labels[node] == 0 && next.labels[node] != 0 {
                    *recorded = eroded.arcs[node]
                        .iter()
                        .copied()
                        .filter(|&m| current.labels[m] != 0)
                        .collect();
                }
                // pruning always keeps the arcs achieving the minimum
                debug_assert!(
                    next.labels[node] != 0
                        || current.arcs[node].is_empty()
                        || !next.arcs[node].is_empty()
                );
            }
            current = next;
        }
        Ok(GraphWatershed {
            labels: current.labels.clone(),
            steepest_arcs,
            iterations,
            drainage: current,
        })
    }
}

/// Outcome of [`steepest_watershed_graph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphWatershed<W> {
    pub labels: Vec<u32>,
    /// Arcs toward already labeled nodes that each node held when it received
    /// its label: the steepest drainage graph. Empty for minimum nodes and unlabeled nodes.
    pub steepest_arcs: Vec<Vec<usize>>,
    pub iterations: usize,
    pub drainage: DrainageGraph<W>,
}

impl<W: Copy + Ord> GraphWatershed<W> {
    /// Follows the first recorded arc from `node` down to a minimum.
    pub fn steepest_path(&self, node: usize) -> DrainagePath<W> {
        let base = self.drainage.base();
        let mut nodes = vec![node];
        let mut at = node;
        while let Some(&next) = self.steepest_arcs[at].first() {
            nodes.push(next);
            at = next;
        }
        let weight_profile = nodes.iter().map(|&n| base.weight(n)).collect();
        DrainagePath {
            nodes,
            weight_profile,
        }
    }
}

/// Steepest watershed of a node-weighted graph: labels for every node and
/// the steepest drainage graph.
pub fn steepest_watershed_graph<W: Copy + Ord>(
    graph: &WeightedGraph<W>,
) -> Result<GraphWatershed<W>> {
    DrainageGraph::build(graph)?.run_to_stability()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::path;

    fn arcs_of(dg: &DrainageGraph<u32>) -> Vec<(usize, usize)> {
        (0..dg.labels().len())
            .flat_map(|i| dg.arcs(i).iter().map(move |&j| (i, j)))
            .collect()
    }

    #[test]
    fn compare_examples() {
        assert_eq!(
            lexicographic_compare(&[5, 3, 1], &[5, 3, 2]),
            Ok(Steepness::Steeper)
        );
        assert_eq!(
            lexicographic_compare(&[5, 3], &[5, 3, 3]),
            Ok(Steepness::Equal)
        );
        assert_eq!(lexicographic_compare(&[4], &[5, 0]), Ok(Steepness::Steeper));
        assert_eq!(lexicographic_compare(&[5, 6], &[5]), Err(Error::NotDescent));
        assert_eq!(
            lexicographic_compare::<u8>(&[], &[5]),
            Err(Error::EmptyInput)
        );
    }

    #[test]
    fn compare_is_a_total_preorder() {
        // every non-increasing sequence of length 1..=4 over {0, 1, 2}
        let mut seqs: Vec<Vec<u8>> = Vec::new();
        for len in 1..=4u32 {
            for code in 0..3usize.pow(len) {
                let s: Vec<u8> = (0..len).map(|i| (code / 3usize.pow(i) % 3) as u8).collect();
                if s.windows(2).all(|w| w[0] >= w[1]) {
                    seqs.push(s);
                }
            }
        }
        let cmp = |a: &Vec<u8>, b: &Vec<u8>| lexicographic_compare(a, b).unwrap();
        for a in &seqs {
            assert_eq!(cmp(a, a), Steepness::Equal);
            for b in &seqs {
                let ab = cmp(a, b);
                let ba = cmp(b, a);
                let mirrored = match ab {
                    Steepness::Steeper => Steepness::Flatter,
                    Steepness::Flatter => Steepness::Steeper,
                    Steepness::Equal => Steepness::Equal,
                };
                assert_eq!(ba, mirrored);
                for c in &seqs {
                    if ab != Steepness::Flatter && cmp(b, c) != Steepness::Flatter {
                        assert_ne!(cmp(a, c), Steepness::Flatter, "{a:?} {b:?} {c:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn build_on_descending_path() {
        let dg = DrainageGraph::build(&path(&[3, 2, 1, 0])).unwrap();
        assert_eq!(arcs_of(&dg), vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(dg.labels(), &[0, 0, 0, 1]);
    }

    #[test]
    fn build_on_minimum_plateau() {
        let dg = DrainageGraph::build(&path(&[2, 1, 1, 2])).unwrap();
        assert_eq!(arcs_of(&dg), vec![(0, 1), (3, 2)]);
        assert_eq!(dg.labels(), &[0, 1, 1, 0]);
    }

    #[test]
    fn build_links_equal_non_minimum_neighbours_both_ways() {
        let dg = DrainageGraph::build(&path(&[2, 1, 1, 0])).unwrap();
        assert_eq!(arcs_of(&dg), vec![(0, 1), (1, 2), (2, 1), (2, 3)]);
        assert_eq!(dg.minimum_of(3), Some(1));
    }

    #[test]
    fn erosion_keeps_lowest_targets() {
        let g = WeightedGraph::new(vec![3u32, 2, 1], &[(0, 1), (0, 2)]).unwrap();
        let mut dg = DrainageGraph::build(&g).unwrap();
        // hand-made state: both targets arrowed
        dg.arcs[0] = vec![1, 2];
        let e = dg.erode_and_prune();
        assert_eq!(e.weights()[0], 1);
        assert_eq!(e.arcs(0), &[2]);
    }

    #[test]
    fn erosion_leaves_arcless_nodes() {
        let g = WeightedGraph::new(vec![4u32, 9], &[(0, 1)]).unwrap();
        let dg = DrainageGraph::build(&g).unwrap();
        let e = dg.erode_and_prune();
        // node 0 is a minimum without arcs, node 1 drains into it
        assert_eq!(e.weights(), &[4, 4]);
        assert_eq!(e.erode_and_prune().weights()[0], 4);
    }

    #[test]
    fn propagation_rules() {
        let g = WeightedGraph::new(vec![9u32, 1, 5, 1], &[(0, 1), (0, 3), (2, 3)]).unwrap();
        let mut dg = DrainageGraph::build(&g).unwrap();
        dg.labels = vec![0, 2, 0, 5];
        dg.arcs = vec![vec![1, 3], vec![], vec![], vec![]];
        let p = dg.propagate_labels_once();
        assert_eq!(p.labels(), &[5, 2, 0, 5]);
        assert!(p.arcs(0).is_empty());

        dg.arcs = vec![vec![1], vec![], vec![3], vec![]];
        dg.labels = vec![0, 2, 0, 0];
        let p = dg.propagate_labels_once();
        assert_eq!(p.labels(), &[2, 2, 0, 0]);
        assert_eq!(p.arcs(2), &[3]);
    }

    #[test]
    fn watershed_on_paths() {
        let r = steepest_watershed_graph(&path(&[3, 2, 1, 0])).unwrap();
        assert_eq!(r.labels, vec![1, 1, 1, 1]);
        assert_eq!(r.iterations, 3);

        let r = steepest_watershed_graph(&path(&[0, 1, 2, 1, 0])).unwrap();
        assert_eq!(r.labels, vec![1, 1, 2, 2, 2]);
        assert_eq!(r.steepest_arcs[2], vec![1, 3]);
    }

    #[test]
    fn single_node() {
        let g = WeightedGraph::new(vec![7u32], &[]).unwrap();
        let r = steepest_watershed_graph(&g).unwrap();
        assert_eq!((r.labels, r.iterations), (vec![1], 0));
    }

    #[test]
    fn removed_minimum_stays_empty() {
        let mut dg = DrainageGraph::build(&path(&[0, 1, 2, 3, 2, 1, 0])).unwrap();
        dg.remove_label(1);
        let r = dg.run_to_stability().unwrap();
        assert_eq!(r.labels, vec![0, 0, 0, 2, 2, 2, 2]);
    }
}
