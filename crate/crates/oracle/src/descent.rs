use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};

use crate::topology::{adjacency, drainage_arcs, regional_minima};
use crate::{OracleError, MAX_NODES, MAX_STEPS_PER_NODE};

/// Steepness order between two complete descents, each given as the weights
/// along a drainage path whose last node lies in a regional minimum.
///
/// Positions are compared one by one; past its end a descent keeps the
/// altitude of its minimum. At equal altitude a descent that already stands
/// in its minimum is steeper than one still travelling. `Less` means `a` is
/// steeper.
pub fn compare_descents<W: Ord + Copy>(a: &[W], b: &[W]) -> Ordering {
    let len = a.len().max(b.len());
    for t in 0..len {
        let ord = key(a, t).cmp(&key(b, t));
        if ord != Ordering::Equal {
            return ord;
        }
    }
    Ordering::Equal
}

fn key<W: Copy>(descent: &[W], t: usize) -> (W, bool) {
    let last = descent.len() - 1;
    (descent[t.min(last)], t < last)
}

/// Result of exhaustive steepest-path enumeration.
#[derive(Debug, Clone)]
pub struct SteepestResult<W> {
    /// Regional-minimum label per node, 0 outside minima.
    pub minima: Vec<u32>,
    /// Labels of the minima reached by the steepest descents of each node.
    pub tied: Vec<BTreeSet<u32>>,
    /// One steepest weight profile per node, ending in a minimum.
    pub profiles: Vec<Vec<W>>,
    /// Second nodes of all steepest descents (empty for minimum nodes).
    pub first_steps: Vec<BTreeSet<usize>>,
}

/// Catchment memberships from exhaustive drainage-path enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catchments {
    pub minima: Vec<u32>,
    pub members: Vec<BTreeSet<u32>>,
    pub restricted: Vec<bool>,
    pub watershed_zone: Vec<bool>,
}

fn prepare<W: Ord + Copy>(
    weights: &[W],
    edges: &[(usize, usize)],
) -> Result<(Vec<u32>, Vec<Vec<usize>>), OracleError> {
    if weights.is_empty() {
        return Err(OracleError::Empty);
    }
    if weights.len() > MAX_NODES {
        return Err(OracleError::TooLarge(weights.len()));
    }
    let adj = adjacency(weights.len(), edges);
    let minima = regional_minima(weights, &adj);
    let arcs = drainage_arcs(weights, &adj, &minima);
    Ok((minima, arcs))
}

struct Search<'a, W> {
    weights: &'a [W],
    arcs: &'a [Vec<usize>],
    minima: &'a [u32],
    on_path: Vec<bool>,
    path: Vec<usize>,
    best: Option<Vec<W>>,
    tied: BTreeSet<u32>,
    first: BTreeSet<usize>,
    steps: usize,
    source: usize,
}

impl<W: Ord + Copy> Search<'_, W> {
    fn profile(&self) -> Vec<W> {
        self.path.iter().map(|&n| self.weights[n]).collect()
    }

    /// True when every completion of the current path is strictly flatter
    /// than the best descent found so far.
    fn dominated(&self) -> bool {
        let Some(best) = &self.best else {
            return false;
        };
        for (t, &n) in self.path.iter().enumerate() {
            let ours = (self.weights[n], true);
            let theirs = key(best, t);
            match ours.cmp(&theirs) {
                Ordering::Less => return false,
                Ordering::Greater => return true,
                Ordering::Equal => {}
            }
        }
        false
    }

    fn walk(&mut self) -> Result<(), OracleError> {
        self.steps += 1;
        if self.steps > MAX_STEPS_PER_NODE {
            return Err(OracleError::Budget(self.source));
        }
        let node = *self.path.last().unwrap();
        if self.minima[node] != 0 {
            let profile = self.profile();
            let ord = match &self.best {
                None => Ordering::Less,
                Some(best) => compare_descents(&profile, best),
            };
            match ord {
                Ordering::Less => {
                    self.best = Some(profile);
                    self.tied = BTreeSet::from([self.minima[node]]);
                    self.first = BTreeSet::from([self.path[1]]);
                }
                Ordering::Equal => {
                    self.tied.insert(self.minima[node]);
                    self.first.insert(self.path[1]);
                }
                Ordering::Greater => {}
            }
            return Ok(());
        }
        if self.dominated() {
            return Ok(());
        }
        for i in 0..self.arcs[node].len() {
            let next = self.arcs[node][i];
            if self.on_path[next] {
                continue;
            }
            self.on_path[next] = true;
            self.path.push(next);
            self.walk()?;
            self.path.pop();
            self.on_path[next] = false;
        }
        Ok(())
    }
}

/// For every node, enumerates the simple drainage paths to regional minima
/// and keeps the steepest ones.
pub fn steepest_profiles<W: Ord + Copy>(
    weights: &[W],
    edges: &[(usize, usize)],
) -> Result<SteepestResult<W>, OracleError> {
    let (minima, arcs) = prepare(weights, edges)?;
    let n = weights.len();
    let mut result = SteepestResult {
        minima: minima.clone(),
        tied: Vec::with_capacity(n),
        profiles: Vec::with_capacity(n),
        first_steps: Vec::with_capacity(n),
    };
    for source in 0..n {
        let mut search = Search {
            weights,
            arcs: &arcs,
            minima: &minima,
            on_path: vec![false; n],
            path: vec![source],
            best: None,
            tied: BTreeSet::new(),
            first: BTreeSet::new(),
            steps: 0,
            source,
        };
        search.on_path[source] = true;
        if minima[source] != 0 {
            result.tied.push(BTreeSet::from([minima[source]]));
            result.profiles.push(vec![weights[source]]);
            result.first_steps.push(BTreeSet::new());
            continue;
        }
        search.walk()?;
        result.tied.push(search.tied);
        // every node outside a minimum has a descent on a finite graph
        result.profiles.push(search.best.expect("no descent found"));
        result.first_steps.push(search.first);
    }
    Ok(result)
}

fn finish(minima: Vec<u32>, members: Vec<BTreeSet<u32>>) -> Catchments {
    let restricted = members.iter().map(|m| m.len() == 1).collect();
    let watershed_zone = members.iter().map(|m| m.len() > 1).collect();
    Catchments {
        minima,
        members,
        restricted,
        watershed_zone,
    }
}

/// Catchment memberships by walking every simple drainage path from every
/// node and collecting the minima they end in.
pub fn enumerate_catchments<W: Ord + Copy>(
    weights: &[W],
    edges: &[(usize, usize)],
) -> Result<Catchments, OracleError> {
    let (minima, arcs) = prepare(weights, edges)?;
    let n = weights.len();

    fn walk(
        node: usize,
        arcs: &[Vec<usize>],
        minima: &[u32],
        on_path: &mut [bool],
        found: &mut BTreeSet<u32>,
        steps: &mut usize,
    ) -> bool {
        *steps += 1;
        if *steps > MAX_STEPS_PER_NODE {
            return false;
        }
        if minima[node] != 0 {
            found.insert(minima[node]);
            return true;
        }
        for &next in &arcs[node] {
            if on_path[next] {
                continue;
            }
            on_path[next] = true;
            let ok = walk(next, arcs, minima, on_path, found, steps);
            on_path[next] = false;
            if !ok {
                return false;
            }
        }
        true
    }

    let mut members = Vec::with_capacity(n);
    for source in 0..n {
        let mut on_path = vec![false; n];
        on_path[source] = true;
        let mut found = BTreeSet::new();
        let mut steps = 0;
        if !walk(source, &arcs, &minima, &mut on_path, &mut found, &mut steps) {
            return Err(OracleError::Budget(source));
        }
        members.push(found);
    }
    Ok(finish(minima, members))
}

/// Same memberships as [`enumerate_catchments`], computed by reverse
/// reachability from each minimum instead of path enumeration.
pub fn catchments_by_reachability<W: Ord + Copy>(
    weights: &[W],
    edges: &[(usize, usize)],
) -> Result<Catchments, OracleError> {
    let (minima, arcs) = prepare(weights, edges)?;
    let n = weights.len();
    let mut reverse = vec![Vec::new(); n];
    for (from, targets) in arcs.iter().enumerate() {
        for &to in targets {
            reverse[to].push(from);
        }
    }
    let count = minima.iter().copied().max().unwrap_or(0);
    let mut members = vec![BTreeSet::new(); n];
    for label in 1..=count {
        let mut seen = vec![false; n];
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| minima[i] == label).collect();
        for &i in &queue {
            seen[i] = true;
        }
        while let Some(i) = queue.pop_front() {
            members[i].insert(label);
            for &j in &reverse[i] {
                // paths stop at the first minimum node they meet
                if !seen[j] && minima[j] == 0 {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
    }
    Ok(finish(minima, members))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn path_edges(n: usize) -> Vec<(usize, usize)> {
        (1..n).map(|i| (i - 1, i)).collect()
    }

    #[test]
    fn valley_node_is_a_watershed_zone() {
        let c = enumerate_catchments(&[0u32, 1, 0], &path_edges(3)).unwrap();
        assert_eq!(c.members[1], BTreeSet::from([1, 2]));
        assert!(c.watershed_zone[1]);
        assert!(c.restricted[0] && c.restricted[2]);
    }

    #[test]
    fn monotone_path_is_one_restricted_basin() {
        let c = enumerate_catchments(&[3u32, 2, 1, 0], &path_edges(4)).unwrap();
        assert!(c.restricted.iter().all(|&r| r));
        assert!(c.members.iter().all(|m| *m == BTreeSet::from([1])));
    }

    #[test]
    fn symmetric_peak_ties() {
        let r = steepest_profiles(&[0u32, 1, 0], &path_edges(3)).unwrap();
        assert_eq!(r.tied[1], BTreeSet::from([1, 2]));
        assert_eq!(r.profiles[1], vec![1, 0]);
    }

    #[test]
    fn single_descent_profile() {
        let r = steepest_profiles(&[2u32, 1, 1, 0], &path_edges(4)).unwrap();
        assert_eq!(r.tied[0], BTreeSet::from([1]));
        assert_eq!(r.profiles[0], vec![2, 1, 1, 0]);
    }

    #[test]
    fn reaching_a_minimum_beats_equal_altitude_slope() {
        // node 0 sees a minimum at altitude 1 and a slope at altitude 1
        // that continues down to 0
        let weights = [2u32, 1, 1, 0];
        let edges = [(0, 1), (0, 2), (2, 3)];
        let r = steepest_profiles(&weights, &edges).unwrap();
        assert_eq!(r.minima, vec![0, 1, 0, 2]);
        assert_eq!(r.tied[0], BTreeSet::from([1]));
        assert_eq!(compare_descents(&[2, 1], &[2, 1, 0]), Ordering::Less);
        assert_eq!(compare_descents(&[5, 3], &[5, 2, 2]), Ordering::Greater);
    }

    #[test]
    fn too_large_is_rejected() {
        let w = vec![0u32; MAX_NODES + 1];
        assert_eq!(
            steepest_profiles(&w, &[]).unwrap_err(),
            OracleError::TooLarge(MAX_NODES + 1)
        );
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> (Vec<u32>, Vec<(usize, usize)>) {
        let weights = (0..n).map(|_| rng.gen_range(0..8)).collect();
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen_bool(0.35) {
                    edges.push((a, b));
                }
            }
        }
        (weights, edges)
    }

    #[test]
    fn catchment_routes_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let (w, e) = random_graph(&mut rng, 8);
            let a = enumerate_catchments(&w, &e).unwrap();
            let b = catchments_by_reachability(&w, &e).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn steepest_is_within_catchment() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..200 {
            let (w, e) = random_graph(&mut rng, 8);
            let c = enumerate_catchments(&w, &e).unwrap();
            let s = steepest_profiles(&w, &e).unwrap();
            for n in 0..w.len() {
                assert!(!s.tied[n].is_empty());
                assert!(s.tied[n].is_subset(&c.members[n]));
                assert!(s.profiles[n].windows(2).all(|p| p[0] >= p[1]));
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn descent_order_is_a_total_preorder(
            a in proptest::collection::vec(0u8..3, 1..5),
            b in proptest::collection::vec(0u8..3, 1..5),
            c in proptest::collection::vec(0u8..3, 1..5),
        ) {
            let ab = compare_descents(&a, &b);
            proptest::prop_assert_eq!(ab, compare_descents(&b, &a).reverse());
            if ab != Ordering::Greater && compare_descents(&b, &c) != Ordering::Greater {
                proptest::prop_assert_ne!(compare_descents(&a, &c), Ordering::Greater);
            }
        }
    }
}
