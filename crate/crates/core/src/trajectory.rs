//! Downstream propagation of seed labels along a steepest arrow field.

use crate::error::{Error, Result};
use crate::image::{ArrowField, LabelField};

/// Starting point of a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Seed {
    pub x: usize,
    pub y: usize,
    pub label: u32,
}

impl Seed {
    pub fn new(x: usize, y: usize, label: u32) -> Self {
        Seed { x, y, label }
    }
}

/// Propagates every seed label along the arrows until nothing changes. A
/// pixel reached by several labels keeps the largest; pixels never reached
/// stay 0.
pub fn trace_downstream(arrows: &ArrowField, seeds: &[Seed]) -> Result<LabelField> {
    let geom = arrows.geometry();
    let mut labels = vec![0u32; geom.len()];
    let mut frontier = Vec::new();
    for s in seeds {
        if s.x >= geom.width || s.y >= geom.height {
            return Err(Error::SeedOutOfBounds { x: s.x, y: s.y });
        }
        if s.label == 0 {
            return Err(Error::ZeroSeedLabel);
        }
        let p = geom.index(s.x, s.y);
        if s.label > labels[p] {
            labels[p] = s.label;
            frontier.push(p);
        }
    }
    frontier.sort_unstable();
    frontier.dedup();

    let mut iterations = 0;
    let mut next = labels.clone();
    while !frontier.is_empty() {
        iterations += 1;
        if iterations > geom.len() {
            return Err(Error::IterationOverflow(iterations));
        }
        let mut changed = Vec::new();
        for &p in &frontier {
            for q in arrows.targets(p) {
                if labels[p] > next[q] {
                    if next[q] == labels[q] {
                        changed.push(q);
                    }
                    next[q] = labels[p];
                }
            }
        }
        for &q in &changed {
            labels[q] = next[q];
        }
        changed.sort_unstable();
        frontier = changed;
    }
    LabelField::new(geom, labels)
}
