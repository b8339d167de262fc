//! Classical flooding watershed on a hierarchical queue, and pit filling by
//! reconstruction under a ceiling.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use num_traits::Bounded;

use crate::error::{Error, Result};
use crate::image::{GridImage, LabelField};

/// One FIFO per priority level; the lowest non-empty level is served first.
///
/// An item pushed below the level currently being served joins that level
/// instead, so the cursor never moves backward.
#[derive(Debug, Clone)]
pub struct HierarchicalQueue<I> {
    levels: Vec<VecDeque<I>>,
    cursor: usize,
    len: usize,
}

impl<I> HierarchicalQueue<I> {
    pub fn new(level_count: usize) -> Self {
        HierarchicalQueue {
            levels: (0..level_count).map(|_| VecDeque::new()).collect(),
            cursor: 0,
            len: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Level currently being served.
    pub fn cursor(&self) -> usize {
        self.cursor
    }

    pub fn push(&mut self, level: usize, item: I) {
        let level = level.max(self.cursor);
        self.levels[level].push_back(item);
        self.len += 1;
    }

    pub fn pop(&mut self) -> Option<(usize, I)> {
        if self.len == 0 {
            return None;
        }
        while self.levels[self.cursor].is_empty() {
            self.cursor += 1;
        }
        self.len -= 1;
        let item = self.levels[self.cursor].pop_front()?;
        Some((self.cursor, item))
    }
}

/// Flooding from the seeded pixels: seeds enter the queue at their own
/// altitude in raster order; each popped pixel hands its label to every
/// unlabeled neighbour, which then enters the queue at its own altitude.
pub fn hq_watershed<T: Copy + Ord>(grid: &GridImage<T>, seeds: &LabelField) -> Result<LabelField> {
    hq_watershed_traced(grid, seeds).map(|(labels, _)| labels)
}

/// [`hq_watershed`] that also returns the pixels in the order they received
/// their label (seeds first).
pub fn hq_watershed_traced<T: Copy + Ord>(
    grid: &GridImage<T>,
    seeds: &LabelField,
) -> Result<(LabelField, Vec<usize>)> {
    let geom = grid.geometry();
    if seeds.geometry() != geom {
        return Err(Error::GeometryMismatch);
    }
    if seeds.labels().iter().all(|&l| l == 0) {
        return Err(Error::NoSeeds);
    }
    let values = grid.values();
    let mut distinct = values.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let level = |p: usize| distinct.binary_search(&values[p]).expect("value present");

    let mut labels = seeds.labels().to_vec();
    let mut order = Vec::with_capacity(geom.len());
    let mut queue = HierarchicalQueue::new(distinct.len());
    for (p, &l) in labels.iter().enumerate() {
        if l != 0 {
            queue.push(level(p), p);
            order.push(p);
        }
    }
    while let Some((_, p)) = queue.pop() {
        for (_, q) in geom.neighbors(p) {
            if labels[q] == 0 {
                labels[q] = labels[p];
                queue.push(level(q), q);
                order.push(q);
            }
        }
    }
    Ok((LabelField::new(geom, labels)?, order))
}

/// Flooding seeded with the regional minima.
pub fn hq_watershed_from_minima<T: Copy + Ord>(grid: &GridImage<T>) -> Result<LabelField> {
    if grid.geometry().is_empty() {
        return Err(Error::EmptyInput);
    }
    hq_watershed(grid, &crate::watershed::regional_minima(grid))
}

/// Highest flooding of `relief` under `ceiling`: reconstruction by erosion
/// of the ceiling above the relief.
///
/// Every pixel ends at the lowest level at which water could stand there,
/// given that it may not rise above the ceiling anywhere and drains over
/// the lowest pass toward a pixel where the ceiling holds it.
pub fn flood_under_ceiling<T: Copy + Ord>(
    relief: &GridImage<T>,
    ceiling: &GridImage<T>,
) -> Result<GridImage<T>> {
    let geom = relief.geometry();
    if ceiling.geometry() != geom {
        return Err(Error::GeometryMismatch);
    }
    let low = relief.values();
    if let Some(p) = (0..geom.len()).find(|&p| ceiling.values()[p] < low[p]) {
        return Err(Error::CeilingBelowRelief(p));
    }
    let mut level = ceiling.values().to_vec();
    let mut heap: BinaryHeap<Reverse<(T, usize)>> = level
        .iter()
        .enumerate()
        .map(|(p, &v)| Reverse((v, p)))
        .collect();
    while let Some(Reverse((v, p))) = heap.pop() {
        if v != level[p] {
            continue;
        }
        for (_, q) in geom.neighbors(p) {
            let candidate = v.max(low[q]);
            if candidate < level[q] {
                level[q] = candidate;
                heap.push(Reverse((candidate, q)));
            }
        }
    }
    GridImage::from_geometry(geom, level)
}

/// Marker equal to the relief on the image border and to the largest value
/// of `T` elsewhere.
pub fn boundary_ceiling<T: Copy + Bounded>(relief: &GridImage<T>) -> GridImage<T> {
    let geom = relief.geometry();
    let values = relief
        .values()
        .iter()
        .enumerate()
        .map(|(p, &v)| if geom.on_border(p) { v } else { T::max_value() })
        .collect();
    GridImage::from_geometry(geom, values).expect("same geometry")
}

/// Removes every regional minimum that does not touch the image border.
pub fn fill_pits<T: Copy + Ord + Bounded>(relief: &GridImage<T>) -> Result<GridImage<T>> {
    if relief.geometry().is_empty() {
        return Err(Error::EmptyInput);
    }
    flood_under_ceiling(relief, &boundary_ceiling(relief))
}
