//! Steepest watershed on rasters.
//!
//! The drainage graph lives in an [`ArrowField`]. Each iteration applies an
//! adaptive erosion (every arrowed pixel takes the lowest value among the
//! neighbours it points to and keeps only the arrows reaching that value)
//! followed by an adaptive dilation (an unlabeled pixel pointing to labeled
//! pixels takes the largest of their labels and drops its arrows). Both are
//! synchronous: a step reads only the previous state.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::image::{ArrowField, Geometry, GridImage, LabelField};

/// Final labels and steepest arrows of a raster.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridWatershed<T> {
    pub labels: LabelField,
    /// Arrows toward already labeled pixels that each pixel held when it got
    /// its label: the steepest arrows. Minima, and pixels never labeled,
    /// hold 0.
    pub arrows: ArrowField,
    /// Number of erosion/dilation rounds that changed something.
    pub iterations: usize,
    /// Gray tones after the last erosion.
    pub eroded: GridImage<T>,
}

/// Regional minima labelled `1..=M` in order of their first pixel.
pub fn regional_minima<T: Copy + Ord>(grid: &GridImage<T>) -> LabelField {
    let geom = grid.geometry();
    let values = grid.values();
    let mut labels = vec![0u32; geom.len()];
    let mut zone = vec![0u32; geom.len()];
    let mut stack = Vec::new();
    let mut members = Vec::new();
    let mut zone_id = 0u32;
    let mut next_label = 0u32;
    for start in 0..geom.len() {
        if zone[start] != 0 {
            continue;
        }
        zone_id += 1;
        let altitude = values[start];
        let mut has_lower = false;
        members.clear();
        zone[start] = zone_id;
        stack.push(start);
        while let Some(p) = stack.pop() {
            members.push(p);
            for (_, q) in geom.neighbors(p) {
                let v = values[q];
                if v < altitude {
                    has_lower = true;
                } else if v == altitude && zone[q] == 0 {
                    zone[q] = zone_id;
                    stack.push(q);
                }
            }
        }
        if !has_lower {
            next_label += 1;
            for &p in &members {
                labels[p] = next_label;
            }
        }
    }
    LabelField::new(geom, labels).expect("sizes match")
}

/// Labels the regional minima and arrows every other pixel toward all of its
/// in-bounds neighbours.
pub fn initialize<T: Copy + Ord>(grid: &GridImage<T>) -> Result<(ArrowField, LabelField)> {
    let geom = grid.geometry();
    if geom.is_empty() {
        return Err(Error::EmptyInput);
    }
    let labels = regional_minima(grid);
    let masks = (0..geom.len())
        .map(|p| {
            if labels.get(p) != 0 {
                0
            } else {
                geom.in_bounds_mask(p)
            }
        })
        .collect();
    Ok((ArrowField::from_raw(geom, masks), labels))
}

#[inline]
fn erode_pixel<T: Copy + Ord>(geom: &Geometry, values: &[T], mask: u8, p: usize) -> (T, u8) {
    let mut best: Option<(T, u8)> = None;
    for (n, q) in geom.neighbors(p) {
        let bit = 1u8 << n;
        if mask & bit == 0 {
            continue;
        }
        let v = values[q];
        best = match best {
            Some((low, keep)) if v > low => Some((low, keep)),
            Some((low, keep)) if v == low => Some((low, keep | bit)),
            _ => Some((v, bit)),
        };
    }
    best.unwrap_or((values[p], 0))
}

#[inline]
/// Arrows of `mask` pointing at labeled pixels.
fn labeled_arrows(geom: &Geometry, labels: &[u32], mask: u8, p: usize) -> u8 {
    geom.neighbors(p)
        .filter(|&(n, q)| mask & (1 << n) != 0 && labels[q] != 0)
        .fold(0, |acc, (n, _)| acc | (1 << n))
}

fn dilate_pixel(geom: &Geometry, labels: &[u32], mask: u8, p: usize) -> u32 {
    geom.neighbors(p)
        .filter(|&(n, _)| mask & (1 << n) != 0)
        .map(|(_, q)| labels[q])
        .max()
        .unwrap_or(0)
}

/// One synchronous adaptive erosion with arrow pruning. Pixels without
/// arrows keep their value; non-arrowed neighbours are ignored even when
/// lower.
pub fn adaptive_erode<T>(
    grid: &GridImage<T>,
    arrows: &ArrowField,
) -> Result<(GridImage<T>, ArrowField)>
where
    T: Copy + Ord + Send + Sync,
{
    let geom = grid.geometry();
    if arrows.geometry() != geom {
        return Err(Error::GeometryMismatch);
    }
    arrows.validate()?;
    let width = geom.width.max(1);
    let values = grid.values();
    let old_masks = arrows.masks();
    let mut new_values = values.to_vec();
    let mut new_masks = old_masks.to_vec();
    new_values
        .par_chunks_mut(width)
        .zip(new_masks.par_chunks_mut(width))
        .enumerate()
        .for_each(|(y, (row_values, row_masks))| {
            for x in 0..row_values.len() {
                let p = y * width + x;
                let (v, m) = erode_pixel(&geom, values, old_masks[p], p);
                row_values[x] = v;
                row_masks[x] = m;
            }
        });
    Ok((
        GridImage::from_geometry(geom, new_values)?,
        ArrowField::from_raw(geom, new_masks),
    ))
}

/// One synchronous adaptive dilation of the labels along the arrows. A
/// pixel that receives a label loses its arrows.
pub fn adaptive_dilate(
    labels: &LabelField,
    arrows: &ArrowField,
) -> Result<(LabelField, ArrowField)> {
    let geom = labels.geometry();
    if arrows.geometry() != geom {
        return Err(Error::GeometryMismatch);
    }
    let width = geom.width.max(1);
    let old = labels.labels();
    let old_masks = arrows.masks();
    let mut new_labels = old.to_vec();
    let mut new_masks = old_masks.to_vec();
    new_labels
        .par_chunks_mut(width)
        .zip(new_masks.par_chunks_mut(width))
        .enumerate()
        .for_each(|(y, (row_labels, row_masks))| {
            for x in 0..row_labels.len() {
                let p = y * width + x;
                if old[p] != 0 {
                    continue;
                }
                let l = dilate_pixel(&geom, old, old_masks[p], p);
                if l != 0 {
                    row_labels[x] = l;
                    row_masks[x] = 0;
                }
            }
        });
    Ok((
        LabelField::new(geom, new_labels)?,
        ArrowField::from_raw(geom, new_masks),
    ))
}

/// Mutable state of a running watershed: gray tones, arrows, labels and the
/// arrows recorded at labeling time.
#[derive(Debug, Clone)]
pub struct WatershedState<T> {
    geometry: Geometry,
    values: Vec<T>,
    masks: Vec<u8>,
    labels: Vec<u32>,
    recorded: Vec<u8>,
}

impl<T: Copy + Ord + Send + Sync> WatershedState<T> {
    pub fn new(grid: &GridImage<T>) -> Result<Self> {
        let (arrows, labels) = initialize(grid)?;
        Self::from_parts(grid, arrows, labels)
    }

    /// Starts from caller-supplied arrows and labels. Labeled pixels must
    /// carry no arrows.
    pub fn from_parts(grid: &GridImage<T>, arrows: ArrowField, labels: LabelField) -> Result<Self> {
        let geometry = grid.geometry();
        if arrows.geometry() != geometry || labels.geometry() != geometry {
            return Err(Error::GeometryMismatch);
        }
        arrows.validate()?;
        let mut masks = arrows.into_masks();
        let labels = labels.into_labels();
        for (m, &l) in masks.iter_mut().zip(&labels) {
            if l != 0 {
                *m = 0;
            }
        }
        Ok(WatershedState {
            geometry,
            values: grid.values().to_vec(),
            recorded: vec![0; masks.len()],
            masks,
            labels,
        })
    }

    /// Unmarks one minimum. Its pixels keep no arrows and stay unlabeled
    /// unless no other pixel drains into them.
    pub fn remove_label(&mut self, label: u32) {
        for l in &mut self.labels {
            if *l == label {
                *l = 0;
            }
        }
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// Iterates until a round changes nothing (with every minimum marked,
    /// this is when every pixel is labeled).
    ///
    /// Only pixels with an arrow toward a pixel that changed in the previous
    /// round are recomputed; any other pixel would reproduce its state.
    pub fn run(mut self) -> Result<GridWatershed<T>> {
        let geom = self.geometry;
        let n = geom.len();
        let conn = geom.connectivity;
        let mut candidates: Vec<usize> = (0..n)
            .filter(|&p| self.labels[p] == 0 && self.masks[p] != 0)
            .collect();
        let mut stamp = vec![0usize; n];
        let mut iterations = 0usize;
        while !candidates.is_empty() {
            let (values, masks, labels) = (&self.values, &self.masks, &self.labels);
            let updates: Vec<(usize, T, u8, u32)> = candidates
                .par_iter()
                .with_min_len(1024)
                .filter_map(|&p| {
                    let (v, m) = erode_pixel(&geom, values, masks[p], p);
                    let l = dilate_pixel(&geom, labels, m, p);
                    let m = if l != 0 {
                        labeled_arrows(&geom, labels, m, p)
                    } else {
                        m
                    };
                    (v != values[p] || m != masks[p] || l != 0).then_some((p, v, m, l))
                })
                .collect();
            if updates.is_empty() {
                break;
            }
            iterations += 1;
            if iterations > n {
                return Err(Error::IterationOverflow(iterations));
            }
            for &(p, v, m, l) in &updates {
                self.values[p] = v;
                if l != 0 {
                    self.labels[p] = l;
                    self.recorded[p] = m;
                    self.masks[p] = 0;
                } else {
                    self.masks[p] = m;
                }
            }
            candidates.clear();
            for &(p, ..) in &updates {
                for (k, q) in geom.neighbors(p) {
                    let toward_p = 1u8 << conn.opposite(k);
                    if self.labels[q] == 0
                        && self.masks[q] & toward_p != 0
                        && stamp[q] != iterations
                    {
                        stamp[q] = iterations;
                        candidates.push(q);
                    }
                }
            }
        }
        Ok(GridWatershed {
            labels: LabelField::new(geom, self.labels)?,
            arrows: ArrowField::from_raw(geom, self.recorded),
            iterations,
            eroded: GridImage::from_geometry(geom, self.values)?,
        })
    }
}

/// Steepest watershed of `grid`.
pub fn watershed<T: Copy + Ord + Send + Sync>(grid: &GridImage<T>) -> Result<GridWatershed<T>> {
    WatershedState::new(grid)?.run()
}
