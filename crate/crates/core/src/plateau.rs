//! Geodesic distance inside non-minimum plateaus.
//!
//! A plateau here is a flat zone of at least two pixels that is not a
//! regional minimum; its lower border is the set of its pixels having a
//! strictly lower neighbour. Pixels on the lower border are at distance 1.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::image::{Geometry, GridImage};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlateauDescriptor<T> {
    /// Members in ascending order.
    pub pixels: Vec<usize>,
    pub altitude: T,
    /// Members with a strictly lower neighbour, ascending.
    pub lower_border: Vec<usize>,
}

/// Non-minimum plateaus in order of their first pixel.
pub fn find_plateaus<T: Copy + Ord>(grid: &GridImage<T>) -> Vec<PlateauDescriptor<T>> {
    let geom = grid.geometry();
    let values = grid.values();
    let mut seen = vec![false; geom.len()];
    let mut plateaus = Vec::new();
    let mut stack = Vec::new();
    for start in 0..geom.len() {
        if seen[start] {
            continue;
        }
        let altitude = values[start];
        seen[start] = true;
        stack.push(start);
        let mut pixels = Vec::new();
        let mut lower_border = Vec::new();
        while let Some(p) = stack.pop() {
            pixels.push(p);
            let mut lower = false;
            for (_, q) in geom.neighbors(p) {
                if values[q] < altitude {
                    lower = true;
                } else if values[q] == altitude && !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
            if lower {
                lower_border.push(p);
            }
        }
        if pixels.len() >= 2 && !lower_border.is_empty() {
            pixels.sort_unstable();
            lower_border.sort_unstable();
            plateaus.push(PlateauDescriptor {
                pixels,
                altitude,
                lower_border,
            });
        }
    }
    plateaus
}

fn plateau_bfs<T>(
    geom: &Geometry,
    member: &[u32],
    id: u32,
    plateau: &PlateauDescriptor<T>,
) -> Vec<(usize, u32)> {
    let mut out = Vec::with_capacity(plateau.pixels.len());
    let mut dist = std::collections::HashMap::with_capacity(plateau.pixels.len());
    let mut queue = VecDeque::new();
    for &p in &plateau.lower_border {
        dist.insert(p, 1u32);
        queue.push_back(p);
    }
    while let Some(p) = queue.pop_front() {
        let d = dist[&p];
        out.push((p, d));
        for (_, q) in geom.neighbors(p) {
            if member[q] == id && !dist.contains_key(&q) {
                dist.insert(q, d + 1);
                queue.push_back(q);
            }
        }
    }
    out
}

/// Geodesic distance of every plateau pixel to its plateau's lower border;
/// 0 outside plateaus.
pub fn plateau_distances<T: Copy + Ord + Send + Sync>(grid: &GridImage<T>) -> Vec<u32> {
    let geom = grid.geometry();
    let plateaus = find_plateaus(grid);
    let mut member = vec![0u32; geom.len()];
    for (i, plateau) in plateaus.iter().enumerate() {
        for &p in &plateau.pixels {
            member[p] = i as u32 + 1;
        }
    }
    let per_plateau: Vec<Vec<(usize, u32)>> = plateaus
        .par_iter()
        .enumerate()
        .map(|(i, plateau)| plateau_bfs(&geom, &member, i as u32 + 1, plateau))
        .collect();
    let mut dist = vec![0u32; geom.len()];
    for (p, d) in per_plateau.into_iter().flatten() {
        dist[p] = d;
    }
    dist
}

/// Replaces each plateau by its geodesic distance to the lower border.
///
/// Values are promoted to a fixed-point scale `s = D + 1`, `D` being the
/// largest plateau distance: a pixel of value `v` becomes `v * s`, a plateau
/// pixel at distance `d` becomes `v * s + d`. Order against every outside
/// neighbour is preserved, and an image without plateaus is returned with
/// its values unchanged (`s = 1`).
pub fn geodesic_plateau_distance<T>(grid: &GridImage<T>) -> GridImage<u64>
where
    T: Copy + Ord + Send + Sync + Into<u64>,
{
    let dist = plateau_distances(grid);
    let scale = dist.iter().copied().max().unwrap_or(0) as u64 + 1;
    let values = grid
        .values()
        .iter()
        .zip(&dist)
        .map(|(&v, &d)| v.into() * scale + d as u64)
        .collect();
    GridImage::from_geometry(grid.geometry(), values).expect("same geometry")
}
