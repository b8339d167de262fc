//! Synthetic rasters shared by the test suites. Images are row-major `u8`
//! vectors of `width * height` samples.

use std::f64::consts::PI;
use std::ops::Range;

use rand::Rng;

/// Uniform noise in `0..levels`.
pub fn noise<R: Rng>(rng: &mut R, width: usize, height: usize, levels: u8) -> Vec<u8> {
    (0..width * height)
        .map(|_| rng.gen_range(0..levels))
        .collect()
}

/// Overwrites `count` random blobs with a constant value each. A blob grows
/// by 4-connected random accretion inside a box of side `max_diameter`, so
/// it is a connected flat region of diameter at most `max_diameter`. Blob
/// values are drawn from `levels`.
pub fn inject_plateaus<R: Rng>(
    rng: &mut R,
    values: &mut [u8],
    width: usize,
    height: usize,
    count: usize,
    max_diameter: usize,
    levels: Range<u8>,
) {
    for _ in 0..count {
        let side = rng.gen_range(2..=max_diameter).min(width).min(height);
        let x0 = rng.gen_range(0..=width - side);
        let y0 = rng.gen_range(0..=height - side);
        let level = rng.gen_range(levels.clone());
        let target = rng.gen_range(side..=side * side);
        let mut blob = vec![(x0 + side / 2, y0 + side / 2)];
        while blob.len() < target {
            let (x, y) = blob[rng.gen_range(0..blob.len())];
            let (nx, ny) = match rng.gen_range(0..4) {
                0 => (x + 1, y),
                1 => (x.wrapping_sub(1), y),
                2 => (x, y + 1),
                _ => (x, y.wrapping_sub(1)),
            };
            if nx >= x0 && nx < x0 + side && ny >= y0 && ny < y0 + side && !blob.contains(&(nx, ny))
            {
                blob.push((nx, ny));
            }
        }
        for (x, y) in blob {
            values[y * width + x] = level;
        }
    }
}

/// Tilted terrain with noise and `pits` closed depressions away from the
/// border. Values rise toward the bottom-right corner; each pit is a disk of
/// radius 2 to 4 sunk 40 levels below its rim.
pub fn dem_with_pits<R: Rng>(rng: &mut R, width: usize, height: usize, pits: usize) -> Vec<u8> {
    let span = (width + height) as f64;
    let mut values: Vec<u8> = (0..width * height)
        .map(|p| {
            let (x, y) = ((p % width) as f64, (p / width) as f64);
            let base = 60.0 + 150.0 * (x + y) / span;
            (base + rng.gen_range(0.0..6.0)) as u8
        })
        .collect();
    let margin = 6;
    for _ in 0..pits {
        let cx = rng.gen_range(margin..width - margin) as isize;
        let cy = rng.gen_range(margin..height - margin) as isize;
        let r: isize = rng.gen_range(2..=4);
        for dy in -r..=r {
            for dx in -r..=r {
                if dx * dx + dy * dy <= r * r {
                    let p = (cy + dy) as usize * width + (cx + dx) as usize;
                    values[p] = values[p].saturating_sub(40);
                }
            }
        }
    }
    values
}

/// Two interleaved spiral stripes of one gray tone on a bright background,
/// both ending in a dark disc at the centre.
#[derive(Debug, Clone)]
pub struct Spiral {
    pub size: usize,
    pub values: Vec<u8>,
    /// Outer end of each stripe, as `(x, y)`.
    pub tips: [(usize, usize); 2],
    /// Pixels of either stripe or of the central disc.
    pub mask: Vec<bool>,
}

pub const SPIRAL_BACKGROUND: u8 = 220;
pub const SPIRAL_STRIPE: u8 = 120;
pub const SPIRAL_MINIMUM: u8 = 10;

/// Archimedean stripes `stripe` pixels wide, half a turn apart, winding
/// `turns` times around a disc of radius `0.6 * pitch`.
pub fn double_spiral(size: usize, turns: f64, stripe: f64) -> Spiral {
    let c = (size as f64 - 1.0) / 2.0;
    let pitch = (c - stripe) / turns;
    let disc = 0.6 * pitch;
    let mut values = vec![SPIRAL_BACKGROUND; size * size];
    let mut mask = vec![false; size * size];
    let mut tips = [((0, 0), f64::MIN); 2];
    for y in 0..size {
        for x in 0..size {
            let p = y * size + x;
            let (dx, dy) = (x as f64 - c, y as f64 - c);
            let r = (dx * dx + dy * dy).sqrt();
            if r <= disc {
                values[p] = SPIRAL_MINIMUM;
                mask[p] = true;
                continue;
            }
            let theta = dy.atan2(dx).rem_euclid(2.0 * PI);
            for (arm, tip) in tips.iter_mut().enumerate() {
                let phase = theta / (2.0 * PI) + arm as f64 * 0.5;
                // nearest winding: centre line at radius pitch * (k + phase)
                let k = (r / pitch - phase).round().max(0.0);
                let along = k + phase;
                if along > turns || (r - pitch * along).abs() * 2.0 > stripe {
                    continue;
                }
                values[p] = SPIRAL_STRIPE;
                mask[p] = true;
                if along > tip.1 {
                    *tip = ((x, y), along);
                }
            }
        }
    }
    Spiral {
        size,
        values,
        tips: [tips[0].0, tips[1].0],
        mask,
    }
}
