//! False-color and mosaic renderings.

use steepwater::{ArrowField, LabelField};

use crate::pnm::{Pgm, Ppm};

/// Fixed 256-entry palette: entry 0 is black, the others walk the hue circle
/// by the golden angle at fixed saturation and brightness, so neighbouring
/// indices get well separated colors.
pub fn palette(index: u8) -> [u8; 3] {
    if index == 0 {
        return [0, 0, 0];
    }
    // hue in units of 1/1536 of a turn
    let hue = (index as u32 * 587) % 1536;
    let (sector, f) = (hue / 256, (hue % 256) as u8);
    let (hi, lo) = (240u8, 48u8);
    let up = lo + ((hi - lo) as u32 * f as u32 / 255) as u8;
    let down = hi - ((hi - lo) as u32 * f as u32 / 255) as u8;
    match sector {
        0 => [hi, up, lo],
        1 => [down, hi, lo],
        2 => [lo, hi, up],
        3 => [lo, down, hi],
        4 => [up, lo, hi],
        _ => [hi, lo, down],
    }
}

/// Color of a label: 0 is black, labels cycle through entries 1..=255.
pub fn label_color(label: u32) -> [u8; 3] {
    if label == 0 {
        return [0, 0, 0];
    }
    palette(((label - 1) % 255) as u8 + 1)
}

/// Each pixel colored by its arrow mask.
pub fn arrows_ppm(arrows: &ArrowField) -> Ppm {
    let geom = arrows.geometry();
    Ppm {
        width: geom.width,
        height: geom.height,
        pixels: arrows.masks().iter().map(|&m| palette(m)).collect(),
    }
}

/// Each pixel colored by its label.
pub fn labels_ppm(labels: &LabelField) -> Ppm {
    let geom = labels.geometry();
    Ppm {
        width: geom.width,
        height: geom.height,
        pixels: labels.labels().iter().map(|&l| label_color(l)).collect(),
    }
}

/// Every basin painted with the rounded mean gray of `image` over it
/// (halves round up); unlabeled pixels become 0.
pub fn mosaic(image: &Pgm, labels: &LabelField) -> Pgm {
    let count = labels.max_label() as usize + 1;
    let mut sum = vec![0u64; count];
    let mut n = vec![0u64; count];
    for (&l, &v) in labels.labels().iter().zip(&image.samples) {
        sum[l as usize] += v as u64;
        n[l as usize] += 1;
    }
    let mean: Vec<u16> = sum
        .iter()
        .zip(&n)
        .map(|(&s, &k)| {
            if k == 0 {
                0
            } else {
                ((2 * s + k) / (2 * k)) as u16
            }
        })
        .collect();
    let samples = labels
        .labels()
        .iter()
        .map(|&l| if l == 0 { 0 } else { mean[l as usize] })
        .collect();
    Pgm::new(image.width, image.height, image.maxval, samples)
}

/// Traced pixels in their label color over the image in gray.
pub fn overlay(image: &Pgm, labels: &LabelField) -> Ppm {
    let max = image.maxval as u32;
    let pixels = image
        .samples
        .iter()
        .zip(labels.labels())
        .map(|(&v, &l)| {
            if l != 0 {
                label_color(l)
            } else {
                let g = ((v as u32 * 255 + max / 2) / max) as u8;
                [g, g, g]
            }
        })
        .collect();
    Ppm {
        width: image.width,
        height: image.height,
        pixels,
    }
}
