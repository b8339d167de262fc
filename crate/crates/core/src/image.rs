//! Raster containers sharing one [`Geometry`].

use crate::connectivity::Connectivity;
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// Size and neighbourhood of a row-major raster. Neighbours outside the
/// array do not exist; there is no wraparound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Geometry {
    pub width: usize,
    pub height: usize,
    pub connectivity: Connectivity,
}

impl Geometry {
    pub fn new(width: usize, height: usize, connectivity: Connectivity) -> Self {
        Geometry {
            width,
            height,
            connectivity,
        }
    }

    pub fn len(&self) -> usize {
        self.width * self.height
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn index(&self, x: usize, y: usize) -> usize {
        y * self.width + x
    }

    #[inline]
    pub fn coords(&self, p: usize) -> (usize, usize) {
        (p % self.width, p / self.width)
    }

    /// Index of neighbour `n` of pixel `p`, if it lies inside the array.
    #[inline]
    pub fn neighbor(&self, p: usize, n: usize) -> Option<usize> {
        let (x, y) = self.coords(p);
        let (dx, dy) = self.connectivity.offsets(y)[n];
        self.shift(x, y, dx, dy)
    }

    #[inline]
    fn shift(&self, x: usize, y: usize, dx: isize, dy: isize) -> Option<usize> {
        let nx = x.checked_add_signed(dx).filter(|&v| v < self.width)?;
        let ny = y.checked_add_signed(dy).filter(|&v| v < self.height)?;
        Some(ny * self.width + nx)
    }

    /// `(direction, index)` of every in-bounds neighbour of `p`.
    #[inline]
    pub fn neighbors(&self, p: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let (x, y) = self.coords(p);
        self.connectivity
            .offsets(y)
            .iter()
            .enumerate()
            .filter_map(move |(n, &(dx, dy))| self.shift(x, y, dx, dy).map(|q| (n, q)))
    }

    /// Mask of the directions of `p` that stay inside the array.
    pub fn in_bounds_mask(&self, p: usize) -> u8 {
        self.neighbors(p).fold(0, |m, (n, _)| m | (1 << n))
    }

    pub fn on_border(&self, p: usize) -> bool {
        let (x, y) = self.coords(p);
        x == 0 || y == 0 || x + 1 == self.width || y + 1 == self.height
    }

    /// Undirected edge list of the induced pixel graph, each edge once.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for p in 0..self.len() {
            for (_, q) in self.neighbors(p) {
                if p < q {
                    edges.push((p, q));
                }
            }
        }
        edges
    }
}

/// Scalar raster.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridImage<T> {
    geometry: Geometry,
    values: Vec<T>,
}

impl<T: Copy> GridImage<T> {
    pub fn new(
        width: usize,
        height: usize,
        values: Vec<T>,
        connectivity: Connectivity,
    ) -> Result<Self> {
        Self::from_geometry(Geometry::new(width, height, connectivity), values)
    }

    pub fn from_geometry(geometry: Geometry, values: Vec<T>) -> Result<Self> {
        if values.len() != geometry.len() {
            return Err(Error::SizeMismatch {
                width: geometry.width,
                height: geometry.height,
                expected: geometry.len(),
                actual: values.len(),
            });
        }
        Ok(GridImage { geometry, values })
    }

    pub fn filled(geometry: Geometry, value: T) -> Self {
        GridImage {
            geometry,
            values: vec![value; geometry.len()],
        }
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    pub fn width(&self) -> usize {
        self.geometry.width
    }

    pub fn height(&self) -> usize {
        self.geometry.height
    }

    pub fn connectivity(&self) -> Connectivity {
        self.geometry.connectivity
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [T] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn get(&self, x: usize, y: usize) -> T {
        self.values[self.geometry.index(x, y)]
    }

    pub fn with_connectivity(mut self, connectivity: Connectivity) -> Self {
        self.geometry.connectivity = connectivity;
        self
    }

    pub fn map<U: Copy>(&self, f: impl Fn(T) -> U) -> GridImage<U> {
        GridImage {
            geometry: self.geometry,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    /// The pixel graph: one node per pixel (row-major), one edge per pair of
    /// neighbours.
    pub fn to_graph(&self) -> WeightedGraph<T>
    where
        T: Ord,
    {
        WeightedGraph::new(self.values.clone(), &self.geometry.edges())
            .expect("pixel adjacency is a simple graph")
    }
}

/// Per-pixel out-arrow masks: bit `n` set iff an arrow points to neighbour `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowField {
    geometry: Geometry,
    masks: Vec<u8>,
}

impl ArrowField {
    pub fn empty(geometry: Geometry) -> Self {
        ArrowField {
            geometry,
            masks: vec![0; geometry.len()],
        }
    }

    /// Wraps raw masks after checking every bit points inside the array.
    pub fn new(geometry: Geometry, masks: Vec<u8>) -> Result<Self> {
        if masks.len() != geometry.len() {
            return Err(Error::SizeMismatch {
                width: geometry.width,
                height: geometry.height,
                expected: geometry.len(),
                actual: masks.len(),
            });
        }
        let field = ArrowField { geometry, masks };
        field.validate()?;
        Ok(field)
    }

    pub(crate) fn from_raw(geometry: Geometry, masks: Vec<u8>) -> Self {
        ArrowField { geometry, masks }
    }

    pub fn validate(&self) -> Result<()> {
        for (p, &mask) in self.masks.iter().enumerate() {
            let stray = mask & !self.geometry.in_bounds_mask(p);
            if stray != 0 {
                return Err(Error::InconsistentMask {
                    pixel: p,
                    bit: stray.trailing_zeros() as u8,
                });
            }
        }
        Ok(())
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    pub fn masks(&self) -> &[u8] {
        &self.masks
    }

    pub fn mask(&self, p: usize) -> u8 {
        self.masks[p]
    }

    pub fn into_masks(self) -> Vec<u8> {
        self.masks
    }

    /// Indices of the pixels `p` points to.
    pub fn targets(&self, p: usize) -> impl Iterator<Item = usize> + '_ {
        let mask = self.masks[p];
        self.geometry
            .neighbors(p)
            .filter(move |&(n, _)| mask & (1 << n) != 0)
            .map(|(_, q)| q)
    }
}

/// Per-pixel labels; 0 means unlabeled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelField {
    geometry: Geometry,
    labels: Vec<u32>,
}

impl LabelField {
    pub fn empty(geometry: Geometry) -> Self {
        LabelField {
            geometry,
            labels: vec![0; geometry.len()],
        }
    }

    pub fn new(geometry: Geometry, labels: Vec<u32>) -> Result<Self> {
        if labels.len() != geometry.len() {
            return Err(Error::SizeMismatch {
                width: geometry.width,
                height: geometry.height,
                expected: geometry.len(),
                actual: labels.len(),
            });
        }
        Ok(LabelField { geometry, labels })
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn labels_mut(&mut self) -> &mut [u32] {
        &mut self.labels
    }

    pub fn into_labels(self) -> Vec<u32> {
        self.labels
    }

    pub fn get(&self, p: usize) -> u32 {
        self.labels[p]
    }

    pub fn max_label(&self) -> u32 {
        self.labels.iter().copied().max().unwrap_or(0)
    }

    pub fn labeled_count(&self) -> usize {
        self.labels.iter().filter(|&&l| l != 0).count()
    }

    pub fn is_complete(&self) -> bool {
        self.labels.iter().all(|&l| l != 0)
    }
}
