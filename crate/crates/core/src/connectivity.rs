use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Neighbourhood of a pixel on a rectangular array.
///
/// Neighbour `n` is encoded by bit `n` (weight `2^n`) of an arrow mask.
/// Directions run counter-clockwise starting east, with y growing downward:
///
/// * `Square4`: E, N, W, S
/// * `Square8`: E, NE, N, NW, W, SW, S, SE
/// * `Hex6`: E, NE, NW, W, SW, SE, on offset rows where odd rows are
///   shifted half a pixel to the right.
///
/// The opposite of neighbour `n` is `(n + count / 2) % count`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Connectivity {
    Square4,
    Square8,
    Hex6,
}

const SQUARE4: [(isize, isize); 4] = [(1, 0), (0, -1), (-1, 0), (0, 1)];
const SQUARE8: [(isize, isize); 8] = [
    (1, 0),
    (1, -1),
    (0, -1),
    (-1, -1),
    (-1, 0),
    (-1, 1),
    (0, 1),
    (1, 1),
];
const HEX_EVEN: [(isize, isize); 6] = [(1, 0), (0, -1), (-1, -1), (-1, 0), (-1, 1), (0, 1)];
const HEX_ODD: [(isize, isize); 6] = [(1, 0), (1, -1), (0, -1), (-1, 0), (0, 1), (1, 1)];

impl Connectivity {
    pub const ALL: [Connectivity; 3] = [
        Connectivity::Square4,
        Connectivity::Square8,
        Connectivity::Hex6,
    ];

    pub fn neighbor_count(self) -> usize {
        match self {
            Connectivity::Square4 => 4,
            Connectivity::Square8 => 8,
            Connectivity::Hex6 => 6,
        }
    }

    /// `(dx, dy)` displacements for a pixel in row `y`.
    #[inline]
    pub fn offsets(self, y: usize) -> &'static [(isize, isize)] {
        match self {
            Connectivity::Square4 => &SQUARE4,
            Connectivity::Square8 => &SQUARE8,
            Connectivity::Hex6 if y.is_multiple_of(2) => &HEX_EVEN,
            Connectivity::Hex6 => &HEX_ODD,
        }
    }

    #[inline]
    pub fn opposite(self, n: usize) -> usize {
        let count = self.neighbor_count();
        (n + count / 2) % count
    }

    /// Mask with every direction set.
    pub fn full_mask(self) -> u8 {
        ((1u16 << self.neighbor_count()) - 1) as u8
    }

    /// Numeric id used in the arrow-field file header.
    pub fn id(self) -> u32 {
        match self {
            Connectivity::Square4 => 0,
            Connectivity::Square8 => 1,
            Connectivity::Hex6 => 2,
        }
    }

    pub fn from_id(id: u32) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.id() == id)
    }

    pub fn name(self) -> &'static str {
        match self {
            Connectivity::Square4 => "square4",
            Connectivity::Square8 => "square8",
            Connectivity::Hex6 => "hex6",
        }
    }

    /// Sets bit `n` for every direction `n` in `directions`.
    pub fn encode(self, directions: &[usize]) -> Result<u8> {
        let count = self.neighbor_count();
        directions.iter().try_fold(0u8, |mask, &n| {
            if n >= count {
                Err(Error::DirectionOutOfRange {
                    index: n,
                    neighbors: count,
                })
            } else {
                Ok(mask | (1 << n))
            }
        })
    }

    /// Directions present in `mask`, ascending.
    pub fn decode(self, mask: u8) -> Vec<usize> {
        (0..self.neighbor_count())
            .filter(|n| mask & (1 << n) != 0)
            .collect()
    }
}

impl fmt::Display for Connectivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownConnectivity(pub String);

impl fmt::Display for UnknownConnectivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown connectivity `{}`", self.0)
    }
}

impl std::error::Error for UnknownConnectivity {}

impl FromStr for Connectivity {
    type Err = UnknownConnectivity;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| UnknownConnectivity(s.to_string()))
    }
}
