//! Arrow field files: a 16-byte header (`ARWF`, then width, height and
//! connectivity id as little-endian `u32`) followed by one mask byte per
//! pixel in row-major order.

use steepwater::{ArrowField, Connectivity, Geometry};

use crate::error::FormatError;

pub const MAGIC: &[u8; 4] = b"ARWF";
pub const HEADER_LEN: usize = 16;

pub fn write_arwf(arrows: &ArrowField) -> Vec<u8> {
    let geom = arrows.geometry();
    let mut out = Vec::with_capacity(HEADER_LEN + geom.len());
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&(geom.width as u32).to_le_bytes());
    out.extend_from_slice(&(geom.height as u32).to_le_bytes());
    out.extend_from_slice(&geom.connectivity.id().to_le_bytes());
    out.extend_from_slice(arrows.masks());
    out
}

pub fn read_arwf(bytes: &[u8]) -> Result<ArrowField, FormatError> {
    if bytes.len() < 4 || &bytes[..4] != MAGIC {
        return Err(FormatError::Magic("ARWF".into()));
    }
    if bytes.len() < HEADER_LEN {
        return Err(FormatError::Header("truncated header".into()));
    }
    let word = |i: usize| u32::from_le_bytes(bytes[i..i + 4].try_into().expect("4 bytes"));
    let (width, height, id) = (word(4) as usize, word(8) as usize, word(12));
    let connectivity = Connectivity::from_id(id).ok_or(FormatError::ConnectivityId(id))?;
    let count = width
        .checked_mul(height)
        .ok_or_else(|| FormatError::Header("image too large".into()))?;
    let data = &bytes[HEADER_LEN..];
    if data.len() != count {
        return Err(FormatError::DataLength {
            expected: count,
            actual: data.len(),
        });
    }
    ArrowField::new(Geometry::new(width, height, connectivity), data.to_vec())
        .map_err(FormatError::Arrows)
}
