//! Binary PGM (P5) and PPM (P6) rasters.

use crate::error::FormatError;

/// A gray-level raster as stored in a PGM file. Samples are widened to
/// `u16` whatever the file depth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pgm {
    pub width: usize,
    pub height: usize,
    pub maxval: u16,
    pub samples: Vec<u16>,
}

impl Pgm {
    pub fn new(width: usize, height: usize, maxval: u16, samples: Vec<u16>) -> Self {
        debug_assert_eq!(samples.len(), width * height);
        Pgm {
            width,
            height,
            maxval,
            samples,
        }
    }
}

/// A color raster as stored in a PPM file, 8 bits per channel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ppm {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<[u8; 3]>,
}

struct Header {
    width: usize,
    height: usize,
    maxval: u16,
    data_start: usize,
}

fn parse_header(bytes: &[u8], magic: &[u8; 2]) -> Result<Header, FormatError> {
    if bytes.len() < 2 || &bytes[..2] != magic {
        return Err(FormatError::Magic(
            String::from_utf8_lossy(magic).into_owned(),
        ));
    }
    let mut pos = 2;
    let mut fields = [0usize; 3];
    for field in &mut fields {
        // whitespace and comments between tokens
        loop {
            match bytes.get(pos) {
                Some(b) if b.is_ascii_whitespace() => pos += 1,
                Some(b'#') => {
                    while bytes.get(pos).is_some_and(|&b| b != b'\n') {
                        pos += 1;
                    }
                }
                _ => break,
            }
        }
        let start = pos;
        while bytes.get(pos).is_some_and(u8::is_ascii_digit) {
            pos += 1;
        }
        if start == pos {
            return Err(FormatError::Header("expected a decimal number".into()));
        }
        *field = std::str::from_utf8(&bytes[start..pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| FormatError::Header("number out of range".into()))?;
    }
    match bytes.get(pos) {
        Some(b) if b.is_ascii_whitespace() => pos += 1,
        _ => {
            return Err(FormatError::Header(
                "missing whitespace after maxval".into(),
            ))
        }
    }
    let [width, height, maxval] = fields;
    if width == 0 || height == 0 {
        return Err(FormatError::Header("zero width or height".into()));
    }
    if maxval == 0 || maxval > 65535 {
        return Err(FormatError::Header(format!(
            "maxval {maxval} outside 1..=65535"
        )));
    }
    Ok(Header {
        width,
        height,
        maxval: maxval as u16,
        data_start: pos,
    })
}

fn check_length(data: &[u8], expected: usize) -> Result<(), FormatError> {
    if data.len() != expected {
        return Err(FormatError::DataLength {
            expected,
            actual: data.len(),
        });
    }
    Ok(())
}

pub fn read_pgm(bytes: &[u8]) -> Result<Pgm, FormatError> {
    let h = parse_header(bytes, b"P5")?;
    let count = h
        .width
        .checked_mul(h.height)
        .ok_or_else(|| FormatError::Header("image too large".into()))?;
    let data = &bytes[h.data_start..];
    let samples: Vec<u16> = if h.maxval < 256 {
        check_length(data, count)?;
        data.iter().map(|&b| b as u16).collect()
    } else {
        check_length(data, count * 2)?;
        data.chunks_exact(2)
            .map(|c| u16::from_be_bytes([c[0], c[1]]))
            .collect()
    };
    if let Some(p) = samples.iter().position(|&s| s > h.maxval) {
        return Err(FormatError::SampleAboveMaxval(p));
    }
    Ok(Pgm::new(h.width, h.height, h.maxval, samples))
}

pub fn write_pgm(pgm: &Pgm) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n{}\n", pgm.width, pgm.height, pgm.maxval).into_bytes();
    if pgm.maxval < 256 {
        out.extend(pgm.samples.iter().map(|&s| s as u8));
    } else {
        out.extend(pgm.samples.iter().flat_map(|s| s.to_be_bytes()));
    }
    out
}

pub fn read_ppm(bytes: &[u8]) -> Result<Ppm, FormatError> {
    let h = parse_header(bytes, b"P6")?;
    if h.maxval != 255 {
        return Err(FormatError::Header(
            "only maxval 255 is supported for PPM".into(),
        ));
    }
    let data = &bytes[h.data_start..];
    check_length(data, h.width * h.height * 3)?;
    let pixels = data.chunks_exact(3).map(|c| [c[0], c[1], c[2]]).collect();
    Ok(Ppm {
        width: h.width,
        height: h.height,
        pixels,
    })
}

pub fn write_ppm(ppm: &Ppm) -> Vec<u8> {
    let mut out = format!("P6\n{} {}\n255\n", ppm.width, ppm.height).into_bytes();
    out.extend(ppm.pixels.iter().flatten());
    out
}
