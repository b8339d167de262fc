//! Seed lists: `x,y,label` triples given inline (`;`-separated) or as CSV
//! lines, or a label raster.

use steepwater::{Geometry, LabelField, Seed};

use crate::error::FormatError;
use crate::pnm::Pgm;

fn parse_field<T: std::str::FromStr>(
    value: &str,
    line: usize,
    what: &str,
) -> Result<T, FormatError> {
    value.trim().parse().map_err(|_| FormatError::Line {
        line,
        message: format!("invalid {what} `{}`", value.trim()),
    })
}

fn seed_from_fields<'a>(
    fields: impl Iterator<Item = &'a str>,
    line: usize,
) -> Result<Seed, FormatError> {
    let fields: Vec<&str> = fields.collect();
    if fields.len() != 3 {
        return Err(FormatError::Line {
            line,
            message: format!("expected x,y,label, found {} fields", fields.len()),
        });
    }
    Ok(Seed::new(
        parse_field(fields[0], line, "x")?,
        parse_field(fields[1], line, "y")?,
        parse_field(fields[2], line, "label")?,
    ))
}

/// Parses `x,y,label;x,y,label;…`. Empty entries are skipped.
pub fn parse_seed_list(text: &str) -> Result<Vec<Seed>, FormatError> {
    text.split(';')
        .enumerate()
        .filter(|(_, entry)| !entry.trim().is_empty())
        .map(|(i, entry)| seed_from_fields(entry.split(','), i + 1))
        .collect()
}

/// Formats seeds the way [`parse_seed_list`] reads them.
pub fn format_seed_list(seeds: &[Seed]) -> String {
    seeds
        .iter()
        .map(|s| format!("{},{},{}", s.x, s.y, s.label))
        .collect::<Vec<_>>()
        .join(";")
}

/// Reads CSV records `x,y,label`; `#` starts a comment line.
pub fn parse_seed_csv(text: &str) -> Result<Vec<Seed>, FormatError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    reader
        .records()
        .map(|record| {
            let record = record.map_err(|e| FormatError::Line {
                line: e.position().map_or(0, |p| p.line() as usize),
                message: e.to_string(),
            })?;
            let line = record.position().map_or(0, |p| p.line() as usize);
            seed_from_fields(record.iter(), line)
        })
        .collect()
}

/// Writes seeds as CSV lines.
pub fn format_seed_csv(seeds: &[Seed]) -> String {
    seeds
        .iter()
        .map(|s| format!("{},{},{}\n", s.x, s.y, s.label))
        .collect()
}

/// Places seeds into a label field; a pixel named twice keeps the larger
/// label.
pub fn seeds_to_field(geometry: Geometry, seeds: &[Seed]) -> steepwater::Result<LabelField> {
    let mut field = LabelField::empty(geometry);
    for s in seeds {
        if s.x >= geometry.width || s.y >= geometry.height {
            return Err(steepwater::Error::SeedOutOfBounds { x: s.x, y: s.y });
        }
        if s.label == 0 {
            return Err(steepwater::Error::ZeroSeedLabel);
        }
        let p = geometry.index(s.x, s.y);
        let slot = &mut field.labels_mut()[p];
        *slot = (*slot).max(s.label);
    }
    Ok(field)
}

/// Label raster whose nonzero samples are seeds.
pub fn field_from_pgm(geometry: Geometry, pgm: &Pgm) -> steepwater::Result<LabelField> {
    if (pgm.width, pgm.height) != (geometry.width, geometry.height) {
        return Err(steepwater::Error::GeometryMismatch);
    }
    LabelField::new(geometry, pgm.samples.iter().map(|&s| s as u32).collect())
}
