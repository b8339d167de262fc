//! One CLI invocation: read inputs, compute every output in memory, then
//! write them all.

use std::fs;
use std::path::{Path, PathBuf};

use steepwater::flooding::{fill_pits, hq_watershed, hq_watershed_from_minima};
use steepwater::graph::steepest_watershed_graph;
use steepwater::graph::text::{format_labels, parse_graph, ParseError};
use steepwater::plateau::geodesic_plateau_distance;
use steepwater::{
    trace_downstream, ArrowField, Connectivity, GridImage, GridWatershed, LabelField,
};

use crate::arwf::{read_arwf, write_arwf};
use crate::error::{CliError, FormatError};
use crate::pnm::{read_pgm, write_pgm, write_ppm, Pgm};
use crate::render::{arrows_ppm, labels_ppm, mosaic, overlay};
use crate::seeds::{field_from_pgm, parse_seed_csv, parse_seed_list, seeds_to_field};

/// Environment variable capping the worker threads.
pub const THREADS_VAR: &str = "STEEPWATER_THREADS";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    /// Worker threads; `None` uses the default pool.
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Watershed(WatershedConfig),
    Flood {
        input: PathBuf,
        connectivity: String,
        seeds: Option<PathBuf>,
        output: PathBuf,
    },
    FillPits {
        input: PathBuf,
        connectivity: String,
        output: PathBuf,
    },
    Trace {
        arrows: PathBuf,
        seeds: SeedSource,
        image: Option<PathBuf>,
        overlay: Option<PathBuf>,
        output: PathBuf,
    },
    GraphWatershed {
        input: PathBuf,
        output: PathBuf,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WatershedConfig {
    pub input: PathBuf,
    pub connectivity: String,
    pub output: PathBuf,
    pub plateau_distance: bool,
    pub arrows: Option<PathBuf>,
    pub arrows_ppm: Option<PathBuf>,
    pub labels_ppm: Option<PathBuf>,
    pub mosaic: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeedSource {
    /// `x,y,label;…`
    Inline(String),
    /// CSV file of `x,y,label` lines.
    File(PathBuf),
}

/// Parses the thread-count variable; unset or empty means no cap.
pub fn threads_from_env(value: Option<&str>) -> Result<Option<usize>, CliError> {
    match value.map(str::trim) {
        None | Some("") => Ok(None),
        Some(v) => match v.parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Invalid(format!(
                "{THREADS_VAR} must be a positive integer, got `{v}`"
            ))),
        },
    }
}

/// Runs one invocation. Nothing is written unless every output could be
/// computed.
pub fn run(config: &RunConfig) -> Result<(), CliError> {
    let outputs = match config.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Invalid(format!("cannot start {n} threads: {e}")))?
            .install(|| compute(&config.command))?,
        None => compute(&config.command)?,
    };
    commit(outputs)
}

type Outputs = Vec<(PathBuf, Vec<u8>)>;

fn compute(command: &Command) -> Result<Outputs, CliError> {
    match command {
        Command::Watershed(cfg) => watershed_outputs(cfg),
        Command::Flood {
            input,
            connectivity,
            seeds,
            output,
        } => {
            let conn: Connectivity = connectivity.parse()?;
            let pgm = load_pgm(input)?;
            let grid = to_grid(&pgm, conn)?;
            let labels = match seeds {
                None => hq_watershed_from_minima(&grid)?,
                Some(path) => hq_watershed(&grid, &load_seed_field(path, &grid)?)?,
            };
            Ok(vec![(output.clone(), label_pgm(&labels)?)])
        }
        Command::FillPits {
            input,
            connectivity,
            output,
        } => {
            let conn: Connectivity = connectivity.parse()?;
            let pgm = load_pgm(input)?;
            let filled = fill_pits(&to_grid(&pgm, conn)?)?;
            let out = Pgm::new(pgm.width, pgm.height, pgm.maxval, filled.into_values());
            Ok(vec![(output.clone(), write_pgm(&out))])
        }
        Command::Trace {
            arrows,
            seeds,
            image,
            overlay: overlay_path,
            output,
        } => {
            let field = load_arrows(arrows)?;
            let seed_list = match seeds {
                SeedSource::Inline(text) => {
                    parse_seed_list(text).map_err(|e| CliError::format("--seeds", e))?
                }
                SeedSource::File(path) => {
                    parse_seed_csv(&read_text(path)?).map_err(|e| CliError::format(path, e))?
                }
            };
            let traced = trace_downstream(&field, &seed_list)?;
            let mut outputs = vec![(output.clone(), label_pgm(&traced)?)];
            match (image, overlay_path) {
                (Some(image), Some(path)) => {
                    let pgm = load_pgm(image)?;
                    let geom = field.geometry();
                    if (pgm.width, pgm.height) != (geom.width, geom.height) {
                        return Err(steepwater::Error::GeometryMismatch.into());
                    }
                    outputs.push((path.clone(), write_ppm(&overlay(&pgm, &traced))));
                }
                (None, Some(_)) => return Err(CliError::Invalid("--overlay needs --image".into())),
                _ => {}
            }
            Ok(outputs)
        }
        Command::GraphWatershed { input, output } => {
            let graph = parse_graph(&read_text(input)?).map_err(|e| match e {
                ParseError::Syntax { line, message } => {
                    CliError::format(input, FormatError::Line { line, message })
                }
                ParseError::Graph(g) => CliError::from(g),
            })?;
            let result = steepest_watershed_graph(&graph)?;
            Ok(vec![(
                output.clone(),
                format_labels(&result.labels).into_bytes(),
            )])
        }
    }
}

fn watershed_outputs(cfg: &WatershedConfig) -> Result<Outputs, CliError> {
    let conn: Connectivity = cfg.connectivity.parse()?;
    let pgm = load_pgm(&cfg.input)?;
    let grid = to_grid(&pgm, conn)?;
    let (labels, arrows) = if cfg.plateau_distance {
        split(steepwater::watershed(&geodesic_plateau_distance(&grid))?)
    } else {
        split(steepwater::watershed(&grid)?)
    };
    let mut outputs = vec![(cfg.output.clone(), label_pgm(&labels)?)];
    if let Some(path) = &cfg.arrows {
        outputs.push((path.clone(), write_arwf(&arrows)));
    }
    if let Some(path) = &cfg.arrows_ppm {
        outputs.push((path.clone(), write_ppm(&arrows_ppm(&arrows))));
    }
    if let Some(path) = &cfg.labels_ppm {
        outputs.push((path.clone(), write_ppm(&labels_ppm(&labels))));
    }
    if let Some(path) = &cfg.mosaic {
        outputs.push((path.clone(), write_pgm(&mosaic(&pgm, &labels))));
    }
    Ok(outputs)
}

fn split<T>(r: GridWatershed<T>) -> (LabelField, ArrowField) {
    (r.labels, r.arrows)
}

fn read_bytes(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::io(path, e))
}

fn utf8(path: &Path, bytes: Vec<u8>) -> Result<String, CliError> {
    String::from_utf8(bytes).map_err(|_| {
        CliError::format(
            path,
            FormatError::Line {
                line: 0,
                message: "not valid UTF-8".into(),
            },
        )
    })
}

fn read_text(path: &Path) -> Result<String, CliError> {
    utf8(path, read_bytes(path)?)
}

fn load_pgm(path: &Path) -> Result<Pgm, CliError> {
    read_pgm(&read_bytes(path)?).map_err(|e| CliError::format(path, e))
}

fn load_arrows(path: &Path) -> Result<ArrowField, CliError> {
    read_arwf(&read_bytes(path)?).map_err(|e| CliError::format(path, e))
}

/// Seeds from a label PGM (recognised by its magic) or a CSV file.
fn load_seed_field(path: &Path, grid: &GridImage<u16>) -> Result<LabelField, CliError> {
    let bytes = read_bytes(path)?;
    if bytes.starts_with(b"P5") {
        let pgm = read_pgm(&bytes).map_err(|e| CliError::format(path, e))?;
        return Ok(field_from_pgm(grid.geometry(), &pgm)?);
    }
    let text = utf8(path, bytes)?;
    let seeds = parse_seed_csv(&text).map_err(|e| CliError::format(path, e))?;
    Ok(seeds_to_field(grid.geometry(), &seeds)?)
}

fn to_grid(pgm: &Pgm, conn: Connectivity) -> Result<GridImage<u16>, CliError> {
    Ok(GridImage::new(
        pgm.width,
        pgm.height,
        pgm.samples.clone(),
        conn,
    )?)
}

/// Labels as a 16-bit PGM.
fn label_pgm(labels: &LabelField) -> Result<Vec<u8>, CliError> {
    let geom = labels.geometry();
    let samples = labels
        .labels()
        .iter()
        .map(|&l| u16::try_from(l))
        .collect::<Result<Vec<u16>, _>>()
        .map_err(|_| {
            CliError::Invalid(format!(
                "{} labels do not fit a 16-bit raster",
                labels.max_label()
            ))
        })?;
    Ok(write_pgm(&Pgm::new(
        geom.width,
        geom.height,
        u16::MAX,
        samples,
    )))
}

/// Writes every output next to its destination, then renames them into
/// place; on failure the temporaries are removed.
fn commit(outputs: Outputs) -> Result<(), CliError> {
    let mut staged: Vec<(PathBuf, PathBuf)> = Vec::with_capacity(outputs.len());
    let cleanup = |staged: &[(PathBuf, PathBuf)]| {
        for (tmp, _) in staged {
            let _ = fs::remove_file(tmp);
        }
    };
    for (path, bytes) in outputs {
        let mut name = path
            .file_name()
            .map(|n| n.to_os_string())
            .unwrap_or_default();
        name.push(".partial");
        let tmp = path.with_file_name(name);
        if let Err(e) = fs::write(&tmp, bytes) {
            cleanup(&staged);
            return Err(CliError::io(&path, e));
        }
        staged.push((tmp, path));
    }
    for i in 0..staged.len() {
        let (tmp, path) = &staged[i];
        if let Err(e) = fs::rename(tmp, path) {
            cleanup(&staged[i..]);
            return Err(CliError::io(path, e));
        }
    }
    Ok(())
}
