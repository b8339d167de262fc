use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use steepwater_cli::app::{threads_from_env, THREADS_VAR};
use steepwater_cli::{run, Command, RunConfig, SeedSource, WatershedConfig};

/// Steepest (lexicographic) watershed segmentation of PGM images and
/// node-weighted graphs.
#[derive(Parser, Debug)]
#[command(name = "steepwater", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Steepest watershed of a PGM image.
    Watershed {
        input: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
        /// Label raster (16-bit PGM).
        #[arg(short, long)]
        output: PathBuf,
        /// Replace plateaus by their distance to the lower border first.
        #[arg(long)]
        plateau_distance: bool,
        /// Steepest arrow field (ARWF).
        #[arg(long)]
        arrows: Option<PathBuf>,
        /// Arrow masks in false color (PPM).
        #[arg(long)]
        arrows_ppm: Option<PathBuf>,
        /// Labels in false color (PPM).
        #[arg(long)]
        labels_ppm: Option<PathBuf>,
        /// Basins painted with their mean gray (PGM).
        #[arg(long)]
        mosaic: Option<PathBuf>,
    },
    /// Flooding watershed on a hierarchical queue.
    Flood {
        input: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
        /// Label PGM or CSV of x,y,label; regional minima when omitted.
        #[arg(long)]
        seeds: Option<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Fill every regional minimum not touching the image border.
    Fillpits {
        input: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Follow the steepest arrows downstream from seed pixels.
    Trace {
        /// Arrow field written by `watershed --arrows`.
        #[arg(long)]
        arrows: PathBuf,
        /// Seeds as `x,y,label;x,y,label;...`.
        #[arg(
            long,
            conflicts_with = "seeds_file",
            required_unless_present = "seeds_file"
        )]
        seeds: Option<String>,
        /// CSV file of x,y,label lines.
        #[arg(long)]
        seeds_file: Option<PathBuf>,
        /// Background image for the overlay.
        #[arg(long, requires = "overlay")]
        image: Option<PathBuf>,
        /// Trajectories drawn over the image (PPM).
        #[arg(long, requires = "image")]
        overlay: Option<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Steepest watershed of a node-weighted graph in text form.
    GraphWatershed {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Args, Debug)]
struct GridArgs {
    /// square4, square8 or hex6.
    #[arg(short, long, default_value = "square4")]
    connectivity: String,
}

impl From<Cmd> for Command {
    fn from(cmd: Cmd) -> Self {
        match cmd {
            Cmd::Watershed {
                input,
                grid,
                output,
                plateau_distance,
                arrows,
                arrows_ppm,
                labels_ppm,
                mosaic,
            } => Command::Watershed(WatershedConfig {
                input,
                connectivity: grid.connectivity,
                output,
                plateau_distance,
                arrows,
                arrows_ppm,
                labels_ppm,
                mosaic,
            }),
            Cmd::Flood {
                input,
                grid,
                seeds,
                output,
            } => Command::Flood {
                input,
                connectivity: grid.connectivity,
                seeds,
                output,
            },
            Cmd::Fillpits {
                input,
                grid,
                output,
            } => Command::FillPits {
                input,
                connectivity: grid.connectivity,
                output,
            },
            Cmd::Trace {
                arrows,
                seeds,
                seeds_file,
                image,
                overlay,
                output,
            } => Command::Trace {
                arrows,
                seeds: match (seeds, seeds_file) {
                    (Some(text), _) => SeedSource::Inline(text),
                    (None, Some(path)) => SeedSource::File(path),
                    (None, None) => unreachable!("clap requires one seed source"),
                },
                image,
                overlay,
                output,
            },
            Cmd::GraphWatershed { input, output } => Command::GraphWatershed { input, output },
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = threads_from_env(std::env::var(THREADS_VAR).ok().as_deref()).and_then(|threads| {
        run(&RunConfig {
            command: cli.command.into(),
            threads,
        })
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("steepwater: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
