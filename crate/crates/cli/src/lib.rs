//! Command-line front end for `swcnt-core`: geometry reports, XYZ lattice
//! export, Brillouin-zone data, band tables, the verification suite and the
//! chord-ratio tables.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub mod commands;
pub mod error;
pub mod report;
pub mod verify;

pub use error::{CliError, CliResult};
pub use report::{BandRecord, BzReport, CheckLine, CheckStatus, DomainReport, GeometryReport};

#[derive(Debug, Parser)]
#[command(name = "swcnt", version, about = "Single-walled carbon nanotube geometry, symmetry and bands")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Geometry report for the (n,m) tube.
    Geom {
        n: i64,
        m: i64,
        /// Graphene lattice constant in Angstrom.
        #[arg(long)]
        a: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Write atom positions of a finite tube as XYZ.
    Lattice {
        n: i64,
        m: i64,
        /// Number of hexagonal cells N.
        #[arg(long)]
        cells: usize,
        #[arg(long)]
        a: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Brillouin hexagon vertices, area and wave-vector domains.
    Bz {
        n: i64,
        m: i64,
        #[arg(long)]
        json: bool,
    },
    /// Tight-binding bands on the quantized kappa grid, as CSV.
    Bands {
        n: i64,
        m: i64,
        #[arg(long = "L")]
        l: usize,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        order: u8,
        /// JSON file with any subset of the tight-binding parameters.
        #[arg(long)]
        params: Option<PathBuf>,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every invariant suite on the (n,m) tube.
    Verify {
        n: i64,
        m: i64,
        #[arg(long = "L", default_value_t = 4)]
        l: usize,
    },
    /// Computed vs published chord-length ratios.
    Tables,
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> CliResult<()> {
    match &cli.command {
        Command::Geom { n, m, a, json } => commands::cmd_geom(*n, *m, *a, *json, out),
        Command::Lattice { n, m, cells, a, out: path } => {
            let atoms = commands::cmd_lattice(*n, *m, *cells, *a, path)?;
            writeln!(out, "wrote {atoms} atoms to {}", path.display())?;
            Ok(())
        }
        Command::Bz { n, m, json } => commands::cmd_bz(*n, *m, *json, out),
        Command::Bands { n, m, l, order, params, out: path } => commands::cmd_bands(
            &commands::BandsArgs { n: *n, m: *m, l: *l, order: *order, params: params.clone(), out: path.clone() },
            out,
        ),
        Command::Verify { n, m, l } => {
            let geom = swcnt_core::TubeGeometry::with_half_count(&commands::spec(*n, *m, None)?, *l)?;
            let lines = verify::run_checks(&geom, *l)?;
            let mut failed = 0;
            for line in &lines {
                if line.status == CheckStatus::Fail {
                    failed += 1;
                }
                writeln!(out, "{line}")?;
            }
            writeln!(out, "{} checks, {failed} failed", lines.len())?;
            if failed > 0 {
                return Err(CliError::VerificationFailed(failed));
            }
            Ok(())
        }
        Command::Tables => {
            let flagged = commands::cmd_tables(out)?;
            writeln!(out, "{flagged} row(s) outside 5e-5")?;
            Ok(())
        }
    }
}
