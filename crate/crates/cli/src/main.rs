use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use qudit_frames::analysis::{self, DensityMatrix};
use qudit_frames::frames::{standard_frame, FrameKind};
use qudit_frames::io::{self, fmt_f64};
use qudit_frames::opframes::{build_hermitian_frame, wigner};
use qudit_frames::{composite, states, tomo, CMatrix, Error, Frame, WignerTable};

#[derive(Parser, Debug)]
#[command(name = "qudit-frames", version, about = "Frame representations of qudits: Wigner tables, tables, noise experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write table1.csv (negativity, coherence) and table2.csv (Gaussian-state spectra)
    Tables {
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Wigner table of a state as CSV or a PGM heatmap
    Wigner {
        /// Preset (pure1, mixed1, bell) or a matrix JSON file
        #[arg(long)]
        state: String,
        /// e.g. polygon:30
        #[arg(long)]
        frame: FrameSpec,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: PathBuf,
    },
    /// Frame vs displaced-parity reconstruction under coefficient noise
    Tomo {
        /// Frame of an odd dimension, e.g. icosahedron or tetrahedron
        #[arg(long)]
        frame: FrameSpec,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = 2000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Preset or matrix JSON file; defaults to the maximally mixed state
        #[arg(long)]
        state: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Frame utilities
    Frame {
        #[command(subcommand)]
        command: FrameCommand,
    },
}

#[derive(Subcommand, Debug)]
enum FrameCommand {
    /// Write one of the named frames as JSON
    Gen {
        #[arg(long)]
        kind: FrameKind,
        /// Polygon size, or dimension for orthonormal
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Pgm,
}

/// `kind` or `kind:param`
#[derive(Debug, Clone, Copy)]
struct FrameSpec {
    kind: FrameKind,
    param: usize,
}

impl FromStr for FrameSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (name, param) = match s.split_once(':') {
            Some((n, p)) => (n, Some(p.parse::<usize>().map_err(|_| format!("bad frame parameter '{p}'"))?)),
            None => (s, None),
        };
        let kind: FrameKind = name.parse().map_err(|e: Error| e.to_string())?;
        let param = match (kind, param) {
            (FrameKind::Polygon | FrameKind::Orthonormal, None) => {
                return Err(format!("{kind} needs a parameter, e.g. {kind}:5"))
            }
            (_, p) => p.unwrap_or(0),
        };
        Ok(FrameSpec { kind, param })
    }
}

impl FrameSpec {
    fn build(self) -> Result<Frame, Error> {
        standard_frame(self.kind, self.param)
    }
}

fn load_state(spec: &str) -> Result<CMatrix, Error> {
    match states::preset(spec) {
        Ok(m) => Ok(m),
        Err(_) if Path::new(spec).exists() => io::read_matrix(Path::new(spec)),
        Err(_) => Err(Error::Input(format!("'{spec}' is neither a preset (pure1, mixed1, bell) nor a file"))),
    }
}

fn write(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))
}

fn cmd_tables(out_dir: &Path) -> Result<(), Error> {
    let mut t1 = String::from("state_id,m,N_m,C_m\n");
    for id in ["pure1", "mixed1"] {
        let rho = DensityMatrix::new(states::preset(id)?)?;
        let rec = analysis::convergence_scan(&rho, &analysis::TABLE1_M_VALUES)?;
        for ((m, n), c) in rec.m_values.iter().zip(&rec.n_values).zip(&rec.c_values) {
            t1.push_str(&format!("{id},{m},{},{}\n", fmt_f64(*n), fmt_f64(*c)));
        }
    }
    let mut t2 = String::from("kappa,m,lambda1,lambda2\n");
    for kappa in analysis::TABLE2_KAPPAS {
        for m in analysis::TABLE2_M_VALUES {
            let g = analysis::gaussian_state(m, kappa)?;
            t2.push_str(&format!("{kappa},{m},{},{}\n", fmt_f64(g.spectrum[0]), fmt_f64(g.spectrum[1])));
        }
    }
    write(&out_dir.join("table1.csv"), &t1)?;
    write(&out_dir.join("table2.csv"), &t2)
}

/// Single-system states give the plain table; states on `C^d ⊗ C^d` give the
/// equal-coordinate slice of the product-frame table.
fn wigner_table(rho: &CMatrix, frame: &Frame) -> Result<WignerTable, Error> {
    let w = build_hermitian_frame(frame)?;
    let d = frame.d();
    match rho.nrows() {
        n if n == d => wigner(rho, &w),
        n if n == d * d => composite::equal_coordinate_wigner(rho, &w, &w),
        n => Err(Error::Input(format!("state has dimension {n}, frame has dimension {d}"))),
    }
}

fn cmd_wigner(state: &str, frame: FrameSpec, format: Format, out: &Path) -> Result<(), Error> {
    let rho = load_state(state)?;
    let table = wigner_table(&rho, &frame.build()?)?;
    let text = match format {
        Format::Csv => io::wigner_to_csv(&table),
        Format::Pgm => io::wigner_to_pgm(&table),
    };
    write(out, &text)
}

fn cmd_tomo(frame: FrameSpec, epsilon: f64, trials: usize, seed: u64, state: Option<&str>, out: &Path) -> Result<(), Error> {
    let frame = frame.build()?;
    let w = build_hermitian_frame(&frame)?;
    let d = frame.d();
    let rho = match state {
        Some(s) => load_state(s)?,
        None => CMatrix::identity(d, d).unscale(d as f64),
    };
    let report = tomo::noise_experiment(&DensityMatrix::new(rho)?, &w, epsilon, trials, seed)?;
    write(out, &(serde_json::to_string_pretty(&report)? + "\n"))
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Tables { out_dir } => cmd_tables(&out_dir),
        Command::Wigner { state, frame, format, out } => cmd_wigner(&state, frame, format, &out),
        Command::Tomo { frame, epsilon, trials, seed, state, out } => {
            cmd_tomo(frame, epsilon, trials, seed, state.as_deref(), &out)
        }
        Command::Frame { command: FrameCommand::Gen { kind, m, out } } => {
            let frame = standard_frame(kind, m.unwrap_or(0))?;
            write(&out, &(io::frame_to_json(&frame) + "\n"))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_numerical() { 3 } else { 2 })
        }
    }
}
