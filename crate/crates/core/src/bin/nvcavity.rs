use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use nvcavity::materials::MaterialLibrary;
use nvcavity::report::{
    cmd_materials, cmd_report, cmd_solve, cmd_sweep, write_atomic, CouplingInputs, OutputFormat, SweepRequest,
};
use nvcavity::spin::{Calibration, Pathway, SpinEnsemble};
use nvcavity::table::{builtin_table, cmd_table1, default_calibration, parse_table, Tolerances, DEFAULT_REFERENCE};
use nvcavity::{parse_spec, Error, Result};

const EXIT_ERROR: u8 = 1;
const EXIT_NO_MODE: u8 = 3;
const EXIT_TABLE_MISMATCH: u8 = 4;

#[derive(Parser)]
#[command(name = "nvcavity", version, about = "Cavity modes and NV spin-ensemble coupling")]
struct Cli {
    /// Cavity spec file.
    #[arg(long, global = true)]
    spec: Option<PathBuf>,
    /// Output file (a directory for `sweep`); stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// text | csv
    #[arg(long, global = true, default_value = "text")]
    format: OutputFormat,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Eigenmodes, filling factors and Q budget of a spec.
    Solve,
    /// Coupling strength, cooperativity and regime through both pathways.
    Report(Coupling),
    /// DC-field sweep of the reflection spectrum; writes CSVs and a manifest.
    Sweep {
        #[command(flatten)]
        coupling: Coupling,
        /// Tesla.
        #[arg(long)]
        b_start: f64,
        /// Tesla.
        #[arg(long)]
        b_stop: f64,
        #[arg(long, default_value_t = 201)]
        b_steps: usize,
        /// Resonance field in tesla; defaults to where the upper NV line meets the cavity.
        #[arg(long)]
        b_r: Option<f64>,
        #[arg(long, default_value_t = nvcavity::spectra::DEFAULT_GRID_POINTS)]
        freq_points: usize,
    },
    /// Recompute the table of coupling figures from its calibration row.
    Table1 {
        /// CSV dataset; the bundled one when omitted.
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long, default_value = DEFAULT_REFERENCE)]
        reference: String,
    },
    /// List the material library.
    Materials {
        /// Material data file; the bundled library when omitted.
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

/// Explicit coupling inputs, used when no `--spec` is given. All SI.
#[derive(Args)]
struct Coupling {
    #[arg(long)]
    p_m: Option<f64>,
    #[arg(long)]
    q0: Option<f64>,
    /// Cavity frequency, Hz.
    #[arg(long)]
    frequency: Option<f64>,
    /// Spin density, m^-3.
    #[arg(long)]
    rho: Option<f64>,
    /// Spin linewidth (full width at half maximum), Hz.
    #[arg(long)]
    fwhm: Option<f64>,
    /// Sample volume, m^3.
    #[arg(long)]
    sample_volume: Option<f64>,
    /// exact-si | calibrated; overrides the spec file.
    #[arg(long)]
    pathway: Option<String>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    k_g: Option<f64>,
    #[arg(long)]
    k_c: Option<f64>,
}

fn parse_pathway(s: &str) -> Result<Pathway> {
    match s {
        "exact-si" => Ok(Pathway::ExactSi),
        "calibrated" => Ok(Pathway::Calibrated),
        other => Err(Error::Usage(format!("unknown pathway `{other}` (exact-si, calibrated)"))),
    }
}

fn need(v: Option<f64>, flag: &str) -> Result<f64> {
    v.ok_or_else(|| Error::Usage(format!("--{flag} is required without --spec")))
}

fn coupling_inputs(spec: Option<&Path>, c: &Coupling) -> Result<CouplingInputs> {
    let mut inputs = match spec {
        Some(path) => CouplingInputs::from_spec(&parse_spec(path)?)?,
        None => CouplingInputs {
            source: "explicit inputs".into(),
            p_m: need(c.p_m, "p-m")?,
            p_e: None,
            q0: need(c.q0, "q0")?,
            frequency: need(c.frequency, "frequency")?,
            ensemble: SpinEnsemble::from_fwhm_hz(
                need(c.rho, "rho")?,
                need(c.fwhm, "fwhm")?,
                c.sample_volume.unwrap_or(0.0),
            )?,
            pathway: Pathway::ExactSi,
            calibration: default_calibration(),
            alpha: 1.0,
        },
    };
    if let Some(p) = &c.pathway {
        inputs.pathway = parse_pathway(p)?;
    }
    if let Some(a) = c.alpha {
        inputs.alpha = a;
    }
    if let (Some(k_g), Some(k_c)) = (c.k_g, c.k_c) {
        inputs.calibration = Calibration { k_g, k_c };
    } else if c.k_g.is_some() || c.k_c.is_some() {
        return Err(Error::Usage("--k-g and --k-c go together".into()));
    }
    Ok(inputs)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => write_atomic(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })
}

fn run(cli: Cli) -> Result<u8> {
    let spec = cli.spec.as_deref();
    let out = cli.out.as_deref();
    match &cli.verb {
        Verb::Solve => {
            let path = spec.ok_or_else(|| Error::Usage("solve needs --spec".into()))?;
            let report = cmd_solve(&parse_spec(path)?)?;
            emit(out, &report.render(cli.format))?;
        }
        Verb::Report(c) => {
            let report = cmd_report(&coupling_inputs(spec, c)?)?;
            emit(out, &report.render(cli.format))?;
        }
        Verb::Sweep {
            coupling,
            b_start,
            b_stop,
            b_steps,
            b_r,
            freq_points,
        } => {
            let dir = out.ok_or_else(|| Error::Usage("sweep needs --out DIR".into()))?;
            let inputs = coupling_inputs(spec, coupling)?;
            let req = SweepRequest {
                b_start: *b_start,
                b_stop: *b_stop,
                b_steps: *b_steps,
                b_r: *b_r,
                freq_points: *freq_points,
            };
            let sweep = cmd_sweep(&inputs, req)?;
            for path in sweep.write(dir, &inputs)? {
                println!("wrote {}", path.display());
            }
        }
        Verb::Table1 { table, reference } => {
            let rows = match table {
                Some(p) => parse_table(&read(p)?)?,
                None => builtin_table(),
            };
            let report = cmd_table1(&rows, reference, Tolerances::default())?;
            let text = match cli.format {
                OutputFormat::Text => report.to_text(),
                OutputFormat::Csv => report.to_csv(),
            };
            emit(out, &text)?;
            if !report.passed() {
                eprintln!("nvcavity: table rows outside tolerance");
                return Ok(EXIT_TABLE_MISMATCH);
            }
        }
        Verb::Materials { file } => {
            let text = match file {
                Some(p) => cmd_materials(&MaterialLibrary::parse(&read(p)?)?, cli.format),
                None => cmd_materials(MaterialLibrary::builtin(), cli.format),
            };
            emit(out, &text)?;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("nvcavity: {e}");
            ExitCode::from(match e {
                Error::NoModeInWindow { .. } => EXIT_NO_MODE,
                _ => EXIT_ERROR,
            })
        }
    }
}
