//! Thin command-line front end; the library (and its examples/) is the
//! primary interface.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use anosov_lab::cli::{run, RunConfig};

#[derive(Parser, Debug)]
#[command(
    name = "anosov-lab",
    about = "spectral, entropy and fractal-dimension data for linear representations of word-hyperbolic groups",
    after_help = "commands: ball verify limitset flagcurve qcurve entropy intersection conical hdim theoremB"
)]
struct Args {
    /// ball | verify | limitset | flagcurve | qcurve | entropy |
    /// intersection | conical | hdim | theoremB
    command: String,

    /// config file (key = value lines); flags override it
    #[arg(long)]
    config: Option<PathBuf>,

    /// catalog name or representation file
    #[arg(long)]
    rep: Option<String>,

    /// second representation: `dual`, catalog name or file
    #[arg(long)]
    repbar: Option<String>,

    /// presentation document (inline text or path) for custom rep files
    #[arg(long)]
    presentation: Option<String>,

    #[arg(long)]
    depth: Option<usize>,

    #[arg(long)]
    count: Option<usize>,

    #[arg(long)]
    beta: Option<f64>,

    /// conicality gap bound R (default: coarse-stability step bound)
    #[arg(long)]
    rvalue: Option<f64>,

    #[arg(long)]
    seed: Option<u64>,

    #[arg(long)]
    out: Option<PathBuf>,

    /// counting window as `lo:hi` fractions of t_max
    #[arg(long)]
    window: Option<String>,

    /// slope-fit | poincare-root
    #[arg(long)]
    method: Option<String>,

    /// functional for entropy runs: tau1 | tau2 | hilbert | max | min
    #[arg(long)]
    phi: Option<String>,

    /// point cloud for hdim: a CSV path or synthetic:segment|cantor
    #[arg(long)]
    cloud: Option<String>,

    #[arg(long)]
    tolerance: Option<f64>,
}

fn build_config(args: &Args) -> anosov_lab::error::Result<RunConfig> {
    let mut cfg = match &args.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::default(),
    };
    if let Some(v) = &args.rep {
        cfg.rep = v.clone();
    }
    if let Some(v) = &args.repbar {
        cfg.repbar = Some(v.clone());
    }
    if let Some(v) = &args.presentation {
        cfg.presentation = Some(v.clone());
    }
    if let Some(v) = args.depth {
        cfg.depth = v;
    }
    if let Some(v) = args.count {
        cfg.count = v;
    }
    if let Some(v) = args.beta {
        cfg.beta = v;
    }
    if let Some(v) = args.rvalue {
        cfg.rvalue = Some(v);
    }
    if let Some(v) = args.seed {
        cfg.seed = v;
    }
    if let Some(v) = &args.out {
        cfg.out_dir = v.clone();
        cfg.cache_dir = Some(v.join("cache"));
    }
    if let Some(v) = &args.window {
        cfg.set("window", v)?;
    }
    if let Some(v) = &args.method {
        cfg.set("method", v)?;
    }
    if let Some(v) = &args.phi {
        cfg.phi = v.clone();
    }
    if let Some(v) = &args.cloud {
        cfg.cloud = Some(v.clone());
    }
    if let Some(v) = args.tolerance {
        cfg.tolerance = v;
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let cfg = match build_config(&args) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match run(&args.command, &cfg) {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            // machine-readable error record
            let err_csv = cfg.out_dir.join("error.csv");
            let body = format!(
                "command,error,exit_code\n{},{},{}\n",
                args.command,
                e.to_string().replace(',', ";"),
                e.exit_code()
            );
            let _ = anosov_lab::cli::emit::write_atomic(&err_csv, body.as_bytes());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
