use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tncode::experiment::{
    fit_threshold, layout_sidecar_path, read_csv, run_mc_prepared, write_csv, Builtin, CodeSpec,
    McConfig, McConfigFile, PreparedCode, DEFAULT_P_GRID, DEFAULT_TRIALS,
};
use tncode::holographic::{build_code, build_network, TensorNetwork};
use tncode::{decoder, Error, NoiseModel, StabilizerCode, Syndrome};

#[derive(Parser)]
#[command(name = "tncode", version, about = "Tensor-network stabilizer codes and exact ML decoding")]
struct Cli {
    /// RNG seed for Monte Carlo runs.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output file (default: standard output).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a code as JSON, plus a layout sidecar for network codes.
    BuildCode(CodeArgs),
    /// Decode one syndrome and print the coset probabilities.
    Decode {
        /// Code JSON written by build-code.
        #[arg(long)]
        code: PathBuf,
        /// '+'/'-' per generator, or 0x-prefixed hex with bit i = generator i.
        #[arg(long, allow_hyphen_values = true)]
        syndrome: String,
        #[arg(long)]
        p: f64,
    },
    /// Monte Carlo failure rates under depolarizing noise, as CSV.
    McRun {
        #[command(flatten)]
        code: CodeArgs,
        /// Several holographic radii in one run.
        #[arg(long, value_delimiter = ',')]
        radii: Vec<usize>,
        /// Code JSON (with optional layout sidecar).
        #[arg(long = "code")]
        code_file: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        p: Vec<f64>,
        #[arg(long)]
        trials: Option<u64>,
        /// TOML file with the same keys as the flags; flags win.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Fit threshold and critical exponent to Monte Carlo CSV files.
    FitThreshold {
        #[arg(long = "in", required = true, num_args = 1..)]
        inputs: Vec<PathBuf>,
    },
    /// Run the oracle-equivalence suites.
    Verify,
}

#[derive(Args, Clone, Default)]
struct CodeArgs {
    #[arg(long, value_parser = parse_builtin)]
    builtin: Option<Builtin>,
    #[arg(long)]
    holographic: bool,
    #[arg(long)]
    radius: Option<usize>,
}

fn parse_builtin(s: &str) -> Result<Builtin, String> {
    s.parse().map_err(|e: Error| {
        let names: Vec<_> = Builtin::ALL.iter().map(|b| b.name()).collect();
        format!("{e}; expected one of {}", names.join(", "))
    })
}

enum Failure {
    Usage(String),
    Verification,
    Runtime(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Config(msg) => Failure::Usage(msg),
            other => Failure::Runtime(other),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.into())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Verification) => ExitCode::from(2),
    }
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    match cli.command {
        Command::BuildCode(args) => build_code_cmd(&args, cli.out.as_deref()),
        Command::Decode { code, syndrome, p } => decode_cmd(&code, &syndrome, p, cli.out.as_deref()),
        Command::McRun {
            code,
            radii,
            code_file,
            p,
            trials,
            config,
        } => {
            let file = match &config {
                Some(path) => McConfigFile::load(path)?,
                None => McConfigFile::default(),
            };
            if cli.threads.is_none() {
                if let Some(n) = file.threads {
                    rayon::ThreadPoolBuilder::new()
                        .num_threads(n)
                        .build_global()
                        .map_err(|e| Failure::Usage(e.to_string()))?;
                }
            }
            mc_cmd(McFlags {
                code,
                radii,
                code_file,
                p,
                trials,
                seed: cli.seed,
                out: cli.out,
                file,
            })
        }
        Command::FitThreshold { inputs } => {
            let mut points = Vec::new();
            for path in &inputs {
                points.extend(read_csv(File::open(path)?)?);
            }
            let fit = fit_threshold(&points)?;
            let mut out = output(cli.out.as_deref())?;
            serde_json::to_writer_pretty(&mut out, &fit).map_err(Error::from)?;
            writeln!(out)?;
            out.flush()?;
            Ok(())
        }
        Command::Verify => {
            let results = tncode::verify::run_all();
            let mut ok = true;
            for r in &results {
                println!("{} {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail);
                ok &= r.passed;
            }
            if ok {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
    }
}

fn code_and_network(args: &CodeArgs) -> Result<(StabilizerCode, Option<TensorNetwork>), Failure> {
    match (args.builtin, args.holographic, args.radius) {
        (Some(b), false, None) => Ok(b.build()?),
        (None, true, Some(r)) => {
            let net = build_network(r)?;
            Ok((build_code(&net)?, Some(net)))
        }
        _ => Err(Failure::Usage(
            "choose exactly one of --builtin NAME or --holographic --radius R".into(),
        )),
    }
}

fn build_code_cmd(args: &CodeArgs, out: Option<&Path>) -> Result<(), Failure> {
    let (code, network) = code_and_network(args)?;
    let mut w = output(out)?;
    serde_json::to_writer_pretty(&mut w, &code.to_description()).map_err(Error::from)?;
    writeln!(w)?;
    w.flush()?;
    if let (Some(net), Some(path)) = (network, out) {
        let sidecar = layout_sidecar_path(path);
        let mut w = BufWriter::new(File::create(&sidecar)?);
        serde_json::to_writer(&mut w, &net).map_err(Error::from)?;
        writeln!(w)?;
        w.flush()?;
    }
    Ok(())
}

fn decode_cmd(code_path: &Path, syndrome: &str, p: f64, out: Option<&Path>) -> Result<(), Failure> {
    let prepared = PreparedCode::from_spec(&CodeSpec::Json(code_path.to_path_buf()))?;
    let code = &prepared.code;
    let s = Syndrome::parse(syndrome, code.num_stabilizers()).map_err(|e| Failure::Usage(e.to_string()))?;
    let noise = NoiseModel::depolarizing(code.n(), p).map_err(|e| Failure::Usage(e.to_string()))?;
    let chi = prepared.chi(&noise, &s)?;
    let d = decoder::correction_for(code, chi)?;
    let mut w = output(out)?;
    writeln!(w, "log-scale {}", d.chi.log_scale)?;
    let normalized = d.chi.normalized();
    for (class, m) in d.chi.mantissas.iter().enumerate() {
        let label = code.class_label(class)?;
        writeln!(w, "{label}\tmantissa {m:.12e}\tnormalized {:.12e}", normalized[class])?;
    }
    writeln!(w, "argmax {}", code.class_label(d.chi.argmax)?)?;
    writeln!(w, "correction {}", d.correction)?;
    w.flush()?;
    Ok(())
}

struct McFlags {
    code: CodeArgs,
    radii: Vec<usize>,
    code_file: Option<PathBuf>,
    p: Vec<f64>,
    trials: Option<u64>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    file: McConfigFile,
}

fn mc_cmd(f: McFlags) -> Result<(), Failure> {
    let file = f.file;
    let cli_chose_code = f.code.builtin.is_some()
        || f.code.holographic
        || f.code.radius.is_some()
        || !f.radii.is_empty()
        || f.code_file.is_some();
    let specs: Vec<CodeSpec> = if cli_chose_code {
        code_specs(f.code.builtin, f.code.holographic, f.code.radius, &f.radii, f.code_file)?
    } else {
        let builtin = file
            .builtin
            .as_deref()
            .map(|s| s.parse::<Builtin>())
            .transpose()?;
        code_specs(
            builtin,
            file.holographic.unwrap_or(false),
            file.radius,
            file.radii.as_deref().unwrap_or(&[]),
            file.code.clone(),
        )?
    };
    let p = if !f.p.is_empty() {
        f.p
    } else {
        file.p.clone().unwrap_or_else(|| DEFAULT_P_GRID.to_vec())
    };
    let trials = f.trials.or(file.trials).unwrap_or(DEFAULT_TRIALS);
    let seed = f.seed.or(file.seed).unwrap_or(0);
    let out = f.out.or(file.out);

    let mut points = Vec::new();
    for spec in specs {
        if let CodeSpec::Holographic(r) = spec {
            if r >= 5 {
                eprintln!("warning: radius {r} decoding is slow; expect long run times");
            }
        }
        let config = McConfig {
            code: spec,
            p: p.clone(),
            trials,
            seed,
        };
        config.validate()?;
        let prepared = PreparedCode::from_spec(&config.code)?;
        points.extend(run_mc_prepared(&prepared, &config.p, config.trials, config.seed)?);
    }
    let w = output(out.as_deref())?;
    write_csv(&points, w)?;
    Ok(())
}

fn code_specs(
    builtin: Option<Builtin>,
    holographic: bool,
    radius: Option<usize>,
    radii: &[usize],
    code_file: Option<PathBuf>,
) -> Result<Vec<CodeSpec>, Failure> {
    let mut radii: Vec<usize> = radii.to_vec();
    radii.extend(radius);
    match (builtin, holographic, radii.is_empty(), code_file) {
        (Some(b), false, true, None) => Ok(vec![CodeSpec::Builtin(b)]),
        (None, true, false, None) => Ok(radii.into_iter().map(CodeSpec::Holographic).collect()),
        (None, false, true, Some(path)) => Ok(vec![CodeSpec::Json(path)]),
        _ => Err(Failure::Usage(
            "choose exactly one of --builtin NAME, --holographic --radius R (or --radii), or --code PATH"
                .into(),
        )),
    }
}
