use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qwalk_cli::config::RunConfig;
use qwalk_cli::error::{CliError, Result};
use qwalk_cli::presets::{self, uniform_p_values, Job};
use qwalk_cli::{fmt_g17, runner, sequence_io};

#[derive(Parser)]
#[command(
    name = "qwalk",
    version,
    about = "Coin-position entanglement of disordered quantum walks"
)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Average entanglement time series, for a config or a named preset.
    Run {
        /// Preset or preset member, e.g. fig5b or fig5b-wdd-p3.
        preset: Option<String>,
        #[command(flatten)]
        opts: Overrides,
    },
    /// ⟨S_E(tref)⟩ for a list of constant Fourier probabilities.
    Pscan {
        /// Comma-separated probabilities.
        #[arg(long, value_delimiter = ',', conflicts_with = "p_count")]
        p_list: Option<Vec<f64>>,
        /// Evenly spaced probabilities over [0, 1].
        #[arg(long)]
        p_count: Option<usize>,
        #[command(flatten)]
        opts: Overrides,
    },
    /// List the presets.
    Presets,
    /// Write the coin sequence of one realization.
    ExportSequence {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        realization: u32,
        #[command(flatten)]
        opts: Overrides,
    },
    /// Grid average driven by a previously exported sequence.
    Replay {
        #[arg(long)]
        sequence: PathBuf,
        #[command(flatten)]
        opts: Overrides,
    },
}

#[derive(Args, Default)]
struct Overrides {
    /// Config file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    scenario: Option<String>,
    #[arg(long)]
    schedule: Option<String>,
    #[arg(long)]
    steps: Option<String>,
    /// Gaussian start with this width.
    #[arg(long)]
    sigma0: Option<String>,
    #[arg(long)]
    cutoff: Option<String>,
    /// local or gaussian.
    #[arg(long)]
    position: Option<String>,
    /// Same as --position local.
    #[arg(long, conflicts_with_all = ["position", "sigma0"])]
    local: bool,
    #[arg(long)]
    p: Option<String>,
    /// Block length, switch step or Fourier period.
    #[arg(long)]
    dt: Option<String>,
    #[arg(long)]
    transient: Option<String>,
    #[arg(long)]
    direction: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    grid_step: Option<String>,
    #[arg(long)]
    policy: Option<String>,
    #[arg(long)]
    realizations: Option<String>,
    #[arg(long)]
    tref: Option<String>,
    #[arg(long)]
    out: Option<String>,
}

impl Overrides {
    fn pairs(&self) -> Vec<(&'static str, &str)> {
        let mut kv: Vec<(&'static str, &str)> = [
            ("scenario", &self.scenario),
            ("schedule", &self.schedule),
            ("steps", &self.steps),
            ("position", &self.position),
            ("sigma0", &self.sigma0),
            ("cutoff", &self.cutoff),
            ("p", &self.p),
            ("dt", &self.dt),
            ("transient", &self.transient),
            ("direction", &self.direction),
            ("seed", &self.seed),
            ("grid_step", &self.grid_step),
            ("policy", &self.policy),
            ("realizations", &self.realizations),
            ("tref", &self.tref),
            ("out", &self.out),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.as_deref().map(|v| (k, v)))
        .collect();
        if self.local {
            kv.push(("position", "local"));
        }
        kv
    }

    fn apply(&self, cfg: &mut RunConfig) -> Result<()> {
        for (key, value) in self.pairs() {
            cfg.set(key, value).map_err(CliError::Config)?;
        }
        Ok(())
    }

    fn config(&self) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        self.apply(&mut cfg)?;
        Ok(cfg)
    }
}

fn report(paths: &[PathBuf]) {
    for p in paths {
        println!("wrote {}", p.display());
    }
}

fn run_named(name: &str, opts: &Overrides) -> Result<()> {
    let Some(preset) = presets::find(name) else {
        return Err(CliError::Config(format!(
            "unknown preset '{name}' (see `qwalk presets`)"
        )));
    };
    if opts.config.is_some() {
        return Err(CliError::Config(
            "--config cannot be combined with a preset".into(),
        ));
    }
    if opts.scenario.is_some() && preset.runs.len() > 1 {
        return Err(CliError::Config(
            "--scenario applies to a single run, not a preset group".into(),
        ));
    }
    let mut probe = preset.runs[0].clone();
    opts.apply(&mut probe)?;
    let written = runner::run_preset(&preset, |cfg| {
        opts.apply(cfg).expect("overrides validated");
    })?;
    report(&written);
    Ok(())
}

fn execute(cli: Cli) -> Result<()> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(format!("cannot set up {n} threads: {e}")))?;
    }
    match cli.command {
        Command::Run {
            preset: Some(name),
            opts,
        } => run_named(&name, &opts),
        Command::Run { preset: None, opts } => {
            let (_, path) = runner::run_series(&opts.config()?)?;
            report(&[path]);
            Ok(())
        }
        Command::Pscan {
            p_list,
            p_count,
            opts,
        } => {
            let cfg = opts.config()?;
            let p_values = match (p_list, p_count) {
                (Some(list), _) => list,
                (None, Some(n)) => uniform_p_values(n),
                (None, None) => match presets::find("fig4").map(|p| p.job) {
                    Some(Job::PScan { p_values }) => p_values,
                    _ => unreachable!("fig4 is a p-scan preset"),
                },
            };
            let (scan, path) = runner::run_pscan(&cfg, &p_values)?;
            let (p, s) = scan.argmax().expect("nonempty scan");
            println!(
                "argmax p = {} with <S_E({})> = {}",
                fmt_g17(p),
                scan.t_ref,
                fmt_g17(s)
            );
            report(&[path]);
            Ok(())
        }
        Command::Presets => {
            let mut out = std::io::stdout().lock();
            let mut listing = String::new();
            for p in presets::presets() {
                listing.push_str(&format!("{:<6} {}\n", p.name, p.description));
                for r in &p.runs {
                    listing.push_str(&format!("       {}\n", r.scenario));
                }
            }
            let _ = out.write_all(listing.as_bytes());
            Ok(())
        }
        Command::ExportSequence {
            file,
            realization,
            opts,
        } => {
            let seq = runner::realization_sequence(&opts.config()?, realization)?;
            sequence_io::export_sequence(&seq, &file)?;
            report(&[file]);
            Ok(())
        }
        Command::Replay { sequence, opts } => {
            let seq = sequence_io::import_sequence(&sequence)?;
            let (_, path) = runner::run_replay(&opts.config()?, &seq, &sequence)?;
            report(&[path]);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qwalk: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
