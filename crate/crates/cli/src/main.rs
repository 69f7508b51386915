use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use relrips_cli::{diff_reports, run_pipeline, Failure, Mode, Overrides, RunConfig};

#[derive(Parser)]
#[command(name = "relrips", version, about = "Rips graphs of relatively hyperbolic groups on truncated Cayley graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sampled,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exhaustive => Mode::Exhaustive,
            ModeArg::Sampled => Mode::Sampled,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the pipeline described by a config file.
    Run {
        config: PathBuf,
        /// Output directory (overrides the config).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        radius: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        dmax: Option<usize>,
        #[arg(long)]
        circuit_length: Option<usize>,
        #[arg(long, value_enum)]
        delta_mode: Option<ModeArg>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        epsilon: Option<u32>,
        #[arg(long = "R")]
        r: Option<u32>,
        /// Sample count for the geometry estimates; switches them to sampled mode.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        worst_case_budget: Option<u64>,
    },
    /// Compare the summary tables of two report bundles.
    Diff { a: PathBuf, b: PathBuf },
    /// Parse a config and its model file without running anything.
    Check { config: PathBuf },
}

fn run(cli: Cli) -> Result<i32, Failure> {
    match cli.command {
        Command::Run {
            config,
            out,
            radius,
            n,
            dmax,
            circuit_length,
            delta_mode,
            seed,
            epsilon,
            r,
            samples,
            worst_case_budget,
        } => {
            let mut cfg = RunConfig::load(&config)?;
            cfg.apply(&Overrides {
                radius,
                n,
                d_max: dmax,
                circuit_length,
                delta_mode: delta_mode.map(Mode::from),
                seed,
                epsilon,
                r,
                samples,
                worst_case_budget,
                output: out,
            });
            let bundle = run_pipeline(&cfg)?;
            for (stage, err) in &bundle.stage_errors {
                eprintln!("stage {stage}: {err}");
            }
            println!("{}", bundle.dir.display());
            Ok(bundle.exit_code())
        }
        Command::Diff { a, b } => {
            for entry in diff_reports(&a, &b)? {
                println!("{}", entry.to_line());
            }
            Ok(0)
        }
        Command::Check { config } => {
            let cfg = RunConfig::load(&config)?;
            cfg.validate()?;
            let (file, model, specs) = cfg.load_model()?;
            println!("{}: rank {}, {} peripheral subgroups", file.name, model.rank(), specs.len());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let code = match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("relrips: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
