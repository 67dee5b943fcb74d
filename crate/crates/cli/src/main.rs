use clap::{Args, Parser, Subcommand};
use hstar_cli::{
    cmd_info, cmd_scan, cmd_verify, export_corpus, parse_claims, parse_flag_strategy, CliResult,
    CommandOutput, OutputFormat, RunConfig, EXIT_INPUT, EXIT_OK,
};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "hstar", version, about = "Ehrhart data and Lefschetz rank certificates for lattice polytopes")]
struct Cli {
    /// json or text
    #[arg(long, global = true, default_value = "json")]
    output: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Summarize a polytope file or built-in name.
    Info { file: String },
    /// Run verification claims on one polytope.
    Verify {
        file: String,
        /// Comma separated claims, or `all`.
        #[arg(long, default_value = "all", num_args = 1..)]
        claims: Vec<String>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Info and corollary checks for every polytope file in a directory.
    Scan {
        dir: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Write the built-in corpus as polytope files.
    ExportCorpus { dir: PathBuf },
}

#[derive(Args)]
struct RunArgs {
    /// exact or random
    #[arg(long, default_value = "random")]
    mode: String,
    /// 2, p, or an explicit prime
    #[arg(long = "char", default_value = "2")]
    characteristic: String,
    #[arg(long, default_value_t = 32)]
    field_bits: u32,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 5)]
    trials: usize,
    /// first, all or count:n
    #[arg(long, default_value = "first")]
    flag_strategy: String,
}

impl RunArgs {
    fn config(&self, output: OutputFormat) -> CliResult<RunConfig> {
        let cfg = RunConfig {
            mode: self.mode.parse()?,
            char: self.characteristic.parse()?,
            field_bits: self.field_bits,
            seed: self.seed,
            trials: self.trials,
            flag_strategy: parse_flag_strategy(&self.flag_strategy)?,
            output,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn run(cli: Cli) -> CliResult<CommandOutput> {
    let output: OutputFormat = cli.output.parse()?;
    match cli.command {
        Command::Info { file } => cmd_info(&file, output),
        Command::Verify { file, claims, run } => cmd_verify(&file, &parse_claims(&claims)?, &run.config(output)?),
        Command::Scan { dir, run } => cmd_scan(&dir, &run.config(output)?),
        Command::ExportCorpus { dir } => {
            let written = export_corpus(&dir)?;
            let text = written.iter().map(|p| format!("{}\n", p.display())).collect();
            Ok(CommandOutput {
                text,
                exit_code: EXIT_OK,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
