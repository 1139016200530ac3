use std::path::PathBuf;
use std::process::ExitCode;

use clap::builder::TypedValueParser;
use clap::{Args, Parser, Subcommand, ValueEnum};

use fsl_polar::fsl::{FslDecoder, FslParams, SegmentMode};
use fsl_polar::polar::SnrConvention;
use fsl_polar::sim::{
    census, emit_report, render_census, run_campaign_with, run_verify, snr_at_bler, to_csv, CampaignConfig,
    CodeConfig, ConstructionChoice, Curve, DecoderConfig, DecoderKind, ReportFormat, VerifyOptions,
};
use fsl_polar::syndrome::{TableCache, TABLE_CACHE_ENV};
use fsl_polar::Error;

#[derive(Parser, Debug)]
#[command(name = "fslpolar", version, about = "Polar-code BLER campaigns with SCL and flip-syndrome-list decoding")]
#[command(args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the oracle checks; exits 1 if any fails.
    Verify(VerifyArgs),
    /// Build and store the syndrome tables a code needs.
    BuildTables(TableArgs),
    /// Leaf-node census of a code under each segmentation policy.
    Census(CensusArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ConstructionArg {
    Pw,
    Adjusted,
    Hybrid,
}

#[derive(Args, Debug)]
struct CodeArgs {
    /// Code length (power of two).
    #[arg(long, default_value_t = 1024)]
    n: usize,
    /// Payload bits, CRC excluded.
    #[arg(long, default_value_t = 512)]
    k: usize,
    /// CRC length: 0, 8, 11, 16, 24 or 32.
    #[arg(long, default_value_t = 16)]
    crc: usize,
    #[arg(long, value_enum, default_value_t = ConstructionArg::Pw)]
    construction: ConstructionArg,
    /// Largest low block rate kept by the adjusted construction.
    #[arg(long, default_value_t = 5)]
    adjust_klow: usize,
    /// Smallest high block rate kept by the adjusted construction.
    #[arg(long, default_value_t = 9)]
    adjust_khigh: usize,
}

#[derive(Args, Debug)]
struct FslArgs {
    #[arg(long, default_value_t = 8)]
    list_size: usize,
    /// General-block length of the FSL decoder.
    #[arg(long, default_value_t = 16, value_parser = clap::builder::PossibleValuesParser::new(["8", "16"]).map(|s| s.parse::<usize>().unwrap()))]
    block_size: usize,
    /// Flipping budget T (default 2 for B = 8, 3 for B = 16).
    #[arg(long)]
    flip_t: Option<usize>,
    /// Patterns per syndrome (default 4 for B = 8, 8 for B = 16).
    #[arg(long)]
    lsd: Option<usize>,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[command(flatten)]
    fsl: FslArgs,
    /// Decoders to compare, comma separated.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "scl,fsl")]
    decoder: Vec<DecoderKind>,
    /// SNR points in dB, comma separated and increasing; `inf` is noiseless.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "1,1.5,2")]
    snr: Vec<f64>,
    #[arg(long, value_enum, default_value_t = SnrConvention::Es)]
    snr_convention: SnrConvention,
    #[arg(long, default_value_t = 100)]
    min_errors: u64,
    #[arg(long, default_value_t = 1_000_000)]
    max_frames: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Report file; CSV on stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Csv)]
    format: ReportFormat,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Random vectors per pattern-set oracle.
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Noisy frames for the list-vs-ML check.
    #[arg(long, default_value_t = 10_000)]
    ml_frames: usize,
    #[arg(long, default_value_t = 2024)]
    seed: u64,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[command(flatten)]
    fsl: FslArgs,
    /// Output directory (defaults to $FSLPOLAR_TABLE_CACHE).
    #[arg(long)]
    dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CensusArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Print JSON instead of a table.
    #[arg(long)]
    json: bool,
}

impl CodeArgs {
    fn config(&self, block_len: usize) -> CodeConfig {
        let construction = match self.construction {
            ConstructionArg::Pw => ConstructionChoice::Pw,
            ConstructionArg::Hybrid => ConstructionChoice::Hybrid,
            ConstructionArg::Adjusted => {
                ConstructionChoice::Adjusted { block_len, k_low: self.adjust_klow, k_high: self.adjust_khigh }
            }
        };
        CodeConfig { n: self.n, k: self.k, crc_len: self.crc, construction }
    }
}

impl FslArgs {
    fn params(&self) -> FslParams {
        let d = FslParams::for_block_len(self.block_size);
        FslParams {
            flip_t: self.flip_t.unwrap_or(d.flip_t),
            l_sd: self.lsd.unwrap_or(d.l_sd),
            list_size: self.list_size,
            ..d
        }
    }
}

enum Failure {
    Config(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_)
            | Error::Infeasible(_)
            | Error::ExhaustiveTooLarge { .. }
            | Error::TableNotBuilt { .. } => Failure::Config(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

fn simulate(args: &RunArgs) -> Result<(), Failure> {
    let code = args.code.config(args.fsl.block_size);
    let tables = TableCache::from_env();
    let mut curves = Vec::new();
    for &kind in &args.decoder {
        let decoder = match kind {
            DecoderKind::Scl => DecoderConfig::scl(args.fsl.list_size),
            DecoderKind::Fsl => DecoderConfig::fsl(args.fsl.params()),
        };
        let config = CampaignConfig {
            code,
            decoder,
            snr_db: args.snr.clone(),
            convention: args.snr_convention,
            min_errors: args.min_errors,
            max_frames: args.max_frames,
            seed: args.seed,
        };
        let points = run_campaign_with(&config, &tables)?;
        let label = decoder.label();
        for p in &points {
            eprintln!(
                "{label:<28} {}={:>6} dB  frames={:>9}  errors={:>6}  bler={:.4e}  ({:.1} s)",
                args.snr_convention.label(),
                p.snr_db,
                p.frames,
                p.block_errors,
                p.bler,
                p.wall_time_s
            );
        }
        if let Some(s) = snr_at_bler(&points, 1e-2) {
            eprintln!("{label:<28} BLER 1e-2 at {s:.3} dB");
        }
        curves.push(Curve { label, config, points });
    }
    match &args.out {
        Some(out) => {
            for path in emit_report(&curves, args.format, out)? {
                eprintln!("wrote {}", path.display());
            }
        }
        None => {
            for c in &curves {
                if curves.len() > 1 {
                    println!("# {}", c.label);
                }
                print!("{}", to_csv(&c.points));
            }
        }
    }
    Ok(())
}

fn verify(args: &VerifyArgs) -> Result<(), Failure> {
    let opts = VerifyOptions { prop_samples: args.samples, ml_frames: args.ml_frames, seed: args.seed };
    let results = run_verify(&opts);
    for r in &results {
        println!("{} {:<26} {:>8.2} s  {}", if r.passed { "PASS" } else { "FAIL" }, r.name, r.elapsed_s, r.detail);
    }
    match results.iter().filter(|r| !r.passed).count() {
        0 => Ok(()),
        n => Err(Failure::Check(format!("{n} check(s) failed"))),
    }
}

fn build_tables(args: &TableArgs) -> Result<(), Failure> {
    let dir = match &args.dir {
        Some(d) => d.clone(),
        None => std::env::var_os(TABLE_CACHE_ENV)
            .map(PathBuf::from)
            .ok_or_else(|| Failure::Config(format!("pass --dir or set {TABLE_CACHE_ENV}")))?,
    };
    let params = args.fsl.params();
    let spec = args.code.config(params.block_len).build()?;
    let cache = TableCache::with_dir(&dir);
    let dec = FslDecoder::with_tables(&spec, &params, SegmentMode::for_block_len(params.block_len), &cache)?;
    println!("{} leaves, {} syndrome tables in {}", dec.nodes().len(), cache.len(), dir.display());
    Ok(())
}

fn run_census(args: &CensusArgs) -> Result<(), Failure> {
    let spec = args.code.config(16).build()?;
    let rows = census(&spec)?;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&rows).map_err(|e| Failure::Check(e.to_string()))?);
    } else {
        print!("{}", render_census(&rows));
        if rows.iter().any(|r| r.reference.is_some()) {
            println!("[reference counts in brackets]");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        None => simulate(&cli.run),
        Some(Command::Verify(a)) => verify(a),
        Some(Command::BuildTables(a)) => build_tables(a),
        Some(Command::Census(a)) => run_census(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Config(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
