use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use depthfn::run::{parse_field, CombineOp};
use depthfn::{emit, run, Command, Format, Options, Request};
use depthfn_core::Guards;

/// Depth functions of powers of monomial ideals.
#[derive(Parser, Debug)]
#[command(name = "depthfn", version)]
struct Cli {
    /// depth, series, spread, classify-edge, classify-matroidal,
    /// classify-forest, check-A, check-C, build, combine or corpus
    command: Command,
    /// Input file; standard input when absent or `-`.
    input: Option<PathBuf>,
    /// Highest power in depth series.
    #[arg(long = "kmax", default_value_t = 3)]
    k_max: u32,
    /// Highest power used when estimating the spread from generator counts.
    #[arg(long = "mu-kmax", default_value_t = 8)]
    mu_k_max: u32,
    /// Coefficient field: `q` or `fp:P`.
    #[arg(long, default_value = "q", value_parser = parse_field)]
    field: depthfn_core::FieldSpec,
    /// Worker threads for Betti computations; 0 uses every core.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, default_value = "text")]
    format: Format,
    /// The lcm lattice may hold at most 2^N multidegrees.
    #[arg(long = "guard-lcm", default_value_t = Guards::default().lcm_lattice_log2)]
    guard_lcm: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Treat the Rees ring as Cohen-Macaulay when no class guarantees it.
    #[arg(long = "assert-cm")]
    assert_cm: bool,
    /// For `combine`: sum or product.
    #[arg(long, default_value = "sum")]
    op: CombineOp,
    /// For `corpus`: directory receiving reproducer files.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn read_input(path: Option<&PathBuf>) -> anyhow::Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| anyhow::anyhow!("cannot read {}: {e}", p.display()))
        }
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let input = match read_input(cli.input.as_ref()) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    let guards = Guards { lcm_lattice_log2: cli.guard_lcm, ..Guards::default() };
    let request = Request {
        command: cli.command,
        input,
        options: Options {
            k_max: cli.k_max,
            mu_k_max: cli.mu_k_max,
            field: cli.field,
            jobs: cli.jobs,
            format: cli.format,
            guards,
            seed: cli.seed,
            assert_cm: cli.assert_cm,
            op: cli.op,
            out: cli.out,
        },
    };
    match run(&request) {
        Ok(report) => {
            print!("{}", emit(&report, request.options.format));
            ExitCode::from(report.status.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
