//! `wst`: wavelet scattering from the command line.

mod failure;
mod io;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use scatter_core::filterbank::{littlewood_paley, FilterBank};
use scatter_core::{plan_1d, plan_2d, plan_3d, Plan};

use failure::Failure;
use report::Parameters;

#[derive(Parser)]
#[command(name = "wst", version, about = "Wavelet scattering transform in 1D, 2D and 3D")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scatter a signal file and write coefficients plus a JSON sidecar.
    Scatter(ScatterArgs),
    /// Dump the filter spectra and print Littlewood-Paley bounds.
    Filterbank(BankArgs),
    /// Print the path table without reading a signal.
    Info(BankArgs),
}

#[derive(Args, Clone)]
struct TransformArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    dim: u8,
    /// Averaging scale; the output stride is 2^J.
    #[arg(long = "J")]
    j: u32,
    /// Wavelets per octave (1D).
    #[arg(long = "Q", default_value_t = 8)]
    q: u32,
    /// Orientations (2D).
    #[arg(long = "L", default_value_t = 8)]
    l: u32,
    /// Largest harmonic degree (3D).
    #[arg(long = "Lmax", default_value_t = 2)]
    l_max: u32,
    /// Octaves by which intermediate signals are kept above critical sampling.
    #[arg(long, default_value_t = 0)]
    oversampling: u32,
    /// Worker threads; defaults to the machine's parallelism.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Npy,
    Csv,
}

#[derive(Args)]
struct ScatterArgs {
    #[command(flatten)]
    t: TransformArgs,
    /// .npy (any dim), .wav (dim 1) or .pgm (dim 2).
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Npy)]
    format: Format,
    /// JSON sidecar path; defaults to the output path with a .json extension.
    #[arg(long)]
    meta: Option<PathBuf>,
}

#[derive(Args)]
struct BankArgs {
    #[command(flatten)]
    t: TransformArgs,
    /// Signal shape, e.g. 8192 or 32,32; defaults to 2^J along every axis.
    #[arg(long, value_delimiter = ',')]
    shape: Option<Vec<usize>>,
    /// Where `filterbank` writes the spectra.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Npy)]
    format: Format,
}

impl TransformArgs {
    fn dim(&self) -> usize {
        usize::from(self.dim)
    }

    fn parameters(&self) -> Parameters {
        Parameters {
            dim: self.dim(),
            j: self.j,
            q: (self.dim == 1).then_some(self.q),
            l: (self.dim == 2).then_some(self.l),
            l_max: (self.dim == 3).then_some(self.l_max),
            oversampling: self.oversampling,
        }
    }

    fn check(&self) -> Result<(), Failure> {
        if self.j == 0 {
            return Err(Failure::contract("--J must be at least 1"));
        }
        if self.threads == Some(0) {
            return Err(Failure::contract("--threads must be at least 1"));
        }
        Ok(())
    }

    fn plan(&self, shape: &[usize]) -> Result<Plan, Failure> {
        if shape.len() != self.dim() {
            return Err(Failure::contract(format!(
                "shape {shape:?} does not have {} axes",
                self.dim
            )));
        }
        let plan = match self.dim {
            1 => plan_1d(shape[0], self.j, self.q, self.oversampling),
            2 => plan_2d(shape, self.j, self.l, self.oversampling),
            _ => plan_3d(shape, self.j, self.l_max, self.oversampling),
        }?;
        Ok(plan)
    }

    /// Runs `f` on a dedicated pool when `--threads` is given.
    fn in_pool<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T, Failure> {
        match self.threads {
            None => Ok(f()),
            Some(n) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .map_err(|e| Failure::contract(format!("cannot start {n} threads: {e}")))?;
                Ok(pool.install(f))
            }
        }
    }
}

impl BankArgs {
    fn shape(&self) -> Vec<usize> {
        self.shape
            .clone()
            .unwrap_or_else(|| vec![1usize << self.t.j.min(30); self.t.dim()])
    }
}

fn scatter(args: &ScatterArgs) -> Result<(), Failure> {
    args.t.check()?;
    let x = io::read_input(&args.input, args.t.dim())?;
    let plan = args.t.plan(x.shape())?;
    let out = args.t.in_pool(|| plan.scatter(&x))??;
    match args.format {
        Format::Npy => io::write_npy_f64(&args.output, out.coefficients.shape(), out.coefficients.data())?,
        Format::Csv => io::write_lines(&args.output, report::csv_lines(&out))?,
    }
    let meta = args
        .meta
        .clone()
        .unwrap_or_else(|| args.output.with_extension("json"));
    io::write_text(&meta, &report::sidecar(&args.t.parameters(), &plan, &out))
}

/// First-order filters, then the second-order filters when the bank has a
/// separate set, then the lowpass.
fn bank_filters(bank: &FilterBank) -> Vec<&scatter_core::filterbank::PeriodizedFilter> {
    let mut filters: Vec<_> = bank.first_order().iter().flat_map(|c| &c.filters).collect();
    if !bank.shares_orders() {
        filters.extend(bank.second_order().iter().flat_map(|c| &c.filters));
    }
    filters.push(bank.lowpass());
    filters
}

fn filterbank(args: &BankArgs) -> Result<(), Failure> {
    args.t.check()?;
    let plan = args.t.plan(&args.shape())?;
    let bank = plan.bank();
    let bounds = args.t.in_pool(|| littlewood_paley(bank))?;
    println!("LP A={} B={}", bounds.a, bounds.b);
    let Some(output) = &args.output else {
        return Ok(());
    };
    let filters = bank_filters(bank);
    match args.format {
        Format::Npy => {
            let mut shape = vec![filters.len()];
            shape.extend_from_slice(bank.shape());
            let data: Vec<_> = filters.iter().flat_map(|f| f.spectrum(0).data().iter().copied()).collect();
            io::write_npy_c128(output, &shape, &data)
        }
        Format::Csv => {
            let mut lines = vec!["filter,kind,j,theta,ell,m,bin,re,im".to_string()];
            for (k, f) in filters.iter().enumerate() {
                let s = &f.spec;
                let opt = |v: Option<String>| v.unwrap_or_default();
                let prefix = format!(
                    "{k},{:?},{},{},{},{}",
                    s.kind,
                    s.j,
                    opt(s.theta.map(|t| format!("{t:e}"))),
                    opt(s.ell.map(|l| l.to_string())),
                    opt(s.m.map(|m| m.to_string())),
                );
                for (b, v) in f.spectrum(0).data().iter().enumerate() {
                    lines.push(format!("{prefix},{b},{:e},{:e}", v.re, v.im));
                }
            }
            io::write_lines(output, lines)
        }
    }
}

fn info(args: &BankArgs) -> Result<(), Failure> {
    args.t.check()?;
    let plan = args.t.plan(&args.shape())?;
    for line in report::path_table(&plan) {
        println!("{line}");
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Scatter(a) => scatter(a),
        Command::Filterbank(a) => filterbank(a),
        Command::Info(a) => info(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("wst: {f}");
            ExitCode::from(f.code)
        }
    }
}
