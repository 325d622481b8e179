//! `qconv`: transform, convolve, verify and benchmark quaternion fields
//! stored as QF01 binaries or P6 PPM images.
//!
//! Exit codes: 0 success, 1 identity failure in `verify`, 2 i/o, parse or
//! precondition errors. Summaries go to stdout as `key=value` lines (CSV
//! for `bench`); diagnostics go to stderr.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qconv_core::sample::Sampler;
use qconv_core::verify::{SuiteSelection, VerifyConfig};
use qconv_core::{conv, io, qft, verify, Error, MustardEval, QField, Result};

#[derive(Parser)]
#[command(
    name = "qconv",
    version,
    about = "Left quaternion Fourier transforms and convolution correspondences on cyclic grids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply the left quaternion Fourier transform to a QF01 field or PPM image.
    Transform(TransformArgs),
    /// Convolve two fields with a selectable evaluation method.
    Convolve(ConvolveArgs),
    /// Run the seeded identity suites and report per-identity max errors.
    Verify(VerifyArgs),
    /// Compare convolution methods and emit timing CSV.
    Bench(BenchArgs),
}

#[derive(Args)]
struct TransformArgs {
    /// Input field: QF01 or binary P6 PPM (sniffed by magic bytes).
    #[arg(long)]
    input: PathBuf,
    /// Output path; `.ppm` writes an image, anything else writes QF01.
    #[arg(long)]
    output: PathBuf,
    /// Root pair: a preset (equal-i, perp-ij, gray-line) or vectors
    /// "b,c,d" / "b,c,d;b,c,d".
    #[arg(long, default_value = "gray-line")]
    roots: String,
    #[arg(long)]
    inverse: bool,
    /// Use the factorized FFT path (falls back off power-of-two grids).
    #[arg(long)]
    fast: bool,
}

#[derive(Args)]
struct ConvolveArgs {
    /// Left operand (stays left in every quaternion product).
    #[arg(long)]
    f: PathBuf,
    /// Right operand.
    #[arg(long)]
    g: PathBuf,
    #[arg(long)]
    output: PathBuf,
    #[arg(long, default_value = "gray-line")]
    roots: String,
    #[arg(long, value_enum, default_value_t = Method::Spatial)]
    method: Method,
    /// Also run the spatial method and report the max deviation.
    #[arg(long)]
    check: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Direct cyclic sum.
    Spatial,
    /// Spectral product convolution.
    Mustard,
    /// Classical via 4 Mustard convolutions (single root).
    Thm31,
    /// Classical via 16 Mustard convolutions (perpendicular roots).
    Thm32,
    /// Classical via 40 Mustard convolutions (any roots).
    Thm41,
    /// Classical via the 16-product spectrum identity (perpendicular roots).
    Spectral51,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Spatial => "spatial",
            Method::Mustard => "mustard",
            Method::Thm31 => "thm31",
            Method::Thm32 => "thm32",
            Method::Thm41 => "thm41",
            Method::Spectral51 => "spectral51",
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Square grid size for the transform-level suites.
    #[arg(long, default_value_t = 8)]
    size: usize,
    /// Gate: exit 1 if any reported max error exceeds this.
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
    /// all, algebra, qft, thm21, thm31, thm32, thm41, thm51 or thm52.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Test hook: corrupt one term of the selected suite's expansion table.
    #[arg(long)]
    corrupt_term: Option<usize>,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated square grid sizes.
    #[arg(long, default_value = "8,16,32")]
    sizes: String,
    #[arg(long, default_value = "gray-line")]
    roots: String,
    #[arg(long, default_value_t = 3)]
    repeat: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Transform(args) => cmd_transform(args),
        Command::Convolve(args) => cmd_convolve(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn load_field(path: &Path) -> Result<QField> {
    let bytes = fs::read(path)?;
    match bytes.get(0..2) {
        Some(b"QF") => io::decode_field(&bytes),
        Some(b"P6") => io::decode_ppm(&bytes),
        _ => Err(Error::UnsupportedFormat(format!(
            "{}: neither QF01 nor binary P6 PPM",
            path.display()
        ))),
    }
}

fn save_field(path: &Path, f: &QField) -> Result<()> {
    if path.extension().and_then(|e| e.to_str()) == Some("ppm") {
        let report = io::write_ppm(path, f)?;
        if report.scalar_leak_warning() {
            eprintln!(
                "warning: discarded scalar parts up to {:.3e} while writing {}",
                report.max_scalar_abs,
                path.display()
            );
        }
        Ok(())
    } else {
        io::write_field(path, f)
    }
}

fn cmd_transform(args: TransformArgs) -> Result<ExitCode> {
    let field = load_field(&args.input)?;
    let roots = io::parse_roots(&args.roots)?;
    let direction = if args.inverse {
        qft::Direction::Inverse
    } else {
        qft::Direction::Forward
    };
    let out = match (args.fast, direction) {
        (true, d) => qft::fast_qft(&field, roots, d),
        (false, qft::Direction::Forward) => qft::dft_left(&field, roots),
        (false, qft::Direction::Inverse) => qft::idft_left(&field, roots),
    };
    save_field(&args.output, &out)?;
    println!(
        "transform n1={} n2={} inverse={} fast={} output={}",
        out.n1(),
        out.n2(),
        args.inverse,
        args.fast,
        args.output.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_convolve(args: ConvolveArgs) -> Result<ExitCode> {
    let f = load_field(&args.f)?;
    let g = load_field(&args.g)?;
    let roots = io::parse_roots(&args.roots)?;

    if args.method == Method::Thm31 && roots.mu() != roots.nu() {
        return Err(Error::ParseError(
            "method thm31 needs a single root; pass one vector or an equal-* preset".into(),
        ));
    }

    let result = match args.method {
        Method::Spatial => conv::classical_convolve(&f, &g)?,
        Method::Mustard => conv::mustard_convolve(&f, &g, roots)?,
        Method::Thm31 => conv::classical_via_mustard_equal(&f, &g, roots.mu())?,
        Method::Thm32 => conv::classical_via_mustard_perp(&f, &g, roots)?,
        Method::Thm41 => conv::classical_via_mustard_general(&f, &g, roots)?,
        Method::Spectral51 => {
            let spectrum = conv::convolution_spectrum(&f, &g, roots)?;
            qft::fast_qft(&spectrum, roots, qft::Direction::Inverse)
        }
    };
    save_field(&args.output, &result)?;

    let mut summary = format!(
        "convolve method={} n1={} n2={} output={}",
        args.method.name(),
        result.n1(),
        result.n2(),
        args.output.display()
    );
    if args.check {
        let spatial = conv::classical_convolve(&f, &g)?;
        summary.push_str(&format!(
            " check_max_err={:.3e}",
            result.max_abs_diff(&spatial)
        ));
    }
    println!("{summary}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode> {
    if args.tolerance <= 0.0 {
        return Err(Error::ParseError("tolerance must be positive".into()));
    }
    if args.size == 0 {
        return Err(Error::ParseError("size must be at least 1".into()));
    }
    let selection: SuiteSelection = args.suite.parse()?;
    let cfg = VerifyConfig {
        seed: args.seed,
        n1: args.size,
        n2: args.size,
        corrupt_term: args.corrupt_term,
    };
    let reports = verify::run(selection, &cfg);

    let mut failures = 0usize;
    for r in &reports {
        let ok = r.max_err <= args.tolerance;
        if !ok {
            failures += 1;
        }
        let mut line = format!(
            "suite={} identity={} max_err={:.3e} tol={:.1e} status={}",
            r.suite.name(),
            r.name,
            r.max_err,
            r.tolerance,
            if ok { "pass" } else { "fail" }
        );
        if let Some(term) = r.failing_term {
            line.push_str(&format!(" failing_term={term}"));
        }
        println!("{line}");
    }
    println!(
        "result={} identities={} failures={} seed={} size={} tolerance={:.1e}",
        if failures == 0 { "pass" } else { "fail" },
        reports.len(),
        failures,
        args.seed,
        args.size,
        args.tolerance
    );
    Ok(if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_bench(args: BenchArgs) -> Result<ExitCode> {
    let roots = io::parse_roots(&args.roots)?;
    let sizes: Vec<usize> = args
        .sizes
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| Error::ParseError(format!("invalid size {:?}", s.trim())))
        })
        .collect::<Result<_>>()?;
    let repeat = args.repeat.max(1);

    println!("size,method,mean_ns,max_err");
    for n in sizes {
        let mut s = Sampler::new(args.seed ^ n as u64);
        let f = s.field(n, n);
        let g = s.field(n, n);

        let spatial = conv::classical_convolve(&f, &g)?;
        let timed = |run: &dyn Fn() -> QField| -> (u128, QField) {
            let mut result = run();
            let start = Instant::now();
            for _ in 0..repeat {
                result = run();
            }
            (start.elapsed().as_nanos() / repeat as u128, result)
        };

        let (t_spatial, _) = timed(&|| conv::classical_convolve(&f, &g).expect("same shapes"));
        let (t_naive, r_naive) = timed(&|| {
            conv::classical_via_mustard_general_with(&f, &g, roots, MustardEval::PerTerm)
                .expect("same shapes")
        });
        let (t_cached, r_cached) = timed(&|| {
            conv::classical_via_mustard_general_with(&f, &g, roots, MustardEval::CachedSpectrum)
                .expect("same shapes")
        });

        println!("{n},spatial,{t_spatial},{:.3e}", 0.0);
        println!(
            "{n},thm41_naive,{t_naive},{:.3e}",
            r_naive.max_abs_diff(&spatial)
        );
        println!(
            "{n},thm41_cached,{t_cached},{:.3e}",
            r_cached.max_abs_diff(&spatial)
        );
    }
    Ok(ExitCode::SUCCESS)
}
