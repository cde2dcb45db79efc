use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::ToPrimitive;

use probvss::analysis::{hyper_stats_color, hyper_stats_gray, recognition_area_color, recognition_area_gray, simulate_color_region, simulate_region};
use probvss::combinatorics::{fraction, parse_rational};
use probvss::format::{builtin, SchemeFile, BUILTIN_NAMES};
use probvss::image::{
    load_color, load_gray, parse_palette, read_share, share_images, stack_share_images, stacked_to_netpbm, write_netpbm,
    write_share_set, Rgb,
};
use probvss::prob::{distribution_csv, gray_distribution_tables, prob_encode_color, prob_encode_gray, theorem2_averages, ProbConfig};
use probvss::{build_2_of_n, build_color_2n, build_gvss, build_n_of_n, BinaryScheme, KeyValueReport, VssError};

const THREADS_VAR: &str = "PROBVSS_THREADS";

#[derive(Parser)]
#[command(name = "probvss", version, about = "Probabilistic visual secret sharing for binary, gray and color images")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build or validate basis-matrix schemes
    #[command(subcommand)]
    Scheme(SchemeCmd),
    /// Split a secret image into share images
    Encode(EncodeArgs),
    /// Overlay share images
    Stack(StackArgs),
    /// Distributions, recognition areas and simulations
    #[command(subcommand)]
    Analyze(AnalyzeCmd),
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeType {
    Binary,
    Gvss,
    Cvss,
}

#[derive(Subcommand)]
enum SchemeCmd {
    /// Construct a scheme and print it (or write it with -o)
    Build {
        #[arg(long = "type", value_enum)]
        kind: SchemeType,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// Gray levels (gvss)
        #[arg(long)]
        g: Option<usize>,
        /// Colors (cvss)
        #[arg(long)]
        c: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a scheme file; exits 0 iff the scheme is valid
    Validate {
        /// Scheme file or builtin name
        scheme: String,
    },
}

#[derive(Args)]
struct EncodeArgs {
    /// Scheme file or builtin name
    #[arg(long)]
    scheme: String,
    /// Secret image (PGM for gray schemes, PPM for color schemes)
    #[arg(long)]
    secret: PathBuf,
    /// Columns drawn per pixel (t for color schemes)
    #[arg(long, default_value_t = 1)]
    s: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Display colors `r,g,b;r,g,b;...`, one per scheme color
    #[arg(long)]
    palette: Option<String>,
    /// Output directory for share images
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct StackArgs {
    /// Share images written by `encode`
    #[arg(required = true)]
    shares: Vec<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum AnalyzeCmd {
    /// Exact distribution of stacked counts per level (or color) as CSV
    Distribution {
        #[arg(long, default_value = "gvss233")]
        scheme: String,
        #[arg(long)]
        s: usize,
    },
    /// Smallest region size separating two levels, or a color from black
    Recognition {
        #[arg(long, default_value = "gvss233")]
        scheme: String,
        /// Two gray levels `i,j`
        #[arg(long, value_delimiter = ',')]
        levels: Option<Vec<usize>>,
        /// Color index (color schemes)
        #[arg(long)]
        color: Option<usize>,
        #[arg(long, default_value_t = 1)]
        s: usize,
        /// Margin, as a fraction or decimal
        #[arg(long)]
        d: String,
    },
    /// Monte Carlo region counts as a histogram CSV
    Simulate {
        #[arg(long, default_value = "gvss233")]
        scheme: String,
        /// Level or color encoded in every region
        #[arg(long, default_value_t = 0)]
        level: usize,
        #[arg(long, default_value_t = 1)]
        s: usize,
        /// Pixels per region
        #[arg(long = "N", default_value_t = 100)]
        pixels: u64,
        #[arg(long, default_value_t = 3000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the histogram here and statistics to `<out>.stats`
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Invalid(String),
    Usage(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Usage(m) | Failure::Io(m) => m,
        }
    }
}

impl From<VssError> for Failure {
    fn from(e: VssError) -> Self {
        match e {
            VssError::Io(_) => Failure::Io(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn io_err(path: &Path, e: std::io::Error) -> Failure {
    Failure::Io(format!("{}: {e}", path.display()))
}

fn load_scheme(spec: &str) -> CliResult<SchemeFile> {
    if let Some(s) = builtin(spec) {
        return Ok(s);
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(Failure::Usage(format!(
            "{spec:?} is neither a scheme file nor a builtin ({})",
            BUILTIN_NAMES.join(", ")
        )));
    }
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    text.parse().map_err(|e: VssError| Failure::Invalid(format!("{spec}: {e}")))
}

fn base_scheme(k: usize, n: usize) -> CliResult<BinaryScheme> {
    if k == 2 {
        Ok(build_2_of_n(n)?)
    } else if k == n {
        Ok(build_n_of_n(n)?)
    } else {
        Err(Failure::Usage(format!("no builtin binary construction for k = {k}, n = {n}; use k = 2 or k = n")))
    }
}

fn write_or_print(output: Option<&Path>, text: &str) -> CliResult<()> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| io_err(p, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_scheme(cmd: SchemeCmd) -> CliResult<()> {
    match cmd {
        SchemeCmd::Build { kind, k, n, g, c, output } => {
            let file: SchemeFile = match kind {
                SchemeType::Binary => (&base_scheme(k, n)?).into(),
                SchemeType::Gvss => {
                    let g = g.ok_or_else(|| Failure::Usage("--g is required for gvss".into()))?;
                    (&build_gvss(&base_scheme(k, n)?, g)?).into()
                }
                SchemeType::Cvss => {
                    let c = c.ok_or_else(|| Failure::Usage("--c is required for cvss".into()))?;
                    if k != 2 {
                        return Err(Failure::Usage("color schemes are built for k = 2 only".into()));
                    }
                    (&build_color_2n(c, n)?).into()
                }
            };
            write_or_print(output.as_deref(), &file.to_string())
        }
        SchemeCmd::Validate { scheme } => {
            let file = load_scheme(&scheme)?;
            let report = file.validate().map_err(|e| Failure::Invalid(e.to_string()))?;
            print!("{}", report.render());
            if report.is_valid() {
                Ok(())
            } else {
                Err(Failure::Invalid(format!("{scheme}: scheme is not valid")))
            }
        }
    }
}

fn palette_arg(palette: Option<&str>) -> CliResult<Vec<Rgb>> {
    let text = palette.ok_or_else(|| Failure::Usage("--palette is required for color schemes".into()))?;
    Ok(parse_palette(text)?)
}

fn cmd_encode(args: EncodeArgs) -> CliResult<()> {
    let file = load_scheme(&args.scheme)?;
    let hash = file.hash();
    let cfg = ProbConfig::new(args.s, args.seed);
    let images = match &file {
        SchemeFile::Color { .. } => {
            let scheme = file.to_color()?;
            let palette = palette_arg(args.palette.as_deref())?;
            if palette.len() != scheme.c {
                return Err(Failure::Usage(format!("scheme has {} colors, palette has {}", scheme.c, palette.len())));
            }
            let secret = load_color(&args.secret, &palette)?;
            let set = prob_encode_color(&secret.grid(), &scheme, cfg)?;
            share_images(&set, &hash, &palette)?
        }
        _ => {
            let scheme = file.to_gray()?;
            let secret = load_gray(&args.secret, scheme.g)?;
            let set = prob_encode_gray(&secret.grid(), &scheme, cfg)?;
            share_images(&set, &hash, &[])?
        }
    };
    for path in write_share_set(&args.out, &images)? {
        println!("{}", path.display());
    }
    Ok(())
}

fn cmd_stack(args: StackArgs) -> CliResult<()> {
    let shares = args.shares.iter().map(|p| read_share(p)).collect::<Result<Vec<_>, _>>()?;
    let plane = stack_share_images(&shares)?;
    let img = stacked_to_netpbm(&plane, &shares[0].meta.palette)?;
    write_netpbm(&args.out, &img)?;
    let below = shares.len() < shares[0].meta.k;
    println!("stacked={}", shares.len());
    println!("k={}", shares[0].meta.k);
    println!("below_threshold={below}");
    println!("output={}", args.out.display());
    Ok(())
}

fn margin(text: &str) -> CliResult<BigRational> {
    parse_rational(text).ok_or_else(|| Failure::Usage(format!("cannot parse margin {text:?}")))
}

fn cmd_analyze(cmd: AnalyzeCmd) -> CliResult<()> {
    match cmd {
        AnalyzeCmd::Distribution { scheme, s } => {
            let file = load_scheme(&scheme)?;
            let tables = match &file {
                SchemeFile::Color { .. } => theorem2_averages(&file.to_color()?, s)?.tables,
                _ => gray_distribution_tables(&file.to_gray()?, s)?,
            };
            print!("{}", distribution_csv(&tables)?);
            Ok(())
        }
        AnalyzeCmd::Recognition { scheme, levels, color, s, d } => {
            let file = load_scheme(&scheme)?;
            let d = margin(&d)?;
            match &file {
                SchemeFile::Color { .. } => {
                    let sc = file.to_color()?;
                    let color = color.unwrap_or(0);
                    if color >= sc.c {
                        return Err(Failure::Usage(format!("color {color} out of range 0..{}", sc.c)));
                    }
                    let n_min = recognition_area_color(sc.h, sc.m_prime, s, &d)?;
                    println!("scheme={scheme}");
                    println!("color={color}");
                    println!("t={s}");
                    println!("d={}", fraction(&d));
                    println!("b={}", sc.h);
                    println!("m_prime={}", sc.m_prime);
                    println!("n_min={n_min}");
                    if n_min > 0 {
                        let st = hyper_stats_color(sc.h, sc.m_prime, s, n_min)?;
                        println!("mu={}", fraction(&st.mu));
                        println!("sigma2={}", fraction(&st.sigma2));
                    }
                }
                _ => {
                    let sc = file.to_gray()?;
                    let lv = levels.unwrap_or_else(|| vec![0, 1]);
                    if lv.len() != 2 {
                        return Err(Failure::Usage("--levels takes exactly two levels, e.g. 0,1".into()));
                    }
                    if let Some(&bad) = lv.iter().find(|&&l| l >= sc.g) {
                        return Err(Failure::Usage(format!("level {bad} out of range 0..{}", sc.g)));
                    }
                    let (i, j) = (lv[0], lv[1]);
                    let n_min = recognition_area_gray(sc.a[i], sc.a[j], sc.m_star, s, &d)?;
                    println!("scheme={scheme}");
                    println!("levels={i},{j}");
                    println!("s={s}");
                    println!("d={}", fraction(&d));
                    println!("a={},{}", sc.a[i], sc.a[j]);
                    println!("m_star={}", sc.m_star);
                    println!("n_min={n_min}");
                    if n_min > 0 {
                        for l in [i, j] {
                            let st = hyper_stats_gray(sc.a[l], sc.m_star, s, n_min)?;
                            println!("mu.{l}={}", fraction(&st.mu));
                            println!("sigma2.{l}={}", fraction(&st.sigma2));
                        }
                    }
                }
            }
            Ok(())
        }
        AnalyzeCmd::Simulate { scheme, level, s, pixels, trials, seed, out } => {
            let file = load_scheme(&scheme)?;
            let cfg = ProbConfig::new(s, seed);
            let sim = match &file {
                SchemeFile::Color { .. } => simulate_color_region(&file.to_color()?, level, cfg, pixels, trials)?,
                _ => simulate_region(&file.to_gray()?, level, cfg, pixels, trials)?,
            };
            match out {
                Some(path) => {
                    fs::write(&path, sim.histogram_csv()).map_err(|e| io_err(&path, e))?;
                    let mut stats = path.clone().into_os_string();
                    stats.push(".stats");
                    let stats = PathBuf::from(stats);
                    fs::write(&stats, sim.stats_sidecar()).map_err(|e| io_err(&stats, e))?;
                    print!("{}", sim.stats_sidecar());
                }
                None => print!("{}", sim.histogram_csv()),
            }
            Ok(())
        }
    }
}

fn configure_threads() -> CliResult<()> {
    let Ok(value) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads = value
        .trim()
        .parse::<u64>()
        .ok()
        .and_then(|t| t.to_usize())
        .filter(|&t| t > 0)
        .ok_or_else(|| Failure::Usage(format!("{THREADS_VAR} must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn run(cli: Cli) -> CliResult<()> {
    configure_threads()?;
    match cli.command {
        Command::Scheme(cmd) => cmd_scheme(cmd),
        Command::Encode(args) => cmd_encode(args),
        Command::Stack(args) => cmd_stack(args),
        Command::Analyze(cmd) => cmd_analyze(cmd),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("probvss: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
