//! The `klstab` command line.
//!
//! [`run`] parses arguments and writes to the given streams, returning the
//! exit code: 0 on success, 1 when `verify` finds a mismatch, 2 on bad usage
//! or invalid input.

pub mod render;
pub mod verify;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use klstab_core::brillnoether::{bn_report, BNPoint, StratumConstraint};
use klstab_core::klregions::{
    complement_dims, nonempty_rows, region_report, violating_ranks, ComplementReport, NonemptyRow,
    RegionFlags,
};
use klstab_core::lowrank::{jh_classify, jh_region_witness, rank2_chain, rank3_table, JHType};
use klstab_core::oracle::{
    keyed_by_kl, sweep_complement_dim, sweep_nonempty, SweepSpec, DEFAULT_SWEEP_LIMIT,
};
use klstab_core::{BundleType, CurveParams, SegreProfile, KL};

use verify::{Scope, VerifyOptions};

/// Largest magnitude accepted for any integer argument.
pub const MAX_INPUT: i64 = 1_000_000;
/// Largest region plot window.
pub const MAX_WINDOW: i64 = 200;
pub const SWEEP_ENV: &str = "KLSTAB_MAX_SWEEP";

#[derive(Debug, Parser)]
#[command(
    name = "klstab",
    version,
    about = "(k,l)-stability of vector bundles on curves"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether A_(k,l)(n,d) is nonempty, with the per-rank inequalities
    Nonempty {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Regions of the (k,l) plane containing a point
    Region {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Rank 3 non-emptiness bounds for each d mod 3
    TableRank3 {
        #[arg(short, value_parser = bounded, allow_negative_numbers = true)]
        g: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// SVG of the regions of the (k,l) plane
    PlotRegions {
        #[arg(short, value_parser = bounded, allow_negative_numbers = true)]
        n: i64,
        #[arg(short, value_parser = bounded, allow_negative_numbers = true)]
        g: i64,
        /// Half-width of the lattice window [default: n*g]
        #[arg(long, value_parser = bounded, allow_negative_numbers = true)]
        window: Option<i64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Svg)]
        format: Format,
    },
    /// Check closed forms against brute-force enumeration
    Verify {
        #[arg(value_enum)]
        scope: Scope,
        /// Sweep radius for the lattice sweeps [default: n*g]
        #[arg(long, value_parser = bounded, allow_negative_numbers = true)]
        window: Option<i64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// (k,l)-stability of a Segre profile read as JSON
    StableCheck {
        #[arg(short, value_parser = bounded, allow_negative_numbers = true)]
        k: i64,
        #[arg(short, value_parser = bounded, allow_negative_numbers = true)]
        l: i64,
        /// Also check the profile against the genus-g bounds
        #[arg(short, value_parser = bounded, allow_negative_numbers = true)]
        g: Option<i64>,
        /// Profile JSON file [default: stdin]
        #[arg(long)]
        profile: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Dimension of the locus of stable, non-(k,l)-stable bundles
    Dims {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// The rank 2 filtration by t-stability
    ChainRank2 {
        #[arg(short, value_parser = bounded, allow_negative_numbers = true)]
        d: i64,
        #[arg(short, value_parser = bounded, allow_negative_numbers = true)]
        g: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Jordan-Hölder type of a strictly semistable rank 3 profile
    Jh {
        #[arg(short, value_parser = bounded, allow_negative_numbers = true)]
        g: i64,
        /// Profile JSON file [default: stdin]
        #[arg(long)]
        profile: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Brill-Noether region and the (k,l) exclusions it forces
    Bn {
        #[command(flatten)]
        point: PointArgs,
        /// Number of independent sections
        #[arg(short, value_parser = bounded, allow_negative_numbers = true)]
        r: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Brute-force sweep of a lattice window, keyed "k,l"
    Sweep {
        #[arg(short, value_parser = bounded, allow_negative_numbers = true)]
        n: i64,
        #[arg(short, value_parser = bounded, allow_negative_numbers = true)]
        d: i64,
        #[arg(short, value_parser = bounded, allow_negative_numbers = true)]
        g: i64,
        /// Half-width of the window [default: n*g]
        #[arg(long, value_parser = bounded, allow_negative_numbers = true)]
        window: Option<i64>,
        /// Sweep complement dimensions on R1 instead of non-emptiness
        #[arg(long)]
        dims: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct PointArgs {
    /// Rank
    #[arg(short, value_parser = bounded, allow_negative_numbers = true)]
    pub n: i64,
    /// Degree
    #[arg(short, value_parser = bounded, allow_negative_numbers = true)]
    pub d: i64,
    /// Genus
    #[arg(short, value_parser = bounded, allow_negative_numbers = true)]
    pub g: i64,
    #[arg(short, value_parser = bounded, allow_negative_numbers = true)]
    pub k: i64,
    #[arg(short, value_parser = bounded, allow_negative_numbers = true)]
    pub l: i64,
}

impl PointArgs {
    fn resolve(&self) -> Result<(BundleType, CurveParams, KL), Failure> {
        Ok((
            BundleType::new(self.n, self.d)?,
            CurveParams::new(self.g)?,
            KL::new(self.k, self.l),
        ))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Latex,
    Text,
    Svg,
}

fn bounded(s: &str) -> Result<i64, String> {
    let v: i64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.abs() > MAX_INPUT {
        return Err(format!("|{v}| exceeds {MAX_INPUT}"));
    }
    Ok(v)
}

#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error(transparent)]
    Core(#[from] klstab_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("invalid profile JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// What a command produced: text for stdout and an exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { stdout, code: 0 }
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(
    args: I,
    sweep_limit: Option<&str>,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(rendered.as_bytes());
                    0
                }
                _ => {
                    let _ = stderr.write_all(rendered.as_bytes());
                    2
                }
            };
        }
    };
    let limit = match sweep_limit.map(str::parse::<u64>) {
        None => DEFAULT_SWEEP_LIMIT,
        Some(Ok(v)) => v,
        Some(Err(e)) => {
            let _ = writeln!(stderr, "error: {SWEEP_ENV}: {e}");
            return 2;
        }
    };
    match execute(cli.command, limit, stdin) {
        Ok(out) => {
            if stdout.write_all(out.stdout.as_bytes()).is_err() {
                return 2;
            }
            out.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

fn require_format(format: Format, allowed: &[Format]) -> Result<(), Failure> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        let names: Vec<String> = allowed
            .iter()
            .map(|f| {
                f.to_possible_value()
                    .expect("no skipped variants")
                    .get_name()
                    .to_string()
            })
            .collect();
        Err(Failure::Usage(format!(
            "unsupported --format for this command; expected one of {}",
            names.join(", ")
        )))
    }
}

fn json<T: Serialize>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn read_profile(path: Option<&PathBuf>, stdin: &mut dyn Read) -> Result<SegreProfile, Failure> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p)?,
        None => {
            let mut s = String::new();
            stdin.read_to_string(&mut s)?;
            s
        }
    };
    Ok(serde_json::from_str(&text)?)
}

fn flag_names(f: &RegionFlags) -> Vec<&'static str> {
    [
        (f.in_r0, "R0"),
        (f.in_r1, "R1"),
        (f.in_r2, "R2"),
        (f.in_r3k, "R3k"),
        (f.in_r3l, "R3l"),
    ]
    .into_iter()
    .filter_map(|(on, name)| on.then_some(name))
    .collect()
}

fn opt(v: Option<i64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

#[derive(Serialize)]
struct NonemptyJson {
    bundle: BundleType,
    genus: i64,
    kl: KL,
    nonempty: bool,
    verdict: &'static str,
    rows: Vec<NonemptyRow>,
}

fn verdict(nonempty: bool) -> &'static str {
    if nonempty {
        "nonempty"
    } else {
        "empty"
    }
}

fn cmd_nonempty(point: PointArgs, format: Format) -> Result<String, Failure> {
    require_format(format, &[Format::Text, Format::Json, Format::Csv])?;
    let (b, curve, kl) = point.resolve()?;
    let rows = nonempty_rows(b, curve, kl)?;
    let nonempty = rows.iter().all(|r| r.holds);
    Ok(match format {
        Format::Json => json(&NonemptyJson {
            bundle: b,
            genus: curve.genus(),
            kl,
            nonempty,
            verdict: verdict(nonempty),
            rows,
        })?,
        Format::Csv => {
            let mut out = String::from("m,threshold,delta,bound,holds\n");
            for r in rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.m, r.threshold, r.delta, r.bound, r.holds
                );
            }
            out
        }
        _ => {
            let mut out = format!("{}\n", verdict(nonempty));
            for r in rows {
                let _ = writeln!(
                    out,
                    "m={}: k(n-m)+ml = {} {} {} = m(n-m)(g-1)+delta (delta = {})",
                    r.m,
                    r.threshold,
                    if r.holds { "<" } else { ">=" },
                    r.bound,
                    r.delta
                );
            }
            out
        }
    })
}

fn cmd_region(point: PointArgs, format: Format) -> Result<String, Failure> {
    require_format(format, &[Format::Text, Format::Json])?;
    let (b, curve, kl) = point.resolve()?;
    let report = region_report(b, curve, kl)?;
    Ok(match format {
        Format::Json => json(&report)?,
        _ => {
            let names = flag_names(&report.flags);
            format!(
                "regions: {}\n{}\n",
                if names.is_empty() {
                    "none".to_string()
                } else {
                    names.join(", ")
                },
                verdict(report.nonempty)
            )
        }
    })
}

fn cmd_table_rank3(g: i64, format: Format) -> Result<String, Failure> {
    require_format(
        format,
        &[Format::Text, Format::Json, Format::Csv, Format::Latex],
    )?;
    let curve = CurveParams::new(g)?;
    let table = rank3_table(curve);
    Ok(match format {
        Format::Json => json(&table)?,
        Format::Csv => render::rank3_csv(&table),
        Format::Latex => render::rank3_latex(curve)?,
        _ => render::rank3_text(&table),
    })
}

fn cmd_plot_regions(
    n: i64,
    g: i64,
    window: Option<i64>,
    out: Option<&PathBuf>,
    format: Format,
) -> Result<String, Failure> {
    require_format(format, &[Format::Svg])?;
    if n < 2 {
        return Err(Failure::Usage(format!("rank must be at least 2, got {n}")));
    }
    CurveParams::new(g)?;
    let w = window.unwrap_or(n * g);
    if !(1..=MAX_WINDOW).contains(&w) {
        return Err(Failure::Usage(format!(
            "window must lie in 1..={MAX_WINDOW}, got {w}"
        )));
    }
    let svg = render::regions_svg(n, g, w)?;
    match out {
        Some(path) => {
            std::fs::write(path, svg)?;
            Ok(String::new())
        }
        None => Ok(svg),
    }
}

fn cmd_verify(
    scope: Scope,
    window: Option<i64>,
    format: Format,
    limit: u64,
) -> Result<Output, Failure> {
    require_format(format, &[Format::Text, Format::Json])?;
    if window.is_some_and(|w| w < 0) {
        return Err(Failure::Usage("window must be non-negative".into()));
    }
    let report = verify::run(
        scope,
        VerifyOptions {
            window,
            sweep_limit: limit,
        },
    )?;
    let stdout = match format {
        Format::Json => json(&report)?,
        _ => report.text(),
    };
    Ok(Output {
        stdout,
        code: if report.passed { 0 } else { 1 },
    })
}

#[derive(Serialize)]
struct StableJson {
    profile: SegreProfile,
    kl: KL,
    stable: bool,
    violating_ranks: Vec<i64>,
    thresholds: Vec<i64>,
}

fn cmd_stable_check(
    kl: KL,
    g: Option<i64>,
    profile: SegreProfile,
    format: Format,
) -> Result<String, Failure> {
    require_format(format, &[Format::Text, Format::Json])?;
    if let Some(g) = g {
        profile.check_bound(CurveParams::new(g)?)?;
    }
    let n = profile.rank();
    let bad = violating_ranks(&profile, kl);
    let thresholds: Vec<i64> = (1..n).map(|m| kl.threshold(n, m)).collect();
    Ok(match format {
        Format::Json => json(&StableJson {
            stable: bad.is_empty(),
            violating_ranks: bad,
            thresholds,
            profile,
            kl,
        })?,
        _ => {
            let mut out = format!(
                "{}\n",
                if bad.is_empty() {
                    "stable"
                } else {
                    "not stable"
                }
            );
            for (m, s) in profile.iter() {
                let t = kl.threshold(n, m);
                let _ = writeln!(
                    out,
                    "m={m}: s_m = {s} {} {t} = k(n-m)+ml",
                    if s > t { ">" } else { "<=" }
                );
            }
            if !bad.is_empty() {
                let ms: Vec<String> = bad.iter().map(i64::to_string).collect();
                let _ = writeln!(out, "violating m: {}", ms.join(", "));
            }
            out
        }
    })
}

fn dims_text(r: &ComplementReport) -> String {
    let tilde: Vec<String> = r.s_tilde.iter().map(|s| opt(*s)).collect();
    format!(
        "s~_m: [{}]\ns_delta: {}\ndim: {}\ncodim: {}\n",
        tilde.join(", "),
        opt(r.s_delta),
        opt(r.dim_complement),
        opt(r.codim)
    )
}

fn cmd_dims(point: PointArgs, format: Format) -> Result<String, Failure> {
    require_format(format, &[Format::Text, Format::Json])?;
    let (b, curve, kl) = point.resolve()?;
    let report = complement_dims(b, curve, kl)?;
    Ok(match format {
        Format::Json => json(&report)?,
        _ if report.is_empty() => format!("complement empty\n{}", dims_text(&report)),
        _ => dims_text(&report),
    })
}

fn cmd_chain_rank2(d: i64, g: i64, format: Format) -> Result<String, Failure> {
    require_format(format, &[Format::Text, Format::Json])?;
    let chain = rank2_chain(d, CurveParams::new(g)?);
    Ok(match format {
        Format::Json => json(&chain)?,
        _ => render::chain_text(&chain),
    })
}

#[derive(Serialize)]
struct JhJson {
    profile: SegreProfile,
    jh_type: JHType,
    witness: Option<KL>,
}

fn cmd_jh(g: i64, profile: SegreProfile, format: Format) -> Result<String, Failure> {
    require_format(format, &[Format::Text, Format::Json])?;
    let curve = CurveParams::new(g)?;
    profile.check_bound(curve)?;
    let jh_type = jh_classify(&profile)?;
    let witness = jh_region_witness(&profile, curve)?;
    Ok(match format {
        Format::Json => json(&JhJson {
            profile,
            jh_type,
            witness,
        })?,
        _ => {
            let w = witness.map_or_else(|| "none".to_string(), |kl| format!("({},{})", kl.k, kl.l));
            format!("type: {jh_type:?}\nwitness: {w}\n")
        }
    })
}

fn cmd_bn(point: PointArgs, r: i64, format: Format) -> Result<String, Failure> {
    require_format(format, &[Format::Text, Format::Json])?;
    let (b, curve, kl) = point.resolve()?;
    let report = bn_report(&BNPoint::new(b, r, curve)?, kl);
    Ok(match format {
        Format::Json => json(&report)?,
        _ => {
            let region = serde_json::to_value(report.region)?;
            let mut out = format!(
                "mu = {}, lambda = {}\nregion: {}\nBMNO applicable: {}\nexcluded from A_({},{}): {}\n",
                report.mu,
                report.lambda,
                region.as_str().unwrap_or_default(),
                report.bmno_applicable,
                kl.k,
                kl.l,
                report.excluded_kl
            );
            for c in &report.forced_strata {
                let _ = match c {
                    StratumConstraint::Equal { m, s } => writeln!(out, "forced: s_{m} = {s}"),
                    StratumConstraint::AtLeast { m, s } => writeln!(out, "forced: s_{m} >= {s}"),
                };
            }
            out
        }
    })
}

fn cmd_sweep(
    n: i64,
    d: i64,
    g: i64,
    window: Option<i64>,
    dims: bool,
    format: Format,
    limit: u64,
) -> Result<String, Failure> {
    require_format(format, &[Format::Json])?;
    let b = BundleType::new(n, d)?;
    let radius = window.unwrap_or(n * g);
    if radius < 0 {
        return Err(Failure::Usage("window must be non-negative".into()));
    }
    let spec = SweepSpec::square(b, CurveParams::new(g)?, radius)?.with_limit(limit);
    if dims {
        json(&keyed_by_kl(&sweep_complement_dim(&spec)?))
    } else {
        json(&keyed_by_kl(&sweep_nonempty(&spec)?))
    }
}

/// Runs one parsed command.
pub fn execute(
    command: Command,
    sweep_limit: u64,
    stdin: &mut dyn Read,
) -> Result<Output, Failure> {
    let text = match command {
        Command::Nonempty { point, format } => cmd_nonempty(point, format)?,
        Command::Region { point, format } => cmd_region(point, format)?,
        Command::TableRank3 { g, format } => cmd_table_rank3(g, format)?,
        Command::PlotRegions {
            n,
            g,
            window,
            out,
            format,
        } => cmd_plot_regions(n, g, window, out.as_ref(), format)?,
        Command::Verify {
            scope,
            window,
            format,
        } => return cmd_verify(scope, window, format, sweep_limit),
        Command::StableCheck {
            k,
            l,
            g,
            profile,
            format,
        } => {
            let p = read_profile(profile.as_ref(), stdin)?;
            cmd_stable_check(KL::new(k, l), g, p, format)?
        }
        Command::Dims { point, format } => cmd_dims(point, format)?,
        Command::ChainRank2 { d, g, format } => cmd_chain_rank2(d, g, format)?,
        Command::Jh { g, profile, format } => {
            let p = read_profile(profile.as_ref(), stdin)?;
            cmd_jh(g, p, format)?
        }
        Command::Bn { point, r, format } => cmd_bn(point, r, format)?,
        Command::Sweep {
            n,
            d,
            g,
            window,
            dims,
            format,
        } => cmd_sweep(n, d, g, window, dims, format, sweep_limit)?,
    };
    Ok(Output::ok(text))
}
