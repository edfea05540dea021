//! Reproducible experiment runs behind the `orthojulia` binary.
//!
//! Each subcommand validates its flags, runs one pipeline and writes CSV/PGM
//! files into `--out`. Outputs depend only on the flags (the seed included);
//! `--threads` changes wall time, never bytes.
//!
//! Polynomial specs accept comma-separated coefficients, lowest degree first,
//! each either `re` or `re:im` (`"1,0,1"` is `z² + 1`), or one of the named
//! families `cheb` (`T_n` on `[-2,2]`), `multibrot` (`zⁿ + c`), `monomial`
//! (`zⁿ`), `iterate` (`fⁿ` for `--f`), or `file:PATH` to read member `n`
//! of a sequence CSV written by `ortho`.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::dynamics::{
    filled_julia_raster_with, green_gap, is_connected, iterate_polynomial, locus::linspace, locus_scan, GridSpec,
    JuliaApproximation, LocusFamily, LocusScan, RasterMode,
};
use crate::error::{Error, Result};
use crate::geometry::{
    convergence_table, convex_hull, raster_to_points, ConvergenceTable, ConvexPolygon, LimitTarget, PointSet, SetKind,
};
use crate::io::{self as fmt_io, Provenance};
use crate::measure::{
    interval_equilibrium_measure, max_entropy_measure, unit_circle_measure, DiscreteMeasure, DEFAULT_BURN_IN,
};
use crate::orthopoly::{
    capacity_from_gamma, chebyshev_closed_form, monic_sequence, nthroot_regularity_diagnostic, orthonormalize,
};
use crate::polynomial::Polynomial;

/// Samples used for analytic reference curves (circle, segment).
const REFERENCE_SAMPLES: usize = 4096;

#[derive(Debug, Parser)]
#[command(
    name = "orthojulia",
    version,
    about = "Orthogonal polynomials of planar measures and the Julia sets of their deformations"
)]
pub struct ExperimentConfig {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Output directory (created if missing).
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Worker threads for raster and scan work; results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Orthonormal sequence of a measure, Gram residual and regularity diagnostic.
    Ortho(OrthoArgs),
    /// Escape-time rasters of K and J for one or more polynomials.
    Julia(JuliaArgs),
    /// Convergence table of a family against a limit set.
    Converge(ConvergeArgs),
    /// Connectedness locus of a two-parameter family.
    Locus(LocusArgs),
    /// Orthogonal polynomials of the maximal entropy measure versus iterates.
    Iterates(IteratesArgs),
    /// Distance between the Green's function and its one-step truncation.
    Greengap(GreenGapArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MeasureKind {
    Circle,
    Interval,
    Mme,
}

#[derive(Debug, Args)]
pub struct OrthoArgs {
    #[arg(long, value_enum)]
    pub measure: MeasureKind,
    /// Node (or sample) count.
    #[arg(long)]
    pub m: usize,
    /// Highest degree.
    #[arg(long = "N")]
    pub max_degree: usize,
    /// Polynomial whose maximal entropy measure is sampled (`--measure mme`).
    #[arg(long, allow_hyphen_values = true)]
    pub f: Option<String>,
    #[arg(long, default_value_t = DEFAULT_BURN_IN)]
    pub burn_in: usize,
    /// Capacity of the support, for the n-th root diagnostic.
    #[arg(long, default_value_t = 1.0)]
    pub cap: f64,
    /// Also write the nodes and weights.
    #[arg(long)]
    pub write_measure: bool,
}

#[derive(Debug, Args)]
pub struct RasterArgs {
    /// `xmin:xmax:ymin:ymax`; the shorter side is widened to square cells.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// Cells along the longer side.
    #[arg(long, default_value_t = 1024)]
    pub res: usize,
    #[arg(long, default_value_t = 64)]
    pub iters: usize,
    /// `center` marks cells whose center stays bounded; `covering` also
    /// marks cells within reach of K, so segments and dust stay visible.
    #[arg(long, value_enum, default_value_t = Mode::Covering)]
    pub mode: Mode,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Center,
    Covering,
}

impl From<Mode> for RasterMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Center => RasterMode::CellCenter,
            Mode::Covering => RasterMode::Covering,
        }
    }
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// Degrees (or iterate counts): `4,8,16` or a doubling range `4..32`.
    #[arg(long, default_value = "2")]
    pub n: String,
    /// Additive parameter of `zⁿ + c`, as `re` or `re:im`.
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    pub c: String,
    /// Post-composition `a·q + b`.
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    pub a: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    pub b: String,
    /// Base map of the `iterate` family.
    #[arg(long, allow_hyphen_values = true)]
    pub f: Option<String>,
}

#[derive(Debug, Args)]
pub struct JuliaArgs {
    /// Polynomial spec (see module docs).
    #[arg(long, allow_hyphen_values = true, conflicts_with = "family")]
    pub poly: Option<String>,
    /// Named family, same as `--poly <name>`.
    #[arg(long)]
    pub family: Option<String>,
    #[command(flatten)]
    pub params: FamilyArgs,
    #[command(flatten)]
    pub raster: RasterArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConvergeFamily {
    Multibrot,
    Cheb,
    Iterate,
    Constant,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Limit {
    /// `J_n` against the unit circle.
    Circle,
    /// `K_n` against the closed unit disk.
    Disk,
    /// `K_n` against `[-2, 2]`.
    Interval,
    /// `K_n` against the filled Julia set of `--f`.
    Kf,
    None,
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    #[arg(long, value_enum)]
    pub family: ConvergeFamily,
    #[command(flatten)]
    pub params: FamilyArgs,
    /// Fixed polynomial of the `constant` family.
    #[arg(long, allow_hyphen_values = true)]
    pub poly: Option<String>,
    /// Full Hausdorff column; defaults to the family's natural limit.
    #[arg(long, value_enum)]
    pub limit: Option<Limit>,
    #[command(flatten)]
    pub raster: RasterArgs,
    /// Also write every raster.
    #[arg(long)]
    pub rasters: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LocusKind {
    Cheb,
    Multibrot,
    Iterate,
}

#[derive(Debug, Args)]
pub struct LocusArgs {
    #[arg(long, value_enum)]
    pub family: LocusKind,
    #[arg(long)]
    pub n: usize,
    /// `lo:hi:count` for `a` (for `multibrot`: `Re c`).
    #[arg(long, allow_hyphen_values = true, default_value = "-1.5:1.5:61")]
    pub a: String,
    /// `lo:hi:count` for `b` (for `multibrot`: `Im c`).
    #[arg(long, allow_hyphen_values = true, default_value = "-3:3:61")]
    pub b: String,
    /// Remove `a = 0` from the `a` grid instead of rejecting it.
    #[arg(long)]
    pub drop_zero: bool,
    #[arg(long, default_value_t = 256)]
    pub iters: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub f: Option<String>,
    /// Slack on `|a| <= 1` in the diamond check.
    #[arg(long, default_value_t = 0.1)]
    pub slack_a: f64,
    /// Slack on `|b| <= 2(1 - |a|)` in the diamond check, and on the disk
    /// distance for `multibrot`.
    #[arg(long, default_value_t = 0.2)]
    pub slack_b: f64,
}

#[derive(Debug, Args)]
pub struct IteratesArgs {
    /// Monic centered map.
    #[arg(long, allow_hyphen_values = true)]
    pub f: String,
    #[arg(long, default_value_t = 1_000_000)]
    pub m: usize,
    #[arg(long, default_value_t = DEFAULT_BURN_IN)]
    pub burn_in: usize,
    /// Iterate orders compared against the monic orthogonal polynomials.
    #[arg(long, default_value = "1,2")]
    pub k: String,
    /// Iterate counts for the raster table (`a·fⁿ + b`).
    #[arg(long, default_value = "2,4,8")]
    pub n: String,
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    pub a: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0.1")]
    pub b: String,
    #[command(flatten)]
    pub raster: RasterArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GreenFamily {
    Monomial,
    Multibrot,
    Cheb,
}

#[derive(Debug, Args)]
pub struct GreenGapArgs {
    #[arg(long, value_enum)]
    pub family: GreenFamily,
    #[arg(long, default_value = "4..32")]
    pub n: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0.25")]
    pub c: String,
    #[arg(long, allow_hyphen_values = true, default_value = "-2:2:-2:2")]
    pub grid: String,
    #[arg(long, default_value_t = 256)]
    pub res: usize,
    #[arg(long, default_value_t = 64)]
    pub depth: usize,
}

/// What a run produced.
#[derive(Debug, Default)]
pub struct Report {
    pub files: Vec<PathBuf>,
    pub summary: Vec<String>,
}

impl Report {
    fn note(&mut self, line: impl Into<String>) {
        self.summary.push(line.into());
    }
}

/// Parses `argv` and runs it, printing the summary to stdout and errors to
/// stderr as `error: ...`. Returns the process exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match ExperimentConfig::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return 0;
            }
            eprintln!("error: {}", e.to_string().trim_start_matches("error: ").lines().next().unwrap_or(""));
            return 1;
        }
    };
    match run(&config) {
        Ok(report) => {
            for line in &report.summary {
                println!("{line}");
            }
            for f in &report.files {
                println!("wrote {}", f.display());
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Runs one configured experiment, honoring `--threads`.
pub fn run(config: &ExperimentConfig) -> Result<Report> {
    match config.common.threads {
        Some(0) => Err(Error::invalid("--threads must be positive")),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
            pool.install(|| dispatch(config))
        }
        None => dispatch(config),
    }
}

fn dispatch(config: &ExperimentConfig) -> Result<Report> {
    let out = &config.common.out;
    fs::create_dir_all(out)?;
    let prov = Provenance::new(format!("{:?}", config.command)).with_seed(config.common.seed);
    let seed = config.common.seed;
    match &config.command {
        Command::Ortho(args) => cmd_ortho(args, seed, out, &prov),
        Command::Julia(args) => cmd_julia(args, out, &prov),
        Command::Converge(args) => cmd_converge(args, out, &prov),
        Command::Locus(args) => cmd_locus(args, out, &prov),
        Command::Iterates(args) => cmd_iterates(args, seed, out, &prov),
        Command::Greengap(args) => cmd_greengap(args, out, &prov),
    }
}

fn create(out: &Path, name: &str, report: &mut Report) -> Result<BufWriter<File>> {
    let path = out.join(name);
    let file = File::create(&path)?;
    report.files.push(path);
    Ok(BufWriter::new(file))
}

// ---------------------------------------------------------------- parsing

/// `re` or `re:im`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = || Error::invalid(format!("cannot parse complex number {s:?}"));
    let mut parts = s.trim().splitn(2, ':');
    let re: f64 = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
    let im: f64 = match parts.next() {
        Some(t) => t.trim().parse().map_err(|_| bad())?,
        None => 0.0,
    };
    let z = Complex64::new(re, im);
    if !z.is_finite() {
        return Err(bad());
    }
    Ok(z)
}

/// Comma list `4,8,16` or doubling range `4..32`.
pub fn parse_degrees(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::invalid(format!("cannot parse degree list {s:?}"));
    let s = s.trim();
    let list: Vec<usize> = if let Some((lo, hi)) = s.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().parse().map_err(|_| bad())?;
        if lo == 0 || hi < lo {
            return Err(bad());
        }
        std::iter::successors(Some(lo), |&n| n.checked_mul(2)).take_while(|&n| n <= hi).collect()
    } else {
        s.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?
    };
    if list.is_empty() || list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid(format!("degree list {s:?} must be non-empty and increasing")));
    }
    Ok(list)
}

/// `xmin:xmax:ymin:ymax`.
pub fn parse_grid(s: &str, res: usize) -> Result<GridSpec> {
    let v: Vec<f64> = s
        .split(':')
        .map(|t| t.trim().parse::<f64>().map_err(|_| Error::invalid(format!("cannot parse grid {s:?}"))))
        .collect::<Result<_>>()?;
    if v.len() != 4 {
        return Err(Error::invalid(format!("grid {s:?} needs four bounds")));
    }
    GridSpec::with_square_cells(v[0], v[1], v[2], v[3], res)
}

/// `lo:hi:count`.
pub fn parse_param_grid(s: &str) -> Result<Vec<f64>> {
    let bad = || Error::invalid(format!("cannot parse parameter grid {s:?}"));
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let count: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if count == 0 || !(hi >= lo) {
        return Err(bad());
    }
    Ok(linspace(lo, hi, count))
}

/// Coefficient list, lowest degree first.
pub fn parse_coefficients(s: &str) -> Result<Polynomial> {
    let coeffs = s.split(',').map(parse_complex).collect::<Result<Vec<_>>>()?;
    Polynomial::new(coeffs)
}

/// A polynomial description from the command line.
#[derive(Clone, Debug)]
pub enum PolySpec {
    Cheb,
    Multibrot,
    Monomial,
    Iterate,
    Coefficients(Polynomial),
    SequenceFile(PathBuf),
}

impl PolySpec {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "cheb" => PolySpec::Cheb,
            "multibrot" => PolySpec::Multibrot,
            "monomial" => PolySpec::Monomial,
            "iterate" => PolySpec::Iterate,
            other => match other.strip_prefix("file:") {
                Some(path) => PolySpec::SequenceFile(PathBuf::from(path)),
                None => PolySpec::Coefficients(parse_coefficients(other)?),
            },
        })
    }

    /// Whether the spec depends on `n`.
    pub fn is_family(&self) -> bool {
        !matches!(self, PolySpec::Coefficients(_))
    }

    /// Member `n`, post-composed with `a·q + b`.
    pub fn build(&self, n: usize, params: &FamilyParams) -> Result<Polynomial> {
        let base = match self {
            PolySpec::Cheb => chebyshev_closed_form(n)?,
            PolySpec::Multibrot => Polynomial::monomial(n).affine_image(Complex64::new(1.0, 0.0), params.c)?,
            PolySpec::Monomial => Polynomial::monomial(n),
            PolySpec::Iterate => {
                let f = params.f.as_ref().ok_or_else(|| Error::invalid("the iterate family needs --f"))?;
                iterate_polynomial(f, n)?
            }
            PolySpec::Coefficients(p) => p.clone(),
            PolySpec::SequenceFile(path) => fmt_io::read_sequence_csv(path)?
                .into_iter()
                .find(|(k, _, _)| *k == n)
                .map(|(_, _, p)| p)
                .ok_or_else(|| Error::invalid(format!("{} has no member {n}", path.display())))?,
        };
        base.affine_image(params.a, params.b)
    }
}

/// Parsed [`FamilyArgs`].
#[derive(Clone, Debug)]
pub struct FamilyParams {
    pub degrees: Vec<usize>,
    pub c: Complex64,
    pub a: Complex64,
    pub b: Complex64,
    pub f: Option<Polynomial>,
}

impl FamilyParams {
    fn from_args(args: &FamilyArgs) -> Result<Self> {
        let a = parse_complex(&args.a)?;
        if a.norm() == 0.0 {
            return Err(Error::invalid("a must be nonzero"));
        }
        Ok(Self {
            degrees: parse_degrees(&args.n)?,
            c: parse_complex(&args.c)?,
            a,
            b: parse_complex(&args.b)?,
            f: args.f.as_deref().map(parse_coefficients).transpose()?,
        })
    }
}

fn raster_grid(args: &RasterArgs, default: &str) -> Result<GridSpec> {
    parse_grid(args.grid.as_deref().unwrap_or(default), args.res)
}

// ---------------------------------------------------------------- ortho

fn build_measure(args: &OrthoArgs, seed: u64) -> Result<DiscreteMeasure> {
    match args.measure {
        MeasureKind::Circle => unit_circle_measure(args.m),
        MeasureKind::Interval => interval_equilibrium_measure(args.m),
        MeasureKind::Mme => {
            let f = args.f.as_deref().ok_or_else(|| Error::invalid("--measure mme needs --f"))?;
            max_entropy_measure(&parse_coefficients(f)?, args.m, seed, args.burn_in)
        }
    }
}

pub fn cmd_ortho(args: &OrthoArgs, seed: u64, out: &Path, prov: &Provenance) -> Result<Report> {
    if !(args.cap > 0.0) {
        return Err(Error::invalid("--cap must be positive"));
    }
    let mu = build_measure(args, seed)?;
    let seq = orthonormalize(&mu, args.max_degree)?;
    let mut report = Report::default();

    let mut w = create(out, "sequence.csv", &mut report)?;
    fmt_io::write_sequence_csv(&mut w, &seq, prov)?;
    w.flush()?;

    let mut w = create(out, "gram.txt", &mut report)?;
    prov.write_csv_comments(&mut w)?;
    writeln!(w, "measure {}", mu.label())?;
    writeln!(w, "nodes {}", mu.len())?;
    writeln!(w, "max_degree {}", seq.max_degree())?;
    writeln!(w, "gram_residual {}", fmt_io::fmt_real(seq.gram_residual()))?;
    w.flush()?;

    let diag = nthroot_regularity_diagnostic(&seq, args.cap)?;
    let mut w = create(out, "regularity.csv", &mut report)?;
    prov.write_csv_comments(&mut w)?;
    writeln!(w, "# cap_S: {}", args.cap)?;
    writeln!(w, "n,gamma,gamma_inv_nth_root,e_n,cap_K_pn")?;
    for (n, e) in &diag {
        let g = seq.gammas()[*n];
        let cap = if *n >= 2 { fmt_io::fmt_real(capacity_from_gamma(g, *n)?) } else { String::new() };
        writeln!(
            w,
            "{n},{},{},{},{cap}",
            fmt_io::fmt_real(g),
            fmt_io::fmt_real(g.powf(-1.0 / *n as f64)),
            fmt_io::fmt_real(*e)
        )?;
    }
    w.flush()?;

    if args.write_measure {
        let mut w = create(out, "measure.csv", &mut report)?;
        fmt_io::write_measure_csv(&mut w, &mu, prov)?;
        w.flush()?;
    }

    report.note(format!("gram residual {:.3e} up to degree {}", seq.gram_residual(), seq.max_degree()));
    if let Some((n, e)) = diag.last() {
        report.note(format!("e_{n} = {e:.3e}"));
    }
    Ok(report)
}

// ---------------------------------------------------------------- julia

fn write_raster(out: &Path, stem: &str, r: &JuliaApproximation, prov: &Provenance, report: &mut Report) -> Result<()> {
    let mut w = create(out, &format!("{stem}.pgm"), report)?;
    fmt_io::write_julia_pgm(&mut w, r, prov)?;
    w.flush()?;
    let mut w = create(out, &format!("{stem}.txt"), report)?;
    fmt_io::write_raster_header(&mut w, r, prov)?;
    w.flush()?;
    Ok(())
}

pub fn cmd_julia(args: &JuliaArgs, out: &Path, prov: &Provenance) -> Result<Report> {
    let spec = match (&args.poly, &args.family) {
        (Some(p), None) => PolySpec::parse(p)?,
        (None, Some(f)) => PolySpec::parse(f)?,
        _ => return Err(Error::invalid("give exactly one of --poly or --family")),
    };
    let params = FamilyParams::from_args(&args.params)?;
    let grid = raster_grid(&args.raster, "-2:2:-2:2")?;
    let degrees = if spec.is_family() { params.degrees.clone() } else { vec![0] };

    let mut report = Report::default();
    let mut verdicts = Vec::new();
    for &n in &degrees {
        let p = spec.build(n, &params)?;
        let r = filled_julia_raster_with(&p, grid, args.raster.iters, args.raster.mode.into())?;
        let stem = if spec.is_family() { format!("julia_n{n}") } else { "julia".to_string() };
        write_raster(out, &stem, &r, prov, &mut report)?;
        let connected = is_connected(&p, args.raster.iters.max(crate::dynamics::MIN_CONNECTEDNESS_ITER))?;
        let (k, j) = r.counts();
        report.note(format!(
            "n={} degree={} k_cells={k} j_cells={j} connected={connected} (max_iter {})",
            n,
            p.degree(),
            r.max_iter.max(crate::dynamics::MIN_CONNECTEDNESS_ITER)
        ));
        verdicts.push((n, p.degree(), connected));
    }
    let mut w = create(out, "connectivity.csv", &mut report)?;
    prov.write_csv_comments(&mut w)?;
    writeln!(w, "n,degree,connected,max_iter")?;
    for (n, d, c) in verdicts {
        writeln!(w, "{n},{d},{},{}", u8::from(c), args.raster.iters.max(crate::dynamics::MIN_CONNECTEDNESS_ITER))?;
    }
    w.flush()?;
    Ok(report)
}

// ---------------------------------------------------------------- converge

/// Cells of `grid` whose centers lie in the closed unit disk.
pub fn disk_cells(grid: &GridSpec) -> Result<PointSet> {
    let pts = grid.centers().filter(|z| z.norm() <= 1.0).collect();
    Ok(PointSet::new(pts)?.with_spacing(grid.cell_diagonal()))
}

pub fn unit_circle_points() -> Result<PointSet> {
    PointSet::circle(Complex64::new(0.0, 0.0), 1.0, REFERENCE_SAMPLES)
}

pub fn interval_points() -> Result<PointSet> {
    PointSet::segment(Complex64::new(-2.0, 0.0), Complex64::new(2.0, 0.0), REFERENCE_SAMPLES + 1)
}

/// Target, hull and limit for a convergence table.
pub struct Reference {
    pub target_j: PointSet,
    pub hull: ConvexPolygon,
    pub limit: Option<LimitTarget>,
}

fn reference_for(limit: Limit, grid: &GridSpec, f_raster: Option<&JuliaApproximation>) -> Result<Reference> {
    let circle = unit_circle_points()?;
    let interval = interval_points()?;
    let (target_j, hull_src) = match (limit, f_raster) {
        (Limit::Interval, _) => (interval.clone(), interval.clone()),
        (Limit::Kf, Some(r)) => (raster_to_points(r, SetKind::J)?, raster_to_points(r, SetKind::K)?),
        (Limit::Kf, None) => return Err(Error::invalid("--limit kf needs the iterate family and --f")),
        _ => (circle.clone(), circle.clone()),
    };
    let limit = match limit {
        Limit::Circle => Some(LimitTarget { set: circle, against: SetKind::J }),
        Limit::Disk => Some(LimitTarget { set: disk_cells(grid)?, against: SetKind::K }),
        Limit::Interval => Some(LimitTarget { set: interval, against: SetKind::K }),
        Limit::Kf => Some(LimitTarget { set: hull_src.clone(), against: SetKind::K }),
        Limit::None => None,
    };
    Ok(Reference { hull: convex_hull(&hull_src)?, target_j, limit })
}

pub fn cmd_converge(args: &ConvergeArgs, out: &Path, prov: &Provenance) -> Result<Report> {
    let params = FamilyParams::from_args(&args.params)?;
    let (spec, default_grid, default_limit) = match args.family {
        ConvergeFamily::Multibrot => (PolySpec::Multibrot, "-1.5:1.5:-1.5:1.5", Limit::Disk),
        ConvergeFamily::Cheb => (PolySpec::Cheb, "-2.8:2.8:-2.8:2.8", Limit::Interval),
        ConvergeFamily::Iterate => (PolySpec::Iterate, "-2.5:2.5:-2.5:2.5", Limit::Kf),
        ConvergeFamily::Constant => {
            let p = args.poly.as_deref().ok_or_else(|| Error::invalid("the constant family needs --poly"))?;
            (PolySpec::Coefficients(parse_coefficients(p)?), "-1.5:1.5:-1.5:1.5", Limit::Disk)
        }
    };
    let grid = raster_grid(&args.raster, default_grid)?;
    let limit = args.limit.unwrap_or(default_limit);
    let f_raster = match (&params.f, args.family) {
        (Some(f), ConvergeFamily::Iterate) => {
            Some(filled_julia_raster_with(f, grid, args.raster.iters, args.raster.mode.into())?)
        }
        _ => None,
    };
    let reference = reference_for(limit, &grid, f_raster.as_ref())?;

    let mut report = Report::default();
    let mut approximations = Vec::new();
    for &n in &params.degrees {
        let p = spec.build(n, &params)?;
        let r = filled_julia_raster_with(&p, grid, args.raster.iters, args.raster.mode.into())?;
        if args.rasters {
            write_raster(out, &format!("julia_n{n}"), &r, prov, &mut report)?;
        }
        approximations.push((n, r));
    }
    let table = convergence_table(&reference.target_j, &reference.hull, &approximations, reference.limit.as_ref())?;
    write_table(out, &table, prov, &mut report)?;
    Ok(report)
}

fn write_table(out: &Path, table: &ConvergenceTable, prov: &Provenance, report: &mut Report) -> Result<()> {
    let mut w = create(out, "table.csv", report)?;
    fmt_io::write_table_csv(&mut w, table, prov)?;
    w.flush()?;
    for row in &table.rows {
        report.note(format!(
            "n={} d_semi_J={:.4} d_semi_K_hull={:.4} d_H_target={}",
            row.n,
            row.d_semi_j,
            row.d_semi_k_hull,
            row.d_h_target.map(|v| format!("{v:.4}")).unwrap_or_else(|| "-".into())
        ));
    }
    Ok(())
}

// ---------------------------------------------------------------- locus

/// Largest violation of the asymptotic diamond `|a| <= 1, |b| <= 2(1-|a|)`
/// among connected cells, as `(excess of |a|, excess of |b|)`.
pub fn diamond_excess(scan: &LocusScan) -> (f64, f64) {
    scan.connected_parameters()
        .fold((0.0, 0.0), |(ea, eb), (a, b)| ((a.abs() - 1.0).max(ea), (b.abs() - 2.0 * (1.0 - a.abs())).max(eb)))
}

/// Largest distance from a connected `c = a + ib` to the closed unit disk.
pub fn disk_excess(scan: &LocusScan) -> f64 {
    scan.connected_parameters().map(|(a, b)| (a.hypot(b) - 1.0).max(0.0)).fold(0.0, f64::max)
}

pub fn cmd_locus(args: &LocusArgs, out: &Path, prov: &Provenance) -> Result<Report> {
    let mut a_grid = parse_param_grid(&args.a)?;
    if args.drop_zero {
        a_grid.retain(|a| a.abs() > 1e-12);
    }
    let b_grid = parse_param_grid(&args.b)?;
    let family = match args.family {
        LocusKind::Cheb => LocusFamily::ScaledChebyshev,
        LocusKind::Multibrot => LocusFamily::Multibrot,
        LocusKind::Iterate => {
            let f = args.f.as_deref().ok_or_else(|| Error::invalid("the iterate family needs --f"))?;
            LocusFamily::AffineIterates { f: parse_coefficients(f)? }
        }
    };
    let scan = locus_scan(&family, args.n, &a_grid, &b_grid, args.iters)?;

    let mut report = Report::default();
    let mut w = create(out, "locus.pgm", &mut report)?;
    fmt_io::write_locus_pgm(&mut w, &scan, prov)?;
    w.flush()?;
    let mut w = create(out, "locus.csv", &mut report)?;
    fmt_io::write_locus_csv(&mut w, &scan, prov)?;
    w.flush()?;

    let mut lines = vec![format!(
        "family {} n {} cells {}x{} max_iter {} fraction_connected {:.6}",
        scan.family,
        scan.n,
        scan.a_values.len(),
        scan.b_values.len(),
        scan.max_iter,
        scan.fraction_connected()
    )];
    match args.family {
        LocusKind::Multibrot => {
            let excess = disk_excess(&scan);
            lines.push(format!("disk_excess {excess:.6} within_slack {}", excess <= args.slack_b));
        }
        _ => {
            let (ea, eb) = diamond_excess(&scan);
            let ok = ea <= args.slack_a && eb <= args.slack_b;
            lines.push(format!("diamond_excess_a {ea:.6} diamond_excess_b {eb:.6} within_slack {ok}"));
        }
    }
    let mut w = create(out, "summary.txt", &mut report)?;
    prov.write_csv_comments(&mut w)?;
    for line in &lines {
        writeln!(w, "{line}")?;
    }
    w.flush()?;
    report.summary.extend(lines);
    Ok(report)
}

// ---------------------------------------------------------------- iterates

pub fn cmd_iterates(args: &IteratesArgs, seed: u64, out: &Path, prov: &Provenance) -> Result<Report> {
    let f = parse_coefficients(&args.f)?;
    let orders = parse_degrees(&args.k)?;
    let counts = parse_degrees(&args.n)?;
    let a = parse_complex(&args.a)?;
    let b = parse_complex(&args.b)?;
    if a.norm() == 0.0 {
        return Err(Error::invalid("a must be nonzero"));
    }
    let d = f.degree();
    let top = *orders.last().expect("non-empty");
    let iterates = orders.iter().map(|&k| iterate_polynomial(&f, k)).collect::<Result<Vec<_>>>()?;
    let max_degree = d.pow(top as u32);

    let mu = max_entropy_measure(&f, args.m, seed, args.burn_in)?;
    let seq = orthonormalize(&mu, max_degree)?;
    let monic = monic_sequence(&seq);

    let mut report = Report::default();
    let mut w = create(out, "iterates.csv", &mut report)?;
    prov.write_csv_comments(&mut w)?;
    writeln!(w, "k,degree,coefficient,monic_re,monic_im,iterate_re,iterate_im,abs_diff")?;
    for (k, fk) in orders.iter().zip(&iterates) {
        let pk = &monic[fk.degree()];
        for (j, (x, y)) in pk.coeffs().iter().zip(fk.coeffs()).enumerate() {
            writeln!(
                w,
                "{k},{},{j},{},{},{},{},{}",
                fk.degree(),
                fmt_io::fmt_real(x.re),
                fmt_io::fmt_real(x.im),
                fmt_io::fmt_real(y.re),
                fmt_io::fmt_real(y.im),
                fmt_io::fmt_real((x - y).norm())
            )?;
        }
        report.note(format!("k={k}: max |P_{} - f^{k}| = {:.4e}", fk.degree(), pk.max_coeff_distance(fk)));
    }
    w.flush()?;

    let grid = raster_grid(&args.raster, "-2.5:2.5:-2.5:2.5")?;
    let f_raster = filled_julia_raster_with(&f, grid, args.raster.iters, args.raster.mode.into())?;
    let reference = reference_for(Limit::Kf, &grid, Some(&f_raster))?;
    let mut approximations = Vec::new();
    for &n in &counts {
        let p = iterate_polynomial(&f, n)?.affine_image(a, b)?;
        approximations.push((n, filled_julia_raster_with(&p, grid, args.raster.iters, args.raster.mode.into())?));
    }
    let table = convergence_table(&reference.target_j, &reference.hull, &approximations, reference.limit.as_ref())?;
    write_table(out, &table, prov, &mut report)?;
    Ok(report)
}

// ---------------------------------------------------------------- greengap

pub fn cmd_greengap(args: &GreenGapArgs, out: &Path, prov: &Provenance) -> Result<Report> {
    let degrees = parse_degrees(&args.n)?;
    let c = parse_complex(&args.c)?;
    let grid = parse_grid(&args.grid, args.res)?;
    let mut report = Report::default();
    let mut rows = Vec::new();
    for &n in &degrees {
        let q = match args.family {
            GreenFamily::Monomial => Polynomial::monomial(n),
            GreenFamily::Multibrot => Polynomial::monomial(n).affine_image(Complex64::new(1.0, 0.0), c)?,
            GreenFamily::Cheb => chebyshev_closed_form(n)?,
        };
        let gap = green_gap(&q, n, &grid, args.depth)?;
        report.note(format!("n={n} gap={gap:.6e} n*gap={:.6e}", n as f64 * gap));
        rows.push((n, gap));
    }
    let mut w = create(out, "greengap.csv", &mut report)?;
    prov.write_csv_comments(&mut w)?;
    writeln!(w, "n,gap,n_times_gap")?;
    for (n, gap) in rows {
        writeln!(w, "{n},{},{}", fmt_io::fmt_real(gap), fmt_io::fmt_real(n as f64 * gap))?;
    }
    w.flush()?;
    Ok(report)
}
