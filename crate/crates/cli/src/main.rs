use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use walker_core::closed_moments::{odd_dim_moment, w2_closed, w3_odd, w4_odd};
use walker_core::densities::{cdf, cdf_odd_dim, density, density_odd_dim};
use walker_core::exact_moments::{moment_row, residues_v3};
use walker_core::genfun::{gf_check, GfKind};
use walker_core::montecarlo::{stats_from, CdfSource, KsOutcome, ReferenceCdf, WalkSample, RNG_NAME};
use walker_core::numcore::{fmt_rat, fmt_real, int, parse_rat, precision_digits, rat_to_f64, BigRat, HalfInt};
use walker_core::quadrature::{moment_quad, residue_quad, QuadSpec, TailRule};
use walker_core::specfun::registry;
use walker_core::verify::run_suite;
use walker_core::{Result, WalkError};

#[derive(Parser)]
#[command(name = "walker", version, about = "Moments, densities and distributions of uniform random walks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact even moments W_n(ν;2k) for k = 0 … upto−1.
    Moments {
        #[command(flatten)]
        walk: Walk,
        #[arg(long, default_value_t = 10)]
        upto: u32,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// A single moment W_n(ν;s).
    Moment {
        #[command(flatten)]
        walk: Walk,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        /// Print the exact combination over a constant basis (odd s, three or four steps).
        #[arg(long)]
        closed: bool,
        #[command(flatten)]
        quad: QuadArgs,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Density p_n(ν;x).
    Density(CurveArgs),
    /// Distribution function P_n(ν;x).
    Cdf(CurveArgs),
    /// Residues of W_n(ν;s) at s = −d − 2k for k = 0 … upto−1.
    Residues {
        #[command(flatten)]
        walk: Walk,
        #[arg(long, default_value_t = 8)]
        upto: u32,
        #[command(flatten)]
        quad: QuadArgs,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Registry of named constants.
    Constants {
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Generating function against its truncated moment series.
    Gf {
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 2)]
        dim: u32,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, default_value_t = 40)]
        kmax: u32,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Monte Carlo simulation of final distances.
    Simulate {
        #[arg(long)]
        steps: u32,
        #[arg(long)]
        dim: u32,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Comma-separated moment orders.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "1,2")]
        s: Vec<f64>,
        #[arg(long, value_enum)]
        ks: Option<KsRef>,
    },
    /// Acceptance suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Args, Clone, Copy)]
struct Walk {
    #[arg(long)]
    steps: u32,
    /// Dimension d ≥ 2.
    #[arg(long, default_value_t = 2)]
    dim: u32,
}

impl Walk {
    fn nu(&self) -> Result<HalfInt> {
        HalfInt::from_dim(self.dim)
    }
}

#[derive(Args, Clone, Copy)]
struct QuadArgs {
    /// Derivative boost order.
    #[arg(long)]
    boost: Option<u32>,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, default_value_t = 10_000)]
    max_zones: usize,
}

impl QuadArgs {
    fn spec(&self) -> QuadSpec {
        QuadSpec { boost_k: self.boost, tol: self.tol, max_zones: self.max_zones, tail: TailRule::Contour }
    }
}

#[derive(Args)]
struct CurveArgs {
    #[command(flatten)]
    walk: Walk,
    /// Comma-separated points; rationals such as 3/2 are kept exact where possible.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "grid")]
    x: Vec<String>,
    /// Uniform grid: a b m gives m points from a to b.
    #[arg(long, num_args = 3, value_names = ["A", "B", "M"], allow_hyphen_values = true)]
    grid: Vec<String>,
    #[command(flatten)]
    quad: QuadArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy)]
enum KsRef {
    Closed,
    Quad,
}

struct Table {
    meta: Vec<(&'static str, Value)>,
    columns: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

fn meta(extra: Vec<(&'static str, Value)>) -> Vec<(&'static str, Value)> {
    let mut m = vec![("version", json!(env!("CARGO_PKG_VERSION"))), ("precision", json!(precision_digits()))];
    m.extend(extra);
    m
}

fn meta_object(m: &[(&'static str, Value)]) -> Value {
    Value::Object(m.iter().map(|(k, v)| (k.to_string(), v.clone())).collect())
}

impl Table {
    fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut s = String::new();
                for (k, v) in &self.meta {
                    let v = v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string());
                    s.push_str(&format!("# {k}: {v}\n"));
                }
                s.push_str(&self.columns.join(","));
                s.push('\n');
                for r in &self.rows {
                    s.push_str(&r.join(","));
                    s.push('\n');
                }
                s
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| {
                        let m: Map<String, Value> =
                            self.columns.iter().zip(r).map(|(c, v)| (c.to_string(), json!(v))).collect();
                        Value::Object(m)
                    })
                    .collect();
                let out = json!({"meta": meta_object(&self.meta), "rows": rows});
                format!("{}\n", serde_json::to_string_pretty(&out).expect("serializable"))
            }
        }
    }
}

fn real(x: f64) -> String {
    fmt_real(x, precision_digits())
}

fn walk_meta(w: &Walk) -> Result<Vec<(&'static str, Value)>> {
    Ok(vec![("steps", json!(w.steps)), ("dim", json!(w.dim)), ("nu", json!(w.nu()?.to_string()))])
}

fn moments(walk: Walk, upto: u32) -> Result<Table> {
    let values = if upto == 0 { vec![] } else { moment_row(walk.steps, walk.nu()?, upto - 1)? };
    Ok(Table {
        meta: meta(walk_meta(&walk)?),
        columns: vec!["k", "value"],
        rows: values.iter().enumerate().map(|(k, v)| vec![k.to_string(), fmt_rat(v)]).collect(),
    })
}

fn moment(walk: Walk, s_text: &str, closed: bool, spec: &QuadSpec) -> Result<Table> {
    let nu = walk.nu()?;
    let n = walk.steps;
    let s_rat = parse_rat(s_text)?;
    let s = rat_to_f64(&s_rat);
    let integer = s_rat.is_integer().then(|| s_rat.to_integer().try_into().ok()).flatten();
    let columns = vec!["s", "exact", "value", "method", "est_error"];
    let row = |exact: String, value: f64, method: &str, err: f64| vec![fmt_rat(&s_rat), exact, real(value), method.into(), real(err)];
    let r = match integer {
        Some(k) if k >= 0 && k % 2 == 0 => {
            let v = moment_row(n, nu, (k / 2) as u32)?.pop().expect("nonempty");
            row(fmt_rat(&v), rat_to_f64(&v), "exact-even", 0.0)
        }
        Some(k) if closed && k % 2 != 0 && (n == 3 || n == 4) && nu.is_integer() => {
            let m = nu.as_integer().expect("integer");
            let c = if n == 3 { w3_odd(m, k)? } else { w4_odd(m, k)? };
            row(c.to_string(), c.value(), "constant-combination", 0.0)
        }
        _ if !nu.is_integer() => {
            let m = odd_dim_moment(n, nu, s)?;
            let e = m.exact.map(|e| e.to_string()).unwrap_or_default();
            row(e, m.value, "piecewise-exact", 0.0)
        }
        _ if n == 2 => row(String::new(), w2_closed(nu, s)?, "gamma-ratio", 0.0),
        _ if closed => {
            return Err(WalkError::Unsupported(format!(
                "no constant-basis form for W_{n}(nu={nu};s={s_text}); closed forms cover odd s with 3 or 4 steps in even dimension"
            )))
        }
        _ => {
            let q = moment_quad(n, nu, s, spec)?;
            row(String::new(), q.value, "quadrature", q.err)
        }
    };
    Ok(Table { meta: meta(walk_meta(&walk)?), columns, rows: vec![r] })
}

enum Point {
    Exact(BigRat),
    Float(f64),
}

impl Point {
    fn parse(s: &str) -> Result<Self> {
        match parse_rat(s) {
            Ok(r) => Ok(Point::Exact(r)),
            Err(_) => s.trim().parse::<f64>().map(Point::Float).map_err(|_| WalkError::Parse(format!("not a number: {s:?}"))),
        }
    }

    fn value(&self) -> f64 {
        match self {
            Point::Exact(r) => rat_to_f64(r),
            Point::Float(x) => *x,
        }
    }

    fn label(&self) -> String {
        match self {
            Point::Exact(r) => fmt_rat(r),
            Point::Float(x) => x.to_string(),
        }
    }
}

fn points(args: &CurveArgs) -> Result<Vec<Point>> {
    if args.grid.is_empty() {
        if args.x.is_empty() {
            return Err(WalkError::Parse("give --x or --grid".into()));
        }
        return args.x.iter().map(|s| Point::parse(s)).collect();
    }
    let a = parse_rat(&args.grid[0])?;
    let b = parse_rat(&args.grid[1])?;
    let m: i64 = args.grid[2].parse().map_err(|_| WalkError::Parse(format!("grid count {:?}", args.grid[2])))?;
    if m < 1 {
        return Err(WalkError::Parse("grid needs at least one point".into()));
    }
    if m == 1 {
        return Ok(vec![Point::Exact(a)]);
    }
    Ok((0..m).map(|i| Point::Exact(&a + (&b - &a) * int(i) / int(m - 1))).collect())
}

fn curve(args: &CurveArgs, cumulative: bool) -> Result<Table> {
    let walk = args.walk;
    let nu = walk.nu()?;
    let n = walk.steps;
    let spec = args.quad.spec();
    let exact = if nu.is_integer() {
        None
    } else {
        let m = nu.twice().div_ceil(2);
        Some(if cumulative { cdf_odd_dim(n, m)? } else { density_odd_dim(n, m)? })
    };
    let pts = points(args)?;
    let rows: Vec<Vec<String>> = pts
        .par_iter()
        .map(|p| -> Result<Vec<String>> {
            let x = p.value();
            if let (Some(f), Point::Exact(r)) = (&exact, p) {
                let top = int(n as i64);
                let v = if *r <= int(0) {
                    int(0)
                } else if *r >= top {
                    if cumulative { int(1) } else { int(0) }
                } else {
                    f.eval_rat(r)?
                };
                return Ok(vec![p.label(), fmt_rat(&v), "piecewise-exact".into(), real(0.0)]);
            }
            let d = if cumulative { cdf(n, nu, x, &spec)? } else { density(n, nu, x, &spec)? };
            Ok(vec![p.label(), real(d.value), d.method.to_string(), real(d.err)])
        })
        .collect::<Result<_>>()?;
    Ok(Table { meta: meta(walk_meta(&walk)?), columns: vec!["x", "value", "method", "est_error"], rows })
}

fn residues(walk: Walk, upto: u32, spec: &QuadSpec) -> Result<Table> {
    let nu = walk.nu()?;
    let mut m = walk_meta(&walk)?;
    if walk.steps == 3 {
        let seq = residues_v3(nu, upto.saturating_sub(1));
        m.push(("pole", json!("s = -d - 2k")));
        let rows = (0..upto as usize)
            .map(|k| vec![k.to_string(), fmt_rat(&seq.values[k]), real(seq.residue(k)), real(0.0)])
            .collect();
        return Ok(Table { meta: meta(m), columns: vec!["k", "v3", "residue", "est_error"], rows });
    }
    let rows = (0..upto)
        .into_par_iter()
        .map(|k| residue_quad(walk.steps, nu, k, spec).map(|r| vec![k.to_string(), String::new(), real(r.value), real(r.err)]))
        .collect::<Result<_>>()?;
    m.push(("pole", json!("s = -d - 2k")));
    Ok(Table { meta: meta(m), columns: vec!["k", "v3", "residue", "est_error"], rows })
}

fn constants() -> Table {
    let rows = registry().into_iter().map(|e| vec![e.name.to_string(), real(e.value), e.definition.to_string()]).collect();
    Table { meta: meta(vec![]), columns: vec!["name", "value", "definition"], rows }
}

fn gf(kind: &str, dim: u32, x: f64, kmax: u32) -> Result<Table> {
    let kind: GfKind = kind.parse()?;
    let nu = HalfInt::from_dim(dim)?;
    let r = gf_check(kind, nu, x, kmax)?;
    let m = vec![("kind", json!(kind.to_string())), ("dim", json!(dim)), ("kmax", json!(kmax))];
    Ok(Table {
        meta: meta(m),
        columns: vec!["x", "closed", "series", "residual", "truncation_bound"],
        rows: vec![vec![x.to_string(), real(r.closed), real(r.series), real(r.residual), real(r.truncation_bound)]],
    })
}

fn simulate(steps: u32, dim: u32, samples: usize, seed: u64, s: &[f64], ks: Option<KsRef>) -> Result<Value> {
    let sample = WalkSample::draw(steps, dim as usize, samples, seed)?;
    let outcome = match ks {
        None => None,
        Some(k) => {
            let src = match k {
                KsRef::Closed => CdfSource::Closed,
                KsRef::Quad => CdfSource::Quad,
            };
            let r = ReferenceCdf::new(steps, dim as usize, src)?;
            Some(KsOutcome::new(sample.ks_statistic(&|x| r.eval(x)), samples))
        }
    };
    let stats = stats_from(&sample, s, outcome.map(|o| o.statistic));
    let mut out = json!({
        "meta": meta_object(&meta(vec![("seed", json!(seed)), ("rng", json!(RNG_NAME))])),
        "stats": stats.to_json(),
    });
    if let Some(o) = outcome {
        out["ks"] = json!({"statistic": o.statistic, "critical": o.critical, "alpha": 0.01, "pass": o.pass});
    }
    Ok(out)
}

fn verify(suite: &str, out: &mut impl Write) -> Result<bool> {
    let results = run_suite(suite)?;
    let _ = writeln!(out, "# version: {}", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(out, "# precision: {}", precision_digits());
    let _ = writeln!(out, "# suite: {suite}");
    let mut all = true;
    for r in &results {
        let _ = writeln!(out, "{r}");
        all &= r.pass;
    }
    let passed = results.iter().filter(|r| r.pass).count();
    let _ = writeln!(out, "{passed}/{} criteria passed", results.len());
    Ok(all)
}

fn error_kind(e: &WalkError) -> &'static str {
    match e {
        WalkError::Domain(_) => "domain",
        WalkError::Pole(_) => "pole",
        WalkError::Unsupported(_) => "unsupported",
        WalkError::NonConvergence { .. } => "non_convergence",
        WalkError::Divergent(_) => "divergent",
        WalkError::Degenerate { .. } => "degenerate",
        WalkError::Unresolved { .. } => "unresolved",
        WalkError::Accuracy { .. } => "accuracy",
        WalkError::Parse(_) => "parse",
        WalkError::UnknownConstant(_) => "unknown_constant",
        WalkError::Invariant(_) => "invariant",
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let mut out = io::stdout().lock();
    let text = match cli.command {
        Command::Moments { walk, upto, format } => moments(walk, upto)?.render(format),
        Command::Moment { walk, s, closed, quad, format } => moment(walk, &s, closed, &quad.spec())?.render(format),
        Command::Density(a) => curve(&a, false)?.render(a.format),
        Command::Cdf(a) => curve(&a, true)?.render(a.format),
        Command::Residues { walk, upto, quad, format } => residues(walk, upto, &quad.spec())?.render(format),
        Command::Constants { format } => constants().render(format),
        Command::Gf { kind, dim, x, kmax, format } => gf(&kind, dim, x, kmax)?.render(format),
        Command::Simulate { steps, dim, samples, seed, s, ks } => {
            format!("{}\n", serde_json::to_string_pretty(&simulate(steps, dim, samples, seed, &s, ks)?).expect("serializable"))
        }
        Command::Verify { suite } => {
            let ok = verify(&suite, &mut out)?;
            return Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE });
        }
    };
    let _ = out.write_all(text.as_bytes());
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            let v = json!({"error": error_kind(&e), "message": e.to_string()});
            eprintln!("{v}");
            ExitCode::from(1)
        }
    }
}
