mod config;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use manin_core::asymptotics::{fit_growth, saturation_report, SaturationInput, Stratum, Subvariety};
use manin_core::builtins::{Builtin, BUNDLE_EQUATION};
use manin_core::bundle::{bundle_count, fiber_series};
use manin_core::curve::{certificate, HyperellipticCurve};
use manin_core::density::{density_decay_scan, padic_density};
use manin_core::enumerate::{count_series, subspace_series, EnumStrategy};
use manin_core::fano::{binom_scan, contains_plane_general, general_nonempty, induction_scan};
use manin_core::model::{
    format_rational, parse_lambda, parse_rational, parse_variety, CompleteIntersection, HeightSpec, LinearSubspace,
    ProjPoint,
};
use manin_core::series::{CountSeries, GeometricGrid};
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use config::*;
use report::{render, Body, Report};

/// Failure classes, mapped to exit codes 2 and 3.
enum Failure {
    Validation(String),
    Runtime(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Validation(_) => 2,
            Failure::Runtime(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Validation(m) | Failure::Runtime(m) => m,
        }
    }
}

impl From<manin_core::Error> for Failure {
    fn from(e: manin_core::Error) -> Self {
        use manin_core::Error as E;
        match e {
            E::Io(_) | E::Overflow(_) | E::FitError(_) | E::BadReduction(_) | E::InconsistentCounts(_) => {
                Failure::Runtime(e.to_string())
            }
            _ => Failure::Validation(e.to_string()),
        }
    }
}

fn invalid(field: &str, reason: impl std::fmt::Display) -> Failure {
    Failure::Validation(format!("invalid parameter `{field}`: {reason}"))
}

type Res<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: Cli) -> Res<()> {
    let command = match cli.command {
        Command::Replay(args) => {
            let text = std::fs::read_to_string(&args.report)
                .map_err(|e| Failure::Runtime(format!("reading {}: {e}", args.report.display())))?;
            report::extract_config(&text).map_err(|e| invalid("report", e))?
        }
        other => resolve(other)?,
    };
    let (report, format) = execute(&command)?;
    let text = render(&command, &report, format).map_err(Failure::Runtime)?;
    match cli.out {
        Some(path) => std::fs::write(&path, text).map_err(|e| Failure::Runtime(format!("writing {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Inlines file inputs so the embedded config is self-contained.
fn resolve(mut command: Command) -> Res<Command> {
    let read = |path: &std::path::Path, field: &str| {
        std::fs::read_to_string(path).map_err(|e| invalid(field, format!("{}: {e}", path.display())))
    };
    let input = match &mut command {
        Command::Count(a) => Some(&mut a.input),
        Command::Fit(a) => {
            if let Some(p) = &a.series {
                a.series_text = Some(read(p, "series")?);
            }
            Some(&mut a.input)
        }
        Command::Saturation(a) => Some(&mut a.input),
        Command::Density(a) => Some(&mut a.input),
        Command::Curve(a) => Some(&mut a.input),
        Command::Bundle(a) => Some(&mut a.input),
        Command::Fano(_) | Command::Replay(_) => None,
    };
    if let Some(input) = input {
        if let Some(p) = &input.variety {
            input.variety_text = Some(read(p, "variety")?);
        }
    }
    Ok(command)
}

fn execute(command: &Command) -> Res<(Report, Format)> {
    match command {
        Command::Count(a) => Ok((count(a)?, a.output.format.unwrap_or(Format::Csv))),
        Command::Fit(a) => Ok((fit(a)?, a.output.format.unwrap_or(Format::Csv))),
        Command::Saturation(a) => Ok((saturation(a)?, a.output.format.unwrap_or(Format::Csv))),
        Command::Density(a) => Ok((density(a)?, a.output.format.unwrap_or(Format::Csv))),
        Command::Fano(a) => Ok((fano(a)?, a.output.format.unwrap_or(Format::Csv))),
        Command::Curve(a) => Ok((curve(a)?, a.output.format.unwrap_or(Format::Json))),
        Command::Bundle(a) => Ok((bundle(a)?, a.output.format.unwrap_or(Format::Csv))),
        Command::Replay(_) => Err(Failure::Validation("a replayed report cannot itself be a replay".into())),
    }
}

fn builtin(input: &Input) -> Res<Option<Builtin>> {
    input.builtin.as_deref().map(|s| s.parse().map_err(Failure::from)).transpose()
}

fn variety(input: &Input) -> Res<(CompleteIntersection, Option<Builtin>)> {
    if let Some(text) = &input.variety_text {
        return Ok((parse_variety(text)?, None));
    }
    match builtin(input)? {
        Some(b) => Ok((b.variety()?, Some(b))),
        None => Err(invalid("variety", "pass --builtin or --variety")),
    }
}

fn grid(bounds: &Bounds) -> Res<Vec<BigRational>> {
    match (&bounds.b, &bounds.grid) {
        (Some(b), None) => Ok(vec![parse_rational(b).map_err(|e| invalid("B", e))?]),
        (None, Some(g)) => Ok(GeometricGrid::parse(g)?.bounds()),
        _ => Err(invalid("B", "pass exactly one of --B and --grid")),
    }
}

fn height(x: &CompleteIntersection, lambda: &str, exponent: Option<u32>) -> Res<HeightSpec> {
    let lambda = parse_lambda(lambda).map_err(|e| invalid("lambda", e))?;
    let e = match exponent {
        Some(e) => e,
        None => x.anticanonical_exponent()?,
    };
    Ok(HeightSpec::new(e, lambda)?)
}

fn strategy(e: &Enumeration, x: &CompleteIntersection) -> Res<EnumStrategy> {
    let s: EnumStrategy = if e.strategy == "auto" {
        if EnumStrategy::SolveLast.validate(x).is_ok() {
            EnumStrategy::SolveLast
        } else {
            EnumStrategy::Naive
        }
    } else {
        e.strategy.parse().map_err(|e| invalid("strategy", e))?
    };
    match (s, e.workers) {
        (_, 0) => Err(invalid("workers", "must be at least 1")),
        (_, 1) => Ok(s),
        (EnumStrategy::Sharded(..), _) => Err(invalid("workers", "conflicts with an explicit sharded strategy")),
        (_, k) => Ok(EnumStrategy::Sharded(s.base(), k)),
    }
}

fn elapsed(start: Instant, output: &Output) -> Value {
    if output.no_timing {
        Value::Null
    } else {
        json!(start.elapsed().as_millis() as u64)
    }
}

fn count(a: &CountArgs) -> Res<Report> {
    let (x, b) = variety(&a.input)?;
    let h = height(&x, &a.lambda, a.exponent)?;
    let grid = grid(&a.bounds)?;
    let strategy = strategy(&a.enumeration, &x)?;
    let start = Instant::now();
    let series = if a.subspace {
        let l = b.ok_or_else(|| invalid("subspace", "needs a builtin with a distinguished subspace"))?.subspace()?;
        if !l.is_contained_in(&x)? {
            return Err(manin_core::Error::NotContained("subspace".into()).into());
        }
        subspace_series(&l, &h, &grid, None, "L")?
    } else {
        count_series(&x, &h, &grid, strategy, None, "X")?
    };
    let wall = elapsed(start, &a.output);
    let rows = series_rows(&series, |_| vec![json!(lambda_text(&h)), json!(strategy.to_string()), wall.clone()]);
    Ok(Report::table(vec!["B", "count", "region", "lambda", "strategy", "wall_ms"], rows))
}

fn lambda_text(h: &HeightSpec) -> String {
    let l = h.lambda();
    if *l.denom() == 1 {
        l.numer().to_string()
    } else {
        format!("{}/{}", l.numer(), l.denom())
    }
}

fn series_rows(s: &CountSeries, extra: impl Fn(usize) -> Vec<Value>) -> Vec<Vec<Value>> {
    (0..s.len())
        .map(|k| {
            let mut row = vec![json!(format_rational(&s.grid[k])), json!(s.counts[k]), json!(s.region)];
            row.extend(extra(k));
            row
        })
        .collect()
}

fn fit(a: &FitArgs) -> Res<Report> {
    let series = match &a.series_text {
        Some(text) => CountSeries::read_csv(text.as_bytes())?,
        None => {
            let (x, _) = variety(&a.input)?;
            let h = height(&x, &a.lambda, a.exponent)?;
            count_series(&x, &h, &grid(&a.bounds)?, strategy(&a.enumeration, &x)?, None, "X")?
        }
    };
    let f = fit_growth(&series, a.log_power, a.drop_low)?;
    Ok(Report::table(
        vec!["region", "exponent", "log_power", "constant", "residual_rms", "points_used"],
        vec![vec![
            json!(series.region),
            json!(f.exponent),
            json!(f.log_power),
            json!(f.constant),
            json!(f.residual_rms),
            json!(f.grid_used.len()),
        ]],
    ))
}

fn parse_row(text: &str, field: &str) -> Res<Vec<i64>> {
    text.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| invalid(field, format!("`{t}` is not an integer"))))
        .collect()
}

fn saturation(a: &SaturationArgs) -> Res<Report> {
    let (x, b) = variety(&a.input)?;
    let h = height(&x, &a.lambda, a.exponent)?;
    let grid = grid(&a.bounds)?;
    let mut subs = Vec::new();
    for (i, spec) in a.linear.iter().enumerate() {
        let rows = spec.split(';').map(|r| parse_row(r, "linear")).collect::<Res<Vec<_>>>()?;
        subs.push((format!("L{i}"), Subvariety::Linear(LinearSubspace::new(rows)?)));
    }
    if subs.is_empty() {
        if let Some(b) = b {
            subs.push(("L".to_string(), Subvariety::Linear(b.subspace()?)));
        }
    }
    let report = saturation_report(&SaturationInput {
        x: &x,
        subvarieties: &subs,
        excluded: &[],
        height: &h,
        grid: &grid,
        picard_rank: a.picard_rank,
        strategy: strategy(&a.enumeration, &x)?,
        drop_low: a.drop_low,
    })?;
    let mut rows = Vec::new();
    let mut push = |s: &Stratum, shares: Option<&[f64]>| {
        let exponent = s.fit.as_ref().map_or(Value::Null, |f| json!(f.exponent));
        rows.extend(series_rows(&s.series, |k| vec![shares.map_or(json!(1.0), |v| json!(v[k])), exponent.clone()]));
    };
    push(&report.whole, None);
    for (s, sh) in report.subvarieties.iter().zip(&report.shares) {
        push(s, Some(sh));
    }
    push(&report.complement, Some(&report.complement_shares));
    let detail = serde_json::to_value(&report).map_err(|e| Failure::Runtime(e.to_string()))?;
    let mut map = Map::new();
    map.insert("report".into(), detail);
    Ok(Report {
        body: Body::Table { columns: vec!["B", "count", "stratum", "share", "exponent"], rows },
        detail: Some(map),
    })
}

fn density(a: &DensityArgs) -> Res<Report> {
    let (x, _) = variety(&a.input)?;
    if let Some(p) = a.p {
        let d = padic_density(&x, p, a.k)?;
        return Ok(Report::table(
            vec!["p", "k", "value"],
            vec![vec![json!(d.p), json!(d.k), json!(format_rational(&d.value))]],
        ));
    }
    let lambdas = a
        .lambda
        .split(',')
        .map(|t| parse_lambda(t.trim()).map_err(|e| invalid("lambda", e)))
        .collect::<Res<Vec<_>>>()?;
    let estimates = density_decay_scan(&x, &lambdas, a.epsilon, a.samples, a.seed, a.workers)?;
    let rows = estimates
        .iter()
        .map(|d| {
            vec![
                json!(d.lambda.to_string()),
                json!(d.value),
                json!(d.std_error),
                json!(d.samples),
                json!(d.epsilon),
                json!(d.seed),
            ]
        })
        .collect();
    Ok(Report::table(vec!["lambda", "value", "std_error", "samples", "epsilon", "seed"], rows))
}

fn fano(a: &FanoArgs) -> Res<Report> {
    if a.scan_binom {
        let rows = binom_scan(a.max)
            .into_iter()
            .map(|r| vec![json!(r.d), json!(r.r), json!(r.lhs.to_string()), json!(r.rhs.to_string()), json!(r.equal)])
            .collect();
        return Ok(Report::table(vec!["d", "r", "lhs", "rhs", "equal"], rows));
    }
    if a.scan_induction {
        let rows = induction_scan(a.max)
            .into_iter()
            .map(|r| vec![json!(r.s), json!(r.e), json!(r.lhs.to_string()), json!(r.rhs.to_string()), json!(r.holds)])
            .collect();
        return Ok(Report::table(vec!["s", "e", "lhs", "rhs", "holds"], rows));
    }
    let n = a.n.ok_or_else(|| invalid("n", "pass --n with --degrees, or a scan flag"))?;
    let degrees = parse_row(a.degrees.as_deref().ok_or_else(|| invalid("degrees", "missing"))?, "degrees")?;
    if degrees.iter().any(|&d| d <= 0) {
        return Err(invalid("degrees", "must be positive"));
    }
    let degrees: Vec<u64> = degrees.into_iter().map(|d| d as u64).collect();
    let total: u64 = degrees.iter().sum();
    let r = match a.r {
        Some(r) => r,
        None => n.checked_sub(total).filter(|&r| r >= 1).ok_or_else(|| invalid("r", "n - d < 1; pass --r"))?,
    };
    let c = general_nonempty(n, &degrees, r)?;
    let plane = match contains_plane_general(n, &degrees) {
        Ok(class) => serde_json::to_value(class).map_err(|e| Failure::Runtime(e.to_string()))?,
        Err(_) => Value::Null,
    };
    let degrees_text = degrees.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
    Ok(Report::table(
        vec!["n", "degrees", "r", "expected_dim", "slack", "general_nonempty", "plane_class"],
        vec![vec![
            json!(c.n),
            json!(degrees_text),
            json!(c.r),
            json!(c.expected_dim.to_string()),
            json!(c.slack),
            json!(c.general_nonempty),
            plane,
        ]],
    ))
}

fn curve(a: &CurveArgs) -> Res<Report> {
    let c = match (&a.coeffs, builtin(&a.input)?) {
        (Some(text), None) => HyperellipticCurve::new(parse_row(text, "coeffs")?)?,
        (None, Some(b)) => b.curve()?,
        _ => return Err(invalid("coeffs", "pass exactly one of --coeffs and --builtin")),
    };
    let cert = certificate(&c, a.p)?;
    let Value::Object(mut map) = serde_json::to_value(&cert).map_err(|e| Failure::Runtime(e.to_string()))? else {
        unreachable!("certificate serializes to an object");
    };
    map.insert("p".into(), json!(a.p));
    map.insert("curve".into(), json!(c.to_string()));
    Ok(Report { body: Body::Object(map), detail: None })
}

fn bundle(a: &BundleArgs) -> Res<Report> {
    match builtin(&a.input)? {
        None | Some(Builtin::PaperBundle) => {}
        Some(other) => return Err(invalid("builtin", format!("`{other}` is not a bundle; use paper-bundle"))),
    }
    let grid = grid(&a.bounds)?;
    if let Some(f) = &a.fiber {
        let x = ProjPoint::normalize(&parse_row(f, "fiber")?)?;
        let s = fiber_series(&x, &grid)?;
        return Ok(Report::table(vec!["B", "count", "region"], series_rows(&s, |_| vec![])));
    }
    let r = bundle_count(&grid, !a.include_accumulating)?;
    let rows = r
        .rows
        .iter()
        .map(|row| {
            vec![
                json!(format_rational(&row.b)),
                json!(row.total),
                json!(row.on_split_certified),
                json!(row.on_not_split),
                json!(row.on_undetermined),
                json!(row.on_accumulating),
                json!(row.thin_members),
            ]
        })
        .collect();
    let mut detail = Map::new();
    detail.insert("equation".into(), json!(BUNDLE_EQUATION));
    detail.insert("fibers_with_points".into(), json!(r.fibers_with_points));
    detail.insert("split_without_square_discriminant".into(), json!(r.split_without_square_discriminant));
    detail.insert("thin_discriminant_disagreements".into(), json!(r.thin_discriminant_disagreements));
    Ok(Report {
        body: Body::Table {
            columns: vec![
                "B",
                "total",
                "on_split_certified",
                "on_not_split",
                "on_undetermined",
                "on_accumulating",
                "thin_members",
            ],
            rows,
        },
        detail: Some(detail),
    })
}
