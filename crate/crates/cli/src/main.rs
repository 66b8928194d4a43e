use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use equiloc::blowup::{
    invert_strict_transform, monoidal_chart_equation, monoidal_transform, quadratic_chart_equation,
    quadratic_transform, ChartDescriptor, ChartKind, Direction,
};
use equiloc::driver::{classify_transform, levi_zariski_resolve, verify_lemma};
use equiloc::locus::{enumerate_smooth_equimultiple, is_equimultiple, normalize_curve, CurveIdeal};
use equiloc::parse::{parse_direction, parse_expression};
use equiloc::series::{X, Y, Z};
use equiloc::surface::WeierstrassSurface;
use equiloc::{Config, Error};
use serde_json::Value;

mod report;

#[derive(Parser)]
#[command(name = "equiloc", version, about = "Equimultiple curves of algebroid surfaces under blowing-up")]
struct Cli {
    /// Truncation degree for power series that do not terminate.
    #[arg(long, global = true, default_value_t = 24)]
    precision: u32,
    /// Largest degree of h searched for in curves (Z, Y - h(X)).
    #[arg(long, global = true, default_value_t = 8)]
    degree_bound: u32,
    /// Depth cap for resolution trees.
    #[arg(long, global = true, default_value_t = 12)]
    max_depth: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Multiplicity, Newton set, tangent cone and normalization history.
    Analyze(Surface),
    /// Quadratic or monoidal transform in one chart.
    Blowup(Charted),
    /// Smooth equimultiple curves.
    Curves(Surface),
    /// Singular curve H whose strict transform is X1 + G(Y1).
    Invert {
        /// Series in Y of order at least 2.
        #[arg(long, allow_hyphen_values = true)]
        g: String,
    },
    /// Compare the equimultiple locus before and after a transform.
    Classify(Charted),
    /// Resolution tree following the Levi-Zariski strategy.
    Resolve(Surface),
    /// Check that monoidal transforms drop the multiplicity when the cone is not a plane.
    Lemma(Surface),
}

#[derive(Args)]
struct Surface {
    /// Polynomial in X, Y, Z, for example "Z^2 - X^2*Y".
    #[arg(allow_hyphen_values = true)]
    expr: String,
}

#[derive(Args)]
struct Charted {
    #[arg(allow_hyphen_values = true)]
    expr: String,
    #[arg(long, value_enum)]
    kind: Kind,
    /// Comma separated rationals, like 1,0,0 or 1,1/2,0.
    #[arg(long, allow_hyphen_values = true)]
    direction: String,
    /// Generator G of a monoidal center (Z, G); defaults to X.
    #[arg(long, allow_hyphen_values = true)]
    center: Option<String>,
    /// Chart variable; the first nonzero coordinate by default.
    #[arg(long, value_enum)]
    privileged: Option<Var>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Quadratic,
    Monoidal,
}

#[derive(Clone, Copy, ValueEnum)]
enum Var {
    X,
    Y,
    Z,
}

pub(crate) enum Failure {
    Core(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<Output, Failure>;

pub(crate) enum Output {
    Json(Value),
    Text(String),
}

fn surface_of(expr: &str, cfg: &Config) -> Result<WeierstrassSurface, Failure> {
    let f = parse_expression(expr).map_err(Error::from)?;
    Ok(WeierstrassSurface::from_equation(&f, cfg)?)
}

fn direction_of(args: &Charted) -> Result<Direction, Failure> {
    let coords = parse_direction(&args.direction).map_err(Error::from)?;
    Ok(match args.privileged {
        None => Direction::new(coords)?,
        Some(v) => Direction::with_privileged(
            coords,
            match v {
                Var::X => X,
                Var::Y => Y,
                Var::Z => Z,
            },
        )?,
    })
}

fn center_of(args: &Charted) -> Result<Option<CurveIdeal>, Failure> {
    match (&args.center, args.kind) {
        (None, _) => Ok(None),
        (Some(_), Kind::Quadratic) => Err(Failure::Usage("--center only applies to monoidal transforms".into())),
        (Some(text), Kind::Monoidal) => Ok(Some(CurveIdeal::new(parse_expression(text).map_err(Error::from)?)?)),
    }
}

fn chart_kind(k: Kind) -> ChartKind {
    match k {
        Kind::Quadratic => ChartKind::Quadratic,
        Kind::Monoidal => ChartKind::Monoidal,
    }
}

fn run(cli: &Cli) -> Outcome {
    let cfg = Config {
        precision: cli.precision,
        degree_bound: cli.degree_bound,
        max_depth: cli.max_depth,
        ..Config::default()
    };
    let text = cli.format == Format::Text;
    if cli.format == Format::Dot && !matches!(cli.command, Command::Resolve(_)) {
        return Err(Failure::Usage("--format dot is only available for resolve".into()));
    }
    let out = |json: Value, plain: String| if text { Output::Text(plain) } else { Output::Json(json) };
    Ok(match &cli.command {
        Command::Analyze(a) => {
            let s = surface_of(&a.expr, &cfg)?;
            out(report::analyze(&a.expr, &s, &cfg), report::analyze_text(&s))
        }
        Command::Blowup(b) => {
            let s = surface_of(&b.expr, &cfg)?;
            let d = direction_of(b)?;
            let (base, center) = match center_of(b)? {
                Some(c) => {
                    if !is_equimultiple(&s, &c, &cfg).accepted() {
                        return Err(Error::NotPermitted.into());
                    }
                    (normalize_curve(&s, &c, &cfg)?.0, Some(c.display(s.level())))
                }
                None => (s, None),
            };
            let (raw, t) = match b.kind {
                Kind::Quadratic => (quadratic_chart_equation(&base.equation(), &d)?, quadratic_transform(&base, &d, &cfg)?),
                Kind::Monoidal => (monoidal_chart_equation(&base, &d)?, monoidal_transform(&base, &d, &cfg)?),
            };
            let chart = ChartDescriptor::new(chart_kind(b.kind), &d, center);
            out(report::blowup(&chart, &base, &raw, &t, &cfg), report::blowup_text(&chart, &raw, &t))
        }
        Command::Curves(a) => {
            let s = surface_of(&a.expr, &cfg)?;
            let r = enumerate_smooth_equimultiple(&s, &cfg);
            out(report::locus(&r, s.level()), report::locus_text(&r, s.level()))
        }
        Command::Invert { g } => {
            let g = parse_expression(g).map_err(Error::from)?;
            let inv = invert_strict_transform(&g, cfg.precision)?;
            out(report::inverse(&g, &inv), report::inverse_text(&inv))
        }
        Command::Classify(b) => {
            let s = surface_of(&b.expr, &cfg)?;
            let d = direction_of(b)?;
            let center = center_of(b)?;
            let r = classify_transform(&s, chart_kind(b.kind), &d, center.as_ref(), &cfg)?;
            out(report::theorem(&r, &cfg), report::theorem_text(&r))
        }
        Command::Resolve(a) => {
            let s = surface_of(&a.expr, &cfg)?;
            let tree = levi_zariski_resolve(&s, &cfg);
            match cli.format {
                Format::Dot => Output::Text(tree.to_dot()),
                Format::Text => Output::Text(tree.to_text()),
                Format::Json => Output::Json(report::resolve(&a.expr, &tree, &cfg)),
            }
        }
        Command::Lemma(a) => {
            let s = surface_of(&a.expr, &cfg)?;
            let r = verify_lemma(&s, &cfg)?;
            out(report::lemma(&r, &cfg), report::lemma_text(&r))
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("{}", report::error(&Failure::Usage(e.to_string().trim_end().to_string())));
            return ExitCode::from(2);
        }
    };
    let mut stdout = std::io::stdout().lock();
    match run(&cli) {
        Ok(out) => {
            let body = match out {
                Output::Json(v) => serde_json::to_string_pretty(&v).expect("json value") + "\n",
                Output::Text(t) if t.ends_with('\n') => t,
                Output::Text(t) => t + "\n",
            };
            // a closed pipe downstream is not our failure
            let _ = stdout.write_all(body.as_bytes()).and_then(|_| stdout.flush());
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("{}", report::error(&f));
            ExitCode::from(match f {
                Failure::Usage(_) => 2,
                Failure::Core(_) => 1,
            })
        }
    }
}
