//! Argument parsing and command dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use vdistal_core::bounds::{bound_exponents, bound_value, BoundParams};
use vdistal_core::distal::{verify_ushd, BallFamily, CellDecomposition};
use vdistal_core::field::{FieldContext, Place, PolyText};
use vdistal_core::incidence::{
    count_incidences, count_point_line_fast, elekes_grid, elekes_size, exponent_sweep, Relation,
};
use vdistal_core::qf1::{formula_to_balls, formula_to_cheese, parse, parse_template};

use crate::error::CliError;
use crate::experiments::{self, bound_text, Deadline, GROWTH_HEADER};
use crate::gen;
use crate::json::{self as js, SCHEMA};

#[derive(Debug, Parser, Serialize)]
#[command(name = "vdistal", version, about = "Balls, Swiss cheeses, distal cells and incidence bounds over valued fields")]
pub struct Cli {
    /// Field and place: ff:<p>:t, ff:<p>:inf, ff:<p>:<irreducible poly in t>, or q:<p>.
    #[arg(long, global = true, default_value = "ff:2:t")]
    pub ctx: String,
    /// Seed of the run's single random stream.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the result to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Abort with exit status 4 once this many milliseconds have elapsed.
    #[arg(long, global = true)]
    pub budget_ms: Option<u64>,
    /// Report failures as a JSON object on standard error.
    #[arg(long, global = true)]
    pub json_errors: bool,
    /// Largest grid (number of points) an incidence command may build.
    #[arg(long, global = true, default_value_t = 1 << 20)]
    pub max_points: u64,
    /// Largest ball family or parameter set a command may process.
    #[arg(long, global = true, default_value_t = 4096)]
    pub max_family: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Swiss cheese normal forms.
    #[command(subcommand)]
    Cheese(CheeseCmd),
    /// One-variable formulas.
    #[command(subcommand)]
    Qf1(Qf1Cmd),
    /// Distal cell decompositions.
    #[command(subcommand)]
    Distal(DistalCmd),
    /// Incidence counting.
    #[command(subcommand)]
    Incidence(IncidenceCmd),
    /// Incidence-bound exponents.
    #[command(subcommand)]
    Bounds(BoundsCmd),
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheeseCmd {
    /// Print the canonical Swiss cheese of a formula.
    Normalize(FormulaArg),
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Qf1Cmd {
    /// Compile a formula to balls and print its Swiss cheese.
    Compile(FormulaArg),
}

#[derive(Debug, Args, Serialize)]
pub struct FormulaArg {
    #[arg(long)]
    pub formula: String,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistalCmd {
    /// Cells of the join closure of a ball family.
    Cells {
        /// JSON array of balls, or @file.
        #[arg(long)]
        balls: String,
    },
    /// Check that no cell is cut by any instance of a parameterized formula.
    VerifyUshd {
        #[arg(long)]
        phi: String,
        /// JSON array of parameter tuples, or @file.
        #[arg(long)]
        params: String,
        /// Number of random sample points checked against their cells.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Cell counts of random families of the given sizes, as CSV.
    Growth {
        #[arg(long, value_delimiter = ',', default_value = "2,4,8,16")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        trials: usize,
    },
}

#[derive(Debug, Args, Serialize)]
pub struct BoundArgs {
    #[arg(long, default_value_t = 2)]
    pub d: u64,
    #[arg(long, default_value_t = 2)]
    pub s: u64,
    /// Cell exponent; defaults to 4(q+1).
    #[arg(long)]
    pub t: Option<String>,
    /// Constant C.
    #[arg(long, default_value = "1")]
    pub c: String,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IncidenceCmd {
    /// Count incidences between two files of tuples.
    Count {
        /// `point-line`, or a formula in x whose parameters index the lines.
        #[arg(long)]
        relation: String,
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        lines: PathBuf,
        #[command(flatten)]
        bound: BoundArgs,
        #[arg(long, default_value_t = 6)]
        digits: u32,
    },
    /// Incidences of the Elekes grid.
    Elekes {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        m: u32,
    },
    /// Elekes grids for a range of m, as CSV.
    Sweep {
        #[arg(long)]
        p: u32,
        /// Inclusive range `a..b`, or a single value.
        #[arg(long)]
        m: String,
        #[command(flatten)]
        bound: BoundArgs,
        #[arg(long, default_value_t = 6)]
        digits: u32,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundsCmd {
    /// Exponents and, optionally, the bound at given set sizes.
    Compute {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        t: String,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 2)]
        s: u64,
        #[arg(long, default_value = "1")]
        c: String,
        #[arg(long, requires = "b")]
        a: Option<u64>,
        #[arg(long, requires = "a")]
        b: Option<u64>,
        #[arg(long, default_value_t = 6)]
        digits: u32,
    },
}

/// The run configuration embedded in every output.
fn config(cli: &Cli) -> Value {
    json!({
        "ctx": cli.ctx,
        "context": FieldContext::from_spec(&cli.ctx).ok().map(|k| context(&k)),
        "seed": cli.seed,
        "budget_ms": cli.budget_ms,
        "max_points": cli.max_points,
        "max_family": cli.max_family,
        "out": cli.out,
        "format": match cli.command {
            Command::Distal(DistalCmd::Growth { .. }) | Command::Incidence(IncidenceCmd::Sweep { .. }) => "csv",
            _ => "json",
        },
        "command": cli.command,
    })
}

fn context(k: &FieldContext) -> Value {
    let (backend, place, s) = match k.place() {
        Place::Finite(s) => ("function-field", "finite", Some(PolyText(s).to_string())),
        Place::Infinite => ("function-field", "infinite", None),
        Place::PAdic => ("rationals", "p-adic", None),
    };
    json!({ "spec": k.spec(), "backend": backend, "place": place, "p": k.p(), "s": s, "q": k.q() })
}

fn rational(s: &str) -> Result<BigRational, CliError> {
    s.trim().parse::<BigRational>().map_err(|e| CliError::Parse(format!("bad rational {s:?}: {e}")))
}

fn read_arg(text: &str) -> Result<String, CliError> {
    match text.strip_prefix('@') {
        Some(path) => read(Path::new(path)),
        None => Ok(text.to_string()),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn parse_json(text: &str) -> Result<Value, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse(format!("bad JSON: {e}")))
}

fn tuples(ctx: &FieldContext, path: &Path) -> Result<Vec<Vec<vdistal_core::FieldElement>>, CliError> {
    read(path)?
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.split(',').map(|e| js::element(ctx, e.trim())).collect())
        .collect()
}

fn m_range(text: &str) -> Result<Vec<u32>, CliError> {
    let bad = || CliError::Parse(format!("bad range {text:?}; expected a..b or a single integer"));
    let num = |s: &str| s.trim().parse::<u32>().map_err(|_| bad());
    match text.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            Ok((num(a)?..=num(b)?).collect())
        }
        None => Ok(vec![num(text)?]),
    }
}

fn bound_params(q: u64, args: &BoundArgs) -> Result<BoundParams, CliError> {
    let t = match &args.t {
        Some(t) => rational(t)?,
        None => BigRational::from_integer(BigInt::from(4 * (q + 1))),
    };
    Ok(BoundParams::new(args.d, args.s, t, q, rational(&args.c)?)?)
}

fn bound_json(b: &vdistal_core::bounds::BoundValue, digits: u32) -> Value {
    json!({
        "value": experiments::rational_text(&b.value),
        "exact": b.exact,
        "decimal_upper": bound_text(b, digits),
    })
}

enum Output {
    Json(Value),
    Csv(String),
}

fn csv_preamble(cfg: &Value) -> String {
    format!("# schema: {SCHEMA}\n# config: {cfg}\n")
}

fn execute(cli: &Cli) -> Result<(Output, Option<CliError>), CliError> {
    let deadline = Deadline::new(cli.budget_ms);
    let cfg = config(cli);
    let ctx = || FieldContext::from_spec(&cli.ctx).map_err(CliError::from);
    let doc = |fields: Vec<(&str, Value)>| Output::Json(js::document(&cfg, fields));
    let ok = |o: Output| Ok((o, None));

    match &cli.command {
        Command::Cheese(CheeseCmd::Normalize(FormulaArg { formula }))
        | Command::Qf1(Qf1Cmd::Compile(FormulaArg { formula })) => {
            let ctx = ctx()?;
            let f = parse(&ctx, formula)?;
            let s = formula_to_cheese(&ctx, &f)?;
            let c = s.complexity();
            let mut fields = vec![
                ("formula", json!(f.to_string())),
                ("cheeses", js::cheese(&s)),
                ("complexity", json!({ "rounds": c.rounds, "max_holes": c.max_holes })),
            ];
            if matches!(cli.command, Command::Qf1(_)) {
                fields.push(("ball_atoms", json!(formula_to_balls(&ctx, &f)?.atom_count())));
            }
            ok(doc(fields))
        }

        Command::Distal(DistalCmd::Cells { balls }) => {
            let ctx = ctx()?;
            let v = parse_json(&read_arg(balls)?)?;
            let list = v.as_array().ok_or_else(|| CliError::Parse("--balls must be a JSON array".into()))?;
            if list.len() > cli.max_family {
                return Err(CliError::Budget(format!("{} balls exceed --max-family {}", list.len(), cli.max_family)));
            }
            let fam = BallFamily::new(list.iter().map(|b| js::parse_ball(&ctx, b)).collect::<Result<Vec<_>, _>>()?);
            let dec = CellDecomposition::new(&ctx, fam);
            ok(doc(vec![
                ("family", json!(dec.family().balls().iter().map(js::ball).collect::<Vec<_>>())),
                ("closure_size", json!(dec.closure().len())),
                ("cell_count", json!(dec.cells().len())),
                ("max_holes", json!(dec.max_holes())),
                ("q", json!(ctx.q())),
                ("cells", json!(dec.cells().iter().map(js::cell).collect::<Vec<_>>())),
            ]))
        }

        Command::Distal(DistalCmd::VerifyUshd { phi, params, samples }) => {
            let ctx = ctx()?;
            let tpl = parse_template(phi)?;
            let params = js::parse_params(&ctx, &parse_json(&read_arg(params)?)?)?;
            if params.len() > cli.max_family {
                return Err(CliError::Budget(format!("{} parameter tuples exceed --max-family", params.len())));
            }
            let mut rng = gen::rng(cli.seed);
            let pts = gen::sample(&ctx, &mut rng, 3, *samples);
            deadline.check("sampling")?;
            let report = verify_ushd(&ctx, &tpl, &params, &pts)?;
            deadline.check("cut-freeness verification")?;
            let out = doc(vec![
                ("phi", json!(phi)),
                ("params", json!(tpl.params())),
                ("param_count", json!(params.len())),
                ("samples", json!(pts.len())),
                ("report", js::ushd_report(&report)),
            ]);
            let failure = (!report.is_clean()).then(|| {
                CliError::Math(format!(
                    "{} cut cell/parameter pairs and {} sample mismatches",
                    report.cuts.len(),
                    report.sample_mismatches.len()
                ))
            });
            Ok((out, failure))
        }

        Command::Distal(DistalCmd::Growth { sizes, trials }) => {
            let ctx = ctx()?;
            if let Some(n) = sizes.iter().find(|n| **n > cli.max_family) {
                return Err(CliError::Budget(format!("family size {n} exceeds --max-family {}", cli.max_family)));
            }
            let mut rng = gen::rng(cli.seed);
            let rows = experiments::cell_growth(&ctx, &mut rng, sizes, *trials, deadline)?;
            let mut csv = csv_preamble(&cfg);
            csv.push_str(GROWTH_HEADER);
            csv.push('\n');
            for r in rows {
                csv.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    r.size, r.trial, r.family, r.closure, r.cells, r.max_holes, r.quadratic_bound(), ctx.q()
                ));
            }
            ok(Output::Csv(csv))
        }

        Command::Incidence(IncidenceCmd::Count { relation, points, lines, bound, digits }) => {
            let ctx = ctx()?;
            let rel = match relation.as_str() {
                "point-line" | "builtin" => Relation::PointLine,
                text => Relation::Formula(parse_template(text)?),
            };
            let a0 = tuples(&ctx, points)?;
            let b0 = tuples(&ctx, lines)?;
            if a0.len() as u64 > cli.max_points || b0.len() as u64 > cli.max_points {
                return Err(CliError::Budget("input grid exceeds --max-points".into()));
            }
            let i = count_incidences(&ctx, &rel, &a0, &b0)?;
            deadline.check("incidence counting")?;
            let mut fields = vec![
                ("relation", json!(relation)),
                ("points", json!(a0.len())),
                ("lines", json!(b0.len())),
                ("incidences", json!(i)),
            ];
            if let Relation::PointLine = rel {
                let fast = count_point_line_fast(&ctx, &a0, &b0)?;
                if fast != i {
                    return Err(CliError::Math(format!("fast count {fast} disagrees with brute force {i}")));
                }
                fields.push(("fast_incidences", json!(fast)));
            }
            let bp = bound_params(ctx.q(), bound)?;
            let n = a0.len().max(b0.len()) as u64;
            let (r43, r32) = experiments::ratios(i, n, *digits);
            fields.extend([
                ("bound", bound_json(&bound_value(&bp, a0.len() as u64, b0.len() as u64), *digits)),
                ("n", json!(n)),
                ("n_four_thirds", json!(experiments::four_thirds(n, *digits))),
                ("ratio_four_thirds", json!(r43)),
                ("ratio_three_halves", json!(r32)),
            ]);
            ok(doc(fields))
        }

        Command::Incidence(IncidenceCmd::Elekes { p, m }) => {
            let size = elekes_size(*p, *m).unwrap_or(u128::MAX);
            if size > cli.max_points as u128 {
                return Err(CliError::Budget(format!("grid of {size} points exceeds --max-points {}", cli.max_points)));
            }
            let g = elekes_grid(*p, *m)?;
            let fast = count_point_line_fast(&g.ctx, &g.points, &g.lines)?;
            deadline.check("the fast incidence count")?;
            let brute = count_incidences(&g.ctx, &Relation::PointLine, &g.points, &g.lines)?;
            deadline.check("the brute-force incidence count")?;
            let n = num_bigint::BigUint::from(g.points.len());
            let i = num_bigint::BigUint::from(brute);
            let identity = i.pow(3) == n.pow(4);
            if fast != brute || !identity {
                return Err(CliError::Math(format!("Elekes grid p={p}, m={m}: fast {fast}, brute {brute}, N {n}")));
            }
            ok(doc(vec![
                ("p", json!(p)),
                ("m", json!(m)),
                ("points", json!(g.points.len())),
                ("lines", json!(g.lines.len())),
                ("incidences", json!(brute)),
                ("fast_incidences", json!(fast)),
                ("i_cubed_equals_n_fourth", json!(identity)),
            ]))
        }

        Command::Incidence(IncidenceCmd::Sweep { p, m, bound, digits }) => {
            let ms = m_range(m)?;
            let bp = bound_params(*p as u64, bound)?;
            let rows = exponent_sweep(*p, ms, &bp, cli.max_points as u128, *digits)?;
            deadline.check("the exponent sweep")?;
            let mut csv = csv_preamble(&cfg);
            csv.push_str("N,I,I/N^{4/3},I/N^{3/2},bound_value\n");
            for r in rows {
                csv.push_str(&format!(
                    "{},{},{},{},{}\n",
                    r.n,
                    r.incidences,
                    r.ratio_four_thirds,
                    r.ratio_three_halves,
                    bound_text(&r.bound, *digits)
                ));
            }
            ok(Output::Csv(csv))
        }

        Command::Bounds(BoundsCmd::Compute { d, t, q, s, c, a, b, digits }) => {
            let bp = BoundParams::new(*d, *s, rational(t)?, *q, rational(c)?)?;
            let e = bound_exponents(&bp);
            let r = experiments::rational_text;
            let mut fields = vec![
                ("alpha", json!(r(&e.alpha))),
                ("beta", json!(r(&e.beta))),
                ("epsilon", json!(r(&e.epsilon))),
                ("sym", json!(r(&e.sym))),
            ];
            if let (Some(a), Some(b)) = (a, b) {
                fields.push(("bound", bound_json(&bound_value(&bp, *a, *b), *digits)));
            }
            ok(doc(fields))
        }
    }
}

fn render(o: &Output) -> String {
    match o {
        Output::Json(v) => {
            let mut s = serde_json::to_string_pretty(v).expect("serializable");
            s.push('\n');
            s
        }
        Output::Csv(s) => s.clone(),
    }
}

fn report_error(e: &CliError, json_errors: bool, stderr: &mut dyn Write) {
    let _ = if json_errors {
        writeln!(stderr, "{}", e.to_json())
    } else {
        writeln!(stderr, "error: {e}")
    };
}

/// Runs one invocation and returns its exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let json_errors = args.iter().any(|a| a == "--json-errors");
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let err = CliError::Usage(e.to_string().trim_end().to_string());
            if json_errors {
                report_error(&err, true, stderr);
            } else {
                let _ = write!(stderr, "{e}");
            }
            return err.exit_code();
        }
    };
    let result = execute(&cli).and_then(|(out, failure)| {
        let text = render(&out);
        match &cli.out {
            Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
            None => stdout.write_all(text.as_bytes())?,
        }
        failure.map_or(Ok(()), Err)
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            report_error(&e, cli.json_errors, stderr);
            e.exit_code()
        }
    }
}
