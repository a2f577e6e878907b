use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context as _, Result};
use clap::{Parser, Subcommand, ValueEnum};
use qline_core::expr::{parse_expr, parse_poly, parse_scalar, Alphabet, Context};
use qline_core::pointalg::{exceptional_u_form, PointAlgebra};
use qline_core::poisson::{build_example, ExampleParams, LambdaMatrix, PoissonContext};
use qline_core::projcoord::{cross_ratio_table, parse_perm, perm_word, polynomiality_probe, MuPair, ProjAlgebra};
use qline_core::report::{Outcome, Report};
use qline_core::suites::{lambda_from_json, lambda_preset, point_dimension, run_suite, SuiteConfig, DEFAULT_SEED, SUITES};
use qline_core::uqaction::{act, ActionTable, UqOp};
use qline_core::NCPoly;

#[derive(Parser)]
#[command(name = "qline", version, about = "Exact checks for quantum point algebras of the projective line")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Letter alphabet for `--expr` arguments.
    #[arg(long, value_enum, global = true)]
    algebra: Option<AlgebraKind>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgebraKind {
    /// Point letters v, u, w, w*, t.
    Point,
    /// Homogeneous coordinates x, y, y^-1.
    Coordinates,
}

#[derive(Subcommand)]
enum Cmd {
    /// Named verification suites.
    Suite {
        #[command(subcommand)]
        cmd: SuiteCmd,
    },
    /// Pre-Poisson brackets.
    Poisson {
        #[command(subcommand)]
        cmd: PoissonCmd,
    },
    /// Quantum group action.
    Uq {
        #[command(subcommand)]
        cmd: UqCmd,
    },
    /// Quadratic point algebras.
    Pointalg {
        #[command(subcommand)]
        cmd: PointCmd,
    },
    /// Pair invariants and cross ratios.
    Cross {
        #[command(subcommand)]
        cmd: CrossCmd,
    },
    /// Homogeneous coordinate algebra.
    Bmu {
        #[command(subcommand)]
        cmd: BmuCmd,
    },
}

#[derive(Subcommand)]
enum SuiteCmd {
    /// Print the suite names.
    List,
    Run {
        name: String,
        /// Preset name or JSON file.
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long, default_value_t = 3)]
        n: u32,
        #[arg(long)]
        degree: Option<usize>,
    },
}

#[derive(Subcommand)]
enum PoissonCmd {
    /// Jacobi defect and jacobiator for every triple.
    Verify {
        #[arg(long, conflicts_with = "lambda")]
        example: Option<u32>,
        #[arg(long, default_value_t = 4)]
        points: u32,
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long, default_value_t = 3)]
        n: u32,
    },
}

#[derive(Subcommand)]
enum UqCmd {
    Act {
        #[arg(long)]
        op: String,
        #[arg(long)]
        expr: String,
    },
    /// Checks E(p) = 0, F(p) = 0, K(p) = p.
    Invariant {
        #[arg(long)]
        expr: String,
    },
}

#[derive(Subcommand)]
enum PointCmd {
    /// Normal form of an expression of degree at most 3.
    Nf {
        #[arg(long)]
        expr: String,
        #[arg(long, default_value = "ones")]
        lambda: String,
        #[arg(long)]
        n: Option<u32>,
    },
    Dim {
        #[arg(long, default_value_t = 3)]
        n: u32,
        #[arg(long, default_value_t = 3)]
        degree: usize,
        #[arg(long, default_value = "ones")]
        lambda: String,
    },
    /// Three-index cubic combination against its closed form.
    #[command(name = "lemma3")]
    TripleCombination {
        #[arg(long)]
        lambda: Option<String>,
    },
    ThreePoint {
        #[arg(long)]
        exceptional: bool,
        #[arg(long)]
        lambda: Option<String>,
    },
}

#[derive(Subcommand)]
enum CrossCmd {
    Verify {
        #[arg(long, value_parser = ["lemma12", "prop11", "table", "distance"])]
        suite: String,
    },
    /// Cross ratio of a rearrangement of (1,2,3,4) in terms of C = C_1234.
    Value {
        #[arg(long, default_value = "ijkl")]
        perm: String,
    },
}

#[derive(Subcommand)]
enum BmuCmd {
    Nf {
        #[arg(long)]
        expr: String,
        #[arg(long)]
        mu1: Option<String>,
        #[arg(long)]
        mu2: Option<String>,
    },
    Probe {
        #[arg(long)]
        mu1: String,
        #[arg(long)]
        mu2: String,
        #[arg(long, default_value_t = 3)]
        degree: usize,
    },
}

fn load_lambda(source: &str, n: u32) -> Result<LambdaMatrix> {
    if Path::new(source).is_file() {
        let text = std::fs::read_to_string(source).with_context(|| format!("reading {source}"))?;
        return Ok(lambda_from_json(&text)?);
    }
    Ok(lambda_preset(source, n)?)
}

fn alphabet(cli: &Cli, default: AlgebraKind) -> Alphabet {
    match cli.algebra.unwrap_or(default) {
        AlgebraKind::Point => Alphabet::Point,
        AlgebraKind::Coordinates => Alphabet::Coordinates,
    }
}

fn labels_of(p: &NCPoly) -> Vec<u32> {
    let mut l: Vec<u32> = p.terms().keys().flat_map(|w| w.letters().iter().map(|g| g.index)).collect();
    l.sort_unstable();
    l.dedup();
    l
}

enum Output {
    Report(Report),
    Value(Vec<(&'static str, String)>),
}

fn emit(out: Output, format: Format) -> ExitCode {
    match out {
        Output::Report(r) => {
            match format {
                Format::Text => print!("{}", r.to_text()),
                Format::Json => println!("{}", r.to_json()),
            }
            if r.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Output::Value(fields) => {
            match format {
                Format::Text => {
                    for (k, v) in fields {
                        println!("{k}: {v}");
                    }
                }
                Format::Json => {
                    let m: serde_json::Map<String, serde_json::Value> =
                        fields.into_iter().map(|(k, v)| (k.to_string(), v.into())).collect();
                    println!("{}", serde_json::to_string_pretty(&m).expect("json"));
                }
            }
            ExitCode::SUCCESS
        }
    }
}

fn run(cli: &Cli) -> Result<Output> {
    let seed = cli.seed;
    Ok(match &cli.cmd {
        Cmd::Suite { cmd: SuiteCmd::List } => Output::Value(vec![("suites", SUITES.join(" "))]),
        Cmd::Suite { cmd: SuiteCmd::Run { name, lambda, n, degree } } => {
            let mut cfg = SuiteConfig::new(seed);
            cfg.lambda = lambda.as_deref().map(|l| load_lambda(l, *n)).transpose()?;
            cfg.degree = *degree;
            Output::Report(run_suite(name, &cfg)?)
        }
        Cmd::Poisson { cmd: PoissonCmd::Verify { example, points, lambda, n } } => {
            let (name, ctx) = match (example, lambda) {
                (Some(e), _) => (format!("example {e}"), build_example(*e, &ExampleParams { points: *points })?),
                (None, Some(l)) => ("configured".to_string(), PoissonContext::new(load_lambda(l, *n)?)),
                (None, None) => bail!("give --example N or --lambda <preset|file>"),
            };
            let mut r = Report::new("poisson-verify", seed);
            for c in ctx.triple_report()? {
                r.run(&format!("{name}: triple {:?}", c.triple), "Jacobi condition", || {
                    let ok = c.defect.is_zero() && c.jacobiator.is_zero();
                    Ok::<_, String>(Outcome::check(ok, String::new).with_note(format!("defect {}, jacobiator {}", c.defect, c.jacobiator)))
                });
            }
            Output::Report(r)
        }
        Cmd::Uq { cmd: UqCmd::Act { op, expr } } => {
            let op = UqOp::parse(op).with_context(|| format!("unknown operator '{op}', expected E, F, K or Kinv"))?;
            let alpha = alphabet(cli, AlgebraKind::Point);
            let p = parse_poly(expr, &Context::new(alpha, None))?;
            let table = if alpha == Alphabet::Coordinates { ActionTable::Projective } else { ActionTable::Point };
            let mut image = act(table, op, &p)?;
            if alpha == Alphabet::Coordinates {
                image = ProjAlgebra::ones(labels_of(&image))?.normal_form(&image)?;
            }
            Output::Value(vec![("input", p.to_string()), ("image", image.to_string())])
        }
        Cmd::Uq { cmd: UqCmd::Invariant { expr } } => {
            let alpha = alphabet(cli, AlgebraKind::Point);
            let p = parse_poly(expr, &Context::new(alpha, None))?;
            let coords = alpha == Alphabet::Coordinates;
            let table = if coords { ActionTable::Projective } else { ActionTable::Point };
            let alg = ProjAlgebra::ones(labels_of(&p))?;
            let reduce = |x: NCPoly| -> Result<NCPoly> { Ok(if coords { alg.normal_form(&x)? } else { x }) };
            let mut r = Report::new("uq-invariant", seed);
            for (id, op) in [("E(p) = 0", UqOp::E), ("F(p) = 0", UqOp::F), ("K(p) = p", UqOp::K)] {
                r.run(id, "invariance", || {
                    let mut img = act(table, op, &p)?;
                    if op == UqOp::K {
                        img = img.sub(&p);
                    }
                    let res = reduce(img)?;
                    Ok::<_, anyhow::Error>(Outcome::check(res.is_zero(), || res.to_string()))
                });
            }
            Output::Report(r)
        }
        Cmd::Pointalg { cmd: PointCmd::Nf { expr, lambda, n } } => {
            let ast = parse_expr(expr)?;
            let top = ast.letters().iter().map(|g| g.index).max().unwrap_or(1);
            let lam = load_lambda(lambda, n.unwrap_or(top))?;
            let ctx = Context::new(alphabet(cli, AlgebraKind::Point), Some(lam.labels().to_vec()));
            let p = parse_poly(expr, &ctx)?;
            let nf = PointAlgebra::real(lam).normal_form_deg3(&p)?;
            Output::Value(vec![("input", p.to_string()), ("normal_form", nf.to_string())])
        }
        Cmd::Pointalg { cmd: PointCmd::Dim { n, degree, lambda } } => {
            let lam = load_lambda(lambda, *n)?;
            let (dim, classical, eligible) = point_dimension(&lam, *degree)?;
            Output::Value(vec![
                ("degree", degree.to_string()),
                ("dimension", dim.to_string()),
                ("classical", classical.to_string()),
                ("pbw_eligible", eligible.to_string()),
            ])
        }
        Cmd::Pointalg { cmd: PointCmd::TripleCombination { lambda } } => {
            let mut cfg = SuiteConfig::new(seed);
            cfg.lambda = lambda.as_deref().map(|l| load_lambda(l, 3)).transpose()?;
            Output::Report(run_suite("lemma3", &cfg)?)
        }
        Cmd::Pointalg { cmd: PointCmd::ThreePoint { exceptional, lambda } } => {
            if *exceptional {
                // Same checks as the suite, with the dimension spelled out.
                let rep = exceptional_u_form()?;
                let mut r = run_suite("exceptional", &SuiteConfig::new(seed))?;
                r.run("degree-3 dimension", "exceptional structure", || {
                    Ok::<_, String>(Outcome::check(rep.dimension3 == 10, String::new).with_note(format!("dimension {}", rep.dimension3)))
                });
                Output::Report(r)
            } else {
                let mut cfg = SuiteConfig::new(seed);
                cfg.lambda = lambda.as_deref().map(|l| load_lambda(l, 3)).transpose()?;
                Output::Report(run_suite("three-point", &cfg)?)
            }
        }
        Cmd::Cross { cmd: CrossCmd::Verify { suite } } => {
            let name = match suite.as_str() {
                "table" => "cross-table",
                other => other,
            };
            Output::Report(run_suite(name, &SuiteConfig::new(seed))?)
        }
        Cmd::Cross { cmd: CrossCmd::Value { perm } } => {
            let p = parse_perm(perm)?;
            let table = cross_ratio_table([1, 2, 3, 4])?;
            let v = table.value(p);
            Output::Value(vec![
                ("perm", perm_word(p)),
                ("value", v.to_string()),
                ("star", table.star_value(v)?.to_string()),
                ("quantum", table.quantum(p)?.to_string()),
            ])
        }
        Cmd::Bmu { cmd: BmuCmd::Nf { expr, mu1, mu2 } } => {
            let p = parse_poly(expr, &Context::new(Alphabet::Coordinates, None))?;
            let labels = labels_of(&p);
            let alg = match (mu1, mu2) {
                (None, None) => ProjAlgebra::ones(labels)?,
                (Some(a), Some(b)) => {
                    let m = MuPair::new(parse_scalar(a)?, parse_scalar(b)?);
                    let base = ProjAlgebra::new(labels)?;
                    base.pairs().into_iter().fold(base, |alg, (i, j)| alg.with_pair(i, j, m.clone()))
                }
                _ => bail!("give both --mu1 and --mu2, or neither"),
            };
            let nf = alg.normal_form(&p)?;
            Output::Value(vec![("input", p.to_string()), ("normal_form", nf.to_string())])
        }
        Cmd::Bmu { cmd: BmuCmd::Probe { mu1, mu2, degree } } => {
            let rep = polynomiality_probe(&parse_scalar(mu1)?, &parse_scalar(mu2)?, *degree)?;
            let mut r = Report::new("bmu-probe", seed);
            for &(d, dim, classical) in &rep.dims {
                r.run(&format!("degree {d}: dimension {dim}, classical {classical}"), "polynomiality of coordinates", || {
                    Ok::<_, String>(Outcome::check(dim == classical, || format!("{dim} < {classical}")))
                });
            }
            Output::Report(r)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => emit(out, cli.format),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
