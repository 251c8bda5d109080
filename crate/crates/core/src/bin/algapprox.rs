use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;

use algapprox::algnum::{ExprBudget, NumberField};
use algapprox::approx::{estimate_exponents, pell_approximant, pell_solve, ExponentTable};
use algapprox::criteria::{classify_field, galois_closure_check, is_galois_field, theorem_gate_field, GaloisVerdict};
use algapprox::harness::catalog::{PAPER_F, PAPER_G};
use algapprox::harness::golden::{assign_labels, F_LABELS};
use algapprox::harness::{builtin_catalog, emit, golden_suite, load_catalog, sample_experiment, to_json, Format};
use algapprox::normform::{
    analyze_solution, enumerate_solutions, min_norm_profile, relation_matrix, SignMode, DEFAULT_FIT_FROM,
};
use algapprox::{Error, IntPoly, Result};

#[derive(Parser)]
#[command(name = "algapprox", version, about = "Certified experiments on approximation to complex algebraic numbers")]
struct Cli {
    /// Working precision for certified identities, in decimal digits.
    #[arg(long, global = true, default_value_t = 600)]
    precision_digits: u32,
    /// Wall-clock budget for enumerations, in milliseconds.
    #[arg(long, global = true)]
    budget_ms: Option<u64>,
    #[arg(long, global = true, default_value_t = 20260101)]
    seed: u64,
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Field-level criteria.
    Criteria {
        #[command(subcommand)]
        cmd: CriteriaCmd,
    },
    /// Pell approximants and exponent estimates.
    Approx {
        #[command(subcommand)]
        cmd: ApproxCmd,
    },
    /// Norm-form enumeration, min-norm profiles and relation matrices.
    Normform {
        #[command(subcommand)]
        cmd: NormCmd,
    },
    /// Random-element experiment over a catalog.
    Experiment {
        #[command(subcommand)]
        cmd: ExperimentCmd,
    },
    /// Stored expectations for the worked examples.
    Golden {
        #[command(subcommand)]
        cmd: GoldenCmd,
    },
}

#[derive(Args, Clone)]
struct FieldArg {
    /// NumberField JSON file: {"label", "poly", "galois"}.
    #[arg(long, conflicts_with = "poly")]
    field: Option<PathBuf>,
    /// Coefficients, constant term first: "1,-3,5,-5,5,-3,1"; also "paper-f", "paper-g".
    #[arg(long, allow_hyphen_values = true)]
    poly: Option<String>,
}

#[derive(Subcommand)]
enum CriteriaCmd {
    /// Totally complex, Galois, and the theorem gates for n = 2, 3, 4.
    Check {
        #[command(flatten)]
        field: FieldArg,
    },
    /// Per-conjugate independence, real subfields and w*.
    Classify {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long, value_delimiter = ',', default_value = "3,4")]
        ns: Vec<usize>,
    },
}

#[derive(Subcommand)]
enum ApproxCmd {
    Pell {
        #[arg(long, default_value_t = 2)]
        r: u64,
        #[arg(long, default_value_t = 3)]
        s: u64,
        #[arg(long, default_value_t = 6)]
        count: usize,
    },
    Exponents {
        #[command(flatten)]
        field: FieldArg,
        /// Embedding index of ξ (0-based).
        #[arg(long, default_value_t = 0)]
        embedding: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        hmax: u32,
        /// Earlier JSON table to continue from.
        #[arg(long)]
        resume: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum NormCmd {
    Enumerate {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        m: BigInt,
        /// Only `Norm = m`, not `±m`.
        #[arg(long)]
        exact_sign: bool,
        #[arg(long)]
        xmax: i64,
    },
    Profile {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        xmax: i64,
        #[arg(long, default_value_t = DEFAULT_FIT_FROM)]
        fit_from: i64,
    },
    Relations {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Also analyze the unit solutions with max coordinate up to this bound.
        #[arg(long, default_value_t = 0)]
        xmax: i64,
    },
}

#[derive(Subcommand)]
enum ExperimentCmd {
    Sample {
        /// Catalog JSON file; the builtin catalog is used when absent.
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Degrees of the builtin catalog.
        #[arg(long, value_delimiter = ',', default_value = "8")]
        degrees: Vec<usize>,
        #[arg(long, default_value_t = 100)]
        per_field: usize,
        #[arg(long, default_value_t = 10)]
        r: i64,
    },
}

#[derive(Subcommand)]
enum GoldenCmd {
    Run,
}

fn parse_poly(s: &str) -> Result<IntPoly> {
    match s {
        "paper-f" => return Ok(IntPoly::from_i64s(&PAPER_F)),
        "paper-g" => return Ok(IntPoly::from_i64s(&PAPER_G)),
        _ => {}
    }
    let c = s
        .split(',')
        .map(|t| t.trim().parse::<BigInt>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| Error::Parse {
            path: "--poly".into(),
            msg: e.to_string(),
        })?;
    Ok(IntPoly::new(c))
}

fn load_field(a: &FieldArg) -> Result<NumberField> {
    match (&a.field, &a.poly) {
        (Some(p), _) => {
            let text = std::fs::read_to_string(p)?;
            NumberField::from_json(&text).map_err(|e| Error::Parse {
                path: p.display().to_string(),
                msg: e.to_string(),
            })
        }
        (None, Some(s)) => {
            let label = if s.starts_with("paper-") { s.clone() } else { format!("x[{s}]") };
            NumberField::new(label, parse_poly(s)?)
        }
        (None, None) => Err(Error::domain("give --field <file> or --poly <coefficients>")),
    }
}

/// Attaches a certified automorphism table when the field is Galois.
fn with_galois(k: NumberField) -> Result<NumberField> {
    if k.galois_table().is_some() {
        return Ok(k);
    }
    Ok(galois_closure_check(&k.label, k.poly().clone())?.0)
}

fn csv_unavailable(what: &str) -> Error {
    Error::domain(format!("{what} has no CSV view; use --format json"))
}

struct Ctx {
    out: Option<PathBuf>,
    format: Format,
    budget: Option<Duration>,
    budget_bits: u32,
}

impl Ctx {
    fn write(&self, json: String, csv: Option<String>, what: &str) -> Result<()> {
        let text = match self.format {
            Format::Json => json,
            Format::Csv => csv.ok_or_else(|| csv_unavailable(what))?,
        };
        emit(self.out.as_deref(), &text)
    }
}

fn run_criteria(ctx: &Ctx, cmd: CriteriaCmd) -> Result<bool> {
    match cmd {
        CriteriaCmd::Check { field } => {
            let k = load_field(&field)?;
            let verdict = is_galois_field(&k, ExprBudget { max_bits: ctx.budget_bits })?;
            let k = match &verdict {
                GaloisVerdict::Galois(t) if k.galois_table().is_none() => k.clone().with_galois_table(t.clone())?,
                _ => k,
            };
            let mut gates = Vec::new();
            for n in 2..=4 {
                if n + 2 <= k.degree() && k.is_totally_complex() {
                    gates.push(theorem_gate_field(&k, verdict.as_bool(), 0, n)?);
                }
            }
            let v = serde_json::json!({
                "label": k.label,
                "poly": k.poly(),
                "degree": k.degree(),
                "totally_complex": k.is_totally_complex(),
                "galois": verdict.label(),
                "automorphisms": k.galois_table().map_or(0, |t| t.len()),
                "theorem_gates": gates,
            });
            ctx.write(to_json(&v), None, "criteria check")?;
        }
        CriteriaCmd::Classify { field, ns } => {
            let k = load_field(&field)?;
            let mut rep = classify_field(&k, &ns)?;
            if k.poly() == &IntPoly::from_i64s(&PAPER_F) {
                assign_labels(&mut rep, &F_LABELS);
            }
            ctx.write(to_json(&rep), None, "criteria classify")?;
        }
    }
    Ok(true)
}

fn run_approx(ctx: &Ctx, cmd: ApproxCmd) -> Result<bool> {
    match cmd {
        ApproxCmd::Pell { r, s, count } => {
            let recs = pell_solve(r, count)?
                .iter()
                .map(|sol| pell_approximant(r, s, sol))
                .collect::<Result<Vec<_>>>()?;
            let mut csv = String::from("a,b,H_P,H_alpha,distance_hi,exponent_lo,exponent_hi,bounds_ok\n");
            for x in &recs {
                let (elo, ehi) = x.exponent.map_or((String::new(), String::new()), |e| (e[0].to_string(), e[1].to_string()));
                csv.push_str(&format!(
                    "{},{},{},{},{:e},{},{},{}\n",
                    x.a,
                    x.b,
                    x.height_p,
                    x.height_alpha,
                    x.distance[1],
                    elo,
                    ehi,
                    x.bound_value && x.bound_height && x.bound_distance
                ));
            }
            ctx.write(to_json(&recs), Some(csv), "approx pell")?;
        }
        ApproxCmd::Exponents {
            field,
            embedding,
            n,
            hmax,
            resume,
        } => {
            let k = load_field(&field)?;
            if embedding >= k.degree() {
                return Err(Error::domain(format!("embedding {embedding} out of range for degree {}", k.degree())));
            }
            let resume: Option<ExponentTable> = match resume {
                Some(p) => Some(serde_json::from_str(&std::fs::read_to_string(p)?)?),
                None => None,
            };
            let t = estimate_exponents(k.embedding(embedding), n, hmax, ctx.budget, resume)?;
            for w in &t.warnings {
                log::warn!("{w}");
            }
            ctx.write(to_json(&t), Some(t.to_csv()), "approx exponents")?;
        }
    }
    Ok(true)
}

fn run_normform(ctx: &Ctx, cmd: NormCmd) -> Result<bool> {
    match cmd {
        NormCmd::Enumerate {
            field,
            n,
            m,
            exact_sign,
            xmax,
        } => {
            let k = load_field(&field)?;
            let mode = if exact_sign { SignMode::Exact } else { SignMode::Both };
            let e = enumerate_solutions(&k, n, &m, mode, xmax, ctx.budget)?;
            if e.partial {
                log::warn!("budget exhausted after shell {}", e.x_done);
            }
            let mut csv = String::from("coords,norm,X\n");
            for s in &e.solutions {
                let c: Vec<String> = s.coords.iter().map(|v| v.to_string()).collect();
                csv.push_str(&format!("{},{},{}\n", c.join(" "), s.norm_value, s.x));
            }
            ctx.write(to_json(&e), Some(csv), "normform enumerate")?;
        }
        NormCmd::Profile { field, n, xmax, fit_from } => {
            let k = load_field(&field)?;
            let p = min_norm_profile(&k, n, xmax, fit_from, ctx.budget)?;
            ctx.write(to_json(&p), Some(p.to_csv()), "normform profile")?;
        }
        NormCmd::Relations { field, n, xmax } => {
            let k = with_galois(load_field(&field)?)?;
            let a = relation_matrix(&k, n)?;
            let fr = a.full_rank_condition();
            let mut analyses = Vec::new();
            if xmax > 0 {
                let e = enumerate_solutions(&k, n, &BigInt::from(1), SignMode::Both, xmax, ctx.budget)?;
                for s in &e.representatives {
                    analyses.push(analyze_solution(&k, &a, s)?);
                }
            }
            let v = serde_json::json!({
                "matrix": a,
                "annihilates_v": a.annihilates(&k)?,
                "left_block_diagonal": a.left_block_diagonal(),
                "full_rank_condition": fr,
                "solutions": analyses,
            });
            ctx.write(to_json(&v), None, "normform relations")?;
        }
    }
    Ok(true)
}

fn run(cli: Cli) -> Result<bool> {
    let ctx = Ctx {
        out: cli.out.clone(),
        format: cli.format,
        budget: cli.budget_ms.map(Duration::from_millis),
        budget_bits: ((cli.precision_digits as f64) * std::f64::consts::LOG2_10).ceil() as u32,
    };
    match cli.cmd {
        Cmd::Criteria { cmd } => run_criteria(&ctx, cmd),
        Cmd::Approx { cmd } => run_approx(&ctx, cmd),
        Cmd::Normform { cmd } => run_normform(&ctx, cmd),
        Cmd::Experiment {
            cmd: ExperimentCmd::Sample {
                catalog,
                degrees,
                per_field,
                r,
            },
        } => {
            let cat = match catalog {
                Some(p) => load_catalog(&p)?,
                None => builtin_catalog(&degrees)?,
            };
            for w in &cat.warnings {
                log::warn!("{w}");
            }
            let rep = sample_experiment(&cat, per_field, r, cli.seed)?;
            ctx.write(rep.to_json(), Some(rep.to_csv()), "experiment sample")?;
            Ok(true)
        }
        Cmd::Golden { cmd: GoldenCmd::Run } => {
            let rep = golden_suite();
            let mut csv = String::from("check,passed,expected,actual\n");
            for c in &rep.checks {
                csv.push_str(&format!("{:?},{},{:?},{:?}\n", c.name, c.passed, c.expected, c.actual));
            }
            ctx.write(to_json(&rep), Some(csv), "golden run")?;
            if !rep.passed {
                eprint!("{}", rep.diff());
            }
            Ok(rep.passed)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
