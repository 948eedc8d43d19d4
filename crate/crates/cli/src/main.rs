use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context as _, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use lam_core::cutelim::{eliminate_with, ElimOptions};
use lam_core::derivation::{check, System};
use lam_core::frontend::{parse_derivation, parse_term, parse_type, print_derivation, print_term, print_type_with, PrintOptions};
use lam_core::gen::{gen_add, gen_ladd, ladd_applied};
use lam_core::inhabit::{eta_expand, enumerate_inhabitants};
use lam_core::reduce::{normalize, Strategy};
use lam_core::suite::{run_suite, Report, Suite, SuiteParams, Verdict};
use lam_core::translate::{build_duplicator, build_eraser, compression_report, translate_derivation, translate_type};
use lam_core::{Derivation, Term, Type};

#[derive(Parser)]
#[command(name = "lam", version, about = "Checker, normaliser and cut-eliminator for LAM")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Global {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Include step-by-step traces.
    #[arg(long, global = true)]
    trace: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Step budget for reduction and cut-elimination.
    #[arg(long, global = true)]
    budget: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = SystemArg::Lam)]
    system: SystemArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum SystemArg {
    Lam,
    Imall2,
    Imll2,
}

impl From<SystemArg> for System {
    fn from(s: SystemArg) -> System {
        match s {
            SystemArg::Lam => System::Lam,
            SystemArg::Imall2 => System::Imall2,
            SystemArg::Imll2 => System::Imll2,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Leftmost,
    Rightmost,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Add,
    Ladd,
}

#[derive(Subcommand)]
enum Command {
    /// Check a derivation (`.lamd` file or inline text).
    Check { input: String },
    /// Normalise a term (`.lam` file or inline text).
    Normalize {
        input: String,
        #[arg(long, value_enum, default_value_t = StrategyArg::Leftmost)]
        strategy: StrategyArg,
    },
    /// Eliminate cuts from a forall-lazy derivation.
    Cutelim {
        input: String,
        /// Print the resulting derivation.
        #[arg(long)]
        print: bool,
    },
    /// Expand the axioms of a derivation to atomic ones.
    EtaExpand { input: String },
    /// Enumerate the closed normal inhabitants of a type.
    Inhabitants {
        ty: String,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Translate a derivation into IMLL2, or print the gadgets of a type.
    Translate {
        input: Option<String>,
        #[arg(long)]
        eraser: Option<String>,
        #[arg(long)]
        duplicator: Option<String>,
    },
    /// Generate an add or ladd instance.
    Gen {
        #[arg(value_enum)]
        family: Family,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Base type, `1` by default for ladd and `Bool` for add.
        #[arg(long)]
        base_type: Option<String>,
        /// Base term for add; argument for ladd (maximal value if absent).
        #[arg(long)]
        base: Option<String>,
        /// Emit the bare abstraction instead of the application (ladd only).
        #[arg(long)]
        unapplied: bool,
        /// Directory to write `.lam` and `.lamd` files into.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verification suites (`all` for every suite).
    Suite {
        names: Vec<String>,
        /// Random corpus entries on top of the fixed ones.
        #[arg(long, default_value_t = 200)]
        random: usize,
    },
}

fn read_input(input: &str) -> Result<String> {
    let p = Path::new(input);
    if p.is_file() {
        std::fs::read_to_string(p).with_context(|| format!("reading {input}"))
    } else {
        Ok(input.to_string())
    }
}

fn derivation(input: &str) -> Result<Derivation> {
    let src = read_input(input)?;
    parse_derivation(&src).map_err(|e| {
        let (l, c) = e.line_col(&src);
        anyhow::anyhow!("{l}:{c}: {e}")
    })
}

fn term(input: &str) -> Result<Term> {
    let src = read_input(input)?;
    parse_term(&src).map_err(|e| {
        let (l, c) = e.line_col(&src);
        anyhow::anyhow!("{l}:{c}: {e}")
    })
}

fn ty(src: &str) -> Result<Type> {
    parse_type(src).map_err(|e| anyhow::anyhow!("type `{src}`: {e}"))
}

fn show_ty(a: &Type) -> String {
    print_type_with(a, PrintOptions { use_macros: true })
}

fn info(command: &str) -> Report {
    let mut r = Report::new(command);
    r.verdict = Verdict::Info;
    r
}

fn run(cli: &Cli) -> Result<Vec<Report>> {
    let g = &cli.global;
    let report = match &cli.command {
        Command::Check { input } => {
            let d = derivation(input)?;
            let system: System = g.system.into();
            let mut r = Report::new("check");
            r.input("system", system);
            r.measure("subject", print_term(d.subject()));
            r.measure("type", show_ty(d.ty()));
            r.measure("size", d.size());
            r.measure("cut_free", d.is_cut_free());
            if let Err(vs) = check(&d, system) {
                for v in vs {
                    r.fail(v.to_string());
                }
            }
            r
        }
        Command::Normalize { input, strategy } => {
            let t = term(input)?;
            let s = match strategy {
                StrategyArg::Leftmost => Strategy::Leftmost,
                StrategyArg::Rightmost => Strategy::Rightmost,
                StrategyArg::Random => Strategy::Random(g.seed),
            };
            let mut r = info("normalize");
            r.input("strategy", s.to_string());
            r.measure("size", t.size());
            match normalize(&t, s, g.budget.unwrap_or(1_000_000)) {
                Ok((nf, trace)) => {
                    r.measure("normal_form", print_term(&nf));
                    r.measure("steps", trace.len());
                    r.measure("normal_size", nf.size());
                    if g.trace {
                        r.measure("trace", &trace);
                    }
                }
                Err(e) => r.fail(e.to_string()),
            }
            r
        }
        Command::Cutelim { input, print } => {
            let d = derivation(input)?;
            let mut r = Report::new("cutelim");
            r.measure("size", d.size());
            r.measure("weight", d.weight());
            match eliminate_with(&d, ElimOptions { simulate: g.trace, budget: g.budget }) {
                Ok((out, trace)) => {
                    r.measure("subject", print_term(out.subject()));
                    r.measure("steps", trace.total_steps);
                    r.measure("rounds", trace.rounds.len());
                    r.measure("steps_over_cube", trace.total_steps as f64 / d.size().pow(3) as f64);
                    if g.trace {
                        r.measure("trace", &trace);
                    }
                    if *print {
                        r.measure("derivation", print_derivation(&out));
                    }
                }
                Err(e) => r.fail(e.to_string()),
            }
            r
        }
        Command::EtaExpand { input } => {
            let d = derivation(input)?;
            let mut r = Report::new("eta-expand");
            match eta_expand(&d) {
                Ok(out) => {
                    r.measure("subject", print_term(out.subject()));
                    r.measure("derivation", print_derivation(&out));
                }
                Err(e) => r.fail(e.to_string()),
            }
            r
        }
        Command::Inhabitants { ty: src, bound } => {
            let a = ty(&read_input(src)?)?;
            let mut r = info("inhabitants");
            r.input("type", show_ty(&a));
            match enumerate_inhabitants(&a, *bound) {
                Ok(set) => {
                    r.measure("count", set.len());
                    r.measure("members", set.terms().map(print_term).collect::<Vec<_>>());
                    if let Some(i) = set.maximal {
                        r.measure("maximal", print_term(&set.members[i].0));
                    }
                }
                Err(e) => r.fail(e.to_string()),
            }
            r
        }
        Command::Translate { input, eraser, duplicator } => {
            let mut r = info("translate");
            if let Some(src) = eraser {
                let a = ty(src)?;
                match build_eraser(&a) {
                    Ok(t) => {
                        r.measure("eraser", print_term(&t));
                        r.measure("eraser_size", t.size());
                    }
                    Err(e) => r.fail(e.to_string()),
                }
            }
            if let Some(src) = duplicator {
                let a = ty(src)?;
                match build_duplicator(&a) {
                    Ok(t) => {
                        r.measure("duplicator", print_term(&t));
                        r.measure("duplicator_size", t.size());
                    }
                    Err(e) => r.fail(e.to_string()),
                }
            }
            if let Some(input) = input {
                let d = derivation(input)?;
                r.measure("type", show_ty(&translate_type(d.ty())));
                match compression_report(&d) {
                    Ok(c) => r.measure("compression", c),
                    Err(e) => r.fail(e.to_string()),
                }
                match translate_derivation(&d) {
                    Ok(t) => r.measure("term", print_term(&t)),
                    Err(e) => r.fail(e.to_string()),
                }
            }
            if r.measurements.is_empty() && r.details.is_empty() {
                bail!("translate needs a derivation, --eraser or --duplicator");
            }
            r
        }
        Command::Gen { family, n, base_type, base, unapplied, out } => gen(*family, *n, base_type, base, *unapplied, out)?,
        Command::Suite { names, random } => {
            let suites: Vec<Suite> = if names.is_empty() || names.iter().any(|n| n == "all") {
                Suite::ALL.to_vec()
            } else {
                names.iter().map(|n| n.parse().map_err(anyhow::Error::msg)).collect::<Result<_>>()?
            };
            let params = SuiteParams { seed: g.seed, random: *random };
            return Ok(suites.into_iter().map(|s| run_suite(s, params)).collect());
        }
    };
    Ok(vec![report])
}

fn gen(
    family: Family,
    n: usize,
    base_type: &Option<String>,
    base: &Option<String>,
    unapplied: bool,
    out: &Option<PathBuf>,
) -> Result<Report> {
    let (name, d) = match family {
        Family::Add => {
            let a = ty(base_type.as_deref().unwrap_or("Bool"))?;
            let m = term(base.as_deref().unwrap_or("\\x. \\y. \\z. z x y"))?;
            ("add", gen_add(n, &m, &a)?.1)
        }
        Family::Ladd => {
            let a = ty(base_type.as_deref().unwrap_or("1"))?;
            if unapplied {
                ("ladd", gen_ladd(n, &a)?.1)
            } else {
                let arg = base.as_deref().map(term).transpose()?;
                ("ladd", ladd_applied(n, &a, arg.as_ref())?)
            }
        }
    };
    let mut r = info("gen");
    r.input("family", name);
    r.input("n", n);
    r.measure("term", print_term(d.subject()));
    r.measure("type", show_ty(d.ty()));
    r.measure("term_size", d.subject().size());
    r.measure("derivation_size", d.size());
    if let Some(dir) = out {
        std::fs::create_dir_all(dir)?;
        let stem = dir.join(format!("{name}_{n}"));
        let lam = stem.with_extension("lam");
        let lamd = stem.with_extension("lamd");
        std::fs::write(&lam, format!("; {name} n={n}\n{}\n", print_term(d.subject())))?;
        std::fs::write(&lamd, format!("; {name} n={n}\n{}\n", print_derivation(&d)))?;
        r.measure("files", [lam.display().to_string(), lamd.display().to_string()]);
    }
    Ok(r)
}

fn print_human(r: &Report) {
    let verdict = match r.verdict {
        Verdict::Pass => "pass",
        Verdict::Fail => "FAIL",
        Verdict::Info => "ok",
    };
    println!("{} [{verdict}]", r.command);
    for (k, v) in &r.measurements {
        match v {
            Value::String(s) if s.contains('\n') => println!("  {k}:\n{s}"),
            Value::String(s) => println!("  {k}: {s}"),
            other => println!("  {k}: {other}"),
        }
    }
    for d in &r.details {
        println!("  - {d}");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(reports) => {
            if cli.global.json {
                let v = if reports.len() == 1 { serde_json::json!(reports[0]) } else { serde_json::json!(reports) };
                println!("{}", serde_json::to_string_pretty(&v).expect("reports serialise"));
            } else {
                reports.iter().for_each(print_human);
            }
            if reports.iter().all(Report::passed) {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
