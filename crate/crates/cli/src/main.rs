use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use liftperiod::eisenstein::EisensteinSpec;
use liftperiod::kernel::arith::sigma;
use liftperiod::kernel::{fmt_rational, QuadScalar};
use liftperiod::lifts::{miyawaki_fc, LiftContext};
use liftperiod::modforms::{eigenforms, plus_space_eigenforms, PLUS_PRECISION};
use liftperiod::pullback::{extract_std_l, product_hecke_l};
use liftperiod::qforms::{e8_pair_count, HalfIntMat};
use liftperiod::siegel::{bp_series, brute_bp, fp_polynomial};
use liftperiod_verifier::{assemble_c, scale_invariance_suite, CaseConfig, ConfigFile, Embedding};

#[derive(Parser, Debug)]
#[command(name = "liftperiod", version, about = "Exact L-values and period constants of Ikeda-Miyawaki lifts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Assemble C_{h,g} for a case and compare it with 2^((2n-1)k+4n).
    Verify(VerifyArgs),
    /// Compute a single intermediate quantity.
    #[command(subcommand)]
    Compute(ComputeCmd),
    /// Run an independent oracle against the engine.
    #[command(subcommand)]
    Oracle(OracleCmd),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CaseName {
    K10,
    K14,
}

impl CaseName {
    fn as_str(self) -> &'static str {
        match self {
            CaseName::K10 => "k10",
            CaseName::K14 => "k14",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum Emb {
    #[default]
    Plus,
    Minus,
}

impl From<Emb> for Embedding {
    fn from(e: Emb) -> Self {
        match e {
            Emb::Plus => Embedding::Plus,
            Emb::Minus => Embedding::Minus,
        }
    }
}

#[derive(Args, Debug)]
struct CaseArgs {
    #[arg(long, value_enum)]
    case: CaseName,
    #[arg(long, value_enum, default_value_t)]
    embedding: Emb,
    /// JSON file with curated overrides and precision settings.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Accept curated overrides that carry no provenance.
    #[arg(long)]
    allow_unverified: bool,
}

impl CaseArgs {
    fn load(&self) -> Result<CaseConfig> {
        let case = CaseConfig::named(self.case.as_str(), self.embedding.into())?;
        let Some(path) = &self.config else { return Ok(case) };
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let cfg: ConfigFile = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        Ok(case.apply_config(cfg, self.allow_unverified)?)
    }
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    case: CaseArgs,
    /// Write the JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Write the markdown report here instead of stdout.
    #[arg(long)]
    markdown: Option<PathBuf>,
    /// Also run the scale-invariance and negative-control checks.
    #[arg(long)]
    scale_suite: bool,
}

#[derive(Subcommand, Debug)]
enum ComputeCmd {
    /// Local Siegel series polynomial F_p(B, X) with its derivation.
    Fp {
        /// The even matrix 2B as JSON, e.g. [[2,1],[1,2]].
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        p: u64,
    },
    /// Fourier coefficient of the Siegel Eisenstein series E*_{g,l}.
    Eisenstein {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        weight: u32,
        #[arg(long)]
        matrix: String,
    },
    /// Fourier coefficient c_F(A) of the Ikeda-Miyawaki lift.
    Miyawaki {
        #[command(flatten)]
        case: CaseArgs,
        /// Defaults to the case matrix A.
        #[arg(long)]
        matrix: Option<String>,
    },
    /// |c_F(A)|^2 L_alg(k-3, F, St) by the doubling extraction.
    #[command(name = "stdL")]
    StdL {
        #[command(flatten)]
        case: CaseArgs,
    },
    /// L_alg(l1, l2; f) for the eigenform f of the given weight.
    Heckeprod {
        #[arg(long)]
        l1: u32,
        #[arg(long)]
        l2: u32,
        #[arg(long)]
        weight: u32,
        #[arg(long, value_enum, default_value_t)]
        embedding: Emb,
    },
    /// Normalized Hecke eigenforms of S_k, or of the plus space with --plus.
    Eigenform {
        #[arg(long)]
        weight: u32,
        #[arg(long, default_value_t = 10)]
        terms: usize,
        #[arg(long)]
        plus: bool,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCmd {
    /// E8 pair count against c_{g,4}(T) / Z(g,4).
    E8 {
        #[arg(long)]
        matrix: String,
    },
    /// Enumeration of Sym_m(Z/p^L) against the Siegel series engine.
    BruteSiegel {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 3)]
        level: u32,
    },
    /// Genus-one coefficients against 2 sigma_{l-1}(m).
    Sigma {
        #[arg(long)]
        weight: u32,
        #[arg(long, default_value_t = 50)]
        max: u64,
    },
}

fn parse_matrix(s: &str) -> Result<HalfIntMat> {
    serde_json::from_str(s).with_context(|| format!("`{s}` is not a JSON matrix 2B with even diagonal"))
}

fn print_json(v: &Value) {
    let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(v).expect("json"));
}

fn lift_context(case: &CaseConfig) -> Result<LiftContext> {
    let mut pairs = plus_space_eigenforms(case.k, case.plus_precision)?;
    let idx = if matches!(case.embedding, Embedding::Minus) && pairs.len() > 1 { 1 } else { 0 };
    let (h, f) = pairs.swap_remove(idx);
    Ok(LiftContext::new(h, f)?)
}

fn verify(args: VerifyArgs) -> Result<bool> {
    let case = args.case.load()?;
    let (_, report) = assemble_c(&case)?;
    let markdown = report.to_markdown();
    match &args.markdown {
        Some(path) => fs::write(path, &markdown).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{markdown}"),
    }
    if let Some(path) = &args.report {
        fs::write(path, report.to_json()).with_context(|| format!("writing {}", path.display()))?;
    }
    let mut ok = report.pass;
    if args.scale_suite {
        println!("\n## Scale invariance\n");
        for check in scale_invariance_suite(&case)? {
            println!("- {}: {} (C = {})", check.name, if check.pass { "PASS" } else { "FAIL" }, check.c_value);
            ok &= check.pass;
        }
    }
    Ok(ok)
}

fn compute(cmd: ComputeCmd) -> Result<bool> {
    match cmd {
        ComputeCmd::Fp { matrix, p } => {
            let b = parse_matrix(&matrix)?;
            let f = fp_polynomial(&b, p)?;
            print_json(&json!({
                "p": p,
                "matrix": b.to_string(),
                "polynomial": f.to_string(),
                "coefficients": f.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "degree": f.degree(),
                "fe_sign": f.fe_sign,
                "sign_source": format!("{:?}", f.sign_source),
                "derivation": f.derivation.iter().map(|d| format!("{d:?}")).collect::<Vec<_>>(),
                "functional_equation_holds": f.satisfies_functional_equation(),
            }));
            Ok(f.satisfies_functional_equation())
        }
        ComputeCmd::Eisenstein { genus, weight, matrix } => {
            let spec = EisensteinSpec::new(genus, weight)?;
            let b = parse_matrix(&matrix)?;
            let c = spec.coefficient(&b)?;
            let z = spec.normalization();
            print_json(&json!({
                "genus": genus,
                "weight": weight,
                "coefficient": fmt_rational(&c),
                "normalization": fmt_rational(&z),
                "normalized": fmt_rational(&(c / z)),
            }));
            Ok(true)
        }
        ComputeCmd::Miyawaki { case, matrix } => {
            let case = case.load()?;
            let a = match matrix {
                Some(m) => parse_matrix(&m)?,
                None => case.a.clone(),
            };
            let c = miyawaki_fc(&a, &lift_context(&case)?)?;
            print_json(&json!({ "k": case.k, "matrix": a.to_string(), "c_F(A)": c.to_string() }));
            Ok(true)
        }
        ComputeCmd::StdL { case } => {
            let case = case.load()?;
            let value = match &case.basis_table {
                Some(key) => extract_std_l(case.k, &case.curated.table(key)?.basis_table(case.embedding)?, &case.a)?,
                None => QuadScalar::from(liftperiod::pullback::big_c(case.k, &case.a, &case.a)?),
            };
            print_json(&json!({
                "k": case.k,
                "l": case.k - 3,
                "matrix": case.a.to_string(),
                "value": value.to_string(),
            }));
            Ok(true)
        }
        ComputeCmd::Heckeprod { l1, l2, weight, embedding } => {
            let mut forms = eigenforms(weight, liftperiod_verifier::HECKE_PRECISION)?;
            if matches!(embedding, Emb::Minus) && forms.len() > 1 {
                forms.swap(0, 1);
            }
            let v = product_hecke_l(l1, l2, &forms)?;
            print_json(&json!({
                "l1": l1,
                "l2": l2,
                "weight": weight,
                "f_a2": forms[0].coeff(2).to_string(),
                "value": v.to_string(),
            }));
            Ok(true)
        }
        ComputeCmd::Eigenform { weight, terms, plus } => {
            let show = |q: &liftperiod::qseries::QSeries| -> Vec<String> {
                (0..terms.min(q.prec())).map(|n| q.coeff(n).to_string()).collect()
            };
            let forms: Vec<Value> = if plus {
                let prec = PLUS_PRECISION.max(terms);
                plus_space_eigenforms(weight, prec)?
                    .iter()
                    .map(|(h, f)| json!({ "h": show(h.q()), "shimura_image_a2": f.coeff(2).to_string() }))
                    .collect()
            } else {
                eigenforms(weight, terms.max(3 * weight as usize))?.iter().map(|f| json!({ "q": show(f.q()) })).collect()
            };
            print_json(&json!({ "weight": weight, "plus": plus, "forms": forms }));
            Ok(true)
        }
    }
}

fn oracle(cmd: OracleCmd) -> Result<bool> {
    match cmd {
        OracleCmd::E8 { matrix } => {
            let t = parse_matrix(&matrix)?;
            let spec = EisensteinSpec::new(t.size(), 4)?;
            let engine = spec.coefficient(&t)? / spec.normalization();
            let count = e8_pair_count(&t)?;
            let ok = engine == liftperiod::kernel::Rational::from_integer(count.into());
            print_json(&json!({ "e8_count": count, "engine": fmt_rational(&engine), "agree": ok }));
            Ok(ok)
        }
        OracleCmd::BruteSiegel { matrix, p, level } => {
            let b = parse_matrix(&matrix)?;
            let brute = brute_bp(&b, p, level)?;
            let engine = bp_series(&b, p, brute.len() - 1)?;
            let ok = brute == engine;
            let fmt = |v: &[_]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
            print_json(&json!({ "brute": fmt(&brute), "engine": fmt(&engine), "agree": ok }));
            Ok(ok)
        }
        OracleCmd::Sigma { weight, max } => {
            let spec = EisensteinSpec::new(1, weight)?;
            let mut bad = Vec::new();
            for m in 1..=max {
                let b = HalfIntMat::from_twice(vec![vec![2 * m as i64]])?;
                let c = spec.coefficient(&b)?;
                if c != liftperiod::kernel::Rational::from_integer(sigma(weight - 1, m) * 2) {
                    bad.push(m);
                }
            }
            print_json(&json!({ "weight": weight, "max": max, "mismatches": bad }));
            Ok(bad.is_empty())
        }
    }
}

fn run() -> Result<bool> {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify(args) => verify(args),
        Command::Compute(cmd) => compute(cmd),
        Command::Oracle(cmd) => oracle(cmd),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
