//! The `gradfrob` command-line tool: algebra files, subcommands and reports.
//!
//! Exit codes: 0 for a decided Yes (or a valid file), 1 for a decided No
//! (or an invalid file), 2 for usage and input errors.

pub mod file;
pub mod report;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gradfrob::algebra::GradedAlgebra;
use gradfrob::constructors::{
    make_aq, make_exterior, make_good_matrix, make_twisted_group_algebra, AqGrading, GoodGradingSpec, QMatrix,
};
use gradfrob::decide::{
    check_theorem_a, decide_dual_component_iso, decide_frobenius_ungraded, decide_graded_symmetric,
    decide_sigma_frobenius, is_sigma_faithful, scan_sigma,
};
use gradfrob::exactmath::{format_rational, parse_rational, PitConfig, Rational, Strategy};
use gradfrob::group::{GroupModel, GroupValue};
use num_traits::One;

pub use file::{algebra_hash, parse_algebra_file, serialize_algebra, FileError};
pub use report::{Format, Report};

#[derive(Parser, Debug)]
#[command(name = "gradfrob", version, about = "Decide graded Frobenius and graded symmetric properties of algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Include wall-clock timings (makes output run-dependent).
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Machine,
}

#[derive(Args, Debug)]
struct PitArgs {
    #[arg(long, default_value = "auto")]
    strategy: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 4)]
    trials: u32,
    #[arg(long, default_value_t = 1 << 16)]
    sample_bound: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    Aq,
    Exterior,
    Matrix,
    GroupAlgebra,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GradingArg {
    Z,
    Z2n,
    Trivial,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the algebra axioms and the grading.
    Validate {
        file: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Decide whether the algebra is sigma-graded Frobenius.
    CheckFrobenius {
        file: PathBuf,
        /// Degree sigma; defaults to the neutral element.
        #[arg(long)]
        sigma: Option<String>,
        /// Forget the grading and run the classical test.
        #[arg(long)]
        ungraded: bool,
        #[command(flatten)]
        pit: PitArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Decide whether the algebra is graded symmetric.
    CheckSymmetric {
        file: PathBuf,
        #[command(flatten)]
        pit: PitArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Decide left sigma-faithfulness.
    CheckFaithful {
        file: PathBuf,
        #[arg(long)]
        sigma: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Decide whether the dual of the sigma component is isomorphic to the neutral component.
    CheckDualIso {
        file: PathBuf,
        #[arg(long)]
        sigma: Option<String>,
        #[command(flatten)]
        pit: PitArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run check-frobenius for every degree in the support.
    ScanSigma {
        file: PathBuf,
        #[command(flatten)]
        pit: PitArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Write an algebra file for a built-in family.
    Make {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: Option<usize>,
        /// Parameters `i,j=p/q;...`; missing pairs are 1.
        #[arg(long)]
        q: Option<String>,
        #[arg(long, value_enum)]
        grading: Option<GradingArg>,
        /// Degrees `g_1;...;g_n` of a good grading.
        #[arg(long)]
        tuple: Option<String>,
        #[arg(long)]
        group: Option<String>,
        /// Write to this path instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the parameters of the Koszul dual of A(q).
    KoszulDual {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evaluate the three invertibility conditions at a given alpha.
    TheoremA {
        file: PathBuf,
        #[arg(long)]
        sigma: Option<String>,
        /// Comma-separated rationals indexed by the sigma component.
        #[arg(long)]
        alpha: String,
        #[command(flatten)]
        output: OutputArgs,
    },
}

/// An error that maps to exit code 2.
#[derive(Debug)]
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

/// Parses `i,j=p/q;...` for `1 <= i < j <= n`; unlisted pairs are 1.
pub fn parse_q(n: usize, text: &str) -> Result<QMatrix, String> {
    let mut given = BTreeMap::new();
    for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (pair, value) = part.split_once('=').ok_or_else(|| format!("expected i,j=value in {part:?}"))?;
        let (i, j) = pair.split_once(',').ok_or_else(|| format!("expected i,j in {pair:?}"))?;
        let i: usize = i.trim().parse().map_err(|_| format!("bad index in {part:?}"))?;
        let j: usize = j.trim().parse().map_err(|_| format!("bad index in {part:?}"))?;
        let v = parse_rational(value.trim()).map_err(|e| e.to_string())?;
        if given.insert((i, j), v).is_some() {
            return Err(format!("pair {i},{j} given twice"));
        }
    }
    let mut entries = BTreeMap::new();
    for i in 1..=n {
        for j in i + 1..=n {
            entries.insert((i, j), given.remove(&(i, j)).unwrap_or_else(Rational::one));
        }
    }
    if let Some(((i, j), _)) = given.into_iter().next() {
        return Err(format!("pair {i},{j} is not 1 <= i < j <= {n}"));
    }
    QMatrix::new(n, entries).map_err(|e| e.to_string())
}

fn read_text(path: &PathBuf) -> Result<String, InputError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
    }
}

fn read_algebra(path: &PathBuf) -> Result<GradedAlgebra, InputError> {
    Ok(parse_algebra_file(&read_text(path)?)?)
}

fn sigma_of(a: &GradedAlgebra, sigma: &Option<String>) -> Result<GroupValue, InputError> {
    match sigma {
        Some(s) => Ok(a.group().parse_element(s)?),
        None => Ok(a.group().identity()),
    }
}

fn pit_config(p: &PitArgs) -> Result<PitConfig, InputError> {
    let strategy: Strategy = p.strategy.parse()?;
    let cfg = PitConfig { strategy, seed: p.seed, trials: p.trials, sample_bound: p.sample_bound };
    cfg.check(0)?;
    Ok(cfg)
}

fn format_of(o: &OutputArgs) -> Format {
    match o.format {
        FormatArg::Text => Format::Text,
        FormatArg::Machine => Format::Machine,
    }
}

struct Timer {
    start: Instant,
    on: bool,
}

impl Timer {
    fn start(on: bool) -> Self {
        Timer { start: Instant::now(), on }
    }

    fn stamp(&self, r: &mut Report) {
        if self.on {
            let ms = (self.start.elapsed().as_secs_f64() * 1e6).round() / 1e3;
            r.timings_ms = Some(BTreeMap::from([("total".to_string(), ms)]));
        }
    }
}

fn exit_code(verdict: &str) -> i32 {
    match verdict {
        "yes" | "valid" | "consistent" | "ok" => 0,
        _ => 1,
    }
}

fn emit(out: &mut dyn Write, r: &Report, format: Format) -> i32 {
    if out.write_all(r.render(format).as_bytes()).is_err() {
        return 2;
    }
    exit_code(&r.verdict)
}

/// Runs the tool on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = out.write_all(text.as_bytes());
                0
            } else {
                let _ = err.write_all(text.as_bytes());
                2
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(InputError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, InputError> {
    match command {
        Command::Validate { file, output } => {
            let timer = Timer::start(output.timings);
            let text = read_text(&file)?;
            let mut r = match parse_algebra_file(&text) {
                Ok(a) => {
                    let mut r = Report::new("validate", "valid");
                    r.algebra = Some(report::AlgebraInfo::of(&a));
                    r
                }
                Err(FileError::Validation(report)) => {
                    let mut r = Report::new("validate", "invalid");
                    r.violations = report.violations.iter().map(ToString::to_string).collect();
                    r
                }
                Err(e) => return Err(e.into()),
            };
            timer.stamp(&mut r);
            Ok(emit(out, &r, format_of(&output)))
        }
        Command::CheckFrobenius { file, sigma, ungraded, pit, output } => {
            let a = read_algebra(&file)?;
            let cfg = pit_config(&pit)?;
            let timer = Timer::start(output.timings);
            let mut r = if ungraded {
                let d = decide_frobenius_ungraded(a.table(), &cfg)?;
                let mut r = Report::from_decision("check-frobenius", &a, &d);
                r.note = Some("grading forgotten".into());
                r
            } else {
                let s = sigma_of(&a, &sigma)?;
                let d = decide_sigma_frobenius(&a, &s, &cfg)?;
                let mut r = Report::from_decision("check-frobenius", &a, &d);
                r.sigma = Some(a.group().format_element(&s));
                r
            };
            r.pit = Some((&cfg).into());
            timer.stamp(&mut r);
            Ok(emit(out, &r, format_of(&output)))
        }
        Command::CheckSymmetric { file, pit, output } => {
            let a = read_algebra(&file)?;
            let cfg = pit_config(&pit)?;
            let timer = Timer::start(output.timings);
            let d = decide_graded_symmetric(&a, &cfg)?;
            let mut r = Report::from_decision("check-symmetric", &a, &d);
            r.sigma = Some(a.group().format_element(&a.group().identity()));
            r.pit = Some((&cfg).into());
            timer.stamp(&mut r);
            Ok(emit(out, &r, format_of(&output)))
        }
        Command::CheckFaithful { file, sigma, output } => {
            let a = read_algebra(&file)?;
            let s = sigma_of(&a, &sigma)?;
            let timer = Timer::start(output.timings);
            let f = is_sigma_faithful(&a, &s)?;
            let mut r = Report::from_faithfulness(&a, &f);
            r.sigma = Some(a.group().format_element(&s));
            timer.stamp(&mut r);
            Ok(emit(out, &r, format_of(&output)))
        }
        Command::CheckDualIso { file, sigma, pit, output } => {
            let a = read_algebra(&file)?;
            let s = sigma_of(&a, &sigma)?;
            let cfg = pit_config(&pit)?;
            let timer = Timer::start(output.timings);
            let d = decide_dual_component_iso(&a, &s, &cfg)?;
            let mut r = Report::from_decision("check-dual-iso", &a, &d);
            r.sigma = Some(a.group().format_element(&s));
            r.pit = Some((&cfg).into());
            timer.stamp(&mut r);
            Ok(emit(out, &r, format_of(&output)))
        }
        Command::ScanSigma { file, pit, output } => {
            let a = read_algebra(&file)?;
            let cfg = pit_config(&pit)?;
            let timer = Timer::start(output.timings);
            let results = scan_sigma(&a, &cfg)?;
            let group = a.group();
            let any = results.iter().any(|(_, d)| d.is_yes());
            let mut r = Report::new("scan-sigma", if any { "yes" } else { "no" });
            r.algebra = Some(report::AlgebraInfo::of(&a));
            r.pit = Some((&cfg).into());
            r.scan = results
                .iter()
                .map(|(s, d)| report::ScanRow {
                    sigma: group.format_element(s),
                    verdict: if d.is_yes() { "yes" } else { "no" }.into(),
                    alpha: d.certificate().map(|c| c.alpha.iter().map(format_rational).collect::<Vec<_>>().join(",")),
                    witness: d.witness().map(|w| w.describe(group)),
                })
                .collect();
            r.note = Some("every degree outside the support: no (zero-sigma-component)".into());
            timer.stamp(&mut r);
            Ok(emit(out, &r, format_of(&output)))
        }
        Command::Make { family, n, q, grading, tuple, group, output } => {
            let a = make_algebra(family, n, q.as_deref(), grading, tuple.as_deref(), group.as_deref())?;
            file::check_names(&a).map_err(InputError)?;
            let text = serialize_algebra(&a);
            match output {
                Some(path) => std::fs::write(&path, text).map_err(|e| InputError(format!("{}: {e}", path.display())))?,
                None => out.write_all(text.as_bytes())?,
            }
            Ok(0)
        }
        Command::KoszulDual { n, q, output } => {
            let qm = parse_q(n, q.as_deref().unwrap_or("")).map_err(InputError)?;
            let dual = qm.koszul_dual();
            let mut r = Report::new("koszul-dual", "ok");
            r.koszul = Some(report::KoszulInfo {
                n,
                q: qm.to_string(),
                dual_q: dual.to_string(),
                involution: dual.koszul_dual() == qm,
            });
            Ok(emit(out, &r, format_of(&output)))
        }
        Command::TheoremA { file, sigma, alpha, output } => {
            let a = read_algebra(&file)?;
            let s = sigma_of(&a, &sigma)?;
            let alpha = alpha
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(parse_rational)
                .collect::<Result<Vec<_>, _>>()?;
            let timer = Timer::start(output.timings);
            let t = check_theorem_a(&a, &s, &alpha)?;
            let mut r = Report::new("theorem-a", if t.consistent() { "consistent" } else { "inconsistent" });
            r.algebra = Some(report::AlgebraInfo::of(&a));
            r.sigma = Some(a.group().format_element(&s));
            r.conditions = Some(Report::conditions(&t));
            timer.stamp(&mut r);
            Ok(emit(out, &r, format_of(&output)))
        }
    }
}

fn make_algebra(
    family: Family,
    n: Option<usize>,
    q: Option<&str>,
    grading: Option<GradingArg>,
    tuple: Option<&str>,
    group: Option<&str>,
) -> Result<GradedAlgebra, InputError> {
    let need_n = || n.ok_or_else(|| InputError("--n is required for this family".into()));
    let aq_grading = |default| match grading.unwrap_or(default) {
        GradingArg::Z => AqGrading::Integer,
        GradingArg::Z2n => AqGrading::BooleanVectors,
        GradingArg::Trivial => AqGrading::Trivial,
    };
    match family {
        Family::Aq => {
            let qm = parse_q(need_n()?, q.unwrap_or("")).map_err(InputError)?;
            Ok(make_aq(&qm, aq_grading(GradingArg::Z2n)))
        }
        Family::Exterior => Ok(make_exterior(need_n()?, aq_grading(GradingArg::Trivial))?),
        Family::Matrix => {
            let model: GroupModel = group.unwrap_or("Z/1").parse()?;
            let tuple: Vec<GroupValue> = match tuple {
                Some(t) => t.split(';').map(|x| model.parse_element(x.trim())).collect::<Result<_, _>>()?,
                None => vec![model.identity(); need_n()?],
            };
            if let Some(n) = n {
                if n != tuple.len() {
                    return Err(InputError(format!("--n {n} but the tuple has {} entries", tuple.len())));
                }
            }
            Ok(make_good_matrix(&GoodGradingSpec::new(model, tuple)?))
        }
        Family::GroupAlgebra => {
            let model: GroupModel = group.ok_or_else(|| InputError("--group is required".into()))?.parse()?;
            Ok(make_twisted_group_algebra(&model, |_, _| Rational::one())?)
        }
    }
}

/// Re-verifies a machine report's certificate against `a` by evaluating the
/// full matrix `P(σ, α)` and its exact determinant.
pub fn verify_report_certificate(a: &GradedAlgebra, sigma: &GroupValue, r: &serde_json::Value) -> Result<bool, String> {
    let alpha = r["certificate"]["alpha"].as_array().ok_or("report has no certificate")?;
    let mut values = Vec::new();
    let component = a.component(sigma).map_err(|e| e.to_string())?;
    for (k, entry) in alpha.iter().enumerate() {
        let index = entry["index"].as_u64().ok_or("missing index")? as usize;
        if component.get(k) != Some(&index) {
            return Ok(false);
        }
        values.push(parse_rational(entry["value"].as_str().ok_or("missing value")?).map_err(|e| e.to_string())?);
    }
    if values.len() != component.len() {
        return Ok(false);
    }
    let p = gradfrob::paratrophic::build_p(a, sigma).map_err(|e| e.to_string())?;
    let m = p.eval_full(&values).map_err(|e| e.to_string())?;
    Ok(m.determinant().map_err(|e| e.to_string())? != Rational::from_integer(0.into()))
}

