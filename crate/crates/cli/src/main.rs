use std::fs;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use trigsturm::corpus::{self, Outcome};
use trigsturm::exactnum::rational::{self, parse_rational, Rational};
use trigsturm::expr::{self, ExprAst};
use trigsturm::paramsolve::{nonnegative_set, maximal_interval, ParamInterval};
use trigsturm::poly::Poly;
use trigsturm::prover::{default_box_width, lower_bound, pfloor, resolvent, ProveOptions};
use trigsturm::report::{prove_report, ProofReport};
use trigsturm::sturm::{RootBox, SturmChain};
use trigsturm::trig::{cover, default_cover_width, x_to_y, CoverMode, TrigKind, TrigPoly, XInterval};

const EXIT_USAGE: u8 = 3;

// stdout writes that ignore a closed pipe
macro_rules! out {
    ($($t:tt)*) => {{
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}

macro_rules! outln {
    ($($t:tt)*) => {{
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

#[derive(Parser)]
#[command(name = "trigsturm", version, about = "Exact nonnegativity proofs for trigonometric polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    #[value(alias = "json")]
    Structured,
}

#[derive(Args, Clone)]
struct Common {
    /// Left end of the x-interval, a rational multiple of pi.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    xlo: String,
    /// Right end of the x-interval, a rational multiple of pi.
    #[arg(long, default_value = "pi", allow_hyphen_values = true)]
    xhi: String,
    /// Maximal width of root boxes.
    #[arg(long)]
    width: Option<String>,
    /// Width of the enclosures of irrational interval images.
    #[arg(long)]
    cover_width: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Decide nonnegativity and print the certificate.
    Prove {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        common: Common,
        /// Fixed pfloor precision; escalates from 2 when omitted.
        #[arg(long)]
        m: Option<u32>,
    },
    /// Print B(y) and A(y) with t = B(y) + sin(x) A(y).
    Expand {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Count distinct real roots of the associated polynomial on the y-range.
    Count {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        common: Common,
    },
    /// Isolate the roots of the associated polynomial on the y-range.
    Isolate {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        common: Common,
    },
    /// Print the lifted polynomial P(z), z = y + 1, and its rational lower bound.
    Pfloor {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value_t = 2)]
        m: u32,
        /// Keep rational coefficients exactly.
        #[arg(long)]
        keep_rational: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Maximal interval of `a` keeping the family nonnegative.
    Param {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        common: Common,
        /// A parameter value known to work; searched for when omitted.
        #[arg(long, allow_hyphen_values = true)]
        seed: Option<String>,
    },
    /// Run the reproduction corpus and print a pass/fail table.
    Repro {
        /// Only run cases whose name contains one of these strings.
        filter: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Re-check a structured proof report.
    Verify { file: String },
}

struct Fail(u8, String);

impl<E: std::fmt::Display> From<E> for Fail {
    fn from(e: E) -> Self {
        Fail(EXIT_USAGE, e.to_string())
    }
}

type Res = Result<u8, Fail>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn run(cmd: Command) -> Res {
    match cmd {
        Command::Prove { expr, common, m } => prove(&expr, &common, m),
        Command::Expand { expr, format } => expand(&expr, format),
        Command::Count { expr, common } => count(&expr, &common),
        Command::Isolate { expr, common } => isolate(&expr, &common),
        Command::Pfloor {
            expr,
            m,
            keep_rational,
            format,
        } => pfloor_cmd(&expr, m, keep_rational, format),
        Command::Param { expr, common, seed } => param(&expr, &common, seed.as_deref()),
        Command::Repro { filter, format } => repro(&filter, format),
        Command::Verify { file } => verify(&file),
    }
}

fn parse_trig(src: &str) -> Result<TrigPoly, Fail> {
    expr::parse_trig(src).map_err(|e| Fail(EXIT_USAGE, format!("\n{}", e.annotate(src))))
}

fn positive(s: &Option<String>, default: Rational) -> Result<Rational, Fail> {
    match s {
        None => Ok(default),
        Some(s) => {
            let r = parse_rational(s)?;
            if r <= Rational::from_integer(0.into()) {
                return Err(Fail(EXIT_USAGE, format!("width must be positive, got {s}")));
            }
            Ok(r)
        }
    }
}

fn interval(c: &Common) -> Result<XInterval, Fail> {
    Ok(XInterval::parse(&c.xlo, &c.xhi)?)
}

fn options(c: &Common, m: Option<u32>) -> Result<ProveOptions, Fail> {
    Ok(ProveOptions {
        m,
        box_width: positive(&c.width, default_box_width())?,
        cover_width: positive(&c.cover_width, default_cover_width())?,
    })
}

fn print_json(v: &Value) {
    outln!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn prove(src: &str, c: &Common, m: Option<u32>) -> Res {
    let t = parse_trig(src)?;
    let report = prove_report(src, &t, &interval(c)?, &options(c, m)?)?;
    match c.format {
        Format::Text => out!("{}", report.to_text()),
        Format::Structured => outln!("{}", report.to_json()),
    }
    Ok(report.status().exit_code() as u8)
}

fn expand(src: &str, format: Format) -> Res {
    let t = parse_trig(src)?;
    let e = t.expand();
    match format {
        Format::Text => {
            outln!("kind: {:?}", t.kind());
            outln!("B(y) = {}", e.cos_part.fmt_var("y"));
            outln!("A(y) = {}", e.sin_part.fmt_var("y"));
        }
        Format::Structured => print_json(&json!({
            "input": src,
            "normalized": t.render(),
            "kind": t.kind(),
            "cos_part": e.cos_part,
            "sin_part": e.sin_part,
        })),
    }
    Ok(0)
}

/// The polynomial whose roots locate sign changes, and what it is.
fn associated(t: &TrigPoly) -> Result<(Poly, &'static str), Fail> {
    let (b, a) = t.expand().rational().ok_or_else(|| {
        Fail(EXIT_USAGE, "irrational coefficients; use `pfloor` to get a rational bound".into())
    })?;
    Ok(match t.kind() {
        TrigKind::Mixed => (resolvent(&a, &b), "A^2(1-y^2) - B^2"),
        TrigKind::Sine => (a, "A(y)"),
        _ => (b, "B(y)"),
    })
}

fn y_range(c: &Common) -> Result<(Rational, Rational, bool), Fail> {
    let cov = cover(&interval(c)?, &positive(&c.cover_width, default_cover_width())?);
    Ok((cov.outer.lo().clone(), cov.outer.hi().clone(), cov.exact))
}

fn count(src: &str, c: &Common) -> Res {
    let t = parse_trig(src)?;
    let (p, what) = associated(&t)?;
    let (lo, hi, exact) = y_range(c)?;
    if p.is_zero() {
        return Err(Fail(EXIT_USAGE, format!("{what} is identically zero")));
    }
    let (n, v) = if p.degree() == Some(0) {
        (0, (0, 0))
    } else {
        let chain = SturmChain::new(&p)?;
        let at_lo = usize::from(p.sign_at(&lo) == 0);
        (
            chain.count(&lo, &hi) + at_lo,
            (chain.variations_at(&lo), chain.variations_at(&hi)),
        )
    };
    match c.format {
        Format::Text => {
            outln!("{what} = {}", p.fmt_var("y"));
            outln!("y-range [{lo}, {hi}]{}", if exact { "" } else { " (outer covering)" });
            outln!("sign variations {} at lo, {} at hi", v.0, v.1);
            outln!("distinct roots: {n}");
        }
        Format::Structured => print_json(&json!({
            "polynomial": p,
            "lo": lo.to_string(),
            "hi": hi.to_string(),
            "exact_range": exact,
            "variations": [v.0, v.1],
            "roots": n,
        })),
    }
    Ok(0)
}

fn isolate(src: &str, c: &Common) -> Res {
    let t = parse_trig(src)?;
    let (p, what) = associated(&t)?;
    let (lo, hi, _) = y_range(c)?;
    let width = positive(&c.width, default_box_width())?;
    if p.is_zero() {
        return Err(Fail(EXIT_USAGE, format!("{what} is identically zero")));
    }
    let mut boxes: Vec<RootBox> = Vec::new();
    if p.sign_at(&lo) == 0 {
        boxes.push(RootBox::new(lo.clone(), lo.clone()));
    }
    if p.degree().is_some_and(|d| d > 0) {
        boxes.extend(SturmChain::new(&p)?.isolate(&lo, &hi, &width));
    }
    match c.format {
        Format::Text => {
            outln!("{what} = {}", p.fmt_var("y"));
            for b in &boxes {
                let (l, h) = b.to_f64();
                outln!("({}, {}]  ~ ({l:.12}, {h:.12}]", b.lo, b.hi);
            }
            outln!("{} root(s) in [{lo}, {hi}]", boxes.len());
        }
        Format::Structured => print_json(&json!({
            "polynomial": p,
            "lo": lo.to_string(),
            "hi": hi.to_string(),
            "boxes": boxes,
        })),
    }
    Ok(0)
}

fn pfloor_cmd(src: &str, m: u32, keep_rational: bool, format: Format) -> Res {
    if m == 0 {
        return Err(Fail(EXIT_USAGE, "m must be at least 1".into()));
    }
    let t = parse_trig(src)?;
    let e = t.expand();
    let part = match t.kind() {
        TrigKind::Sine => e.sin_part,
        TrigKind::Mixed => return Err(Fail(EXIT_USAGE, "pfloor needs a pure sine or cosine polynomial".into())),
        _ => e.cos_part,
    };
    let lifted = part.shift(&rational::int(-1));
    let (q, exempt) = if keep_rational {
        lower_bound(&lifted, m)
    } else {
        (pfloor(&lifted, m), Vec::new())
    };
    let roots = if q.degree().is_some_and(|d| d > 0) {
        let two = rational::int(2);
        let zero = rational::int(0);
        Some(SturmChain::new(&q)?.count(&zero, &two))
    } else {
        None
    };
    match format {
        Format::Text => {
            outln!("P(z) = {}", lifted.fmt_var("z"));
            outln!("Q(z) = {}", q.fmt_var("z"));
            if !exempt.is_empty() {
                outln!("kept exactly at degrees {exempt:?}");
            }
            if let Some(n) = roots {
                outln!("distinct roots of Q in (0, 2]: {n}");
            }
        }
        Format::Structured => print_json(&json!({
            "m": m,
            "lifted": lifted,
            "bound": q,
            "exempt": exempt,
            "roots_in_0_2": roots,
        })),
    }
    Ok(0)
}

fn param(src: &str, c: &Common, seed: Option<&str>) -> Res {
    let f = match expr::parse(src).map_err(|e| Fail(EXIT_USAGE, format!("\n{}", e.annotate(src))))? {
        ExprAst::Family(f) => f,
        ExprAst::Trig(_) => return Err(Fail(EXIT_USAGE, "expression has no parameter `a`".into())),
    };
    let y = x_to_y(&interval(c)?, CoverMode::Exact)?;
    let result: Option<ParamInterval> = match seed {
        Some(s) => Some(maximal_interval(&f, &y, &parse_rational(s)?)?),
        None => nonnegative_set(&f, &y)?,
    };
    match c.format {
        Format::Text => match &result {
            None => outln!("no parameter value makes the family nonnegative"),
            Some(r) => {
                outln!("a in {r}");
                if let Some(lo) = &r.lo {
                    outln!("lower end: {lo} ({:?})", r.lo_kind);
                }
                if let Some(hi) = &r.hi {
                    outln!("upper end: {hi} ({:?})", r.hi_kind);
                }
                outln!("{} breakpoints, {} cells tested", r.breakpoints.len(), r.cells.len());
            }
        },
        Format::Structured => print_json(&json!({
            "input": src,
            "family": { "base": f.base.render(), "direction": f.direction.render() },
            "interval": result,
        })),
    }
    Ok(if result.is_some() { 0 } else { 1 })
}

fn repro(filter: &[String], format: Format) -> Res {
    let cases: Vec<_> = corpus::cases()
        .into_iter()
        .filter(|c| filter.is_empty() || filter.iter().any(|f| c.name.contains(f.as_str())))
        .collect();
    if cases.is_empty() {
        return Err(Fail(EXIT_USAGE, "no case matches".into()));
    }
    let out = corpus::run_cases(&cases);
    let all = out.iter().all(|o| o.passed);
    match format {
        Format::Text => print_table(&out),
        Format::Structured => print_json(&json!({ "all_passed": all, "cases": out })),
    }
    Ok(if all { 0 } else { 1 })
}

fn print_table(out: &[Outcome]) {
    let w = out.iter().map(|o| o.name.len()).max().unwrap_or(4).max(4);
    outln!("{:<w$}  {:<6}  {:>8}  {:<34}  observed", "case", "result", "ms", "expected");
    for o in out {
        let flag = match (o.passed, &o.warning) {
            (true, None) => "pass",
            (true, Some(_)) => "warn",
            (false, _) => "FAIL",
        };
        let variant = o.variant.as_deref().map(|v| format!(" [{v}]")).unwrap_or_default();
        outln!(
            "{:<w$}  {flag:<6}  {:>8}  {:<34}  {}{variant}",
            o.name, o.elapsed_ms, o.expected, o.observed
        );
        if let Some(wn) = &o.warning {
            outln!("{:<w$}  warning: {wn}", "");
        }
    }
    let passed = out.iter().filter(|o| o.passed).count();
    outln!("{passed}/{} cases passed", out.len());
}

fn verify(path: &str) -> Res {
    let text = fs::read_to_string(path)?;
    let report = ProofReport::from_json(&text)?;
    match report.recheck() {
        Ok(()) => {
            outln!("certificate ok: {} on x in {}", report.status(), report.proof.interval);
            Ok(0)
        }
        Err(e) => Err(Fail(1, e.to_string())),
    }
}
