use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ncis_core::dbracket::{double_bracket, loday_bracket, taylor_flow};
use ncis_core::lax::span_experiment;
use ncis_core::numrep::{run_simulation, NumericRep, SimConfig};
use ncis_core::suite::{run_suite, Suite, VerifyConfig};
use ncis_core::{
    casimir_c, casimir_c_inv, hamiltonian_h, parse_element, project, AlgebraElement, Error, Execution, Guard,
};

/// Exact computations in the free group algebra on `u`, `v` and numerical
/// checks of the associated matrix flow. Expression arguments use `u`, `v`,
/// `u^-1`, `v^-1`, `*`, `+`, `-` and rational coefficients; `h`, `c` and
/// `c^-1` may be given as a whole argument.
#[derive(Parser, Debug)]
#[command(name = "ncis", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Write the output to a file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Run everything on one thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Double bracket `<<a (x) b>>` or Loday bracket `{a, b}`.
    Bracket {
        a: String,
        b: String,
        #[arg(long, value_enum, default_value_t = Mode::Loday)]
        mode: Mode,
    },
    /// Taylor coefficients `[x, D x, D^2 x, ...]` of the flow `D = {H, .}`.
    Flow {
        h: String,
        x: String,
        #[arg(long, default_value_t = 1)]
        order: usize,
    },
    /// Seeded property runs of the bracket identities.
    Verify(VerifyArgs),
    /// Integrate the matrix equations of motion and measure drift.
    Simulate(SimArgs),
    /// Membership of the traces of powers of `L` in the span of `h`, `c`, `c^-1`.
    Span {
        #[arg(long, default_value_t = 3)]
        kmax: u32,
        /// Degree bound for the basis; defaults to the longest cyclic word among the traces.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Normal form of an expression, optionally projected or evaluated numerically.
    Eval {
        expr: String,
        /// Project to the cyclic space.
        #[arg(long)]
        project: bool,
        /// Evaluate in a random N x N representation.
        #[arg(long)]
        matrix: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Mode {
    Double,
    Loday,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(default_value = "all")]
    suite: Suite,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 5)]
    max_len: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest N + M for the involution check.
    #[arg(long, default_value_t = 8)]
    involution_degree: u32,
}

#[derive(Args, Debug)]
struct SimArgs {
    /// JSON file with any subset of the configuration fields; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    t: Option<f64>,
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    k_max: Option<u32>,
    /// Spectral parameter as `re,im`; repeat for several.
    #[arg(long = "lambda", value_parser = parse_complex)]
    lambdas: Vec<[f64; 2]>,
    #[arg(long)]
    stride: Option<usize>,
}

fn parse_complex(s: &str) -> Result<[f64; 2], String> {
    let (re, im) = s.split_once(',').unwrap_or((s, "0"));
    let p = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("'{x}': {e}"));
    Ok([p(re)?, p(im)?])
}

enum Failure {
    Identity(String),
    Input(String),
    Guard(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Identity(_) => 1,
            Failure::Input(_) => 2,
            Failure::Guard(_) => 3,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Guard(_) => Failure::Guard(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<ncis_core::ParseError> for Failure {
    fn from(e: ncis_core::ParseError) -> Self {
        Failure::Input(e.to_string())
    }
}

struct Output {
    json: Value,
    text: String,
    /// Set when the command ran but an identity did not hold.
    failed: Option<String>,
}

/// Expressions in `u`, `v`; the whole argument may also be one of the named
/// elements `h`, `c`, `c^-1`.
fn parse(s: &str) -> Result<AlgebraElement, Failure> {
    Ok(match s.trim() {
        "h" => hamiltonian_h(),
        "c" => casimir_c(),
        "c^-1" => casimir_c_inv(),
        other => parse_element(other)?,
    })
}

fn strings(xs: &[AlgebraElement]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn bracket(a: &str, b: &str, mode: Mode) -> Result<Output, Failure> {
    let (x, y) = (parse(a)?, parse(b)?);
    let (name, result) = match mode {
        Mode::Double => ("double", double_bracket(&x, &y).to_string()),
        Mode::Loday => ("loday", loday_bracket(&x, &y).to_string()),
    };
    Ok(Output {
        json: json!({ "mode": name, "a": x.to_string(), "b": y.to_string(), "result": result }),
        text: result,
        failed: None,
    })
}

fn flow(h: &str, x: &str, order: usize) -> Result<Output, Failure> {
    let coeffs = strings(&taylor_flow(&parse(h)?, &parse(x)?, order));
    Ok(Output {
        text: format!("[{}]", coeffs.join(", ")),
        json: json!({ "h": h, "x": x, "order": order, "coefficients": coeffs }),
        failed: None,
    })
}

fn verify(args: &VerifyArgs, exec: Execution) -> Result<Output, Failure> {
    let cfg = VerifyConfig {
        suite: args.suite,
        samples: args.samples,
        max_len: args.max_len,
        seed: args.seed,
        involution_degree: args.involution_degree,
        ..VerifyConfig::default()
    };
    let report = run_suite(&cfg, &Guard::from_env(), exec)?;
    let mut lines = Vec::new();
    for c in &report.checks {
        lines.push(format!(
            "{} {} samples={} failures={} max_residual_terms={} ({:.0} ms)",
            if c.passed { "PASS" } else { "FAIL" },
            c.identity,
            c.samples,
            c.failures,
            c.max_residual_terms,
            c.elapsed_ms
        ));
        for n in &c.notes {
            lines.push(format!("    {n}"));
        }
        if let Some(ce) = &c.counterexample {
            let at = ce.index.map(|i| format!(" (sample {i}, seed {})", c.seed)).unwrap_or_default();
            lines.push(format!("    counterexample{at}: inputs [{}]", ce.inputs.join("; ")));
            lines.push(format!("    residual: {}", ce.residual));
        }
    }
    let failed = report.first_failure().map(|c| format!("identity '{}' failed", c.identity));
    Ok(Output {
        json: serde_json::to_value(&report).expect("report serializes"),
        text: lines.join("\n"),
        failed,
    })
}

fn simulate(args: &SimArgs, exec: Execution) -> Result<Output, Failure> {
    let mut cfg = match &args.config {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
            serde_json::from_str::<SimConfig>(&text).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?
        }
        None => SimConfig::default(),
    };
    macro_rules! set {
        ($($f:ident),*) => { $( if let Some(x) = args.$f { cfg.$f = x; } )* };
    }
    set!(n, t, dt, seed, k_max, stride);
    if !args.lambdas.is_empty() {
        cfg.lambda_samples = args.lambdas.clone();
    }
    let r = run_simulation(&cfg, exec)?;
    let c = &r.conservation;
    let mut lines = vec![format!("N={} T={} dt={} seed={}", cfg.n, cfg.t, cfg.dt, cfg.seed)];
    for s in c.trace_powers.iter().chain([&c.h_spectrum, &c.casimir, &c.casimir_spectrum]).chain(&c.lax_spectrum) {
        lines.push(format!("max relative drift {:<28} {:.3e}", s.quantity, s.max));
    }
    lines.push(format!(
        "convergence order {:.3} (dts {:?}, drifts {:?})",
        r.convergence_order, r.convergence.dts, r.convergence.drifts
    ));
    lines.push(format!("backlund max deviation {:.3e}", r.backlund.max_deviation));
    Ok(Output {
        json: serde_json::to_value(&r).expect("report serializes"),
        text: lines.join("\n"),
        failed: None,
    })
}

fn span(kmax: u32, degree: Option<usize>) -> Result<Output, Failure> {
    let r = span_experiment(kmax, degree, &Guard::from_env())?;
    let mut lines = vec![format!("degree bound {}, basis [{}]", r.degree_bound, r.basis.join(", "))];
    for e in &r.entries {
        let coords = e
            .coordinates
            .as_ref()
            .map(|c| c.iter().map(|(k, v)| format!("{v}*{k}")).collect::<Vec<_>>().join(" + "))
            .unwrap_or_else(|| "-".into());
        lines.push(format!(
            "k={} lambda^{:<3} member={} conserved={} {}",
            e.k, e.lambda_exp, e.member, e.conserved, coords
        ));
    }
    let failed = (!r.all_members()).then(|| "some trace coefficient is outside the span".to_string());
    Ok(Output {
        json: serde_json::to_value(&r).expect("report serializes"),
        text: lines.join("\n"),
        failed,
    })
}

fn eval(expr: &str, proj: bool, matrix: Option<usize>, seed: u64) -> Result<Output, Failure> {
    let e = parse(expr)?;
    let mut json = json!({ "input": expr, "normal_form": e.to_string() });
    let mut text = e.to_string();
    if proj {
        let p = project(&e);
        json["projection"] = p.to_json();
        text = format!("{text}\npi: {p}");
    }
    if let Some(n) = matrix {
        if n == 0 {
            return Err(Failure::Input("matrix size must be at least 1".into()));
        }
        let m = NumericRep::random(n, seed).evaluate(&e);
        let rows: Vec<Vec<[f64; 2]>> = (0..n).map(|i| (0..n).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect();
        json["matrix"] = json!({ "n": n, "seed": seed, "entries": rows });
        text = format!("{text}\n{m}");
    }
    Ok(Output { json, text, failed: None })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::auto()
    };
    match &cli.command {
        Command::Bracket { a, b, mode } => bracket(a, b, *mode),
        Command::Flow { h, x, order } => flow(h, x, *order),
        Command::Verify(args) => verify(args, exec),
        Command::Simulate(args) => simulate(args, exec),
        Command::Span { kmax, degree } => span(*kmax, *degree),
        Command::Eval {
            expr,
            project,
            matrix,
            seed,
        } => eval(expr, *project, *matrix, *seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli) {
        Ok(o) => o,
        Err(f) => {
            let msg = match &f {
                Failure::Identity(m) | Failure::Input(m) | Failure::Guard(m) => m,
            };
            if cli.json {
                println!("{}", json!({ "error": msg, "exit_code": f.code() }));
            }
            eprintln!("error: {msg}");
            return ExitCode::from(f.code());
        }
    };
    let body = if cli.json {
        serde_json::to_string_pretty(&out.json).expect("json")
    } else {
        out.text
    };
    match &cli.output {
        Some(p) => {
            if let Err(e) = fs::write(p, format!("{body}\n")) {
                eprintln!("error: {}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
        None => println!("{body}"),
    }
    match out.failed {
        Some(m) => {
            eprintln!("{m}");
            ExitCode::from(Failure::Identity(m).code())
        }
        None => ExitCode::SUCCESS,
    }
}
