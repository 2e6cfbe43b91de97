//! Command-line front end: reads an ideal file, runs one of the modular
//! algorithms and prints the result as text or JSON.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use parmod::assprimes::{ass_primes, primary_decomposition};
use parmod::engine::default_cores;
use parmod::modstd::{mod_std_traced, ModStdConfig, PhaseTimings, RoundTrace};
use parmod::poly::univariate::integer_to_rational;
use parmod::poly::{format_poly, parse_ideal_file, univariate_to_poly, Qq};
use parmod::unifactor::factor_rational_seeded;
use parmod::zerodim::zero_radical_traced;
use parmod::{Error, GroebnerBasis, Ideal, MonomialOrder};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_ALGORITHM: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "parmod", version, about = "Modular Gröbner bases, radicals and primary decomposition over ℚ")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduced Gröbner basis.
    Gb(Opts),
    /// Radical of a zero-dimensional ideal.
    Radical(Opts),
    /// Associated primes of a zero-dimensional ideal.
    Assprimes(Opts),
    /// Primary decomposition of a zero-dimensional ideal.
    Primary(Opts),
    /// Factorization of a univariate polynomial (one variable, one generator).
    Factor(Opts),
}

#[derive(Debug, Clone, Args)]
pub struct Opts {
    /// Ideal file, or `-` for stdin.
    pub input: PathBuf,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    pub cores: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Primes per round.
    #[arg(long, default_value_t = 10)]
    pub batch: usize,
    /// Skip the exact verification over ℚ.
    #[arg(long)]
    pub no_verify: bool,
    #[arg(long, default_value_t = 20)]
    pub max_rounds: usize,
    /// Print a JSON document instead of text.
    #[arg(long)]
    pub json: bool,
    /// Override the declared ordering (dp or lp).
    #[arg(long)]
    pub ordering: Option<String>,
}

impl Opts {
    pub fn config(&self) -> ModStdConfig {
        ModStdConfig {
            batch_size: self.batch,
            verify: !self.no_verify,
            max_rounds: self.max_rounds,
            seed: self.seed,
            cores: self.cores.unwrap_or_else(default_cores),
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Algebra(#[from] Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Usage(_) => EXIT_INPUT,
            CliError::Algebra(e) => match e {
                Error::Parse { .. }
                | Error::PositiveDimensional
                | Error::RingMismatch(_)
                | Error::ExponentOverflow
                | Error::Invalid(_) => EXIT_INPUT,
                _ => EXIT_ALGORITHM,
            },
        }
    }
}

/// Runs the command line `args` (including the program name) and returns
/// the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(&cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn read_input(opts: &Opts) -> Result<Ideal<Qq>, CliError> {
    let text = if opts.input.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Io(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(&opts.input).map_err(|e| CliError::Io(format!("{}: {e}", opts.input.display())))?
    };
    let ordering = match opts.ordering.as_deref() {
        None => None,
        Some(name) => Some(
            MonomialOrder::from_name(name)
                .ok_or_else(|| CliError::Usage(format!("unknown ordering '{name}' (expected dp or lp)")))?,
        ),
    };
    Ok(parse_ideal_file(&text, ordering)?)
}

fn basis_strings(gb: &GroebnerBasis<Qq>) -> Vec<String> {
    gb.elements().iter().map(|f| format_poly(gb.ring(), f)).collect()
}

fn rounds_json(rounds: &[RoundTrace]) -> Value {
    Value::Array(
        rounds
            .iter()
            .map(|r| {
                json!({
                    "round": r.round,
                    "primes_total": r.primes_total,
                    "primes_kept": r.primes_kept,
                    "outcome": format!("{:?}", r.outcome),
                })
            })
            .collect(),
    )
}

fn phase_json(t: &PhaseTimings) -> Value {
    json!({
        "modular": t.modular.as_secs_f64(),
        "lift": t.lift.as_secs_f64(),
        "test": t.test.as_secs_f64(),
        "verify": t.verify.as_secs_f64(),
    })
}

struct Report {
    text: Vec<String>,
    result: Value,
    rounds: Value,
    phases: Value,
}

fn execute(command: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let (name, opts) = match command {
        Command::Gb(o) => ("gb", o),
        Command::Radical(o) => ("radical", o),
        Command::Assprimes(o) => ("assprimes", o),
        Command::Primary(o) => ("primary", o),
        Command::Factor(o) => ("factor", o),
    };
    let ideal = read_input(opts)?;
    let config = opts.config();
    let start = Instant::now();
    let report = match command {
        Command::Gb(_) => gb(&ideal, &config)?,
        Command::Radical(_) => radical(&ideal, &config)?,
        Command::Assprimes(_) => assprimes(&ideal, &config)?,
        Command::Primary(_) => primary(&ideal, &config)?,
        Command::Factor(_) => factor(&ideal, &config)?,
    };
    let total = start.elapsed();
    let ring = ideal.ring();
    if opts.json {
        let doc = json!({
            "command": name,
            "ring": { "variables": ring.vars(), "ordering": ring.order().name() },
            "generators": ideal.generators().iter().map(|g| format_poly(ring, g)).collect::<Vec<_>>(),
            "seed": config.seed,
            "result": report.result,
            "rounds": report.rounds,
            "timings": { "total": total.as_secs_f64(), "phases": report.phases },
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable"))
            .map_err(|e| CliError::Io(e.to_string()))?;
    } else {
        for line in &report.text {
            writeln!(out, "{line}").map_err(|e| CliError::Io(e.to_string()))?;
        }
        let _ = writeln!(err, "time: {}", fmt_duration(total));
    }
    Ok(())
}

fn fmt_duration(d: Duration) -> String {
    format!("{:.3}s", d.as_secs_f64())
}

fn gb(ideal: &Ideal<Qq>, config: &ModStdConfig) -> Result<Report, CliError> {
    let out = mod_std_traced(ideal, config)?;
    let basis = basis_strings(&out.basis);
    Ok(Report {
        text: basis.clone(),
        result: json!(basis),
        rounds: json!({ "gb": rounds_json(&out.rounds) }),
        phases: json!({ "gb": phase_json(&out.timings) }),
    })
}

fn radical(ideal: &Ideal<Qq>, config: &ModStdConfig) -> Result<Report, CliError> {
    let dp = ideal.ring().with_order(MonomialOrder::DegRevLex);
    let dp_ideal = Ideal::new(dp.clone(), ideal.generators().iter().map(|g| dp.reorder(g)).collect());
    let first = mod_std_traced(&dp_ideal, config)?;
    let rad = zero_radical_traced(&first.basis, config)?;
    let basis = basis_strings(&rad.basis);
    Ok(Report {
        text: basis.clone(),
        result: json!(basis),
        rounds: json!({
            "gb": rounds_json(&first.rounds),
            "radical": rounds_json(&rad.rounds),
            "final": rounds_json(&rad.final_gb.rounds),
        }),
        phases: json!({ "gb": phase_json(&first.timings), "final": phase_json(&rad.final_gb.timings) }),
    })
}

fn assprimes(ideal: &Ideal<Qq>, config: &ModStdConfig) -> Result<Report, CliError> {
    let res = ass_primes(ideal, config)?;
    let primes: Vec<Vec<String>> = res.primes.iter().map(basis_strings).collect();
    let ring = ideal.ring().with_order(MonomialOrder::DegRevLex);
    let text = primes.iter().enumerate().map(|(i, p)| format!("M{}: {}", i + 1, p.join(", "))).collect();
    let t = ring.with_prepended_vars(&["T"], MonomialOrder::DegRevLex);
    let f_text = format_poly(&t, &univariate_to_poly(&t, &res.f, 0));
    Ok(Report {
        text,
        result: json!({
            "primes": primes,
            "linear_form": res.linear_form.coeffs(),
            "minimal_polynomial": f_text,
            "radical_taken": res.radical_taken,
            "stagnations": res.stagnations,
            "recursed": res.recursed,
        }),
        rounds: json!({ "assprimes": rounds_json(&res.rounds) }),
        phases: json!({}),
    })
}

fn primary(ideal: &Ideal<Qq>, config: &ModStdConfig) -> Result<Report, CliError> {
    let comps = primary_decomposition(ideal, config)?;
    let mut text = Vec::new();
    let mut result = Vec::new();
    for (i, c) in comps.iter().enumerate() {
        let q = basis_strings(&c.primary);
        let m = basis_strings(&c.associated_prime);
        text.push(format!("Q{}: {}", i + 1, q.join(", ")));
        text.push(format!("M{}: {}", i + 1, m.join(", ")));
        result.push(json!({ "primary": q, "associated_prime": m }));
    }
    Ok(Report { text, result: json!(result), rounds: json!({}), phases: json!({}) })
}

fn factor(ideal: &Ideal<Qq>, config: &ModStdConfig) -> Result<Report, CliError> {
    let ring = ideal.ring();
    let [f] = ideal.generators() else {
        return Err(CliError::Usage("factor expects exactly one generator".into()));
    };
    if ring.nvars() != 1 {
        return Err(CliError::Usage("factor expects a ring with one variable".into()));
    }
    let uni = parmod::poly::poly_to_univariate(ring, f, 0).expect("one variable");
    let fac = factor_rational_seeded(&uni, config.seed)?;
    let mut text = vec![format!("unit: {}", fac.unit)];
    let mut factors = Vec::new();
    for (g, m) in &fac.factors {
        let s = format_poly(ring, &univariate_to_poly(ring, &integer_to_rational(g), 0));
        text.push(format!("({s})^{m}"));
        factors.push(json!({ "factor": s, "multiplicity": m }));
    }
    Ok(Report {
        text,
        result: json!({ "unit": fac.unit.to_string(), "factors": factors }),
        rounds: json!({}),
        phases: json!({}),
    })
}
