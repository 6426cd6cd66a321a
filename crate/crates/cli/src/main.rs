//! Command-line harness over the simulation library: runs the experiments
//! and writes deterministic CSV/JSON traces suitable for plotting.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cohsim_core::dj::{balanced_coherence_extremes, run_dj, DjFunction, DjKind, DjVerdict};
use cohsim_core::grover::{min_coherence_vs_solutions, run_trace, GroverConfig, MinCoherenceRow};
use cohsim_core::order::{recover_order, run_qof, shor_factor, FactorMethod, QofConfig, ShorOutcome};
use cohsim_core::Error;

const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Exit codes: 0 success, 2 usage or validation, 3 capacity guard.
const EXIT_USAGE: u8 = 2;
const EXIT_CAPACITY: u8 = 3;

#[derive(Parser)]
#[command(name = "cohsim", version, about = "Coherence-tracking statevector experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Grover search: per-iteration coherence trace and success probability.
    Grover {
        #[arg(long)]
        qubits: usize,
        /// Number of marked solutions (the first M basis states).
        #[arg(long)]
        solutions: u64,
        /// Trace length; defaults to 2k* + 5.
        #[arg(long)]
        iterations: Option<usize>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Minimal trace coherence for each solution count in a sweep.
    MinCoherence {
        #[arg(long)]
        qubits: usize,
        /// Comma-separated solution counts, e.g. 1,2,4,8,16.
        #[arg(long)]
        solutions_list: String,
        /// Fan the sweep across threads; output order is unchanged.
        #[arg(long)]
        parallel: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Deutsch-Jozsa: one run, or exhaustive balanced enumeration.
    Dj {
        #[arg(long)]
        qubits: usize,
        /// constant:0 | constant:1 | balanced:<bitstring> | enumerate
        #[arg(long)]
        function: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Quantum order finding, optionally the full factoring wrapper.
    Qof {
        #[arg(long, requires = "modulus")]
        base: Option<u64>,
        #[arg(long, requires = "base")]
        modulus: Option<u64>,
        /// Phase-estimation failure budget; sets t when --t is absent.
        #[arg(long, conflicts_with = "t")]
        epsilon: Option<f64>,
        /// First-register width in qubits.
        #[arg(long)]
        t: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Measurement samples fed to order recovery.
        #[arg(long, default_value_t = 10)]
        samples: usize,
        /// Run the end-to-end factoring wrapper on this composite.
        #[arg(long)]
        factor: Option<u64>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::Capacity { .. } => EXIT_CAPACITY,
            _ => EXIT_USAGE,
        };
        let message = match err {
            Error::InvalidBase { base, modulus, gcd } => format!(
                "base {base} is not coprime to modulus {modulus}: \
                 gcd = {gcd} is already a nontrivial factor of {modulus}"
            ),
            other => other.to_string(),
        };
        Self { code, message }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = err.print();
                return ExitCode::SUCCESS;
            }
            eprintln!("{err}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Grover { qubits, solutions, iterations, format, output } => {
            cmd_grover(qubits, solutions, iterations, format, &output)
        }
        Command::MinCoherence { qubits, solutions_list, parallel, format, output } => {
            cmd_min_coherence(qubits, &solutions_list, parallel, format, &output)
        }
        Command::Dj { qubits, function, output } => cmd_dj(qubits, &function, &output),
        Command::Qof { base, modulus, epsilon, t, seed, samples, factor, output } => {
            cmd_qof(base.zip(modulus), epsilon, t, seed, samples, factor, &output)
        }
    }
}

/// 17-significant-digit decimal form; round-trips f64 exactly.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn emit(output: &OutputArgs, content: &str) -> Result<(), Failure> {
    match &output.out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn metadata_json(algorithm: &str, parameters: &[(&str, String)]) -> String {
    let mut s = String::new();
    let _ = write!(s, "  \"metadata\": {{\n    \"algorithm\": \"{algorithm}\",");
    let _ = write!(s, "\n    \"version\": \"{VERSION}\",\n    \"parameters\": {{");
    for (i, (key, value)) in parameters.iter().enumerate() {
        let sep = if i == 0 { "" } else { "," };
        let _ = write!(s, "{sep}\n      \"{key}\": {value}");
    }
    s.push_str("\n    }\n  }");
    s
}

fn cmd_grover(
    qubits: usize,
    solutions: u64,
    iterations: Option<usize>,
    format: Format,
    output: &OutputArgs,
) -> Result<(), Failure> {
    let mut config = GroverConfig::with_leading_solutions(qubits, solutions)?;
    if let Some(k_max) = iterations {
        config = config.with_k_max(k_max);
    }
    let rows = run_trace(&config)?;

    let content = match format {
        Format::Csv => {
            let mut s = String::from("k,c_r_closed,c_l1_closed,c_r_sim,c_l1_sim,p_success,c_l1_log\n");
            for row in &rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{}",
                    row.k,
                    num(row.c_r_closed),
                    num(row.c_l1_closed),
                    num(row.c_r_sim),
                    num(row.c_l1_sim),
                    num(row.p_success),
                    num((row.c_l1_sim + 1.0).log2()),
                );
            }
            s
        }
        Format::Json => {
            let meta = metadata_json(
                "grover",
                &[
                    ("qubits", qubits.to_string()),
                    ("solutions", solutions.to_string()),
                    ("iterations", config.k_max().to_string()),
                ],
            );
            let mut s = format!("{{\n{meta},\n  \"rows\": [");
            for (i, row) in rows.iter().enumerate() {
                let sep = if i == 0 { "" } else { "," };
                let _ = write!(
                    s,
                    "{sep}\n    {{\"k\": {}, \"c_r_closed\": {}, \"c_l1_closed\": {}, \
                     \"c_r_sim\": {}, \"c_l1_sim\": {}, \"p_success\": {}, \"c_l1_log\": {}}}",
                    row.k,
                    num(row.c_r_closed),
                    num(row.c_l1_closed),
                    num(row.c_r_sim),
                    num(row.c_l1_sim),
                    num(row.p_success),
                    num((row.c_l1_sim + 1.0).log2()),
                );
            }
            s.push_str("\n  ]\n}\n");
            s
        }
    };
    emit(output, &content)
}

fn parse_solution_list(list: &str) -> Result<Vec<u64>, Failure> {
    let mut ms = Vec::new();
    for part in list.split(',') {
        let m: u64 = part
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("invalid solution count '{part}'")))?;
        if ms.contains(&m) {
            eprintln!("warning: duplicate solution count M={m} ignored");
        } else {
            ms.push(m);
        }
    }
    if ms.is_empty() {
        return Err(Failure::usage("empty solution list"));
    }
    ms.sort_unstable();
    Ok(ms)
}

fn cmd_min_coherence(
    qubits: usize,
    solutions_list: &str,
    parallel: bool,
    format: Format,
    output: &OutputArgs,
) -> Result<(), Failure> {
    let ms = parse_solution_list(solutions_list)?;
    let rows: Vec<MinCoherenceRow> = if parallel {
        // One thread per M; rows come back in list order regardless of
        // completion order.
        let results = std::thread::scope(|scope| {
            let handles: Vec<_> = ms
                .iter()
                .map(|&m| scope.spawn(move || min_coherence_vs_solutions(qubits, &[m])))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("sweep thread panicked"))
                .collect::<Vec<_>>()
        });
        let mut rows = Vec::with_capacity(ms.len());
        for result in results {
            rows.extend(result?);
        }
        rows
    } else {
        min_coherence_vs_solutions(qubits, &ms)?
    };

    let content = match format {
        Format::Csv => {
            let mut s = String::from("M,log2M,min_c_r,min_c_l1\n");
            for row in &rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{}",
                    row.m,
                    num((row.m as f64).log2()),
                    num(row.min_c_r),
                    num(row.min_c_l1),
                );
            }
            s
        }
        Format::Json => {
            let meta = metadata_json(
                "grover-min-coherence",
                &[
                    ("qubits", qubits.to_string()),
                    ("solutions_list", format!("\"{}\"", join(&ms))),
                ],
            );
            let mut s = format!("{{\n{meta},\n  \"rows\": [");
            for (i, row) in rows.iter().enumerate() {
                let sep = if i == 0 { "" } else { "," };
                let _ = write!(
                    s,
                    "{sep}\n    {{\"m\": {}, \"log2_m\": {}, \"min_c_r\": {}, \"min_c_l1\": {}}}",
                    row.m,
                    num((row.m as f64).log2()),
                    num(row.min_c_r),
                    num(row.min_c_l1),
                );
            }
            s.push_str("\n  ]\n}\n");
            s
        }
    };
    emit(output, &content)
}

fn join(ms: &[u64]) -> String {
    ms.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn cmd_dj(qubits: usize, function: &str, output: &OutputArgs) -> Result<(), Failure> {
    if function == "enumerate" {
        let ext = balanced_coherence_extremes(qubits)?;
        let meta = metadata_json(
            "deutsch-jozsa",
            &[
                ("qubits", qubits.to_string()),
                ("function", "\"enumerate\"".to_string()),
            ],
        );
        let content = format!(
            "{{\n{meta},\n  \"result\": {{\n    \"tables_enumerated\": {},\n    \
             \"max_c_r\": {},\n    \"max_c_l1\": {},\n    \"argmax_c_r\": \"{}\",\n    \
             \"argmax_c_l1\": \"{}\"\n  }}\n}}\n",
            ext.tables_enumerated,
            num(ext.max_c_r),
            num(ext.max_c_l1),
            ext.argmax_c_r,
            ext.argmax_c_l1,
        );
        return emit(output, &content);
    }

    let f = match function {
        "constant:0" => DjFunction::constant(qubits, false)?,
        "constant:1" => DjFunction::constant(qubits, true)?,
        _ => match function.strip_prefix("balanced:") {
            Some(bits) => {
                let f = DjFunction::from_bitstring(qubits, bits)?;
                if f.kind() != DjKind::Balanced {
                    return Err(Failure::usage(format!(
                        "table {bits} is not balanced: it has {} ones out of {}",
                        f.table().iter().filter(|&&b| b).count(),
                        f.table().len()
                    )));
                }
                f
            }
            None => {
                return Err(Failure::usage(format!(
                    "unknown function '{function}'; expected constant:0, constant:1, \
                     balanced:<bitstring> or enumerate"
                )))
            }
        },
    };
    let outcome = run_dj(&f)?;
    let verdict = match outcome.verdict {
        DjVerdict::Constant => "constant",
        DjVerdict::Balanced => "balanced",
    };
    let meta = metadata_json(
        "deutsch-jozsa",
        &[
            ("qubits", qubits.to_string()),
            ("function", format!("\"{function}\"")),
        ],
    );
    let mut stages = String::new();
    for (i, stage) in outcome.stages.iter().enumerate() {
        let sep = if i == 0 { "" } else { "," };
        let _ = write!(
            stages,
            "{sep}\n      {{\"c_r\": {}, \"c_l1\": {}}}",
            num(stage.c_r),
            num(stage.c_l1)
        );
    }
    let content = format!(
        "{{\n{meta},\n  \"result\": {{\n    \"verdict\": \"{verdict}\",\n    \
         \"p_zero\": {},\n    \"stages\": [{stages}\n    ]\n  }}\n}}\n",
        num(outcome.p_zero),
    );
    emit(output, &content)
}

fn cmd_qof(
    base_modulus: Option<(u64, u64)>,
    epsilon: Option<f64>,
    t: Option<usize>,
    seed: u64,
    samples: usize,
    factor: Option<u64>,
    output: &OutputArgs,
) -> Result<(), Failure> {
    if base_modulus.is_none() && factor.is_none() {
        return Err(Failure::usage("either --base/--modulus or --factor is required"));
    }

    let mut sections = Vec::new();
    let mut parameters = Vec::new();

    if let Some((base, modulus)) = base_modulus {
        let config = match t {
            Some(t) => QofConfig::with_t(base, modulus, t)?,
            None => QofConfig::new(base, modulus, epsilon.unwrap_or(0.25))?,
        };
        parameters.push(("base", base.to_string()));
        parameters.push(("modulus", modulus.to_string()));
        parameters.push(("t", config.t.to_string()));
        parameters.push(("seed", seed.to_string()));
        parameters.push(("samples", samples.to_string()));

        let outcome = run_qof(&config)?;
        let mut stages = String::new();
        for (i, stage) in outcome.stages.iter().enumerate() {
            let sep = if i == 0 { "" } else { "," };
            let _ = write!(
                stages,
                "{sep}\n    {{\"c_r\": {}, \"c_l1\": {}}}",
                num(stage.c_r),
                num(stage.c_l1)
            );
        }
        sections.push(format!("  \"stages\": [{stages}\n  ]"));

        // Sparse histogram: outcomes below 1e-12 are IQFT roundoff.
        let mut histogram = String::new();
        let mut first = true;
        for (j, &p) in outcome.distribution.iter().enumerate() {
            if p <= 1e-12 {
                continue;
            }
            let sep = if first { "" } else { "," };
            first = false;
            let _ = write!(histogram, "{sep}\n    {{\"j\": {j}, \"p\": {}}}", num(p));
        }
        sections.push(format!("  \"histogram\": [{histogram}\n  ]"));

        let recovery = recover_order(&config, samples, seed)?;
        let mut transcripts = String::new();
        for (i, sample) in recovery.transcripts.iter().enumerate() {
            let sep = if i == 0 { "" } else { "," };
            let convergents = sample
                .convergents
                .iter()
                .map(|&(h, k)| format!("[{h}, {k}]"))
                .collect::<Vec<_>>()
                .join(", ");
            let candidate = match sample.candidate_order {
                Some(r) => r.to_string(),
                None => "null".to_string(),
            };
            let _ = write!(
                transcripts,
                "{sep}\n    {{\"measured\": {}, \"convergents\": [{convergents}], \
                 \"candidate_order\": {candidate}}}",
                sample.measured,
            );
        }
        sections.push(format!("  \"samples\": [{transcripts}\n  ]"));
        let order = match recovery.order {
            Some(r) => r.to_string(),
            None => "null".to_string(),
        };
        sections.push(format!("  \"order\": {order}"));
    }

    if let Some(n) = factor {
        parameters.push(("factor", n.to_string()));
        if base_modulus.is_none() {
            parameters.push(("seed", seed.to_string()));
        }
        let outcome = shor_factor(n, seed, 30)?;
        let body = match outcome {
            ShorOutcome::Factors { p, q, method, attempts } => {
                let method = match method {
                    FactorMethod::EvenShortcut => "even-shortcut",
                    FactorMethod::PrimePower => "prime-power",
                    FactorMethod::LuckyGcd => "lucky-gcd",
                    FactorMethod::OrderFinding => "order-finding",
                };
                format!(
                    "\"factors\": [{p}, {q}], \"method\": \"{method}\", \"attempts\": {attempts}"
                )
            }
            ShorOutcome::Failure { attempts } => {
                format!("\"factors\": null, \"attempts\": {attempts}")
            }
        };
        sections.push(format!("  \"factoring\": {{{body}}}"));
    }

    let meta = metadata_json("order-finding", &parameters);
    let content = format!("{{\n{meta},\n{}\n}}\n", sections.join(",\n"));
    emit(output, &content)
}
