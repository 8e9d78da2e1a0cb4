//! `maxsym`: build canonical algebras and run every checker from the shell.
//!
//! Reports are JSON on stdout (or `--output`); the one-line summary goes to stderr.
//! Exit codes: 0 success or certified, 1 hypothesis failed, 2 inconclusive or
//! cap exceeded, 3 malformed input.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::json;

use maxsym_core::maxsym::DEFAULT_SUBGROUP_CAP;
use maxsym_core::quasi_unit::DEFAULT_CENTER_CAP;
use maxsym_core::schur::DEFAULT_TENSOR_CAP;
use maxsym_core::{CheckOptions, Error, DEFAULT_SEED};

use commands::Inputs;
use report::{Envelope, Outcome};

#[derive(Parser)]
#[command(name = "maxsym", version, about = "Exact checks for symmetric algebras and lattice sandwiches")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,

    /// Write the JSON here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Seed for every randomized search.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    /// Put wall-clock time into the report. Reports stop being byte-identical across runs.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Verb {
    /// Canonical algebra A_ell as algebra JSON.
    BuildAell {
        #[arg(long)]
        ell: usize,
        #[arg(long, default_value = "Z")]
        base: String,
    },
    /// Canonical algebra Ã_ell as algebra JSON.
    BuildAtilde {
        #[arg(long)]
        ell: usize,
        #[arg(long, default_value = "Z")]
        base: String,
    },
    /// Generalized Schur algebra S^A(n, d) with its embedding and weight idempotents.
    BuildSchur {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// Largest tensor-power rank to build.
        #[arg(long, default_value_t = DEFAULT_TENSOR_CAP)]
        cap: u128,
    },
    /// Symmetrizing, degree-N and perfectness checks for a linear form.
    CheckForm {
        #[arg(long)]
        algebra: PathBuf,
        /// Comma-separated rational coefficients; the canonical form when omitted.
        #[arg(long)]
        form: Option<String>,
        /// Degree N of the form; the algebra's top degree when omitted.
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Exhaustive quasi-unit test over F_p.
    CheckQuasiunit {
        #[arg(long)]
        algebra: PathBuf,
        /// A basis label or comma-separated coordinates.
        #[arg(long)]
        element: String,
        /// Reduce a Z-algebra mod this prime first.
        #[arg(long)]
        prime: Option<u64>,
        /// Largest centre to enumerate.
        #[arg(long, default_value_t = DEFAULT_CENTER_CAP)]
        cap: u128,
        /// Work in the degree-zero subalgebra.
        #[arg(long)]
        degree_zero: bool,
    },
    /// Idempotent-decomposition certificate that the first part is a quasi-unit.
    CertifyQuasiunit {
        #[arg(long)]
        algebra: PathBuf,
        /// JSON list of elements, or a build-schur output.
        #[arg(long)]
        decomposition: PathBuf,
        /// Move this part to the front.
        #[arg(long)]
        first: Option<usize>,
        /// JSON list of candidate generators, one per remaining part.
        #[arg(long)]
        generators: Option<PathBuf>,
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long)]
        degree_zero: bool,
    },
    /// Maximal-symmetricity check of a sandwich T ⊆ S.
    CheckMaxsym {
        #[arg(long)]
        sandwich: PathBuf,
        /// Largest centre to enumerate per prime.
        #[arg(long, default_value_t = DEFAULT_CENTER_CAP)]
        cap: u128,
    },
    /// Enumerate every intermediate lattice with p-group quotient and test it for symmetry.
    OracleIntermediate {
        #[arg(long)]
        sandwich: PathBuf,
        #[arg(long)]
        prime: u64,
        /// Largest p-part of S/T to enumerate.
        #[arg(long, default_value_t = DEFAULT_SUBGROUP_CAP)]
        subgroup_cap: u64,
        #[arg(long, default_value_t = DEFAULT_CENTER_CAP)]
        cap: u128,
    },
    /// Parse, validate and round-trip an algebra or sandwich document.
    Validate {
        #[arg(long)]
        algebra: Option<PathBuf>,
        #[arg(long)]
        sandwich: Option<PathBuf>,
    },
}

impl Verb {
    fn name(&self) -> &'static str {
        match self {
            Verb::BuildAell { .. } => "build-aell",
            Verb::BuildAtilde { .. } => "build-atilde",
            Verb::BuildSchur { .. } => "build-schur",
            Verb::CheckForm { .. } => "check-form",
            Verb::CheckQuasiunit { .. } => "check-quasiunit",
            Verb::CertifyQuasiunit { .. } => "certify-quasiunit",
            Verb::CheckMaxsym { .. } => "check-maxsym",
            Verb::OracleIntermediate { .. } => "oracle-intermediate",
            Verb::Validate { .. } => "validate",
        }
    }

    /// Builders emit the artifact alone so their output feeds other verbs.
    fn is_builder(&self) -> bool {
        matches!(self, Verb::BuildAell { .. } | Verb::BuildAtilde { .. } | Verb::BuildSchur { .. })
    }
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::CapExceeded(..) | Error::IndexTooLarge(..) => 2,
        _ => 3,
    }
}

fn run(cli: &Cli, inputs: &mut Inputs) -> maxsym_core::Result<(Outcome, serde_json::Value, Vec<u64>)> {
    let seed = cli.seed;
    let mut primes = Vec::new();
    let (out, params) = match &cli.verb {
        Verb::BuildAell { ell, base } => (commands::build_aell(*ell, base)?, json!({ "ell": ell, "base": base })),
        Verb::BuildAtilde { ell, base } => (commands::build_atilde(*ell, base)?, json!({ "ell": ell, "base": base })),
        Verb::BuildSchur { algebra, n, d, cap } => (
            commands::build_schur(inputs, algebra, *n, *d, *cap)?,
            json!({ "n": n, "d": d, "cap": cap.to_string() }),
        ),
        Verb::CheckForm { algebra, form, degree } => (
            commands::check_form(inputs, algebra, form.as_deref(), *degree)?,
            json!({ "form": form, "degree": degree }),
        ),
        Verb::CheckQuasiunit { algebra, element, prime, cap, degree_zero } => {
            primes.extend(prime);
            (
                commands::check_quasiunit(inputs, algebra, element, *prime, *cap, *degree_zero)?,
                json!({ "element": element, "cap": cap.to_string(), "degree_zero": degree_zero }),
            )
        }
        Verb::CertifyQuasiunit { algebra, decomposition, first, generators, prime, degree_zero } => {
            primes.extend(prime);
            (
                commands::certify_quasiunit(
                    inputs,
                    algebra,
                    decomposition,
                    *first,
                    generators.as_ref(),
                    *prime,
                    *degree_zero,
                    seed,
                )?,
                json!({ "first": first, "degree_zero": degree_zero, "seed": seed }),
            )
        }
        Verb::CheckMaxsym { sandwich, cap } => {
            let opts = CheckOptions { center_cap: *cap, seed };
            let (out, p) = commands::check_maxsym(inputs, sandwich, opts)?;
            primes = p;
            (out, json!({ "cap": cap.to_string(), "seed": seed }))
        }
        Verb::OracleIntermediate { sandwich, prime, subgroup_cap, cap } => {
            primes.push(*prime);
            let opts = CheckOptions { center_cap: *cap, seed };
            (
                commands::oracle(inputs, sandwich, *prime, *subgroup_cap, opts)?,
                json!({ "subgroup_cap": subgroup_cap, "cap": cap.to_string(), "seed": seed }),
            )
        }
        Verb::Validate { algebra, sandwich } => {
            (commands::validate(inputs, algebra.as_ref(), sandwich.as_ref())?, json!({}))
        }
    };
    Ok((out, params, primes))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.max(1)).build_global() {
        eprintln!("error: worker pool: {e}");
        return ExitCode::from(3);
    }
    let start = Instant::now();
    let mut inputs = Inputs::default();
    let (out, params, primes) = match run(&cli, &mut inputs) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_for(&e));
        }
    };
    let elapsed = start.elapsed();
    let json = if cli.verb.is_builder() {
        serde_json::to_string_pretty(&out.body)
    } else {
        serde_json::to_string_pretty(&Envelope {
            tool: "maxsym",
            version: env!("CARGO_PKG_VERSION"),
            command: cli.verb.name(),
            inputs: &inputs.0,
            parameters: params,
            primes,
            exit_code: out.exit,
            result: &out.body,
            wall_clock_ms: cli.timing.then(|| elapsed.as_millis()),
        })
    }
    .expect("reports serialize");
    if let Err(e) = report::write(cli.output.as_ref(), &format!("{json}\n")) {
        eprintln!("error: {e}");
        return ExitCode::from(3);
    }
    eprintln!("{} ({} ms)", out.summary, elapsed.as_millis());
    ExitCode::from(out.exit as u8)
}
