//! Reporting layer for the `trunc-poisson` command-line tool.
//!
//! [`execute`] turns a parsed command into a [`ReportEnvelope`]; [`run`]
//! additionally renders it and maps the outcome to an exit status:
//! 0 when every embedded check passes, 1 when one fails, 2 on usage errors.

pub mod checks;
pub mod config;
pub mod render;
pub mod report;

use std::ops::RangeInclusive;

use rayon::prelude::*;
use thiserror::Error;
use trunc_poisson::{cohomology_dims, homology_dims, CochainError, Rational, TruncParams};

use config::{instance_params, parse_range, Cli, Command, Complex, Format, TwistSelector};
use report::{
    cohomology_payload, duality_payload, homology_payload, ring_payload, Check, ParamsEcho, Payload, ReportEnvelope,
    SweepPayload, SweepRow, VerifyPayload, SCHEMA_VERSION,
};

/// Environment variable holding the worker thread count for sweeps.
pub const THREADS_ENV: &str = "TRUNC_POISSON_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Compute(#[from] CochainError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("output error: {0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

fn instance_echo(p: TruncParams) -> ParamsEcho {
    ParamsEcho { a: Some(p.a()), b: Some(p.b()), ..Default::default() }
}

fn envelope(command: &'static str, params: ParamsEcho, payload: Payload, verification: Vec<Check>) -> ReportEnvelope {
    ReportEnvelope { schema_version: SCHEMA_VERSION, command, params, payload, verification }
}

/// Output format requested by a command.
pub fn format_of(command: &Command) -> Format {
    match command {
        Command::Cohomology(i) | Command::Ring(i) | Command::Duality(i) | Command::Verify(i) => i.format,
        Command::Homology(h) => h.instance.format,
        Command::Sweep(s) => s.format,
    }
}

pub fn execute(command: &Command) -> Result<ReportEnvelope, CliError> {
    match command {
        Command::Cohomology(args) => {
            let p = instance_params(args.a, args.b)?;
            let payload = cohomology_payload(p, args.reps)?;
            let checks = vec![
                Check::new("representatives_form_basis", true, "canonical representatives verified modulo coboundaries"),
                Check::new(
                    "euler_cohomology",
                    payload.euler_characteristic == 1,
                    format!("dim HP^0 - dim HP^1 + dim HP^2 = {}", payload.euler_characteristic),
                ),
            ];
            Ok(envelope("cohomology", instance_echo(p), Payload::Cohomology(payload), checks))
        }
        Command::Homology(args) => {
            let p = instance_params(args.instance.a, args.instance.b)?;
            let selector = TwistSelector::parse(&args.twist)?;
            let payload = homology_payload(p, selector.kind(), &selector.resolve(p), args.instance.reps);
            let checks = vec![Check::new(
                "euler_homology",
                payload.euler_characteristic == 1,
                format!("h0 - h1 + h2 = {}", payload.euler_characteristic),
            )];
            let params = ParamsEcho { twist: Some(selector.kind().to_string()), ..instance_echo(p) };
            Ok(envelope("homology", params, Payload::Homology(payload), checks))
        }
        Command::Ring(args) => {
            let p = instance_params(args.a, args.b)?;
            let (payload, _, _) = ring_payload(p)?;
            let checks = vec![
                Check::new("ring_matches_fibre_product", payload.matches_reference, "cup table equals the reference ring"),
                Check::new("cup_graded_commutative", payload.graded_commutative, "graded commutativity"),
                Check::new("cup_associative", payload.associative, "associativity on basis triples"),
            ];
            Ok(envelope("ring", instance_echo(p), Payload::Ring(payload), checks))
        }
        Command::Duality(args) => {
            let p = instance_params(args.a, args.b)?;
            let payload = duality_payload(p)?;
            let checks = vec![
                Check::new("twisted_duality", payload.twisted_duality_holds, "dim HP^k = dim HP_k(M_ν) for k = 0, 1, 2"),
                Check::new("poincare_duality_fails", payload.poincare_duality_fails, "dim HP^k != dim HP_{2-k} at k = 0 or 2"),
                Check::new(
                    "euler_characteristics",
                    payload.cohomology_euler == 1 && payload.nakayama_euler == 1,
                    "both Euler characteristics equal 1",
                ),
            ];
            Ok(envelope("duality", instance_echo(p), Payload::Duality(payload), checks))
        }
        Command::Sweep(args) => {
            let a_range = parse_range("a-range", &args.a_range)?;
            let b_range = parse_range("b-range", &args.b_range)?;
            let selector = TwistSelector::parse(&args.twist)?;
            let payload = sweep(a_range.clone(), b_range.clone(), args.complex, &selector)?;
            let failed: Vec<String> =
                payload.rows.iter().filter(|r| !r.passed).map(|r| format!("({}, {})", r.a, r.b)).collect();
            let checks = vec![Check::new(
                "sweep_rows",
                failed.is_empty(),
                if failed.is_empty() {
                    format!("all {} rows pass", payload.rows.len())
                } else {
                    format!("failing rows: {}", failed.join(" "))
                },
            )];
            let params = ParamsEcho {
                a_range: Some([*a_range.start(), *a_range.end()]),
                b_range: Some([*b_range.start(), *b_range.end()]),
                complex: Some(args.complex.name()),
                twist: (args.complex == Complex::Homology).then(|| selector.kind().to_string()),
                ..Default::default()
            };
            Ok(envelope("sweep", params, Payload::Sweep(payload), checks))
        }
        Command::Verify(args) => {
            let p = instance_params(args.a, args.b)?;
            let checks = checks::verify_instance(p);
            let payload = VerifyPayload { checks_run: checks.len(), checks_passed: checks.iter().filter(|c| c.passed).count() };
            Ok(envelope("verify", instance_echo(p), Payload::Verify(payload), checks))
        }
    }
}

fn sweep_row(p: TruncParams, complex: Complex, selector: &TwistSelector) -> Result<SweepRow, CliError> {
    let (a, b) = (p.a(), p.b());
    let (dims, named): ([usize; 3], Vec<(&str, bool)>) = match complex {
        Complex::Cohomology => {
            let d = cohomology_dims::<Rational>(p);
            (d, vec![("hp_dims_2_2_1", d == [2, 2, 1])])
        }
        Complex::Homology => {
            let d = homology_dims(p, &selector.resolve(p));
            let named = match selector {
                TwistSelector::Trivial => vec![("trace_lemma", d[0] == a + b - 1)],
                TwistSelector::Nakayama => vec![("twisted_duality", d == cohomology_dims::<Rational>(p))],
                TwistSelector::Explicit(..) => Vec::new(),
            };
            (d, named)
        }
    };
    let euler = dims[0] as i64 - dims[1] as i64 + dims[2] as i64;
    let mut named = named;
    named.push(("euler", euler == 1));
    let theorem_checks =
        named.iter().map(|(n, ok)| format!("{n}={}", if *ok { "pass" } else { "fail" })).collect::<Vec<_>>().join(";");
    Ok(SweepRow {
        a,
        b,
        h0: dims[0],
        h1: dims[1],
        h2: dims[2],
        euler,
        theorem_checks,
        passed: named.iter().all(|(_, ok)| *ok),
    })
}

/// One row per `(a, b)`, `a` outer and `b` inner, computed in parallel.
pub fn sweep(
    a_range: RangeInclusive<usize>,
    b_range: RangeInclusive<usize>,
    complex: Complex,
    selector: &TwistSelector,
) -> Result<SweepPayload, CliError> {
    let grid: Vec<TruncParams> = a_range
        .flat_map(|a| b_range.clone().map(move |b| (a, b)))
        .map(|(a, b)| instance_params(a, b))
        .collect::<Result<_, _>>()?;
    let compute = || grid.par_iter().map(|&p| sweep_row(p, complex, selector)).collect::<Result<Vec<_>, _>>();
    let rows = match thread_count()? {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Output(e.to_string()))?
            .install(compute)?,
        None => compute()?,
    };
    Ok(SweepPayload {
        complex: complex.name(),
        twist: (complex == Complex::Homology).then(|| selector.kind()),
        rows,
    })
}

fn thread_count() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got {v:?}"))),
        },
        Err(_) => Ok(None),
    }
}

/// Executes and renders; returns the exit status and standard output.
pub fn run(cli: &Cli) -> Result<(i32, String), CliError> {
    let env = execute(&cli.command)?;
    let text = render::render(&env, format_of(&cli.command))?;
    Ok((if env.all_passed() { 0 } else { 1 }, text))
}
