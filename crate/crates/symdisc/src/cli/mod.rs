//! Command-line surface: membership checks, certificate build/verify,
//! boundary scans for plotting, and randomized convexity probes.
//!
//! Exit codes: `0` AllInside / success, `1` NotAllInside / verdict,
//! `2` Indeterminate, `3` verification failed, `64` usage error,
//! `65` runtime error. Identical flags and seed produce byte-identical
//! JSON/CSV payloads: floats are printed in shortest round-trip form and the
//! provenance header (`# seed: …`) goes to stderr, never into the payload.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::certificates::{
    build_certificate, example_d_membership, example_d_sampler, example_g_membership,
    example_g_sampler, g3_slice_sampler, g4_slice_sampler, midpoint_probe, verify_certificate,
    NonConvexityCertificate, ProbeReport,
};
use crate::geometry::{
    poly_from_sym_point, r_value, s_value, slice_membership_closed_form, slice_poly, SliceCoords,
    SymPoint,
};
use crate::poly::{
    cohn_all_roots_in_disc, oracle_all_roots_in_disc, Poly, RootLocation, Tolerances, Verdict,
};

pub const EXIT_ALL_INSIDE: i32 = 0;
pub const EXIT_NOT_ALL_INSIDE: i32 = 1;
pub const EXIT_INDETERMINATE: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_RUNTIME: i32 = 65;

#[derive(Parser, Debug)]
#[command(
    name = "symdisc",
    about = "Unit-disc root location and non-convexity certificates for symmetrized-polydisc slices",
    version
)]
struct Cli {
    /// Boundary band of the tri-state verdicts.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol_boundary: f64,
    /// Seed of every randomized component; reports are deterministic given it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Membership check for a polynomial, a σ-point, or a slice point.
    ///
    /// Prints the Cohn verdict, the root-oracle verdict with the maximum
    /// root modulus, and for n=3,4 slices the closed-form verdict with the
    /// value of r or s. The exit code reflects the Cohn verdict.
    Check(CheckArgs),
    /// Build a non-convexity certificate for the slice set G_n.
    Certificate {
        /// Slice dimension, n >= 3.
        #[arg(long)]
        n: usize,
        /// Witness family parameter; defaults to 0.5 (G3-derived) or 0.4
        /// (G4-derived).
        #[arg(long)]
        q_prime: Option<f64>,
        /// Output path of the certificate JSON (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a certificate JSON file; exits 0 only if every check passes.
    Verify {
        /// Path of a certificate produced by `certificate`.
        path: PathBuf,
    },
    /// CSV scan of the n=3 or n=4 slice defining function over a modulus
    /// grid at fixed phases.
    Scan {
        /// Slice dimension; only 3 and 4 have closed forms.
        #[arg(long)]
        n: usize,
        /// |p| grid as min:max:steps, e.g. 0:1:100.
        #[arg(long, allow_hyphen_values = true)]
        p_range: String,
        /// |q| grid as min:max:steps.
        #[arg(long, allow_hyphen_values = true)]
        q_range: String,
        /// Phase of p in radians.
        #[arg(long, default_value_t = 0.0)]
        phase_p: f64,
        /// Phase of q in radians.
        #[arg(long, default_value_t = 0.0)]
        phase_q: f64,
        /// Output CSV path (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomized midpoint probe for convexity violations.
    Probe {
        #[arg(long, value_enum)]
        domain: ProbeDomain,
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,
        /// Output path of the probe report JSON (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// Polynomial coefficients in descending powers as re,im pairs separated
    /// by semicolons, e.g. "1,0;0,0;0.75,0;0.5,0".
    #[arg(long, allow_hyphen_values = true)]
    coeffs: Option<String>,
    /// σ-coordinates as comma-separated complex literals, e.g.
    /// "0.5i,-0.25,-0.125i".
    #[arg(long, allow_hyphen_values = true)]
    sym_point: Option<String>,
    /// Slice dimension n; requires --free.
    #[arg(long)]
    slice: Option<usize>,
    /// Free slice coefficients (a_{m+1},…,a_n) as comma-separated complex
    /// literals, e.g. "0+0.649519053i,0.25+0.25i".
    #[arg(long, allow_hyphen_values = true)]
    free: Option<String>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ProbeDomain {
    /// The n=3 slice set.
    G3Slice,
    /// The n=4 slice set.
    G4Slice,
    /// {|z1|^2 + |z2 + z1^2| < 1}.
    ExampleD,
    /// {|z1|^2 + |z2| < 1}.
    ExampleG,
}

impl ProbeDomain {
    fn name(&self) -> &'static str {
        match self {
            ProbeDomain::G3Slice => "g3-slice",
            ProbeDomain::G4Slice => "g4-slice",
            ProbeDomain::ExampleD => "example-d",
            ProbeDomain::ExampleG => "example-g",
        }
    }
}

/// Usage-level problem (bad flags or literals) as opposed to a runtime
/// failure.
#[derive(Debug)]
enum CliError {
    Usage(String),
    Runtime(crate::Error),
    Io(std::io::Error),
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Runtime(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Parses args and dispatches; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    eprintln!("# seed: {}", cli.seed);
    let tol = Tolerances {
        boundary_band: cli.tol_boundary,
        ..Tolerances::default()
    };
    if let Err(e) = tol.validate() {
        eprintln!("error: {e}");
        return EXIT_USAGE;
    }
    match dispatch(cli.command, &tol, cli.seed) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Runtime(e)) => {
            eprintln!("error: {e}");
            EXIT_RUNTIME
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            EXIT_RUNTIME
        }
    }
}

fn dispatch(command: Command, tol: &Tolerances, seed: u64) -> Result<i32, CliError> {
    match command {
        Command::Check(args) => cmd_check(args, tol, seed),
        Command::Certificate { n, q_prime, out } => cmd_certificate(n, q_prime, out, tol, seed),
        Command::Verify { path } => cmd_verify(path, tol, seed),
        Command::Scan {
            n,
            p_range,
            q_range,
            phase_p,
            phase_q,
            out,
        } => cmd_scan(n, &p_range, &q_range, phase_p, phase_q, out, tol),
        Command::Probe {
            domain,
            trials,
            out,
        } => cmd_probe(domain, trials, out, tol, seed),
    }
}

// ---------------------------------------------------------------- check

#[derive(Serialize)]
struct ClosedFormReport {
    n: usize,
    value_name: &'static str,
    value: f64,
    location: RootLocation,
}

#[derive(Serialize)]
struct CheckReport {
    seed: u64,
    input: String,
    cohn: RootLocation,
    oracle: RootLocation,
    closed_form: Option<ClosedFormReport>,
    verdict: Verdict,
}

fn cmd_check(args: CheckArgs, tol: &Tolerances, seed: u64) -> Result<i32, CliError> {
    let selectors =
        args.coeffs.is_some() as u8 + args.sym_point.is_some() as u8 + args.slice.is_some() as u8;
    if selectors != 1 {
        return Err(CliError::Usage(
            "give exactly one of --coeffs, --sym-point, or --slice with --free".into(),
        ));
    }
    if args.slice.is_some() != args.free.is_some() {
        return Err(CliError::Usage("--slice and --free go together".into()));
    }

    let (input, poly, closed_form) = if let Some(text) = &args.coeffs {
        let coeffs = parse_coeff_pairs(text)?;
        let poly = Poly::new(coeffs).map_err(CliError::Runtime)?;
        (format!("coeffs {poly}"), poly, None)
    } else if let Some(text) = &args.sym_point {
        let coords = parse_complex_list(text)?;
        let s = SymPoint::new(coords).map_err(CliError::Runtime)?;
        let desc = format!(
            "sym-point [{}]",
            s.coords().iter().map(format_complex).collect::<Vec<_>>().join(", ")
        );
        (desc, poly_from_sym_point(&s), None)
    } else {
        let n = args.slice.expect("checked");
        let free = parse_complex_list(args.free.as_ref().expect("checked"))?;
        let sc = SliceCoords::new(n, free).map_err(|e| CliError::Usage(e.to_string()))?;
        let closed = match n {
            3 => Some(ClosedFormReport {
                n,
                value_name: "r",
                value: r_value(sc.free[0], sc.free[1]),
                location: slice_membership_closed_form(n, sc.free[0], sc.free[1], tol)?,
            }),
            4 => Some(ClosedFormReport {
                n,
                value_name: "s",
                value: s_value(sc.free[0], sc.free[1]),
                location: slice_membership_closed_form(n, sc.free[0], sc.free[1], tol)?,
            }),
            _ => None,
        };
        let desc = format!(
            "slice n={n}, free=[{}]",
            sc.free.iter().map(format_complex).collect::<Vec<_>>().join(", ")
        );
        (desc, slice_poly(&sc), closed)
    };

    let cohn = cohn_all_roots_in_disc(&poly, tol)?;
    let oracle = oracle_all_roots_in_disc(&poly, tol, seed)?;
    let report = CheckReport {
        seed,
        input,
        verdict: cohn.verdict,
        cohn,
        oracle,
        closed_form,
    };

    match args.format {
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&report).expect("serializable")),
        OutputFormat::Text => {
            println!("input: {}", report.input);
            match report.cohn.failing_stage {
                Some(stage) => println!("cohn: {} (stage {stage})", report.cohn.verdict),
                None => println!("cohn: {}", report.cohn.verdict),
            }
            println!(
                "oracle: {} (max root modulus {})",
                report.oracle.verdict,
                report
                    .oracle
                    .max_modulus_estimate
                    .map_or_else(|| "n/a".into(), |m| m.to_string())
            );
            if let Some(cf) = &report.closed_form {
                println!(
                    "closed form ({}): {} ({} = {})",
                    cf.value_name, cf.location.verdict, cf.value_name, cf.value
                );
            }
            println!("verdict: {}", report.verdict);
        }
    }
    Ok(verdict_exit_code(report.verdict))
}

fn verdict_exit_code(v: Verdict) -> i32 {
    match v {
        Verdict::AllInside => EXIT_ALL_INSIDE,
        Verdict::NotAllInside => EXIT_NOT_ALL_INSIDE,
        Verdict::Indeterminate => EXIT_INDETERMINATE,
    }
}

// ---------------------------------------------------------- certificate

fn cmd_certificate(
    n: usize,
    q_prime: Option<f64>,
    out: Option<PathBuf>,
    tol: &Tolerances,
    seed: u64,
) -> Result<i32, CliError> {
    let cert = build_certificate(n, q_prime, tol, seed)?;
    let json = cert.to_json();
    match out {
        Some(path) => {
            std::fs::write(&path, json)?;
            println!(
                "certificate n={} family={} h_mid={} epsilon={} -> {}",
                cert.n,
                cert.family,
                cert.h_mid,
                cert.epsilon,
                path.display()
            );
        }
        None => println!("{json}"),
    }
    Ok(0)
}

fn cmd_verify(path: PathBuf, tol: &Tolerances, seed: u64) -> Result<i32, CliError> {
    let text = std::fs::read_to_string(&path)?;
    let cert = NonConvexityCertificate::from_json(&text)?;
    let report = verify_certificate(&cert, tol, seed);
    for check in &report.checks {
        println!(
            "{} {}: {}",
            if check.pass { "ok  " } else { "FAIL" },
            check.name,
            check.detail
        );
    }
    if report.pass {
        println!("certificate n={} family={}: PASS", cert.n, cert.family);
        Ok(0)
    } else {
        println!("certificate n={} family={}: FAIL", cert.n, cert.family);
        Ok(EXIT_VERIFY_FAILED)
    }
}

// ----------------------------------------------------------------- scan

struct GridRange {
    min: f64,
    max: f64,
    steps: usize,
}

impl GridRange {
    fn parse(text: &str) -> Result<Self, CliError> {
        let parts: Vec<&str> = text.split(':').collect();
        let err = || CliError::Usage(format!("range must be min:max:steps, got {text:?}"));
        if parts.len() != 3 {
            return Err(err());
        }
        let min: f64 = parts[0].parse().map_err(|_| err())?;
        let max: f64 = parts[1].parse().map_err(|_| err())?;
        let steps: usize = parts[2].parse().map_err(|_| err())?;
        if !min.is_finite() || !max.is_finite() {
            return Err(err());
        }
        Ok(Self { min, max, steps })
    }

    fn value(&self, i: usize) -> f64 {
        if self.steps <= 1 {
            self.min
        } else {
            self.min + (self.max - self.min) * i as f64 / (self.steps - 1) as f64
        }
    }
}

fn cmd_scan(
    n: usize,
    p_range: &str,
    q_range: &str,
    phase_p: f64,
    phase_q: f64,
    out: Option<PathBuf>,
    tol: &Tolerances,
) -> Result<i32, CliError> {
    if n != 3 && n != 4 {
        return Err(CliError::Usage(format!(
            "scan needs a closed form; n must be 3 or 4, got {n}"
        )));
    }
    let pr = GridRange::parse(p_range)?;
    let qr = GridRange::parse(q_range)?;

    let mut csv = String::from("re_p,im_p,re_q,im_q,r_or_s,verdict\n");
    for qi in 0..qr.steps {
        let q = Complex64::from_polar(qr.value(qi), phase_q);
        for pi in 0..pr.steps {
            let p = Complex64::from_polar(pr.value(pi), phase_p);
            let value = if n == 3 { r_value(p, q) } else { s_value(p, q) };
            let verdict = slice_membership_closed_form(n, p, q, tol)?.verdict;
            csv.push_str(&format!(
                "{},{},{},{},{},{}\n",
                p.re, p.im, q.re, q.im, value, verdict
            ));
        }
    }
    match out {
        Some(path) => std::fs::write(&path, csv)?,
        None => {
            std::io::stdout().write_all(csv.as_bytes())?;
        }
    }
    Ok(0)
}

// ---------------------------------------------------------------- probe

#[derive(Serialize)]
struct ProbeRunReport {
    seed: u64,
    domain: &'static str,
    trials: u64,
    report: ProbeReport,
}

fn cmd_probe(
    domain: ProbeDomain,
    trials: u64,
    out: Option<PathBuf>,
    tol: &Tolerances,
    seed: u64,
) -> Result<i32, CliError> {
    let report = match domain {
        ProbeDomain::G3Slice => midpoint_probe(
            |z| slice_membership_closed_form(3, z[0], z[1], tol).expect("closed form"),
            g3_slice_sampler(tol.clone()),
            trials,
            seed,
        ),
        ProbeDomain::G4Slice => midpoint_probe(
            |z| slice_membership_closed_form(4, z[0], z[1], tol).expect("closed form"),
            g4_slice_sampler(tol.clone()),
            trials,
            seed,
        ),
        ProbeDomain::ExampleD => midpoint_probe(
            |z| example_d_membership(z, tol),
            example_d_sampler(),
            trials,
            seed,
        ),
        ProbeDomain::ExampleG => midpoint_probe(
            |z| example_g_membership(z, tol),
            example_g_sampler(),
            trials,
            seed,
        ),
    };
    let run = ProbeRunReport {
        seed,
        domain: domain.name(),
        trials,
        report,
    };
    let json = serde_json::to_string_pretty(&run).expect("serializable");
    match out {
        Some(path) => {
            std::fs::write(&path, &json)?;
            match &run.report.found {
                Some(hit) => println!(
                    "probe {}: violation at trial {} -> {}",
                    run.domain,
                    hit.trial,
                    path.display()
                ),
                None => println!(
                    "probe {}: no violation in {} trials -> {}",
                    run.domain,
                    run.trials,
                    path.display()
                ),
            }
        }
        None => println!("{json}"),
    }
    Ok(0)
}

// ------------------------------------------------------------- literals

/// Parses `a+bi` complex literals with optional parts: `1`, `-2.5`, `i`,
/// `-i`, `2i`, `1+2i`, `1.5e-3-2e2i`.
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let t = text.trim();
    if t.is_empty() {
        return Err("empty complex literal".into());
    }
    let err = || format!("malformed complex literal {t:?}");

    let parse_imag_digits = |s: &str| -> Result<f64, String> {
        match s {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => s.parse::<f64>().map_err(|_| err()),
        }
    };

    let bytes = t.as_bytes();
    let mut split = None;
    for i in (1..bytes.len()).rev() {
        let c = bytes[i] as char;
        if (c == '+' || c == '-') && !matches!(bytes[i - 1] as char, 'e' | 'E') {
            split = Some(i);
            break;
        }
    }

    let value = if let Some(i) = split {
        let (re_str, im_str) = t.split_at(i);
        let Some(im_digits) = im_str.strip_suffix('i') else {
            // No trailing i: the whole thing must be a plain real like "1e-3".
            let re = t.parse::<f64>().map_err(|_| err())?;
            return check_finite(Complex64::new(re, 0.0), err);
        };
        let re = re_str.parse::<f64>().map_err(|_| err())?;
        let im = parse_imag_digits(im_digits)?;
        Complex64::new(re, im)
    } else if let Some(im_digits) = t.strip_suffix('i') {
        Complex64::new(0.0, parse_imag_digits(im_digits)?)
    } else {
        Complex64::new(t.parse::<f64>().map_err(|_| err())?, 0.0)
    };
    check_finite(value, err)
}

fn check_finite(
    value: Complex64,
    err: impl Fn() -> String,
) -> Result<Complex64, String> {
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(err())
    }
}

/// Renders a complex value in the same `a+bi` literal syntax.
pub fn format_complex(c: &Complex64) -> String {
    if c.im == 0.0 {
        format!("{}", c.re)
    } else if c.re == 0.0 {
        format!("{}i", c.im)
    } else if c.im < 0.0 {
        format!("{}{}i", c.re, c.im)
    } else {
        format!("{}+{}i", c.re, c.im)
    }
}

fn parse_complex_list(text: &str) -> Result<Vec<Complex64>, CliError> {
    text.split(',')
        .map(|part| parse_complex(part).map_err(CliError::Usage))
        .collect()
}

fn parse_coeff_pairs(text: &str) -> Result<Vec<Complex64>, CliError> {
    text.split(';')
        .map(|pair| {
            let parts: Vec<&str> = pair.split(',').collect();
            if parts.len() != 2 {
                return Err(CliError::Usage(format!(
                    "coefficient must be re,im; got {pair:?}"
                )));
            }
            let re: f64 = parts[0]
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad real part {:?}", parts[0])))?;
            let im: f64 = parts[1]
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad imaginary part {:?}", parts[1])))?;
            Ok(Complex64::new(re, im))
        })
        .collect()
}
