//! Command-line surface of the fourterm library.
//!
//! Every invocation runs exactly one command and emits one machine-readable
//! document: JSON (a `meta` object echoing the configuration plus a `data`
//! payload) or CSV (a header row and one record per zero, point, probe, or
//! cell). Output is deterministic: fixed orderings, shortest round-trip
//! float formatting. Exit status is 0 on success, 1 on a verdict-level
//! failure or propagated computation error, 2 on a usage error.

use std::env;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use fourterm::theta::{self, IntervalSpec};
use fourterm::{
    analyze, classify, classify_with, density_sample, generate_sequence, generate_sequence_bits,
    nonreal_witness, polynomial_zeros, Condition, Error, Regime, SequenceParams, Verdict, Witness,
    WitnessOptions, ZeroReport,
};

#[derive(Parser)]
#[command(
    name = "fourterm",
    version,
    about = "Zeros of the four-term recurrence family H_m + c H_{m-1} + b H_{m-2} + z H_{m-3} = 0"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Realness tolerance: a zero counts as real when |Im z| <= tol * (1 + |Re z|)
    #[arg(long, global = true, value_parser = positive, default_value_t = fourterm::TOL_REAL)]
    tol_real: f64,

    /// Residual tolerance for the dual-route pairing verdict
    #[arg(long, global = true, value_parser = positive, default_value_t = fourterm::TOL_RESIDUAL)]
    tol_residual: f64,

    /// Significand bits for coefficient generation (gen, and zeros listings
    /// outside the real-zero region)
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..=16384))]
    precision_bits: Option<u32>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Output path instead of stdout; a relative path lands inside
    /// $FOURTERM_OUT_DIR when that variable is set
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

/// Parameter selection shared by the single-family commands: either the
/// normalized ratio `--a`, or the raw pair `--b --c`.
#[derive(Args)]
struct Family {
    /// Normalized shape ratio a = b / c^2 (the c = 1 family)
    #[arg(long, conflicts_with_all = ["b", "c"], required_unless_present = "b", allow_hyphen_values = true)]
    a: Option<f64>,

    /// Coefficient multiplying H_{m-2}
    #[arg(long, requires = "c", allow_hyphen_values = true)]
    b: Option<f64>,

    /// Coefficient multiplying H_{m-1}
    #[arg(long, requires = "b", allow_hyphen_values = true)]
    c: Option<f64>,
}

impl Family {
    fn params(&self) -> Result<SequenceParams, Error> {
        match (self.a, self.b, self.c) {
            (Some(a), _, _) => SequenceParams::normalized(a),
            (None, Some(b), Some(c)) => SequenceParams::from_bc(b, c),
            _ => unreachable!("argument group enforced by the parser"),
        }
    }

    fn echo(&self) -> Value {
        match self.a {
            Some(a) => json!({ "a": a }),
            None => json!({ "b": self.b, "c": self.c }),
        }
    }
}

/// Witness-search knobs.
#[derive(Args)]
struct ProbeArgs {
    /// Depth bound for the attraction scan
    #[arg(long, default_value_t = 60)]
    empirical_max: u32,

    /// Skip the attraction scan
    #[arg(long)]
    no_empirical: bool,
}

impl ProbeArgs {
    fn options(&self) -> WitnessOptions {
        WitnessOptions {
            empirical_mmax: self.empirical_max,
            run_empirical: !self.no_empirical,
        }
    }
}

/// An inclusive numeric range written as `lo:hi`.
#[derive(Clone, Copy, Debug)]
struct Span {
    lo: f64,
    hi: f64,
}

fn parse_span(s: &str) -> Result<Span, String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("expected lo:hi, got {s:?}"))?;
    let lo: f64 = lo
        .trim()
        .parse()
        .map_err(|_| format!("bad lower bound {lo:?}"))?;
    let hi: f64 = hi
        .trim()
        .parse()
        .map_err(|_| format!("bad upper bound {hi:?}"))?;
    if !lo.is_finite() || !hi.is_finite() {
        return Err("range bounds must be finite".into());
    }
    if lo > hi {
        return Err(format!("need lo <= hi, got {lo} > {hi}"));
    }
    Ok(Span { lo, hi })
}

fn positive(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("bad number {s:?}"))?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(format!("must be positive and finite, got {v}"))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Emit the coefficient tables H_0 ..= H_m
    Gen {
        #[command(flatten)]
        family: Family,
        /// Last recurrence depth to generate
        #[arg(long)]
        m: u32,
    },
    /// Emit the zero set of H_m, paired against the curve inside the
    /// real-zero region, as a plain listing outside it
    Zeros {
        #[command(flatten)]
        family: Family,
        /// Recurrence depth
        #[arg(long)]
        m: u32,
    },
    /// Full dual-route check of one (b, c, m): zero count, realness,
    /// curve pairing residuals
    Check {
        #[command(flatten)]
        family: Family,
        /// Recurrence depth
        #[arg(long)]
        m: u32,
    },
    /// Real-zero verdict for one parameter pair, with the support endpoint
    /// and a non-real witness where one exists
    Classify {
        #[command(flatten)]
        family: Family,
        #[command(flatten)]
        probe: ProbeArgs,
    },
    /// Verdict map over a rectangle of (b, c) cells
    Scan {
        /// b range as lo:hi
        #[arg(long, value_parser = parse_span, allow_hyphen_values = true)]
        b_range: Span,
        /// c range as lo:hi
        #[arg(long, value_parser = parse_span, allow_hyphen_values = true)]
        c_range: Span,
        /// Grid points per side
        #[arg(long, default_value_t = 41, value_parser = clap::value_parser!(u32).range(1..=100_000))]
        grid: u32,
    },
    /// Tabulate the parameterization (theta, zeta, z, g_m) for plotting
    Curve {
        /// Normalized shape ratio
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        /// Recurrence depth for the counting function
        #[arg(long)]
        m: u32,
        /// Interior sample count on (2*pi/3, pi)
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u32).range(1..=10_000_000))]
        grid: u32,
    },
    /// Sorted union of real zeros of H_3 ..= H_m_max inside a window,
    /// with the largest uncovered gap
    Density {
        #[command(flatten)]
        family: Family,
        /// Last recurrence depth in the union
        #[arg(long)]
        m_max: u32,
        /// Window as lo:hi
        #[arg(long, value_parser = parse_span, allow_hyphen_values = true)]
        window: Span,
    },
    /// Non-real zero witness construction trace
    Witness {
        #[command(flatten)]
        family: Family,
        #[command(flatten)]
        probe: ProbeArgs,
    },
}

/// One finished command: payload, CSV flattening, and whether the verdict
/// allows exit status 0.
struct Document {
    data: Value,
    csv_header: &'static str,
    csv: Vec<String>,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(doc) => match emit(&cli, &doc) {
            Ok(()) => {
                if doc.ok {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                }
            }
            Err(e) => {
                eprintln!("{}", json!({ "error": { "kind": "Io", "message": e.to_string() } }));
                ExitCode::from(1)
            }
        },
        Err(e) => {
            eprintln!(
                "{}",
                json!({ "error": { "kind": error_kind(&e), "message": e.to_string() } })
            );
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<Document, Error> {
    match &cli.command {
        Command::Gen { family, m } => gen(family, *m, cli),
        Command::Zeros { family, m } => zeros(family, *m, cli),
        Command::Check { family, m } => check(family, *m, cli),
        Command::Classify { family, probe } => classify_cmd(family, probe),
        Command::Scan {
            b_range,
            c_range,
            grid,
        } => scan(*b_range, *c_range, *grid),
        Command::Curve { a, m, grid } => curve(*a, *m, *grid),
        Command::Density {
            family,
            m_max,
            window,
        } => density(family, *m_max, *window),
        Command::Witness { family, probe } => witness_cmd(family, probe),
    }
}

fn gen(family: &Family, m: u32, cli: &Cli) -> Result<Document, Error> {
    let params = family.params()?;
    let window = match cli.precision_bits {
        Some(bits) => generate_sequence_bits(&params, m, bits)?,
        None => generate_sequence(&params, m)?,
    };
    let mut tables = Vec::new();
    let mut csv = Vec::new();
    for (depth, poly) in window.polys.iter().enumerate() {
        for (k, ck) in poly.coeffs().iter().enumerate() {
            csv.push(format!("{depth},{k},{ck}"));
        }
        tables.push(json!({ "m": depth, "coefficients": poly.coeffs() }));
    }
    Ok(Document {
        data: json!({
            "b": params.b,
            "c": params.c,
            "regime": regime_name(params.regime),
            "zero_scale": window.zero_scale,
            "tables": tables,
        }),
        csv_header: "m,k,coefficient",
        csv,
        ok: true,
    })
}

const ZEROS_HEADER: &str = "index,re,im,is_real,theta,z_curve,residual";

fn zeros(family: &Family, m: u32, cli: &Cli) -> Result<Document, Error> {
    let params = family.params()?;
    match analyze(&params, m) {
        Ok(report) => Ok(matched_listing(&report, cli)),
        // Outside the real-zero region there is no curve to pair against;
        // fall back to the plain zero listing.
        Err(Error::Domain(_)) | Err(Error::NegativeDiscriminant { .. }) => {
            plain_listing(&params, m, cli)
        }
        Err(e) => Err(e),
    }
}

fn matched_listing(report: &ZeroReport, cli: &Cli) -> Document {
    let mut rows = Vec::new();
    let mut csv = Vec::new();
    let mut all_real = true;
    for (i, z) in report.zeros.iter().enumerate() {
        let is_real = z.im.abs() <= cli.tol_real * (1.0 + z.re.abs());
        all_real &= is_real;
        let pair = report.matches.get(i);
        rows.push(json!({
            "index": i,
            "re": z.re,
            "im": z.im,
            "is_real": is_real,
            "theta": pair.map(|p| p.theta),
            "z_curve": pair.map(|p| p.z_curve),
            "residual": pair.map(|p| p.residual),
        }));
        csv.push(format!(
            "{i},{},{},{is_real},{},{},{}",
            z.re,
            z.im,
            opt_field(pair.map(|p| p.theta)),
            opt_field(pair.map(|p| p.z_curve)),
            opt_field(pair.map(|p| p.residual)),
        ));
    }
    Document {
        data: json!({
            "m": report.m,
            "degree": report.degree,
            "route": "matched",
            "all_real": all_real,
            "worst_residual": report.worst_residual,
            "zeros": rows,
        }),
        csv_header: ZEROS_HEADER,
        csv,
        ok: true,
    }
}

fn plain_listing(params: &SequenceParams, m: u32, cli: &Cli) -> Result<Document, Error> {
    let window = match cli.precision_bits {
        Some(bits) => generate_sequence_bits(params, m, bits)?,
        None => generate_sequence(params, m)?,
    };
    let poly = &window.polys[m as usize];
    let (degree, zeros) = if poly.is_zero() {
        (None, Vec::new())
    } else {
        let scaled: Vec<Complex64> = polynomial_zeros(poly)?
            .into_iter()
            .map(|z| z * window.zero_scale)
            .collect();
        (Some(poly.coeffs().len() - 1), scaled)
    };
    let mut rows = Vec::new();
    let mut csv = Vec::new();
    let mut all_real = true;
    for (i, z) in zeros.iter().enumerate() {
        let is_real = z.im.abs() <= cli.tol_real * (1.0 + z.re.abs());
        all_real &= is_real;
        rows.push(json!({
            "index": i,
            "re": z.re,
            "im": z.im,
            "is_real": is_real,
            "theta": Value::Null,
            "z_curve": Value::Null,
            "residual": Value::Null,
        }));
        csv.push(format!("{i},{},{},{is_real},,,", z.re, z.im));
    }
    Ok(Document {
        data: json!({
            "m": m,
            "degree": degree,
            "route": "plain",
            "all_real": all_real,
            "worst_residual": Value::Null,
            "zeros": rows,
        }),
        csv_header: ZEROS_HEADER,
        csv,
        ok: true,
    })
}

fn check(family: &Family, m: u32, cli: &Cli) -> Result<Document, Error> {
    let report = analyze(&family.params()?, m)?;
    let all_real = report
        .zeros
        .iter()
        .all(|z| z.im.abs() <= cli.tol_real * (1.0 + z.re.abs()));
    let verdict = if !all_real {
        "NonRealZeros"
    } else if report.worst_residual > cli.tol_residual {
        "ResidualExcess"
    } else {
        "Confirmed"
    };
    let mut matches = Vec::new();
    let mut csv = Vec::new();
    for pair in &report.matches {
        matches.push(json!({
            "theta": pair.theta,
            "z_curve": pair.z_curve,
            "z_poly": complex_json(pair.z_poly),
            "residual": pair.residual,
        }));
        csv.push(format!(
            "{verdict},{m},{},{},{},{},{}",
            pair.theta, pair.z_curve, pair.z_poly.re, pair.z_poly.im, pair.residual
        ));
    }
    Ok(Document {
        data: json!({
            "verdict": verdict,
            "m": m,
            "degree": report.degree,
            "count": report.matches.len(),
            "all_real": all_real,
            "max_im_ratio": report.max_im_ratio,
            "worst_residual": report.worst_residual,
            "matches": matches,
        }),
        csv_header: "verdict,m,theta,z_curve,z_poly_re,z_poly_im,residual",
        csv,
        ok: verdict == "Confirmed",
    })
}

fn classify_cmd(family: &Family, probe: &ProbeArgs) -> Result<Document, Error> {
    let params = family.params()?;
    let cls = classify_with(params.b, params.c, &probe.options())?;
    let a = params.a().ok();
    let endpoint = IntervalSpec::for_params(&params).ok().map(|s| s.endpoint);
    let verdict = verdict_name(cls.verdict);
    let witness = cls.witness.as_ref();
    let csv = vec![format!(
        "{verdict},{},{},{},{},{},{},{},{}",
        condition_name(&cls.condition),
        opt_field(a),
        opt_field(endpoint),
        opt_field(witness.map(|w| w.z_star.re)),
        opt_field(witness.map(|w| w.z_star.im)),
        opt_field(witness.map(|w| w.theta_star)),
        opt_field(witness.map(|w| w.delta)),
        witness
            .and_then(|w| w.attracted_m)
            .map(|m| m.to_string())
            .unwrap_or_default(),
    )];
    Ok(Document {
        data: json!({
            "verdict": verdict,
            "condition": condition_json(&cls.condition),
            "a": a,
            "endpoint": endpoint,
            "witness": witness.map(witness_json),
        }),
        csv_header: "verdict,condition,a,endpoint,z_star_re,z_star_im,theta_star,delta,attracted_m",
        csv,
        ok: true,
    })
}

fn scan(b_range: Span, c_range: Span, grid: u32) -> Result<Document, Error> {
    let axis = |s: Span| -> Vec<f64> {
        if grid == 1 {
            vec![s.lo]
        } else {
            (0..grid)
                .map(|i| s.lo + (s.hi - s.lo) * i as f64 / (grid - 1) as f64)
                .collect()
        }
    };
    let bs = axis(b_range);
    let cs = axis(c_range);
    let mut cells = Vec::with_capacity(bs.len() * cs.len());
    let mut csv = Vec::with_capacity(bs.len() * cs.len());
    for &b in &bs {
        for &c in &cs {
            let verdict = verdict_name(classify(b, c)?.verdict);
            cells.push(json!({ "b": b, "c": c, "verdict": verdict }));
            csv.push(format!("{b},{c},{verdict}"));
        }
    }
    Ok(Document {
        data: json!({
            "b_range": [b_range.lo, b_range.hi],
            "c_range": [c_range.lo, c_range.hi],
            "grid": grid,
            "cells": cells,
        }),
        csv_header: "b,c,verdict",
        csv,
        ok: true,
    })
}

fn curve(a: f64, m: u32, grid: u32) -> Result<Document, Error> {
    let mut points = Vec::with_capacity(grid as usize);
    let mut csv = Vec::with_capacity(grid as usize);
    for k in 1..=grid {
        let th =
            theta::THETA_LO + (theta::THETA_HI - theta::THETA_LO) * k as f64 / (grid as f64 + 1.0);
        let s = theta::sample(a, th).ok();
        let g = theta::g_m(a, m, th).ok();
        points.push(json!({
            "theta": th,
            "zeta": s.map(|p| p.zeta),
            "recip": s.map(|p| p.recip),
            "z": s.map(|p| p.z),
            "g": g,
        }));
        csv.push(format!(
            "{th},{},{},{},{}",
            opt_field(s.map(|p| p.zeta)),
            opt_field(s.map(|p| p.recip)),
            opt_field(s.map(|p| p.z)),
            opt_field(g),
        ));
    }
    Ok(Document {
        data: json!({ "a": a, "m": m, "grid": grid, "points": points }),
        csv_header: "theta,zeta,recip,z,g",
        csv,
        ok: true,
    })
}

fn density(family: &Family, m_max: u32, window: Span) -> Result<Document, Error> {
    let report = density_sample(&family.params()?, m_max, window.lo, window.hi)?;
    let mut csv = Vec::with_capacity(report.zeros.len());
    for (i, z) in report.zeros.iter().enumerate() {
        let gap = report.zeros.get(i + 1).map(|next| next - z);
        csv.push(format!("{i},{z},{}", opt_field(gap)));
    }
    Ok(Document {
        data: json!({
            "window": [report.window.0, report.window.1],
            "m_max": report.mmax,
            "count": report.zeros.len(),
            "max_gap": report.max_gap,
            "zeros": report.zeros,
        }),
        csv_header: "index,zero,gap_to_next",
        csv,
        ok: true,
    })
}

fn witness_cmd(family: &Family, probe: &ProbeArgs) -> Result<Document, Error> {
    let params = family.params()?;
    let w = nonreal_witness(&params, &probe.options())?;
    let mut csv = Vec::with_capacity(w.probes.len());
    for p in &w.probes {
        if p.accepted {
            csv.push(format!(
                "{},{},,{},{},{},{},{},{},{}",
                p.delta,
                p.accepted,
                w.theta_star,
                w.z_star.re,
                w.z_star.im,
                w.construction_residual,
                w.equimodular_gap,
                w.attracted_m.map(|m| m.to_string()).unwrap_or_default(),
                w.closest_distance,
            ));
        } else {
            csv.push(format!(
                "{},{},{},,,,,,,",
                p.delta,
                p.accepted,
                csv_field(p.rejection.as_deref().unwrap_or("")),
            ));
        }
    }
    Ok(Document {
        data: json!({ "family": family.echo(), "witness": witness_json(&w) }),
        csv_header: "delta,accepted,rejection,theta_star,z_star_re,z_star_im,\
                     construction_residual,equimodular_gap,attracted_m,closest_distance",
        csv,
        ok: true,
    })
}

fn witness_json(w: &Witness) -> Value {
    json!({
        "z_star": complex_json(w.z_star),
        "z_star_normalized": complex_json(w.z_star_normalized),
        "theta_star": w.theta_star,
        "delta": w.delta,
        "zeta": complex_json(w.zeta),
        "roots": w.roots.iter().map(|r| complex_json(*r)).collect::<Vec<_>>(),
        "construction_residual": w.construction_residual,
        "equimodular_gap": w.equimodular_gap,
        "attracted_m": w.attracted_m,
        "closest_distance": w.closest_distance,
        "probes": w.probes.iter().map(|p| json!({
            "delta": p.delta,
            "accepted": p.accepted,
            "rejection": p.rejection,
        })).collect::<Vec<_>>(),
    })
}

fn complex_json(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn regime_name(r: Regime) -> &'static str {
    match r {
        Regime::Normalized => "normalized",
        Regime::RawBC => "raw",
        Regime::CZero => "czero",
    }
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::AllReal => "AllReal",
        Verdict::NotAllReal => "NotAllReal",
    }
}

fn condition_name(c: &Condition) -> &'static str {
    match c {
        Condition::CZeroNonnegativeB { .. } => "CZeroNonnegativeB",
        Condition::CZeroNegativeB { .. } => "CZeroNegativeB",
        Condition::RatioInRange { .. } => "RatioInRange",
        Condition::RatioBelowRange { .. } => "RatioBelowRange",
        Condition::RatioAboveRange { .. } => "RatioAboveRange",
    }
}

fn condition_json(c: &Condition) -> Value {
    let kind = condition_name(c);
    match *c {
        Condition::CZeroNonnegativeB { b } | Condition::CZeroNegativeB { b } => {
            json!({ "kind": kind, "b": b })
        }
        Condition::RatioInRange { a }
        | Condition::RatioBelowRange { a }
        | Condition::RatioAboveRange { a } => json!({ "kind": kind, "a": a }),
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Domain(_) => "Domain",
        Error::NegativeDiscriminant { .. } => "NegativeDiscriminant",
        Error::AsymptoteHit { .. } => "AsymptoteHit",
        Error::DegenerateRoots { .. } => "DegenerateRoots",
        Error::ZeroArgument => "ZeroArgument",
        Error::ZeroPolynomial => "ZeroPolynomial",
        Error::CountDeficit { .. } => "CountDeficit",
        Error::MatchFailure(_) => "MatchFailure",
        Error::WitnessSearchFailure { .. } => "WitnessSearchFailure",
        Error::EmptyWindow { .. } => "EmptyWindow",
    }
}

fn opt_field(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// Quote a CSV field if it holds a delimiter, quote, or newline.
fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn config_echo(cli: &Cli) -> Value {
    let mut obj = match &cli.command {
        Command::Gen { family, m } => {
            let mut v = json!({ "command": "gen", "m": m });
            merge(&mut v, family.echo());
            v
        }
        Command::Zeros { family, m } => {
            let mut v = json!({ "command": "zeros", "m": m });
            merge(&mut v, family.echo());
            v
        }
        Command::Check { family, m } => {
            let mut v = json!({ "command": "check", "m": m });
            merge(&mut v, family.echo());
            v
        }
        Command::Classify { family, probe } => {
            let mut v = json!({
                "command": "classify",
                "empirical_max": probe.empirical_max,
                "no_empirical": probe.no_empirical,
            });
            merge(&mut v, family.echo());
            v
        }
        Command::Scan {
            b_range,
            c_range,
            grid,
        } => json!({
            "command": "scan",
            "b_range": [b_range.lo, b_range.hi],
            "c_range": [c_range.lo, c_range.hi],
            "grid": grid,
        }),
        Command::Curve { a, m, grid } => {
            json!({ "command": "curve", "a": a, "m": m, "grid": grid })
        }
        Command::Density {
            family,
            m_max,
            window,
        } => {
            let mut v = json!({
                "command": "density",
                "m_max": m_max,
                "window": [window.lo, window.hi],
            });
            merge(&mut v, family.echo());
            v
        }
        Command::Witness { family, probe } => {
            let mut v = json!({
                "command": "witness",
                "empirical_max": probe.empirical_max,
                "no_empirical": probe.no_empirical,
            });
            merge(&mut v, family.echo());
            v
        }
    };
    merge(
        &mut obj,
        json!({ "format": match cli.format { Format::Csv => "csv", Format::Json => "json" } }),
    );
    if let Some(bits) = cli.precision_bits {
        merge(&mut obj, json!({ "precision_bits": bits }));
    }
    obj
}

fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(dst), Value::Object(src)) = (into, from) {
        dst.extend(src);
    }
}

fn emit(cli: &Cli, doc: &Document) -> std::io::Result<()> {
    let text = match cli.format {
        Format::Json => {
            let full = json!({
                "meta": {
                    "version": env!("CARGO_PKG_VERSION"),
                    "config": config_echo(cli),
                    "tolerances": {
                        "tol_real": cli.tol_real,
                        "tol_residual": cli.tol_residual,
                    },
                },
                "data": doc.data,
            });
            let mut s = serde_json::to_string_pretty(&full).expect("document serializes");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::with_capacity(doc.csv.len() * 32 + doc.csv_header.len() + 1);
            s.push_str(doc.csv_header);
            s.push('\n');
            for line in &doc.csv {
                s.push_str(line);
                s.push('\n');
            }
            s
        }
    };
    match &cli.out {
        Some(path) => {
            let resolved = if path.is_relative() {
                match env::var_os("FOURTERM_OUT_DIR") {
                    Some(dir) => PathBuf::from(dir).join(path),
                    None => path.clone(),
                }
            } else {
                path.clone()
            };
            fs::write(resolved, text)
        }
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}
