use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Duration;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

use hyperb_core::bcoloring::{
    coset_coloring, coset_coloring_hypercube, exact_b_chromatic, validate_coloring, verify_coset_bcoloring,
    Budget, PowerGraph, SolveOptions, SolveStatus, WitnessDoc,
};
use hyperb_core::bounds::{bound_report, verify_r_ge_3s, CSV_HEADER};
use hyperb_core::compression::{sweep_fixpoints, verify_compression_inequality};
use hyperb_core::cube::MAX_DENSE;
use hyperb_core::neighborhoods::{
    verify_close_inequality, verify_closed_form, verify_initial_segment_neighborhoods, verify_open_inequality,
    VerificationReport,
};
use hyperb_core::notation::IntRange;
use hyperb_core::subset::{rank_bits, unrank_bits, SimplicialIter};
use hyperb_core::{Error, GroundSet, Mode, SubsetMask, SCHEMA_VERSION};

use crate::args::{ColorArgs, Format, RankArgs, SolveArgs, TableArgs, Theorem, VerifyArgs};
use crate::exit::{CliError, ExitStatus};

type CmdResult = Result<ExitStatus, CliError>;

fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(path) => fs::write(path, text).map_err(|e| CliError::io(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::io(format!("stdout: {e}")))
        }
    }
}

fn to_json(value: &impl Serialize) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    text
}

pub fn table(args: TableArgs) -> CmdResult {
    let mut rows = Vec::new();
    for n in args.n.iter().filter(|&n| n >= 2) {
        let p_range = args.p.unwrap_or(IntRange { start: 1, end: n });
        for p in p_range.iter().filter(|&p| (1..=n).contains(&p)) {
            let mut report = bound_report(n, p)?;
            if let Some(q) = args.q {
                report = report.with_hamming(q)?;
            }
            rows.push(report);
        }
    }
    let text = match args.format {
        Format::Csv => {
            let mut out = String::from(CSV_HEADER);
            if args.q.is_some() {
                out.push_str(",q,hamming_lower");
            }
            out.push('\n');
            for row in &rows {
                out.push_str(&row.csv_row());
                if let Some((q, claim)) = &row.hamming_lower {
                    out.push_str(&format!(",{q},{}", claim.value().map(|v| v.to_string()).unwrap_or_default()));
                }
                out.push('\n');
            }
            out
        }
        Format::Json => to_json(&json!({ "schema": SCHEMA_VERSION, "rows": rows })),
    };
    emit(args.out.output.as_deref(), &text)?;
    Ok(ExitStatus::Ok)
}

fn sweep_mode(args: &VerifyArgs) -> Result<Mode, CliError> {
    match (args.exhaustive, args.samples, args.seed) {
        (true, _, _) => Ok(Mode::Exhaustive),
        (false, Some(count), Some(seed)) => Ok(Mode::Sample { count, seed }),
        _ => Err(CliError::usage(
            "this statement needs --exhaustive or --samples N --seed S",
        )),
    }
}

fn need_n(args: &VerifyArgs) -> Result<IntRange, CliError> {
    args.n.ok_or_else(|| CliError::usage("--n is required for this statement"))
}

fn radii(args: &VerifyArgs, n: u32) -> Vec<u32> {
    let range = args.p.unwrap_or(IntRange { start: 1, end: n.saturating_sub(1) });
    range.iter().collect()
}

pub fn verify(args: VerifyArgs) -> CmdResult {
    let name = args.theorem.to_possible_value().expect("no skipped variants").get_name().to_string();
    let mut reports: Vec<Value> = Vec::new();
    let mut passed = true;
    match args.theorem {
        Theorem::Close | Theorem::Open => {
            let mode = sweep_mode(&args)?;
            let check = if args.theorem == Theorem::Close {
                verify_close_inequality
            } else {
                verify_open_inequality
            };
            for n in need_n(&args)?.iter() {
                for p in radii(&args, n) {
                    let report = check(n as usize, p, mode)?;
                    passed &= report.passed();
                    reports.push(serde_json::to_value(report).expect("serializable"));
                }
            }
        }
        Theorem::Compression => {
            let mode = sweep_mode(&args)?;
            for n in need_n(&args)?.iter() {
                let tally = verify_compression_inequality(n as usize, mode)?;
                let report = VerificationReport::from_tally("compression", n as usize, None, mode, tally);
                passed &= report.passed();
                reports.push(serde_json::to_value(report).expect("serializable"));
            }
        }
        Theorem::InitialSegment => {
            for n in need_n(&args)?.iter() {
                let report = verify_initial_segment_neighborhoods(n as usize)?;
                passed &= report.violations.is_empty();
                reports.push(serde_json::to_value(report).expect("serializable"));
            }
        }
        Theorem::Fixpoints => {
            for n in need_n(&args)?.iter() {
                let sweep = sweep_fixpoints(n as usize)?;
                passed &= sweep.failures.is_empty();
                reports.push(serde_json::to_value(sweep).expect("serializable"));
            }
        }
        Theorem::ClosedForm => {
            for n in need_n(&args)?.iter() {
                for row in verify_closed_form(n)? {
                    passed &= row.ok;
                    reports.push(serde_json::to_value(row).expect("serializable"));
                }
            }
        }
        Theorem::R3s => {
            let report = verify_r_ge_3s(args.n_max.unwrap_or(64))?;
            passed &= report.violations.is_empty();
            reports.push(serde_json::to_value(report).expect("serializable"));
        }
        Theorem::Coset => {
            let q = args.q.ok_or_else(|| CliError::usage("--q is required for the coset statement"))?;
            for n in need_n(&args)?.iter() {
                for p in radii(&args, n) {
                    match verify_coset_bcoloring(n, q, p) {
                        Ok(v) => reports.push(serde_json::to_value(v).expect("serializable")),
                        Err(Error::Integrity(why)) => {
                            passed = false;
                            reports.push(json!({ "n": n, "q": q, "p": p, "integrity_failure": why }));
                        }
                        Err(e) => return Err(e.into()),
                    }
                }
            }
        }
    }
    let doc = json!({
        "schema": SCHEMA_VERSION,
        "theorem": name,
        "passed": passed,
        "reports": reports,
    });
    emit(args.out.output.as_deref(), &to_json(&doc))?;
    Ok(if passed { ExitStatus::Ok } else { ExitStatus::Violations })
}

pub fn solve(args: SolveArgs) -> CmdResult {
    let g = match (args.hypercube, args.hamming) {
        (Some(n), _) => PowerGraph::hypercube(n, args.p)?,
        (None, Some((n, q))) => PowerGraph::hamming(n, q, args.p)?,
        (None, None) => unreachable!("clap requires one graph"),
    };
    if !(args.max_seconds.is_finite() && args.max_seconds >= 0.0) {
        return Err(CliError::usage("--max-seconds must be a non-negative number"));
    }
    let options = SolveOptions {
        budget: Budget {
            max_nodes: args.max_nodes,
            max_time: Duration::from_secs_f64(args.max_seconds),
        },
        use_formula_bounds: args.formula_bounds,
    };
    let out = exact_b_chromatic(&g, options)?;
    eprintln!("{g}: {}", out.summary());
    let doc = json!({
        "schema": SCHEMA_VERSION,
        "graph": g.to_string(),
        "status": out.status,
        "b": if out.is_exact() { Some(out.value) } else { None },
        "lower": out.value,
        "upper": out.upper,
        "start_k": out.start_k,
        "witness": WitnessDoc::new(&g, &out.witness),
    });
    emit(args.out.output.as_deref(), &to_json(&doc))?;
    Ok(match out.status {
        SolveStatus::Exact => ExitStatus::Ok,
        SolveStatus::Unknown => ExitStatus::Budget,
    })
}

pub fn color(args: ColorArgs) -> CmdResult {
    if let Some(path) = &args.check {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
        let (g, c) = WitnessDoc::decode(&text)?;
        let cert = validate_coloring(&g, &c)?;
        let valid = cert.valid_b;
        let doc = json!({ "schema": SCHEMA_VERSION, "graph": g.to_string(), "certificate": cert });
        emit(args.out.output.as_deref(), &to_json(&doc))?;
        return Ok(if valid { ExitStatus::Ok } else { ExitStatus::Violations });
    }
    let n = args.n.expect("clap requires --n without --check");
    let p = args.p.unwrap_or(n.saturating_sub(1));
    let (g, c) = if args.hypercube {
        if args.q.is_some_and(|q| q != 2) {
            return Err(CliError::usage("--hypercube implies q = 2"));
        }
        (PowerGraph::hypercube(n, p)?, coset_coloring_hypercube(n)?)
    } else {
        let q = args.q.ok_or_else(|| CliError::usage("--q is required unless --hypercube is given"))?;
        (PowerGraph::hamming(n, q, p)?, coset_coloring(n, q)?)
    };
    let mut text = WitnessDoc::new(&g, &c).to_json();
    text.push('\n');
    emit(args.out.output.as_deref(), &text)?;
    Ok(ExitStatus::Ok)
}

pub fn rank(args: RankArgs) -> CmdResult {
    let ground = GroundSet::standard(args.n)?;
    let text = if let Some(subset) = &args.subset {
        let x = SubsetMask::parse(subset, &ground)?;
        format!("{}\n", x.rank().0)
    } else if let Some(r) = args.rank {
        format!("{}\n", SubsetMask::from_bits(&ground, unrank_bits(args.n, r)?)?)
    } else {
        if args.n > MAX_DENSE {
            return Err(Error::Infeasible(format!("listing 2^{} subsets", args.n)).into());
        }
        let mut out = String::new();
        for bits in SimplicialIter::new(args.n) {
            let x = SubsetMask::from_bits(&ground, bits)?;
            out.push_str(&format!("{}\t{x}\n", rank_bits(args.n, bits)));
        }
        out
    };
    emit(None, &text)?;
    Ok(ExitStatus::Ok)
}
