use std::io::{self, Read};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use seidel_core::analysis::{bounds_profile, moment_table};
use seidel_core::constructions::{
    border_certified, doubly_regular_constant, hc1_certified, is_skew_conference, join_certified,
    quadratic_residue_certified, target_determinant, transitive_certified, Certified,
};
use seidel_core::record::read_matrices;
use seidel_core::search::{enumerate_charpolys, enumerate_dets, find_membership, hill_climb_max, monte_carlo_stats};
use seidel_core::verify::{self, Suite, SuiteOptions};
use seidel_core::{MatrixRecord, SeidelMatrix};

use crate::{
    emit, expect, to_json, BoundsArgs, ClimbArgs, CmdResult, ConstructArgs, Construction, EnumerateArgs,
    Failure, Format, MembershipArgs, OutputArgs, RunConfig, SampleArgs, StatsArgs, VerifyArgs,
};

#[derive(Serialize)]
struct Report<'a, T: Serialize> {
    config: &'a RunConfig,
    #[serde(flatten)]
    result: &'a T,
}

fn workers(w: Option<usize>) -> usize {
    w.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// An explicit seed, or one drawn from the clock and recorded in the report.
fn seed_or_clock(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_nanos() as u64)
    })
}

fn format_or(out: &OutputArgs, default: Format, allowed: &[Format]) -> Result<Format, Failure> {
    let f = out.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(Failure::Usage(format!("format {f:?} is not available for this command").to_lowercase()))
    }
}

fn read_stdin() -> Result<Vec<SeidelMatrix>, Failure> {
    let mut buf = String::new();
    io::stdin().read_to_string(&mut buf)?;
    Ok(read_matrices(buf.as_bytes())?)
}

pub fn enumerate(a: EnumerateArgs) -> CmdResult {
    let format = format_or(&a.output, Format::Json, &[Format::Json, Format::Csv, Format::Table])?;
    let w = workers(a.workers);
    let mut report = if a.dets {
        enumerate_dets(a.n, w)?
    } else {
        enumerate_charpolys(a.n, w)?
    };
    if a.no_timing {
        report.duration_ms = None;
    }
    let config = RunConfig {
        command: if a.dets { "enumerate-dets" } else { "enumerate-charpolys" },
        n: Some(a.n),
        ..RunConfig::default()
    };
    let text = match format {
        Format::Json => to_json(&Report { config: &config, result: &report }),
        Format::Csv => report.to_csv(),
        Format::Table => report.to_table(),
    };
    emit(&a.output, &text)?;
    if let Some(path) = &a.expect {
        expect::check(path, &report)?;
    }
    Ok(())
}

pub fn construct(a: ConstructArgs) -> CmdResult {
    let certified: Certified = match a.which {
        Construction::Transitive { n } => transitive_certified(n),
        Construction::Join => {
            let ms = read_stdin()?;
            if ms.len() < 2 {
                return Err(Failure::Usage(format!("join needs two records on stdin, got {}", ms.len())));
            }
            join_certified(&ms[0], &ms[1])
        }
        Construction::TargetDet { n, k } => target_determinant(n, k)?,
        Construction::Residue { p } => quadratic_residue_certified(p)?,
        Construction::Border => {
            let ms = read_stdin()?;
            let s = ms
                .first()
                .ok_or_else(|| Failure::Usage("border needs a record on stdin".into()))?;
            border_certified(s)
        }
        Construction::Hc1 { k } => hc1_certified(k)?,
    };
    if a.verify && !certified.verify() {
        return Err(Failure::Invariant(format!(
            "certificate claim {:?} does not hold",
            certified.certificate.claim
        )));
    }
    let record = MatrixRecord::from(&certified.matrix).to_json_line();
    let cert = serde_json::to_string(&certified.certificate).expect("certificate serializes");
    emit(&OutputArgs { format: None, out: None }, &format!("{record}\n{cert}\n"))
}

pub fn stats(a: StatsArgs) -> CmdResult {
    let format = format_or(&a.output, Format::Table, &[Format::Json, Format::Csv, Format::Table])?;
    if a.max_n < 2 {
        return Err(Failure::Usage("--max-n must be at least 2".into()));
    }
    let table = moment_table(a.max_n);
    let text = match format {
        Format::Json => to_json(&table),
        Format::Csv => table.to_csv(),
        Format::Table => table.to_table(),
    };
    emit(&a.output, &text)
}

pub fn bounds(a: BoundsArgs) -> CmdResult {
    let format = format_or(&a.output, Format::Table, &[Format::Json, Format::Csv, Format::Table])?;
    let b = bounds_profile(a.n)?;
    let text = match format {
        Format::Json => to_json(&b),
        Format::Csv => b.to_csv(),
        Format::Table => b.to_table(),
    };
    emit(&a.output, &text)
}

pub fn verify(a: VerifyArgs) -> CmdResult {
    let format = format_or(&a.output, Format::Json, &[Format::Json, Format::Table])?;
    let suite: Suite = a.suite.parse()?;
    let seed = seed_or_clock(a.seed);
    let r = verify::run(suite, &SuiteOptions { n: a.n, trials: a.trials, seed })?;
    let config = RunConfig {
        command: "verify",
        n: a.n,
        trials: Some(a.trials),
        seed: Some(seed),
        ..RunConfig::default()
    };
    let text = match format {
        Format::Json => to_json(&Report { config: &config, result: &r }),
        _ => {
            let mut t = format!(
                "{}: {} checks, {} failed (seed {seed})\n",
                suite.name(),
                r.checks,
                r.failed
            );
            for f in &r.failures {
                t.push_str(&format!("  {f}\n"));
            }
            t
        }
    };
    emit(&a.output, &text)?;
    if r.passed() {
        Ok(())
    } else {
        Err(Failure::Invariant(format!("{} of {} checks failed in {}", r.failed, r.checks, suite.name())))
    }
}

#[derive(Serialize)]
struct MembershipOut {
    found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    record: Option<MatrixRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    strategy: Option<seidel_core::search::Strategy>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<seidel_core::constructions::ConstructionCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    steps: Option<u64>,
}

pub fn membership(a: MembershipArgs) -> CmdResult {
    let format = format_or(&a.output, Format::Json, &[Format::Json, Format::Table])?;
    let seed = seed_or_clock(a.seed);
    let m = find_membership(a.n, a.k, a.budget, seed)?;
    if let Some(m) = &m {
        if !m.certificate.verify(&m.matrix) {
            return Err(Failure::Invariant(format!("certificate for k = {} fails", a.k)));
        }
    }
    let config = RunConfig {
        command: "membership",
        n: Some(a.n),
        k: Some(a.k),
        budget: Some(a.budget),
        seed: Some(seed),
        ..RunConfig::default()
    };
    let text = match format {
        Format::Json => {
            let out = match &m {
                Some(m) => MembershipOut {
                    found: true,
                    record: Some(MatrixRecord::from(&m.matrix)),
                    strategy: Some(m.strategy),
                    certificate: Some(m.certificate.clone()),
                    steps: Some(m.steps),
                },
                None => MembershipOut { found: false, record: None, strategy: None, certificate: None, steps: None },
            };
            to_json(&Report { config: &config, result: &out })
        }
        _ => match &m {
            Some(m) => format!(
                "n = {}, k = {}: found by {} ({} steps)\n{}\n",
                a.n,
                a.k,
                m.provenance().as_str(),
                m.steps,
                MatrixRecord::from(&m.matrix).to_json_line()
            ),
            None => format!("n = {}, k = {}: not found within budget {}\n", a.n, a.k, a.budget),
        },
    };
    emit(&a.output, &text)
}

pub fn climb(a: ClimbArgs) -> CmdResult {
    let format = format_or(&a.output, Format::Json, &[Format::Json, Format::Table])?;
    let seed = seed_or_clock(a.seed);
    let r = hill_climb_max(a.n, a.budget, seed)?;
    if r.matrix.determinant() != r.det {
        return Err(Failure::Invariant("climbed determinant does not recompute".into()));
    }
    let config = RunConfig {
        command: "climb",
        n: Some(a.n),
        budget: Some(a.budget),
        seed: Some(seed),
        ..RunConfig::default()
    };
    let text = match format {
        Format::Json => to_json(&Report { config: &config, result: &r }),
        _ => format!(
            "n = {}: sqrt(det) = {} after {} steps, {} restarts (seed {seed})\n{}\n",
            a.n,
            r.sqrt_det,
            r.steps,
            r.restarts,
            r.record.to_json_line()
        ),
    };
    emit(&a.output, &text)
}

pub fn sample(a: SampleArgs) -> CmdResult {
    let format = format_or(&a.output, Format::Json, &[Format::Json, Format::Table])?;
    let seed = seed_or_clock(a.seed);
    let s = monte_carlo_stats(a.n, a.samples, seed, workers(a.workers))?;
    let config = RunConfig {
        command: "sample",
        n: Some(a.n),
        samples: Some(a.samples),
        seed: Some(seed),
        ..RunConfig::default()
    };
    let text = match format {
        Format::Json => to_json(&Report { config: &config, result: &s }),
        _ => format!(
            "n = {}, {} samples (seed {seed})\nE[det]   = {:.6} +- {:.6}\nE[det^2] = {:.6} +- {:.6}\n",
            a.n, a.samples, s.mean_det, s.se_det, s.mean_det_sq, s.se_det_sq
        ),
    };
    emit(&a.output, &text)
}

#[derive(Serialize)]
struct Inspection {
    n: usize,
    bits: String,
    #[serde(with = "seidel_core::record::bigint_json")]
    det: seidel_core::BigInt,
    #[serde(skip_serializing_if = "Option::is_none")]
    pfaffian: Option<String>,
    char_poly: String,
    skew_conference: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    doubly_regular: Option<usize>,
}

pub fn inspect(a: OutputArgs) -> CmdResult {
    let format = format_or(&a, Format::Json, &[Format::Json, Format::Table])?;
    let mut text = String::new();
    for s in read_stdin()? {
        let rec = MatrixRecord::from(&s);
        let i = Inspection {
            n: s.order(),
            bits: rec.bits,
            det: s.determinant(),
            pfaffian: s.pfaffian().ok().map(|p| p.to_string()),
            char_poly: s.char_poly().to_string(),
            skew_conference: is_skew_conference(&s),
            doubly_regular: doubly_regular_constant(&s.to_tournament()),
        };
        match format {
            Format::Json => {
                text.push_str(&serde_json::to_string(&i).expect("inspection serializes"));
                text.push('\n');
            }
            _ => text.push_str(&format!(
                "n = {}  det = {}  char poly = {}{}\n",
                i.n,
                i.det,
                i.char_poly,
                if i.skew_conference { "  (skew-conference)" } else { "" }
            )),
        }
    }
    emit(&a, &text)
}
