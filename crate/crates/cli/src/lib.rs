//! Command-line verifier: loads a JSON problem (or a bundled fixture), runs
//! one command and renders a deterministic line report.
//!
//! Exit codes: `0` every check passed, `1` a checked identity failed, `2`
//! the input was rejected.

pub mod problem;

use std::ffi::OsString;
use std::path::PathBuf;

use c0ideals::decomposition::{decompose, verify_decomposition};
use c0ideals::fixtures::bundled_names;
use c0ideals::function_algebra::{ideal_from_y_join_check, recover_s, theta, PointwiseIdeal};
use c0ideals::lattice::{enumerate_compatible_families, ClosedFamily, CompatibilityMode, PointSet};
use c0ideals::lie::{
    cqp_transfer_check, is_lie_ideal, lie_normalizer, normalizer_decomposition_check, pointwise_normalizer,
    sandwich_suite, weak_centrality,
};
use c0ideals::linalg::Subspace;
use c0ideals::report::{Report, Status};
use c0ideals::{LieAnalysis, Scalar};
use clap::Parser;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use problem::{sets_to_json, Concrete, Problem, ProblemFile, MAX_LATTICE_SIZE, MAX_POINTS};

/// Rejected input; always exit code 2.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct InputError(pub String);

impl From<c0ideals::Error> for InputError {
    fn from(e: c0ideals::Error) -> Self {
        InputError(e.to_string())
    }
}

pub const COMMANDS: [&str; 14] = [
    "validate",
    "compat",
    "gamma",
    "theta",
    "recover",
    "decompose",
    "verify-fin-sum",
    "ideal-from-y",
    "normalizer",
    "sandwich",
    "cqp",
    "weak-central",
    "verify-all",
    "fixtures",
];

/// Largest `lattice size × points` any accepted problem can have.
const DEFAULT_FAMILY_BOUND: usize = MAX_LATTICE_SIZE * MAX_POINTS;

#[derive(Debug, Parser)]
#[command(name = "c0ideals", version, about = "Exact finite-model verifier for ideals and Lie ideals of C0(X, A)")]
pub struct Args {
    /// validate | compat | gamma | theta | recover | decompose | verify-fin-sum |
    /// ideal-from-y | normalizer | sandwich | cqp | weak-central | verify-all | fixtures
    pub command: String,
    /// JSON problem file
    pub problem: Option<PathBuf>,
    /// Use a bundled fixture instead of a file
    #[arg(long)]
    pub fixture: Option<String>,
    /// Override the point count |X|
    #[arg(long)]
    pub points: Option<usize>,
    /// Decide compatibility by the exhaustive-gamma oracle
    #[arg(long)]
    pub oracle: bool,
    /// Drop zero terms from decompositions
    #[arg(long)]
    pub minimal: bool,
    /// Seed for random-subspace suites
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Cap on lattice size × points for family enumeration
    #[arg(long)]
    pub bound: Option<usize>,
    /// Random samples per ideal, and unstructured samples, in the sandwich suite
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome { code: 0, stdout: text, stderr: String::new() },
                _ => Outcome { code: 2, stdout: String::new(), stderr: text },
            };
        }
    };
    let mut out = Vec::new();
    match execute(&args, &mut out) {
        Ok(passed) => Outcome {
            code: if passed { 0 } else { 1 },
            stdout: join_lines(&out),
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: 2,
            stdout: join_lines(&out),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn join_lines(lines: &[String]) -> String {
    lines.iter().map(|l| format!("{l}\n")).collect()
}

fn execute(args: &Args, out: &mut Vec<String>) -> Result<bool, InputError> {
    let command = args.command.as_str();
    if !COMMANDS.contains(&command) {
        return Err(InputError(format!("unknown command {command:?}; expected one of {}", COMMANDS.join(", "))));
    }
    if command == "fixtures" {
        for (name, description) in bundled_names() {
            out.push(format!("{name}\t{description}"));
        }
        return Ok(true);
    }
    let p = match (&args.problem, &args.fixture) {
        (Some(path), None) => problem::load_file(path, args.points)?,
        (None, Some(name)) => problem::load_fixture(name, args.points)?,
        (Some(_), Some(_)) => return Err(InputError("give a problem file or --fixture, not both".into())),
        (None, None) => return Err(InputError("a problem file or --fixture is required".into())),
    };
    if command == "validate" {
        return Ok(validate(&p, out));
    }
    if let Err(v) = p.lattice.validate() {
        return Err(InputError(format!("lattice is invalid ({v}); run `validate` for details")));
    }
    let mut report = Report::new();
    match command {
        "compat" => compat(&p, args.oracle, &mut report)?,
        "gamma" => {
            out.extend(p.lattice.gamma_table());
            return Ok(true);
        }
        "theta" => {
            out.push(theta_json(&p)?);
            return Ok(true);
        }
        "recover" => {
            out.push(recover_json(&p)?);
            return Ok(true);
        }
        "decompose" => decompose_terms(&p, args.minimal, out, &mut report)?,
        "verify-fin-sum" => return verify_fin_sum(&p, args.bound, out),
        "ideal-from-y" => ideal_from_y(&p, &mut report)?,
        "normalizer" => normalizer(&p, &mut report)?,
        "sandwich" => sandwich(&p, args.seed, args.samples, out, &mut report)?,
        "cqp" => cqp(&p, &mut report)?,
        "weak-central" => weak_central(&p, &mut report)?,
        "verify-all" => return verify_all(&p, args, out),
        _ => unreachable!("command list checked above"),
    }
    out.extend(report.lines(&p.name));
    Ok(report.passed())
}

fn validate(p: &Problem, out: &mut Vec<String>) -> bool {
    match p.lattice.validate() {
        Ok(()) => {
            out.push(format!("PASS {} lattice-laws size={}", p.name, p.lattice.size()));
            match p.lattice.distributivity_failure() {
                None => out.push(format!("INFO {} distributive", p.name)),
                Some((i, j, k)) => out.push(format!(
                    "INFO {} non-distributive at ({}, {}, {})",
                    p.name,
                    i + 1,
                    j + 1,
                    k + 1
                )),
            }
            true
        }
        Err(v) => {
            out.push(format!("FAIL {} lattice-laws {v}", p.name));
            false
        }
    }
}

fn family(p: &Problem) -> Result<ClosedFamily<'_>, InputError> {
    let Some(sets) = &p.family else {
        return Err(InputError("this command needs \"family\"".into()));
    };
    Ok(ClosedFamily::new(&p.lattice, p.space, sets.clone())?)
}

fn compatible_family(p: &Problem) -> Result<ClosedFamily<'_>, InputError> {
    let f = family(p)?;
    if let Some(reason) = f.incompatibility() {
        return Err(InputError(format!("family is not compatible: {reason}")));
    }
    Ok(f)
}

fn concrete(p: &Problem) -> Result<&Concrete, InputError> {
    p.concrete
        .as_ref()
        .ok_or_else(|| InputError("this command needs a concrete algebra (\"blocks\")".into()))
}

fn fmt_stalks(stalks: &[usize]) -> String {
    let items: Vec<String> = stalks.iter().map(|s| (s + 1).to_string()).collect();
    format!("[{}]", items.join(","))
}

fn compat(p: &Problem, oracle: bool, report: &mut Report) -> Result<(), InputError> {
    let f = family(p)?;
    let (mode, reason) = if oracle {
        ("exhaustive", f.exhaustive_incompatibility())
    } else {
        ("pairwise", f.incompatibility())
    };
    debug_assert_eq!(
        reason.is_none(),
        f.is_compatible_with(if oracle { CompatibilityMode::Exhaustive } else { CompatibilityMode::Pairwise })
    );
    match reason {
        None => report.record(true, f.id(), format!("compatible-{mode}")),
        Some(r) => report.record(false, f.id(), format!("compatible-{mode}: {r}")),
    }
    Ok(())
}

fn emit(file: &ProblemFile) -> String {
    serde_json::to_string(file).expect("problem files serialize")
}

fn theta_json(p: &Problem) -> Result<String, InputError> {
    let ideal = theta(&compatible_family(p)?)?;
    let file = ProblemFile {
        ideal: Some(ideal.stalks().iter().map(|s| s + 1).collect()),
        ..p.header.clone()
    };
    Ok(emit(&file))
}

fn recover_json(p: &Problem) -> Result<String, InputError> {
    let Some(stalks) = &p.ideal else {
        return Err(InputError("this command needs \"ideal\"".into()));
    };
    let ideal = PointwiseIdeal::new(&p.lattice, stalks.clone())?;
    let f = recover_s(&ideal, p.space)?;
    let file = ProblemFile {
        family: Some(sets_to_json(f.sets())),
        ..p.header.clone()
    };
    Ok(emit(&file))
}

fn decompose_terms(p: &Problem, minimal: bool, out: &mut Vec<String>, report: &mut Report) -> Result<(), InputError> {
    let f = compatible_family(p)?;
    let d = decompose(&f)?;
    let terms: Vec<_> = if minimal { d.nonzero_terms().copied().collect() } else { d.terms().to_vec() };
    for t in terms {
        out.push(format!("term J(Y={}) I_{}", t.y, t.index + 1));
    }
    report.record(d.evaluate() == theta(&f)?, f.id(), "decomposition-equals-theta");
    Ok(())
}

fn verify_fin_sum(p: &Problem, bound: Option<usize>, out: &mut Vec<String>) -> Result<bool, InputError> {
    let families = enumerate_compatible_families(&p.lattice, p.space, bound.unwrap_or(DEFAULT_FAMILY_BOUND))?;
    let mut passed = 0;
    for f in &families {
        let r = verify_decomposition(f);
        passed += usize::from(r.passed());
        out.extend(r.lines(&p.name));
    }
    let status = if passed == families.len() { Status::Pass } else { Status::Fail };
    out.push(format!("{passed}/{} families {status}", families.len()));
    Ok(passed == families.len())
}

fn ideal_from_y(p: &Problem, report: &mut Report) -> Result<(), InputError> {
    let ys: Vec<PointSet> = match p.y {
        Some(y) => vec![y],
        None => p.space.closed_sets().collect(),
    };
    let ts: Vec<usize> = match p.ideal_index {
        Some(t) => vec![t],
        None => (0..p.lattice.size()).collect(),
    };
    for &y in &ys {
        for &t in &ts {
            let ok = match &p.concrete {
                Some(c) => c.algebra.verify_ideal_from_y::<Scalar>(y, c.to_mask[t])?,
                None => ideal_from_y_join_check(&p.lattice, p.space, y, t)?,
            };
            report.record(ok, format!("Y={y} t={}", t + 1), "sum-equals-vanishing-ideal");
        }
    }
    Ok(())
}

fn normalizer(p: &Problem, report: &mut Report) -> Result<(), InputError> {
    let c = concrete(p)?;
    let algebra = &c.algebra;
    let ideals: Vec<Vec<usize>> = match &p.ideal {
        Some(s) => vec![s.clone()],
        None => PointwiseIdeal::all(&p.lattice, p.space, usize::MAX)?
            .iter()
            .map(|j| j.stalks().to_vec())
            .collect(),
    };
    let centre = algebra.centre::<Scalar>();
    for stalks in ideals {
        let masks = c.masks(&stalks);
        let j = algebra.ideal_subspace::<Scalar>(&masks)?;
        let n = lie_normalizer(algebra, &j)?;
        let subject = format!("J={} dim(J)={} dim(N)={}", fmt_stalks(&stalks), j.dim(), n.dim());
        report.record(n == j.sum(&centre)?, subject.clone(), "normalizer-equals-ideal-plus-centre");
        let ideal = PointwiseIdeal::new(algebra.lattice(), masks)?;
        report.record(n == pointwise_normalizer::<Scalar>(algebra, &ideal)?, subject.clone(), "normalizer-is-pointwise");
        if algebra.spec().block_count() == 1 {
            let r = normalizer_decomposition_check::<Scalar>(algebra, &ideal)?;
            for check in r.checks() {
                report.record(check.status, subject.clone(), check.identity.clone());
            }
        }
    }
    Ok(())
}

fn sandwich(p: &Problem, seed: u64, samples: usize, out: &mut Vec<String>, report: &mut Report) -> Result<(), InputError> {
    let c = concrete(p)?;
    let analysis = LieAnalysis::new(&c.algebra)?;
    if let Some(rows) = &p.subspace {
        let l = Subspace::span(rows, c.algebra.dim())?;
        let lie = is_lie_ideal(&c.algebra, &l);
        let witness = analysis.sandwich_witness(&l);
        let witness_text = match witness {
            Some(b) => format!("J={}", fmt_stalks(&c.labels(b.ideal.stalks()))),
            None => "none".into(),
        };
        out.push(format!(
            "INFO {} subspace dim={} lie-ideal={} witness={witness_text}",
            p.name,
            l.dim(),
            if lie { "yes" } else { "no" }
        ));
        report.record(lie == witness.is_some(), format!("dim={}", l.dim()), "lie-ideal-iff-sandwiched");
        return Ok(());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let summary = sandwich_suite(&analysis, &mut rng, samples, samples);
    out.push(format!(
        "INFO {} sandwich seed={seed} between={} random={} random-lie-ideals={}",
        p.name, summary.between_checked, summary.random_checked, summary.random_lie_ideals
    ));
    for d in &summary.discrepancies {
        report.record(false, format!("seed={seed}"), d.clone());
    }
    report.record(
        summary.discrepancies.is_empty(),
        format!("seed={seed}"),
        format!("sandwich-suite discrepancies={}", summary.discrepancies.len()),
    );
    Ok(())
}

fn cqp(p: &Problem, report: &mut Report) -> Result<(), InputError> {
    let c = concrete(p)?;
    let analysis = LieAnalysis::new(&c.algebra)?;
    let mut rows: Vec<(Vec<usize>, bool)> = analysis
        .bounds()
        .iter()
        .map(|b| {
            let expected = b.subspace.sum(analysis.centre()).expect("same ambient");
            (c.labels(b.ideal.stalks()), b.upper == expected)
        })
        .collect();
    rows.sort();
    let cqp = rows.iter().all(|(_, ok)| *ok);
    for (stalks, ok) in rows {
        report.record(ok, format!("J={}", fmt_stalks(&stalks)), "normalizer-equals-ideal-plus-centre");
    }
    report.record(weak_centrality::<Scalar>(&c.algebra) == cqp, "B", "weak-central-iff-cqp");
    report.extend(cqp_transfer_check::<Scalar>(c.algebra.spec(), p.space)?);
    Ok(())
}

fn weak_central(p: &Problem, report: &mut Report) -> Result<(), InputError> {
    let c = concrete(p)?;
    let weak = weak_centrality::<Scalar>(&c.algebra);
    let (cqp, _) = c0ideals::lie::check_cqp::<Scalar>(&c.algebra)?;
    report.record(weak, "B", "weak-central");
    report.record(weak == cqp, "B", "weak-central-iff-cqp");
    Ok(())
}

/// Every suite the problem supports, in a fixed order.
fn verify_all(p: &Problem, args: &Args, out: &mut Vec<String>) -> Result<bool, InputError> {
    let mut ok = validate(p, out);
    out.extend(p.lattice.gamma_table().into_iter().map(|g| format!("INFO {} {g}", p.name)));
    let mut report = Report::new();
    if p.family.is_some() {
        compat(p, false, &mut report)?;
        compat(p, true, &mut report)?;
    }
    out.extend(report.lines(&p.name));
    ok &= report.passed();

    let bound = args.bound.unwrap_or(DEFAULT_FAMILY_BOUND);
    if p.lattice.size() * p.space.point_count() <= bound {
        ok &= verify_fin_sum(p, Some(bound), out)?;
    } else {
        out.push(format!("SKIP {} verify-fin-sum bound {bound} exceeded", p.name));
    }

    let mut report = Report::new();
    ideal_from_y(p, &mut report)?;
    if p.concrete.is_some() {
        normalizer(p, &mut report)?;
        cqp(p, &mut report)?;
        weak_central(p, &mut report)?;
    }
    out.extend(report.lines(&p.name));
    ok &= report.passed();

    if p.concrete.is_some() && p.subspace.is_none() {
        let mut report = Report::new();
        sandwich(p, args.seed, args.samples, out, &mut report)?;
        out.extend(report.lines(&p.name));
        ok &= report.passed();
    }
    out.push(format!("verify-all {}", Status::from(ok)));
    Ok(ok)
}
