//! Command-line front end. [`run`] does all the work and returns what to
//! print and the exit status, so it can be driven from tests.

use std::ffi::OsString;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};

use crate::abelian::group_name;
use crate::classifier::{scan_exceptions, verdict_dimension, verdict_ring, DimensionVerdict, DEFAULT_SCAN_CAP};
use crate::corpus;
use crate::fusion_ring::{
    fp_dim_data, invertibles, nilpotency, parse_ring, stabilizer, tensor_square_check, universal_grading,
    validate_ring, FusionRing, RingViolation, DEFAULT_TOLERANCE,
};
use crate::metric_group::{
    gauss_sum, parse_metric, validate_metric, MetricGroup, MetricReport, MetricViolation, DEFAULT_ELEMENT_CAP,
};
use crate::report::{join_list, Report};
use crate::witt::{
    class_order, classes_of, generated_subgroup, pointed_witt_class, WittError, DEFAULT_CLOSURE_CAP,
    DEFAULT_ORDER_CAP,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Debug, Parser)]
#[command(name = "fusionkit", version, about = "Fusion ring invariants, Witt classes and dimension criteria")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Bound on the number of group elements any exhaustive search visits.
    #[arg(long, env = "FUSIONKIT_ELEMENT_CAP", default_value_t = DEFAULT_ELEMENT_CAP, global = true)]
    pub element_cap: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a fusion-ring (.fr) or metric-group (.mg) file.
    Validate { file: String },
    /// Dimensions, invertibles, grading, nilpotency and verdict of a ring.
    Analyze {
        file: String,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        /// Analyze even if some axioms fail.
        #[arg(long)]
        force: bool,
    },
    /// Pointed Witt class with the reduction trace.
    WittClass { file: String },
    /// Order of the pointed Witt class.
    WittOrder {
        file: String,
        #[arg(long, env = "FUSIONKIT_ORDER_CAP", default_value_t = DEFAULT_ORDER_CAP)]
        order_cap: u32,
    },
    /// Subgroup of the Witt group generated by the given classes.
    WittSubgroup {
        #[arg(required = true)]
        files: Vec<String>,
        #[arg(long, env = "FUSIONKIT_CLOSURE_CAP", default_value_t = DEFAULT_CLOSURE_CAP)]
        closure_cap: usize,
    },
    /// Verdict for a category of the given dimension.
    Classify {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Dimensions below `limit` with no two-prime factorization.
    Scan {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        limit: u64,
        #[arg(long)]
        odd: bool,
        #[arg(long, env = "FUSIONKIT_SCAN_CAP", default_value_t = DEFAULT_SCAN_CAP)]
        scan_cap: u64,
    },
}

/// What the process should print and return.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

struct Failure {
    code: i32,
    message: String,
    /// Partial report to print before the message.
    report: Option<Report>,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure { code: EXIT_USAGE, message: message.into(), report: None }
    }

    fn invalid(message: impl Into<String>) -> Failure {
        Failure { code: EXIT_INVALID, message: message.into(), report: None }
    }
}

impl From<WittError> for Failure {
    fn from(e: WittError) -> Failure {
        Failure::invalid(e.to_string())
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { stdout: String::new(), stderr: text, code: EXIT_USAGE }
            } else {
                Outcome { stdout: text, stderr: String::new(), code: EXIT_OK }
            };
        }
    };
    let render = |r: &Report| match cli.format {
        Format::Text => r.render_text(),
        Format::Machine => r.render_machine(),
    };
    match dispatch(&cli) {
        Ok(report) => Outcome { stdout: render(&report), stderr: String::new(), code: EXIT_OK },
        Err(f) => Outcome {
            stdout: f.report.as_ref().map(render).unwrap_or_default(),
            stderr: format!("error: {}\n", f.message),
            code: f.code,
        },
    }
}

fn dispatch(cli: &Cli) -> Result<Report, Failure> {
    let cap = cli.element_cap;
    match &cli.command {
        Command::Validate { file } => validate(file, cap),
        Command::Analyze { file, tolerance, force } => analyze(file, *tolerance, *force),
        Command::WittClass { file } => witt_class(file, cap),
        Command::WittOrder { file, order_cap } => witt_order(file, *order_cap, cap),
        Command::WittSubgroup { files, closure_cap } => witt_subgroup(files, *closure_cap, cap),
        Command::Classify { n } => {
            let mut r = Report::new();
            r.section("dimension").push(format!("n = {n}"));
            r.put("n", n);
            verdict_section(&mut r, &verdict_dimension(*n));
            Ok(r)
        }
        Command::Scan { limit, odd, scan_cap } => scan(*limit, *odd, *scan_cap),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Ring,
    Metric,
}

/// Reads a file from disk, falling back to the bundled corpus by name.
fn load(name: &str) -> Result<(String, String), Failure> {
    let path = Path::new(name);
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{name}: {e}")))?;
        return Ok((name.to_string(), text));
    }
    corpus::lookup(name)
        .map(|t| (name.to_string(), t.to_string()))
        .ok_or_else(|| Failure::usage(format!("{name}: no such file or bundled example")))
}

fn kind_of(name: &str, text: &str) -> Result<Kind, Failure> {
    if name.ends_with(".fr") {
        return Ok(Kind::Ring);
    }
    if name.ends_with(".mg") {
        return Ok(Kind::Metric);
    }
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    match first.split_whitespace().next() {
        Some("rank") => Ok(Kind::Ring),
        Some("orders") => Ok(Kind::Metric),
        _ => Err(Failure::usage(format!("{name}: cannot tell whether this is a ring or a metric group"))),
    }
}

fn violations_report(kind: &str, items: &[String]) -> Report {
    let mut r = Report::new();
    r.put("kind", kind);
    r.put("valid", false);
    r.put("violations", items.len());
    let lines = r.section("violations");
    lines.extend(items.iter().cloned());
    for (i, v) in items.iter().enumerate() {
        r.put(format!("violation.{i}"), v);
    }
    r
}

fn load_ring(name: &str, force: bool) -> Result<(FusionRing, Vec<RingViolation>), Failure> {
    let (name, text) = load(name)?;
    let raw = parse_ring(&text).map_err(|e| Failure::invalid(format!("{name}: syntax error at {e}")))?;
    let violations = validate_ring(&raw);
    if violations.is_empty() {
        return Ok((FusionRing::from_candidate_unchecked(raw), violations));
    }
    let shape = violations.iter().any(|v| matches!(v, RingViolation::Arity { .. } | RingViolation::EmptyRing));
    if !force || shape {
        let items: Vec<String> = violations.iter().map(ToString::to_string).collect();
        return Err(Failure {
            code: EXIT_INVALID,
            message: format!("{name}: {} axiom violation(s)", items.len()),
            report: Some(violations_report("ring", &items)),
        });
    }
    Ok((FusionRing::from_candidate_unchecked(raw), violations))
}

fn load_metric(name: &str, cap: u64) -> Result<MetricGroup, Failure> {
    let (name, text) = load(name)?;
    let raw = parse_metric(&text).map_err(|e| Failure::invalid(format!("{name}: syntax error at {e}")))?;
    MetricGroup::with_cap(&raw, cap).map_err(|report| metric_failure(&name, &report))
}

fn metric_failure(name: &str, report: &MetricReport) -> Failure {
    let items: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
    let message = match report.violations.as_slice() {
        [MetricViolation::TooLarge { .. }] => format!("{name}: {}", items[0]),
        _ => format!("{name}: form is not well defined"),
    };
    Failure { code: EXIT_INVALID, message, report: Some(violations_report("metric", &items)) }
}

fn require_nondegenerate(mg: &MetricGroup) -> Result<(), Failure> {
    if mg.is_nondegenerate() {
        Ok(())
    } else {
        Err(Failure::invalid(format!("{} is degenerate", mg.describe())))
    }
}

fn validate(file: &str, cap: u64) -> Result<Report, Failure> {
    let (name, text) = load(file)?;
    let mut r = Report::new();
    match kind_of(&name, &text)? {
        Kind::Ring => {
            let (ring, _) = load_ring(file, false)?;
            r.section("ring").push(format!("{name}: valid fusion ring of rank {}", ring.rank()));
            r.put("kind", "ring");
            r.put("valid", true);
            r.put("rank", ring.rank());
        }
        Kind::Metric => {
            let raw = parse_metric(&text).map_err(|e| Failure::invalid(format!("{name}: syntax error at {e}")))?;
            let report = validate_metric(&raw, cap);
            if !report.is_valid() {
                return Err(metric_failure(&name, &report));
            }
            let mg = MetricGroup::with_cap(&raw, cap).expect("validated above");
            let nondegenerate = mg.is_nondegenerate();
            r.section("metric group").extend([
                format!("{name}: {}", mg.describe()),
                format!("order {}", mg.order()),
                format!("nondegenerate: {nondegenerate}"),
            ]);
            r.put("kind", "metric");
            r.put("valid", nondegenerate);
            r.put("order", mg.order());
            r.put_list("orders", mg.orders());
            r.put("nondegenerate", nondegenerate);
            if !nondegenerate {
                return Err(Failure {
                    code: EXIT_INVALID,
                    message: format!("{name}: form is degenerate"),
                    report: Some(r),
                });
            }
        }
    }
    Ok(r)
}

fn labels(ring: &FusionRing, xs: &[usize]) -> String {
    xs.iter().map(|&i| ring.label(i)).collect::<Vec<_>>().join(" ")
}

fn analyze(file: &str, tolerance: f64, force: bool) -> Result<Report, Failure> {
    let (ring, violations) = load_ring(file, force)?;
    let mut r = Report::new();
    let head = r.section("ring");
    head.push(format!("rank {}", ring.rank()));
    head.push(format!("labels {}", ring.labels().join(" ")));
    if !violations.is_empty() {
        head.push(format!("forced past {} axiom violation(s); results are unreliable", violations.len()));
    }
    r.put("rank", ring.rank());
    r.put("forced_violations", violations.len());

    let data = fp_dim_data(&ring, tolerance).map_err(|e| Failure::invalid(e.to_string()))?;
    let mut lines = Vec::new();
    for i in 0..ring.rank() {
        let exact = match data.exact_square[i] {
            Some(s) => format!("sqrt({s})"),
            None => "uncertified".into(),
        };
        lines.push(format!(
            "{}: FPdim {} ± {:e}, exact {exact}",
            ring.label(i),
            data.dims[i],
            data.error_bounds[i]
        ));
        r.put(format!("simple.{i}.label"), ring.label(i));
        r.put(format!("simple.{i}.fpdim"), data.dims[i]);
        r.put(format!("simple.{i}.fpdim_error"), format!("{:e}", data.error_bounds[i]));
        r.put(
            format!("simple.{i}.fpdim_sq"),
            data.exact_square[i].map_or("none".to_string(), |s| s.to_string()),
        );
    }
    let total_exact = data.total_exact.map_or("none".to_string(), |t| t.to_string());
    lines.push(format!("total {} ± {:e}, exact {total_exact}", data.total, data.total_error));
    lines.push(format!("integral {}, weakly integral {}", data.integral, data.weakly_integral));
    r.put("total", data.total);
    r.put("total_error", format!("{:e}", data.total_error));
    r.put("total_exact", total_exact);
    r.put("integral", data.integral);
    r.put("weakly_integral", data.weakly_integral);
    r.section("dimensions").extend(lines);

    let inv = invertibles(&ring);
    let factors = inv.invariant_factors();
    r.section("invertibles").push(format!(
        "{} ({}), order {}",
        labels(&ring, &inv.members),
        group_name(&factors),
        inv.order()
    ));
    r.put("invertibles.order", inv.order());
    r.put_list("invertibles.members", &inv.members);
    r.put("invertibles.group", group_name(&factors));

    let mut lines = Vec::new();
    for x in 0..ring.rank() {
        let stab = stabilizer(&ring, x).unwrap_or_default();
        r.put_list(format!("simple.{x}.stabilizer"), &stab);
        match tensor_square_check(&ring, x) {
            Ok(t) => {
                let inv_part: Vec<usize> = t.invertible.keys().copied().collect();
                let rest: Vec<String> = t
                    .non_invertible
                    .iter()
                    .map(|(&k, &m)| if m == 1 { ring.label(k).to_string() } else { format!("{m} {}", ring.label(k)) })
                    .collect();
                lines.push(format!(
                    "{x}⊗{x}*: invertible part {{{}}} = G[{x}] {{{}}}; other constituents {}",
                    labels(&ring, &inv_part),
                    labels(&ring, &stab),
                    if rest.is_empty() { "none".to_string() } else { rest.join(" + ") },
                    x = ring.label(x)
                ));
                r.put_list(format!("simple.{x}.xx_invertible"), &inv_part);
                r.put(format!("simple.{x}.xx_check"), "ok");
            }
            Err(e) => {
                lines.push(e.clone());
                r.put(format!("simple.{x}.xx_check"), "failed");
            }
        }
    }
    r.section("stabilizers and x⊗x*").extend(lines);

    match universal_grading(&ring) {
        Ok(g) => {
            let mut lines = vec![format!("group {} of order {}", g.group_name, g.order())];
            for (b, comp) in g.components.iter().enumerate() {
                lines.push(format!("component {b}: {}", labels(&ring, comp)));
                r.put_list(format!("grading.component.{b}"), comp);
            }
            r.put("grading.order", g.order());
            r.put("grading.group", &g.group_name);
            r.put_list("grading.invariant_factors", &g.invariant_factors);
            r.section("universal grading").extend(lines);
        }
        Err(e) => {
            r.section("universal grading").push(e.to_string());
            r.put("grading.order", "none");
        }
    }

    match nilpotency(&ring, ring.rank() + 1) {
        Ok(n) => {
            let sizes: Vec<usize> = n.tower.iter().map(|s| s.len()).collect();
            r.section("nilpotency").push(format!(
                "adjoint tower sizes {}; nilpotent: {}",
                sizes.iter().map(ToString::to_string).collect::<Vec<_>>().join(" > "),
                n.nilpotent
            ));
            r.put("nilpotent", n.nilpotent);
            r.put_list("adjoint_tower", &sizes);
        }
        Err(e) => {
            r.section("nilpotency").push(e);
            r.put("nilpotent", "unknown");
        }
    }

    let verdict = verdict_ring(&ring, tolerance).map_err(|e| Failure::invalid(e.to_string()))?;
    verdict_section(&mut r, &verdict);
    Ok(r)
}

fn verdict_section(r: &mut Report, v: &DimensionVerdict) {
    let mut lines = vec![format!("verdict {}", v.kind)];
    r.put("verdict", v.kind);
    if let Some(p) = v.prime {
        lines.push(format!("prime p = {p}"));
        r.put("verdict.prime", p);
    }
    match &v.witness {
        Some(f) => {
            lines.push(format!("witness {f}"));
            r.put("witness", f);
            r.put("witness.p", f.p.map_or("none".into(), |p| p.to_string()));
            r.put("witness.a", f.a);
            r.put("witness.q", f.q.map_or("none".into(), |q| q.to_string()));
            r.put("witness.b", f.b);
            r.put("witness.c", f.c);
        }
        None => r.put("witness", "none"),
    }
    for (i, n) in v.notes.iter().enumerate() {
        lines.push(format!("note: {n}"));
        r.put(format!("verdict.note.{i}"), n);
    }
    r.section("verdict").extend(lines);
}

fn metric_section(r: &mut Report, mg: &MetricGroup, cap: u64) -> Result<(), Failure> {
    let g = gauss_sum(mg, cap).map_err(|e| Failure::invalid(e.to_string()))?;
    let eighth = g.eighth.expect("nondegenerate forms pass the Milgram check");
    let mag = g.magnitude_sq.expect("nondegenerate forms pass the Milgram check");
    r.section("metric group").extend([
        mg.describe(),
        format!("order {}", mg.order()),
        format!("Gauss sum: |G|² = {mag}, arg G = 2π·{eighth}/8"),
    ]);
    r.put("group", mg.describe());
    r.put("order", mg.order());
    r.put("gauss.magnitude_sq", mag);
    r.put("gauss.eighth", eighth);
    Ok(())
}

fn witt_class(file: &str, cap: u64) -> Result<Report, Failure> {
    let mg = load_metric(file, cap)?;
    require_nondegenerate(&mg)?;
    let mut r = Report::new();
    metric_section(&mut r, &mg, cap)?;
    let red = pointed_witt_class(&mg, cap)?;

    let mut lines = Vec::new();
    for (i, s) in red.steps.iter().enumerate() {
        lines.push(format!(
            "step {i} (p = {}): {} along {:?} -> {}",
            s.prime,
            s.from.describe(),
            s.element,
            s.to.describe()
        ));
        r.put(format!("step.{i}.prime"), s.prime);
        r.put(format!("step.{i}.element"), join_list(&s.element));
        r.put(format!("step.{i}.order_before"), s.from.order());
        r.put(format!("step.{i}.order_after"), s.to.order());
    }
    if lines.is_empty() {
        lines.push("no isotropic elements; already anisotropic".into());
    }
    r.put("steps", red.steps.len());
    r.section("reduction").extend(lines);

    let mut lines = Vec::new();
    let primes: Vec<u64> = red.class.parts().keys().copied().collect();
    for (p, rep) in red.class.parts() {
        let g = gauss_sum(rep, cap).map_err(|e| Failure::invalid(e.to_string()))?;
        let eighth = g.eighth.expect("representatives are nondegenerate");
        lines.push(format!("{p}: {} (order {}, Gauss phase {eighth}/8)", rep.describe(), rep.order()));
        r.put(format!("class.{p}"), rep.describe());
        r.put(format!("class.{p}.order"), rep.order());
        r.put(format!("class.{p}.gauss.eighth"), eighth);
    }
    if lines.is_empty() {
        lines.push("identity".into());
    }
    lines.push("Gauss phase preserved through every step (exact check)".into());
    r.put("class.identity", red.class.is_identity());
    r.put_list("class.primes", &primes);
    r.section("anisotropic representative").extend(lines);
    Ok(r)
}

fn witt_order(file: &str, order_cap: u32, cap: u64) -> Result<Report, Failure> {
    let mg = load_metric(file, cap)?;
    require_nondegenerate(&mg)?;
    let mut r = Report::new();
    metric_section(&mut r, &mg, cap)?;
    let class = pointed_witt_class(&mg, cap)?.class;
    r.section("class").push(class.to_string());
    r.put("class", &class);
    match class_order(&class, order_cap, cap) {
        Ok(n) => {
            r.section("order").push(format!("class order {n}"));
            r.put("class_order", n);
            Ok(r)
        }
        Err(WittError::OrderExceedsCap(c)) => {
            r.section("order").push(format!("class order exceeds cap {c}"));
            r.put("class_order", "exceeds_cap");
            r.put("order_cap", c);
            Err(Failure { code: EXIT_INVALID, message: format!("class order exceeds cap {c}"), report: Some(r) })
        }
        Err(e) => Err(e.into()),
    }
}

fn witt_subgroup(files: &[String], closure_cap: usize, cap: u64) -> Result<Report, Failure> {
    let mut groups = Vec::new();
    let mut r = Report::new();
    let mut lines = Vec::new();
    for (i, f) in files.iter().enumerate() {
        let mg = load_metric(f, cap)?;
        require_nondegenerate(&mg)?;
        lines.push(format!("generator {i}: {f}: {}", mg.describe()));
        r.put(format!("generator.{i}"), mg.describe());
        groups.push(mg);
    }
    r.section("generators").extend(lines);
    let gens = classes_of(&groups, cap)?;
    let sub = generated_subgroup(&gens, closure_cap, cap)?;
    r.section("subgroup").extend([
        format!("order {}", sub.order()),
        format!("invariant factors {}", join_list(&sub.invariant_factors)),
        format!("group {}", sub.name()),
        format!("exponent {}", sub.exponent()),
    ]);
    r.put("subgroup.order", sub.order());
    r.put_list("subgroup.invariant_factors", &sub.invariant_factors);
    r.put("subgroup.group", sub.name());
    r.put("subgroup.exponent", sub.exponent());
    let mut lines = Vec::new();
    for (i, e) in sub.elements.iter().enumerate() {
        lines.push(format!("{i}: {e}"));
        r.put(format!("element.{i}"), e);
    }
    r.section("elements").extend(lines);
    let mut lines = Vec::new();
    for (i, row) in sub.table.iter().enumerate() {
        lines.push(row.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
        r.put_list(format!("table.{i}"), row);
    }
    r.section("table").extend(lines);
    Ok(r)
}

fn scan(limit: u64, odd: bool, scan_cap: u64) -> Result<Report, Failure> {
    let s = scan_exceptions(limit, odd, scan_cap).map_err(|e| Failure::usage(e.to_string()))?;
    let mut r = Report::new();
    let range = if odd { format!("odd n < {limit}") } else { format!("n < {limit}") };
    let mut lines = vec![
        format!("{range} without a two-prime factorization: {}", s.exceptions.len()),
        format!("exceptions {{{}}}", join_list(&s.exceptions)),
    ];
    r.put("limit", limit);
    r.put("odd_only", odd);
    r.put("count", s.exceptions.len());
    r.put_list("exceptions", &s.exceptions);
    match &s.claimed {
        Some(c) => {
            lines.push(format!("claimed exceptions {{{}}}", join_list(c)));
            if s.divergence.is_empty() && s.missing.is_empty() {
                lines.push("agrees with the claimed exceptions".into());
            } else {
                lines.push(format!(
                    "DIVERGENCE: found but not claimed {{{}}}; claimed but not found {{{}}}",
                    join_list(&s.divergence),
                    join_list(&s.missing)
                ));
            }
            r.put_list("claimed", c);
            r.put_list("divergence", &s.divergence);
            r.put_list("missing", &s.missing);
        }
        None => {
            lines.push("no claimed exceptional set covers this range".into());
            r.put("claimed", "none");
        }
    }
    r.section("scan").extend(lines);
    Ok(r)
}
