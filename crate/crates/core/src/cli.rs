//! The `hypermod` command line.
//!
//! Exit codes: 0 success, 1 usage, 2 invalid structure, 3 an in-contract
//! theorem failure, 4 a capacity budget exceeded. JSON reports carry
//! `"schema": 1`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;
use crate::format::{self, Structure};
use crate::harness::{self, TheoremId, TheoremVerdict};
use crate::limits::Limits;
use crate::module::{check_standing_assumptions, Hypermodule};
use crate::multiplication;
use crate::report::ValidationReport;
use crate::ring::KrasnerHyperring;
use crate::search::{self, Finding, Mode, SearchSpec, Target};
use crate::set::ElementSet;
use crate::substructures;

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_THEOREM_FAILURE: i32 = 3;
pub const EXIT_CAPACITY: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "hypermod", version, about = "Finite Krasner (m,n)-hyperrings and (m,n)-hypermodules")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = OutputFormat::Text)]
    format: OutputFormat,

    /// Largest carrier whose hyperideal and subhypermodule lattices are enumerated.
    #[arg(long, global = true)]
    bound: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate the axioms and the standing assumptions.
    Check { file: PathBuf },
    /// List hyperideals or subhypermodules.
    Enumerate {
        file: PathBuf,
        #[command(flatten)]
        what: EnumerateWhat,
    },
    /// Classify hyperideals and report module invariants.
    Classify { file: PathBuf },
    /// Check theorems on the module in FILE.
    Verify {
        file: PathBuf,
        /// A theorem id such as `T3.3`, `T3.8` for all five parts, or `all`.
        #[arg(long)]
        theorem: String,
    },
    /// Generate small instances and hunt for counterexamples.
    Search(SearchArgs),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct EnumerateWhat {
    #[arg(long)]
    ideals: bool,
    #[arg(long)]
    submodules: bool,
}

#[derive(Args, Debug)]
struct SearchArgs {
    /// Largest ring and module carrier.
    #[arg(long)]
    max_size: usize,
    #[arg(long, default_value_t = 2)]
    m: usize,
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// A theorem selector or `is_multiplication`.
    #[arg(long)]
    target: String,
    #[arg(long, requires = "seed")]
    random: bool,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 100)]
    count: usize,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Capacity { .. } => EXIT_CAPACITY,
            Error::Parse(_) | Error::Shape(_) | Error::Arity(_) | Error::StructureViolation(_) => EXIT_INVALID,
            Error::Precondition(_) => EXIT_USAGE,
            Error::WellDefinedness(_) | Error::InternalAssert(_) => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = std::result::Result<(Value, String, i32), Failure>;

/// Run the command line on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut limits = Limits::default();
    if let Some(b) = cli.bound {
        limits.max_enum_size = b;
    }
    let outcome = match &cli.command {
        Command::Check { file } => check(file, &limits),
        Command::Enumerate { file, what } => enumerate(file, what.ideals, &limits),
        Command::Classify { file } => classify(file, &limits),
        Command::Verify { file, theorem } => verify(file, theorem, &limits),
        Command::Search(a) => search_cmd(a, &limits),
    };
    match outcome {
        Ok((report, text, code)) => {
            let _ = match cli.format {
                OutputFormat::Json => writeln!(out, "{}", with_schema(report)),
                OutputFormat::Text => write!(out, "{text}"),
            };
            code
        }
        Err(f) => {
            match cli.format {
                OutputFormat::Json => {
                    let _ = writeln!(out, "{}", json!({"schema": SCHEMA_VERSION, "error": f.message, "exit_code": f.code}));
                }
                OutputFormat::Text => {}
            }
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn with_schema(report: Value) -> String {
    let mut obj = serde_json::Map::new();
    obj.insert("schema".into(), json!(SCHEMA_VERSION));
    if let Value::Object(map) = report {
        obj.extend(map);
    }
    serde_json::to_string_pretty(&Value::Object(obj)).expect("JSON values serialize")
}

fn load(path: &Path) -> std::result::Result<Structure, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_USAGE,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    format::parse(&text).map_err(|e| {
        let message = e
            .diagnostics
            .iter()
            .map(|d| format!("{}:{}:{}: {}: {}", path.display(), d.line, d.column, d.category, d.message))
            .collect::<Vec<_>>()
            .join("\n");
        Failure {
            code: EXIT_INVALID,
            message,
        }
    })
}

fn require_module(s: &Structure) -> std::result::Result<&Hypermodule, Failure> {
    s.module.as_ref().ok_or_else(|| Failure {
        code: EXIT_INVALID,
        message: "this command needs a [module] section".into(),
    })
}

fn render_checks(title: &str, report: &ValidationReport, text: &mut String) {
    text.push_str(&format!("{title}\n"));
    for c in &report.checks {
        let status = if c.passed { "ok  " } else { "FAIL" };
        text.push_str(&format!("  {status} {}", c.name));
        if let Some(w) = &c.witness {
            text.push_str(&format!(": {w}"));
        }
        if let Some(n) = &c.note {
            text.push_str(&format!(" [{n}]"));
        }
        text.push('\n');
    }
}

fn validate_all(s: &Structure) -> (ValidationReport, Option<ValidationReport>) {
    (s.ring.validate(), s.module.as_ref().map(|m| m.validate()))
}

fn ensure_valid(s: &Structure) -> std::result::Result<(), Failure> {
    let (r, m) = validate_all(s);
    let first = r.failures().next().or_else(|| m.as_ref().and_then(|m| m.failures().next()));
    match first {
        None => Ok(()),
        Some(c) => Err(Failure {
            code: EXIT_INVALID,
            message: format!(
                "structure fails `{}`{}; run `check` for the full report",
                c.name,
                c.witness.as_ref().map(|w| format!(": {w}")).unwrap_or_default()
            ),
        }),
    }
}

fn check(file: &Path, limits: &Limits) -> Outcome {
    let s = load(file)?;
    let (ring_report, module_report) = validate_all(&s);
    let mut text = String::new();
    render_checks("ring", &ring_report, &mut text);
    let mut valid = ring_report.is_valid();
    let mut report = json!({"command": "check", "ring": ring_report});
    if let (Some(module), Some(mr)) = (&s.module, module_report) {
        render_checks("module", &mr, &mut text);
        valid &= mr.is_valid();
        report["module"] = json!(mr);
        if valid {
            let a = check_standing_assumptions(module, limits)?;
            text.push_str("standing assumptions\n");
            for (name, c) in [
                ("(a) singleton witness", &a.singleton_witness),
                ("(b) h(r, -r, 0) = {0}", &a.zero_difference),
                ("(c) torsion parts agree", &a.torsion_agreement),
            ] {
                let status = if c.holds { "ok  " } else { "WARN" };
                text.push_str(&format!("  {status} {name}"));
                if let Some(w) = &c.witness {
                    text.push_str(&format!(": {w}"));
                }
                text.push('\n');
            }
            report["standing_assumptions"] = json!(a);
        }
    }
    if s.ring.is_degenerate() {
        text.push_str("note: degenerate ring (1 = 0)\n");
    }
    report["degenerate"] = json!(s.ring.is_degenerate());
    report["valid"] = json!(valid);
    text.push_str(if valid { "valid\n" } else { "invalid\n" });
    Ok((report, text, if valid { EXIT_OK } else { EXIT_INVALID }))
}

fn show_sets(carrier: &crate::carrier::Carrier, sets: &[ElementSet]) -> Vec<Vec<String>> {
    sets.iter().map(|&s| carrier.set_labels(s)).collect()
}

fn enumerate(file: &Path, ideals: bool, limits: &Limits) -> Outcome {
    let s = load(file)?;
    ensure_valid(&s)?;
    let (kind, carrier, sets) = if ideals {
        let sets = substructures::enumerate_hyperideal_sets(&s.ring, limits)?;
        ("hyperideals", s.ring.carrier().clone(), sets)
    } else {
        let module = require_module(&s)?;
        let sets = substructures::enumerate_subhypermodule_sets(module, limits)?;
        ("subhypermodules", module.carrier().clone(), sets)
    };
    let mut text = format!("{} {kind}\n", sets.len());
    for &set in &sets {
        text.push_str(&format!("  {}\n", carrier.show_set(set)));
    }
    Ok((json!({"command": "enumerate", "kind": kind, kind: show_sets(&carrier, &sets)}), text, EXIT_OK))
}

fn classify_ring(ring: &KrasnerHyperring, limits: &Limits, text: &mut String) -> Result<Value, Failure> {
    let ideals = substructures::enumerate_hyperideal_sets(ring, limits)?;
    let c = ring.carrier();
    let mut rows = Vec::new();
    text.push_str("hyperideal                 maximal prime primary radical\n");
    for &q in &ideals {
        let k = substructures::classify(ring, &ideals, q);
        let yes = |b: bool| if b { "yes" } else { "no" };
        text.push_str(&format!(
            "  {:<24} {:<7} {:<5} {:<7} {}\n",
            c.show_set(q),
            yes(k.is_maximal),
            yes(k.is_prime),
            yes(k.is_primary),
            c.show_set(k.radical)
        ));
        rows.push(json!({
            "ideal": c.set_labels(q),
            "maximal": k.is_maximal,
            "prime": k.is_prime,
            "primary": k.is_primary,
            "radical": c.set_labels(k.radical),
        }));
    }
    let jr = match substructures::jacobson_radical_ring(ring, limits) {
        Ok(j) => Some(j),
        Err(Error::InternalAssert(_)) => None,
        Err(e) => return Err(e.into()),
    };
    match jr {
        Some(j) => text.push_str(&format!("J(R) = {}\n", c.show_set(j))),
        None => text.push_str("J(R) undefined: no maximal hyperideal\n"),
    }
    Ok(json!({"ideals": rows, "jacobson_radical_ring": jr.map(|j| c.set_labels(j))}))
}

fn classify(file: &Path, limits: &Limits) -> Outcome {
    let s = load(file)?;
    ensure_valid(&s)?;
    let mut text = String::new();
    let mut report = json!({"command": "classify"});
    report["ring"] = classify_ring(&s.ring, limits, &mut text)?;
    if let Some(module) = &s.module {
        let ideals = substructures::enumerate_hyperideal_sets(module.ring(), limits)?;
        let submodules = substructures::enumerate_subhypermodule_sets(module, limits)?;
        let c = module.carrier();
        let faithful = substructures::is_faithful(module);
        let cyclic = multiplication::is_cyclic(module);
        let cert = multiplication::is_multiplication(module, limits)?;
        let omega = multiplication::omega(module, &ideals);
        let jm = multiplication::jacobson_radical_module(module, &submodules);
        let rc = module.ring().carrier();
        text.push_str(&format!("faithful: {faithful}\n"));
        match cyclic {
            Some(x) => text.push_str(&format!("cyclic: yes, generator {}\n", c.label(x))),
            None => text.push_str("cyclic: no\n"),
        }
        text.push_str(&format!("multiplication: {}\n", cert.verdict));
        for (n, w) in &cert.witnesses {
            match w {
                Some(i) => text.push_str(&format!("  {} = g({}, M)\n", c.show_set(*n), rc.show_set(*i))),
                None => text.push_str(&format!("  {} has no hyperideal\n", c.show_set(*n))),
            }
        }
        text.push_str(&format!("omega(M) = {}\n", rc.show_set(omega.omega)));
        text.push_str(&format!("J(M) = {}\n", c.show_set(jm)));
        let witnesses: Vec<Value> = cert
            .witnesses
            .iter()
            .map(|(n, w)| json!({"submodule": c.set_labels(*n), "ideal": w.map(|i| rc.set_labels(i))}))
            .collect();
        report["module"] = json!({
            "faithful": faithful,
            "cyclic": cyclic.is_some(),
            "generator": cyclic.map(|x| c.label(x).to_string()),
            "multiplication": cert.verdict,
            "multiplication_witnesses": witnesses,
            "omega": rc.set_labels(omega.omega),
            "jacobson_radical_module": c.set_labels(jm),
        });
    }
    Ok((report, text, EXIT_OK))
}

fn verdict_line(v: &TheoremVerdict) -> String {
    let status = match (v.pass, v.out_of_contract) {
        (true, _) => "pass",
        (false, false) => "FAIL",
        (false, true) => "fail (out of contract)",
    };
    let mut line = format!(
        "{:<7} {:<24} hypotheses={} conclusion={}\n",
        v.theorem_id.as_str(),
        status,
        v.hypotheses_hold,
        v.conclusion_holds
    );
    for d in &v.directions {
        line.push_str(&format!(
            "          {} {} ({} instances)\n",
            if d.holds { "ok  " } else { "FAIL" },
            d.direction,
            d.instances
        ));
    }
    if !v.pass {
        line.push_str(&format!("          witness: {}\n", v.witness));
    }
    line
}

fn verify(file: &Path, theorem: &str, limits: &Limits) -> Outcome {
    let ids = TheoremId::select(theorem).ok_or_else(|| Failure {
        code: EXIT_USAGE,
        message: format!("unknown theorem id `{theorem}`"),
    })?;
    let s = load(file)?;
    ensure_valid(&s)?;
    let module = require_module(&s)?;
    let verdicts = harness::verify(module, &ids, limits)?;
    let failed = verdicts.iter().any(|v| v.is_counterexample());
    let mut text: String = verdicts.iter().map(verdict_line).collect();
    if verdicts.iter().any(|v| v.out_of_contract) {
        text.push_str("note: standing assumptions fail on this instance; failures are out of contract\n");
    }
    let report = json!({"command": "verify", "verdicts": verdicts});
    Ok((report, text, if failed { EXIT_THEOREM_FAILURE } else { EXIT_OK }))
}

fn search_cmd(a: &SearchArgs, limits: &Limits) -> Outcome {
    let target = Target::parse(&a.target).map_err(Failure::from)?;
    let mode = match (a.random, a.seed) {
        (true, Some(seed)) => Mode::Random { seed, count: a.count },
        (true, None) => {
            return Err(Failure {
                code: EXIT_USAGE,
                message: "--random needs --seed".into(),
            })
        }
        (false, _) => Mode::Exhaustive,
    };
    let spec = SearchSpec {
        max_ring_size: a.max_size,
        max_module_size: a.max_size,
        m: a.m,
        n: a.n,
        target,
        mode,
    };
    let report = search::hunt(&spec, limits)?;
    let counterexamples = report
        .hits
        .iter()
        .filter(|h| matches!(h.finding, Finding::Counterexample { .. }))
        .count();
    let mut text = format!(
        "{} rings, {} instances ({} in contract), {} out-of-contract failures\n",
        report.rings, report.instances, report.in_contract, report.out_of_contract_failures
    );
    for hit in &report.hits {
        match &hit.finding {
            Finding::Counterexample { verdict } => {
                text.push_str(&format!(
                    "counterexample to {} (|R| = {}, |M| = {})\n",
                    verdict.theorem_id, hit.ring_size, hit.module_size
                ));
                text.push_str(&verdict_line(verdict));
                for line in hit.instance.lines() {
                    text.push_str(&format!("    {line}\n"));
                }
            }
            Finding::Property { name, holds } => {
                text.push_str(&format!("{name} = {holds} (|R| = {}, |M| = {})\n", hit.ring_size, hit.module_size));
            }
        }
    }
    if matches!(spec.target, Target::Theorems(_)) {
        text.push_str(&format!("{counterexamples} counterexamples\n"));
    }
    let code = if counterexamples > 0 { EXIT_THEOREM_FAILURE } else { EXIT_OK };
    let mut value = serde_json::to_value(&report).expect("report serializes");
    value["command"] = json!("search");
    Ok((value, text, code))
}
