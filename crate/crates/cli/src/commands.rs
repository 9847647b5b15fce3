use std::fs;
use std::path::PathBuf;

use clap::Args;
use rayon::prelude::*;
use serde_json::{json, Value};
use sullivan::cohomology::{CohomologyEngine, CohomologyError};
use sullivan::library::{library, lookup_entry, LibraryError};
use sullivan::model::ModelError;
use sullivan::parse::parse_model_unvalidated;
use sullivan::random::{random_elliptic_model, RandomError, RandomParams};
use sullivan::sequences::{build_gysin, build_wang, SequenceError, Window};
use sullivan::toomer::{e0_spectrum, gap_histogram, scan_seed, ScanError, ToomerError};
use sullivan::verify::{verify, verify_all, Check, Subject, Verdict, VerifyError};
use sullivan::{print_model, ParseError, SullivanModel};

use crate::report::{to_json, Document, Status};

/// A command failure, classified by exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Invalid(String),
    Internal(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Invalid(_) => 3,
            Failure::Internal(_) => 5,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Invalid(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<LibraryError> for Failure {
    fn from(e: LibraryError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<ModelError> for Failure {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::UnknownGenerator(_) => Failure::Usage(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<CohomologyError> for Failure {
    fn from(e: CohomologyError) -> Self {
        match e {
            CohomologyError::NotACocycle | CohomologyError::WrongSlot { .. } | CohomologyError::ZeroClass => {
                Failure::Internal(e.to_string())
            }
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<ToomerError> for Failure {
    fn from(e: ToomerError) -> Self {
        match e {
            ToomerError::Cohomology(c) => c.into(),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<SequenceError> for Failure {
    fn from(e: SequenceError) -> Self {
        match e {
            SequenceError::Model(m) => m.into(),
            SequenceError::Cohomology(c) => c.into(),
            SequenceError::NotHomogeneous(_) | SequenceError::WrongParity { .. } => Failure::Invalid(e.to_string()),
            SequenceError::NotDivisible | SequenceError::Bookkeeping(_) => Failure::Internal(e.to_string()),
        }
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Cohomology(c) => c.into(),
            VerifyError::Toomer(t) => t.into(),
            VerifyError::UnknownCheck(_) => Failure::Usage(e.to_string()),
        }
    }
}

impl From<RandomError> for Failure {
    fn from(e: RandomError) -> Self {
        match e {
            RandomError::Infeasible(_) => Failure::Usage(e.to_string()),
            RandomError::Cohomology(c) => c.into(),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<ScanError> for Failure {
    fn from(e: ScanError) -> Self {
        match e {
            ScanError::Random(r) => r.into(),
            ScanError::Toomer(t) => t.into(),
        }
    }
}

/// Shape of a generated random model.
#[derive(Args, Debug, Clone)]
pub struct RandomArgs {
    /// Number of even generators.
    #[arg(long, default_value_t = 2)]
    pub evens: usize,
    /// Number of odd generators.
    #[arg(long, default_value_t = 2)]
    pub odds: usize,
    /// Word length of every odd generator's differential.
    #[arg(long, default_value_t = 2)]
    pub length: u32,
    /// Largest even generator degree.
    #[arg(long, default_value_t = 2)]
    pub max_even_degree: u32,
}

impl RandomArgs {
    pub fn params(&self) -> RandomParams {
        let mut p = RandomParams::new(self.evens, self.odds, self.length);
        p.even_degrees = (2, self.max_even_degree);
        p
    }

    fn describe(&self) -> Value {
        json!({
            "evens": self.evens,
            "odds": self.odds,
            "length": self.length,
            "max_even_degree": self.max_even_degree,
        })
    }
}

/// Where the model comes from: a file, the library, or a seeded generator.
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct ModelArgs {
    /// Path to a model description (`.sul`).
    #[arg(long)]
    pub model: Option<PathBuf>,
    /// Name of a built-in model, e.g. `cp:3` or `cpl-sphere:4,1`.
    #[arg(long)]
    pub lib: Option<String>,
    /// Seed for a random elliptic model (shape set by the random flags).
    #[arg(long)]
    pub seed: Option<u64>,
}

pub struct Source {
    pub name: String,
    pub origin: Value,
    pub text: String,
}

impl Source {
    pub fn load(args: &ModelArgs, random: &RandomArgs) -> Result<Source, Failure> {
        if let Some(path) = &args.model {
            let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            return Ok(Source {
                name: path.display().to_string(),
                origin: json!({"file": path.display().to_string()}),
                text,
            });
        }
        if let Some(name) = &args.lib {
            let entry = lookup_entry(name)?;
            return Ok(Source {
                name: entry.name.clone(),
                origin: json!({"library": entry.name}),
                text: entry.text,
            });
        }
        let seed = args.seed.expect("clap requires one source");
        let generated = random_elliptic_model(seed, &random.params())?;
        Ok(Source {
            name: format!("random:{seed}"),
            origin: json!({"generated": {"seed": seed, "params": random.describe(), "attempts": generated.attempts}}),
            text: print_model(&generated.model),
        })
    }

    pub fn describe(&self) -> Value {
        json!({"name": self.name, "origin": self.origin, "text": self.text})
    }

    pub fn model(&self) -> Result<SullivanModel, Failure> {
        Ok(parse_model_unvalidated(&self.text)?.validate()?)
    }
}

fn finish(command: &str, status: Status, source: &Source, result: Value) -> Document {
    Document::new(command, status, result).with_source(Some(source.describe()))
}

pub fn validate(source: &Source) -> Result<Document, Failure> {
    let parsed = match parse_model_unvalidated(&source.text) {
        Ok(m) => m,
        Err(e) => {
            return Ok(finish("validate", Status::Invalid, source, json!({"error": e.to_string()})));
        }
    };
    let violations = parsed.violations();
    if !violations.is_empty() {
        return Ok(finish("validate", Status::Invalid, source, json!({ "violations": to_json(&violations) })));
    }
    let model = parsed.validate()?;
    let engine = CohomologyEngine::new(model);
    let model = engine.model();
    let result = json!({
        "generators": model.generators().iter().map(|g| json!({"name": g.name, "degree": g.degree})).collect::<Vec<_>>(),
        "odd_generators": model.odd_count(),
        "even_generators": model.even_count(),
        "length_profile": model.length_profile().to_string(),
        "formal_dimension_formula": model.formal_dimension_formula(),
        "ellipticity": to_json(&engine.certify_elliptic(None)?),
        "violations": [],
    });
    Ok(finish("validate", Status::Pass, source, result))
}

fn default_max_degree(engine: &CohomologyEngine) -> u32 {
    engine.formal_dimension_formula().max(0) as u32 + 2
}

pub fn cohomology(source: &Source, window: Option<u32>) -> Result<Document, Failure> {
    let engine = CohomologyEngine::new(source.model()?);
    let max = window.unwrap_or_else(|| default_max_degree(&engine));
    let table = engine.table(max)?;
    let certificate = engine.certify_elliptic(None)?;
    let fundamental = if certificate.is_certified() {
        let class = engine.fundamental_class()?;
        json!({"degree": class.degree, "representative": engine.model().algebra().display(&class.representative)})
    } else {
        Value::Null
    };
    let result = json!({
        "max_degree": max,
        "betti": table.betti,
        "total": table.total,
        "top_degree": table.top_degree,
        "euler_characteristic": table.euler_characteristic(),
        "ellipticity": to_json(&certificate),
        "fundamental_class": fundamental,
    });
    Ok(finish("cohomology", Status::Pass, source, result))
}

pub fn bigraded(source: &Source) -> Result<Document, Failure> {
    let engine = CohomologyEngine::new(source.model()?);
    let table = engine.bigraded_profile()?;
    let per_length: Vec<usize> = (0..=table.e).map(|k| table.length_dimension(k)).collect();
    let result = json!({
        "length": engine.grading(),
        "formal_dimension": table.formal_dimension,
        "e": table.e,
        "length_dimensions": per_length,
        "n": table.n,
        "big_n": table.big_n,
        "h": table.h,
    });
    Ok(finish("bigraded", Status::Pass, source, result))
}

pub fn toomer(source: &Source) -> Result<Document, Failure> {
    let engine = CohomologyEngine::new(source.model()?);
    let report = e0_spectrum(&engine)?;
    let status = if report.gaps.is_empty() { Status::Pass } else { Status::Fail };
    Ok(finish("toomer", status, source, to_json(&report)))
}

pub fn sequence(source: &Source, wang: bool, generator: &str, window: Option<u32>) -> Result<Document, Failure> {
    let model = source.model()?;
    let les = if wang { build_wang(&model, generator)? } else { build_gysin(&model, generator)? };
    let window = window.map(|max_degree| Window {
        max_degree,
        ..les.default_window()
    });
    let report = les.check_exactness(window)?;
    let relation = les.formal_dimension_relation()?;
    let top = les.top_isomorphisms()?;
    let failures: Vec<Value> = report.failures().map(to_json).collect();
    let ok = report.exact && relation.holds && top;
    let result = json!({
        "kind": report.kind,
        "generator": report.generator,
        "generator_degree": report.generator_degree,
        "length": report.length,
        "window": report.window,
        "exact": report.exact,
        "nodes_checked": report.nodes.len() + report.ungraded.len(),
        "failures": failures,
        "formal_dimension_relation": relation,
        "top_isomorphisms": top,
        "nodes": report.nodes,
        "ungraded": report.ungraded,
    });
    let command = if wang { "wang" } else { "gysin" };
    Ok(finish(command, if ok { Status::Pass } else { Status::Fail }, source, result))
}

pub fn verify_command(source: &Source, check: &str) -> Result<Document, Failure> {
    let subject = Subject::new(source.name.clone(), source.model()?);
    let reports = if check == "all" {
        verify_all(&subject)?
    } else {
        vec![verify(Check::parse(check)?, &subject)?]
    };
    let count = |v: Verdict| reports.iter().filter(|r| r.verdict == v).count();
    let (pass, fail, na) = (count(Verdict::Pass), count(Verdict::Fail), count(Verdict::NotApplicable));
    let status = if fail > 0 {
        Status::Fail
    } else if pass == 0 {
        Status::NotApplicable
    } else {
        Status::Pass
    };
    let result = json!({
        "passed": pass,
        "failed": fail,
        "not_applicable": na,
        "reports": to_json(&reports),
    });
    Ok(finish("verify", status, source, result))
}

pub fn worker_count() -> Result<Option<usize>, Failure> {
    match std::env::var("SULLIVAN_THREADS") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .map(Some)
            .ok_or_else(|| Failure::Usage(format!("SULLIVAN_THREADS must be a positive integer, got `{v}`"))),
        Err(_) => Ok(None),
    }
}

pub fn gap_scan(start: u64, count: u64, random: &RandomArgs) -> Result<Document, Failure> {
    let params = random.params();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = worker_count()? {
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| Failure::Internal(e.to_string()))?;
    let seeds: Vec<u64> = (start..start + count).collect();
    // par_iter + collect keeps seed order, so the output is deterministic.
    let entries = pool.install(|| {
        seeds
            .par_iter()
            .map(|&seed| scan_seed(seed, &params))
            .collect::<Result<Vec<_>, _>>()
    })?;
    let histogram = gap_histogram(entries.iter().map(|e| &e.report));
    let with_gaps = entries.iter().filter(|e| e.has_gaps()).count();
    let records: Vec<Value> = entries
        .iter()
        .map(|e| {
            json!({
                "seed": e.seed,
                "model": e.model,
                "e0": e.report.e0,
                "mu": e.report.mu,
                "gaps": e.report.gaps,
                "verdict": if e.has_gaps() { "gaps" } else { "no-gaps" },
            })
        })
        .collect();
    let result = json!({
        "params": random.describe(),
        "seeds": {"start": start, "count": count},
        "models_with_gaps": with_gaps,
        "gap_histogram": histogram.iter().map(|(gaps, n)| json!({"gaps": gaps, "models": n})).collect::<Vec<_>>(),
        "entries": records,
    });
    let status = if with_gaps == 0 { Status::Pass } else { Status::Fail };
    Ok(Document::new("gap-scan", status, result))
}

pub fn library_list() -> Document {
    let entries: Vec<Value> = library()
        .into_iter()
        .map(|e| json!({"name": e.name, "shape": e.shape, "description": e.description}))
        .collect();
    Document::new("library list", Status::Pass, json!({ "models": entries }))
}

pub fn library_emit(name: &str) -> Result<Document, Failure> {
    let entry = lookup_entry(name)?;
    Ok(Document::new(
        "library emit",
        Status::Pass,
        json!({"name": entry.name, "description": entry.description, "text": entry.text}),
    ))
}
