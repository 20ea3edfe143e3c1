use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use super::report::{ErrorPayload, RunReport, Timer};
use super::{
    Command, CompareArgs, EvalArgs, MeasureFlags, Outcome, PerturbArgs, PrinciplesArgs, RankcorrArgs, RetrieveArgs,
    VocabFlag, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE,
};
use crate::collection::{ltsim_mmd_streaming, maxiou_collection, sidecar_path, write_matrix, MmdReference, Sigma};
use crate::error::{Error, Result};
use crate::harness::{measure_correlation, perturb, retrieve, PerturbConfig, PerturbKind};
use crate::measures::{alignment, evaluate, overlap, MeasureKind, MeasureParams};
use crate::model::{
    load_collection, load_collection_inferred, load_pairs, load_vocabulary, save_collection, LayoutCollection,
};

/// Results of a command that ran to completion. A measure that was undefined
/// for some inputs is reported alongside the results.
struct Completed {
    results: Value,
    domain_error: Option<Error>,
}

impl From<Value> for Completed {
    fn from(results: Value) -> Self {
        Completed {
            results,
            domain_error: None,
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse { .. } => "parse",
        Error::Validation { .. } => "validation",
        Error::Io { .. } => "io",
        Error::EmptyLayout(_) => "empty-layout",
        Error::MultisetMismatch { .. } => "multiset-mismatch",
        Error::Infeasible { .. } => "infeasible",
        Error::DimensionMismatch { .. } => "dimension-mismatch",
        Error::InvalidSigma(_) => "invalid-sigma",
        Error::DegenerateSampling { .. } => "degenerate-sampling",
        Error::NoComparablePairs => "no-comparable-pairs",
        Error::TooFewLayouts { .. } => "too-few-layouts",
        Error::DegenerateSigma => "degenerate-sigma",
        Error::VocabularyTooSmall(_) => "vocabulary-too-small",
        Error::UnknownMeasure(_) => "unknown-measure",
        Error::LengthMismatch(..) => "length-mismatch",
        Error::AllTied => "all-tied",
        Error::MultisetPrecheckFailed(_) => "multiset-precheck-failed",
        Error::InvalidArgument(_) => "invalid-argument",
        Error::MatrixFormat(_) => "matrix-format",
    }
}

fn payload(e: &Error) -> ErrorPayload {
    ErrorPayload {
        kind: error_kind(e).to_string(),
        message: e.to_string(),
    }
}

pub(super) fn dispatch(command: Command, argv: Vec<String>) -> Outcome {
    let timer = Timer::start();
    let (name, config, outcome) = match command {
        Command::Compare(a) => ("compare", compare_config(&a), compare(&a)),
        Command::Eval(a) => {
            let workers = a.workers.unwrap_or_else(default_workers);
            ("eval", eval_config(&a, workers), eval(&a, workers))
        }
        Command::Perturb(a) => ("perturb", perturb_config(&a), run_perturb(&a)),
        Command::Retrieve(a) => ("retrieve", retrieve_config(&a), run_retrieve(&a)),
        Command::Rankcorr(a) => ("rankcorr", rankcorr_config(&a), rankcorr(&a)),
        Command::Principles(a) => ("principles", principles_config(&a), principles(&a)),
    };
    let (results, error) = match outcome {
        Ok(done) => (done.results, done.domain_error),
        Err(e) if e.is_domain() => (Value::Null, Some(e)),
        Err(e) => {
            return Outcome {
                code: EXIT_USAGE,
                stdout: String::new(),
                stderr: format!("error: {e}"),
            }
        }
    };
    let code = if error.is_some() { EXIT_DOMAIN } else { EXIT_OK };
    let stderr = error.as_ref().map(|e| format!("error: {e}")).unwrap_or_default();
    let report = RunReport {
        command: name.to_string(),
        argv,
        version: env!("CARGO_PKG_VERSION"),
        config,
        results,
        error: error.as_ref().map(payload),
        wall_time_s: timer.seconds(),
    };
    Outcome {
        code,
        stdout: report.to_json(),
        stderr,
    }
}

pub(super) fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn load(path: &Path, vocab: &VocabFlag) -> Result<LayoutCollection> {
    log::info!("loading {}", path.display());
    match &vocab.vocab {
        Some(v) => load_collection(path, v),
        None => load_collection_inferred(path),
    }
}

fn vocab_config(v: &VocabFlag) -> Value {
    match &v.vocab {
        Some(p) => json!(p),
        None => json!("inferred: numbered ids up to the largest in use"),
    }
}

fn params(flags: &MeasureFlags) -> MeasureParams {
    MeasureParams {
        sigma: flags.sigma,
        resolution: flags.resolution,
        grid: flags.grid,
    }
}

fn params_config(flags: &MeasureFlags) -> Value {
    json!({
        "sigma": flags.sigma,
        "resolution": flags.resolution,
        "grid": flags.grid,
        "meaniou_rule": "cell-center inclusion, half-open cells, mean over the category union",
        "docemd_missing_category_penalty": "sqrt(2) per category present on one side",
        "docsim_weight": "min(area) * 2^-(center distance + |dw| + |dh|), cross-category pairs forbidden",
    })
}

fn compare_config(a: &CompareArgs) -> Value {
    json!({
        "measure": a.measure,
        "a": a.a,
        "b": a.b,
        "params": params_config(&a.params),
        "vocab": vocab_config(&a.vocab),
    })
}

fn compare(args: &CompareArgs) -> Result<Completed> {
    let measure: MeasureKind = args.measure.parse()?;
    let p = params(&args.params);
    let a = load(&args.a, &args.vocab)?;
    let b = load(&args.b, &args.vocab)?;
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    let mut first_error = None;
    let mut rows = Vec::with_capacity(a.len());
    for (x, y) in a.iter().zip(b.iter()) {
        match evaluate(measure, x, y, &p) {
            Ok(v) => rows.push(json!({"a": x.id, "b": y.id, "value": v.value, "meta": v.meta})),
            Err(e) if e.is_domain() => {
                rows.push(json!({"a": x.id, "b": y.id, "error": payload(&e)}));
                first_error.get_or_insert(e);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(Completed {
        results: json!({"measure": measure, "pairs": rows}),
        domain_error: first_error,
    })
}

#[derive(Clone, Copy)]
enum EvalMeasure {
    LtsimMmd,
    MaxIou,
}

fn eval_measure(name: &str) -> Result<EvalMeasure> {
    match name.trim().to_ascii_lowercase().replace('_', "-").as_str() {
        "ltsim-mmd" => Ok(EvalMeasure::LtsimMmd),
        "maxiou" | "max-iou" => Ok(EvalMeasure::MaxIou),
        _ => Err(Error::UnknownMeasure(name.to_string())),
    }
}

fn eval_config(a: &EvalArgs, workers: usize) -> Value {
    json!({
        "measure": a.measure,
        "real": a.real,
        "gen": a.gen,
        "sigma": a.sigma,
        "sigma_auto_rule": "lower median of EMD over unordered distinct real pairs",
        "kernel": "exp(-EMD / sigma)",
        "workers": workers,
        "streaming": a.streaming,
        "save_matrix": a.save_matrix,
        "report_fid": a.report_fid,
        "vocab": vocab_config(&a.vocab),
    })
}

fn eval(args: &EvalArgs, workers: usize) -> Result<Completed> {
    let measure = eval_measure(&args.measure)?;
    let sigma: Sigma = args.sigma.parse()?;
    let real = load(&args.real, &args.vocab)?;
    let gen = load(&args.gen, &args.vocab)?;
    let mut results = match measure {
        EvalMeasure::LtsimMmd => {
            log::info!(
                "LTSim-MMD over {} real and {} generated layouts, {workers} workers",
                real.len(),
                gen.len()
            );
            if args.streaming {
                serde_json::to_value(ltsim_mmd_streaming(&real, &gen, sigma, workers)?)
            } else {
                let reference = MmdReference::new(&real, workers)?;
                let (report, blocks) = reference.evaluate_with_blocks(&gen, sigma, workers)?;
                if let Some(path) = &args.save_matrix {
                    write_matrix(path, &blocks.joint(), Some(report.sigma))?;
                    log::info!("wrote {} and {}", path.display(), sidecar_path(path).display());
                }
                serde_json::to_value(report)
            }
        }
        EvalMeasure::MaxIou => serde_json::to_value(maxiou_collection(&real, &gen)?),
    }
    .expect("reports serialize");
    if let Some(fid) = args.report_fid {
        results["fid"] = json!(fid);
    }
    Ok(results.into())
}

fn perturb_config(a: &PerturbArgs) -> Value {
    json!({
        "input": a.input,
        "out": a.out,
        "rate": a.rate,
        "kind": a.kind,
        "seed": a.seed,
        "max_offset": a.max_offset,
        "offset_sampling": "per-axis uniform, clamped translation",
        "label_sampling": "uniform over the other vocabulary entries",
        "vocab": vocab_config(&a.vocab),
    })
}

fn run_perturb(args: &PerturbArgs) -> Result<Completed> {
    let input = load(&args.input, &args.vocab)?;
    let cfg = PerturbConfig {
        rate: args.rate,
        kind: args.kind,
        max_offset: args.max_offset,
        seed: args.seed,
    };
    let out = perturb(&input, &cfg)?;
    let mut meta = json!({"seed": cfg.seed, "rate": cfg.rate, "kind": cfg.kind});
    if cfg.kind == PerturbKind::Positional {
        meta["max_offset"] = json!(cfg.max_offset);
        meta["offset_sampling"] = json!("per-axis uniform");
    }
    save_collection(&out, &args.out, Some(&meta))?;
    let (mut elements, mut changed) = (0usize, 0usize);
    for (x, y) in input.iter().zip(out.iter()) {
        elements += x.len();
        changed += x.elements.iter().zip(&y.elements).filter(|(p, q)| p != q).count();
    }
    Ok(json!({
        "out": args.out,
        "layouts": out.len(),
        "elements": elements,
        "changed_elements": changed,
    })
    .into())
}

fn retrieve_config(a: &RetrieveArgs) -> Value {
    json!({
        "query_id": a.query_id,
        "collection": a.collection,
        "measure": a.measure,
        "k": a.k,
        "params": params_config(&a.params),
        "order": "descending score (dissimilarities negated), ties by ascending id",
        "vocab": vocab_config(&a.vocab),
    })
}

fn run_retrieve(args: &RetrieveArgs) -> Result<Completed> {
    let measure: MeasureKind = args.measure.parse()?;
    let c = load(&args.collection, &args.vocab)?;
    let query = c
        .get(&args.query_id)
        .ok_or_else(|| Error::InvalidArgument(format!("no layout with id {:?}", args.query_id)))?;
    let ranked = retrieve(query, &c, measure, args.k, &params(&args.params))?;
    let items: Vec<Value> = ranked
        .items
        .iter()
        .enumerate()
        .map(|(i, it)| json!({"rank": i + 1, "id": it.id, "score": it.score}))
        .collect();
    Ok(json!({
        "measure": measure,
        "query_id": args.query_id,
        "items": items,
        "skipped": ranked.skipped,
    })
    .into())
}

fn rankcorr_config(a: &RankcorrArgs) -> Value {
    json!({
        "pairs": a.pairs,
        "measures": a.measures,
        "params": params_config(&a.params),
        "statistic": "Kendall tau-b on scores oriented so higher means more similar",
        "vocab": vocab_config(&a.vocab),
    })
}

fn rankcorr(args: &RankcorrArgs) -> Result<Completed> {
    let measures = args
        .measures
        .iter()
        .map(|m| m.parse())
        .collect::<Result<Vec<MeasureKind>>>()?;
    let vocab = args.vocab.vocab.as_ref().map(load_vocabulary).transpose()?;
    let pairs: Vec<_> = load_pairs(&args.pairs, vocab.as_ref())?
        .into_iter()
        .map(|p| (p.a, p.b))
        .collect();
    let m = measure_correlation(&pairs, &measures, &params(&args.params))?;
    Ok(json!({"measures": m.measures, "tau": m.tau, "pairs": pairs.len()}).into())
}

fn principles_config(a: &PrinciplesArgs) -> Value {
    json!({
        "input": a.input,
        "baseline": a.baseline,
        "overlap": "(1/n) sum_i sum_{j != i} area(b_i & b_j) / area(b_i); zero-area b_i contributes 0",
        "alignment": "(1/n) sum_i -log(1 - d_i), d_i = min gap over left, center, right, top, middle, bottom; d_i clamped to [0, 1 - 1e-12]",
        "vocab": vocab_config(&a.vocab),
    })
}

fn principle_scores(path: &PathBuf, vocab: &VocabFlag) -> Result<Value> {
    let c = load(path, vocab)?;
    let mut rows = Vec::with_capacity(c.len());
    let (mut o_sum, mut a_sum) = (0.0, 0.0);
    for l in c.iter() {
        let (o, a) = (overlap(l)?, alignment(l)?);
        o_sum += o;
        a_sum += a;
        rows.push(json!({"id": l.id, "overlap": o, "alignment": a}));
    }
    let n = c.len().max(1) as f64;
    Ok(json!({
        "path": path,
        "count": c.len(),
        "mean_overlap": o_sum / n,
        "mean_alignment": a_sum / n,
        "layouts": rows,
    }))
}

fn principles(args: &PrinciplesArgs) -> Result<Completed> {
    let input = principle_scores(&args.input, &args.vocab)?;
    let baseline = args
        .baseline
        .as_ref()
        .map(|p| principle_scores(p, &args.vocab))
        .transpose()?;
    Ok(json!({"input": input, "baseline": baseline}).into())
}
