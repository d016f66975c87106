use std::path::{Path, PathBuf};
use std::sync::Arc;

use chrono::{DateTime, Datelike, Utc};
use parking_lot::RwLock;
use serde::Serialize;
use serde_json::{json, Value};

use jobsphere_core::clock::{Clock, SimulatedClock, SystemClock};
use jobsphere_core::corpus::KnowledgeBase;
use jobsphere_core::embedding::{EmbeddingProvider, HashingEmbedder};
use jobsphere_core::fixtures;
use jobsphere_core::index::IndexStats;
use jobsphere_core::ingestion::{
    run_pipeline, Cadence, FixtureDirFetcher, IngestReport, PipelineEnv, PolitenessPolicy, RecordStore, Scheduler,
    SimulatedSleeper, Sleeper, ThreadSleeper,
};
use jobsphere_core::mocktest::{assemble_test, Blueprint};
use jobsphere_core::recommender::{CandidateProfile, JobFilter};
use jobsphere_core::resume::{ParsedResume, ResumeParser};
use jobsphere_core::retrieval::{
    ExtractiveComposer, GroundedAnswer, IdentityTranslator, LanguageTag, RetrievalConfig, RetrievalEngine,
};
use jobsphere_server::state::{build_recommender, load_jobs, open_jobs, open_knowledge, open_weights, seed_documents};
use jobsphere_server::{AppState, Recommendation, ServerConfig};

use crate::config::CliConfig;
use crate::table::{self, opt};
use crate::{CliError, Output};

pub fn clock(now: Option<DateTime<Utc>>) -> Arc<dyn Clock> {
    match now {
        Some(t) => Arc::new(SimulatedClock::new(t)),
        None => Arc::new(SystemClock),
    }
}

fn provider() -> Arc<dyn EmbeddingProvider> {
    Arc::new(HashingEmbedder)
}

/// Through text so f32 fields keep their shortest form, as on the wire.
fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_string(v).and_then(|s| serde_json::from_str(&s)).expect("serializable output")
}

/// Serde name of a unit enum variant.
fn label<T: Serialize>(v: &T) -> String {
    match to_json(v) {
        Value::String(s) => s,
        other => other.to_string(),
    }
}

fn read_input(flag: &str, path: &Path) -> Result<String, CliError> {
    if !path.is_file() {
        return Err(CliError::usage(flag, format!("no such file {}", path.display())));
    }
    std::fs::read_to_string(path).map_err(|e| CliError::usage(flag, format!("{}: {e}", path.display())))
}

fn short(s: &str, n: usize) -> String {
    let s = s.replace('\n', " ");
    if s.chars().count() <= n {
        s
    } else {
        format!("{}...", s.chars().take(n - 3).collect::<String>())
    }
}

fn bank() -> Result<jobsphere_core::mocktest::QuestionBank, CliError> {
    fixtures::question_bank(&HashingEmbedder).map_err(CliError::domain)
}

fn knowledge(cfg: &CliConfig, now: DateTime<Utc>) -> Result<KnowledgeBase, CliError> {
    std::fs::create_dir_all(&cfg.data_dir).map_err(|e| CliError::usage("--data-dir", e))?;
    Ok(open_knowledge(&cfg.data_dir, &HashingEmbedder, &bank()?, cfg.index, now)?)
}

#[derive(Debug, Serialize)]
pub struct IngestOutput {
    #[serde(flatten)]
    pub report: IngestReport,
    pub documents: usize,
    pub chunks: usize,
}

pub fn ingest(cfg: &CliConfig, clock: Arc<dyn Clock>, source: &Path, polite: bool) -> Result<Output, CliError> {
    if !source.is_dir() {
        return Err(CliError::usage("--source", format!("{} is not a directory", source.display())));
    }
    let now = clock.now();
    let mut kb = knowledge(cfg, now)?;
    let mut store = RecordStore::open(cfg.data_dir.join("store")).map_err(CliError::domain)?;
    let mut sched = Scheduler::single("cli", Cadence::Hourly);
    let fetcher = FixtureDirFetcher::new(source);
    let politeness = PolitenessPolicy::new(cfg.seed);
    // Local directories need no politeness; the delays are still drawn.
    let dry = SimulatedSleeper::new(Arc::new(SimulatedClock::new(now)));
    let sleeper: &dyn Sleeper = if polite { &ThreadSleeper } else { &dry };
    let env = PipelineEnv {
        provider: &HashingEmbedder,
        sleeper,
        politeness: &politeness,
    };
    let report = run_pipeline(&mut sched, &fetcher, &mut store, &mut kb, &env, now).map_err(CliError::domain)?;
    kb.save(cfg.data_dir.join("kb")).map_err(CliError::domain)?;
    let out = IngestOutput {
        documents: kb.documents(),
        chunks: kb.len(),
        report,
    };
    let r = &out.report;
    let mut text = table::pairs(&[
        ("fetched", r.fetched.to_string()),
        ("created", r.created.to_string()),
        ("new_versions", r.new_versions.to_string()),
        ("skipped", r.skipped.to_string()),
        ("errors", r.errors.to_string()),
        ("pruned", r.pruned.to_string()),
        ("documents", out.documents.to_string()),
        ("chunks", out.chunks.to_string()),
    ]);
    for m in &r.error_messages {
        text.push_str(&format!("error: {m}\n"));
    }
    Ok(Output { json: to_json(&out), text })
}

#[derive(Debug, Serialize)]
pub struct IndexSummary {
    pub documents: usize,
    pub chunks: usize,
    pub jobs: usize,
    pub index: IndexStats,
}

fn index_output(s: IndexSummary) -> Output {
    let i = &s.index;
    let text = table::pairs(&[
        ("documents", s.documents.to_string()),
        ("chunks", s.chunks.to_string()),
        ("jobs", s.jobs.to_string()),
        ("dimension", i.dimension.to_string()),
        ("nodes", i.nodes.to_string()),
        ("live", i.live.to_string()),
        ("tombstones", i.tombstones.to_string()),
        ("max_level", i.max_level.to_string()),
        ("mean_layer0_degree", format!("{:.2}", i.mean_layer0_degree)),
        ("m", i.config.m.to_string()),
        ("ef_construction", i.config.ef_construction.to_string()),
        ("ef_search", i.config.ef_search.to_string()),
    ]);
    Output { json: to_json(&s), text }
}

fn job_count(cfg: &CliConfig) -> Result<usize, CliError> {
    let p = cfg.data_dir.join("jobs.jsonl");
    if p.exists() {
        Ok(load_jobs(&p).map_err(CliError::domain)?.len())
    } else {
        Ok(0)
    }
}

/// Rebuilds `kb/` from scratch: bundled documents, then the latest version
/// of every ingested record.
pub fn index_build(cfg: &CliConfig, clock: Arc<dyn Clock>) -> Result<Output, CliError> {
    std::fs::create_dir_all(&cfg.data_dir).map_err(|e| CliError::usage("--data-dir", e))?;
    let mut kb = KnowledgeBase::new(cfg.index);
    for d in seed_documents(&bank()?, clock.now()) {
        kb.add_document(&d, &HashingEmbedder).map_err(CliError::domain)?;
    }
    let store_dir = cfg.data_dir.join("store");
    if store_dir.is_dir() {
        let store = RecordStore::open(&store_dir).map_err(CliError::domain)?;
        for d in store.latest_documents() {
            kb.add_document(d, &HashingEmbedder).map_err(CliError::domain)?;
        }
    }
    kb.save(cfg.data_dir.join("kb")).map_err(CliError::domain)?;
    Ok(index_output(IndexSummary {
        documents: kb.documents(),
        chunks: kb.len(),
        jobs: job_count(cfg)?,
        index: kb.index().stats(),
    }))
}

pub fn index_stats(cfg: &CliConfig) -> Result<Output, CliError> {
    let dir = cfg.data_dir.join("kb");
    if !KnowledgeBase::exists(&dir) {
        return Err(CliError::domain(format!("no index under {}; run `jobsphere index build`", dir.display())));
    }
    let kb = KnowledgeBase::load(&dir).map_err(CliError::domain)?;
    Ok(index_output(IndexSummary {
        documents: kb.documents(),
        chunks: kb.len(),
        jobs: job_count(cfg)?,
        index: kb.index().stats(),
    }))
}

pub fn query(cfg: &CliConfig, clock: Arc<dyn Clock>, text: &str, lang: &str, k: usize) -> Result<Output, CliError> {
    if !(1..=50).contains(&k) {
        return Err(CliError::usage("--k", "must be between 1 and 50"));
    }
    let hint = match lang {
        "auto" => None,
        l => Some(l.parse::<LanguageTag>().map_err(|e| CliError::usage("--lang", e))?),
    };
    let kb = knowledge(cfg, clock.now())?;
    let p = provider();
    let engine = RetrievalEngine::with_parts(
        p.clone(),
        Arc::new(IdentityTranslator),
        Arc::new(ExtractiveComposer::new(p)),
        Arc::new(RwLock::new(kb)),
        clock,
        RetrievalConfig {
            top_k: k,
            ..RetrievalConfig::default()
        },
    );
    let a = engine.answer_query(text, hint).map_err(CliError::domain)?;
    Ok(Output {
        text: render_answer(&a),
        json: to_json(&a),
    })
}

fn render_answer(a: &GroundedAnswer) -> String {
    let yn = |b: bool| if b { "yes" } else { "no" };
    let mut s = format!("answered: {}  language: {}  cached: {}\n\n{}\n", yn(a.answered), a.language, yn(a.cached), a.text);
    if !a.citations.is_empty() {
        let rows: Vec<Vec<String>> = a
            .citations
            .iter()
            .enumerate()
            .map(|(i, c)| {
                vec![
                    (i + 1).to_string(),
                    c.doc_id.clone(),
                    c.chunk_id.clone(),
                    format!("{:.3}", c.score),
                    short(&c.quoted_span, 60),
                ]
            })
            .collect();
        s.push('\n');
        s.push_str(&table::render(&["#", "doc_id", "chunk_id", "score", "quote"], &rows));
    }
    s
}

pub fn recommend(cfg: &CliConfig, clock: Arc<dyn Clock>, profile: &Path, top: usize, explain: bool) -> Result<Output, CliError> {
    let raw = read_input("--profile", profile)?;
    if !(1..=50).contains(&top) {
        return Err(CliError::usage("--top", "must be between 1 and 50"));
    }
    let profile: CandidateProfile =
        serde_json::from_str(&raw).map_err(|e| CliError::domain(format!("invalid profile: {e}")))?;
    std::fs::create_dir_all(&cfg.data_dir).map_err(|e| CliError::usage("--data-dir", e))?;
    let now = clock.now();
    let jobs = open_jobs(&cfg.data_dir, cfg.seed, now)?;
    let weights = open_weights(&cfg.weights)?;
    let rec = build_recommender(jobs, weights, provider(), cfg.index)?;
    let scored = rec
        .recommend_filtered(&profile, now, top, &JobFilter::default())
        .map_err(CliError::domain)?;
    let out: Vec<Recommendation> = scored
        .into_iter()
        .map(|s| Recommendation {
            title: rec.catalog().get(&s.job_id).map(|j| j.title.clone()).unwrap_or_default(),
            scored: s,
        })
        .collect();

    let rows: Vec<Vec<String>> = out
        .iter()
        .enumerate()
        .map(|(i, r)| {
            vec![
                (i + 1).to_string(),
                r.scored.job_id.clone(),
                short(&r.title, 36),
                r.scored.category.clone(),
                r.scored.location_name.clone(),
                format!("{:.3}", r.scored.relevance),
                format!("{:.3}", r.scored.p_apply),
            ]
        })
        .collect();
    let mut text = table::render(&["rank", "job_id", "title", "category", "location", "relevance", "p_apply"], &rows);
    let mut json = to_json(&out);
    if explain {
        text.push('\n');
        for r in &out {
            let e = &r.scored.explanation;
            text.push_str(&format!(
                "{}: {}\n  matched: {}\n  missing: {}\n  distance {:.1} km, posted {:.1} days ago\n",
                r.scored.job_id,
                e.summary,
                e.matched_skills.join(", "),
                e.missing_skills.join(", "),
                e.distance_km,
                e.age_days
            ));
        }
    } else if let Value::Array(items) = &mut json {
        for it in items {
            if let Value::Object(m) = it {
                m.remove("explanation");
            }
        }
    }
    Ok(Output { json, text })
}

pub fn resume_parse(clock: Arc<dyn Clock>, file: &Path) -> Result<Output, CliError> {
    let raw = read_input("FILE", file)?;
    let parsed: ParsedResume = ResumeParser::default()
        .with_current_year(clock.now().year())
        .parse(&raw)
        .map_err(CliError::domain)?;
    let c = &parsed.contact;
    let mut text = table::pairs(&[
        ("name", opt(&c.name)),
        ("email", opt(&c.email)),
        ("phone", opt(&c.phone)),
        ("address", opt(&c.address)),
        ("skills", parsed.skills.iter().cloned().collect::<Vec<_>>().join(", ")),
    ]);
    if !parsed.education.is_empty() {
        let rows: Vec<Vec<String>> = parsed
            .education
            .iter()
            .map(|e| vec![e.degree.clone(), e.institution.clone(), opt(&e.year), opt(&e.gpa)])
            .collect();
        text.push('\n');
        text.push_str(&table::render(&["degree", "institution", "year", "gpa"], &rows));
    }
    if !parsed.experience.is_empty() {
        let rows: Vec<Vec<String>> = parsed
            .experience
            .iter()
            .map(|e| vec![e.title.clone(), e.company.clone(), opt(&e.start), opt(&e.end)])
            .collect();
        text.push('\n');
        text.push_str(&table::render(&["title", "company", "start", "end"], &rows));
    }
    for w in &parsed.warnings {
        text.push_str(&format!("warning: {w}\n"));
    }
    Ok(Output {
        json: to_json(&parsed),
        text,
    })
}

pub fn testgen(cfg: &CliConfig, blueprint: &Path, answer_key: bool) -> Result<Output, CliError> {
    let raw = read_input("--blueprint", blueprint)?;
    let bp: Blueprint = serde_json::from_str(&raw).map_err(|e| CliError::domain(format!("invalid blueprint: {e}")))?;
    let test = assemble_test(&bank()?.questions, &bp, cfg.seed).map_err(CliError::domain)?;
    let mut text = table::pairs(&[
        ("test_id", test.test_id.clone()),
        ("seed", test.seed.to_string()),
        ("questions", test.questions.len().to_string()),
        ("total_seconds", test.total_seconds.to_string()),
    ]);
    let mut header = vec!["#", "q_id", "topic", "kind", "difficulty", "seconds", "text"];
    if answer_key {
        header.push("key");
    }
    let rows: Vec<Vec<String>> = test
        .questions
        .iter()
        .zip(&test.per_question_seconds)
        .enumerate()
        .map(|(i, (q, secs))| {
            let mut r = vec![
                (i + 1).to_string(),
                q.q_id.clone(),
                label(&q.topic),
                label(&q.kind),
                q.difficulty.to_string(),
                secs.to_string(),
                short(&q.text, 50),
            ];
            if answer_key {
                r.push(opt(&q.answer_key));
            }
            r
        })
        .collect();
    text.push('\n');
    text.push_str(&table::render(&header, &rows));
    let json = if answer_key { to_json(&test) } else { to_json(&test.public_view()) };
    Ok(Output { json, text })
}

pub fn serve(cfg: &CliConfig, port: Option<u16>, static_dir: Option<PathBuf>) -> Result<Output, CliError> {
    tracing_subscriber::fmt()
        .with_env_filter(tracing_subscriber::EnvFilter::try_from_default_env().unwrap_or_else(|_| "info".into()))
        .init();
    let mut sc = ServerConfig::from_env().map_err(|e| CliError::usage("PORT", e))?;
    sc.data_dir = cfg.data_dir.clone();
    sc.seed = cfg.seed;
    if let Some(p) = port {
        sc.port = p;
    }
    if static_dir.is_some() {
        sc.static_dir = static_dir;
    }
    let rt = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .map_err(CliError::domain)?;
    rt.block_on(async {
        let state = AppState::open(sc, Arc::new(SystemClock))?;
        jobsphere_server::serve(state).await
    })?;
    Ok(Output {
        json: json!({"stopped": true}),
        text: String::new(),
    })
}
