use std::collections::BTreeMap;
use std::sync::Arc;

use axum::extract::rejection::JsonRejection;
use axum::extract::{FromRequest, Path, Query, Request, State};
use axum::http::{HeaderMap, StatusCode};
use axum::middleware::{self, Next};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Extension, Json, Router};
use chrono::{DateTime, Datelike, Utc};
use serde::{Deserialize, Serialize};

use jobsphere_core::mocktest::{assemble_test, grade, Blueprint, GradeReport, PublicTest, TestSubmission};
use jobsphere_core::recommender::{
    CandidateProfile, EducationLevel, GeoPoint, JobFilter, JobPosting, Preferences, ScoredJob, DEFAULT_TOP_K,
};
use jobsphere_core::resume::ResumeParser;
use jobsphere_core::retrieval::{GroundedAnswer, LanguageTag};

use crate::auth::{hash_password, verify_password, Claims, TokenError, TokenService};
use crate::error::ApiError;
use crate::state::{AppState, ResumeJob};
use crate::store::{ChatTurn, Event, TestRecord};

type AppResult<T> = Result<T, ApiError>;
type St = State<Arc<AppState>>;

/// `Json` whose rejections use the service's error body.
pub struct ApiJson<T>(pub T);

impl<S: Send + Sync, T: serde::de::DeserializeOwned> FromRequest<S> for ApiJson<T> {
    type Rejection = ApiError;

    async fn from_request(req: Request, state: &S) -> Result<Self, Self::Rejection> {
        match Json::<T>::from_request(req, state).await {
            Ok(Json(v)) => Ok(Self(v)),
            Err(e) => Err(rejection(e)),
        }
    }
}

fn rejection(e: JsonRejection) -> ApiError {
    ApiError::bad_request(e.body_text())
}

/// Every API route: method, path, whether a token is required.
pub const ROUTES: &[(&str, &str, bool)] = &[
    ("POST", "/auth/register", false),
    ("POST", "/auth/login", false),
    ("POST", "/auth/refresh", true),
    ("POST", "/auth/logout", true),
    ("POST", "/chat/message", true),
    ("POST", "/chat/voice", true),
    ("GET", "/chat/history", true),
    ("DELETE", "/chat/history", true),
    ("GET", "/recommendations", true),
    ("GET", "/jobs/{id}", true),
    ("POST", "/resume", true),
    ("GET", "/resume/status/{id}", true),
    ("GET", "/profile", true),
    ("PUT", "/profile", true),
    ("POST", "/tests/generate", true),
    ("POST", "/tests/{id}/submit", true),
    ("GET", "/tests/history", true),
    ("GET", "/health", false),
];

#[derive(Debug, Clone)]
pub struct AuthUser {
    pub claims: Claims,
}

impl AuthUser {
    fn id(&self) -> &str {
        &self.claims.sub
    }
}

fn bearer(headers: &HeaderMap) -> Option<&str> {
    headers
        .get(axum::http::header::AUTHORIZATION)?
        .to_str()
        .ok()?
        .strip_prefix("Bearer ")
        .map(str::trim)
}

/// Token check, then the per-user rate limit.
async fn authenticate(State(st): St, mut req: Request, next: Next) -> Response {
    let Some(token) = bearer(req.headers()) else {
        return ApiError::unauthorized("missing bearer token").into_response();
    };
    let claims = match st.tokens.verify(token) {
        Ok(c) => c,
        Err(e) => return ApiError::unauthorized(e.to_string()).into_response(),
    };
    if !st.db.lock().users.contains_key(&claims.sub) {
        return ApiError::unauthorized("unknown user").into_response();
    }
    if let Err(wait) = st.limiter.check(&claims.sub, st.clock.now()) {
        return ApiError::rate_limited(wait).into_response();
    }
    req.extensions_mut().insert(AuthUser { claims });
    next.run(req).await
}

pub fn router(state: Arc<AppState>) -> Router {
    let protected = Router::new()
        .route("/auth/refresh", post(refresh))
        .route("/auth/logout", post(logout))
        .route("/chat/message", post(chat_message))
        .route("/chat/voice", post(chat_voice))
        .route("/chat/history", get(chat_history).delete(chat_clear))
        .route("/recommendations", get(recommendations))
        .route("/jobs/{id}", get(job_detail))
        .route("/resume", post(resume_upload))
        .route("/resume/status/{id}", get(resume_status))
        .route("/profile", get(profile_get).put(profile_put))
        .route("/tests/generate", post(tests_generate))
        .route("/tests/{id}/submit", post(tests_submit))
        .route("/tests/history", get(tests_history))
        .route_layer(middleware::from_fn_with_state(state.clone(), authenticate));
    Router::new()
        .route("/auth/register", post(register))
        .route("/auth/login", post(login))
        .route("/health", get(|| async { Json(serde_json::json!({"status": "ok"})) }))
        .merge(protected)
        .with_state(state)
}

fn persist(st: &AppState, ev: Event) -> AppResult<()> {
    st.db.lock().record(ev).map_err(|e| ApiError::internal(format!("storage: {e}")))
}

#[derive(Debug, Deserialize)]
struct Credentials {
    user_id: String,
    password: String,
}

#[derive(Debug, Serialize)]
struct TokenResponse {
    token: String,
    token_type: &'static str,
    expires_at: DateTime<Utc>,
}

fn token_response(st: &AppState, user: &str) -> TokenResponse {
    let (token, claims) = st.tokens.issue(user);
    TokenResponse {
        token,
        token_type: "Bearer",
        expires_at: TokenService::expires_at(&claims),
    }
}

const MIN_PASSWORD: usize = 8;

async fn register(State(st): St, ApiJson(c): ApiJson<Credentials>) -> AppResult<impl IntoResponse> {
    let user_id = c.user_id.trim().to_string();
    if user_id.is_empty() || user_id.len() > 64 || !user_id.chars().all(|ch| ch.is_ascii_alphanumeric() || "._-@".contains(ch)) {
        return Err(ApiError::validation("user_id must be 1-64 characters of letters, digits, . _ - @"));
    }
    if c.password.chars().count() < MIN_PASSWORD {
        return Err(ApiError::validation(format!("password must have at least {MIN_PASSWORD} characters")));
    }
    if st.db.lock().users.contains_key(&user_id) {
        return Err(ApiError::new(StatusCode::CONFLICT, "conflict", "user already registered"));
    }
    let hash = tokio::task::spawn_blocking(move || hash_password(&c.password))
        .await
        .map_err(|e| ApiError::internal(e.to_string()))?;
    {
        let mut db = st.db.lock();
        // Re-check: another request may have registered the id while hashing.
        if db.users.contains_key(&user_id) {
            return Err(ApiError::new(StatusCode::CONFLICT, "conflict", "user already registered"));
        }
        db.record(Event::Registered {
            user_id: user_id.clone(),
            password_hash: hash,
            at: st.clock.now(),
        })
        .map_err(|e| ApiError::internal(format!("storage: {e}")))?;
    }
    Ok((StatusCode::CREATED, Json(token_response(&st, &user_id))))
}

async fn login(State(st): St, ApiJson(c): ApiJson<Credentials>) -> AppResult<Json<TokenResponse>> {
    let hash = st.db.lock().users.get(c.user_id.trim()).map(|u| u.password_hash.clone());
    let password = c.password;
    let ok = match hash {
        Some(h) => tokio::task::spawn_blocking(move || verify_password(&password, &h))
            .await
            .map_err(|e| ApiError::internal(e.to_string()))?,
        None => false,
    };
    if !ok {
        return Err(ApiError::unauthorized("invalid credentials"));
    }
    Ok(Json(token_response(&st, c.user_id.trim())))
}

fn revoke(st: &AppState, claims: &Claims) -> AppResult<()> {
    st.db
        .lock()
        .record_revocation(&claims.jti, claims.exp)
        .map_err(|e| ApiError::internal(format!("storage: {e}")))?;
    st.tokens.blacklist.insert(&claims.jti, claims.exp);
    Ok(())
}

/// Rotates: a fresh token is issued and the presented one revoked.
async fn refresh(State(st): St, Extension(user): Extension<AuthUser>) -> AppResult<Json<TokenResponse>> {
    revoke(&st, &user.claims)?;
    Ok(Json(token_response(&st, user.id())))
}

async fn logout(State(st): St, Extension(user): Extension<AuthUser>) -> AppResult<StatusCode> {
    revoke(&st, &user.claims)?;
    Ok(StatusCode::NO_CONTENT)
}

#[derive(Debug, Deserialize)]
struct ChatRequest {
    text: String,
    #[serde(default)]
    lang: Option<String>,
}

async fn chat_message(State(st): St, Extension(user): Extension<AuthUser>, ApiJson(req): ApiJson<ChatRequest>) -> AppResult<Json<GroundedAnswer>> {
    if req.text.trim().is_empty() {
        return Err(ApiError::bad_request("text is empty"));
    }
    let hint = match req.lang.as_deref().map(str::trim) {
        None | Some("") | Some("auto") => None,
        Some(l) => Some(l.parse::<LanguageTag>().map_err(ApiError::validation)?),
    };
    let st2 = st.clone();
    let text = req.text.clone();
    let answer = tokio::task::spawn_blocking(move || st2.retrieval.answer_query(&text, hint))
        .await
        .map_err(|e| ApiError::internal(e.to_string()))??;
    persist(
        &st,
        Event::Chat {
            user_id: user.id().to_string(),
            turn: ChatTurn {
                at: st.clock.now(),
                question: req.text,
                answer: answer.clone(),
            },
        },
    )?;
    Ok(Json(answer))
}

async fn chat_voice() -> ApiError {
    ApiError::new(
        StatusCode::NOT_IMPLEMENTED,
        "not_implemented",
        "voice input needs a speech-to-text plugin; send text to /chat/message",
    )
}

#[derive(Debug, Deserialize)]
struct Paging {
    page: Option<usize>,
    per_page: Option<usize>,
}

#[derive(Debug, Serialize)]
struct HistoryPage {
    page: usize,
    per_page: usize,
    total: usize,
    turns: Vec<ChatTurn>,
}

async fn chat_history(State(st): St, Extension(user): Extension<AuthUser>, Query(p): Query<Paging>) -> AppResult<Json<HistoryPage>> {
    let page = p.page.unwrap_or(1).max(1);
    let per_page = p.per_page.unwrap_or(20).clamp(1, 100);
    let db = st.db.lock();
    let chat = &db.users[user.id()].chat;
    let turns = chat.iter().rev().skip((page - 1) * per_page).take(per_page).cloned().collect();
    Ok(Json(HistoryPage {
        page,
        per_page,
        total: chat.len(),
        turns,
    }))
}

async fn chat_clear(State(st): St, Extension(user): Extension<AuthUser>) -> AppResult<StatusCode> {
    persist(&st, Event::ChatCleared { user_id: user.id().to_string() })?;
    Ok(StatusCode::NO_CONTENT)
}

#[derive(Debug, Deserialize)]
struct RecQuery {
    limit: Option<usize>,
    category: Option<String>,
    location: Option<String>,
    salary_min: Option<f64>,
}

/// A scored job with its title, as returned by `GET /recommendations`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Recommendation {
    pub title: String,
    #[serde(flatten)]
    pub scored: ScoredJob,
}

fn blank_to_none(s: Option<String>) -> Option<String> {
    s.filter(|v| !v.trim().is_empty())
}

async fn recommendations(State(st): St, Extension(user): Extension<AuthUser>, Query(q): Query<RecQuery>) -> AppResult<Json<Vec<Recommendation>>> {
    let profile = st.db.lock().users[user.id()].profile.clone().ok_or_else(|| {
        ApiError::new(StatusCode::PRECONDITION_FAILED, "profile_required", "create a profile with PUT /profile first")
    })?;
    let limit = q.limit.unwrap_or(DEFAULT_TOP_K).clamp(1, 50);
    let filter = JobFilter {
        location: blank_to_none(q.location),
        min_salary: q.salary_min,
        category: blank_to_none(q.category),
    };
    let st2 = st.clone();
    let now = st.clock.now();
    let scored = tokio::task::spawn_blocking(move || st2.recommender.recommend_filtered(&profile, now, limit, &filter))
        .await
        .map_err(|e| ApiError::internal(e.to_string()))??;
    let out = scored
        .into_iter()
        .map(|s| Recommendation {
            title: st.recommender.catalog().get(&s.job_id).map(|j| j.title.clone()).unwrap_or_default(),
            scored: s,
        })
        .collect();
    Ok(Json(out))
}

async fn job_detail(State(st): St, Path(id): Path<String>) -> AppResult<Json<JobPosting>> {
    st.recommender
        .catalog()
        .get(&id)
        .cloned()
        .map(Json)
        .ok_or_else(|| ApiError::not_found(format!("no job {id}")))
}

#[derive(Debug, Deserialize)]
struct ResumeUpload {
    text: String,
}

#[derive(Debug, Serialize)]
struct ResumeAccepted {
    parse_job_id: String,
    status: &'static str,
}

async fn resume_upload(State(st): St, Extension(user): Extension<AuthUser>, ApiJson(body): ApiJson<ResumeUpload>) -> AppResult<impl IntoResponse> {
    if body.text.trim().is_empty() {
        return Err(ApiError::bad_request("resume text is empty"));
    }
    let job_id = uuid::Uuid::new_v4().to_string();
    let owner = user.id().to_string();
    st.resume_jobs.lock().insert(job_id.clone(), (owner.clone(), ResumeJob::Pending));
    let st2 = st.clone();
    let id2 = job_id.clone();
    tokio::task::spawn_blocking(move || {
        let year = st2.clock.now().year();
        let outcome = match ResumeParser::default().with_current_year(year).parse(&body.text) {
            Ok(parsed) => {
                let merged = persist(
                    &st2,
                    Event::SkillsMerged {
                        user_id: owner.clone(),
                        skills: parsed.skills.clone(),
                    },
                );
                match merged {
                    Ok(()) => ResumeJob::Done { result: parsed },
                    Err(e) => ResumeJob::Failed { error: e.message },
                }
            }
            Err(e) => ResumeJob::Failed { error: e.to_string() },
        };
        st2.resume_jobs.lock().insert(id2, (owner, outcome));
    });
    Ok((
        StatusCode::ACCEPTED,
        Json(ResumeAccepted {
            parse_job_id: job_id,
            status: "pending",
        }),
    ))
}

async fn resume_status(State(st): St, Extension(user): Extension<AuthUser>, Path(id): Path<String>) -> AppResult<Json<ResumeJob>> {
    match st.resume_jobs.lock().get(&id) {
        Some((owner, job)) if owner == user.id() => Ok(Json(job.clone())),
        _ => Err(ApiError::not_found(format!("no resume job {id}"))),
    }
}

async fn profile_get(State(st): St, Extension(user): Extension<AuthUser>) -> AppResult<Json<CandidateProfile>> {
    st.db.lock().users[user.id()]
        .profile
        .clone()
        .map(Json)
        .ok_or_else(|| ApiError::not_found("no profile yet"))
}

/// Wire form of a profile. Numbers are wide so range errors come back as
/// validation messages rather than parse failures.
#[derive(Debug, Deserialize)]
struct ProfileInput {
    #[serde(default)]
    skills: Vec<String>,
    #[serde(default)]
    education_level: EducationLevel,
    age: i64,
    #[serde(default)]
    citizen: bool,
    home: GeoPoint,
    #[serde(default)]
    desired_salary_min: Option<f64>,
    #[serde(default)]
    preferences: Preferences,
    #[serde(default)]
    profile_text: Option<String>,
}

pub const MIN_AGE: i64 = 14;
pub const MAX_AGE: i64 = 100;

impl ProfileInput {
    fn into_profile(self, user_id: &str) -> AppResult<CandidateProfile> {
        if !(MIN_AGE..=MAX_AGE).contains(&self.age) {
            return Err(ApiError::validation(format!("age must be between {MIN_AGE} and {MAX_AGE}")));
        }
        let skills: std::collections::BTreeSet<String> = self
            .skills
            .iter()
            .map(|s| s.trim().to_lowercase())
            .filter(|s| !s.is_empty())
            .collect();
        let text = self.profile_text.filter(|t| !t.trim().is_empty()).unwrap_or_else(|| {
            let mut parts: Vec<String> = skills.iter().cloned().collect();
            parts.extend(self.preferences.categories.iter().cloned());
            parts.push(self.education_level.as_str().replace('_', " "));
            parts.join(" ")
        });
        let p = CandidateProfile {
            user_id: user_id.to_string(),
            skills,
            education_level: self.education_level,
            age: self.age as u32,
            citizen: self.citizen,
            home: self.home,
            desired_salary_min: self.desired_salary_min,
            preferences: self.preferences,
            profile_text: text,
        };
        p.validate()?;
        Ok(p)
    }
}

async fn profile_put(State(st): St, Extension(user): Extension<AuthUser>, ApiJson(input): ApiJson<ProfileInput>) -> AppResult<Json<CandidateProfile>> {
    let profile = input.into_profile(user.id())?;
    persist(
        &st,
        Event::ProfileSet {
            user_id: user.id().to_string(),
            profile,
        },
    )?;
    let saved = st.db.lock().users[user.id()].profile.clone().expect("just set");
    Ok(Json(saved))
}

#[derive(Debug, Deserialize)]
struct GenerateRequest {
    topic_counts: Blueprint,
    #[serde(default)]
    seed: Option<u64>,
}

async fn tests_generate(State(st): St, Extension(user): Extension<AuthUser>, ApiJson(req): ApiJson<GenerateRequest>) -> AppResult<Json<PublicTest>> {
    let seed = req.seed.unwrap_or_else(|| uuid::Uuid::new_v4().as_u64_pair().0);
    let test = assemble_test(&st.bank.questions, &req.topic_counts, seed)?;
    let public = test.public_view();
    persist(
        &st,
        Event::TestGenerated {
            user_id: user.id().to_string(),
            record: TestRecord {
                test,
                generated_at: st.clock.now(),
                report: None,
            },
        },
    )?;
    Ok(Json(public))
}

#[derive(Debug, Deserialize)]
struct SubmitRequest {
    answers: BTreeMap<String, String>,
    #[serde(default)]
    started_at: Option<DateTime<Utc>>,
}

async fn tests_submit(
    State(st): St,
    Extension(user): Extension<AuthUser>,
    Path(id): Path<String>,
    ApiJson(req): ApiJson<SubmitRequest>,
) -> AppResult<Json<GradeReport>> {
    let record = st.db.lock().users[user.id()]
        .tests
        .iter()
        .find(|t| t.test.test_id == id)
        .cloned()
        .ok_or_else(|| ApiError::not_found(format!("no test {id}")))?;
    let submission = TestSubmission {
        test_id: id,
        answers: req.answers,
        started_at: req.started_at.unwrap_or(record.generated_at),
        submitted_at: st.clock.now(),
    };
    let st2 = st.clone();
    let report = tokio::task::spawn_blocking(move || grade(&record.test, &submission, &st2.retrieval))
        .await
        .map_err(|e| ApiError::internal(e.to_string()))??;
    persist(
        &st,
        Event::TestGraded {
            user_id: user.id().to_string(),
            report: report.clone(),
        },
    )?;
    Ok(Json(report))
}

#[derive(Debug, Serialize)]
struct TestSummary {
    test_id: String,
    generated_at: DateTime<Utc>,
    questions: usize,
    total_seconds: u32,
    submitted: bool,
    score: Option<u32>,
    max_score: Option<u32>,
}

async fn tests_history(State(st): St, Extension(user): Extension<AuthUser>) -> AppResult<Json<Vec<TestSummary>>> {
    let db = st.db.lock();
    let out = db.users[user.id()]
        .tests
        .iter()
        .rev()
        .map(|r| TestSummary {
            test_id: r.test.test_id.clone(),
            generated_at: r.generated_at,
            questions: r.test.questions.len(),
            total_seconds: r.test.total_seconds,
            submitted: r.report.is_some(),
            score: r.report.as_ref().map(|g| g.score),
            max_score: r.report.as_ref().map(|g| g.max_score),
        })
        .collect();
    Ok(Json(out))
}

impl From<TokenError> for ApiError {
    fn from(e: TokenError) -> Self {
        ApiError::unauthorized(e.to_string())
    }
}
