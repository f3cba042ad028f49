//! JSON-over-HTTP interface.
//!
//! | method | path            | body / query                      |
//! |--------|-----------------|-----------------------------------|
//! | POST   | `/categorize`   | `{text, lucky?}`                  |
//! | GET    | `/experts`      | `?category=&status=a,b&k=`        |
//! | GET    | `/person/{id}`  |                                   |
//! | POST   | `/vote`         | `{person_id, delta, voter_token}` |

mod config;
mod state;

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{DefaultBodyLimit, Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::json;

pub use config::{ServiceConfig, PORT_ENV};
pub use state::AppState;

use crate::categorize::{suggest_categories, CategorySuggestion, KeywordConfig};
use crate::corpus::AcademicStatus;
use crate::ranker::RankError;

/// Longest accepted `/categorize` text, in bytes.
pub const MAX_TEXT_BYTES: usize = 64 * 1024;
const MAX_SUGGESTIONS: usize = 5;
const DEFAULT_K: usize = 20;

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    message: String,
}

impl ApiError {
    fn new(status: StatusCode, message: impl Into<String>) -> Self {
        ApiError {
            status,
            message: message.into(),
        }
    }

    fn bad_request(message: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, message)
    }

    fn not_found(message: impl Into<String>) -> Self {
        Self::new(StatusCode::NOT_FOUND, message)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(json!({ "error": self.message }))).into_response()
    }
}

impl From<RankError> for ApiError {
    fn from(e: RankError) -> Self {
        let status = match e {
            RankError::UnknownCategory(_) | RankError::UnknownPerson(_) => StatusCode::NOT_FOUND,
            RankError::InvalidK | RankError::InvalidDelta(_) | RankError::InvalidVote(_) => {
                StatusCode::BAD_REQUEST
            }
            _ => StatusCode::INTERNAL_SERVER_ERROR,
        };
        ApiError::new(status, e.to_string())
    }
}

type ApiResult<T> = Result<Json<T>, ApiError>;

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/categorize", post(categorize))
        .route("/experts", get(experts))
        .route("/person/{id}", get(person))
        .route("/vote", post(vote))
        // room for the JSON envelope around a maximal text
        .layer(DefaultBodyLimit::max(MAX_TEXT_BYTES + 4096))
        .with_state(state)
}

fn parse_body<T: for<'de> Deserialize<'de>>(body: &Bytes) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError::bad_request(format!("malformed body: {e}")))
}

#[derive(Deserialize)]
struct CategorizeRequest {
    text: String,
    #[serde(default)]
    lucky: bool,
}

#[derive(Serialize)]
struct CategorizeResponse {
    suggestions: Vec<CategorySuggestion>,
}

async fn categorize(
    State(state): State<Arc<AppState>>,
    body: Bytes,
) -> ApiResult<CategorizeResponse> {
    let req: CategorizeRequest = parse_body(&body)?;
    if req.text.len() > MAX_TEXT_BYTES {
        return Err(ApiError::new(
            StatusCode::PAYLOAD_TOO_LARGE,
            format!("text exceeds {MAX_TEXT_BYTES} bytes"),
        ));
    }
    if req.text.trim().is_empty() {
        return Err(ApiError::bad_request("text is empty"));
    }
    let limit = if req.lucky { 1 } else { MAX_SUGGESTIONS };
    let suggestions = suggest_categories(
        &req.text,
        state.index.taxonomy(),
        limit,
        &KeywordConfig::default(),
    )
    .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?;
    Ok(Json(CategorizeResponse { suggestions }))
}

/// Parses a comma list of status tokens; empty means no filter.
pub fn parse_status_filter(raw: Option<&str>) -> Result<BTreeSet<AcademicStatus>, String> {
    raw.unwrap_or("")
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|e: crate::corpus::UnknownStatus| e.to_string())
        })
        .collect()
}

#[derive(Serialize)]
struct ExpertResult {
    person_id: String,
    name: String,
    status: AcademicStatus,
    score: f64,
    rank: usize,
}

#[derive(Serialize)]
struct ExpertsResponse {
    results: Vec<ExpertResult>,
}

async fn experts(
    State(state): State<Arc<AppState>>,
    Query(params): Query<HashMap<String, String>>,
) -> ApiResult<ExpertsResponse> {
    let category = params
        .get("category")
        .filter(|c| !c.is_empty())
        .ok_or_else(|| ApiError::bad_request("missing category"))?;
    let statuses = parse_status_filter(params.get("status").map(String::as_str))
        .map_err(ApiError::bad_request)?;
    let k = match params.get("k").filter(|k| !k.is_empty()) {
        None => DEFAULT_K,
        Some(k) => k.parse::<usize>().ok().filter(|&k| k > 0).ok_or_else(|| {
            ApiError::bad_request(format!("k must be a positive integer, got `{k}`"))
        })?,
    };
    let state2 = state.clone();
    let category = category.clone();
    let ranked = tokio::task::spawn_blocking(move || state2.rank(&category, &statuses, k))
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))??;
    let results = ranked
        .entries
        .into_iter()
        .map(|e| {
            let person = state.index.person(&e.person_id);
            ExpertResult {
                name: person.map(|p| p.display_name.clone()).unwrap_or_default(),
                status: person
                    .map(|p| p.academic_status)
                    .unwrap_or(AcademicStatus::Other),
                person_id: e.person_id,
                score: e.score,
                rank: e.rank,
            }
        })
        .collect();
    Ok(Json(ExpertsResponse { results }))
}

#[derive(Serialize)]
struct PublicationSummary {
    pub_id: String,
    title: String,
    journal: Option<String>,
    category_id: Option<String>,
    reader_count: u64,
}

#[derive(Serialize)]
struct PersonResponse {
    person_id: String,
    name: String,
    status: AcademicStatus,
    research_interests: Vec<String>,
    publications: Vec<PublicationSummary>,
    vote_tally: i64,
}

async fn person(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
) -> ApiResult<PersonResponse> {
    let person = state
        .index
        .person(&id)
        .ok_or_else(|| ApiError::not_found(format!("unknown person `{id}`")))?;
    let research_interests = person
        .profile_id
        .as_deref()
        .and_then(|p| state.index.profile(p))
        .map(|p| p.research_interests.clone())
        .unwrap_or_default();
    let publications = state
        .index
        .publications_of(&id)
        .into_iter()
        .map(|p| PublicationSummary {
            pub_id: p.pub_id.clone(),
            title: p.title.clone(),
            journal: p.journal.clone(),
            category_id: p.category_id.clone(),
            reader_count: p.reader_count,
        })
        .collect();
    Ok(Json(PersonResponse {
        person_id: person.person_id.clone(),
        name: person.display_name.clone(),
        status: person.academic_status,
        research_interests,
        publications,
        vote_tally: state.tally(&id),
    }))
}

#[derive(Deserialize)]
struct VoteRequest {
    person_id: String,
    delta: i64,
    voter_token: String,
}

#[derive(Serialize)]
struct VoteResponse {
    tally: i64,
}

async fn vote(State(state): State<Arc<AppState>>, body: Bytes) -> ApiResult<VoteResponse> {
    let req: VoteRequest = parse_body(&body)?;
    let tally = tokio::task::spawn_blocking(move || {
        state.vote(&req.voter_token, &req.person_id, req.delta)
    })
    .await
    .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))??;
    Ok(Json(VoteResponse { tally }))
}

/// Binds `0.0.0.0:<port>` and serves until Ctrl-C.
pub async fn serve(state: Arc<AppState>, port: u16) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(("0.0.0.0", port)).await?;
    log::info!("listening on {}", listener.local_addr()?);
    axum::serve(listener, router(state))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
