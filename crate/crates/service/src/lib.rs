//! HTTP front end over a loaded corpus and trained model.
//!
//! Routes:
//!
//! | method | path                 | body / query                  |
//! |--------|----------------------|-------------------------------|
//! | GET    | `/api/health`        |                               |
//! | GET    | `/api/ingredients`   | `?category=allium`            |
//! | POST   | `/api/predict`       | `{recipe_id}` or `{components}` |
//! | POST   | `/api/design`        | scenario, `?mode=sync\|async` |
//! | GET    | `/api/design/{job}`  |                               |
//! | GET    | `/api/report`        |                               |
//! | GET    | `/api/schema`        |                               |
//!
//! Every route except `/api/health` and `/api/schema` answers 503 until a
//! [`Session`] is installed. Errors use one body shape, see [`ErrorBody`].

mod error;
pub mod jobs;
pub mod schema;

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::{Arc, Mutex, RwLock};

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::{header, HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use taste_core::chemistry::{classify, Category, CategoryLexicon};
use taste_core::dataset::{Corpus, SourceTier};
use taste_core::forward::{forward, PredictRequest};
use taste_core::hybrid::{PredictOptions, TrainedModel};
use taste_core::inverse::{run_scenario, DeConfig, HybridForward, Scenario};
use taste_core::TasteVector;
use tokio::sync::Semaphore;
use tower_http::cors::{AllowOrigin, Any, CorsLayer};

pub use error::{ApiError, ErrorBody, ErrorDetail};
pub use jobs::{Job, JobStatus, JobTable};

/// Immutable state shared by all requests once loaded.
#[derive(Debug, Clone)]
pub struct Session {
    pub corpus: Corpus,
    pub model: TrainedModel,
    pub lexicon: CategoryLexicon,
    pub predict: PredictOptions,
    pub de: DeConfig,
}

impl Session {
    pub fn new(
        corpus: Corpus,
        model: TrainedModel,
        lexicon: CategoryLexicon,
        predict: PredictOptions,
        de: DeConfig,
    ) -> taste_core::Result<Self> {
        model.validate()?;
        model.check_lexicon(&lexicon)?;
        de.validate()?;
        Ok(Session {
            corpus,
            model,
            lexicon,
            predict,
            de,
        })
    }
}

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    pub bind: SocketAddr,
    /// Allowed CORS origins; empty allows any origin.
    pub cors_origins: Vec<String>,
    pub job_capacity: usize,
    /// Concurrent design runs.
    pub workers: usize,
    /// Designs whose projected work (population x generations x ingredients)
    /// exceeds this run as background jobs.
    pub async_threshold: usize,
    /// `report.json` served by `/api/report`; read on every request.
    pub report_path: PathBuf,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        ServiceConfig {
            bind: SocketAddr::from(([127, 0, 0, 1], 8080)),
            cors_origins: vec![],
            job_capacity: 32,
            workers: 2,
            async_threshold: 15 * 501 * 20,
            report_path: PathBuf::from("report/report.json"),
        }
    }
}

struct Inner {
    session: RwLock<Option<Arc<Session>>>,
    jobs: Mutex<JobTable>,
    workers: Arc<Semaphore>,
    config: ServiceConfig,
}

#[derive(Clone)]
pub struct AppState {
    inner: Arc<Inner>,
}

impl AppState {
    /// State with no session; data routes answer 503 until [`AppState::load`].
    pub fn new(config: ServiceConfig) -> Self {
        AppState {
            inner: Arc::new(Inner {
                session: RwLock::new(None),
                jobs: Mutex::new(JobTable::new(config.job_capacity)),
                workers: Arc::new(Semaphore::new(config.workers.max(1))),
                config,
            }),
        }
    }

    pub fn with_session(config: ServiceConfig, session: Session) -> Self {
        let state = AppState::new(config);
        state.load(session);
        state
    }

    pub fn load(&self, session: Session) {
        *self.inner.session.write().expect("session lock") = Some(Arc::new(session));
    }

    pub fn config(&self) -> &ServiceConfig {
        &self.inner.config
    }

    fn session(&self) -> Result<Arc<Session>, ApiError> {
        self.inner
            .session
            .read()
            .expect("session lock")
            .clone()
            .ok_or_else(ApiError::not_ready)
    }

    fn jobs(&self) -> std::sync::MutexGuard<'_, JobTable> {
        self.inner.jobs.lock().expect("job table lock")
    }
}

pub fn router(state: AppState) -> Router {
    let cors = if state.config().cors_origins.is_empty() {
        CorsLayer::new().allow_origin(Any)
    } else {
        let origins: Vec<HeaderValue> = state
            .config()
            .cors_origins
            .iter()
            .filter_map(|o| HeaderValue::from_str(o).ok())
            .collect();
        CorsLayer::new().allow_origin(AllowOrigin::list(origins))
    }
    .allow_methods(Any)
    .allow_headers([header::CONTENT_TYPE]);

    Router::new()
        .route("/api/health", get(health))
        .route("/api/ingredients", get(ingredients))
        .route("/api/predict", post(predict))
        .route("/api/design", post(design))
        .route("/api/design/{job}", get(design_job))
        .route("/api/report", get(report))
        .route("/api/schema", get(schemas))
        .layer(cors)
        .with_state(state)
}

/// Bind and serve until the process is stopped.
pub async fn serve(state: AppState) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(state.config().bind).await?;
    serve_on(listener, state).await
}

/// Serve on an already bound listener, e.g. one bound to port 0.
pub async fn serve_on(listener: tokio::net::TcpListener, state: AppState) -> std::io::Result<()> {
    log::info!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(state)).await
}

fn json_text(status: StatusCode, body: String) -> Response {
    (status, [(header::CONTENT_TYPE, "application/json")], body).into_response()
}

fn parse_body<T: for<'de> Deserialize<'de>>(body: &Bytes) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError::invalid_json(&e))
}

async fn health(State(state): State<AppState>) -> Json<serde_json::Value> {
    let ready = state.session().is_ok();
    Json(serde_json::json!({ "status": if ready { "ready" } else { "loading" } }))
}

#[derive(Debug, Deserialize)]
struct IngredientQuery {
    category: Option<String>,
}

#[derive(Debug, Serialize)]
struct IngredientView<'a> {
    ingredient_id: &'a str,
    display_name: &'a str,
    taste: TasteVector,
    source_tier: SourceTier,
    categories: Vec<Category>,
}

async fn ingredients(
    State(state): State<AppState>,
    Query(q): Query<IngredientQuery>,
) -> Result<Response, ApiError> {
    let session = state.session()?;
    let wanted = match q.category.as_deref().filter(|c| !c.is_empty()) {
        Some(c) => Some(c.parse::<Category>().map_err(|e| {
            ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "validation_error", e).with_field("category")
        })?),
        None => None,
    };
    let list: Vec<IngredientView<'_>> = session
        .corpus
        .ingredients()
        .filter_map(|ing| {
            let categories: Vec<Category> = classify(ing, &session.lexicon).into_iter().collect();
            if wanted.is_some_and(|w| !categories.contains(&w)) {
                return None;
            }
            Some(IngredientView {
                ingredient_id: &ing.ingredient_id,
                display_name: &ing.display_name,
                taste: ing.taste,
                source_tier: ing.source_tier,
                categories,
            })
        })
        .collect();
    Ok(Json(list).into_response())
}

async fn predict(State(state): State<AppState>, body: Bytes) -> Result<Response, ApiError> {
    let session = state.session()?;
    let request: PredictRequest = parse_body(&body)?;
    let recipe = request.resolve(&session.corpus)?;
    let result = forward(&recipe, &session.corpus, &session.model, &session.lexicon, session.predict)?;
    Ok(json_text(StatusCode::OK, result.to_json()))
}

#[derive(Debug, Default, Deserialize)]
struct DesignQuery {
    mode: Option<String>,
}

#[derive(Debug, Serialize)]
struct Accepted {
    job_id: String,
    status: JobStatus,
    location: String,
}

async fn design(
    State(state): State<AppState>,
    Query(q): Query<DesignQuery>,
    body: Bytes,
) -> Result<Response, ApiError> {
    let session = state.session()?;
    let scenario: Scenario = parse_body(&body)?;

    // validate up front so infeasible or unknown inputs fail with 422 on
    // either path
    let recipe = session.corpus.recipe(&scenario.recipe_id)?;
    let ids: Vec<String> = recipe.components.iter().map(|c| c.ingredient_id.clone()).collect();
    let fwd = HybridForward::new(&session.model, &session.corpus, &session.lexicon, &ids, session.predict)?;
    scenario.problem(&session.corpus, &fwd)?;

    let work = session.de.population_size * (session.de.max_generations + 1) * ids.len();
    let run_async = match q.mode.as_deref() {
        Some("async") => true,
        Some("sync") => false,
        None => work > state.config().async_threshold,
        Some(other) => {
            return Err(ApiError::new(
                StatusCode::UNPROCESSABLE_ENTITY,
                "validation_error",
                format!("unknown mode `{other}`, expected sync or async"),
            )
            .with_field("mode"))
        }
    };

    let run = {
        let session = session.clone();
        move || {
            run_scenario(
                &scenario,
                &session.corpus,
                &session.model,
                &session.lexicon,
                &session.de,
                session.predict,
            )
        }
    };

    if !run_async {
        let _permit = state.inner.workers.clone().acquire_owned().await.expect("semaphore open");
        let result = tokio::task::spawn_blocking(run)
            .await
            .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "internal_error", e.to_string()))??;
        return Ok(json_text(StatusCode::OK, result.to_json()));
    }

    let job_id = state.jobs().create();
    let task_state = state.clone();
    let task_id = job_id.clone();
    tokio::spawn(async move {
        let _permit = task_state.inner.workers.clone().acquire_owned().await.expect("semaphore open");
        task_state.jobs().update(&task_id, |j| j.status = JobStatus::Running);
        let outcome = tokio::task::spawn_blocking(run).await;
        task_state.jobs().update(&task_id, |j| match outcome {
            Ok(Ok(result)) => {
                j.status = JobStatus::Done;
                j.result = Some(result);
            }
            Ok(Err(e)) => {
                j.status = JobStatus::Failed;
                j.error = Some(ApiError::from(e).body.error);
            }
            Err(e) => {
                j.status = JobStatus::Failed;
                j.error = Some(ErrorDetail {
                    code: "internal_error".into(),
                    message: e.to_string(),
                    field: None,
                });
            }
        });
    });
    let location = format!("/api/design/{job_id}");
    let mut resp = (
        StatusCode::ACCEPTED,
        Json(Accepted {
            job_id,
            status: JobStatus::Pending,
            location: location.clone(),
        }),
    )
        .into_response();
    if let Ok(v) = HeaderValue::from_str(&location) {
        resp.headers_mut().insert(header::LOCATION, v);
    }
    Ok(resp)
}

async fn design_job(State(state): State<AppState>, Path(job): Path<String>) -> Result<Response, ApiError> {
    state.session()?;
    let found = state.jobs().get(&job);
    match found {
        Some(j) => Ok(Json(j).into_response()),
        None => Err(ApiError::not_found(format!("no design job `{job}`"))),
    }
}

async fn report(State(state): State<AppState>) -> Result<Response, ApiError> {
    state.session()?;
    let path = &state.config().report_path;
    match tokio::fs::read(path).await {
        Ok(bytes) => Ok((StatusCode::OK, [(header::CONTENT_TYPE, "application/json")], bytes).into_response()),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Err(ApiError::not_found(format!(
            "no evaluation report at {}; run `taste-composite evaluate` first",
            path.display()
        ))),
        Err(e) => Err(ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "io_error", e.to_string())),
    }
}

async fn schemas() -> Json<serde_json::Value> {
    Json(schema::all())
}
