//! In-memory play sessions served over HTTP.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use rspace::games::{solve_game, Game, GameState, Goal, Move, Player, Status, StrategyTree};
use rspace::spaces::text::{encode_elem, parse_elem};
use rspace::{Error, Result};

use crate::scenario::Scenario;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OpenRequest {
    pub scenario: Scenario,
    /// The side the human plays; the engine takes the other.
    pub human: Player,
}

/// A move picked from the legal list by position or by its text, or a bare extension given by
/// its element text.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MoveRequest {
    Index { index: usize },
    Text { text: String },
    Elem { elem: String },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Event {
    pub ply: usize,
    pub player: Player,
    pub by: String,
    #[serde(rename = "move")]
    pub mv: Value,
}

pub struct Session {
    game: Game,
    state: GameState,
    human: Player,
    engine_goal: Goal,
    strategy: Option<StrategyTree>,
    log: Vec<Event>,
}

impl Session {
    pub fn open(req: &OpenRequest) -> Result<Session> {
        let game = req.scenario.build()?;
        let engine = req.human.other();
        let g = req.scenario.goal();
        let engine_goal = if g.player == engine { g } else { g.dual() };
        let strategy = solve_game(&game, engine_goal)?.strategy;
        let state = game.initial();
        Ok(Session { game, state, human: req.human, engine_goal, strategy, log: Vec::new() })
    }

    fn depth(&self) -> usize {
        self.game.label_depth()
    }

    pub fn legal(&self) -> Vec<Move> {
        self.game.legal_moves(&self.state)
    }

    pub fn legal_json(&self) -> Value {
        let d = self.depth();
        let moves: Vec<Value> = self
            .legal()
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let mut v = m.to_json(d);
                v["index"] = json!(i);
                v
            })
            .collect();
        json!({ "turn": self.state.turn(), "moves": moves })
    }

    fn status(&self) -> Result<Status> {
        self.game.status(&self.state)
    }

    pub fn state_json(&self, id: &str) -> Result<Value> {
        let d = self.depth();
        let status = self.status()?;
        let human_goal = self.engine_goal.dual();
        let satisfied = |g: Goal| status.satisfies(g);
        Ok(json!({
            "id": id,
            "space": self.game.space().tag(),
            "game": self.game.kind,
            "horizon": self.game.payoff.horizon,
            "turn": self.state.turn(),
            "status": status,
            "realisation": encode_elem(self.state.realisation()),
            "last": self.state.last().map(|g| rspace::games::gen_label(g, d)),
            "history": self.state.history.iter().map(|m| m.text(d)).collect::<Vec<_>>(),
            "human": { "player": self.human, "goal": human_goal, "satisfied": satisfied(human_goal) },
            "engine": {
                "player": self.human.other(),
                "goal": self.engine_goal,
                "satisfied": satisfied(self.engine_goal),
                "winning_strategy": self.strategy.is_some(),
                "note": if self.strategy.is_some() { Value::Null } else { json!("no winning strategy") },
            },
            "log": self.log,
        }))
    }

    fn apply(&mut self, m: Move, by: &str) -> Result<()> {
        let player = self.state.turn().ok_or_else(|| Error::IllegalMove("the play is over".into()))?;
        let next = self.game.step(&self.state, &m)?;
        self.log.push(Event { ply: self.log.len(), player, by: by.into(), mv: m.to_json(self.depth()) });
        self.state = next;
        Ok(())
    }

    /// Plays the human's choice; the choice must name a member of the legal list.
    pub fn human_move(&mut self, req: &MoveRequest) -> std::result::Result<(), ApiError> {
        if self.state.turn() != Some(self.human) {
            return Err(ApiError::conflict("not the human's turn"));
        }
        let legal = self.legal();
        let m = match req {
            MoveRequest::Index { index } => legal.get(*index).cloned(),
            MoveRequest::Text { text } => {
                let d = self.depth();
                let hits: Vec<&Move> = legal.iter().filter(|m| m.text(d) == *text).collect();
                match hits.as_slice() {
                    [one] => Some((*one).clone()),
                    [] => None,
                    _ => return Err(ApiError::unprocessable(format!("move text {text} is ambiguous; use an index"))),
                }
            }
            MoveRequest::Elem { elem } => {
                let m = Move::Ext(parse_elem(elem)?);
                if !legal.contains(&m) {
                    // the games module explains the rejection
                    self.game.step(&self.state, &m)?;
                }
                legal.contains(&m).then_some(m)
            }
        };
        let m = m.ok_or_else(|| ApiError::unprocessable(format!("illegal move: {} is not in the legal list", describe(req))))?;
        self.apply(m, "human").map_err(ApiError::from)
    }

    /// The engine's reply: from its solved strategy when there is one, else the first legal move.
    pub fn engine_move(&mut self) -> std::result::Result<Value, ApiError> {
        if self.state.turn() != Some(self.human.other()) {
            return Err(ApiError::conflict("not the engine's turn"));
        }
        let legal = self.legal();
        let from_tree = self.strategy.as_ref().and_then(|t| match t.follow(&self.state.history) {
            Some(StrategyTree::Play(m, _)) => Some(m.clone()),
            _ => None,
        });
        let (m, source) = match from_tree {
            Some(m) => (m, "strategy"),
            None => match legal.first() {
                Some(m) => (m.clone(), "first_legal"),
                None => return Err(ApiError::conflict("the engine has no legal move")),
            },
        };
        let shown = m.to_json(self.depth());
        self.apply(m, "engine")?;
        Ok(json!({ "move": shown, "source": source }))
    }

    pub fn transcript(&self) -> Value {
        json!({ "moves": self.log, "realisation": encode_elem(self.state.realisation()) })
    }
}

fn describe(req: &MoveRequest) -> String {
    match req {
        MoveRequest::Index { index } => format!("index {index}"),
        MoveRequest::Text { text } | MoveRequest::Elem { elem: text } => text.clone(),
    }
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    reason: String,
}

impl ApiError {
    fn conflict(reason: impl Into<String>) -> Self {
        ApiError { status: StatusCode::CONFLICT, reason: reason.into() }
    }

    fn unprocessable(reason: impl Into<String>) -> Self {
        ApiError { status: StatusCode::UNPROCESSABLE_ENTITY, reason: reason.into() }
    }

    fn not_found(id: &str) -> Self {
        ApiError { status: StatusCode::NOT_FOUND, reason: format!("unknown session {id}") }
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::IllegalMove(_) => StatusCode::UNPROCESSABLE_ENTITY,
            _ => StatusCode::BAD_REQUEST,
        };
        ApiError { status, reason: e.to_string() }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(json!({ "error": self.reason }))).into_response()
    }
}

#[derive(Default)]
struct Store {
    next: u64,
    sessions: BTreeMap<String, Session>,
}

#[derive(Clone, Default)]
pub struct AppState {
    store: Arc<Mutex<Store>>,
}

type ApiResult = std::result::Result<Json<Value>, ApiError>;

fn with_session<T>(st: &AppState, id: &str, f: impl FnOnce(&mut Session) -> std::result::Result<T, ApiError>) -> std::result::Result<T, ApiError> {
    let mut store = st.store.lock().expect("session store poisoned");
    let s = store.sessions.get_mut(id).ok_or_else(|| ApiError::not_found(id))?;
    f(s)
}

async fn open(State(st): State<AppState>, Json(req): Json<OpenRequest>) -> std::result::Result<(StatusCode, Json<Value>), ApiError> {
    let session = Session::open(&req)?;
    let mut store = st.store.lock().expect("session store poisoned");
    store.next += 1;
    let id = format!("s{}", store.next);
    let body = session.state_json(&id)?;
    store.sessions.insert(id, session);
    Ok((StatusCode::CREATED, Json(body)))
}

async fn state(State(st): State<AppState>, Path(id): Path<String>) -> ApiResult {
    with_session(&st, &id, |s| Ok(Json(s.state_json(&id)?)))
}

async fn legal(State(st): State<AppState>, Path(id): Path<String>) -> ApiResult {
    with_session(&st, &id, |s| Ok(Json(s.legal_json())))
}

async fn play(State(st): State<AppState>, Path(id): Path<String>, Json(req): Json<MoveRequest>) -> ApiResult {
    with_session(&st, &id, |s| {
        s.human_move(&req)?;
        Ok(Json(s.state_json(&id)?))
    })
}

async fn engine(State(st): State<AppState>, Path(id): Path<String>) -> ApiResult {
    with_session(&st, &id, |s| {
        let reply = s.engine_move()?;
        Ok(Json(json!({ "engine": reply, "state": s.state_json(&id)? })))
    })
}

async fn close(State(st): State<AppState>, Path(id): Path<String>) -> ApiResult {
    let mut store = st.store.lock().expect("session store poisoned");
    let s = store.sessions.remove(&id).ok_or_else(|| ApiError::not_found(&id))?;
    Ok(Json(json!({ "id": id, "closed": true, "transcript": s.transcript() })))
}

pub fn router() -> Router {
    Router::new()
        .route("/session", post(open))
        .route("/session/{id}/state", get(state))
        .route("/session/{id}/legal", get(legal))
        .route("/session/{id}/move", post(play))
        .route("/session/{id}/engine-move", post(engine))
        .route("/session/{id}/close", post(close))
        .with_state(AppState::default())
}

