//! Mutation sessions: a seed, the vertices applied to it, and the canonical seeds seen so far.

use std::collections::BTreeSet;
use std::time::{SystemTime, UNIX_EPOCH};

use clustersing::quiver::{ExchangeMatrix, MatrixJson};
use clustersing::seed::Seed;
use clustersing::{AlgebraError, FieldSpec};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum SessionError {
    #[error("vertex {vertex} out of range 1..={rank}")]
    VertexOutOfRange { vertex: usize, rank: usize },
    #[error("nothing to undo")]
    EmptyHistory,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    /// 1-based vertex.
    pub vertex: usize,
    /// Canonical hash of the seed reached.
    pub hash: String,
}

/// What a session needs to be rebuilt elsewhere: the starting matrix and the vertices applied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionExport {
    pub characteristic: u64,
    pub initial: MatrixJson,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Session {
    pub id: String,
    field: FieldSpec,
    initial: Seed,
    /// `seeds[0]` is the initial seed, `seeds[i]` the seed after `history[i - 1]`.
    seeds: Vec<Seed>,
    history: Vec<Step>,
    visited: BTreeSet<String>,
    pub created_ms: u64,
    pub active_ms: u64,
}

pub fn now_ms() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_millis() as u64)
}

impl Session {
    pub fn new(id: String, field: FieldSpec, matrix: ExchangeMatrix) -> Session {
        let initial = Seed::initial(field, matrix);
        let visited = BTreeSet::from([initial.canonical_hash()]);
        let now = now_ms();
        Session { id, field, seeds: vec![initial.clone()], initial, history: Vec::new(), visited, created_ms: now, active_ms: now }
    }

    pub fn import(id: String, export: &SessionExport) -> Result<Session, SessionError> {
        let field = FieldSpec::new(export.characteristic)?;
        let mut s = Session::new(id, field, ExchangeMatrix::from_json(&export.initial)?);
        for &v in &export.vertices {
            s.mutate(v)?;
        }
        Ok(s)
    }

    pub fn export(&self) -> SessionExport {
        SessionExport {
            characteristic: self.field.characteristic(),
            initial: self.initial.matrix().to_json(),
            vertices: self.history.iter().map(|s| s.vertex).collect(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn initial(&self) -> &Seed {
        &self.initial
    }

    pub fn current(&self) -> &Seed {
        self.seeds.last().expect("a session always holds its initial seed")
    }

    pub fn history(&self) -> &[Step] {
        &self.history
    }

    pub fn visited(&self) -> &BTreeSet<String> {
        &self.visited
    }

    /// Mutates at the 1-based `vertex`; the flag says whether the canonical seed was seen before.
    pub fn mutate(&mut self, vertex: usize) -> Result<bool, SessionError> {
        let rank = self.current().rank();
        if vertex == 0 || vertex > rank {
            return Err(SessionError::VertexOutOfRange { vertex, rank });
        }
        let next = self.current().mutate(vertex - 1)?;
        let hash = next.canonical_hash();
        let revisited = !self.visited.insert(hash.clone());
        self.history.push(Step { vertex, hash });
        self.seeds.push(next);
        self.active_ms = now_ms();
        Ok(revisited)
    }

    pub fn undo(&mut self) -> Result<(), SessionError> {
        if self.history.pop().is_none() {
            return Err(SessionError::EmptyHistory);
        }
        self.seeds.pop();
        self.visited = self.seeds.iter().map(|s| s.canonical_hash()).collect();
        self.active_ms = now_ms();
        Ok(())
    }

    /// Replays the history from the initial seed and compares with the stored state.
    pub fn replay_consistent(&self) -> Result<bool, SessionError> {
        let mut s = self.initial.clone();
        let mut seen = BTreeSet::from([s.canonical_hash()]);
        for step in &self.history {
            s = s.mutate(step.vertex - 1)?;
            let h = s.canonical_hash();
            if h != step.hash {
                return Ok(false);
            }
            seen.insert(h);
        }
        Ok(s == *self.current() && seen == self.visited)
    }
}
