//! In-memory session table with least-recently-used eviction and an idle timeout.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use crate::session::Session;

pub type SharedSession = Arc<tokio::sync::Mutex<Session>>;

struct Slot {
    session: SharedSession,
    tick: u64,
    touched: Instant,
}

#[derive(Default)]
struct Table {
    slots: HashMap<String, Slot>,
    /// Access tick to session id; the first entry is the least recently used.
    order: BTreeMap<u64, String>,
    tick: u64,
}

impl Table {
    fn remove(&mut self, id: &str) -> Option<Slot> {
        let slot = self.slots.remove(id)?;
        self.order.remove(&slot.tick);
        Some(slot)
    }

    fn purge_expired(&mut self, ttl: Duration) {
        let now = Instant::now();
        let stale: Vec<String> =
            self.slots.iter().filter(|(_, s)| now.duration_since(s.touched) > ttl).map(|(id, _)| id.clone()).collect();
        for id in stale {
            self.remove(&id);
        }
    }
}

pub struct SessionStore {
    table: Mutex<Table>,
    capacity: usize,
    ttl: Duration,
}

impl SessionStore {
    pub fn new(capacity: usize, ttl: Duration) -> SessionStore {
        SessionStore { table: Mutex::new(Table::default()), capacity: capacity.max(1), ttl }
    }

    pub fn insert(&self, session: Session) -> SharedSession {
        let mut t = self.table.lock().unwrap();
        t.purge_expired(self.ttl);
        let id = session.id.clone();
        t.remove(&id);
        while t.slots.len() >= self.capacity {
            let Some((_, oldest)) = t.order.pop_first() else { break };
            t.slots.remove(&oldest);
        }
        t.tick += 1;
        let tick = t.tick;
        let shared = Arc::new(tokio::sync::Mutex::new(session));
        t.order.insert(tick, id.clone());
        t.slots.insert(id, Slot { session: shared.clone(), tick, touched: Instant::now() });
        shared
    }

    /// Looks up a live session and marks it as used.
    pub fn get(&self, id: &str) -> Option<SharedSession> {
        let mut t = self.table.lock().unwrap();
        let expired = t.slots.get(id).map(|s| s.touched.elapsed() > self.ttl)?;
        if expired {
            t.remove(id);
            return None;
        }
        t.tick += 1;
        let tick = t.tick;
        let slot = t.slots.get_mut(id)?;
        let old = std::mem::replace(&mut slot.tick, tick);
        slot.touched = Instant::now();
        let session = slot.session.clone();
        t.order.remove(&old);
        t.order.insert(tick, id.to_string());
        Some(session)
    }

    pub fn remove(&self, id: &str) -> bool {
        self.table.lock().unwrap().remove(id).is_some()
    }

    pub fn len(&self) -> usize {
        self.table.lock().unwrap().slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clustersing::quiver::{dynkin_seed, DynkinType};
    use clustersing::FieldSpec;

    fn session(id: &str) -> Session {
        Session::new(id.into(), FieldSpec::rationals(), dynkin_seed(DynkinType::A, 2).unwrap().matrix)
    }

    #[test]
    fn evicts_least_recently_used() {
        let store = SessionStore::new(2, Duration::from_secs(60));
        store.insert(session("a"));
        store.insert(session("b"));
        assert!(store.get("a").is_some());
        store.insert(session("c"));
        assert!(store.get("a").is_some());
        assert!(store.get("b").is_none());
        assert!(store.get("c").is_some());
        assert_eq!(store.len(), 2);
    }

    #[test]
    fn idle_sessions_expire() {
        let store = SessionStore::new(8, Duration::from_millis(30));
        store.insert(session("a"));
        std::thread::sleep(Duration::from_millis(60));
        assert!(store.get("a").is_none());
        assert!(store.is_empty());
    }
}
