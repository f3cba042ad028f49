//! User votes on ranked persons.
//!
//! Each voter holds at most one live vote per person; voting again replaces
//! the earlier vote. The durable form is an append-only log of
//! `voter_token,person_id,delta,unix_ts` lines, replayed on open.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use super::RankError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoteRecord {
    pub voter_token: String,
    pub person_id: String,
    pub delta: i8,
    pub timestamp: u64,
}

impl VoteRecord {
    fn to_line(&self) -> String {
        format!(
            "{},{},{},{}\n",
            self.voter_token, self.person_id, self.delta, self.timestamp
        )
    }

    fn parse(line: &str) -> Result<VoteRecord, String> {
        let parts: Vec<&str> = line.split(',').collect();
        let [voter, person, delta, ts] = parts.as_slice() else {
            return Err(format!("expected 4 fields, found {}", parts.len()));
        };
        let delta: i8 = delta
            .trim()
            .parse()
            .map_err(|_| format!("bad delta `{delta}`"))?;
        if delta != 1 && delta != -1 {
            return Err(format!("delta must be +1 or -1, got {delta}"));
        }
        Ok(VoteRecord {
            voter_token: voter.trim().to_string(),
            person_id: person.trim().to_string(),
            delta,
            timestamp: ts
                .trim()
                .parse()
                .map_err(|_| format!("bad timestamp `{ts}`"))?,
        })
    }
}

#[derive(Debug, Default)]
pub struct VoteStore {
    live: HashMap<(String, String), i8>,
    tallies: HashMap<String, i64>,
    log: Vec<VoteRecord>,
    path: Option<PathBuf>,
    file: Option<File>,
    epoch: u64,
}

fn check_token(field: &str, value: &str) -> Result<(), RankError> {
    if value.is_empty() || value.contains([',', '\n', '\r']) {
        return Err(RankError::InvalidVote(format!(
            "{field} must be non-empty and free of commas and newlines"
        )));
    }
    Ok(())
}

impl VoteStore {
    pub fn in_memory() -> Self {
        VoteStore::default()
    }

    /// Opens (creating if needed) a file-backed store and replays its log.
    pub fn open(path: &Path) -> Result<Self, RankError> {
        let mut store = VoteStore::default();
        if path.exists() {
            let text = std::fs::read_to_string(path).map_err(|e| RankError::io(path, e))?;
            for (i, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let record = VoteRecord::parse(line).map_err(|message| RankError::VoteLog {
                    path: path.display().to_string(),
                    line: i + 1,
                    message,
                })?;
                store.apply_record(record);
            }
        }
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| RankError::io(path, e))?;
        store.path = Some(path.to_path_buf());
        store.file = Some(file);
        Ok(store)
    }

    fn apply_record(&mut self, record: VoteRecord) {
        let key = (record.voter_token.clone(), record.person_id.clone());
        let previous = self.live.insert(key, record.delta).unwrap_or(0);
        *self.tallies.entry(record.person_id.clone()).or_insert(0) +=
            i64::from(record.delta) - i64::from(previous);
        self.log.push(record);
        self.epoch += 1;
    }

    /// Records a vote and returns the person's new tally. For file-backed
    /// stores the log line is flushed to disk before the tally changes.
    pub fn apply_vote(
        &mut self,
        voter_token: &str,
        person_id: &str,
        delta: i64,
        person_exists: impl Fn(&str) -> bool,
    ) -> Result<i64, RankError> {
        if delta != 1 && delta != -1 {
            return Err(RankError::InvalidDelta(delta));
        }
        check_token("voter_token", voter_token)?;
        if !person_exists(person_id) {
            return Err(RankError::UnknownPerson(person_id.to_string()));
        }
        let record = VoteRecord {
            voter_token: voter_token.to_string(),
            person_id: person_id.to_string(),
            delta: delta as i8,
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        };
        if let Some(file) = self.file.as_mut() {
            let path = self.path.as_deref().unwrap_or(Path::new("votes"));
            file.write_all(record.to_line().as_bytes())
                .and_then(|_| file.sync_data())
                .map_err(|e| RankError::io(path, e))?;
        }
        self.apply_record(record);
        Ok(self.tally(person_id))
    }

    pub fn tally(&self, person_id: &str) -> i64 {
        self.tallies.get(person_id).copied().unwrap_or(0)
    }

    pub fn log(&self) -> &[VoteRecord] {
        &self.log
    }

    /// Incremented on every applied vote.
    pub fn epoch(&self) -> u64 {
        self.epoch
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn anyone(_: &str) -> bool {
        true
    }

    #[test]
    fn fresh_vote() {
        let mut s = VoteStore::in_memory();
        assert_eq!(s.apply_vote("v1", "p", 1, anyone).unwrap(), 1);
    }

    #[test]
    fn revote_replaces() {
        let mut s = VoteStore::in_memory();
        s.apply_vote("v1", "p", 1, anyone).unwrap();
        assert_eq!(s.apply_vote("v1", "p", -1, anyone).unwrap(), -1);
        assert_eq!(s.log().len(), 2);
        assert_eq!(s.epoch(), 2);
    }

    #[test]
    fn distinct_voters_add() {
        let mut s = VoteStore::in_memory();
        s.apply_vote("v1", "p", 1, anyone).unwrap();
        assert_eq!(s.apply_vote("v2", "p", 1, anyone).unwrap(), 2);
    }

    #[test]
    fn rejects_bad_input() {
        let mut s = VoteStore::in_memory();
        assert!(matches!(
            s.apply_vote("v", "p", 2, anyone),
            Err(RankError::InvalidDelta(2))
        ));
        assert!(matches!(
            s.apply_vote("v", "ghost", 1, |p| p != "ghost"),
            Err(RankError::UnknownPerson(_))
        ));
        assert!(s.apply_vote("a,b", "p", 1, anyone).is_err());
        assert!(s.apply_vote("", "p", 1, anyone).is_err());
        assert_eq!(s.tally("p"), 0);
    }

    #[test]
    fn replay_reproduces_tallies() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("votes.log");
        {
            let mut s = VoteStore::open(&path).unwrap();
            s.apply_vote("v1", "p", 1, anyone).unwrap();
            s.apply_vote("v1", "p", -1, anyone).unwrap();
            s.apply_vote("v2", "q", 1, anyone).unwrap();
        }
        let s = VoteStore::open(&path).unwrap();
        assert_eq!(s.tally("p"), -1);
        assert_eq!(s.tally("q"), 1);
    }

    #[test]
    fn corrupt_log_reports_line() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("votes.log");
        std::fs::write(&path, "v,p,1,0\nv,p,3,0\n").unwrap();
        match VoteStore::open(&path) {
            Err(RankError::VoteLog { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }
}
