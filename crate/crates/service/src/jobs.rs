//! In-memory design jobs with least-recently-used eviction.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use taste_core::inverse::DesignResult;

use crate::error::ErrorDetail;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JobStatus {
    Pending,
    Running,
    Done,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Job {
    pub job_id: String,
    pub status: JobStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<DesignResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorDetail>,
}

/// Bounded job map. Lookups refresh recency; inserting into a full table
/// drops the least recently used entry.
#[derive(Debug)]
pub struct JobTable {
    capacity: usize,
    next: u64,
    jobs: IndexMap<String, Job>,
}

impl JobTable {
    pub fn new(capacity: usize) -> Self {
        JobTable {
            capacity: capacity.max(1),
            next: 1,
            jobs: IndexMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.jobs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.jobs.is_empty()
    }

    /// Register a pending job and return its id.
    pub fn create(&mut self) -> String {
        let job_id = format!("job-{:06}", self.next);
        self.next += 1;
        if self.jobs.len() >= self.capacity {
            if let Some((evicted, _)) = self.jobs.shift_remove_index(0) {
                log::info!("evicting design job {evicted}");
            }
        }
        self.jobs.insert(
            job_id.clone(),
            Job {
                job_id: job_id.clone(),
                status: JobStatus::Pending,
                result: None,
                error: None,
            },
        );
        job_id
    }

    pub fn get(&mut self, id: &str) -> Option<Job> {
        let idx = self.jobs.get_index_of(id)?;
        let last = self.jobs.len() - 1;
        self.jobs.move_index(idx, last);
        self.jobs.get(id).cloned()
    }

    /// Update a job in place; a job evicted meanwhile is silently dropped.
    pub fn update(&mut self, id: &str, f: impl FnOnce(&mut Job)) {
        if let Some(job) = self.jobs.get_mut(id) {
            f(job);
        }
    }
}
