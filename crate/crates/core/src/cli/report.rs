use std::fmt::Write as _;
use std::time::Duration;

use crate::config::EngineConfig;

/// Plain-text command report with a fixed field order. Identical inputs and
/// configuration give identical bytes; wall-clock time is printed only when
/// requested.
#[derive(Debug, Clone)]
pub struct Report {
    command: String,
    config: EngineConfig,
    results: Vec<(String, String)>,
    notes: Vec<String>,
    wall_clock: Option<Duration>,
}

impl Report {
    pub fn new(command: impl Into<String>, config: &EngineConfig) -> Self {
        Report {
            command: command.into(),
            config: config.clone(),
            results: Vec::new(),
            notes: Vec::new(),
            wall_clock: None,
        }
    }

    pub fn result(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.results.push((key.into(), value.to_string()));
        self
    }

    pub fn note(&mut self, note: impl Into<String>) -> &mut Self {
        self.notes.push(note.into());
        self
    }

    pub fn set_wall_clock(&mut self, elapsed: Duration) {
        self.wall_clock = Some(elapsed);
    }

    pub fn render(&self) -> String {
        let c = &self.config;
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "config:");
        let _ = writeln!(out, "  seed: {}", c.seed);
        let _ = writeln!(out, "  primes: {}", c.primes);
        let _ = writeln!(out, "  budget: {}", c.budget);
        match c.word_cap {
            Some(w) => {
                let _ = writeln!(out, "  word_cap: {w}");
            }
            None => {
                let _ = writeln!(out, "  word_cap: default");
            }
        }
        let _ = writeln!(out, "  evidence_degree: {}", c.evidence_degree);
        let _ = writeln!(out, "results:");
        for (k, v) in &self.results {
            let _ = writeln!(out, "  {k}: {v}");
        }
        if !self.notes.is_empty() {
            let _ = writeln!(out, "notes:");
            for n in &self.notes {
                let _ = writeln!(out, "  - {n}");
            }
        }
        if let Some(t) = self.wall_clock {
            let _ = writeln!(out, "wall_clock_ms: {}", t.as_millis());
        }
        out
    }
}
