//! Machine-readable run reports. Given identical inputs and seed, a report
//! is byte-identical across runs except for the wall-time field.

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub inputs: Vec<InputHash>,
    pub verdicts: Vec<VerdictLine>,
    pub counters: Counters,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
    pub wall_time_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct InputHash {
    pub path: String,
    pub sha256: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictLine {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Counters {
    pub checks_run: usize,
    pub passed: usize,
}

pub struct ReportBuilder {
    command: String,
    inputs: Vec<InputHash>,
    verdicts: Vec<VerdictLine>,
    counters: Counters,
    first_failure: Option<String>,
    started: std::time::Instant,
}

impl ReportBuilder {
    pub fn new(command: &str) -> ReportBuilder {
        ReportBuilder {
            command: command.to_owned(),
            inputs: Vec::new(),
            verdicts: Vec::new(),
            counters: Counters::default(),
            first_failure: None,
            started: std::time::Instant::now(),
        }
    }

    pub fn input(&mut self, path: &str, content: &str) {
        let mut hasher = Sha256::new();
        hasher.update(content.as_bytes());
        let digest = hasher.finalize();
        let mut hex = String::with_capacity(64);
        for byte in digest {
            hex.push_str(&format!("{byte:02x}"));
        }
        self.inputs.push(InputHash { path: path.to_owned(), sha256: hex });
    }

    pub fn verdict(&mut self, name: &str, pass: bool, detail: Option<String>) {
        self.counters.checks_run += 1;
        if pass {
            self.counters.passed += 1;
        } else if self.first_failure.is_none() {
            let detail_str = detail.clone().unwrap_or_default();
            self.first_failure = Some(format!("{name}: {detail_str}"));
        }
        self.verdicts.push(VerdictLine { name: name.to_owned(), pass, detail });
    }

    /// Adds bulk counts without one verdict line per check.
    pub fn bulk(&mut self, checks: usize, passed: usize) {
        self.counters.checks_run += checks;
        self.counters.passed += passed;
    }

    pub fn finish(self) -> Report {
        Report {
            schema: 1,
            command: self.command,
            inputs: self.inputs,
            verdicts: self.verdicts,
            counters: self.counters,
            first_failure: self.first_failure,
            wall_time_ms: self.started.elapsed().as_millis(),
        }
    }
}

impl Report {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass) && self.counters.passed == self.counters.checks_run
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn print_human(&self) {
        for v in &self.verdicts {
            let status = if v.pass { "ok" } else { "FAIL" };
            match &v.detail {
                Some(d) => println!("{status:4} {} — {}", v.name, d),
                None => println!("{status:4} {}", v.name),
            }
        }
        println!(
            "{}: {}/{} checks passed ({} ms)",
            self.command, self.counters.passed, self.counters.checks_run, self.wall_time_ms
        );
        if let Some(failure) = &self.first_failure {
            println!("first failure: {failure}");
        }
    }
}
