use std::fmt::Write as _;
use std::time::Duration;

use serde_json::{json, Map, Value};

/// Outcome of one subcommand. Every `check` line was computed, not assumed.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub command: String,
    pub instance: String,
    pub seed: Option<u64>,
    pub quantities: Vec<(String, Value)>,
    pub checks: Vec<(String, bool)>,
    pub wall_time: Duration,
}

impl RunReport {
    pub fn new(command: &str, instance: impl Into<String>, seed: Option<u64>) -> Self {
        RunReport {
            command: command.to_string(),
            instance: instance.into(),
            seed,
            quantities: Vec::new(),
            checks: Vec::new(),
            wall_time: Duration::ZERO,
        }
    }

    pub fn put(&mut self, key: &str, value: impl Into<Value>) {
        self.quantities.push((key.to_string(), value.into()));
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool) {
        self.checks.push((name.into(), ok));
    }

    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "instance: {}", self.instance);
        match self.seed {
            Some(s) => {
                let _ = writeln!(out, "seed: {s}");
            }
            None => out.push_str("seed: -\n"),
        }
        for (k, v) in &self.quantities {
            let shown = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            let _ = writeln!(out, "{k}: {shown}");
        }
        for (name, ok) in &self.checks {
            let _ = writeln!(out, "check: {name}: {}", if *ok { "OK" } else { "FAILED" });
        }
        let _ = writeln!(out, "wall time: {:.3} s", self.wall_time.as_secs_f64());
        out
    }

    pub fn to_json(&self) -> String {
        let quantities: Map<String, Value> = self.quantities.iter().cloned().collect();
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|(name, ok)| json!({"name": name, "ok": ok}))
            .collect();
        let v = json!({
            "command": self.command,
            "instance": self.instance,
            "seed": self.seed,
            "quantities": quantities,
            "checks": checks,
            "wall_time_s": self.wall_time.as_secs_f64(),
        });
        let mut s = serde_json::to_string_pretty(&v).expect("report is valid JSON");
        s.push('\n');
        s
    }
}

/// Drops the wall-time line or field so reports can be compared.
pub fn strip_wall_time(report: &str) -> String {
    report
        .lines()
        .filter(|l| !l.starts_with("wall time:") && !l.trim_start().starts_with("\"wall_time_s\""))
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_layout() {
        let mut r = RunReport::new("ct", "cycle_triangles n=1", None);
        r.put("ct by expansion", "6");
        r.put("terms", 19);
        r.check("CT mod 4 = 2", true);
        let text = r.to_text();
        assert_eq!(
            strip_wall_time(&text),
            "command: ct\ninstance: cycle_triangles n=1\nseed: -\nct by expansion: 6\nterms: 19\ncheck: CT mod 4 = 2: OK"
        );
        assert!(r.all_ok());
        r.check("other", false);
        assert!(!r.all_ok());
        assert!(r.to_text().contains("check: other: FAILED"));
    }

    #[test]
    fn json_layout() {
        let mut r = RunReport::new("parity", "partitioned", Some(7));
        r.put("transversals", "5");
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["seed"], 7);
        assert_eq!(v["quantities"]["transversals"], "5");
    }
}
