use std::fmt::Write as _;
use std::time::Duration;

use crate::cache::CacheEntry;

/// What a run read, wrote and concluded. Everything except the trailing
/// `time` lines is a function of the inputs.
#[derive(Clone, Debug, Default)]
pub struct RunManifest {
    pub command: String,
    pub generator_digest: String,
    pub versions: Vec<(String, String)>,
    pub settings: Vec<(String, String)>,
    pub caches: Vec<CacheEntry>,
    pub verdicts: Vec<(String, bool)>,
    pub timings: Vec<(String, Duration)>,
}

impl RunManifest {
    pub fn new(command: impl Into<String>) -> Self {
        RunManifest {
            command: command.into(),
            versions: vec![
                ("nearoct".into(), nearoct::VERSION.into()),
                ("nearoct-cli".into(), env!("CARGO_PKG_VERSION").into()),
            ],
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.1)
    }

    /// The deterministic part.
    pub fn body(&self) -> String {
        let mut out = String::new();
        writeln!(out, "command {}", self.command).unwrap();
        writeln!(out, "generators {}", self.generator_digest).unwrap();
        for (k, v) in &self.versions {
            writeln!(out, "version {k} {v}").unwrap();
        }
        for (k, v) in &self.settings {
            writeln!(out, "setting {k} {v}").unwrap();
        }
        let mut caches = self.caches.clone();
        caches.sort_by(|a, b| a.path.cmp(&b.path));
        caches.dedup();
        for c in &caches {
            writeln!(out, "cache {} {} {}", c.kind, c.path, c.digest).unwrap();
        }
        for (target, ok) in &self.verdicts {
            writeln!(out, "verdict {target} {}", if *ok { "pass" } else { "fail" }).unwrap();
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = self.body();
        for (stage, d) in &self.timings {
            writeln!(out, "time {stage} {:.3}", d.as_secs_f64()).unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cache::CacheKind;

    #[test]
    fn timings_stay_out_of_the_body() {
        let mut a = RunManifest::new("build");
        a.generator_digest = "sha256:00".into();
        a.caches.push(CacheEntry {
            kind: CacheKind::Quads,
            path: "quads.txt".into(),
            digest: "sha256:11".into(),
        });
        let mut b = a.clone();
        a.timings.push(("octagon".into(), Duration::from_millis(5)));
        b.timings.push(("octagon".into(), Duration::from_millis(900)));
        assert_eq!(a.body(), b.body());
        assert_ne!(a.to_text(), b.to_text());
        assert!(a.to_text().ends_with("time octagon 0.005\n"));
    }
}
