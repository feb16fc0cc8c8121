//! Settings merged from defaults, an optional `key=value` file and flags.

use std::path::Path;

use nullify_core::engine::SearchConfig;
use nullify_core::polynomials::DEFAULT_HOMFLY_BUDGET;

use crate::failure::{usage, Outcome};
use crate::Global;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Debug)]
pub struct Settings {
    pub format: Format,
    pub seed: u64,
    pub jobs: usize,
    pub search: SearchConfig,
    pub homfly_budget: usize,
    pub cache: bool,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            format: Format::Json,
            seed: 0,
            jobs: 1,
            search: SearchConfig::default(),
            homfly_budget: DEFAULT_HOMFLY_BUDGET,
            cache: false,
        }
    }
}

fn positive(key: &str, v: &str) -> Outcome<usize> {
    match v.trim().parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => usage(format!("{key} must be a positive integer, got {v:?}")),
    }
}

fn boolean(key: &str, v: &str) -> Outcome<bool> {
    match v.trim() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => usage(format!("{key} must be true or false, got {v:?}")),
    }
}

impl Settings {
    fn set(&mut self, key: &str, v: &str) -> Outcome<()> {
        match key {
            "format" => {
                self.format = <Format as clap::ValueEnum>::from_str(v.trim(), true)
                    .or_else(|e| usage(format!("format: {e}")))?
            }
            "seed" => {
                self.seed = v
                    .trim()
                    .parse()
                    .or_else(|_| usage(format!("seed must be an integer, got {v:?}")))?
            }
            "jobs" => self.jobs = positive(key, v)?,
            "depth" => self.search.depth = positive(key, v)?,
            "limit" => self.search.crossing_limit = positive(key, v)?,
            "r3_depth" => {
                self.search.r3_depth = v
                    .trim()
                    .parse()
                    .or_else(|_| usage(format!("r3_depth must be an integer, got {v:?}")))?
            }
            "budget" => self.homfly_budget = positive(key, v)?,
            "r2_widening" => self.search.r2_widening = boolean(key, v)?,
            "cache" => self.cache = boolean(key, v)?,
            _ => return usage(format!("unknown config key {key:?}")),
        }
        Ok(())
    }

    pub fn read_file(&mut self, path: &Path) -> Outcome<()> {
        let text = std::fs::read_to_string(path)
            .or_else(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return usage(format!("{}:{}: expected key=value", path.display(), n + 1));
            };
            self.set(k.trim(), v)?;
        }
        Ok(())
    }

    pub fn resolve(g: &Global) -> Outcome<Settings> {
        let mut s = Settings::default();
        let path = g
            .config
            .clone()
            .or_else(|| std::env::var_os("NULLIFY_CONFIG").map(Into::into));
        if let Some(p) = path {
            s.read_file(&p)?;
        }
        if let Some(f) = g.format {
            s.format = f;
        }
        if let Some(x) = g.seed {
            s.seed = x;
        }
        let flags = [
            ("jobs", g.jobs),
            ("depth", g.depth),
            ("limit", g.limit),
            ("budget", g.budget),
        ];
        for (k, v) in flags {
            if let Some(v) = v {
                s.set(k, &v.to_string())?;
            }
        }
        if let Some(r) = g.r3_depth {
            s.search.r3_depth = r;
        }
        if g.no_r2 {
            s.search.r2_widening = false;
        }
        if g.cache {
            s.cache = true;
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nullify_core::diagram::moves::DEFAULT_R3_DEPTH;
    use nullify_core::engine::{DEFAULT_CROSSING_LIMIT, DEFAULT_GENERAL_DEPTH};

    #[test]
    fn defaults_match_the_engines() {
        let s = Settings::default();
        assert_eq!(s.search.crossing_limit, DEFAULT_CROSSING_LIMIT);
        assert_eq!(s.search.depth, DEFAULT_GENERAL_DEPTH);
        assert_eq!(s.search.r3_depth, DEFAULT_R3_DEPTH);
    }

    #[test]
    fn keys_are_checked() {
        let mut s = Settings::default();
        s.set("depth", "3").unwrap();
        assert_eq!(s.search.depth, 3);
        assert!(s.set("depth", "0").is_err());
        assert!(s.set("colour", "red").is_err());
        s.set("format", "csv").unwrap();
        assert_eq!(s.format, Format::Csv);
    }
}
