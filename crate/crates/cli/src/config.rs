//! Run configuration: CLI flags merged over an optional `key = value` file.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use vbranch_core::pairs::PairSpec;
use vbranch_core::parabolic::ParabolicChoice;

pub const MAX_DEGREE: usize = 12;
pub const MAX_LEVEL: usize = 12;
pub const MAX_RANK: usize = 6;
pub const DEFAULT_DEGREE: usize = 6;
pub const DEFAULT_LEVEL: usize = 4;
pub const DEFAULT_MAX_RANK: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Pairs,
    Analyze,
    Census,
    Branch,
    Verify,
    MfScan,
}

impl fmt::Display for CommandKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CommandKind::Pairs => "pairs",
            CommandKind::Analyze => "analyze",
            CommandKind::Census => "census",
            CommandKind::Branch => "branch",
            CommandKind::Verify => "verify",
            CommandKind::MfScan => "mf-scan",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Invalid user input; maps to exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

/// Flags as given on the command line; every field may also come from the
/// config file.
#[derive(Clone, Debug, Default)]
pub struct RawOptions {
    pub pair: Option<String>,
    pub parabolic: Option<String>,
    pub lambda: Option<String>,
    pub degree: Option<usize>,
    pub level: Option<usize>,
    pub seed: Option<u64>,
    pub law: Option<String>,
    pub n: Option<usize>,
    pub l: Option<usize>,
    pub max_rank: Option<usize>,
    pub format: Option<Format>,
    pub cache_dir: Option<String>,
}

/// Everything that determines the result. Its JSON encoding is the cache key
/// preimage.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: CommandKind,
    pub pair: Option<String>,
    pub parabolic: Option<String>,
    pub lambda: String,
    pub degree: usize,
    pub level: usize,
    pub seed: u64,
    pub law: Option<String>,
    pub n: Option<usize>,
    pub l: Option<usize>,
    pub max_rank: usize,
}

pub fn parse_config_file(path: &Path) -> anyhow::Result<RawOptions> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
    parse_config_text(&text)
}

pub fn parse_config_text(text: &str) -> anyhow::Result<RawOptions> {
    let mut kv = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| usage(format!("config line {}: expected key = value", i + 1)))?;
        kv.insert(k.trim().replace('-', "_"), v.trim().to_string());
    }
    let num = |k: &str, v: &str| -> anyhow::Result<usize> {
        v.parse().map_err(|_| usage(format!("config key {k}: not a non-negative integer: {v:?}")))
    };
    let mut o = RawOptions::default();
    for (k, v) in kv {
        match k.as_str() {
            "pair" => o.pair = Some(v),
            "parabolic" => o.parabolic = Some(v),
            "lambda" => o.lambda = Some(v),
            "degree" => o.degree = Some(num(&k, &v)?),
            "level" => o.level = Some(num(&k, &v)?),
            "seed" => o.seed = Some(v.parse().map_err(|_| usage(format!("config key seed: {v:?}")))?),
            "law" => o.law = Some(v),
            "n" => o.n = Some(num(&k, &v)?),
            "l" => o.l = Some(num(&k, &v)?),
            "max_rank" => o.max_rank = Some(num(&k, &v)?),
            "format" => {
                o.format = Some(match v.as_str() {
                    "text" => Format::Text,
                    "json" => Format::Json,
                    _ => return Err(usage(format!("config key format: {v:?}"))),
                })
            }
            "cache_dir" => o.cache_dir = Some(v),
            _ => return Err(usage(format!("unknown config key {k:?}"))),
        }
    }
    Ok(o)
}

impl RawOptions {
    /// Fills unset fields from `other`.
    pub fn or(self, other: RawOptions) -> RawOptions {
        RawOptions {
            pair: self.pair.or(other.pair),
            parabolic: self.parabolic.or(other.parabolic),
            lambda: self.lambda.or(other.lambda),
            degree: self.degree.or(other.degree),
            level: self.level.or(other.level),
            seed: self.seed.or(other.seed),
            law: self.law.or(other.law),
            n: self.n.or(other.n),
            l: self.l.or(other.l),
            max_rank: self.max_rank.or(other.max_rank),
            format: self.format.or(other.format),
            cache_dir: self.cache_dir.or(other.cache_dir),
        }
    }
}

pub fn canonical_pair(id: &str) -> anyhow::Result<String> {
    match id.parse::<PairSpec>() {
        Ok(spec) => {
            spec.validate().map_err(|e| usage(e.to_string()))?;
            Ok(spec.to_string())
        }
        Err(e) => {
            let known: Vec<String> = PairSpec::catalog(3).iter().map(|s| s.to_string()).collect();
            Err(usage(format!(
                "{e}\nknown pair families: {}\nexamples: {}",
                PairSpec::catalog_ids(),
                known.join(", ")
            )))
        }
    }
}

impl RunConfig {
    pub fn resolve(command: CommandKind, o: &RawOptions) -> anyhow::Result<RunConfig> {
        let needs_pair = matches!(command, CommandKind::Analyze | CommandKind::Census | CommandKind::Branch)
            || (command == CommandKind::Verify && o.law.is_none());
        let pair = match (&o.pair, needs_pair) {
            (Some(p), true) => Some(canonical_pair(p)?),
            (None, true) => return Err(usage(format!("{command} needs --pair"))),
            _ => None,
        };
        let parabolic = if needs_pair {
            let p = o.parabolic.clone().unwrap_or_else(|| "borel".into());
            let c: ParabolicChoice = p.parse().map_err(|e: vbranch_core::Error| usage(e.to_string()))?;
            Some(c.to_string())
        } else {
            None
        };
        let degree = o.degree.unwrap_or(DEFAULT_DEGREE);
        if degree > MAX_DEGREE {
            return Err(usage(format!("degree {degree} exceeds the cap {MAX_DEGREE}")));
        }
        let level = o.level.unwrap_or(DEFAULT_LEVEL);
        if level > MAX_LEVEL {
            return Err(usage(format!("level {level} exceeds the cap {MAX_LEVEL}")));
        }
        let max_rank = o.max_rank.unwrap_or(DEFAULT_MAX_RANK);
        if max_rank > MAX_RANK {
            return Err(usage(format!("max-rank {max_rank} exceeds the cap {MAX_RANK}")));
        }
        let law = match (&o.law, command) {
            (Some(l), CommandKind::Verify) => {
                let f: vbranch_core::branching::LawFamily = l.parse().map_err(|e: vbranch_core::Error| usage(e.to_string()))?;
                Some(f.to_string())
            }
            (Some(_), _) => return Err(usage("--law is only used by verify")),
            (None, _) => None,
        };
        let (n, l) = if law.is_some() {
            let n = o.n.ok_or_else(|| usage("--law needs --n"))?;
            let l = if law.as_deref() == Some("AA") { Some(o.l.ok_or_else(|| usage("--law AA needs --l"))?) } else { None };
            (Some(n), l)
        } else {
            (None, None)
        };
        let lambda = match command {
            CommandKind::Branch | CommandKind::Verify if law.is_none() => {
                o.lambda.clone().unwrap_or_else(|| "generic".into()).split_whitespace().collect::<String>()
            }
            _ => "generic".into(),
        };
        let uses_degree = matches!(command, CommandKind::Branch) || (command == CommandKind::Verify && law.is_some());
        let uses_level = command == CommandKind::Verify && law.is_none();
        let uses_rank = matches!(command, CommandKind::Pairs | CommandKind::MfScan);
        Ok(RunConfig {
            command,
            pair,
            parabolic,
            lambda,
            degree: if uses_degree { degree } else { 0 },
            level: if uses_level { level } else { 0 },
            seed: if command == CommandKind::Analyze { o.seed.unwrap_or(0) } else { 0 },
            law,
            n,
            l,
            max_rank: if uses_rank { max_rank } else { 0 },
        })
    }

    /// Stable byte encoding used for hashing.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        serde_json::to_vec(self).expect("config serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_file_parsing() {
        let o = parse_config_text("# run\npair = so_down_so:m=4\ndegree=2\n\nformat = json  # trailing\n").unwrap();
        assert_eq!(o.pair.as_deref(), Some("so_down_so:m=4"));
        assert_eq!(o.degree, Some(2));
        assert_eq!(o.format, Some(Format::Json));
        assert!(parse_config_text("bogus = 1").is_err());
        assert!(parse_config_text("degree").is_err());
    }

    #[test]
    fn flags_override_file() {
        let file = parse_config_text("pair = so_down_so:m=4\ndegree = 2").unwrap();
        let cli = RawOptions { degree: Some(3), ..Default::default() };
        let c = RunConfig::resolve(CommandKind::Branch, &cli.or(file)).unwrap();
        assert_eq!(c.degree, 3);
        assert_eq!(c.pair.as_deref(), Some("so_down_so:m=4"));
        assert_eq!(c.parabolic.as_deref(), Some("borel"));
    }

    #[test]
    fn canonicalization_ignores_unused_fields() {
        let a = RawOptions { pair: Some("sl_s_glgl:q=2,p=2".into()), degree: Some(9), ..Default::default() };
        let b = RawOptions { pair: Some("sl_s_glgl:p=2,q=2".into()), ..Default::default() };
        let ca = RunConfig::resolve(CommandKind::Census, &a).unwrap();
        let cb = RunConfig::resolve(CommandKind::Census, &b).unwrap();
        assert_eq!(ca.canonical_bytes(), cb.canonical_bytes());
    }

    #[test]
    fn caps_and_missing_pair() {
        let o = RawOptions { pair: Some("so_down_so:m=4".into()), degree: Some(99), ..Default::default() };
        assert!(RunConfig::resolve(CommandKind::Branch, &o).is_err());
        assert!(RunConfig::resolve(CommandKind::Census, &RawOptions::default()).is_err());
        let e = RunConfig::resolve(CommandKind::Census, &RawOptions { pair: Some("nope".into()), ..Default::default() })
            .unwrap_err();
        assert!(e.to_string().contains("sl_s_glgl"));
    }
}
