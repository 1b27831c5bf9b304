//! JSON result envelope, schema "vb-schema-1".

use serde::{Deserialize, Serialize};
use serde_json::Value;
use vbranch_core::exactla::Rational;
use vbranch_core::liealg::Weight;

use crate::config::RunConfig;

pub const SCHEMA: &str = "vb-schema-1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    pub delta_displacement: Vec<i64>,
    pub multiplicity: u64,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultEnvelope {
    pub schema: String,
    pub engine_version: String,
    pub command: String,
    pub config: RunConfig,
    pub pair: Option<String>,
    pub parabolic: Option<String>,
    pub closed: Option<bool>,
    pub compatible: Option<bool>,
    pub gk_dim: Option<usize>,
    pub summands: Vec<Summand>,
    pub assumptions: Vec<String>,
    /// Command-specific payload; rationals appear as strings.
    pub details: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl ResultEnvelope {
    pub fn new(config: &RunConfig) -> Self {
        ResultEnvelope {
            schema: SCHEMA.into(),
            engine_version: vbranch_core::ENGINE_VERSION.into(),
            command: config.command.to_string(),
            config: config.clone(),
            pair: config.pair.clone(),
            parabolic: config.parabolic.clone(),
            closed: None,
            compatible: None,
            gk_dim: None,
            summands: Vec::new(),
            assumptions: Vec::new(),
            details: Value::Object(Default::default()),
            timing_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("envelope serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn is_current(&self) -> bool {
        self.schema == SCHEMA && self.engine_version == vbranch_core::ENGINE_VERSION
    }

    pub fn detail(&self, key: &str) -> &Value {
        &self.details[key]
    }
}

pub fn rat(x: &Rational) -> String {
    x.to_string()
}

pub fn weight_json(w: &Weight) -> Value {
    Value::Array(w.0.iter().map(|x| Value::String(rat(x))).collect())
}

/// Inverse of [`weight_json`].
pub fn weight_from_json(v: &Value) -> Option<Weight> {
    v.as_array()?
        .iter()
        .map(|x| x.as_str()?.parse::<Rational>().ok())
        .collect::<Option<Vec<_>>>()
        .map(Weight)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{CommandKind, RawOptions};

    fn sample() -> ResultEnvelope {
        let o = RawOptions { pair: Some("so_down_so:m=4".into()), degree: Some(1), ..Default::default() };
        let c = RunConfig::resolve(CommandKind::Branch, &o).unwrap();
        let mut e = ResultEnvelope::new(&c);
        e.summands.push(Summand { delta_displacement: vec![-1, 0], multiplicity: 1, degree: 1 });
        e.details = serde_json::json!({ "base_offset": weight_json(&Weight(vec![Rational::new(1, 2), Rational::from_int(-3)])) });
        e
    }

    #[test]
    fn round_trip() {
        let e = sample();
        assert_eq!(ResultEnvelope::from_json(&e.to_json()).unwrap(), e);
        let mut t = e.clone();
        t.timing_ms = Some(7);
        assert_eq!(ResultEnvelope::from_json(&t.to_json()).unwrap(), t);
    }

    #[test]
    fn rationals_are_strings() {
        let e = sample();
        let js = e.to_json();
        assert!(js.contains("\"1/2\""));
        assert!(!js.contains("0.5"));
        let w = weight_from_json(e.detail("base_offset")).unwrap();
        assert_eq!(w.0[0], Rational::new(1, 2));
    }

    #[test]
    fn empty_table_serializes_empty_summands() {
        let c = RunConfig::resolve(CommandKind::MfScan, &RawOptions::default()).unwrap();
        let js = ResultEnvelope::new(&c).to_json();
        assert!(js.contains("\"summands\": []"));
        assert!(!js.contains("timing_ms"));
    }
}
