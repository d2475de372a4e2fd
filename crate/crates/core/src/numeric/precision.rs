use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Interval;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    /// Plain `f64` accumulation.
    Fast,
    /// Double-double accumulation; the default.
    #[default]
    Extended,
    /// Double-double with a rigorous error radius; verdicts are proofs.
    Interval,
}

impl Precision {
    pub fn as_str(self) -> &'static str {
        match self {
            Precision::Fast => "fast",
            Precision::Extended => "extended",
            Precision::Interval => "interval",
        }
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Precision {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "fast" => Ok(Precision::Fast),
            "extended" => Ok(Precision::Extended),
            "interval" => Ok(Precision::Interval),
            other => Err(format!("unknown precision `{other}` (expected fast, extended or interval)")),
        }
    }
}

/// How real-valued quantities are evaluated and how inequalities are judged.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrecisionPolicy {
    pub mode: Precision,
    /// Relative tolerance for non-rigorous verdicts.
    pub slack: f64,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy {
            mode: Precision::Extended,
            slack: 1e-12,
        }
    }
}

impl PrecisionPolicy {
    /// Panics unless `slack` is finite and positive.
    pub fn new(mode: Precision, slack: f64) -> Self {
        assert!(slack.is_finite() && slack > 0.0, "slack must be positive, got {slack}");
        PrecisionPolicy { mode, slack }
    }

    pub fn fast() -> Self {
        PrecisionPolicy::new(Precision::Fast, 1e-12)
    }

    pub fn extended() -> Self {
        PrecisionPolicy::new(Precision::Extended, 1e-12)
    }

    pub fn interval() -> Self {
        PrecisionPolicy::new(Precision::Interval, 1e-12)
    }

    pub fn is_rigorous(&self) -> bool {
        self.mode == Precision::Interval
    }

    /// Verdict for `lhs <= rhs` given the margin `rhs - lhs` and the scale
    /// of the bound it was measured against.
    pub fn accepts(&self, margin: Interval, scale: f64) -> bool {
        if self.is_rigorous() {
            margin.lo() >= 0.0
        } else {
            margin.mid() >= -self.slack * scale.abs()
        }
    }

    /// Single number summarising a margin: the guaranteed lower end in
    /// interval mode, the midpoint otherwise.
    pub fn margin_value(&self, margin: Interval) -> f64 {
        if self.is_rigorous() {
            margin.lo()
        } else {
            margin.mid()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slack_is_one_sided() {
        let p = PrecisionPolicy::extended();
        assert!(p.accepts(Interval::point(-1e-13), 1.0));
        assert!(!p.accepts(Interval::point(-1e-11), 1.0));
        let r = PrecisionPolicy::interval();
        assert!(!r.accepts(Interval::new(-1e-20, 1.0), 1.0));
    }

    #[test]
    fn parse_round_trip() {
        for m in [Precision::Fast, Precision::Extended, Precision::Interval] {
            assert_eq!(m.as_str().parse::<Precision>().unwrap(), m);
        }
        assert!("quad".parse::<Precision>().is_err());
    }

    #[test]
    #[should_panic]
    fn zero_slack_rejected() {
        PrecisionPolicy::new(Precision::Fast, 0.0);
    }
}
