//! Criterion and search settings resolved from three layers: built-in
//! defaults, an optional `key = value` config file, and command-line
//! flags. Flags win over the file, the file wins over the defaults.

use samplan::optimize::DEFAULT_SAMPLE_CEILING;
use samplan::{Result, TwoPointCriterion};

/// A partial assignment of the criterion and search settings; `None`
/// means "inherit from the layer below".
#[derive(Debug, Default, Clone, Copy, PartialEq)]
pub struct Overrides {
    pub aql: Option<f64>,
    pub aql_bound: Option<f64>,
    pub lq: Option<f64>,
    pub lq_bound: Option<f64>,
    pub ceiling: Option<u64>,
}

impl Overrides {
    /// Layers `upper` on top of `self`: set fields of `upper` win.
    fn overridden_by(self, upper: Overrides) -> Overrides {
        Overrides {
            aql: upper.aql.or(self.aql),
            aql_bound: upper.aql_bound.or(self.aql_bound),
            lq: upper.lq.or(self.lq),
            lq_bound: upper.lq_bound.or(self.lq_bound),
            ceiling: upper.ceiling.or(self.ceiling),
        }
    }
}

/// Parses the config-file format: UTF-8 lines of `key = value`, keys
/// `p_a`, `P_a`, `p_b`, `P_b`, `n_ceiling`; `#` starts a comment. Later
/// assignments to the same key win.
pub fn parse_file(text: &str) -> std::result::Result<Overrides, String> {
    let mut out = Overrides::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected `key = value`", idx + 1))?;
        let (key, value) = (key.trim(), value.trim());
        let bad = |what: &str| format!("line {}: `{value}` is not a valid {what}", idx + 1);
        match key {
            "p_a" => out.aql = Some(value.parse().map_err(|_| bad("number"))?),
            "P_a" => out.aql_bound = Some(value.parse().map_err(|_| bad("number"))?),
            "p_b" => out.lq = Some(value.parse().map_err(|_| bad("number"))?),
            "P_b" => out.lq_bound = Some(value.parse().map_err(|_| bad("number"))?),
            "n_ceiling" => out.ceiling = Some(value.parse().map_err(|_| bad("integer"))?),
            other => {
                return Err(format!(
                    "line {}: unknown key `{other}` (expected p_a, P_a, p_b, P_b, or n_ceiling)",
                    idx + 1
                ))
            }
        }
    }
    Ok(out)
}

/// Resolved settings every command runs under.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    pub criterion: TwoPointCriterion,
    pub ceiling: u64,
}

impl Settings {
    /// Whether the criterion is the built-in default (the shipped scheme
    /// and its lot comparisons are only canonical for that one).
    pub fn criterion_is_default(&self) -> bool {
        self.criterion == TwoPointCriterion::default()
    }
}

/// Applies `flags` over `file` over the built-in defaults and validates
/// the resulting criterion.
pub fn resolve(file: Overrides, flags: Overrides) -> Result<Settings> {
    let merged = file.overridden_by(flags);
    let defaults = TwoPointCriterion::default();
    let criterion = TwoPointCriterion::new(
        merged.aql.unwrap_or(defaults.aql()),
        merged.aql_bound.unwrap_or(defaults.aql_bound()),
        merged.lq.unwrap_or(defaults.lq()),
        merged.lq_bound.unwrap_or(defaults.lq_bound()),
    )?;
    Ok(Settings {
        criterion,
        ceiling: merged.ceiling.unwrap_or(DEFAULT_SAMPLE_CEILING),
    })
}
