//! Plain-text campaign configuration: one `key = value` per line, `#`
//! starts a comment.
//!
//! ```text
//! campaign = conjecture_a
//! k = 2
//! n = 8
//! source = exhaustive
//! ```
//!
//! Recognised keys: `campaign`, `k`, `n`, `n_max`, `source`, `seed`,
//! `epsilon`, `budget`, `shards`, `extended`.

use crate::campaign::{CampaignId, CampaignSpec};
use crate::source::Source;
use crate::HarnessError;

pub fn parse_config(text: &str) -> Result<CampaignSpec, HarnessError> {
    let mut campaign: Option<CampaignId> = None;
    let mut k = None;
    let mut n = None;
    let mut n_max = None;
    let mut source = None;
    let mut seed = None;
    let mut epsilon = None;
    let mut budget = None;
    let mut shards = None;
    let mut extended = None;

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |why: &str| HarnessError::InvalidSpec(format!("config line {}: {why}", lineno + 1));
        let (key, value) = line.split_once('=').ok_or_else(|| bad("expected key = value"))?;
        let (key, value) = (key.trim(), value.trim());
        let int = || value.parse::<u64>().map_err(|_| bad("expected an unsigned integer"));
        match key {
            "campaign" => campaign = Some(value.parse()?),
            "k" => k = Some(int()? as usize),
            "n" | "n_min" => n = Some(int()? as usize),
            "n_max" => n_max = Some(int()? as usize),
            "source" => source = Some(value.parse::<Source>()?),
            "seed" => seed = Some(int()?),
            "epsilon" => epsilon = Some(value.parse::<f64>().map_err(|_| bad("expected a number"))?),
            "budget" => budget = Some(int()?),
            "shards" => shards = Some(int()? as usize),
            "extended" => extended = Some(value.parse::<bool>().map_err(|_| bad("expected true or false"))?),
            _ => return Err(bad(&format!("unknown key `{key}`"))),
        }
    }
    let missing = |what: &str| HarnessError::InvalidSpec(format!("config is missing `{what}`"));
    let campaign = campaign.ok_or_else(|| missing("campaign"))?;
    let k = k.ok_or_else(|| missing("k"))?;
    let n = n.ok_or_else(|| missing("n"))?;
    let mut spec = CampaignSpec::new(campaign, k, n);
    spec.n_max = n_max.unwrap_or(n);
    if let Some(s) = source {
        spec.source = s;
    }
    if let Some(seed) = seed {
        spec.source = spec.source.with_seed(seed);
    }
    if let Some(e) = epsilon {
        spec.epsilon = e;
    }
    if let Some(b) = budget {
        spec.budget = b;
    }
    if let Some(s) = shards {
        spec.shards = s;
    }
    if let Some(x) = extended {
        spec.extended = x;
    }
    spec.validate()?;
    Ok(spec)
}
