//! Capacity caps, overridable through the `SHADOWLAB_CAP` variable.
//!
//! The variable is either a single number applied to every cap or a
//! comma-separated list of `key=value` pairs with keys `states`, `tuples`,
//! `universe` and `depth`.

use shadowlab::entropy::DEFAULT_TUPLE_CAP;
use shadowlab::forbidding::{MAX_EXHAUSTIVE_D, MAX_EXHAUSTIVE_UNIVERSE};
use shadowlab::search::DEFAULT_STATE_BUDGET;

pub const ENV_VAR: &str = "SHADOWLAB_CAP";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Raw state-space size allowed for exhaustive searches.
    pub states: u128,
    /// Ordered tuples materialized by the key-inequality check.
    pub tuples: u128,
    /// Universe size for exhaustive forbidding-axiom verification.
    pub universe: usize,
    /// Largest `d` for exhaustive forbidding-axiom verification.
    pub depth: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            states: DEFAULT_STATE_BUDGET,
            tuples: DEFAULT_TUPLE_CAP,
            universe: MAX_EXHAUSTIVE_UNIVERSE,
            depth: MAX_EXHAUSTIVE_D,
        }
    }
}

impl Caps {
    pub fn parse(spec: Option<&str>) -> Result<Self, String> {
        let mut caps = Caps::default();
        let Some(spec) = spec.map(str::trim).filter(|s| !s.is_empty()) else {
            return Ok(caps);
        };
        let number = |s: &str| {
            s.trim()
                .replace('_', "")
                .parse::<u128>()
                .map_err(|_| format!("{ENV_VAR}: `{s}` is not a nonnegative integer"))
        };
        if !spec.contains('=') {
            let n = number(spec)?;
            let small = usize::try_from(n).unwrap_or(usize::MAX);
            return Ok(Caps {
                states: n,
                tuples: n,
                universe: small,
                depth: small,
            });
        }
        for item in spec.split(',') {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| format!("{ENV_VAR}: expected key=value, got `{item}`"))?;
            let n = number(value)?;
            match key.trim() {
                "states" => caps.states = n,
                "tuples" => caps.tuples = n,
                "universe" => caps.universe = usize::try_from(n).unwrap_or(usize::MAX),
                "depth" => caps.depth = usize::try_from(n).unwrap_or(usize::MAX),
                other => return Err(format!("{ENV_VAR}: unknown cap `{other}`")),
            }
        }
        Ok(caps)
    }
}
