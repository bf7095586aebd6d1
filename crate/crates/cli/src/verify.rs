use std::cmp::Ordering;
use std::fmt;

use husr_core::ingest::format_rule;
use husr_core::oracle::{enumerate_all_rules, AlphabetTooLarge};
use husr_core::{Database, MinConfidence, MineError, Preset, Rule, StrategyConfig};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Guard(#[from] AlphabetTooLarge),
    #[error(transparent)]
    Mine(#[from] MineError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyOutcome {
    /// Every preset matched the oracle, which found `rules` rules.
    Identical {
        rules: usize,
    },
    Diverged(Divergence),
}

/// First disagreement between a preset and the oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divergence {
    pub variant: &'static str,
    /// The oracle's rule, absent if the miner reported an extra rule.
    pub expected: Option<Rule>,
    /// The miner's rule, absent if the miner missed one.
    pub found: Option<Rule>,
}

impl fmt::Display for Divergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.expected, &self.found) {
            (Some(e), None) => write!(f, "{}: missing rule {}", self.variant, format_rule(e)),
            (None, Some(g)) => write!(f, "{}: unexpected rule {}", self.variant, format_rule(g)),
            (Some(e), Some(g)) => {
                write!(f, "{}: rule {} reported as {}", self.variant, format_rule(e), format_rule(g))
            }
            (None, None) => write!(f, "{}: no divergence", self.variant),
        }
    }
}

fn first_difference(expected: &[Rule], found: &[Rule]) -> Option<(Option<Rule>, Option<Rule>)> {
    let key = |r: &Rule| (r.antecedent.clone(), r.consequent.clone());
    let (mut i, mut j) = (0, 0);
    loop {
        match (expected.get(i), found.get(j)) {
            (None, None) => return None,
            (Some(e), None) => return Some((Some(e.clone()), None)),
            (None, Some(g)) => return Some((None, Some(g.clone()))),
            (Some(e), Some(g)) => match key(e).cmp(&key(g)) {
                Ordering::Less => return Some((Some(e.clone()), None)),
                Ordering::Greater => return Some((None, Some(g.clone()))),
                Ordering::Equal if e != g => return Some((Some(e.clone()), Some(g.clone()))),
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            },
        }
    }
}

/// Runs `miner` under every preset and compares each result with the
/// oracle. `miner` must return rules in canonical order.
pub fn verify_with<F>(
    db: &Database,
    minutil: u64,
    minconf: MinConfidence,
    mut miner: F,
) -> Result<VerifyOutcome, VerifyError>
where
    F: FnMut(&Database, u64, MinConfidence, StrategyConfig) -> Result<Vec<Rule>, MineError>,
{
    let expected = enumerate_all_rules(db, minutil, minconf, None)?;
    for preset in Preset::ALL {
        let found = miner(db, minutil, minconf, preset.config())?;
        if let Some((expected, found)) = first_difference(&expected, &found) {
            return Ok(VerifyOutcome::Diverged(Divergence { variant: preset.name(), expected, found }));
        }
    }
    Ok(VerifyOutcome::Identical { rules: expected.len() })
}
