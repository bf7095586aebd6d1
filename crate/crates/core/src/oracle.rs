//! Brute-force rule enumeration for small databases.
//!
//! Shares nothing with the miner beyond the data model: every item is
//! assigned to the antecedent, the consequent or neither, and each finished
//! assignment is measured by scanning the raw sequences.

use std::collections::HashMap;

use thiserror::Error;

use crate::model::{Item, MinConfidence, QuantitativeSequenceDatabase, SequentialRule, Sid};
use crate::num::Utility;

pub const DEFAULT_ALPHABET_LIMIT: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("database has {items} distinct items, the oracle accepts at most {limit}")]
pub struct AlphabetTooLarge {
    pub items: usize,
    pub limit: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub alphabet_limit: usize,
    /// Largest antecedent and consequent size; `None` for no cap.
    pub max_items_per_side: Option<usize>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { alphabet_limit: DEFAULT_ALPHABET_LIMIT, max_items_per_side: None }
    }
}

/// Every rule meeting both thresholds, in canonical order.
pub fn enumerate_all_rules<U: Utility>(
    db: &QuantitativeSequenceDatabase<U>,
    minutil: U,
    minconf: MinConfidence,
    max_items_per_side: Option<usize>,
) -> Result<Vec<SequentialRule<U>>, AlphabetTooLarge> {
    let config = OracleConfig { max_items_per_side, ..OracleConfig::default() };
    Ok(all_rules(db, &config)?.into_iter().filter(|r| r.is_high_utility(minutil, minconf)).collect())
}

/// Every rule with at least one occurrence, in canonical order.
pub fn all_rules<U: Utility>(
    db: &QuantitativeSequenceDatabase<U>,
    config: &OracleConfig,
) -> Result<Vec<SequentialRule<U>>, AlphabetTooLarge> {
    let items = db.items();
    if items.len() > config.alphabet_limit {
        return Err(AlphabetTooLarge { items: items.len(), limit: config.alphabet_limit });
    }
    let eu = db.external_utilities();
    let sequences: Vec<Scanned<U>> = db
        .sequences()
        .iter()
        .map(|s| Scanned {
            sid: s.sid(),
            at: s
                .entries()
                .map(|(item, pos, q)| (item, (pos, q * eu.get(item).expect("validated database"))))
                .collect(),
        })
        .collect();
    let mut walk = Walk {
        items,
        sequences: &sequences,
        cap: config.max_items_per_side.unwrap_or(usize::MAX),
        antecedent: Vec::new(),
        consequent: Vec::new(),
        out: Vec::new(),
    };
    let all: Vec<Candidate> =
        (0..sequences.len()).map(|index| Candidate { index, last_antecedent: None, first_consequent: None }).collect();
    walk.assign(0, &all);
    walk.out.sort();
    Ok(walk.out)
}

struct Scanned<U> {
    sid: Sid,
    /// Itemset index and utility of each item.
    at: HashMap<Item, (usize, U)>,
}

#[derive(Clone, Copy)]
struct Candidate {
    index: usize,
    last_antecedent: Option<usize>,
    first_consequent: Option<usize>,
}

struct Walk<'a, U> {
    items: &'a [Item],
    sequences: &'a [Scanned<U>],
    cap: usize,
    antecedent: Vec<Item>,
    consequent: Vec<Item>,
    out: Vec<SequentialRule<U>>,
}

impl<U: Utility> Walk<'_, U> {
    /// `alive` holds the sequences where the partial rule still occurs.
    fn assign(&mut self, k: usize, alive: &[Candidate]) {
        if k == self.items.len() {
            self.record(alive);
            return;
        }
        let item = self.items[k];
        self.assign(k + 1, alive);

        if self.antecedent.len() < self.cap {
            let next: Vec<Candidate> = alive
                .iter()
                .filter_map(|c| {
                    let &(pos, _) = self.sequences[c.index].at.get(&item)?;
                    let last = c.last_antecedent.map_or(pos, |p| p.max(pos));
                    match c.first_consequent {
                        Some(f) if last >= f => None,
                        _ => Some(Candidate { last_antecedent: Some(last), ..*c }),
                    }
                })
                .collect();
            if !next.is_empty() {
                self.antecedent.push(item);
                self.assign(k + 1, &next);
                self.antecedent.pop();
            }
        }

        if self.consequent.len() < self.cap {
            let next: Vec<Candidate> = alive
                .iter()
                .filter_map(|c| {
                    let &(pos, _) = self.sequences[c.index].at.get(&item)?;
                    let first = c.first_consequent.map_or(pos, |p| p.min(pos));
                    match c.last_antecedent {
                        Some(l) if l >= first => None,
                        _ => Some(Candidate { first_consequent: Some(first), ..*c }),
                    }
                })
                .collect();
            if !next.is_empty() {
                self.consequent.push(item);
                self.assign(k + 1, &next);
                self.consequent.pop();
            }
        }
    }

    fn record(&mut self, alive: &[Candidate]) {
        if self.antecedent.is_empty() || self.consequent.is_empty() {
            return;
        }
        let mut utility = U::zero();
        for c in alive {
            let at = &self.sequences[c.index].at;
            for item in self.antecedent.iter().chain(&self.consequent) {
                utility = utility + at[item].1;
            }
        }
        let antecedent_support =
            self.sequences.iter().filter(|s| self.antecedent.iter().all(|i| s.at.contains_key(i))).count();
        let mut occurrence_sids: Vec<Sid> = alive.iter().map(|c| self.sequences[c.index].sid).collect();
        occurrence_sids.sort_unstable();
        self.out.push(SequentialRule {
            antecedent: self.antecedent.clone(),
            consequent: self.consequent.clone(),
            support_count: occurrence_sids.len(),
            occurrence_sids,
            utility,
            antecedent_support_count: antecedent_support,
        });
    }
}
