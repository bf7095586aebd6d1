//! High-utility sequential rule mining.

mod rsu;
mod search;
mod stats;
mod strategy;
mod tables;

use std::time::Instant;

use thiserror::Error;

pub use rsu::{Blocked, Decision, Finished, RsuTable, Survivor};
pub use stats::MiningStats;
pub use strategy::{Preset, StrategyConfig, StrategyParseError};
pub use tables::{
    classify_extension_items, leeu, leeu_in_sequence, lersu, reeu, reeu_in_sequence, rersu, Classification, LeElement,
    LeTable, ReElement, ReTable, RuleRef,
};

use crate::model::{Item, MinConfidence, QuantitativeSequenceDatabase, SequentialRule, Sid};
use crate::num::Utility;
use crate::preprocess::{compute_seu, eliminate_unpromising_items, ReucMap};
use search::{seeds_with_antecedent, Search, SeedScratch};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MineError {
    #[error("minutil must be positive")]
    ZeroMinUtil,
}

#[derive(Debug, Clone)]
pub struct MiningOutcome<U> {
    /// Rules in canonical order.
    pub rules: Vec<SequentialRule<U>>,
    pub stats: MiningStats,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A rule reached by the search, reported before any test on it.
#[derive(Debug, Clone, Copy)]
pub struct NodeVisit<'a, U> {
    pub antecedent: &'a [Item],
    pub consequent: &'a [Item],
    pub utility: U,
    pub support: usize,
    pub leeu: U,
    /// Absent for rules produced by left expansion, which are never grown
    /// on the right.
    pub reeu: Option<U>,
}

/// A reduced-sequence-utility bound computed for candidate `item` while
/// expanding `antecedent -> consequent` on `side`.
#[derive(Debug, Clone, Copy)]
pub struct BoundCheck<'a, U> {
    pub side: Side,
    pub antecedent: &'a [Item],
    pub consequent: &'a [Item],
    pub item: Item,
    pub bound: U,
    pub pruned: bool,
}

/// Hooks into the search, used by tests to inspect bounds as they are
/// computed.
pub trait SearchObserver<U> {
    fn node(&mut self, _visit: &NodeVisit<'_, U>) {}
    fn bound(&mut self, _check: &BoundCheck<'_, U>) {}
}

impl<U> SearchObserver<U> for () {}

/// Mines every rule with utility at least `minutil` and confidence at least
/// `minconf`. The result does not depend on `config`.
pub fn mine<U: Utility>(
    db: &QuantitativeSequenceDatabase<U>,
    minutil: U,
    minconf: MinConfidence,
    config: StrategyConfig,
) -> Result<MiningOutcome<U>, MineError> {
    mine_observed(db, minutil, minconf, config, &mut ())
}

pub fn mine_observed<U: Utility, O: SearchObserver<U>>(
    db: &QuantitativeSequenceDatabase<U>,
    minutil: U,
    minconf: MinConfidence,
    config: StrategyConfig,
    observer: &mut O,
) -> Result<MiningOutcome<U>, MineError> {
    if minutil.is_zero() {
        return Err(MineError::ZeroMinUtil);
    }
    let start = Instant::now();
    let mut stats = MiningStats { sequences: db.len(), items: db.items().len(), ..MiningStats::default() };

    let reduced;
    let nothing_to_remove = compute_seu(db).below(minutil).is_empty();
    let work = if (config.uip || config.reurp) && !nothing_to_remove {
        let e = eliminate_unpromising_items(db, minutil, config.reurp);
        stats.items_removed_uip = e.rounds.first().map_or(0, |r| r.removed.len());
        stats.items_removed_reurp = e.rounds.iter().skip(1).map(|r| r.removed.len()).sum();
        reduced = e.database;
        &reduced
    } else {
        db
    };

    let reucm = config.reucp.then(|| ReucMap::build_with_floor(work, minutil));
    stats.reucm_entries = reucm.as_ref().map_or(0, ReucMap::len);

    let mut search = Search::new(work, reucm, minutil, minconf, config, observer, stats);
    search.run();
    let mut stats = search.stats;
    stats.elapsed = start.elapsed();
    Ok(MiningOutcome { rules: search.rules, stats })
}

/// A 1*1 rule `antecedent -> consequent` with its SEU and measures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedRule<U> {
    pub antecedent: Item,
    pub consequent: Item,
    pub seu: U,
    pub utility: U,
    pub support: usize,
    pub antecedent_support: usize,
    pub occurrence_sids: Vec<Sid>,
    /// Dropped by the SEU test; measures are still filled in.
    pub eliminated: bool,
}

impl<U: Utility> SeedRule<U> {
    pub fn confidence(&self) -> f64 {
        self.support as f64 / self.antecedent_support as f64
    }
}

/// Every 1*1 rule occurring in `db`, ordered by antecedent then consequent.
/// With `usrp` the rules whose SEU is below `minutil` are marked eliminated.
pub fn generate_11_rules<U: Utility>(db: &QuantitativeSequenceDatabase<U>, minutil: U, usrp: bool) -> Vec<SeedRule<U>> {
    let mut scratch = SeedScratch::new(db.items().len());
    let mut out = Vec::new();
    for (rank, &a) in db.items().iter().enumerate() {
        let antecedent_support = db.postings(rank).len();
        for seed in seeds_with_antecedent(db, rank, &mut scratch, |_| true).0 {
            let table = seed.table;
            let mut occurrence_sids: Vec<Sid> = table.elements.iter().map(|e| e.sid).collect();
            occurrence_sids.sort_unstable();
            out.push(SeedRule {
                antecedent: a,
                consequent: seed.consequent,
                seu: seed.seu,
                utility: table.utility,
                support: table.support(),
                antecedent_support,
                occurrence_sids,
                eliminated: usrp && seed.seu < minutil,
            });
        }
    }
    out
}
