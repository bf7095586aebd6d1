//! Item-level estimates computed before the search: sequence estimated
//! utility (SEU), unpromising-item removal and the ordered co-occurrence map.

use std::collections::{BTreeMap, HashSet};

use rustc_hash::FxHashMap;

use crate::model::{Item, QuantitativeSequenceDatabase};
use crate::num::Utility;

/// SEU of each item: the summed utility of the sequences containing it.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SeuTable<U> {
    entries: BTreeMap<Item, U>,
}

impl<U: Utility> SeuTable<U> {
    pub fn get(&self, item: Item) -> Option<U> {
        self.entries.get(&item).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Item, U)> + '_ {
        self.entries.iter().map(|(&i, &u)| (i, u))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Items whose SEU is below `minutil`, ascending.
    pub fn below(&self, minutil: U) -> Vec<Item> {
        self.iter().filter(|&(_, seu)| seu < minutil).map(|(i, _)| i).collect()
    }

    pub fn min_value(&self) -> Option<U> {
        self.entries.values().copied().min()
    }
}

pub fn compute_seu<U: Utility>(db: &QuantitativeSequenceDatabase<U>) -> SeuTable<U> {
    let mut acc = vec![U::zero(); db.items().len()];
    for p in db.profiles() {
        for e in &p.flat {
            acc[e.rank as usize] = acc[e.rank as usize] + p.su;
        }
    }
    SeuTable { entries: db.items().iter().copied().zip(acc).collect() }
}

/// One removal pass: the SEU table it was based on and what it removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationRound<U> {
    pub seu: SeuTable<U>,
    pub removed: Vec<Item>,
}

#[derive(Debug, Clone)]
pub struct Elimination<U> {
    pub database: QuantitativeSequenceDatabase<U>,
    /// Rounds that removed at least one item, in order.
    pub rounds: Vec<EliminationRound<U>>,
    /// SEU of the reduced database.
    pub final_seu: SeuTable<U>,
}

impl<U> Elimination<U> {
    pub fn removed_items(&self) -> impl Iterator<Item = Item> + '_ {
        self.rounds.iter().flat_map(|r| r.removed.iter().copied())
    }
}

/// Removes items whose SEU is below `minutil`. With `iterative` the SEU is
/// recomputed and removal repeated until every remaining item qualifies;
/// otherwise a single pass is made. Emptied sequences are dropped.
pub fn eliminate_unpromising_items<U: Utility>(
    db: &QuantitativeSequenceDatabase<U>,
    minutil: U,
    iterative: bool,
) -> Elimination<U> {
    let mut database = db.clone();
    let mut rounds = Vec::new();
    let mut seu = compute_seu(&database);
    loop {
        let removed = seu.below(minutil);
        if removed.is_empty() {
            break;
        }
        let drop: HashSet<Item> = removed.iter().copied().collect();
        database = database.without_items(&drop);
        rounds.push(EliminationRound { seu, removed });
        seu = compute_seu(&database);
        if !iterative {
            break;
        }
    }
    Elimination { database, rounds, final_seu: seu }
}

/// Ordered co-occurrence map. Entry `(a, b)` sums the utility of sequences
/// in which `a` occurs in an itemset before `b`'s or in the same itemset.
#[derive(Debug, Clone, Default)]
pub struct ReucMap<U> {
    entries: FxHashMap<(Item, Item), U>,
    floor: U,
}

impl<U: Utility> ReucMap<U> {
    /// Value for `(a, b)`; zero when absent. Values under the build floor
    /// also read as zero.
    pub fn get(&self, a: Item, b: Item) -> U {
        self.entries.get(&(a, b)).copied().unwrap_or_else(U::zero)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Smallest value kept at build time.
    pub fn floor(&self) -> U {
        self.floor
    }

    /// Exact map with every non-zero pair.
    pub fn build(db: &QuantitativeSequenceDatabase<U>) -> Self {
        Self::build_with_floor(db, U::one())
    }

    /// Keeps only pairs whose value is at least `floor`. The test
    /// `get(a, b) < floor` answers exactly as it would on the full map.
    pub fn build_with_floor(db: &QuantitativeSequenceDatabase<U>, floor: U) -> Self {
        let floor = floor.max(U::one());
        let n = db.items().len();
        let mut acc = vec![U::zero(); n];
        let mut touched: Vec<u32> = Vec::new();
        let mut entries = FxHashMap::default();
        let profiles = db.profiles();
        for (rank, &a) in db.items().iter().enumerate() {
            for post in db.postings(rank) {
                let p = &profiles[post.slot as usize];
                for e in p.range(post.itemset as usize, p.len_itemsets()) {
                    if e.item == a {
                        continue;
                    }
                    let k = e.rank as usize;
                    if acc[k].is_zero() {
                        touched.push(e.rank);
                    }
                    acc[k] = acc[k] + p.su;
                }
            }
            for &k in &touched {
                let v = std::mem::replace(&mut acc[k as usize], U::zero());
                if v >= floor {
                    entries.insert((a, db.items()[k as usize]), v);
                }
            }
            touched.clear();
        }
        Self { entries, floor }
    }
}

/// Shorthand for [`ReucMap::build`].
pub fn build_reucm<U: Utility>(db: &QuantitativeSequenceDatabase<U>) -> ReucMap<U> {
    ReucMap::build(db)
}
