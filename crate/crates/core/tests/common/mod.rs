#![allow(dead_code)]

use std::collections::HashMap;

use husr_core::ingest::parse_database;
use husr_core::miner::{mine_observed, BoundCheck, NodeVisit, SearchObserver, Side};
use husr_core::oracle::{all_rules, OracleConfig};
use husr_core::preprocess::eliminate_unpromising_items;
use husr_core::{Database, ExternalUtilityTable, Item, MinConfidence, Rule, Sequence, Sid, StrategyConfig};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub const EXAMPLE_SEQUENCES: &str = "\
1:1 -1 2:2 -1 3:1 7:1 -1 -2
1:1 -1 3:1 -1 5:1 7:1 -1 -2
2:1 -1 4:1 -1 7:2 -1 -2
5:1 -1 6:2 -1 -2
";
pub const EXAMPLE_UTILITIES: &str = "1 2\n2 1\n3 4\n4 7\n5 1\n6 2\n7 1\n";

pub fn example_db() -> Database {
    parse_database(EXAMPLE_SEQUENCES, EXAMPLE_UTILITIES).unwrap()
}

/// Letters of the example alphabet: a = 1 through g = 7.
pub fn items(letters: &str) -> Vec<Item> {
    letters.chars().map(|c| Item::new(c as u32 - 'a' as u32 + 1).unwrap()).collect()
}

pub fn letters(items: &[Item]) -> String {
    items.iter().map(|i| char::from(b'a' + i.id() as u8 - 1)).collect()
}

pub fn conf(v: f64) -> MinConfidence {
    MinConfidence::new(v).unwrap()
}

/// Small random database: at most 50 sequences over at most 12 items, at
/// most 8 itemsets per sequence, quantities up to 5, utilities up to 9.
pub fn random_db(seed: u64) -> Database {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alphabet: u32 = rng.random_range(2..=12);
    let eu = ExternalUtilityTable::new(
        (1..=alphabet).map(|i| (Item::new(i).unwrap(), rng.random_range(1..=9u64))).collect::<Vec<_>>(),
    )
    .unwrap();
    let n = rng.random_range(1..=50u32);
    let mut sequences = Vec::new();
    for sid in 1..=n {
        let mut pool: Vec<u32> = (1..=alphabet).collect();
        pool.shuffle(&mut rng);
        let take = rng.random_range(1..=pool.len().min(10));
        pool.truncate(take);
        let itemsets = rng.random_range(1..=take.min(8));
        // split the drawn items into `itemsets` non-empty groups
        let mut cuts: Vec<usize> = (1..take).collect();
        cuts.shuffle(&mut rng);
        cuts.truncate(itemsets - 1);
        cuts.sort_unstable();
        let mut groups = Vec::new();
        let mut start = 0;
        for cut in cuts.into_iter().chain([take]) {
            groups
                .push(pool[start..cut].iter().map(|&i| (Item::new(i).unwrap(), rng.random_range(1..=5u64))).collect());
            start = cut;
        }
        sequences.push(Sequence::new(Sid(sid), groups).unwrap());
    }
    Database::new(sequences, eu).unwrap()
}

/// Three threshold settings scaled to the database.
pub fn settings(db: &Database) -> [(u64, MinConfidence); 3] {
    let total = db.total_utility();
    [((total / 40).max(1), MinConfidence::ZERO), ((total / 15).max(1), conf(0.3)), ((total / 6).max(1), conf(0.6))]
}

/// Antecedent, consequent, utility, LEEU and REEU of a visited node.
type Visit = (Vec<Item>, Vec<Item>, u64, u64, Option<u64>);
/// Side, parent antecedent, parent consequent, candidate item and bound.
type Bound = (Side, Vec<Item>, Vec<Item>, Item, u64);

#[derive(Default)]
struct Recorder {
    nodes: Vec<Visit>,
    bounds: Vec<Bound>,
}

impl SearchObserver<u64> for Recorder {
    fn node(&mut self, v: &NodeVisit<'_, u64>) {
        self.nodes.push((v.antecedent.to_vec(), v.consequent.to_vec(), v.utility, v.leeu, v.reeu));
    }

    fn bound(&mut self, c: &BoundCheck<'_, u64>) {
        self.bounds.push((c.side, c.antecedent.to_vec(), c.consequent.to_vec(), c.item, c.bound));
    }
}

/// Mines with an observer and checks every reported node and bound against
/// brute-force utilities. Returns one line per violation.
///
/// LEEU must cover every rule grown on the left only, REEU every rule whose
/// consequent grew. RSU values must cover the candidate they were computed
/// for.
pub fn bound_violations(db: &Database, minutil: u64, minconf: MinConfidence, cfg: StrategyConfig) -> Vec<String> {
    let work =
        if cfg.uip || cfg.reurp { eliminate_unpromising_items(db, minutil, cfg.reurp).database } else { db.clone() };
    let truth = all_rules(&work, &OracleConfig::default()).unwrap();
    let by_rule: HashMap<(&[Item], &[Item]), u64> =
        truth.iter().map(|r| ((r.antecedent.as_slice(), r.consequent.as_slice()), r.utility)).collect();
    let utility = |x: &[Item], y: &[Item]| by_rule.get(&(x, y)).copied().unwrap_or(0);
    let mut rec = Recorder::default();
    mine_observed(db, minutil, minconf, cfg, &mut rec).unwrap();
    let mut violations = Vec::new();
    for (x, y, u, leeu, reeu) in &rec.nodes {
        if *u != utility(x, y) {
            violations.push(format!("{x:?}->{y:?} visited with utility {u}, true {}", utility(x, y)));
        }
        let covers =
            |r: &Rule| x.iter().all(|i| r.antecedent.contains(i)) && y.iter().all(|i| r.consequent.contains(i));
        // only rules above a bound can violate it
        for r in truth.iter().filter(|r| r.utility > *leeu) {
            if r.consequent == *y && r.antecedent.len() > x.len() && covers(r) {
                violations.push(format!("LEEU {leeu} of {x:?}->{y:?} below {r:?}"));
            }
        }
        if let Some(reeu) = reeu {
            for r in truth.iter().filter(|r| r.utility > *reeu) {
                let grown = r.antecedent.len() + r.consequent.len() > x.len() + y.len();
                if grown && r.consequent.len() > y.len() && covers(r) {
                    violations.push(format!("REEU {reeu} of {x:?}->{y:?} below {r:?}"));
                }
            }
        }
    }
    for (side, x, y, item, bound) in &rec.bounds {
        let (mut x, mut y) = (x.clone(), y.clone());
        match side {
            Side::Left => x.push(*item),
            Side::Right => y.push(*item),
        }
        let u = utility(&x, &y);
        if u > *bound {
            violations.push(format!("{side:?} bound {bound} for {x:?}->{y:?} below {u}"));
        }
    }
    violations
}
