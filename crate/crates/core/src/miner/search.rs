//! Depth-first rule growth.
//!
//! Every 1*1 rule `a -> b` is a root. A rule grows its consequent by right
//! expansion and its antecedent by left expansion; once a rule has been
//! grown on the left it is never grown on the right again, and an added
//! item must exceed every item already on its side. Together these make
//! each rule reachable along exactly one path.

use std::cell::OnceCell;
use std::rc::Rc;

use crate::miner::rsu::{Decision, RsuTable};
use crate::miner::tables::{LeTable, ReElement, ReTable};
use crate::miner::{BoundCheck, MiningStats, NodeVisit, SearchObserver, Side, StrategyConfig};
use crate::model::{Item, MinConfidence, Occurrence, QuantitativeSequenceDatabase, SequentialRule};
use crate::num::Utility;
use crate::preprocess::ReucMap;

struct Node {
    antecedent: Vec<Item>,
    consequent: Vec<Item>,
    antecedent_slots: AntecedentSlots,
}

/// Slots of sequences containing every antecedent item. A left child's set
/// is its parent's narrowed by the new item's postings, computed on demand.
struct AntecedentSlots {
    known: OnceCell<Rc<Vec<u32>>>,
    narrow: Option<(Rc<Vec<u32>>, usize)>,
}

impl AntecedentSlots {
    fn known(slots: Rc<Vec<u32>>) -> Self {
        Self { known: OnceCell::from(slots), narrow: None }
    }

    fn narrowed(parent: Rc<Vec<u32>>, rank: usize) -> Self {
        Self { known: OnceCell::new(), narrow: Some((parent, rank)) }
    }

    fn get<U: Utility>(&self, db: &QuantitativeSequenceDatabase<U>) -> &Rc<Vec<u32>> {
        self.known.get_or_init(|| {
            let (parent, rank) = self.narrow.as_ref().expect("either known or narrowed");
            Rc::new(intersect(parent, db.postings(*rank).iter().map(|p| p.slot)))
        })
    }
}

/// A 1*1 rule kept for expansion.
pub(crate) struct RawSeed<U> {
    pub consequent: Item,
    pub seu: U,
    pub table: ReTable<U>,
}

/// Scratch buffers sized to the alphabet, reused across antecedents.
pub(crate) struct SeedScratch<U> {
    acc: Vec<U>,
    index: Vec<u32>,
    /// Bitset over ranks with a non-zero accumulator.
    marks: Vec<u64>,
}

impl<U: Utility> SeedScratch<U> {
    pub fn new(alphabet: usize) -> Self {
        Self { acc: vec![U::zero(); alphabet], index: vec![0; alphabet], marks: vec![0; alphabet.div_ceil(64)] }
    }
}

/// The 1*1 rules with antecedent of rank `rank` whose SEU is accepted by
/// `keep`, in consequent order, and the number of rejected ones.
pub(crate) fn seeds_with_antecedent<U: Utility>(
    db: &QuantitativeSequenceDatabase<U>,
    rank: usize,
    scratch: &mut SeedScratch<U>,
    keep: impl Fn(U) -> bool,
) -> (Vec<RawSeed<U>>, usize) {
    let profiles = db.profiles();
    let SeedScratch { acc, index, marks } = scratch;
    for post in db.postings(rank) {
        let p = &profiles[post.slot as usize];
        for e in p.range(post.itemset as usize + 1, p.len_itemsets()) {
            let k = e.rank as usize;
            marks[k / 64] |= 1 << (k % 64);
            acc[k] = acc[k] + p.su;
        }
    }
    let mut dropped = 0;
    let mut kept: Vec<(u32, U)> = Vec::new();
    for (w, word) in marks.iter_mut().enumerate() {
        let mut bits = std::mem::take(word);
        while bits != 0 {
            let k = (w * 64) as u32 + bits.trailing_zeros();
            bits &= bits - 1;
            let seu = std::mem::replace(&mut acc[k as usize], U::zero());
            if keep(seu) {
                kept.push((k, seu));
                index[k as usize] = kept.len() as u32;
            } else {
                dropped += 1;
            }
        }
    }
    if kept.is_empty() {
        return (Vec::new(), dropped);
    }

    let mut rows: Vec<Vec<ReElement<U>>> = (0..kept.len()).map(|_| Vec::new()).collect();
    let a = db.items()[rank];
    for post in db.postings(rank) {
        let p = &profiles[post.slot as usize];
        let ua = p.find(a).expect("posting points at the item").utility;
        let pa = post.itemset as usize;
        for e in p.range(pa + 1, p.len_itemsets()) {
            let idx = index[e.rank as usize];
            if idx > 0 {
                let position = Occurrence { last_antecedent: pa, first_consequent: e.itemset as usize };
                let sid = db.sid_at(post.slot as usize);
                rows[idx as usize - 1].push(ReElement::new(p, sid, post.slot, ua, e.utility, position));
            }
        }
    }
    let seeds = kept
        .into_iter()
        .zip(rows)
        .map(|((k, seu), rows)| {
            index[k as usize] = 0;
            RawSeed { consequent: db.items()[k as usize], seu, table: ReTable::new(rows) }
        })
        .collect();
    (seeds, dropped)
}

fn intersect(a: &[u32], b: impl Iterator<Item = u32>) -> Vec<u32> {
    let mut out = Vec::new();
    let mut a = a.iter().copied().peekable();
    for x in b {
        while a.peek().is_some_and(|&y| y < x) {
            a.next();
        }
        if a.peek() == Some(&x) {
            out.push(x);
        }
    }
    out
}

pub(crate) struct Search<'a, U: Utility, O> {
    db: &'a QuantitativeSequenceDatabase<U>,
    reucm: Option<ReucMap<U>>,
    minutil: U,
    minconf: MinConfidence,
    cfg: StrategyConfig,
    observer: &'a mut O,
    pub stats: MiningStats,
    pub rules: Vec<SequentialRule<U>>,
    live_rows: usize,
}

impl<'a, U: Utility, O: SearchObserver<U>> Search<'a, U, O> {
    pub fn new(
        db: &'a QuantitativeSequenceDatabase<U>,
        reucm: Option<ReucMap<U>>,
        minutil: U,
        minconf: MinConfidence,
        cfg: StrategyConfig,
        observer: &'a mut O,
        stats: MiningStats,
    ) -> Self {
        Self { db, reucm, minutil, minconf, cfg, observer, stats, rules: Vec::new(), live_rows: 0 }
    }

    pub fn run(&mut self) {
        let db = self.db;
        let mut scratch = SeedScratch::new(db.items().len());
        let minutil = self.minutil;
        let usrp = self.cfg.usrp;
        for rank in 0..db.items().len() {
            let a = db.items()[rank];
            let (seeds, dropped) = seeds_with_antecedent(db, rank, &mut scratch, |seu| !usrp || seu >= minutil);
            self.stats.pruned_by_usrp += dropped;
            let antecedent_slots: Rc<Vec<u32>> = Rc::new(db.postings(rank).iter().map(|p| p.slot).collect());
            let tables: Vec<_> = seeds.into_iter().map(|s| (s.consequent, s.table)).collect();
            self.stats.seeds += tables.len();
            let rows: usize = tables.iter().map(|(_, t)| t.support()).sum();
            self.grow_live(rows);
            for (b, table) in tables {
                let node = Node {
                    antecedent: vec![a],
                    consequent: vec![b],
                    antecedent_slots: AntecedentSlots::known(Rc::clone(&antecedent_slots)),
                };
                let n = table.support();
                self.visit_re(&node, table);
                self.live_rows -= n;
            }
        }
        self.rules.sort();
        self.stats.rules_found = self.rules.len();
    }

    fn grow_live(&mut self, rows: usize) {
        self.live_rows += rows;
        self.stats.peak_table_elements = self.stats.peak_table_elements.max(self.live_rows);
    }

    fn emit(&mut self, node: &Node, utility: U, slots: impl Iterator<Item = u32>, support: usize) {
        if utility < self.minutil {
            return;
        }
        let antecedent_support = node.antecedent_slots.get(self.db).len();
        if self.minconf.accepts(support, antecedent_support) {
            let mut occurrence_sids: Vec<_> = slots.map(|s| self.db.sid_at(s as usize)).collect();
            occurrence_sids.sort_unstable();
            self.rules.push(SequentialRule {
                antecedent: node.antecedent.clone(),
                consequent: node.consequent.clone(),
                occurrence_sids,
                utility,
                support_count: support,
                antecedent_support_count: antecedent_support,
            });
        }
    }

    /// Unpromising-rule test on an already built table: growing a rule never
    /// adds sequences, so its SEU bounds every descendant.
    fn promising(&mut self, slots: impl Iterator<Item = u32>) -> bool {
        if !self.cfg.usrp {
            return true;
        }
        let profiles = self.db.profiles();
        let seu: U = slots.map(|s| profiles[s as usize].su).sum();
        if seu < self.minutil {
            self.stats.pruned_by_usrp += 1;
            false
        } else {
            true
        }
    }

    fn visit_re(&mut self, node: &Node, table: ReTable<U>) {
        self.stats.candidates += 1;
        self.observer.node(&NodeVisit {
            antecedent: &node.antecedent,
            consequent: &node.consequent,
            utility: table.utility,
            support: table.support(),
            leeu: table.leeu,
            reeu: Some(table.reeu),
        });
        self.emit(node, table.utility, table.elements.iter().map(|e| e.slot), table.support());
        if !self.promising(table.elements.iter().map(|e| e.slot)) {
            return;
        }
        if !self.cfg.reeup || table.reeu >= self.minutil {
            self.right_expansion(node, &table);
        } else {
            self.stats.pruned_by_reeup += 1;
        }
        if !self.cfg.leeup || table.leeu >= self.minutil {
            self.left_expansion(node, &LeTable::from(&table));
        } else {
            self.stats.pruned_by_leeup += 1;
        }
    }

    fn visit_le(&mut self, node: &Node, table: LeTable<U>) {
        self.stats.candidates += 1;
        self.observer.node(&NodeVisit {
            antecedent: &node.antecedent,
            consequent: &node.consequent,
            utility: table.utility,
            support: table.support(),
            leeu: table.leeu,
            reeu: None,
        });
        self.emit(node, table.utility, table.elements.iter().map(|e| e.slot), table.support());
        if !self.promising(table.elements.iter().map(|e| e.slot)) {
            return;
        }
        if !self.cfg.leeup || table.leeu >= self.minutil {
            self.left_expansion(node, &table);
        } else {
            self.stats.pruned_by_leeup += 1;
        }
    }

    fn co_occurs(&self, a: Item, b: Item) -> bool {
        self.reucm.as_ref().is_none_or(|m| m.get(a, b) >= self.minutil)
    }

    fn report(&mut self, side: Side, node: &Node, item: Item, bound: U, pruned: bool) {
        if pruned {
            match side {
                Side::Left => self.stats.pruned_by_lersup += 1,
                Side::Right => self.stats.pruned_by_rersup += 1,
            }
        }
        self.observer.bound(&BoundCheck {
            side,
            antecedent: &node.antecedent,
            consequent: &node.consequent,
            item,
            bound,
            pruned,
        });
    }

    fn right_expansion(&mut self, node: &Node, table: &ReTable<U>) {
        self.stats.expansions += 1;
        let profiles = self.db.profiles();
        let largest_antecedent = *node.antecedent.last().expect("non-empty antecedent");
        let largest_consequent = *node.consequent.last().expect("non-empty consequent");
        let mut rsu = RsuTable::new(table.reeu, self.minutil, self.cfg.rersup);
        for e in &table.elements {
            rsu.enter_sequence(e.reeu);
            let p = &profiles[e.slot as usize];
            let Occurrence { last_antecedent: pl, first_consequent: pr } = e.position;
            for c in p.range(pl + 1, p.len_itemsets()) {
                if c.item <= largest_consequent {
                    continue;
                }
                match rsu.admit(c.item, || self.co_occurs(largest_antecedent, c.item)) {
                    None => {
                        self.stats.pruned_by_reucp += 1;
                        continue;
                    }
                    Some(false) => continue,
                    Some(true) => {}
                }
                let position = Occurrence { last_antecedent: pl, first_consequent: pr.min(c.itemset as usize) };
                let row = ReElement::new(p, e.sid, e.slot, e.u_antecedent, e.u_consequent() + c.utility, position);
                match rsu.update(c.item, e.reeu, row) {
                    Decision::Keep(bound) => self.report(Side::Right, node, c.item, bound, false),
                    Decision::Prune(bound) => self.report(Side::Right, node, c.item, bound, true),
                }
            }
        }
        let (survivors, late) = rsu.finish();
        for (item, bound) in late {
            self.report(Side::Right, node, item, bound, true);
        }
        let rows: usize = survivors.iter().map(|s| s.rows.len()).sum();
        self.grow_live(rows);
        for s in survivors {
            self.report(Side::Right, node, s.item, s.reduced_utility, false);
            let mut consequent = node.consequent.clone();
            consequent.push(s.item);
            let child = Node {
                antecedent: node.antecedent.clone(),
                consequent,
                antecedent_slots: AntecedentSlots::known(Rc::clone(node.antecedent_slots.get(self.db))),
            };
            let n = s.rows.len();
            self.visit_re(&child, ReTable::new(s.rows));
            self.live_rows -= n;
        }
    }

    fn left_expansion(&mut self, node: &Node, table: &LeTable<U>) {
        self.stats.expansions += 1;
        let db = self.db;
        let profiles = db.profiles();
        let largest_antecedent = *node.antecedent.last().expect("non-empty antecedent");
        let largest_consequent = *node.consequent.last().expect("non-empty consequent");
        let mut rsu = RsuTable::new(table.leeu, self.minutil, self.cfg.lersup);
        for e in &table.elements {
            rsu.enter_sequence(e.leeu);
            let p = &profiles[e.slot as usize];
            for c in p.range(0, e.first_consequent as usize) {
                if c.item <= largest_antecedent {
                    continue;
                }
                match rsu.admit(c.item, || self.co_occurs(c.item, largest_consequent)) {
                    None => {
                        self.stats.pruned_by_reucp += 1;
                        continue;
                    }
                    Some(false) => continue,
                    Some(true) => {}
                }
                match rsu.update(c.item, e.leeu, e.absorb(c.utility)) {
                    Decision::Keep(bound) => self.report(Side::Left, node, c.item, bound, false),
                    Decision::Prune(bound) => self.report(Side::Left, node, c.item, bound, true),
                }
            }
        }
        let (survivors, late) = rsu.finish();
        for (item, bound) in late {
            self.report(Side::Left, node, item, bound, true);
        }
        let rows: usize = survivors.iter().map(|s| s.rows.len()).sum();
        self.grow_live(rows);
        let parent_slots = node.antecedent_slots.get(db);
        for s in survivors {
            self.report(Side::Left, node, s.item, s.reduced_utility, false);
            let rank = db.items().binary_search(&s.item).expect("candidate is in the alphabet");
            let mut antecedent = node.antecedent.clone();
            antecedent.push(s.item);
            let child = Node {
                antecedent,
                consequent: node.consequent.clone(),
                antecedent_slots: AntecedentSlots::narrowed(Rc::clone(parent_slots), rank),
            };
            let n = s.rows.len();
            self.visit_le(&child, LeTable::new(s.rows));
            self.live_rows -= n;
        }
    }
}
