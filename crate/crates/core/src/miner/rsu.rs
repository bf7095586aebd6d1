//! Running reduced-sequence-utility bookkeeping for one expansion call.
//!
//! Before the scan `remaining` holds the parent's estimate summed over all
//! of its sequences. Each scanned sequence first leaves `remaining`, then
//! adds its estimate to every candidate extendable there. At any moment
//! `entry(i) + remaining` bounds the reduced sequence utility of the
//! candidate grown with `i`; once the scan ends `entry(i)` equals it.

use rustc_hash::FxHashMap;

use crate::model::Item;
use crate::num::Utility;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Blocked {
    /// Rejected by the co-occurrence map on first sight.
    CoOccurrence,
    /// Running bound fell below minutil.
    Bound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision<U> {
    Keep(U),
    Prune(U),
}

#[derive(Debug)]
enum Slot<U> {
    Blocked(Blocked),
    Open { entry: U, rows: usize },
}

#[derive(Debug)]
pub struct RsuTable<U, R> {
    slots: FxHashMap<Item, Slot<U>>,
    /// Rows of every update in scan order; split per survivor at the end.
    rows: Vec<(Item, R)>,
    remaining: U,
    minutil: U,
    enforce: bool,
}

/// Survivors in item order, and candidates dropped at the end of the scan
/// with their exact reduced utility.
pub type Finished<U, R> = (Vec<Survivor<U, R>>, Vec<(Item, U)>);

/// A candidate that survived the scan.
#[derive(Debug)]
pub struct Survivor<U, R> {
    pub item: Item,
    pub reduced_utility: U,
    pub rows: Vec<R>,
}

impl<U: Utility, R> RsuTable<U, R> {
    /// `total` is the parent's estimate over all its sequences. With
    /// `enforce` off the bound is tracked but never prunes.
    pub fn new(total: U, minutil: U, enforce: bool) -> Self {
        Self { slots: FxHashMap::default(), rows: Vec::new(), remaining: total, minutil, enforce }
    }

    pub fn remaining(&self) -> U {
        self.remaining
    }

    pub fn entry(&self, item: Item) -> Option<U> {
        match self.slots.get(&item)? {
            Slot::Open { entry, .. } => Some(*entry),
            Slot::Blocked(_) => None,
        }
    }

    pub fn blocked(&self, item: Item) -> Option<Blocked> {
        match self.slots.get(&item)? {
            Slot::Blocked(b) => Some(*b),
            Slot::Open { .. } => None,
        }
    }

    /// Moves the scan to a sequence whose parent estimate is `estimate`.
    pub fn enter_sequence(&mut self, estimate: U) {
        self.remaining = self.remaining - estimate;
    }

    /// On first sight of `item` runs `admit`; a `false` blocks the item for
    /// the rest of the call. Returns `None` if this call newly blocked it,
    /// otherwise whether the item is open.
    pub fn admit(&mut self, item: Item, admit: impl FnOnce() -> bool) -> Option<bool> {
        if let Some(slot) = self.slots.get(&item) {
            return Some(matches!(slot, Slot::Open { .. }));
        }
        if admit() {
            self.slots.insert(item, Slot::Open { entry: U::zero(), rows: 0 });
            Some(true)
        } else {
            self.slots.insert(item, Slot::Blocked(Blocked::CoOccurrence));
            None
        }
    }

    /// Adds the current sequence's estimate to an open `item` and tests the
    /// running bound. A pruned item is barred for the rest of the call.
    pub fn update(&mut self, item: Item, estimate: U, row: R) -> Decision<U> {
        let slot = self.slots.get_mut(&item).expect("item admitted before update");
        let Slot::Open { entry, rows } = slot else {
            panic!("update on blocked item");
        };
        *entry = *entry + estimate;
        let bound = *entry + self.remaining;
        if self.enforce && bound < self.minutil {
            *slot = Slot::Blocked(Blocked::Bound);
            Decision::Prune(bound)
        } else {
            *rows += 1;
            self.rows.push((item, row));
            Decision::Keep(bound)
        }
    }

    /// Ends the scan. Returns open candidates in item order; with
    /// enforcement, those whose exact reduced utility is below minutil are
    /// reported separately.
    pub fn finish(self) -> Finished<U, R> {
        let mut kept = Vec::new();
        let mut pruned = Vec::new();
        for (item, slot) in self.slots {
            if let Slot::Open { entry, rows } = slot {
                if self.enforce && entry < self.minutil {
                    pruned.push((item, entry));
                } else {
                    kept.push(Survivor { item, reduced_utility: entry, rows: Vec::with_capacity(rows) });
                }
            }
        }
        kept.sort_unstable_by_key(|s| s.item);
        pruned.sort_unstable();
        let index: FxHashMap<Item, usize> = kept.iter().enumerate().map(|(i, s)| (s.item, i)).collect();
        for (item, row) in self.rows {
            if let Some(&i) = index.get(&item) {
                kept[i].rows.push(row);
            }
        }
        (kept, pruned)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn it(x: u32) -> Item {
        Item::new(x).unwrap()
    }

    #[test]
    fn prunes_on_running_bound() {
        // estimates 5, 4, 3; item 1 only in the first sequence
        let mut t: RsuTable<u64, ()> = RsuTable::new(12, 8, true);
        t.enter_sequence(5);
        assert_eq!(t.admit(it(1), || true), Some(true));
        assert_eq!(t.update(it(1), 5, ()), Decision::Keep(12));
        assert_eq!(t.admit(it(2), || true), Some(true));
        assert_eq!(t.update(it(2), 5, ()), Decision::Keep(12));
        t.enter_sequence(4);
        assert_eq!(t.update(it(2), 4, ()), Decision::Keep(12));
        t.enter_sequence(3);
        assert_eq!(t.admit(it(3), || true), Some(true));
        // 3 + 0 < 8
        assert_eq!(t.update(it(3), 3, ()), Decision::Prune(3));
        assert_eq!(t.blocked(it(3)), Some(Blocked::Bound));
        assert_eq!(t.admit(it(3), || true), Some(false));
        let (kept, pruned) = t.finish();
        assert_eq!(kept.iter().map(|s| (s.item, s.reduced_utility)).collect::<Vec<_>>(), vec![(it(2), 9)]);
        assert_eq!(pruned, vec![(it(1), 5)]);
    }

    #[test]
    fn co_occurrence_block_is_sticky() {
        let mut t: RsuTable<u64, ()> = RsuTable::new(10, 1, false);
        assert_eq!(t.admit(it(4), || false), None);
        assert_eq!(t.admit(it(4), || true), Some(false));
        assert_eq!(t.blocked(it(4)), Some(Blocked::CoOccurrence));
    }

    #[test]
    fn without_enforcement_nothing_is_pruned() {
        let mut t: RsuTable<u64, u8> = RsuTable::new(3, 100, false);
        t.enter_sequence(3);
        t.admit(it(1), || true);
        assert_eq!(t.update(it(1), 3, 7), Decision::Keep(3));
        let (kept, pruned) = t.finish();
        assert_eq!(kept[0].rows, vec![7]);
        assert!(pruned.is_empty());
    }

    proptest! {
        // sequences: (estimate, candidate items present)
        #[test]
        fn running_bound_dominates_exact_value(
            seqs in proptest::collection::vec((0u64..50, proptest::collection::btree_set(1u32..6, 0..5)), 0..12),
        ) {
            let total: u64 = seqs.iter().map(|s| s.0).sum();
            let mut t: RsuTable<u64, ()> = RsuTable::new(total, u64::MAX, false);
            let exact = |i: u32| -> u64 { seqs.iter().filter(|s| s.1.contains(&i)).map(|s| s.0).sum() };
            for (est, present) in &seqs {
                t.enter_sequence(*est);
                for &i in present {
                    t.admit(it(i), || true);
                    match t.update(it(i), *est, ()) {
                        Decision::Keep(bound) | Decision::Prune(bound) => prop_assert!(bound >= exact(i)),
                    }
                }
                for i in 1..6 {
                    if let Some(entry) = t.entry(it(i)) {
                        prop_assert!(entry + t.remaining() >= exact(i));
                    }
                }
            }
            let (kept, _) = t.finish();
            for s in kept {
                prop_assert_eq!(s.reduced_utility, exact(s.item.id()));
            }
        }
    }
}
