//! Per-rule expansion tables and the upper bounds they carry.
//!
//! For a rule occurring in a sequence with boundaries `pL` (last antecedent
//! itemset) and `pR` (first consequent itemset), every other item of the
//! sequence is classified by position:
//!
//! * itemset `<= pL`: left only (can join the antecedent),
//! * itemset `>= pR`: right only (can join the consequent),
//! * strictly between: either side.
//!
//! Positions are 0-based itemset indexes.

use crate::model::{ExternalUtilityTable, Item, Occurrence, Profile, QuantitativeSequenceDatabase, Sequence, Sid};
use crate::num::Utility;

/// Items of a sequence that could extend a rule, grouped by side.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Classification<U> {
    pub left_only: Vec<(Item, U)>,
    pub right_only: Vec<(Item, U)>,
    pub both: Vec<(Item, U)>,
}

impl<U: Utility> Classification<U> {
    pub fn u_left(&self) -> U {
        self.left_only.iter().map(|e| e.1).sum()
    }

    pub fn u_right(&self) -> U {
        self.right_only.iter().map(|e| e.1).sum()
    }

    pub fn u_leftright(&self) -> U {
        self.both.iter().map(|e| e.1).sum()
    }
}

/// Splits the items of `s` outside the rule by their position relative to
/// `occurrence`. Utilities are `quantity * external utility`.
pub fn classify_extension_items<U: Utility>(
    antecedent: &[Item],
    consequent: &[Item],
    s: &Sequence<U>,
    eu: &ExternalUtilityTable<U>,
    occurrence: Occurrence,
) -> Classification<U> {
    let mut out = Classification { left_only: vec![], right_only: vec![], both: vec![] };
    for (item, pos, q) in s.entries() {
        if antecedent.contains(&item) || consequent.contains(&item) {
            continue;
        }
        let entry = (item, q * eu.get(item).expect("item has external utility"));
        if pos <= occurrence.last_antecedent {
            out.left_only.push(entry);
        } else if pos >= occurrence.first_consequent {
            out.right_only.push(entry);
        } else {
            out.both.push(entry);
        }
    }
    out
}

/// Left-expansion estimate in one sequence: zero when nothing can join the
/// antecedent, else the rule utility plus everything that could.
pub(crate) fn left_estimate<U: Utility>(utility: U, pool: U) -> U {
    if pool.is_zero() {
        U::zero()
    } else {
        utility + pool
    }
}

/// One sequence's row of a right-expandable rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReElement<U> {
    pub sid: Sid,
    pub utility: U,
    pub u_left: U,
    pub u_right: U,
    pub u_leftright: U,
    pub leeu: U,
    pub reeu: U,
    pub position: Occurrence,
    pub(crate) slot: u32,
    pub(crate) u_antecedent: U,
}

impl<U: Utility> ReElement<U> {
    pub(crate) fn new(
        profile: &Profile<U>,
        sid: Sid,
        slot: u32,
        u_antecedent: U,
        u_consequent: U,
        position: Occurrence,
    ) -> Self {
        let (pl, pr) = (position.last_antecedent, position.first_consequent);
        let n = profile.len_itemsets();
        let u_leftright = profile.span_utility(pl + 1, pr);
        let u_left = profile.span_utility(0, pl + 1) - u_antecedent;
        let u_right = profile.span_utility(pr, n) - u_consequent;
        let utility = u_antecedent + u_consequent;
        let extend = u_left + u_leftright + u_right;
        Self {
            sid,
            utility,
            u_left,
            u_right,
            u_leftright,
            leeu: left_estimate(utility, u_left + u_leftright),
            reeu: if extend.is_zero() { U::zero() } else { utility + extend },
            position,
            slot,
            u_antecedent,
        }
    }

    pub(crate) fn u_consequent(&self) -> U {
        self.utility - self.u_antecedent
    }
}

/// Table of a rule that may still grow on both sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReTable<U> {
    pub elements: Vec<ReElement<U>>,
    pub utility: U,
    pub leeu: U,
    pub reeu: U,
}

impl<U: Utility> ReTable<U> {
    pub fn new(elements: Vec<ReElement<U>>) -> Self {
        let mut utility = U::zero();
        let mut leeu = U::zero();
        let mut reeu = U::zero();
        for e in &elements {
            utility = utility + e.utility;
            leeu = leeu + e.leeu;
            reeu = reeu + e.reeu;
        }
        Self { elements, utility, leeu, reeu }
    }

    /// Builds the table of `antecedent -> consequent` by scanning `db`.
    pub fn for_rule(db: &QuantitativeSequenceDatabase<U>, antecedent: &[Item], consequent: &[Item]) -> Self {
        let mut elements = Vec::new();
        'seq: for (slot, p) in db.profiles().iter().enumerate() {
            if antecedent.is_empty() || consequent.is_empty() {
                break;
            }
            let mut pl = 0;
            let mut pr = usize::MAX;
            let mut ua = U::zero();
            let mut uc = U::zero();
            for &i in antecedent {
                let Some(e) = p.find(i) else { continue 'seq };
                pl = pl.max(e.itemset as usize);
                ua = ua + e.utility;
            }
            for &i in consequent {
                let Some(e) = p.find(i) else { continue 'seq };
                pr = pr.min(e.itemset as usize);
                uc = uc + e.utility;
            }
            if pl < pr {
                let position = Occurrence { last_antecedent: pl, first_consequent: pr };
                elements.push(ReElement::new(p, db.sid_at(slot), slot as u32, ua, uc, position));
            }
        }
        Self::new(elements)
    }

    pub fn element(&self, sid: Sid) -> Option<&ReElement<U>> {
        self.elements.iter().find(|e| e.sid == sid)
    }

    pub fn support(&self) -> usize {
        self.elements.len()
    }
}

/// One sequence's row of a rule that may only grow its antecedent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LeElement<U> {
    pub sid: Sid,
    pub utility: U,
    /// Utility of every item that could still join the antecedent.
    pub u_left_merged: U,
    pub leeu: U,
    pub(crate) slot: u32,
    pub(crate) first_consequent: u32,
}

impl<U: Utility> From<&ReElement<U>> for LeElement<U> {
    fn from(e: &ReElement<U>) -> Self {
        Self {
            sid: e.sid,
            utility: e.utility,
            u_left_merged: e.u_left + e.u_leftright,
            leeu: e.leeu,
            slot: e.slot,
            first_consequent: e.position.first_consequent as u32,
        }
    }
}

impl<U: Utility> LeElement<U> {
    /// Row after `item_utility` moves from the pool into the antecedent.
    pub(crate) fn absorb(&self, item_utility: U) -> Self {
        let utility = self.utility + item_utility;
        let u_left_merged = self.u_left_merged - item_utility;
        Self { utility, u_left_merged, leeu: left_estimate(utility, u_left_merged), ..*self }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeTable<U> {
    pub elements: Vec<LeElement<U>>,
    pub utility: U,
    pub leeu: U,
}

impl<U: Utility> LeTable<U> {
    pub fn new(elements: Vec<LeElement<U>>) -> Self {
        let mut utility = U::zero();
        let mut leeu = U::zero();
        for e in &elements {
            utility = utility + e.utility;
            leeu = leeu + e.leeu;
        }
        Self { elements, utility, leeu }
    }

    pub fn support(&self) -> usize {
        self.elements.len()
    }
}

impl<U: Utility> From<&ReTable<U>> for LeTable<U> {
    fn from(t: &ReTable<U>) -> Self {
        Self { elements: t.elements.iter().map(LeElement::from).collect(), utility: t.utility, leeu: t.leeu }
    }
}

/// LEEU of a rule over the database.
pub fn leeu<U: Utility>(db: &QuantitativeSequenceDatabase<U>, antecedent: &[Item], consequent: &[Item]) -> U {
    ReTable::for_rule(db, antecedent, consequent).leeu
}

/// REEU of a rule over the database.
pub fn reeu<U: Utility>(db: &QuantitativeSequenceDatabase<U>, antecedent: &[Item], consequent: &[Item]) -> U {
    ReTable::for_rule(db, antecedent, consequent).reeu
}

/// LEEU of a rule in one sequence, zero when it does not occur there.
pub fn leeu_in_sequence<U: Utility>(
    db: &QuantitativeSequenceDatabase<U>,
    antecedent: &[Item],
    consequent: &[Item],
    sid: Sid,
) -> U {
    ReTable::for_rule(db, antecedent, consequent).element(sid).map_or(U::zero(), |e| e.leeu)
}

/// REEU of a rule in one sequence, zero when it does not occur there.
pub fn reeu_in_sequence<U: Utility>(
    db: &QuantitativeSequenceDatabase<U>,
    antecedent: &[Item],
    consequent: &[Item],
    sid: Sid,
) -> U {
    ReTable::for_rule(db, antecedent, consequent).element(sid).map_or(U::zero(), |e| e.reeu)
}

pub type RuleRef<'a> = (&'a [Item], &'a [Item]);

fn reduced<U: Utility>(
    db: &QuantitativeSequenceDatabase<U>,
    candidate: RuleRef<'_>,
    parent: RuleRef<'_>,
    pick: impl Fn(&ReElement<U>) -> U,
) -> U {
    let child = ReTable::for_rule(db, candidate.0, candidate.1);
    let parent = ReTable::for_rule(db, parent.0, parent.1);
    child.elements.iter().filter_map(|c| parent.element(c.sid)).map(pick).sum()
}

/// LERSU of `candidate`, grown from `parent` by one left expansion: the
/// parent's per-sequence LEEU summed over sequences where the candidate occurs.
pub fn lersu<U: Utility>(db: &QuantitativeSequenceDatabase<U>, candidate: RuleRef<'_>, parent: RuleRef<'_>) -> U {
    reduced(db, candidate, parent, |e| e.leeu)
}

/// RERSU of `candidate`, grown from `parent` by one right expansion.
pub fn rersu<U: Utility>(db: &QuantitativeSequenceDatabase<U>, candidate: RuleRef<'_>, parent: RuleRef<'_>) -> U {
    reduced(db, candidate, parent, |e| e.reeu)
}
