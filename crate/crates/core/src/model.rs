//! Quantitative sequence databases and rule arithmetic.
//!
//! A database holds sequences of itemsets. Every item carries a purchase
//! quantity and every distinct item has a fixed external utility (unit
//! profit), so the utility of one occurrence is `quantity * external`.
//!
//! A sequential rule `X -> Y` occurs in a sequence when every item of both
//! sides is present and the last itemset holding an antecedent item comes
//! strictly before the first itemset holding a consequent item. Items never
//! repeat inside a sequence, so those two boundaries are unique.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::num::Utility;

/// Item identifier. Items are totally ordered by id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Item(u32);

impl Item {
    /// Returns `None` for the reserved id 0.
    pub fn new(id: u32) -> Option<Self> {
        (id > 0).then_some(Item(id))
    }

    pub fn id(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Sequence identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sid(pub u32);

impl fmt::Display for Sid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DatabaseError {
    #[error("sequence {0} appears more than once")]
    DuplicateSid(Sid),
    #[error("item {item} occurs more than once in sequence {sid}")]
    DuplicateItem { sid: Sid, item: Item },
    #[error("item {item} has zero quantity in sequence {sid}")]
    ZeroQuantity { sid: Sid, item: Item },
    #[error("sequence {sid} has an empty itemset at position {itemset}")]
    EmptyItemset { sid: Sid, itemset: usize },
    #[error("item {item} in sequence {sid} has no external utility")]
    MissingExternalUtility { sid: Sid, item: Item },
    #[error("item {0} has zero external utility")]
    ZeroExternalUtility(Item),
    #[error("external utility of item {0} is listed twice")]
    DuplicateExternalUtility(Item),
    #[error("total database utility overflows the utility type")]
    UtilityOverflow,
}

/// Unit profit per item.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExternalUtilityTable<U> {
    entries: BTreeMap<Item, U>,
}

impl<U: Utility> ExternalUtilityTable<U> {
    pub fn new(entries: impl IntoIterator<Item = (Item, U)>) -> Result<Self, DatabaseError> {
        let mut map = BTreeMap::new();
        for (item, eu) in entries {
            if eu.is_zero() {
                return Err(DatabaseError::ZeroExternalUtility(item));
            }
            if map.insert(item, eu).is_some() {
                return Err(DatabaseError::DuplicateExternalUtility(item));
            }
        }
        Ok(Self { entries: map })
    }

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
}

/// One itemset: `(item, quantity)` pairs in ascending item order.
pub type Itemset<U> = Vec<(Item, U)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequence<U> {
    sid: Sid,
    itemsets: Vec<Itemset<U>>,
}

impl<U: Utility> Sequence<U> {
    /// Builds a sequence, sorting each itemset. Rejects empty itemsets,
    /// zero quantities and items repeated anywhere in the sequence.
    pub fn new(sid: Sid, itemsets: Vec<Itemset<U>>) -> Result<Self, DatabaseError> {
        let mut seen = HashSet::new();
        let mut itemsets = itemsets;
        for (pos, itemset) in itemsets.iter_mut().enumerate() {
            if itemset.is_empty() {
                return Err(DatabaseError::EmptyItemset { sid, itemset: pos });
            }
            itemset.sort_by_key(|&(item, _)| item);
            for &(item, qty) in itemset.iter() {
                if qty.is_zero() {
                    return Err(DatabaseError::ZeroQuantity { sid, item });
                }
                if !seen.insert(item) {
                    return Err(DatabaseError::DuplicateItem { sid, item });
                }
            }
        }
        Ok(Self { sid, itemsets })
    }

    pub fn sid(&self) -> Sid {
        self.sid
    }

    pub fn itemsets(&self) -> &[Itemset<U>] {
        &self.itemsets
    }

    pub fn is_empty(&self) -> bool {
        self.itemsets.is_empty()
    }

    /// `(item, itemset index, quantity)` in positional order.
    pub fn entries(&self) -> impl Iterator<Item = (Item, usize, U)> + '_ {
        self.itemsets.iter().enumerate().flat_map(|(pos, set)| set.iter().map(move |&(item, q)| (item, pos, q)))
    }

    /// Itemset index holding `item`.
    pub fn position_of(&self, item: Item) -> Option<usize> {
        self.entries().find(|e| e.0 == item).map(|e| e.1)
    }

    pub fn quantity_of(&self, item: Item) -> Option<U> {
        self.entries().find(|e| e.0 == item).map(|e| e.2)
    }

    pub fn contains(&self, item: Item) -> bool {
        self.position_of(item).is_some()
    }

    /// Copy of this sequence with `items` removed. Emptied itemsets vanish.
    pub fn without(&self, items: &HashSet<Item>) -> Self {
        let itemsets = self
            .itemsets
            .iter()
            .map(|set| set.iter().copied().filter(|(i, _)| !items.contains(i)).collect::<Vec<_>>())
            .filter(|set| !set.is_empty())
            .collect();
        Self { sid: self.sid, itemsets }
    }
}

/// Total utility of a sequence, `None` if an item lacks an external utility
/// or the sum overflows.
pub fn sequence_utility<U: Utility>(s: &Sequence<U>, eu: &ExternalUtilityTable<U>) -> Option<U> {
    s.entries().try_fold(U::zero(), |acc, (item, _, q)| acc.checked_add(&q.checked_mul(&eu.get(item)?)?))
}

/// An item of one sequence, resolved against the database alphabet.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Located<U> {
    pub item: Item,
    /// Index of the item in the database alphabet.
    pub rank: u32,
    pub itemset: u32,
    pub utility: U,
}

/// Precomputed per-sequence layout used by the miner.
#[derive(Debug, Clone)]
pub(crate) struct Profile<U> {
    pub su: U,
    /// Entries in positional order.
    pub flat: Vec<Located<U>>,
    /// `flat[starts[k]..starts[k + 1]]` is itemset `k`.
    pub starts: Vec<u32>,
    /// `prefix[k]` is the utility of itemsets `0..k`.
    pub prefix: Vec<U>,
    /// Indices into `flat` sorted by item.
    by_item: Vec<u32>,
}

impl<U: Utility> Profile<U> {
    pub fn len_itemsets(&self) -> usize {
        self.starts.len() - 1
    }

    pub fn find(&self, item: Item) -> Option<&Located<U>> {
        self.by_item
            .binary_search_by_key(&item, |&k| self.flat[k as usize].item)
            .ok()
            .map(|k| &self.flat[self.by_item[k] as usize])
    }

    /// Entries in itemsets `from..to`.
    pub fn range(&self, from: usize, to: usize) -> &[Located<U>] {
        &self.flat[self.starts[from] as usize..self.starts[to] as usize]
    }

    /// Utility of itemsets `from..to`.
    pub fn span_utility(&self, from: usize, to: usize) -> U {
        self.prefix[to] - self.prefix[from]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Posting {
    pub slot: u32,
    pub itemset: u32,
}

/// Immutable quantitative sequence database with its indexes.
#[derive(Debug, Clone)]
pub struct QuantitativeSequenceDatabase<U> {
    sequences: Vec<Sequence<U>>,
    eu: ExternalUtilityTable<U>,
    slots: HashMap<Sid, usize>,
    alphabet: Vec<Item>,
    postings: Vec<Vec<Posting>>,
    profiles: Vec<Profile<U>>,
    total: U,
}

impl<U: Utility> PartialEq for QuantitativeSequenceDatabase<U> {
    fn eq(&self, other: &Self) -> bool {
        self.sequences == other.sequences && self.eu == other.eu
    }
}

impl<U: Utility> Eq for QuantitativeSequenceDatabase<U> {}

impl<U: Utility> QuantitativeSequenceDatabase<U> {
    pub fn new(sequences: Vec<Sequence<U>>, eu: ExternalUtilityTable<U>) -> Result<Self, DatabaseError> {
        let mut slots = HashMap::with_capacity(sequences.len());
        for (slot, s) in sequences.iter().enumerate() {
            if slots.insert(s.sid, slot).is_some() {
                return Err(DatabaseError::DuplicateSid(s.sid));
            }
        }

        let mut total = U::zero();
        let mut alphabet = Vec::new();
        for s in &sequences {
            for (item, _, _) in s.entries() {
                if eu.get(item).is_none() {
                    return Err(DatabaseError::MissingExternalUtility { sid: s.sid, item });
                }
                alphabet.push(item);
            }
            let su = sequence_utility(s, &eu).ok_or(DatabaseError::UtilityOverflow)?;
            total = total.checked_add(&su).ok_or(DatabaseError::UtilityOverflow)?;
        }
        alphabet.sort_unstable();
        alphabet.dedup();

        let rank_of: HashMap<Item, u32> = alphabet.iter().enumerate().map(|(r, &i)| (i, r as u32)).collect();
        let mut postings = vec![Vec::new(); alphabet.len()];
        let mut profiles = Vec::with_capacity(sequences.len());
        for (slot, s) in sequences.iter().enumerate() {
            let mut flat = Vec::new();
            let mut starts = vec![0u32];
            let mut prefix = vec![U::zero()];
            for (pos, set) in s.itemsets.iter().enumerate() {
                let mut acc = U::zero();
                for &(item, q) in set {
                    let utility = q * eu.get(item).expect("checked above");
                    let rank = rank_of[&item];
                    postings[rank as usize].push(Posting { slot: slot as u32, itemset: pos as u32 });
                    flat.push(Located { item, rank, itemset: pos as u32, utility });
                    acc = acc + utility;
                }
                starts.push(flat.len() as u32);
                prefix.push(*prefix.last().unwrap() + acc);
            }
            let mut by_item: Vec<u32> = (0..flat.len() as u32).collect();
            by_item.sort_unstable_by_key(|&k| flat[k as usize].item);
            profiles.push(Profile { su: *prefix.last().unwrap(), flat, starts, prefix, by_item });
        }

        Ok(Self { sequences, eu, slots, alphabet, postings, profiles, total })
    }

    pub fn empty(eu: ExternalUtilityTable<U>) -> Self {
        Self::new(Vec::new(), eu).expect("empty database is valid")
    }

    pub fn sequences(&self) -> &[Sequence<U>] {
        &self.sequences
    }

    pub fn external_utilities(&self) -> &ExternalUtilityTable<U> {
        &self.eu
    }

    pub fn len(&self) -> usize {
        self.sequences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequences.is_empty()
    }

    pub fn sequence(&self, sid: Sid) -> Option<&Sequence<U>> {
        self.slots.get(&sid).map(|&k| &self.sequences[k])
    }

    /// Distinct items present in some sequence, ascending.
    pub fn items(&self) -> &[Item] {
        &self.alphabet
    }

    /// Cached sequence utility.
    pub fn sequence_utility(&self, sid: Sid) -> Option<U> {
        self.slots.get(&sid).map(|&k| self.profiles[k].su)
    }

    /// Sum of all sequence utilities.
    pub fn total_utility(&self) -> U {
        self.total
    }

    /// `(sid, itemset index)` of every occurrence of `item`, in database order.
    pub fn positions(&self, item: Item) -> Vec<(Sid, usize)> {
        match self.alphabet.binary_search(&item) {
            Ok(rank) => {
                self.postings[rank].iter().map(|p| (self.sequences[p.slot as usize].sid, p.itemset as usize)).collect()
            }
            Err(_) => Vec::new(),
        }
    }

    /// New database without `items`; sequences left empty are dropped.
    /// Sids are kept as they are.
    pub fn without_items(&self, items: &HashSet<Item>) -> Self {
        let sequences = self.sequences.iter().map(|s| s.without(items)).filter(|s| !s.is_empty()).collect();
        Self::new(sequences, self.eu.clone()).expect("subset of a valid database is valid")
    }

    pub(crate) fn profiles(&self) -> &[Profile<U>] {
        &self.profiles
    }

    pub(crate) fn postings(&self, rank: usize) -> &[Posting] {
        &self.postings[rank]
    }

    pub(crate) fn sid_at(&self, slot: usize) -> Sid {
        self.sequences[slot].sid
    }
}

/// Boundaries of a rule occurrence: the last itemset holding an antecedent
/// item and the first itemset holding a consequent item.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Occurrence {
    pub last_antecedent: usize,
    pub first_consequent: usize,
}

pub fn rule_occurrence<U: Utility>(antecedent: &[Item], consequent: &[Item], s: &Sequence<U>) -> Option<Occurrence> {
    if antecedent.is_empty() || consequent.is_empty() {
        return None;
    }
    let mut last_antecedent = 0;
    for &item in antecedent {
        last_antecedent = last_antecedent.max(s.position_of(item)?);
    }
    let mut first_consequent = usize::MAX;
    for &item in consequent {
        first_consequent = first_consequent.min(s.position_of(item)?);
    }
    (last_antecedent < first_consequent).then_some(Occurrence { last_antecedent, first_consequent })
}

/// Utility of the rule's items in `s`, zero when the rule does not occur.
pub fn rule_utility_in_sequence<U: Utility>(
    antecedent: &[Item],
    consequent: &[Item],
    s: &Sequence<U>,
    eu: &ExternalUtilityTable<U>,
) -> U {
    if rule_occurrence(antecedent, consequent, s).is_none() {
        return U::zero();
    }
    antecedent
        .iter()
        .chain(consequent)
        .map(|&i| s.quantity_of(i).unwrap() * eu.get(i).expect("item has external utility"))
        .sum()
}

pub fn rule_utility<U: Utility>(antecedent: &[Item], consequent: &[Item], db: &QuantitativeSequenceDatabase<U>) -> U {
    db.sequences().iter().map(|s| rule_utility_in_sequence(antecedent, consequent, s, db.external_utilities())).sum()
}

/// Occurrence and antecedent counts of a rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SupportConfidence {
    pub support: usize,
    pub antecedent_support: usize,
}

impl SupportConfidence {
    /// Zero when the antecedent never appears.
    pub fn confidence(&self) -> f64 {
        confidence_ratio(self.support, self.antecedent_support)
    }

    /// Support as a fraction of the database size.
    pub fn support_fraction(&self, db_len: usize) -> f64 {
        if db_len == 0 {
            0.0
        } else {
            self.support as f64 / db_len as f64
        }
    }
}

fn confidence_ratio(support: usize, antecedent_support: usize) -> f64 {
    if antecedent_support == 0 {
        0.0
    } else {
        support as f64 / antecedent_support as f64
    }
}

pub fn support_and_confidence<U: Utility>(
    antecedent: &[Item],
    consequent: &[Item],
    db: &QuantitativeSequenceDatabase<U>,
) -> SupportConfidence {
    let support = db.sequences().iter().filter(|s| rule_occurrence(antecedent, consequent, s).is_some()).count();
    let antecedent_support = db.sequences().iter().filter(|s| antecedent.iter().all(|&i| s.contains(i))).count();
    SupportConfidence { support, antecedent_support }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("rule sides must be non-empty")]
    EmptySide,
    #[error("item {0} appears on both sides of the rule")]
    Overlap(Item),
}

/// A sequential rule with its measures over one database.
///
/// Ordering compares antecedents first, then consequents, which is the
/// canonical output order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SequentialRule<U> {
    pub antecedent: Vec<Item>,
    pub consequent: Vec<Item>,
    pub occurrence_sids: Vec<Sid>,
    pub utility: U,
    pub support_count: usize,
    pub antecedent_support_count: usize,
}

impl<U: Utility> SequentialRule<U> {
    /// Measures a rule by scanning every sequence.
    pub fn evaluate(
        antecedent: &[Item],
        consequent: &[Item],
        db: &QuantitativeSequenceDatabase<U>,
    ) -> Result<Self, RuleError> {
        if antecedent.is_empty() || consequent.is_empty() {
            return Err(RuleError::EmptySide);
        }
        if let Some(&i) = antecedent.iter().find(|i| consequent.contains(i)) {
            return Err(RuleError::Overlap(i));
        }
        let mut antecedent = antecedent.to_vec();
        let mut consequent = consequent.to_vec();
        antecedent.sort_unstable();
        antecedent.dedup();
        consequent.sort_unstable();
        consequent.dedup();

        let mut occurrence_sids: Vec<Sid> = db
            .sequences()
            .iter()
            .filter(|s| rule_occurrence(&antecedent, &consequent, s).is_some())
            .map(|s| s.sid())
            .collect();
        occurrence_sids.sort_unstable();
        let counts = support_and_confidence(&antecedent, &consequent, db);
        let utility = rule_utility(&antecedent, &consequent, db);
        Ok(Self {
            antecedent,
            consequent,
            occurrence_sids,
            utility,
            support_count: counts.support,
            antecedent_support_count: counts.antecedent_support,
        })
    }

    pub fn confidence(&self) -> f64 {
        confidence_ratio(self.support_count, self.antecedent_support_count)
    }

    pub fn is_high_utility(&self, minutil: U, minconf: MinConfidence) -> bool {
        self.utility >= minutil && minconf.accepts(self.support_count, self.antecedent_support_count)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("minconf must be in [0,1], got {0}")]
pub struct InvalidConfidence(pub String);

/// Minimum confidence held as an exact decimal fraction so that threshold
/// tests never depend on floating-point rounding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinConfidence {
    numerator: u64,
    denominator: u64,
}

impl MinConfidence {
    pub const ZERO: Self = Self { numerator: 0, denominator: 1 };

    /// Uses the shortest decimal form of `value`, so `0.6` means exactly 6/10.
    pub fn new(value: f64) -> Result<Self, InvalidConfidence> {
        if !value.is_finite() || !(0.0..=1.0).contains(&value) {
            return Err(InvalidConfidence(value.to_string()));
        }
        format!("{value}").parse()
    }

    pub fn value(self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }

    /// `support / antecedent_support >= self`, zero-antecedent counting as
    /// confidence 0.
    pub fn accepts(self, support: usize, antecedent_support: usize) -> bool {
        if antecedent_support == 0 {
            return self.numerator == 0;
        }
        support as u128 * self.denominator as u128 >= self.numerator as u128 * antecedent_support as u128
    }
}

impl FromStr for MinConfidence {
    type Err = InvalidConfidence;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = || InvalidConfidence(text.to_string());
        let t = text.trim();
        let (whole, frac) = t.split_once('.').unwrap_or((t, ""));
        if whole.is_empty() && frac.is_empty()
            || !whole.bytes().all(|b| b.is_ascii_digit())
            || !frac.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(bad());
        }
        let frac = frac.trim_end_matches('0');
        if frac.len() > 18 {
            return Err(bad());
        }
        let denominator = 10u64.pow(frac.len() as u32);
        let whole: u64 = if whole.is_empty() { 0 } else { whole.parse().map_err(|_| bad())? };
        let frac_val: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        if whole > 1 || (whole == 1 && frac_val > 0) {
            return Err(bad());
        }
        Ok(Self { numerator: whole * denominator + frac_val, denominator })
    }
}

impl fmt::Display for MinConfidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn item_zero_is_reserved() {
        assert!(Item::new(0).is_none());
        assert_eq!(Item::new(3).unwrap().id(), 3);
        assert!(Item::new(2) < Item::new(10));
    }

    #[test]
    fn sequence_utilities_of_example() {
        let db = example_db();
        let su: Vec<u64> = (1..=4).map(|k| db.sequence_utility(Sid(k)).unwrap()).collect();
        assert_eq!(su, vec![9, 8, 10, 5]);
        assert_eq!(db.total_utility(), 32);
        let empty = Sequence::<u64>::new(Sid(9), vec![]).unwrap();
        assert_eq!(sequence_utility(&empty, &example_eu()), Some(0));
    }

    #[test]
    fn sequence_validation() {
        let dup = Sequence::<u64>::new(Sid(1), vec![vec![(item('a'), 1)], vec![(item('a'), 2)]]);
        assert_eq!(dup, Err(DatabaseError::DuplicateItem { sid: Sid(1), item: item('a') }));
        let zero = Sequence::<u64>::new(Sid(1), vec![vec![(item('a'), 0)]]);
        assert!(matches!(zero, Err(DatabaseError::ZeroQuantity { .. })));
        let empty = Sequence::<u64>::new(Sid(1), vec![vec![]]);
        assert!(matches!(empty, Err(DatabaseError::EmptyItemset { .. })));
        let sorted = Sequence::<u64>::new(Sid(1), vec![vec![(item('c'), 1), (item('a'), 1)]]).unwrap();
        assert_eq!(sorted.itemsets()[0][0].0, item('a'));
    }

    #[test]
    fn database_validation() {
        let mut seqs = example_sequences();
        seqs.push(seqs[0].clone());
        assert_eq!(QuantitativeSequenceDatabase::new(seqs, example_eu()), Err(DatabaseError::DuplicateSid(Sid(1))));
        let eu = ExternalUtilityTable::new([(item('a'), 2u64)]).unwrap();
        assert!(matches!(
            QuantitativeSequenceDatabase::new(example_sequences(), eu),
            Err(DatabaseError::MissingExternalUtility { .. })
        ));
        assert!(ExternalUtilityTable::new([(item('a'), 0u64)]).is_err());
        let big = ExternalUtilityTable::new([(item('a'), 200u8)]).unwrap();
        let s = Sequence::new(Sid(1), vec![vec![(item('a'), 2u8)]]).unwrap();
        assert_eq!(QuantitativeSequenceDatabase::new(vec![s], big), Err(DatabaseError::UtilityOverflow));
    }

    #[test]
    fn position_index_matches_sequences() {
        let db = example_db();
        assert_eq!(db.positions(item('g')), vec![(Sid(1), 2), (Sid(2), 2), (Sid(3), 2)]);
        assert_eq!(db.positions(item('f')), vec![(Sid(4), 1)]);
        assert!(db.positions(Item::new(99).unwrap()).is_empty());
        assert_eq!(db.items(), items("abcdefg").as_slice());
    }

    #[test]
    fn occurrence_boundaries() {
        let db = example_db();
        let s1 = db.sequence(Sid(1)).unwrap();
        assert_eq!(
            rule_occurrence(&items("a"), &items("cg"), s1),
            Some(Occurrence { last_antecedent: 0, first_consequent: 2 })
        );
        // c and g share an itemset in s1
        assert_eq!(rule_occurrence(&items("c"), &items("g"), s1), None);
        let s3 = db.sequence(Sid(3)).unwrap();
        assert_eq!(rule_occurrence(&items("a"), &items("b"), s3), None);
    }

    #[test]
    fn rule_utilities() {
        let db = example_db();
        assert_eq!(rule_utility(&items("a"), &items("g"), &db), 6);
        assert_eq!(rule_utility(&items("a"), &items("c"), &db), 12);
        assert_eq!(rule_utility(&items("g"), &items("a"), &db), 0);
        let s1 = db.sequence(Sid(1)).unwrap();
        assert_eq!(rule_utility_in_sequence(&items("a"), &items("g"), s1, db.external_utilities()), 3);
    }

    #[test]
    fn support_confidence_examples() {
        let db = example_db();
        let sc = support_and_confidence(&items("a"), &items("cg"), &db);
        assert_eq!((sc.support, sc.confidence()), (2, 1.0));
        let sc = support_and_confidence(&items("b"), &items("dg"), &db);
        assert_eq!((sc.support, sc.confidence()), (1, 0.5));
        let sc = support_and_confidence(&items("a"), &items("b"), &db);
        assert_eq!((sc.support, sc.confidence()), (1, 0.5));
        assert_eq!(sc.support_fraction(db.len()), 0.25);
        let never = support_and_confidence(&items("f"), &items("a"), &db);
        assert_eq!(never.confidence(), 0.0);
    }

    #[test]
    fn evaluate_rule() {
        let db = example_db();
        let r = SequentialRule::evaluate(&items("db"), &items("g"), &db).unwrap();
        assert_eq!(r.antecedent, items("bd"));
        assert_eq!(r.occurrence_sids, vec![Sid(3)]);
        assert_eq!((r.support_count, r.antecedent_support_count, r.utility), (1, 1, 10));
        assert_eq!(SequentialRule::evaluate(&items("a"), &items("a"), &db), Err(RuleError::Overlap(item('a'))));
        assert_eq!(SequentialRule::evaluate(&[], &items("a"), &db), Err(RuleError::EmptySide));
    }

    #[test]
    fn min_confidence_is_exact() {
        let c = MinConfidence::new(0.6).unwrap();
        assert!(c.accepts(3, 5));
        assert!(!c.accepts(5, 9));
        assert!(MinConfidence::new(0.5).unwrap().accepts(1, 2));
        assert!(MinConfidence::new(1.0).unwrap().accepts(4, 4));
        assert!(!MinConfidence::new(1.0).unwrap().accepts(3, 4));
        assert!(MinConfidence::ZERO.accepts(0, 0));
        assert!(MinConfidence::new(1.5).is_err());
        assert!(MinConfidence::new(f64::NAN).is_err());
        assert!("1.01".parse::<MinConfidence>().is_err());
        assert!("abc".parse::<MinConfidence>().is_err());
        assert_eq!(".25".parse::<MinConfidence>().unwrap().value(), 0.25);
    }
}
