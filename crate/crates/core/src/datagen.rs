//! Seeded synthetic quantitative sequence databases.
//!
//! Sequences are built in the manner of the IBM Quest generator: a pool of
//! weighted sequential patterns is drawn first, each sequence embeds a few
//! of them (dropping every pattern item with a fixed probability) and the
//! remaining room is filled with independent noise items.

use std::collections::HashSet;

use rand::distr::weighted::WeightedIndex;
use rand::prelude::*;
use rand::seq::index;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, Poisson};
use thiserror::Error;

use crate::model::{DatabaseError, ExternalUtilityTable, Item, QuantitativeSequenceDatabase, Sequence, Sid};
use crate::num::Utility;

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorParams {
    pub num_sequences: usize,
    pub alphabet_size: u32,
    pub mean_itemsets_per_sequence: f64,
    pub mean_items_per_itemset: f64,
    pub max_quantity: u32,
    pub max_external_utility: u32,
    /// Popularity exponent: item `k` is drawn with weight `1 / k^skew`.
    /// Zero draws items uniformly.
    pub item_skew: f64,
    /// Size of the pattern pool; zero builds sequences from noise alone.
    pub num_patterns: usize,
    pub mean_pattern_itemsets: f64,
    pub mean_pattern_items: f64,
    /// Average number of patterns embedded in one sequence.
    pub patterns_per_sequence: f64,
    /// Probability of dropping each pattern item when embedding.
    pub corruption: f64,
    pub seed: u64,
}

impl Default for GeneratorParams {
    fn default() -> Self {
        Self {
            num_sequences: 100,
            alphabet_size: 20,
            mean_itemsets_per_sequence: 4.0,
            mean_items_per_itemset: 2.0,
            max_quantity: 5,
            max_external_utility: 10,
            item_skew: 0.0,
            num_patterns: 0,
            mean_pattern_itemsets: 2.0,
            mean_pattern_items: 1.5,
            patterns_per_sequence: 1.0,
            corruption: 0.25,
            seed: 0,
        }
    }
}

impl GeneratorParams {
    /// Sequence count, alphabet and shape of the Syn10k benchmark.
    pub fn syn10k(seed: u64) -> Self {
        Self {
            num_sequences: 10_000,
            alphabet_size: 7312,
            mean_itemsets_per_sequence: 27.11,
            mean_items_per_itemset: 4.35,
            max_quantity: 10,
            max_external_utility: 100,
            item_skew: 0.0,
            num_patterns: 20,
            mean_pattern_itemsets: 2.0,
            mean_pattern_items: 1.5,
            patterns_per_sequence: 1.0,
            corruption: 0.1,
            seed,
        }
    }

    fn validate(&self) -> Result<(), DatagenError> {
        let bad = |m: &str| Err(DatagenError::InvalidParameter(m.to_string()));
        let at_least_one = |v: f64| v.is_finite() && v >= 1.0;
        if self.alphabet_size == 0 {
            return bad("alphabet size must be positive");
        }
        if !at_least_one(self.mean_itemsets_per_sequence) {
            return bad("mean itemsets per sequence must be at least 1");
        }
        if !at_least_one(self.mean_items_per_itemset) {
            return bad("mean items per itemset must be at least 1");
        }
        if self.mean_items_per_itemset > self.alphabet_size as f64 {
            return bad("mean items per itemset exceeds the alphabet size");
        }
        if self.max_quantity == 0 || self.max_external_utility == 0 {
            return bad("maximum quantity and external utility must be positive");
        }
        if !(self.item_skew.is_finite() && self.item_skew >= 0.0) {
            return bad("item skew must be a non-negative number");
        }
        if self.num_patterns > 0 {
            if !at_least_one(self.mean_pattern_itemsets) || !at_least_one(self.mean_pattern_items) {
                return bad("pattern means must be at least 1");
            }
            if !(self.patterns_per_sequence.is_finite() && self.patterns_per_sequence >= 0.0) {
                return bad("patterns per sequence must be a non-negative number");
            }
            if !(0.0..1.0).contains(&self.corruption) {
                return bad("corruption must be in [0, 1)");
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum DatagenError {
    #[error("invalid generator parameter: {0}")]
    InvalidParameter(String),
    #[error("maximum quantity or utility does not fit the utility type")]
    ValueOutOfRange,
    #[error(transparent)]
    Database(#[from] DatabaseError),
}

/// One plus a Poisson variable, so the mean is `mean`.
fn count(rng: &mut ChaCha8Rng, mean: f64) -> usize {
    if mean <= 1.0 {
        return 1;
    }
    let extra: f64 = Poisson::new(mean - 1.0).expect("positive rate").sample(rng);
    1 + extra as usize
}

struct ItemSampler {
    alphabet: u32,
    weights: Option<WeightedIndex<f64>>,
}

impl ItemSampler {
    fn new(alphabet: u32, skew: f64) -> Self {
        let weights = (skew > 0.0)
            .then(|| WeightedIndex::new((1..=alphabet).map(|k| (k as f64).powf(-skew))).expect("positive weights"));
        Self { alphabet, weights }
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> u32 {
        match &self.weights {
            Some(dist) => dist.sample(rng) as u32 + 1,
            None => rng.random_range(1..=self.alphabet),
        }
    }

    /// A fresh id not in `used`, or `None` once the alphabet is exhausted.
    fn draw_unused(&self, rng: &mut ChaCha8Rng, used: &mut HashSet<u32>) -> Option<u32> {
        if used.len() >= self.alphabet as usize {
            return None;
        }
        loop {
            let id = self.draw(rng);
            if used.insert(id) {
                return Some(id);
            }
        }
    }
}

/// Itemsets of distinct ids.
type Pattern = Vec<Vec<u32>>;

fn pattern_pool(params: &GeneratorParams, sampler: &ItemSampler, rng: &mut ChaCha8Rng) -> Vec<Pattern> {
    (0..params.num_patterns)
        .map(|_| {
            let mut used = HashSet::new();
            (0..count(rng, params.mean_pattern_itemsets))
                .map(|_| {
                    (0..count(rng, params.mean_pattern_items))
                        .filter_map(|_| sampler.draw_unused(rng, &mut used))
                        .collect::<Vec<_>>()
                })
                .filter(|set| !set.is_empty())
                .collect()
        })
        .collect()
}

/// Deterministic database for `params`. Every item of the alphabet gets an
/// external utility, whether or not it occurs.
pub fn generate<U: Utility>(params: &GeneratorParams) -> Result<QuantitativeSequenceDatabase<U>, DatagenError> {
    params.validate()?;
    let value = |v: u32| U::from_u64(v as u64).filter(|x| !x.is_zero()).ok_or(DatagenError::ValueOutOfRange);
    value(params.max_quantity)?;
    value(params.max_external_utility)?;

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let eu = ExternalUtilityTable::new(
        (1..=params.alphabet_size)
            .map(|id| {
                let v = rng.random_range(1..=params.max_external_utility);
                (Item::new(id).expect("ids start at 1"), value(v).expect("checked above"))
            })
            .collect::<Vec<_>>(),
    )?;

    let sampler = ItemSampler::new(params.alphabet_size, params.item_skew);
    let patterns = pattern_pool(params, &sampler, &mut rng);
    let pick = (!patterns.is_empty()).then(|| {
        let weights: Vec<f64> = patterns.iter().map(|_| rng.sample::<f64, _>(Exp1)).collect();
        WeightedIndex::new(weights).expect("positive weights")
    });
    let embedded = (params.patterns_per_sequence > 0.0)
        .then(|| Poisson::new(params.patterns_per_sequence).expect("positive rate"));

    let mut sequences = Vec::with_capacity(params.num_sequences);
    for n in 0..params.num_sequences {
        let sizes: Vec<usize> = (0..count(&mut rng, params.mean_itemsets_per_sequence))
            .map(|_| count(&mut rng, params.mean_items_per_itemset))
            .collect();
        let mut sets: Vec<Vec<u32>> = vec![Vec::new(); sizes.len()];
        let mut used = HashSet::new();

        if let (Some(pick), Some(embedded)) = (&pick, &embedded) {
            let k: f64 = embedded.sample(&mut rng);
            for _ in 0..k as usize {
                let pattern = &patterns[pick.sample(&mut rng)];
                if pattern.len() > sets.len() {
                    continue;
                }
                let mut at = index::sample(&mut rng, sets.len(), pattern.len()).into_vec();
                at.sort_unstable();
                for (set, &pos) in pattern.iter().zip(&at) {
                    for &id in set {
                        if rng.random::<f64>() >= params.corruption && used.insert(id) {
                            sets[pos].push(id);
                        }
                    }
                }
            }
        }
        for (set, &size) in sets.iter_mut().zip(&sizes) {
            while set.len() < size {
                match sampler.draw_unused(&mut rng, &mut used) {
                    Some(id) => set.push(id),
                    None => break,
                }
            }
        }

        let itemsets = sets
            .into_iter()
            .filter(|set| !set.is_empty())
            .map(|set| {
                set.into_iter()
                    .map(|id| {
                        let q = rng.random_range(1..=params.max_quantity);
                        (Item::new(id).expect("ids start at 1"), value(q).expect("checked above"))
                    })
                    .collect()
            })
            .collect();
        sequences.push(Sequence::new(Sid(n as u32 + 1), itemsets)?);
    }
    Ok(QuantitativeSequenceDatabase::new(sequences, eu)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn means(db: &QuantitativeSequenceDatabase<u64>) -> (f64, f64) {
        let itemsets: usize = db.sequences().iter().map(|s| s.itemsets().len()).sum();
        let items: usize = db.sequences().iter().map(|s| s.entries().count()).sum();
        (itemsets as f64 / db.len() as f64, items as f64 / itemsets as f64)
    }

    #[test]
    fn deterministic() {
        let p = GeneratorParams { seed: 9, ..GeneratorParams::default() };
        let a: QuantitativeSequenceDatabase<u64> = generate(&p).unwrap();
        let b: QuantitativeSequenceDatabase<u64> = generate(&p).unwrap();
        assert_eq!(a, b);
        let c: QuantitativeSequenceDatabase<u64> = generate(&GeneratorParams { seed: 10, ..p }).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn empty() {
        let db: QuantitativeSequenceDatabase<u64> =
            generate(&GeneratorParams { num_sequences: 0, ..GeneratorParams::default() }).unwrap();
        assert!(db.is_empty());
        assert_eq!(db.external_utilities().len(), 20);
    }

    #[test]
    fn rejects_bad_parameters() {
        for p in [
            GeneratorParams { alphabet_size: 0, ..GeneratorParams::default() },
            GeneratorParams { mean_items_per_itemset: 0.5, ..GeneratorParams::default() },
            GeneratorParams { mean_items_per_itemset: 30.0, ..GeneratorParams::default() },
            GeneratorParams { max_quantity: 0, ..GeneratorParams::default() },
            GeneratorParams { item_skew: f64::NAN, ..GeneratorParams::default() },
        ] {
            assert!(matches!(generate::<u64>(&p), Err(DatagenError::InvalidParameter(_))), "{p:?}");
        }
        let p = GeneratorParams { max_quantity: 300, ..GeneratorParams::default() };
        assert!(matches!(generate::<u8>(&p), Err(DatagenError::ValueOutOfRange)));
    }

    #[test]
    fn small_alphabet_is_clipped() {
        let p = GeneratorParams {
            alphabet_size: 3,
            mean_itemsets_per_sequence: 6.0,
            mean_items_per_itemset: 2.0,
            num_sequences: 200,
            ..GeneratorParams::default()
        };
        let db: QuantitativeSequenceDatabase<u64> = generate(&p).unwrap();
        assert!(db.sequences().iter().all(|s| s.entries().count() <= 3));
    }

    #[test]
    fn skewed_draws_favour_small_ids() {
        let p =
            GeneratorParams { num_sequences: 300, alphabet_size: 200, item_skew: 1.0, ..GeneratorParams::default() };
        let db: QuantitativeSequenceDatabase<u64> = generate(&p).unwrap();
        let low = db.positions(Item::new(1).unwrap()).len();
        let high = db.positions(Item::new(200).unwrap()).len();
        assert!(low > 5 * high.max(1), "{low} vs {high}");
    }

    #[test]
    fn syn10k_shape() {
        let p = GeneratorParams { num_sequences: 2000, ..GeneratorParams::syn10k(1) };
        let db: QuantitativeSequenceDatabase<u64> = generate(&p).unwrap();
        let (itemsets, items) = means(&db);
        assert!((itemsets / 27.11 - 1.0).abs() < 0.05, "{itemsets}");
        assert!((items / 4.35 - 1.0).abs() < 0.05, "{items}");
    }
}
