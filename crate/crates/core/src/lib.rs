//! High-utility sequential rule mining over quantitative sequence databases.
//!
//! Types are generic over an unsigned integer utility; the aliases below fix
//! it to `u64`.

pub mod datagen;
pub mod ingest;
pub mod miner;
pub mod model;
pub mod num;
pub mod oracle;
pub mod preprocess;

pub use miner::{
    generate_11_rules, mine, mine_observed, MineError, MiningOutcome, MiningStats, Preset, SeedRule, StrategyConfig,
};
pub use model::{
    ExternalUtilityTable, Item, MinConfidence, QuantitativeSequenceDatabase, Sequence, SequentialRule, Sid,
};
pub use num::Utility;

pub type Database = QuantitativeSequenceDatabase<u64>;
pub type Rule = SequentialRule<u64>;
pub type Outcome = MiningOutcome<u64>;
pub type UtilityTable = ExternalUtilityTable<u64>;
pub type ReucMap64 = preprocess::ReucMap<u64>;
