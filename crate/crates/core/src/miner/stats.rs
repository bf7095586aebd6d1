use std::time::Duration;

/// Work counters of one mining run. Everything except `elapsed` is
/// deterministic for a given input and configuration.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MiningStats {
    /// Sequences in the input database.
    pub sequences: usize,
    /// Distinct items in the input database.
    pub items: usize,
    /// Items removed by the first elimination pass.
    pub items_removed_uip: usize,
    /// Items removed by later passes of iterated elimination.
    pub items_removed_reurp: usize,
    pub reucm_entries: usize,
    /// 1*1 rules kept for expansion.
    pub seeds: usize,
    /// Calls of the left or right expansion procedure.
    pub expansions: usize,
    /// Rules whose expansion table was built, seeds included.
    pub candidates: usize,
    pub pruned_by_usrp: usize,
    pub pruned_by_reucp: usize,
    pub pruned_by_leeup: usize,
    pub pruned_by_reeup: usize,
    pub pruned_by_lersup: usize,
    pub pruned_by_rersup: usize,
    pub rules_found: usize,
    /// Largest number of table rows alive at once.
    pub peak_table_elements: usize,
    pub elapsed: Duration,
}

impl MiningStats {
    /// Copy with the timing zeroed, for comparisons.
    pub fn counters(&self) -> MiningStats {
        MiningStats { elapsed: Duration::ZERO, ..self.clone() }
    }

    /// `(key, value)` pairs of every counter in a fixed order.
    pub fn entries(&self) -> Vec<(&'static str, u128)> {
        vec![
            ("sequences", self.sequences as u128),
            ("items", self.items as u128),
            ("rules_found", self.rules_found as u128),
            ("seeds", self.seeds as u128),
            ("expansions", self.expansions as u128),
            ("candidates", self.candidates as u128),
            ("pruned_by_usrp", self.pruned_by_usrp as u128),
            ("pruned_by_reucp", self.pruned_by_reucp as u128),
            ("pruned_by_leeup", self.pruned_by_leeup as u128),
            ("pruned_by_reeup", self.pruned_by_reeup as u128),
            ("pruned_by_lersup", self.pruned_by_lersup as u128),
            ("pruned_by_rersup", self.pruned_by_rersup as u128),
            ("items_removed_uip", self.items_removed_uip as u128),
            ("items_removed_reurp", self.items_removed_reurp as u128),
            ("reucm_entries", self.reucm_entries as u128),
            ("peak_table_elements", self.peak_table_elements as u128),
            ("elapsed_ms", self.elapsed.as_millis()),
        ]
    }
}
