use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use husr_core::datagen::{generate, GeneratorParams};
use husr_core::ingest::{read_database, write_rules, write_sequences, write_utilities};
use husr_core::{mine, Database, MinConfidence, MiningStats, StrategyConfig};

use crate::verify::{verify_with, VerifyError, VerifyOutcome};
use crate::{BenchArgs, Command, GenArgs, InputArgs, MineArgs, VerifyArgs, EXIT_DIVERGENCE, EXIT_OK, EXIT_USAGE};

pub(crate) fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Mine(a) => cmd_mine(a),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Bench(a) => cmd_bench(a, out),
        Command::Gen(a) => cmd_gen(a),
    }
}

fn load(data: &InputArgs) -> Result<Database> {
    read_database(&data.input, &data.utilities)
        .with_context(|| format!("reading {} with {}", data.input.display(), data.utilities.display()))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?))
}

/// Stats document: one `key=value` line per entry.
pub fn render_stats(strategy: StrategyConfig, minutil: u64, minconf: MinConfidence, stats: &MiningStats) -> String {
    let mut text = format!("variant={strategy}\nminutil={minutil}\nminconf={minconf}\n");
    for (key, value) in stats.entries() {
        text.push_str(&format!("{key}={value}\n"));
    }
    text
}

fn cmd_mine(a: MineArgs) -> Result<i32> {
    let db = load(&a.data)?;
    let outcome = mine(&db, a.minutil, a.minconf, a.strategy)?;
    let mut sink = create(&a.output)?;
    write_rules(&outcome.rules, &mut sink)?;
    sink.flush()?;
    if let Some(path) = &a.stats {
        let mut sink = create(path)?;
        sink.write_all(render_stats(a.strategy, a.minutil, a.minconf, &outcome.stats).as_bytes())?;
        sink.flush()?;
    }
    Ok(EXIT_OK)
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let db = load(&a.data)?;
    let result = verify_with(&db, a.minutil, a.minconf, |db, minutil, minconf, cfg| {
        mine(db, minutil, minconf, cfg).map(|o| o.rules)
    });
    match result {
        Ok(VerifyOutcome::Identical { rules }) => {
            writeln!(out, "identical: {rules} rules under every preset")?;
            Ok(EXIT_OK)
        }
        Ok(VerifyOutcome::Diverged(d)) => {
            writeln!(out, "divergence: {d}")?;
            Ok(EXIT_DIVERGENCE)
        }
        Err(VerifyError::Guard(e)) => {
            writeln!(out, "guard: {e}")?;
            Ok(EXIT_USAGE)
        }
        Err(e) => Err(e.into()),
    }
}

const BENCH_COLUMNS: [&str; 11] = [
    "rules_found",
    "seeds",
    "expansions",
    "candidates",
    "pruned_by_usrp",
    "pruned_by_reucp",
    "pruned_by_leeup",
    "pruned_by_reeup",
    "pruned_by_lersup",
    "pruned_by_rersup",
    "elapsed_ms",
];

fn cmd_bench(a: BenchArgs, out: &mut dyn Write) -> Result<i32> {
    let db = load(&a.data)?;
    let mut table = format!("variant\tminutil\t{}\n", BENCH_COLUMNS.join("\t"));
    for &strategy in &a.strategies {
        for &minutil in &a.minutil_list {
            let stats = mine(&db, minutil, a.minconf, strategy)?.stats;
            let entries = stats.entries();
            let cells: Vec<String> = BENCH_COLUMNS
                .iter()
                .map(|c| entries.iter().find(|(k, _)| k == c).map_or(0, |(_, v)| *v).to_string())
                .collect();
            table.push_str(&format!("{strategy}\t{minutil}\t{}\n", cells.join("\t")));
        }
    }
    match &a.output {
        Some(path) => {
            let mut sink = create(path)?;
            sink.write_all(table.as_bytes())?;
            sink.flush()?;
        }
        None => out.write_all(table.as_bytes())?,
    }
    Ok(EXIT_OK)
}

fn cmd_gen(a: GenArgs) -> Result<i32> {
    let params = GeneratorParams {
        num_sequences: a.num_sequences,
        alphabet_size: a.alphabet,
        mean_itemsets_per_sequence: a.mean_itemsets,
        mean_items_per_itemset: a.mean_items,
        max_quantity: a.max_quantity,
        max_external_utility: a.max_utility,
        item_skew: a.item_skew,
        num_patterns: a.patterns,
        mean_pattern_itemsets: a.pattern_itemsets,
        mean_pattern_items: a.pattern_items,
        patterns_per_sequence: a.patterns_per_sequence,
        corruption: a.corruption,
        seed: a.seed,
    };
    let db: Database = generate(&params)?;
    let mut sink = create(&a.output)?;
    write_sequences(&db, &mut sink)?;
    sink.flush()?;
    let mut sink = create(&a.utilities_output)?;
    write_utilities(db.external_utilities(), &mut sink)?;
    sink.flush()?;
    Ok(EXIT_OK)
}
