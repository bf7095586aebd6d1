//! Text formats for databases, external utilities and mined rules.
//!
//! Sequence file: one sequence per line. Items are written `ITEM:QTY`,
//! itemsets are closed by `-1` and the line ends with `-2`:
//!
//! ```text
//! 1:1 -1 2:2 -1 3:1 7:1 -1 -2
//! ```
//!
//! Utility file: one `ITEM UTILITY` pair per line.
//!
//! Rule file: one rule per line,
//! `1 ==> 3 7 #SUP: 2 #CONF: 1.0000 #UTIL: 14`.
//!
//! Blank lines are ignored in both input files. Sequences are numbered from
//! 1 in file order.

use std::collections::HashSet;
use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use thiserror::Error;

use crate::model::{
    DatabaseError, ExternalUtilityTable, Item, Itemset, QuantitativeSequenceDatabase, Sequence, SequentialRule, Sid,
};
use crate::num::Utility;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileKind {
    Sequences,
    Utilities,
}

impl fmt::Display for FileKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FileKind::Sequences => "sequence file",
            FileKind::Utilities => "utility file",
        })
    }
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("sequence file line {line}: item {item} occurs more than once in sequence {sid}")]
    DuplicateItemInSequence { line: usize, sid: Sid, item: Item },
    #[error("sequence file line {line}: item {item} has no external utility")]
    MissingExternalUtility { line: usize, item: Item },
    #[error("{file} line {line}, column {column}: {message}")]
    MalformedLine { file: FileKind, line: usize, column: usize, message: String },
    #[error("{file} line {line}, column {column}: quantities and utilities must be positive")]
    NonPositiveQuantityOrUtility { file: FileKind, line: usize, column: usize },
    #[error("database: {0}")]
    Database(#[from] DatabaseError),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
}

/// Whitespace-separated tokens with their 1-based column.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = line;
    let mut offset = 0;
    std::iter::from_fn(move || {
        let start = rest.find(|c: char| !c.is_whitespace())?;
        let len = rest[start..].find(char::is_whitespace).unwrap_or(rest.len() - start);
        let column = line[..offset + start].chars().count() + 1;
        let tok = &rest[start..start + len];
        offset += start + len;
        rest = &rest[start + len..];
        Some((column, tok))
    })
}

struct LineCtx {
    file: FileKind,
    line: usize,
}

impl LineCtx {
    fn malformed(&self, column: usize, message: impl Into<String>) -> IngestError {
        IngestError::MalformedLine { file: self.file, line: self.line, column, message: message.into() }
    }

    fn item(&self, column: usize, text: &str) -> Result<Item, IngestError> {
        text.parse::<u32>()
            .ok()
            .and_then(Item::new)
            .ok_or_else(|| self.malformed(column, format!("invalid item id `{text}`")))
    }

    fn positive<U: Utility>(&self, column: usize, text: &str) -> Result<U, IngestError> {
        if let Ok(v) = text.parse::<i128>() {
            if v <= 0 {
                return Err(IngestError::NonPositiveQuantityOrUtility { file: self.file, line: self.line, column });
            }
        }
        text.parse::<U>().map_err(|_| self.malformed(column, format!("invalid value `{text}`")))
    }
}

/// Parses the external utility table.
pub fn parse_utilities<U: Utility>(text: &str) -> Result<ExternalUtilityTable<U>, IngestError> {
    let mut entries = Vec::new();
    let mut seen = HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let ctx = LineCtx { file: FileKind::Utilities, line: idx + 1 };
        let toks: Vec<_> = tokens(raw).collect();
        match toks.as_slice() {
            [] => continue,
            [(ci, item), (cu, utility)] => {
                let item = ctx.item(*ci, item)?;
                let utility = ctx.positive::<U>(*cu, utility)?;
                if !seen.insert(item) {
                    return Err(ctx.malformed(*ci, format!("item {item} listed twice")));
                }
                entries.push((item, utility));
            }
            [_] => return Err(ctx.malformed(raw.chars().count() + 1, "expected `ITEM UTILITY`")),
            [_, _, (c, _), ..] => return Err(ctx.malformed(*c, "unexpected trailing token")),
        }
    }
    Ok(ExternalUtilityTable::new(entries)?)
}

fn parse_sequence_line<U: Utility>(
    ctx: &LineCtx,
    raw: &str,
    sid: Sid,
    eu: &ExternalUtilityTable<U>,
) -> Result<Sequence<U>, IngestError> {
    let mut itemsets: Vec<Itemset<U>> = Vec::new();
    let mut current: Itemset<U> = Vec::new();
    let mut seen = HashSet::new();
    let mut closed = false;
    for (column, tok) in tokens(raw) {
        if closed {
            return Err(ctx.malformed(column, "token after end-of-sequence marker `-2`"));
        }
        match tok {
            "-1" => {
                if current.is_empty() {
                    return Err(ctx.malformed(column, "empty itemset"));
                }
                itemsets.push(std::mem::take(&mut current));
            }
            "-2" => {
                if !current.is_empty() {
                    itemsets.push(std::mem::take(&mut current));
                }
                closed = true;
            }
            _ => {
                let (item_text, qty_text) = tok
                    .split_once(':')
                    .ok_or_else(|| ctx.malformed(column, format!("expected `ITEM:QTY`, got `{tok}`")))?;
                let item = ctx.item(column, item_text)?;
                let qty = ctx.positive::<U>(column + item_text.chars().count() + 1, qty_text)?;
                if !seen.insert(item) {
                    return Err(IngestError::DuplicateItemInSequence { line: ctx.line, sid, item });
                }
                if eu.get(item).is_none() {
                    return Err(IngestError::MissingExternalUtility { line: ctx.line, item });
                }
                current.push((item, qty));
            }
        }
    }
    if !closed {
        return Err(ctx.malformed(raw.chars().count() + 1, "missing end-of-sequence marker `-2`"));
    }
    Ok(Sequence::new(sid, itemsets)?)
}

/// Parses a sequence file against a utility file.
pub fn parse_database<U: Utility>(
    sequence_text: &str,
    utility_text: &str,
) -> Result<QuantitativeSequenceDatabase<U>, IngestError> {
    let eu = parse_utilities::<U>(utility_text)?;
    let mut sequences = Vec::new();
    for (idx, raw) in sequence_text.lines().enumerate() {
        if raw.trim().is_empty() {
            continue;
        }
        let ctx = LineCtx { file: FileKind::Sequences, line: idx + 1 };
        let sid = Sid(sequences.len() as u32 + 1);
        sequences.push(parse_sequence_line(&ctx, raw, sid, &eu)?);
    }
    Ok(QuantitativeSequenceDatabase::new(sequences, eu)?)
}

fn read(path: &Path) -> Result<String, IngestError> {
    fs::read_to_string(path).map_err(|source| IngestError::Io { path: path.display().to_string(), source })
}

pub fn read_database<U: Utility>(
    sequences: impl AsRef<Path>,
    utilities: impl AsRef<Path>,
) -> Result<QuantitativeSequenceDatabase<U>, IngestError> {
    parse_database(&read(sequences.as_ref())?, &read(utilities.as_ref())?)
}

/// Writes sequences in file order. Sids are not written.
pub fn write_sequences<U: Utility>(db: &QuantitativeSequenceDatabase<U>, sink: &mut impl Write) -> io::Result<()> {
    for s in db.sequences() {
        let mut line = String::new();
        for set in s.itemsets() {
            for (item, q) in set {
                line.push_str(&format!("{item}:{q} "));
            }
            line.push_str("-1 ");
        }
        line.push_str("-2");
        writeln!(sink, "{line}")?;
    }
    Ok(())
}

/// Writes the utility table in ascending item order.
pub fn write_utilities<U: Utility>(eu: &ExternalUtilityTable<U>, sink: &mut impl Write) -> io::Result<()> {
    for (item, u) in eu.iter() {
        writeln!(sink, "{item} {u}")?;
    }
    Ok(())
}

/// `support / antecedent_support` with four decimals, rounded half up.
pub fn format_confidence(support: usize, antecedent_support: usize) -> String {
    if antecedent_support == 0 {
        return "0.0000".to_string();
    }
    let (num, den) = (support as u128, antecedent_support as u128);
    let scaled = (2 * num * 10_000 + den) / (2 * den);
    format!("{}.{:04}", scaled / 10_000, scaled % 10_000)
}

pub fn format_rule<U: Utility>(rule: &SequentialRule<U>) -> String {
    let join = |xs: &[Item]| xs.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ");
    format!(
        "{} ==> {} #SUP: {} #CONF: {} #UTIL: {}",
        join(&rule.antecedent),
        join(&rule.consequent),
        rule.support_count,
        format_confidence(rule.support_count, rule.antecedent_support_count),
        rule.utility
    )
}

/// Writes rules sorted by antecedent, then consequent.
pub fn write_rules<U: Utility>(rules: &[SequentialRule<U>], sink: &mut impl Write) -> io::Result<()> {
    let mut sorted: Vec<&SequentialRule<U>> = rules.iter().collect();
    sorted.sort_by(|a, b| (&a.antecedent, &a.consequent).cmp(&(&b.antecedent, &b.consequent)));
    for rule in sorted {
        writeln!(sink, "{}", format_rule(rule))?;
    }
    Ok(())
}
