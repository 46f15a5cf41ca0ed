use std::collections::BTreeMap;
use std::io::Write;

use crate::decompose::{DecompositionResult, SpanCore};
use crate::graph::Timestamp;

/// Count and mean size of the cores sharing one key (order or span length).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupStat {
    pub key: u32,
    pub count: usize,
    pub mean_size: f64,
}

fn group_by(cores: &[SpanCore], key: impl Fn(&SpanCore) -> u32) -> Vec<GroupStat> {
    let mut groups: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
    for c in cores {
        let slot = groups.entry(key(c)).or_default();
        slot.0 += 1;
        slot.1 += c.size();
    }
    groups
        .into_iter()
        .map(|(key, (count, total))| GroupStat {
            key,
            count,
            mean_size: total as f64 / count as f64,
        })
        .collect()
}

pub fn stats_by_order(result: &DecompositionResult) -> Vec<GroupStat> {
    group_by(&result.cores, |c| c.order)
}

/// Grouped by `|Δ|`, the number of timestamps spanned.
pub fn stats_by_span(result: &DecompositionResult) -> Vec<GroupStat> {
    group_by(&result.cores, |c| c.span.len())
}

/// One `(t_s, |Δ|)` cell holding the largest order among cores there.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridCell {
    pub t_s: Timestamp,
    pub span: u32,
    pub k: u32,
}

/// Non-empty cells sorted by `(t_s, span)`; spans shorter than `min_span`
/// are left out.
pub fn activity_grid(result: &DecompositionResult, min_span: u32) -> Vec<GridCell> {
    let mut cells: BTreeMap<(Timestamp, u32), u32> = BTreeMap::new();
    for c in result.cores.iter().filter(|c| c.span.len() >= min_span) {
        let k = cells.entry((c.span.start(), c.span.len())).or_default();
        *k = (*k).max(c.order);
    }
    cells
        .into_iter()
        .map(|((t_s, span), k)| GridCell { t_s, span, k })
        .collect()
}

/// CSV with header `<key>,count,mean_size`.
pub fn write_group_stats<W: Write>(mut w: W, key: &str, stats: &[GroupStat]) -> std::io::Result<()> {
    writeln!(w, "{key},count,mean_size")?;
    for s in stats {
        writeln!(w, "{},{},{}", s.key, s.count, s.mean_size)?;
    }
    Ok(())
}

pub fn write_grid<W: Write>(mut w: W, cells: &[GridCell]) -> std::io::Result<()> {
    writeln!(w, "t_s,span,k")?;
    for c in cells {
        writeln!(w, "{},{},{}", c.t_s, c.span, c.k)?;
    }
    Ok(())
}
