//! Categorical purity of maximal span-cores over time.

use std::collections::HashMap;
use std::io::{Read, Write};

use crate::decompose::{DecompositionResult, SpanCore};
use crate::error::{Error, Result};
use crate::graph::{LabelMap, Timestamp, VertexId};

/// Per-vertex categorical attributes loaded from `label,attr1,attr2,...`.
#[derive(Debug, Clone, Default)]
pub struct AttributeTable {
    columns: Vec<String>,
    values: HashMap<VertexId, Vec<String>>,
    /// Rows whose label is not a known vertex.
    pub unknown_rows: usize,
}

impl AttributeTable {
    pub fn new(columns: Vec<String>) -> Self {
        AttributeTable {
            columns,
            ..Default::default()
        }
    }

    pub fn insert(&mut self, u: VertexId, values: Vec<String>) {
        assert_eq!(values.len(), self.columns.len(), "one value per attribute column");
        self.values.insert(u, values);
    }

    /// Reads a CSV with a header row; the first column holds vertex labels
    /// resolved through `labels`.
    pub fn from_csv<R: Read>(reader: R, labels: &LabelMap) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let columns: Vec<String> = rdr.headers()?.iter().skip(1).map(str::to_owned).collect();
        let mut table = AttributeTable::new(columns);
        for row in rdr.records() {
            let row = row?;
            let Some(label) = row.get(0) else { continue };
            match labels.id(label) {
                Some(u) => {
                    let values = row.iter().skip(1).map(str::to_owned).collect();
                    table.values.insert(u, values);
                }
                None => table.unknown_rows += 1,
            }
        }
        Ok(table)
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    fn column(&self, attribute: &str) -> Result<usize> {
        self.columns
            .iter()
            .position(|c| c == attribute)
            .ok_or_else(|| Error::UnknownAttribute(attribute.to_owned()))
    }

    pub fn value(&self, u: VertexId, column: usize) -> Option<&str> {
        self.values
            .get(&u)
            .and_then(|v| v.get(column))
            .map(String::as_str)
            .filter(|v| !v.is_empty())
    }
}

/// Share of the most common category among members that have a value, and
/// how many members were skipped for lacking one. `None` when no member has
/// a value.
pub fn core_purity(core: &SpanCore, attrs: &AttributeTable, attribute: &str) -> Result<(Option<f64>, usize)> {
    let column = attrs.column(attribute)?;
    let mut counts: HashMap<&str, usize> = HashMap::new();
    let mut skipped = 0;
    for &u in &core.members {
        match attrs.value(u, column) {
            Some(v) => *counts.entry(v).or_default() += 1,
            None => skipped += 1,
        }
    }
    let valued: usize = counts.values().sum();
    let top = counts.values().copied().max().unwrap_or(0);
    Ok(((valued > 0).then(|| top as f64 / valued as f64), skipped))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PurityCurve {
    /// Index `t`; `None` where no core spans `t`.
    pub values: Vec<Option<f64>>,
    pub skipped_members: usize,
}

/// Mean purity of the cores spanning each timestamp in `[0, horizon]`.
pub fn purity_curve(
    maximal: &DecompositionResult,
    attrs: &AttributeTable,
    attribute: &str,
    horizon: Timestamp,
) -> Result<PurityCurve> {
    attrs.column(attribute)?;
    let len = horizon as usize + 1;
    let mut sums = vec![0.0; len];
    let mut counts = vec![0usize; len];
    let mut skipped_members = 0;
    for core in &maximal.cores {
        let (purity, skipped) = core_purity(core, attrs, attribute)?;
        skipped_members += skipped;
        let Some(p) = purity else { continue };
        for t in core.span.timestamps().take_while(|&t| t <= horizon) {
            sums[t as usize] += p;
            counts[t as usize] += 1;
        }
    }
    let values = sums
        .into_iter()
        .zip(counts)
        .map(|(s, c)| (c > 0).then(|| s / c as f64))
        .collect();
    Ok(PurityCurve {
        values,
        skipped_members,
    })
}

/// CSV `t,purity`; absent values are written as an empty field.
pub fn write_purity<W: Write>(mut w: W, curve: &PurityCurve) -> std::io::Result<()> {
    writeln!(w, "t,purity")?;
    for (t, v) in curve.values.iter().enumerate() {
        match v {
            Some(p) => writeln!(w, "{t},{p}")?,
            None => writeln!(w, "{t},")?,
        }
    }
    Ok(())
}
