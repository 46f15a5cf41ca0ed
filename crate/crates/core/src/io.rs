//! Core-file serialization (CSV and JSON lines) and the metrics record.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::decompose::{DecompositionResult, RunMetrics, SpanCore};
use crate::error::{Error, Result};
use crate::graph::{Interval, LabelMap, VertexId};

pub const CORES_CSV_HEADER: &str = "k,t_s,t_e,size,members";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoreFormat {
    Csv,
    Jsonl,
}

impl CoreFormat {
    pub fn extension(self) -> &'static str {
        match self {
            CoreFormat::Csv => "csv",
            CoreFormat::Jsonl => "jsonl",
        }
    }

    /// Guesses from a file name; anything but `.jsonl`/`.json` is CSV.
    pub fn from_path(path: &std::path::Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("jsonl") | Some("json") => CoreFormat::Jsonl,
            _ => CoreFormat::Csv,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct CoreRecord {
    k: u32,
    t_s: u32,
    t_e: u32,
    members: Vec<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    maximal: bool,
}

fn member_labels(core: &SpanCore, labels: &LabelMap) -> Vec<String> {
    let mut names: Vec<String> = core.members.iter().map(|&u| labels.label(u).to_owned()).collect();
    names.sort_unstable();
    names
}

/// Writes one record per core in `(t_s, t_e, k)` order.
pub fn write_cores<W: Write>(
    mut w: W,
    result: &DecompositionResult,
    labels: &LabelMap,
    format: CoreFormat,
    maximal: bool,
) -> Result<()> {
    let mut cores: Vec<&SpanCore> = result.cores.iter().collect();
    cores.sort_by_key(|c| c.sort_key());
    match format {
        CoreFormat::Csv => {
            writeln!(w, "{CORES_CSV_HEADER}")?;
            for c in cores {
                writeln!(
                    w,
                    "{},{},{},{},{}",
                    c.order,
                    c.span.start(),
                    c.span.end(),
                    c.size(),
                    member_labels(c, labels).join(";")
                )?;
            }
        }
        CoreFormat::Jsonl => {
            for c in cores {
                let record = CoreRecord {
                    k: c.order,
                    t_s: c.span.start(),
                    t_e: c.span.end(),
                    members: member_labels(c, labels),
                    maximal,
                };
                serde_json::to_writer(&mut w, &record)?;
                writeln!(w)?;
            }
        }
    }
    Ok(())
}

/// Reads a core file, interning member labels into `labels`.
pub fn read_cores<R: BufRead>(
    reader: R,
    format: CoreFormat,
    labels: &mut LabelMap,
) -> Result<DecompositionResult> {
    let mut cores = Vec::new();
    let mut push = |line: usize, k: u32, t_s: u32, t_e: u32, names: &[&str]| -> Result<()> {
        let span = Interval::try_new(t_s, t_e).ok_or_else(|| Error::Malformed {
            line,
            reason: format!("t_s {t_s} exceeds t_e {t_e}"),
        })?;
        if k == 0 || names.is_empty() {
            return Err(Error::Malformed {
                line,
                reason: "cores need k >= 1 and at least one member".into(),
            });
        }
        let mut members: Vec<VertexId> = names.iter().map(|n| labels.intern(n)).collect();
        members.sort_unstable();
        members.dedup();
        cores.push(SpanCore::new(k, span, members));
        Ok(())
    };

    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        match format {
            CoreFormat::Csv => {
                if text == CORES_CSV_HEADER {
                    continue;
                }
                let fields: Vec<&str> = text.split(',').collect();
                let malformed = |reason: &str| Error::Malformed {
                    line: lineno,
                    reason: reason.to_owned(),
                };
                if fields.len() != 5 {
                    return Err(malformed("expected 5 fields"));
                }
                let num = |s: &str| s.parse::<u32>().map_err(|_| malformed("bad integer"));
                let (k, t_s, t_e, size) = (num(fields[0])?, num(fields[1])?, num(fields[2])?, num(fields[3])?);
                let names: Vec<&str> = fields[4].split(';').filter(|s| !s.is_empty()).collect();
                if names.len() != size as usize {
                    return Err(malformed("size does not match member count"));
                }
                push(lineno, k, t_s, t_e, &names)?;
            }
            CoreFormat::Jsonl => {
                let record: CoreRecord = serde_json::from_str(text).map_err(|e| Error::Malformed {
                    line: lineno,
                    reason: e.to_string(),
                })?;
                let names: Vec<&str> = record.members.iter().map(String::as_str).collect();
                push(lineno, record.k, record.t_s, record.t_e, &names)?;
            }
        }
    }
    Ok(DecompositionResult::from_cores(cores))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricsRecord {
    pub processed_vertices: u64,
    pub cores: u64,
    pub elapsed_ms: f64,
}

impl From<&RunMetrics> for MetricsRecord {
    fn from(m: &RunMetrics) -> Self {
        MetricsRecord {
            processed_vertices: m.processed_vertices,
            cores: m.cores_emitted,
            elapsed_ms: m.elapsed.as_secs_f64() * 1e3,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::span_cores;
    use crate::graph::tests::g_ex;

    #[test]
    fn csv_layout() {
        let g = g_ex();
        let r = span_cores(&g);
        let mut out = Vec::new();
        write_cores(&mut out, &r, g.labels(), CoreFormat::Csv, false).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 10);
        assert_eq!(lines[0], CORES_CSV_HEADER);
        assert_eq!(lines[1], "1,0,0,4,a;b;c;d");
        assert_eq!(lines[9], "1,2,2,2,a;b");
    }

    #[test]
    fn jsonl_layout() {
        let g = g_ex();
        let r = crate::maximal::maximal_span_cores(&g);
        let mut out = Vec::new();
        write_cores(&mut out, &r, g.labels(), CoreFormat::Jsonl, true).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(
            text,
            "{\"k\":2,\"t_s\":0,\"t_e\":1,\"members\":[\"a\",\"b\",\"c\"],\"maximal\":true}\n\
             {\"k\":1,\"t_s\":0,\"t_e\":2,\"members\":[\"a\",\"b\"],\"maximal\":true}\n"
        );
    }

    #[test]
    fn read_back_both_formats() {
        let g = g_ex();
        let r = span_cores(&g);
        for format in [CoreFormat::Csv, CoreFormat::Jsonl] {
            let mut out = Vec::new();
            write_cores(&mut out, &r, g.labels(), format, false).unwrap();
            let mut labels = g.labels().clone();
            let back = read_cores(out.as_slice(), format, &mut labels).unwrap();
            assert_eq!(back.cores, r.cores);
            assert_eq!(&labels, g.labels());
        }
    }

    #[test]
    fn malformed_core_line() {
        let mut labels = LabelMap::new();
        let err = read_cores("k,t_s,t_e,size,members\n1,0,0,3,a;b\n".as_bytes(), CoreFormat::Csv, &mut labels)
            .unwrap_err();
        assert!(matches!(err, Error::Malformed { line: 2, .. }));
    }

    #[test]
    fn metrics_record_fields() {
        let m = RunMetrics {
            processed_vertices: 19,
            cores_emitted: 9,
            ..Default::default()
        };
        let json = serde_json::to_value(MetricsRecord::from(&m)).unwrap();
        assert_eq!(json["processed_vertices"], 19);
        assert_eq!(json["cores"], 9);
        assert!(json.get("elapsed_ms").is_some());
    }
}
