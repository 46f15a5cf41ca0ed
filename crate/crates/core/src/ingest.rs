//! Contact-log ingestion: parsing, windowing onto a discrete time domain and
//! per-window deduplication.

use std::io::BufRead;

use crate::error::{Error, Result};
use crate::graph::{LabelMap, TemporalGraph, VertexId};

/// One raw contact `(u, v, time)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contact {
    pub u: String,
    pub v: String,
    pub time: u64,
}

impl Contact {
    pub fn new(u: impl Into<String>, v: impl Into<String>, time: u64) -> Self {
        Contact {
            u: u.into(),
            v: v.into(),
            time,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IngestOptions {
    /// Width of one discrete timestamp, in raw time units.
    pub window: u64,
    /// Raw time mapped to timestamp 0. Defaults to the earliest contact.
    pub origin: Option<u64>,
    /// Abort on the first malformed line instead of skipping it.
    pub strict: bool,
}

impl IngestOptions {
    pub fn new(window: u64) -> Self {
        IngestOptions {
            window,
            origin: None,
            strict: true,
        }
    }

    /// Timestamps are used verbatim.
    pub fn discrete() -> Self {
        IngestOptions {
            window: 1,
            origin: Some(0),
            strict: true,
        }
    }

    pub fn with_origin(mut self, origin: u64) -> Self {
        self.origin = Some(origin);
        self
    }

    pub fn lenient(mut self) -> Self {
        self.strict = false;
        self
    }
}

#[derive(Debug, Clone)]
pub struct Ingested {
    pub graph: TemporalGraph,
    /// Malformed lines dropped in lenient mode.
    pub skipped_lines: usize,
}

/// Builds a temporal graph from a contact stream.
pub fn ingest_contacts<I>(stream: I, opts: IngestOptions) -> Result<TemporalGraph>
where
    I: IntoIterator<Item = Contact>,
{
    if opts.window == 0 {
        return Err(Error::ZeroWindow);
    }
    let contacts: Vec<Contact> = stream.into_iter().collect();
    let Some(min_time) = contacts.iter().map(|c| c.time).min() else {
        return Err(Error::NoContacts);
    };
    let origin = opts.origin.unwrap_or(min_time);
    if min_time < origin {
        return Err(Error::BeforeOrigin {
            time: min_time,
            origin,
        });
    }

    let mut labels = LabelMap::new();
    let mut pairs: Vec<(u32, VertexId, VertexId)> = Vec::with_capacity(contacts.len());
    let mut t_max = 0u32;
    for c in &contacts {
        let u = labels.intern(&c.u);
        let v = labels.intern(&c.v);
        let t = u32::try_from((c.time - origin) / opts.window).map_err(|_| {
            Error::InvalidParameter(format!("timestamp {} overflows the time domain", c.time))
        })?;
        t_max = t_max.max(t);
        pairs.push((t, u, v));
    }

    let mut by_time: Vec<Vec<(VertexId, VertexId)>> = vec![Vec::new(); t_max as usize + 1];
    for (t, u, v) in pairs {
        by_time[t as usize].push((u, v));
    }
    TemporalGraph::from_pairs(labels, by_time)
}

/// Parses one contact line. Returns `Ok(None)` for blank and comment lines.
pub fn parse_contact_line(line: &str) -> std::result::Result<Option<Contact>, String> {
    let line = line.trim();
    if line.is_empty() || line.starts_with('#') {
        return Ok(None);
    }
    let fields: Vec<&str> = line
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|f| !f.is_empty())
        .collect();
    let [u, v, t] = fields[..] else {
        return Err(format!("expected 3 fields, found {}", fields.len()));
    };
    let time = t
        .parse::<u64>()
        .map_err(|_| format!("timestamp `{t}` is not a non-negative integer"))?;
    Ok(Some(Contact::new(u, v, time)))
}

/// Reads a contact file (`u v t` per line, whitespace or comma separated).
pub fn read_contacts<R: BufRead>(reader: R, opts: IngestOptions) -> Result<Ingested> {
    let mut contacts = Vec::new();
    let mut skipped_lines = 0;
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        match parse_contact_line(&line) {
            Ok(Some(c)) => contacts.push(c),
            Ok(None) => {}
            Err(reason) if opts.strict => {
                return Err(Error::Malformed { line: i + 1, reason });
            }
            Err(_) => skipped_lines += 1,
        }
    }
    let graph = ingest_contacts(contacts, opts)?;
    Ok(Ingested {
        graph,
        skipped_lines,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    fn contacts(raw: &[(&str, &str, u64)]) -> Vec<Contact> {
        raw.iter().map(|&(u, v, t)| Contact::new(u, v, t)).collect()
    }

    #[test]
    fn windowing_and_dedup() {
        let g = ingest_contacts(
            contacts(&[("a", "b", 0), ("a", "b", 10), ("b", "a", 25), ("a", "c", 70)]),
            IngestOptions::new(60).with_origin(0),
        )
        .unwrap();
        assert_eq!(g.t_max(), 1);
        assert_eq!(g.edges_at(0), &[Edge::new(0, 1).unwrap()]);
        assert_eq!(g.edges_at(1), &[Edge::new(0, 2).unwrap()]);
        assert_eq!(g.dump(), "0: (a,b)\n1: (a,c)\n");
    }

    #[test]
    fn yearly_window_over_daily_stamps() {
        // 80 windows of 366 days each.
        let days = 80 * 366;
        let stream = (0..days).step_by(7).map(|d| Contact::new("x", "y", d));
        let g = ingest_contacts(stream, IngestOptions::new(366)).unwrap();
        assert_eq!(g.timestamp_count(), 80);
    }

    #[test]
    fn self_loop_keeps_vertex() {
        let g = ingest_contacts(contacts(&[("a", "a", 5)]), IngestOptions::new(60)).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.t_max(), 0);
        assert!(g.edges_at(0).is_empty());
    }

    #[test]
    fn origin_defaults_to_first_contact() {
        let g = ingest_contacts(contacts(&[("a", "b", 130), ("a", "c", 100)]), IngestOptions::new(20))
            .unwrap();
        assert_eq!(g.t_max(), 1);
        assert_eq!(g.edges_at(0), &[Edge::new(0, 2).unwrap()]);
    }

    #[test]
    fn empty_stream_is_an_error() {
        let err = ingest_contacts(Vec::new(), IngestOptions::new(1)).unwrap_err();
        assert_eq!(err.to_string(), "no contacts");
        let err = read_contacts("# only a comment\n\n".as_bytes(), IngestOptions::new(1)).unwrap_err();
        assert!(matches!(err, Error::NoContacts));
    }

    #[test]
    fn zero_window_rejected() {
        let err = ingest_contacts(contacts(&[("a", "b", 0)]), IngestOptions::new(0)).unwrap_err();
        assert!(matches!(err, Error::ZeroWindow));
    }

    #[test]
    fn strict_mode_reports_line() {
        let input = "a b 1\n# comment\na,c,2\nbroken line\n";
        let err = read_contacts(input.as_bytes(), IngestOptions::discrete()).unwrap_err();
        match err {
            Error::Malformed { line, .. } => assert_eq!(line, 4),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn lenient_mode_counts_skips() {
        let input = "a b 1\nx y -3\na,c,2\nbroken\n";
        let ing = read_contacts(input.as_bytes(), IngestOptions::discrete().lenient()).unwrap();
        assert_eq!(ing.skipped_lines, 2);
        assert_eq!(ing.graph.vertex_count(), 3);
        assert_eq!(ing.graph.t_max(), 2);
        assert!(ing.graph.edges_at(0).is_empty());
    }

    #[test]
    fn ids_follow_first_appearance() {
        let input = "q p 0\nz q 1\n";
        let g = read_contacts(input.as_bytes(), IngestOptions::discrete()).unwrap().graph;
        let order: Vec<&str> = g.labels().iter().map(|(_, l)| l).collect();
        assert_eq!(order, ["q", "p", "z"]);
    }

    #[test]
    fn ingestion_is_idempotent() {
        let input = "c a 4\nb a 0\na b 2\nd c 9\n";
        let g1 = read_contacts(input.as_bytes(), IngestOptions::new(3)).unwrap().graph;
        let g2 = read_contacts(input.as_bytes(), IngestOptions::new(3)).unwrap().graph;
        assert_eq!(g1, g2);
        assert_eq!(g1.dump(), g2.dump());
    }

    #[test]
    fn contacts_before_origin_rejected() {
        let err = ingest_contacts(contacts(&[("a", "b", 3)]), IngestOptions::new(1).with_origin(5))
            .unwrap_err();
        assert!(matches!(err, Error::BeforeOrigin { .. }));
    }
}
