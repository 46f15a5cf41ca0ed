use std::collections::{BTreeMap, BTreeSet};
use std::fs::{self, File};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use log::info;
use serde::Serialize;
use serde_json::json;

use spancore::analysis::{self, purity, stats, AnomalyParams, AttributeTable};
use spancore::io::{read_cores, write_cores, CoreFormat, MetricsRecord};
use spancore::{DecompositionResult, IngestOptions, LabelMap, TemporalGraph};

use crate::args::*;

pub const MANIFEST: &str = "run-manifest.json";

pub fn execute(command: Command) -> Result<()> {
    match command {
        Command::Replay(args) => replay(&args),
        mut other => {
            let out = other.out_mut().expect("replay handled above").clone();
            fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
            match &other {
                Command::Decompose(a) => decompose(a)?,
                Command::Maximal(a) => maximal(a)?,
                Command::Stats(a) => stats_cmd(a)?,
                Command::Grid(a) => grid(a)?,
                Command::Purity(a) => purity_cmd(a)?,
                Command::Shuffle(a) => shuffle(a)?,
                Command::Anomaly(a) => anomaly(a)?,
                Command::Replay(_) => unreachable!("handled above"),
            }
            write_manifest(&out, &other)
        }
    }
}

/// Writes `bytes` to `dir/name` through a temporary file and a rename.
fn write_atomic(dir: &Path, name: &str, bytes: &[u8]) -> Result<()> {
    let target = dir.join(name);
    let tmp = dir.join(format!(".{name}.tmp"));
    {
        let mut f = File::create(&tmp).with_context(|| format!("creating {}", tmp.display()))?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, &target).with_context(|| format!("writing {}", target.display()))?;
    info!("wrote {}", target.display());
    Ok(())
}

fn write_json(dir: &Path, name: &str, value: &impl Serialize) -> Result<()> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    write_atomic(dir, name, &bytes)
}

fn write_manifest(out: &Path, command: &Command) -> Result<()> {
    let manifest = json!({
        "tool": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "run": command,
    });
    write_json(out, MANIFEST, &manifest)
}

fn replay(args: &ReplayArgs) -> Result<()> {
    let text = fs::read_to_string(&args.manifest)
        .with_context(|| format!("reading {}", args.manifest.display()))?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    let mut command: Command = serde_json::from_value(value["run"].clone())
        .with_context(|| format!("{} is not a run manifest", args.manifest.display()))?;
    if let (Some(out), Some(slot)) = (&args.out, command.out_mut()) {
        *slot = out.clone();
    }
    info!("replaying {}", args.manifest.display());
    execute(command)
}

fn load_graph(input: &GraphInput) -> Result<TemporalGraph> {
    let file = File::open(&input.input).with_context(|| format!("cannot open {}", input.input.display()))?;
    let mut opts = IngestOptions::new(input.window);
    opts.origin = input.origin;
    opts.strict = input.strict;
    let ingested = spancore::read_contacts(BufReader::new(file), opts)
        .with_context(|| format!("reading {}", input.input.display()))?;
    if ingested.skipped_lines > 0 {
        log::warn!("skipped {} malformed lines", ingested.skipped_lines);
    }
    let g = ingested.graph;
    info!(
        "{}: {} vertices, {} timestamps, {} contacts",
        input.input.display(),
        g.vertex_count(),
        g.timestamp_count(),
        g.contact_count()
    );
    Ok(g)
}

fn core_format(f: Format) -> CoreFormat {
    match f {
        Format::Csv => CoreFormat::Csv,
        Format::Jsonl => CoreFormat::Jsonl,
    }
}

fn load_cores(input: &CoreInput) -> Result<(DecompositionResult, LabelMap)> {
    let file = File::open(&input.input).with_context(|| format!("cannot open {}", input.input.display()))?;
    let format = input
        .format
        .map(core_format)
        .unwrap_or_else(|| CoreFormat::from_path(&input.input));
    let mut labels = LabelMap::new();
    let result = read_cores(BufReader::new(file), format, &mut labels)
        .with_context(|| format!("reading {}", input.input.display()))?;
    Ok((result, labels))
}

/// Peak resident set size in KiB, where the platform reports it.
fn peak_memory_kib() -> Option<u64> {
    let status = fs::read_to_string("/proc/self/status").ok()?;
    status
        .lines()
        .find_map(|l| l.strip_prefix("VmHWM:"))
        .and_then(|v| v.trim().trim_end_matches("kB").trim().parse().ok())
}

fn emit_result(
    out: &Path,
    stem: &str,
    g: &TemporalGraph,
    result: &DecompositionResult,
    format: Format,
    maximal: bool,
    bench: Option<&str>,
) -> Result<()> {
    let format = core_format(format);
    let mut bytes = Vec::new();
    write_cores(&mut bytes, result, g.labels(), format, maximal)?;
    write_atomic(out, &format!("{stem}.{}", format.extension()), &bytes)?;
    write_json(out, "metrics.json", &MetricsRecord::from(&result.metrics))?;
    if let Some(engine) = bench {
        let record = json!({
            "engine": engine,
            "elapsed_ms": result.metrics.elapsed.as_secs_f64() * 1e3,
            "peak_memory_kib": peak_memory_kib(),
            "processed_vertices": result.metrics.processed_vertices,
            "kernel_calls": result.metrics.kernel_calls,
            "cores": result.metrics.cores_emitted,
        });
        write_json(out, "bench.json", &record)?;
    }
    info!(
        "{} cores, {} processed vertices, {:.1} ms",
        result.len(),
        result.metrics.processed_vertices,
        result.metrics.elapsed.as_secs_f64() * 1e3
    );
    Ok(())
}

fn decompose(a: &DecomposeArgs) -> Result<()> {
    let g = load_graph(&a.graph)?;
    let (result, name) = match a.engine {
        FullEngine::Naive => (spancore::naive_span_cores(&g), "naive"),
        FullEngine::Pruned => (spancore::span_cores(&g), "pruned"),
    };
    emit_result(&a.out, "cores", &g, &result, a.format, false, a.bench.then_some(name))
}

fn maximal(a: &MaximalArgs) -> Result<()> {
    let g = load_graph(&a.graph)?;
    let (result, name) = match a.engine {
        MaximalEngine::Filter => (spancore::naive_maximal_span_cores(&g), "filter"),
        MaximalEngine::Direct => (spancore::maximal_span_cores(&g), "direct"),
    };
    emit_result(&a.out, "maximal", &g, &result, a.format, true, a.bench.then_some(name))
}

fn stats_cmd(a: &StatsArgs) -> Result<()> {
    let (result, _) = load_cores(&a.cores)?;
    let mut bytes = Vec::new();
    stats::write_group_stats(&mut bytes, "k", &analysis::stats_by_order(&result))?;
    write_atomic(&a.out, "stats_by_order.csv", &bytes)?;
    let mut bytes = Vec::new();
    stats::write_group_stats(&mut bytes, "span", &analysis::stats_by_span(&result))?;
    write_atomic(&a.out, "stats_by_span.csv", &bytes)
}

fn grid(a: &GridArgs) -> Result<()> {
    let (result, _) = load_cores(&a.cores)?;
    let mut bytes = Vec::new();
    stats::write_grid(&mut bytes, &analysis::activity_grid(&result, a.min_span))?;
    write_atomic(&a.out, "grid.csv", &bytes)
}

fn purity_cmd(a: &PurityArgs) -> Result<()> {
    let (result, labels) = load_cores(&a.cores)?;
    let file = File::open(&a.attributes).with_context(|| format!("cannot open {}", a.attributes.display()))?;
    let attrs = AttributeTable::from_csv(file, &labels)
        .with_context(|| format!("reading {}", a.attributes.display()))?;
    let horizon = a
        .horizon
        .unwrap_or_else(|| result.cores.iter().map(|c| c.span.end()).max().unwrap_or(0));
    let curve = analysis::purity_curve(&result, &attrs, &a.attribute, horizon)?;
    if curve.skipped_members > 0 {
        log::warn!("{} core members have no `{}` value", curve.skipped_members, a.attribute);
    }
    let mut bytes = Vec::new();
    purity::write_purity(&mut bytes, &curve)?;
    write_atomic(&a.out, "purity.csv", &bytes)
}

fn shuffle(a: &ShuffleArgs) -> Result<()> {
    let g = load_graph(&a.graph)?;
    let shuffled = analysis::reshuffle_timestamps(&g, a.seed);
    let mut bytes = Vec::new();
    shuffled.write_contacts(&mut bytes)?;
    write_atomic(&a.out, "shuffled.txt", &bytes)
}

fn read_positives(path: &PathBuf) -> Result<BTreeSet<u32>> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    let mut set = BTreeSet::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match line.parse() {
            Ok(t) => {
                set.insert(t);
            }
            Err(_) => bail!("{}:{}: `{line}` is not a timestamp", path.display(), i + 1),
        }
    }
    Ok(set)
}

#[derive(Serialize)]
struct AnomalySummary<'a> {
    tr: u32,
    ratio: Option<f64>,
    timestamps: usize,
    original_contacts: usize,
    surviving_contacts: usize,
    removed_by_vertex_filter: usize,
    anomalous_intervals: Vec<[u32; 2]>,
    anomalous_vertices: BTreeMap<u32, Vec<&'a str>>,
    removed_contacts: &'a [usize],
    dropped_timestamps: &'a [u32],
    #[serde(skip_serializing_if = "Option::is_none")]
    evaluation: Option<analysis::PrecisionRecall>,
}

fn anomaly(a: &AnomalyArgs) -> Result<()> {
    let params = AnomalyParams {
        tr: a.tr,
        ratio: a.ratio,
    };
    params.validate()?;
    let positives = a.positives.as_ref().map(read_positives).transpose()?;
    let g = load_graph(&a.graph)?;
    let maximal = spancore::maximal_span_cores(&g);
    let report = analysis::detect_anomalies(&g, &maximal, params)?;
    let evaluation = positives
        .as_ref()
        .map(|p| analysis::precision_recall(&g, &report, p));

    let anomalous_vertices = report
        .anomalous_vertices_by_time
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_empty())
        .map(|(t, v)| {
            let mut names: Vec<&str> = v.iter().map(|&u| g.label(u)).collect();
            names.sort_unstable();
            (t as u32, names)
        })
        .collect();
    let summary = AnomalySummary {
        tr: a.tr,
        ratio: a.ratio,
        timestamps: g.timestamp_count(),
        original_contacts: g.contact_count(),
        surviving_contacts: report.surviving.contact_count(),
        removed_by_vertex_filter: report.total_removed(),
        anomalous_intervals: report
            .anomalous_intervals
            .iter()
            .map(|s| [s.start(), s.end()])
            .collect(),
        anomalous_vertices,
        removed_contacts: &report.removed_contacts,
        dropped_timestamps: &report.dropped_timestamps,
        evaluation,
    };
    if report.anomalous_intervals.is_empty() {
        info!("no maximal span-core is longer than {} timestamps", a.tr);
    }
    write_json(&a.out, "anomaly-report.json", &summary)?;
    let mut bytes = Vec::new();
    report.surviving.write_contacts(&mut bytes)?;
    write_atomic(&a.out, "cleaned.txt", &bytes)
}
