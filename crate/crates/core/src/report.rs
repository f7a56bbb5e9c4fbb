//! Summary tables and SVG line charts from the CSVs written by runs and
//! measures.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::evolution::FusionClass;
use crate::records::{
    parse_rows, sniff, write_rows, CsvKind, CsvSchema, FusionRow, MeasureRow, MetricsRow, PatternRow,
};
use crate::error::StatsError;
use crate::stats::{aggregate_curves, fusion_summary_across_runs, pearson_significance, welch_t_test};

/// Everything loaded from the report's input files.
#[derive(Clone, Debug, Default)]
pub struct ReportInput {
    pub metrics: Vec<MetricsRow>,
    pub measures: Vec<MeasureRow>,
    pub fusions: Vec<FusionRow>,
    pub patterns: Vec<PatternRow>,
}

impl ReportInput {
    /// Reads CSVs of any kind, telling them apart by header. Archives are
    /// accepted and ignored.
    pub fn load(paths: &[PathBuf]) -> Result<Self> {
        let mut input = ReportInput::default();
        for path in paths {
            let malformed = |reason: String| Error::MalformedCsv {
                path: path.clone(),
                reason,
            };
            let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
            let header_line = bytes.split(|&b| b == b'\n').next().unwrap_or_default();
            let header_text = String::from_utf8_lossy(header_line);
            let header: Vec<&str> = header_text.trim_end_matches('\r').split(',').collect();
            match sniff(&header) {
                Some(CsvKind::Metrics) => input.metrics.extend(parse_rows::<MetricsRow, _>(&bytes[..]).map_err(malformed)?),
                Some(CsvKind::Measure) => input.measures.extend(parse_rows::<MeasureRow, _>(&bytes[..]).map_err(malformed)?),
                Some(CsvKind::Fusion) => input.fusions.extend(parse_rows::<FusionRow, _>(&bytes[..]).map_err(malformed)?),
                Some(CsvKind::Pattern) => input.patterns.extend(parse_rows::<PatternRow, _>(&bytes[..]).map_err(malformed)?),
                Some(CsvKind::Archive) => {}
                None => return Err(malformed("unrecognised header".into())),
            }
        }
        Ok(input)
    }
}

/// Per (layer, run): generation -> value, averaged over duplicate rows.
type RunSeries = BTreeMap<(String, usize), BTreeMap<usize, f64>>;

fn series_from(points: impl Iterator<Item = (String, usize, usize, f64)>) -> RunSeries {
    let mut sums: BTreeMap<(String, usize), BTreeMap<usize, (f64, usize)>> = BTreeMap::new();
    for (layer, run, generation, value) in points {
        let slot = sums.entry((layer, run)).or_default().entry(generation).or_insert((0.0, 0));
        slot.0 += value;
        slot.1 += 1;
    }
    sums.into_iter()
        .map(|(k, gens)| (k, gens.into_iter().map(|(g, (s, n))| (g, s / n as f64)).collect()))
        .collect()
}

/// The quantities a report can chart and compare, each as per-run series.
pub fn quantities(input: &ReportInput) -> Vec<(String, RunSeries)> {
    let mut out = Vec::new();
    if !input.measures.is_empty() {
        let mut names: Vec<&str> = input.measures.iter().map(|m| m.measure.as_str()).collect();
        names.sort();
        names.dedup();
        for name in names {
            let points = input
                .measures
                .iter()
                .filter(|m| m.measure == name)
                .map(|m| (m.layer.clone(), m.run, m.generation, m.value));
            out.push((name.to_string(), series_from(points)));
        }
    }
    if !input.metrics.is_empty() {
        let columns: [(&str, fn(&MetricsRow) -> f64); 4] = [
            ("area", |m| m.area_mean),
            ("density", |m| m.density_mean),
            ("diversity", |m| m.diversity),
            ("elite_fitness", |m| m.elite_fitness_mean),
        ];
        for (name, get) in columns {
            let points = input.metrics.iter().map(|m| (m.layer.clone(), m.run, m.generation, get(m)));
            out.push((name.to_string(), series_from(points)));
        }
    }
    out
}

fn layers_in(series: &RunSeries) -> Vec<String> {
    let mut layers: Vec<String> = series.keys().map(|(l, _)| l.clone()).collect();
    layers.dedup();
    layers
}

/// Final-generation value of each run of `layer`.
fn finals(series: &RunSeries, layer: &str) -> Vec<f64> {
    series
        .iter()
        .filter(|((l, _), _)| l == layer)
        .filter_map(|(_, gens)| gens.values().next_back().copied())
        .collect()
}

/// Mean curve of one layer over the generations every run shares.
fn layer_curve(series: &RunSeries, layer: &str) -> std::result::Result<Vec<(f64, f64)>, StatsError> {
    let runs: Vec<&BTreeMap<usize, f64>> = series.iter().filter(|((l, _), _)| l == layer).map(|(_, g)| g).collect();
    let Some(first) = runs.first() else {
        return Ok(Vec::new());
    };
    let gens: Vec<usize> = first.keys().copied().filter(|g| runs.iter().all(|r| r.contains_key(g))).collect();
    let values: Vec<Vec<f64>> = runs.iter().map(|r| gens.iter().map(|g| r[g]).collect()).collect();
    let summary = aggregate_curves(&values)?;
    Ok(gens.iter().map(|&g| g as f64).zip(summary.mean).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct WelchRow {
    pub quantity: String,
    pub layer_a: String,
    pub layer_b: String,
    pub n_a: usize,
    pub n_b: usize,
    pub mean_a: f64,
    pub mean_b: f64,
    pub t: f64,
    pub df: f64,
    pub p_value: f64,
    pub significant: bool,
    pub degenerate: bool,
}

impl CsvSchema for WelchRow {
    const HEADER: &'static [&'static str] = &[
        "quantity",
        "layer_a",
        "layer_b",
        "n_a",
        "n_b",
        "mean_a",
        "mean_b",
        "t",
        "df",
        "p_value",
        "significant",
        "degenerate",
    ];
}

#[derive(Clone, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct CorrelationRow {
    pub quantity_x: String,
    pub quantity_y: String,
    pub n: usize,
    pub r: f64,
    pub t: f64,
    pub p_value: f64,
    pub significant: bool,
}

impl CsvSchema for CorrelationRow {
    const HEADER: &'static [&'static str] = &["quantity_x", "quantity_y", "n", "r", "t", "p_value", "significant"];
}

#[derive(Clone, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct FusionSummaryRow {
    pub layer: String,
    pub runs: usize,
    pub runs_without_events: usize,
    pub mean_events_per_run: f64,
    pub accepted: usize,
    pub no_parts_benefit_pct: Option<f64>,
    pub one_part_benefits_pct: Option<f64>,
    pub both_parts_benefit_pct: Option<f64>,
}

impl CsvSchema for FusionSummaryRow {
    const HEADER: &'static [&'static str] = &[
        "layer",
        "runs",
        "runs_without_events",
        "mean_events_per_run",
        "accepted",
        "no_parts_benefit_pct",
        "one_part_benefits_pct",
        "both_parts_benefit_pct",
    ];
}

fn welch_row(quantity: &str, layer_a: &str, a: &[f64], layer_b: &str, b: &[f64]) -> Option<WelchRow> {
    let t = welch_t_test(a, b).ok()?;
    Some(WelchRow {
        quantity: quantity.to_string(),
        layer_a: layer_a.to_string(),
        layer_b: layer_b.to_string(),
        n_a: a.len(),
        n_b: b.len(),
        mean_a: crate::stats::mean(a),
        mean_b: crate::stats::mean(b),
        t: t.statistic,
        df: t.df,
        p_value: t.p_value,
        significant: t.significant,
        degenerate: t.degenerate,
    })
}

/// Welch tests on final-generation values between every pair of layers.
pub fn welch_table(quantities: &[(String, RunSeries)]) -> Vec<WelchRow> {
    let mut rows = Vec::new();
    for (name, series) in quantities {
        let layers = layers_in(series);
        for (i, a) in layers.iter().enumerate() {
            for b in &layers[i + 1..] {
                if let Some(row) = welch_row(name, a, &finals(series, a), b, &finals(series, b)) {
                    rows.push(row);
                }
            }
        }
    }
    rows
}

/// Pearson correlations between quantities over runs, pairing each run's
/// final-generation values.
pub fn correlation_table(quantities: &[(String, RunSeries)]) -> Vec<CorrelationRow> {
    let last: Vec<(&str, BTreeMap<&(String, usize), f64>)> = quantities
        .iter()
        .map(|(name, s)| {
            let finals = s.iter().filter_map(|(k, g)| g.values().next_back().map(|&v| (k, v))).collect();
            (name.as_str(), finals)
        })
        .collect();
    let mut rows = Vec::new();
    for (i, (nx, x)) in last.iter().enumerate() {
        for (ny, y) in &last[i + 1..] {
            let (xs, ys): (Vec<f64>, Vec<f64>) = x.iter().filter_map(|(k, vx)| y.get(k).map(|vy| (*vx, *vy))).unzip();
            if let Ok((r, t)) = pearson_significance(&xs, &ys) {
                rows.push(CorrelationRow {
                    quantity_x: nx.to_string(),
                    quantity_y: ny.to_string(),
                    n: xs.len(),
                    r,
                    t: t.statistic,
                    p_value: t.p_value,
                    significant: t.significant,
                });
            }
        }
    }
    rows
}

/// Fusion class shares per layer, and Welch tests on the per-run share of
/// fusions where both parts benefit.
pub fn fusion_tables(input: &ReportInput) -> (Vec<FusionSummaryRow>, Vec<WelchRow>) {
    // the run set comes from metrics when available so that runs without
    // any fusion still count
    let mut runs: BTreeMap<String, BTreeMap<usize, Vec<crate::evolution::FusionEvent>>> = BTreeMap::new();
    for m in &input.metrics {
        runs.entry(m.layer.clone()).or_default().entry(m.run).or_default();
    }
    for f in &input.fusions {
        runs.entry(f.layer.clone()).or_default().entry(f.run).or_default().push(f.to_event());
    }
    let both = FusionClass::ALL.iter().position(|&c| c == FusionClass::BothPartsBenefit).expect("listed");
    let mut summary = Vec::new();
    let mut shares: Vec<(String, Vec<f64>)> = Vec::new();
    for (layer, per_run) in &runs {
        let events: Vec<Vec<_>> = per_run.values().cloned().collect();
        let across = fusion_summary_across_runs(&events);
        if across.per_run.iter().all(|s| s.total == 0) && !input.fusions.iter().any(|f| &f.layer == layer) {
            continue;
        }
        let pct = across.mean_percentages;
        summary.push(FusionSummaryRow {
            layer: layer.clone(),
            runs: across.per_run.len(),
            runs_without_events: across.runs_without_events,
            mean_events_per_run: across.mean_events_per_run,
            accepted: across.per_run.iter().map(|s| s.accepted).sum(),
            no_parts_benefit_pct: pct.map(|p| p[0]),
            one_part_benefits_pct: pct.map(|p| p[1]),
            both_parts_benefit_pct: pct.map(|p| p[2]),
        });
        let per_run_share: Vec<f64> = across.per_run.iter().filter_map(|s| s.percentages()).map(|p| p[both]).collect();
        shares.push((layer.clone(), per_run_share));
    }
    let mut tests = Vec::new();
    for (i, (a, xa)) in shares.iter().enumerate() {
        for (b, xb) in &shares[i + 1..] {
            if let Some(row) = welch_row("both_parts_benefit_pct", a, xa, b, xb) {
                tests.push(row);
            }
        }
    }
    (summary, tests)
}

/// Wide pattern table: one row per pattern, one column per layer.
pub fn pattern_table(rows: &[PatternRow]) -> String {
    let mut layers: Vec<&str> = Vec::new();
    let mut patterns: Vec<(&str, Option<usize>)> = Vec::new();
    for r in rows {
        if !layers.contains(&r.layer.as_str()) {
            layers.push(&r.layer);
        }
        if !patterns.iter().any(|(p, _)| *p == r.pattern) {
            patterns.push((&r.pattern, r.area));
        }
    }
    let mut out = String::from("pattern,area");
    for l in &layers {
        let _ = write!(out, ",{l}");
    }
    out.push('\n');
    for (p, area) in patterns {
        let _ = write!(out, "{p},{}", area.map(|a| a.to_string()).unwrap_or_default());
        for l in &layers {
            let cell = rows
                .iter()
                .find(|r| r.pattern == p && r.layer == *l)
                .map(|r| format!("{:.1}", r.win_percent))
                .unwrap_or_default();
            let _ = write!(out, ",{cell}");
        }
        out.push('\n');
    }
    out
}

const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"];

fn nice_bounds(lo: f64, hi: f64) -> (f64, f64) {
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    if (hi - lo).abs() < 1e-12 {
        return (lo - 0.5, hi + 0.5);
    }
    let pad = (hi - lo) * 0.05;
    (lo - pad, hi + pad)
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Self-contained SVG line chart, one polyline per series.
pub fn line_chart(title: &str, x_label: &str, y_label: &str, series: &[(String, Vec<(f64, f64)>)]) -> String {
    let (w, h) = (720.0, 440.0);
    let (left, right, top, bottom) = (70.0, 170.0, 40.0, 50.0);
    let (pw, ph) = (w - left - right, h - top - bottom);
    let points = series.iter().flat_map(|(_, pts)| pts.iter());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in points {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let (x0, x1) = if x0.is_finite() && x1 > x0 { (x0, x1) } else { nice_bounds(x0, x1) };
    let (y0, y1) = nice_bounds(y0, y1);
    let sx = |x: f64| left + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| top + ph - (y - y0) / (y1 - y0) * ph;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
        left + pw / 2.0,
        xml_escape(title)
    );
    let _ = writeln!(
        svg,
        r#"<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    );
    for k in 0..=4 {
        let f = k as f64 / 4.0;
        let (xv, yv) = (x0 + f * (x1 - x0), y0 + f * (y1 - y0));
        let (px, py) = (sx(xv), sy(yv));
        let _ = writeln!(
            svg,
            r##"<line x1="{px:.1}" y1="{}" x2="{px:.1}" y2="{}" stroke="#ddd"/><text x="{px:.1}" y="{}" text-anchor="middle">{}</text>"##,
            top,
            top + ph,
            top + ph + 16.0,
            format_tick(xv)
        );
        let _ = writeln!(
            svg,
            r##"<line x1="{left}" y1="{py:.1}" x2="{}" y2="{py:.1}" stroke="#ddd"/><text x="{}" y="{:.1}" text-anchor="end">{}</text>"##,
            left + pw,
            left - 6.0,
            py + 4.0,
            format_tick(yv)
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        left + pw / 2.0,
        h - 12.0,
        xml_escape(x_label)
    );
    let _ = writeln!(
        svg,
        r#"<text x="18" y="{}" text-anchor="middle" transform="rotate(-90 18 {})">{}</text>"#,
        top + ph / 2.0,
        top + ph / 2.0,
        xml_escape(y_label)
    );
    for (i, (name, pts)) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let coords: Vec<String> = pts.iter().map(|&(x, y)| format!("{:.1},{:.1}", sx(x), sy(y))).collect();
        let _ = writeln!(
            svg,
            r#"<polyline fill="none" stroke="{color}" stroke-width="2" points="{}"/>"#,
            coords.join(" ")
        );
        let ly = top + 14.0 + 18.0 * i as f64;
        let lx = left + pw + 12.0;
        let _ = writeln!(
            svg,
            r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/><text x="{}" y="{}">{}</text>"#,
            lx + 20.0,
            lx + 26.0,
            ly + 4.0,
            xml_escape(name)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn format_tick(v: f64) -> String {
    if v.abs() >= 100.0 || v == v.round() {
        format!("{v:.0}")
    } else {
        format!("{v:.2}")
    }
}

/// Writes charts and tables for `paths` into `out_dir`, returning the files
/// written.
pub fn cmd_report(paths: &[PathBuf], out_dir: &Path) -> Result<Vec<PathBuf>> {
    let input = ReportInput::load(paths)?;
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let mut written = Vec::new();
    let quantities = quantities(&input);

    for (name, series) in &quantities {
        let mut lines = Vec::new();
        for layer in layers_in(series) {
            lines.push((layer.clone(), layer_curve(series, &layer)?));
        }
        let svg = line_chart(&format!("{name} (mean over runs)"), "generation", name, &lines);
        let path = out_dir.join(format!("{name}.svg"));
        fs::write(&path, svg).map_err(|e| Error::io(&path, e))?;
        written.push(path);
    }

    let mut welch = welch_table(&quantities);
    let (fusion_summary, fusion_tests) = fusion_tables(&input);
    welch.extend(fusion_tests);
    let mut emit = |file: &str, result: Result<()>| -> Result<()> {
        result?;
        written.push(out_dir.join(file));
        Ok(())
    };
    emit("welch.csv", write_rows(&out_dir.join("welch.csv"), &welch))?;
    emit(
        "correlations.csv",
        write_rows(&out_dir.join("correlations.csv"), &correlation_table(&quantities)),
    )?;
    if !fusion_summary.is_empty() {
        emit("fusion_summary.csv", write_rows(&out_dir.join("fusion_summary.csv"), &fusion_summary))?;
    }
    if !input.patterns.is_empty() {
        let path = out_dir.join("patterns.csv");
        let result = fs::write(&path, pattern_table(&input.patterns)).map_err(|e| Error::io(&path, e));
        emit("patterns.csv", result)?;
    }
    Ok(written)
}
