//! CSV schemas for everything written to disk.
//!
//! Every file starts with a fixed header row; readers reject files whose
//! header differs, so a CSV can be recognised by its header alone.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolution::{ArchiveRecord, FusionClass, FusionEvent, GenerationMetrics, Origin};
use crate::genome::SeedGenome;

pub trait CsvSchema: Serialize + DeserializeOwned {
    const HEADER: &'static [&'static str];
}

/// Elite archive: one row per (generation, rank). The genome column holds
/// the seed's rows joined by `/`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArchiveRow {
    pub layer: String,
    pub run: usize,
    pub generation: usize,
    pub rank: usize,
    pub id: u64,
    pub rows: usize,
    pub cols: usize,
    pub genome: String,
    pub fitness: f64,
    pub area: usize,
    pub density: f64,
    pub origin: Origin,
}

impl CsvSchema for ArchiveRow {
    const HEADER: &'static [&'static str] = &[
        "layer",
        "run",
        "generation",
        "rank",
        "id",
        "rows",
        "cols",
        "genome",
        "fitness",
        "area",
        "density",
        "origin",
    ];
}

impl ArchiveRow {
    pub fn new(layer: &str, run: usize, r: &ArchiveRecord) -> Self {
        ArchiveRow {
            layer: layer.to_string(),
            run,
            generation: r.generation,
            rank: r.rank,
            id: r.id,
            rows: r.genome.rows(),
            cols: r.genome.cols(),
            genome: r.genome.body_slashed(),
            fitness: r.fitness,
            area: r.genome.area(),
            density: r.genome.density(),
            origin: r.origin,
        }
    }

    pub fn to_record(&self) -> std::result::Result<ArchiveRecord, String> {
        let genome = SeedGenome::from_slashed(self.rows, self.cols, &self.genome).map_err(|e| e.to_string())?;
        if genome.area() != self.area {
            return Err(format!("area {} does not match a {}x{} genome", self.area, self.rows, self.cols));
        }
        Ok(ArchiveRecord {
            generation: self.generation,
            rank: self.rank,
            id: self.id,
            genome,
            fitness: self.fitness,
            origin: self.origin,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FusionRow {
    pub layer: String,
    pub run: usize,
    pub generation: usize,
    pub birth: usize,
    pub part_a_id: u64,
    pub part_b_id: u64,
    pub part_a_fitness: f64,
    pub part_b_fitness: f64,
    pub whole_fitness: f64,
    pub whole_area: usize,
    pub shuffled: bool,
    pub classification: FusionClass,
    pub accepted: bool,
}

impl CsvSchema for FusionRow {
    const HEADER: &'static [&'static str] = &[
        "layer",
        "run",
        "generation",
        "birth",
        "part_a_id",
        "part_b_id",
        "part_a_fitness",
        "part_b_fitness",
        "whole_fitness",
        "whole_area",
        "shuffled",
        "classification",
        "accepted",
    ];
}

impl FusionRow {
    pub fn new(layer: &str, run: usize, e: &FusionEvent) -> Self {
        FusionRow {
            layer: layer.to_string(),
            run,
            generation: e.generation,
            birth: e.birth,
            part_a_id: e.part_a_id,
            part_b_id: e.part_b_id,
            part_a_fitness: e.part_a_fitness,
            part_b_fitness: e.part_b_fitness,
            whole_fitness: e.whole_fitness,
            whole_area: e.whole_area,
            shuffled: e.shuffled,
            classification: e.classification,
            accepted: e.accepted,
        }
    }

    pub fn to_event(&self) -> FusionEvent {
        FusionEvent {
            generation: self.generation,
            birth: self.birth,
            part_a_id: self.part_a_id,
            part_b_id: self.part_b_id,
            part_a_fitness: self.part_a_fitness,
            part_b_fitness: self.part_b_fitness,
            whole_fitness: self.whole_fitness,
            whole_area: self.whole_area,
            shuffled: self.shuffled,
            classification: self.classification,
            accepted: self.accepted,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricsRow {
    pub layer: String,
    pub run: usize,
    pub generation: usize,
    pub births: usize,
    pub elite_fitness_mean: f64,
    pub diversity: f64,
    pub area_mean: f64,
    pub density_mean: f64,
    pub max_area: usize,
    pub fusion_attempts: usize,
    pub fusions_accepted: usize,
    pub fusion_area_rejections: usize,
    pub fissions: usize,
}

impl CsvSchema for MetricsRow {
    const HEADER: &'static [&'static str] = &[
        "layer",
        "run",
        "generation",
        "births",
        "elite_fitness_mean",
        "diversity",
        "area_mean",
        "density_mean",
        "max_area",
        "fusion_attempts",
        "fusions_accepted",
        "fusion_area_rejections",
        "fissions",
    ];
}

impl MetricsRow {
    pub fn new(layer: &str, run: usize, m: &GenerationMetrics) -> Self {
        MetricsRow {
            layer: layer.to_string(),
            run,
            generation: m.generation,
            births: m.births,
            elite_fitness_mean: m.elite_fitness_mean,
            diversity: m.diversity,
            area_mean: m.area_mean,
            density_mean: m.density_mean,
            max_area: m.max_area,
            fusion_attempts: m.fusion_attempts,
            fusions_accepted: m.fusions_accepted,
            fusion_area_rejections: m.fusion_area_rejections,
            fissions: m.fissions,
        }
    }
}

/// One external fitness value. vs-random writes one row per elite member,
/// vs-past-winners one row per generation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureRow {
    pub layer: String,
    pub run: usize,
    pub generation: usize,
    pub measure: String,
    pub value: f64,
}

impl CsvSchema for MeasureRow {
    const HEADER: &'static [&'static str] = &["layer", "run", "generation", "measure", "value"];
}

/// Pattern tournament result. The per-layer average row has pattern
/// `average` and no area.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PatternRow {
    pub pattern: String,
    pub area: Option<usize>,
    pub layer: String,
    pub games: usize,
    pub win_percent: f64,
}

impl CsvSchema for PatternRow {
    const HEADER: &'static [&'static str] = &["pattern", "area", "layer", "games", "win_percent"];
}

pub fn write_rows<T: CsvSchema>(path: &Path, rows: &[T]) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_rows_to(file, rows).map_err(|e| Error::io(path, e))
}

pub fn write_rows_to<T: CsvSchema, W: Write>(out: W, rows: &[T]) -> std::io::Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(T::HEADER)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()
}

pub fn read_rows<T: CsvSchema>(path: &Path) -> Result<Vec<T>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_rows(file).map_err(|reason| Error::MalformedCsv {
        path: path.to_path_buf(),
        reason,
    })
}

/// Parses a CSV with `T`'s exact header.
pub fn parse_rows<T: CsvSchema, R: Read>(input: R) -> std::result::Result<Vec<T>, String> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let header = r.headers().map_err(|e| e.to_string())?;
    if !header.iter().eq(T::HEADER.iter().copied()) {
        return Err(format!("expected header `{}`", T::HEADER.join(",")));
    }
    r.deserialize().map(|row| row.map_err(|e| e.to_string())).collect()
}

/// The kinds of CSV this crate writes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CsvKind {
    Archive,
    Fusion,
    Metrics,
    Measure,
    Pattern,
}

/// Identifies a CSV by its header line.
pub fn sniff(header: &[&str]) -> Option<CsvKind> {
    let kinds = [
        (ArchiveRow::HEADER, CsvKind::Archive),
        (FusionRow::HEADER, CsvKind::Fusion),
        (MetricsRow::HEADER, CsvKind::Metrics),
        (MeasureRow::HEADER, CsvKind::Measure),
        (PatternRow::HEADER, CsvKind::Pattern),
    ];
    kinds.into_iter().find(|(h, _)| *h == header).map(|(_, k)| k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn archive_rows_round_trip() {
        let record = ArchiveRecord {
            generation: 3,
            rank: 1,
            id: 77,
            genome: SeedGenome::from_rows(&["101", "011"]).unwrap(),
            fitness: 0.625,
            origin: Origin::Crossover,
        };
        let row = ArchiveRow::new("layer3", 2, &record);
        let mut buf = Vec::new();
        write_rows_to(&mut buf, std::slice::from_ref(&row)).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(
            text,
            "layer,run,generation,rank,id,rows,cols,genome,fitness,area,density,origin\n\
             layer3,2,3,1,77,2,3,101/011,0.625,6,0.6666666666666666,Crossover\n"
        );
        let back: Vec<ArchiveRow> = parse_rows(&buf[..]).unwrap();
        assert_eq!(back[0].to_record().unwrap(), record);
    }

    #[test]
    fn empty_files_still_have_headers() {
        let mut buf = Vec::new();
        write_rows_to::<FusionRow, _>(&mut buf, &[]).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap().lines().count(), 1);
        assert!(parse_rows::<FusionRow, _>(&buf[..]).unwrap().is_empty());
    }

    #[test]
    fn wrong_header_is_rejected() {
        let text = "layer,run,generation,measure\nlayer1,0,0,vs-random\n";
        assert!(parse_rows::<MeasureRow, _>(text.as_bytes()).is_err());
        assert_eq!(sniff(&["layer", "run", "generation", "measure", "value"]), Some(CsvKind::Measure));
        assert_eq!(sniff(&["nope"]), None);
    }

    #[test]
    fn bad_values_are_errors() {
        let text = "layer,run,generation,rank,id,rows,cols,genome,fitness,area,density,origin\n\
                    l,0,0,0,0,2,2,10/0x,0.5,4,0.25,Flip\n";
        let rows: Vec<ArchiveRow> = parse_rows(text.as_bytes()).unwrap();
        assert!(rows[0].to_record().is_err());
        let text = text.replace("Flip", "Teleport");
        assert!(parse_rows::<ArchiveRow, _>(text.as_bytes()).is_err());
    }
}
