#![no_main]
use libfuzzer_sys::fuzz_target;
use symlife::records::{parse_rows, ArchiveRow, FusionRow, MeasureRow, MetricsRow, PatternRow};

fuzz_target!(|data: &[u8]| {
    if let Ok(rows) = parse_rows::<ArchiveRow, _>(data) {
        for r in rows {
            let _ = r.to_record();
        }
    }
    if let Ok(rows) = parse_rows::<FusionRow, _>(data) {
        for r in rows {
            let _ = r.to_event();
        }
    }
    let _ = parse_rows::<MetricsRow, _>(data);
    let _ = parse_rows::<MeasureRow, _>(data);
    let _ = parse_rows::<PatternRow, _>(data);
});
