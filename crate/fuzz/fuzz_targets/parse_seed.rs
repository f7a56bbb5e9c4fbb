#![no_main]
use libfuzzer_sys::fuzz_target;
use symlife::genome::SeedGenome;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = SeedGenome::from_text(text) {
        assert_eq!(SeedGenome::from_text(&g.to_text()).unwrap(), g);
    }
    // archive CSVs carry the genome as slash-separated rows
    if let Some((dims, body)) = text.split_once(';') {
        if let Some((r, c)) = dims.split_once('x') {
            if let (Ok(r), Ok(c)) = (r.parse::<usize>(), c.parse::<usize>()) {
                let _ = SeedGenome::from_slashed(r, c, body);
            }
        }
    }
});
