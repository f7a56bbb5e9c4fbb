#![no_main]
use libfuzzer_sys::fuzz_target;
use symlife::rle::parse_rle;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(p) = parse_rle(text) {
            assert_eq!(p.bits.len(), p.width * p.height);
        }
    }
});
