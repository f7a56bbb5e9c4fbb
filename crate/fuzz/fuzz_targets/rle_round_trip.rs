#![no_main]
use libfuzzer_sys::fuzz_target;
use symlife::rle::{emit_rle, parse_rle};

// Whatever parses must survive emit -> parse unchanged.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(p) = parse_rle(text) else { return };
    if p.area() > 1 << 16 {
        return;
    }
    let again = parse_rle(&emit_rle(&p)).expect("emitted RLE parses");
    assert_eq!(again.bits, p.bits);
    assert_eq!((again.width, again.height), (p.width, p.height));
});
