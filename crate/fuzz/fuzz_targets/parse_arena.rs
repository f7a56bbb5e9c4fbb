#![no_main]
use libfuzzer_sys::fuzz_target;
use symlife::life::Arena;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(a) = Arena::from_text(text) {
        assert_eq!(Arena::from_text(&a.to_text()).unwrap(), a);
        if a.width() * a.height() <= 4096 {
            let _ = a.step();
        }
    }
});
