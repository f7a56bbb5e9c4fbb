#![no_main]
use libfuzzer_sys::fuzz_target;
use symlife::ExperimentConfig;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(cfg) = ExperimentConfig::parse(text) {
        let canonical = cfg.to_text();
        assert_eq!(ExperimentConfig::parse(&canonical).unwrap().to_text(), canonical);
    }
});
