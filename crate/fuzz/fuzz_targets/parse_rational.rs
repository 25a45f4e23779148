#![no_main]

use filbert_cli::parse_rational;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(q) = parse_rational(text) {
        let canonical = q.to_string();
        assert_eq!(parse_rational(&canonical).unwrap(), q);
        assert_eq!(parse_rational(&canonical).unwrap().to_string(), canonical);
    }
});
