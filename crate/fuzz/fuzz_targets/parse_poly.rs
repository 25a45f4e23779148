#![no_main]

use filbert_cli::parse_poly_coeffs;
use libfuzzer_sys::fuzz_target;

// Input is a comma-separated coefficient list, constant term first.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let coeffs: Vec<&str> = if text.is_empty() { Vec::new() } else { text.split(',').collect() };
    if let Ok(p) = parse_poly_coeffs(&coeffs) {
        let rendered: Vec<String> = p.coeffs().iter().map(ToString::to_string).collect();
        assert!(rendered.last().map_or(true, |c| c != "0"));
        assert_eq!(parse_poly_coeffs(&rendered).unwrap(), p);
    }
});
