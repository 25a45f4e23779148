#![no_main]

use filbert_cli::parse_matrix_doc;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(doc) = parse_matrix_doc(text) {
        let json = doc.to_json();
        let again = parse_matrix_doc(&json).expect("emitted documents parse");
        assert_eq!(again, doc);
        assert_eq!(again.to_json(), json);
    }
});
