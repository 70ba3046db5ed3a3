#![no_main]

use libfuzzer_sys::fuzz_target;
use qhimpl_core::rootsys::parse_weyl_word;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(w) = parse_weyl_word(s) {
        let parts: Vec<String> = w.iter().map(usize::to_string).collect();
        assert_eq!(parse_weyl_word(&parts.join(" ")).unwrap(), w);
    }
});
