#![no_main]

use libfuzzer_sys::fuzz_target;
use qhimpl_core::RootDatum;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(d) = RootDatum::from_json(s) {
        let again = serde_json::to_string(&d).unwrap();
        assert_eq!(RootDatum::from_json(&again).unwrap(), d);
    }
});
