#![no_main]

use libfuzzer_sys::fuzz_target;
use qhimpl_core::CartanType;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(t) = s.parse::<CartanType>() {
        assert_eq!(t.to_string().parse::<CartanType>().unwrap(), t);
    }
});
