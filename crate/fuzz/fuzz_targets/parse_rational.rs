#![no_main]

use libfuzzer_sys::fuzz_target;
use qhimpl_core::exact::{parse_rational, parse_rational_vec, render_short};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(q) = parse_rational(s) {
        let back = parse_rational(&render_short(&q)).expect("rendered rational reparses");
        assert_eq!(back, q);
    }
    if let Ok(v) = parse_rational_vec(s) {
        let joined: Vec<String> = v.iter().map(render_short).collect();
        assert_eq!(parse_rational_vec(&joined.join(",")).unwrap(), v);
    }
});
