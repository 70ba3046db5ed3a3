#![no_main]

use libfuzzer_sys::fuzz_target;
use qhimpl_numeric::adfunc::AdFunction;
use qhimpl_numeric::ModelKind;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let _ = s.parse::<ModelKind>();
    let _ = s.parse::<AdFunction>();
});
