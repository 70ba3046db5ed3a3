#![no_main]

use libfuzzer_sys::fuzz_target;
use qhimpl_core::alcove::{face_id, parse_face_id};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(walls) = parse_face_id(s) {
        assert!(walls.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(parse_face_id(&face_id(&walls)).unwrap(), walls);
    }
});
