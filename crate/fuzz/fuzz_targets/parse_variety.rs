#![no_main]

use libfuzzer_sys::fuzz_target;
use manin_core::model::{format_variety, parse_variety};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(x) = parse_variety(text) {
        let again = parse_variety(&format_variety(&x)).expect("formatted variety must parse");
        assert_eq!(again, x);
    }
});
