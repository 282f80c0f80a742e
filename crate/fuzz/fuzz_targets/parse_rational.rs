#![no_main]

use libfuzzer_sys::fuzz_target;
use manin_core::enumerate::EnumStrategy;
use manin_core::model::{format_rational, parse_lambda, parse_rational};
use manin_core::series::GeometricGrid;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(r) = parse_rational(text) {
        assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }
    let _ = parse_lambda(text);
    if let Ok(g) = GeometricGrid::parse(text) {
        let _ = g.bounds();
    }
    let _ = text.parse::<EnumStrategy>();
});
