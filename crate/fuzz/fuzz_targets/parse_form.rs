#![no_main]

use libfuzzer_sys::fuzz_target;
use manin_core::model::parse_form;

// First byte picks the number of variables.
fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let _ = parse_form(text, usize::from(n % 12) + 1);
});
