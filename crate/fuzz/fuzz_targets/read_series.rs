#![no_main]

use libfuzzer_sys::fuzz_target;
use manin_core::series::CountSeries;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = CountSeries::read_csv(data) {
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        assert_eq!(CountSeries::read_csv(buf.as_slice()).unwrap(), s);
    }
});
