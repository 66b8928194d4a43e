#![no_main]

use equiloc::parse::parse_expression;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(series) = parse_expression(text) else { return };
    let printed = series.to_string();
    let back = parse_expression(&printed).unwrap_or_else(|e| panic!("{printed:?} does not reparse: {e:?}"));
    assert_eq!(back, series);
});
