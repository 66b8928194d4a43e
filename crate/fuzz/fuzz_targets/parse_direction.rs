#![no_main]

use equiloc::blowup::Direction;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(coords) = equiloc::parse::parse_direction(s) {
            let _ = Direction::new(coords);
        }
    }
});
