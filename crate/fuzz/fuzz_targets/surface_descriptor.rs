#![no_main]

use equiloc::surface::WeierstrassSurface;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(surface) = WeierstrassSurface::from_json(s) {
        // a descriptor that loads must survive its own serialization
        let json = serde_json::to_string(&surface.to_descriptor()).unwrap();
        let back = WeierstrassSurface::from_json(&json).expect("reload");
        assert_eq!(back.to_descriptor(), surface.to_descriptor());
    }
});
