#![no_main]

use libfuzzer_sys::fuzz_target;
use primlink::linkdiag::{primitive, LinkingDiagram};

fuzz_target!(|data: &[u8]| {
    if let Ok(d) = LinkingDiagram::from_json_slice(data) {
        let text = serde_json::to_vec(&d.to_doc()).unwrap();
        assert_eq!(LinkingDiagram::from_json_slice(&text).unwrap(), d);
        if d.components() <= 12 {
            let _ = primitive(&d);
        }
    }
});
