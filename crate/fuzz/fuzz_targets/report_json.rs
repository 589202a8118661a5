#![no_main]

use libfuzzer_sys::fuzz_target;
use primlink::cohomchk::CompletenessReport;

fuzz_target!(|data: &[u8]| {
    if let Ok(r) = CompletenessReport::from_json_slice(data) {
        assert_eq!(CompletenessReport::from_json_slice(r.to_json().as_bytes()).unwrap(), r);
    }
});
