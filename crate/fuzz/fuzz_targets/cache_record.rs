#![no_main]

use libfuzzer_sys::fuzz_target;
use primlink::cache::StructureRecord;
use primlink::freelie::FreeLieAlgebra;

fuzz_target!(|data: &[u8]| {
    if let Ok(rec) = StructureRecord::from_json_slice(data) {
        assert_eq!(StructureRecord::from_json_slice(rec.to_json().as_bytes()).unwrap(), rec);
        if (1..=4).contains(&rec.generators) && rec.degree_a + rec.degree_b <= 6 {
            let alg = FreeLieAlgebra::new(rec.generators);
            let _ = alg.absorb_structure(rec.degree_a, rec.degree_b, &rec.to_entries());
        }
    }
});
