#![no_main]

use libfuzzer_sys::fuzz_target;
use primlink::exactla::{smith_normal_form, IntMatrix};

fuzz_target!(|data: &[u8]| {
    if let Ok(m) = IntMatrix::from_json_slice(data) {
        assert_eq!(IntMatrix::from_json_slice(m.to_json().as_bytes()).unwrap(), m);
        if m.rows() <= 6 && m.cols() <= 6 && m.max_abs().bits() <= 64 {
            let f = smith_normal_form(&m);
            assert_eq!(&(&f.left * &m) * &f.right, f.diagonal);
        }
    }
});
