//! Anything the reader accepts must survive a write/read round trip.

#![no_main]

use libfuzzer_sys::fuzz_target;
use motorctl::trace_csv::{read_trace, trace_to_string};

fuzz_target!(|data: &[u8]| {
    let Ok(trace) = read_trace(data) else { return };
    let text = trace_to_string(&trace).expect("accepted trace writes back");
    let again = read_trace(text.as_bytes()).expect("written trace reads back");
    assert_eq!(trace, again);
});
