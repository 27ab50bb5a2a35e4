//! The `--g` value parser must reject garbage with an error, never a panic.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(list) = latqd_cli::args::parse_generators(data) {
        // Accepted lists are non-empty integers; re-rendering them in the
        // canonical comma form must parse back to the same list.
        assert!(!list.0.is_empty());
        let rendered = list
            .0
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",");
        let again = latqd_cli::args::parse_generators(&rendered).expect("canonical form parses");
        assert_eq!(list.0, again.0);
    }
});
