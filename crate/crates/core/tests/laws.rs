use std::time::Instant;

use linkdiag::eqtheory::{check_all, check_schema, schema, schemas};
use linkdiag::{Mode, Signature};

#[test]
fn every_schema_holds_in_every_mode() {
    let sig = Signature::law_default();
    let start = Instant::now();
    for mode in Mode::ALL {
        for report in check_all(mode, &sig, 100, 20, 2024) {
            assert!(report.ok(), "{report}");
            let expected = if schema(&report.name).unwrap().closed {
                1
            } else {
                100
            };
            assert_eq!(report.passed, expected, "{report}");
        }
    }
    eprintln!("law suites took {:?}", start.elapsed());
}

#[test]
fn trace_as_link_on_fifty_terms() {
    let sig = Signature::law_default();
    let r = check_schema(
        schema("trace-as-link").unwrap(),
        Mode::Biflow,
        &sig,
        50,
        20,
        7,
    );
    assert_eq!((r.passed, r.failed), (50, 0), "{r}");
}

#[test]
fn schema_sets_grow_with_the_mode() {
    let counts: Vec<usize> = Mode::ALL.iter().map(|&m| schemas(m).len()).collect();
    assert!(counts.windows(2).all(|w| w[0] < w[1]), "{counts:?}");
}
