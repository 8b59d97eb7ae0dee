//! Benchmark inputs shared by the targets in `benches/`.

use linkdiag::eqtheory::gen_term;
use linkdiag::{interpret, Diagram, FreeDecls, Mode, Signature, Term};

/// `count` closed terms of roughly `size` nodes, with their diagrams.
pub fn corpus(mode: Mode, size: usize, count: u64) -> Vec<(Term, Diagram)> {
    let sig = Signature::law_default();
    (0..count)
        .map(|seed| {
            let t = gen_term(mode, &sig, size, seed);
            let d = interpret(&t, mode, &sig, &FreeDecls::new()).expect("generated terms check");
            (t, d)
        })
        .collect()
}
