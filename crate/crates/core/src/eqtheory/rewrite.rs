//! Random semantics-preserving rewrites, each an instance of a law applied
//! at a random position of a term.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::term::{gamma_term, Arity, FreeDecls, FreshNames, Mode, Polarity, Signature, Term};
use crate::typecheck::{arity, typecheck};

const ATTEMPTS_PER_STEP: usize = 60;

/// Applies `steps` random law rewrites to the closed term `t`. Returns the
/// result and the names of the laws used, in order. Fewer rewrites are
/// applied only if no applicable position is found.
pub fn rewrite_random(
    t: &Term,
    mode: Mode,
    sig: &Signature,
    steps: usize,
    seed: u64,
) -> (Term, Vec<&'static str>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = t.clone();
    let mut used = Vec::new();
    for _ in 0..steps {
        for _ in 0..ATTEMPTS_PER_STEP {
            let paths = cur.paths();
            let path = paths.choose(&mut rng).expect("a term has a root").clone();
            let scope = scope_at(&cur, &path);
            let sub = cur.at_path(&path).expect("path from paths()");
            let Ok(ar) = arity(sub, sig, &scope) else {
                continue;
            };
            let mut fresh = FreshNames::new("r", cur.all_names());
            let options = candidates(sub, ar, mode, sig, &scope, &mut fresh);
            let Some((name, new)) = options.choose(&mut rng).cloned() else {
                continue;
            };
            let next = cur.replace_at(&path, new).expect("path from paths()");
            if typecheck(&next, mode, sig, &FreeDecls::new()).is_ok() {
                cur = next;
                used.push(name);
                break;
            }
        }
    }
    (cur, used)
}

/// Polarities of the binders enclosing `path`.
fn scope_at(t: &Term, path: &[usize]) -> FreeDecls {
    let mut decls = FreeDecls::new();
    let mut cur = t;
    for &i in path {
        if let Term::Link { sink, source, .. } = cur {
            decls.insert(sink.clone(), Polarity::Sink);
            decls.insert(source.clone(), Polarity::Source);
        }
        cur = cur.children()[i];
    }
    decls
}

fn free_in(name: &str, t: &Term) -> bool {
    t.free_names().contains(name)
}

fn candidates(
    s: &Term,
    ar: Arity,
    mode: Mode,
    sig: &Signature,
    scope: &FreeDecls,
    fresh: &mut FreshNames,
) -> Vec<(&'static str, Term)> {
    let (m, n) = (ar.inputs, ar.outputs);
    let mut out: Vec<(&'static str, Term)> = vec![
        ("identity-left", Term::seq(Term::Id(m), s.clone())),
        ("identity-right", Term::seq(s.clone(), Term::Id(n))),
        (
            "strictness-unit-right",
            Term::tensor(s.clone(), Term::Id(0)),
        ),
    ];
    let pad = |extra: Term| Term::seq(s.clone(), Term::tensor(extra, Term::Id(n - 1)));
    if n >= 1 {
        let (x, y) = fresh.pair();
        out.push((
            "link-identity",
            pad(Term::link(
                x.clone(),
                y.clone(),
                Term::seq(Term::var(x), Term::var(y)),
            )),
        ));
        if mode.has_trace() {
            out.push(("yanking", pad(Term::trace(Term::Sym))));
        }
        if mode.has_comonoid() {
            out.push((
                "counitality",
                pad(Term::seq(
                    Term::CoMul,
                    Term::tensor(Term::CoUnit, Term::Id(1)),
                )),
            ));
        }
        if mode.has_monoid() {
            out.push(("special", pad(Term::seq(Term::CoMul, Term::Mul))));
        }
    }
    let ar_of = |t: &Term| arity(t, sig, scope).ok();
    match s {
        Term::Seq(a, b) => {
            if let Term::Seq(b1, b2) = &**b {
                out.push((
                    "associativity",
                    Term::seq(Term::seq((**a).clone(), (**b1).clone()), (**b2).clone()),
                ));
            }
            if let Term::Seq(a1, a2) = &**a {
                out.push((
                    "associativity",
                    Term::seq((**a1).clone(), Term::seq((**a2).clone(), (**b).clone())),
                ));
            }
            if let (Term::Tensor(a1, a2), Term::Tensor(b1, b2)) = (&**a, &**b) {
                if let (Some(x), Some(y)) = (ar_of(a1), ar_of(b1)) {
                    if x.outputs == y.inputs {
                        let l = Term::seq((**a1).clone(), (**b1).clone());
                        let r = Term::seq((**a2).clone(), (**b2).clone());
                        out.push(("tensor-functoriality", Term::tensor(l, r)));
                    }
                }
            }
            if let Term::Link { sink, source, body } = &**a {
                if !free_in(sink, b) && !free_in(source, b) {
                    out.push((
                        "scope-extrusion",
                        Term::link(
                            sink.clone(),
                            source.clone(),
                            Term::seq((**body).clone(), (**b).clone()),
                        ),
                    ));
                }
            }
            if let Term::Link { sink, source, body } = &**b {
                if !free_in(sink, a) && !free_in(source, a) {
                    out.push((
                        "scope-extrusion",
                        Term::link(
                            sink.clone(),
                            source.clone(),
                            Term::seq((**a).clone(), (**body).clone()),
                        ),
                    ));
                }
            }
        }
        Term::Tensor(a, b) => {
            if let Term::Tensor(b1, b2) = &**b {
                out.push((
                    "strictness-associativity",
                    Term::tensor(Term::tensor((**a).clone(), (**b1).clone()), (**b2).clone()),
                ));
            }
            if let Term::Tensor(a1, a2) = &**a {
                out.push((
                    "strictness-associativity",
                    Term::tensor((**a1).clone(), Term::tensor((**a2).clone(), (**b).clone())),
                ));
            }
            if let (Term::Seq(a1, a2), Term::Seq(b1, b2)) = (&**a, &**b) {
                let l = Term::tensor((**a1).clone(), (**b1).clone());
                let r = Term::tensor((**a2).clone(), (**b2).clone());
                out.push(("tensor-functoriality", Term::seq(l, r)));
            }
            if let (Some(x), Some(y)) = (ar_of(a), ar_of(b)) {
                let swapped = Term::seq(
                    Term::seq(
                        gamma_term(x.inputs, y.inputs),
                        Term::tensor((**b).clone(), (**a).clone()),
                    ),
                    gamma_term(y.outputs, x.outputs),
                );
                out.push(("symmetry", swapped));
            }
            if let Term::Link { sink, source, body } = &**a {
                if !free_in(sink, b) && !free_in(source, b) {
                    out.push((
                        "scope-extrusion",
                        Term::link(
                            sink.clone(),
                            source.clone(),
                            Term::tensor((**body).clone(), (**b).clone()),
                        ),
                    ));
                }
            }
            if let Term::Link { sink, source, body } = &**b {
                if !free_in(sink, a) && !free_in(source, a) {
                    out.push((
                        "scope-extrusion",
                        Term::link(
                            sink.clone(),
                            source.clone(),
                            Term::tensor((**a).clone(), (**body).clone()),
                        ),
                    ));
                }
            }
            if let Term::Trace(f) = &**a {
                out.push((
                    "superposing",
                    Term::trace(Term::tensor((**f).clone(), (**b).clone())),
                ));
            }
        }
        Term::Link { sink, source, body } => {
            let (x, y) = fresh.pair();
            let map = [(sink.clone(), x.clone()), (source.clone(), y.clone())].into();
            out.push(("alpha", Term::link(x, y, body.rename_free(&map))));
            let outside = |t: &Term| !free_in(sink, t) && !free_in(source, t);
            let bind = |t: &Term| Term::link(sink.clone(), source.clone(), t.clone());
            match &**body {
                Term::Seq(a, b) if outside(b) => {
                    out.push(("scope-extrusion", Term::seq(bind(a), (**b).clone())))
                }
                Term::Seq(a, b) if outside(a) => {
                    out.push(("scope-extrusion", Term::seq((**a).clone(), bind(b))))
                }
                Term::Tensor(a, b) if outside(b) => {
                    out.push(("scope-extrusion", Term::tensor(bind(a), (**b).clone())))
                }
                Term::Tensor(a, b) if outside(a) => {
                    out.push(("scope-extrusion", Term::tensor((**a).clone(), bind(b))))
                }
                Term::Trace(a) => out.push(("trace-scope-extrusion", Term::trace(bind(a)))),
                _ => {}
            }
        }
        Term::Trace(f) => {
            if let Some(fa) = ar_of(f) {
                let (y, x) = fresh.pair();
                let body = Term::seq(
                    Term::seq(
                        Term::tensor(Term::var(x.clone()), Term::Id(fa.inputs - 1)),
                        (**f).clone(),
                    ),
                    Term::tensor(Term::var(y.clone()), Term::Id(fa.outputs - 1)),
                );
                out.push(("trace-as-link", Term::link(y, x, body)));
            }
            if let Term::Link { sink, source, body } = &**f {
                out.push((
                    "trace-scope-extrusion",
                    Term::link(sink.clone(), source.clone(), Term::trace((**body).clone())),
                ));
            }
            if let Term::Tensor(a, b) = &**f {
                if ar_of(a).is_some_and(|x| x.inputs >= 1 && x.outputs >= 1) {
                    out.push((
                        "superposing",
                        Term::tensor(Term::trace((**a).clone()), (**b).clone()),
                    ));
                }
            }
        }
        Term::CoUnit => {
            let (x, y) = fresh.pair();
            out.push(("counit-as-link", Term::link(x.clone(), y, Term::var(x))));
        }
        Term::CoMul => {
            let (x, y) = fresh.pair();
            let body = Term::tensor(
                Term::tensor(Term::var(x.clone()), Term::var(y.clone())),
                Term::var(y.clone()),
            );
            out.push(("comul-as-link", Term::link(x, y, body)));
        }
        Term::Unit => {
            let (x, y) = fresh.pair();
            out.push(("unit-as-link", Term::link(x, y.clone(), Term::var(y))));
        }
        Term::Mul => {
            let (x, y) = fresh.pair();
            let body = Term::tensor(
                Term::tensor(Term::var(x.clone()), Term::var(x.clone())),
                Term::var(y.clone()),
            );
            out.push(("mul-as-link", Term::link(x, y, body)));
        }
        _ => {}
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eqtheory::gen::gen_term;
    use crate::interp::interpret;

    #[test]
    fn rewrites_preserve_meaning() {
        let sig = Signature::law_default();
        for mode in Mode::ALL {
            for seed in 0..25 {
                let t = gen_term(mode, &sig, 12, seed);
                let (r, used) = rewrite_random(&t, mode, &sig, 4, seed);
                assert!(!used.is_empty(), "{mode} {seed}");
                let a = interpret(&t, mode, &sig, &FreeDecls::new()).unwrap();
                let b = interpret(&r, mode, &sig, &FreeDecls::new()).unwrap();
                assert!(a.equivalent(&b), "{mode} {seed} {used:?}");
            }
        }
    }

    #[test]
    fn deterministic() {
        let sig = Signature::law_default();
        let t = gen_term(Mode::Spider, &sig, 12, 5);
        assert_eq!(
            rewrite_random(&t, Mode::Spider, &sig, 5, 1),
            rewrite_random(&t, Mode::Spider, &sig, 5, 1)
        );
    }
}
