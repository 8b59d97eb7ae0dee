use linkdiag::eqtheory::gen_term;
use linkdiag::{
    delink, extrude_scopes, flatten, interpret, link_to_trace, trace_to_link, typecheck, FreeDecls,
    Mode, Signature, Term,
};
use proptest::prelude::*;

fn no_decls() -> FreeDecls {
    FreeDecls::new()
}

#[test]
fn flatten_and_delink_round_trip() {
    let sig = Signature::law_default();
    for mode in Mode::ALL {
        for seed in 0..300 {
            let t = gen_term(mode, &sig, 20, seed);
            let d = interpret(&t, mode, &sig, &no_decls()).unwrap();

            let flat = flatten(&d, mode).unwrap();
            assert!(flat.is_combinator_free(), "{mode} {seed}");
            typecheck(&flat, mode, &sig, &no_decls()).unwrap();
            let back = interpret(&flat, mode, &sig, &no_decls()).unwrap();
            assert!(back.equivalent(&d), "flatten {mode} {seed}");

            let free = delink(&d, mode).unwrap();
            assert!(free.is_link_free() && free.is_var_free(), "{mode} {seed}");
            let back = interpret(&free, mode, &sig, &no_decls()).unwrap();
            assert!(back.equivalent(&d), "delink {mode} {seed}");
        }
    }
}

#[test]
fn flattened_uniflow_terms_check_in_any_binder_order() {
    let sig = Signature::law_default();
    for seed in 0..100 {
        let t = gen_term(Mode::Uniflow, &sig, 20, seed);
        let d = interpret(&t, Mode::Uniflow, &sig, &no_decls()).unwrap();
        let flat = flatten(&d, Mode::Uniflow).unwrap();
        let (mut binders, body) = linkdiag::transform::split_binders(&flat);
        let body = body.clone();
        binders.reverse();
        let reordered = linkdiag::eqtheory::wrap(&binders, body);
        let j = typecheck(&reordered, Mode::Uniflow, &sig, &no_decls()).unwrap();
        assert!(j.is_closed());
        assert!(interpret(&reordered, Mode::Uniflow, &sig, &no_decls())
            .unwrap()
            .equivalent(&d));
    }
}

#[test]
fn flatten_depends_only_on_the_diagram() {
    let sig = Signature::law_default();
    for mode in Mode::ALL {
        for seed in 0..100 {
            let t = gen_term(mode, &sig, 15, seed);
            let d = interpret(&t, mode, &sig, &no_decls()).unwrap();
            let e = interpret(&extrude_scopes(&t), mode, &sig, &no_decls()).unwrap();
            assert_eq!(
                flatten(&d, mode).unwrap(),
                flatten(&e, mode).unwrap(),
                "{mode} {seed}"
            );
        }
    }
}

proptest! {
    #[test]
    fn extrusion_preserves_meaning(seed in any::<u64>(), mode in prop::sample::select(Mode::ALL.to_vec())) {
        let sig = Signature::law_default();
        let t = gen_term(mode, &sig, 20, seed);
        let e = extrude_scopes(&t);
        let (binders, body) = linkdiag::transform::split_binders(&e);
        prop_assert!(body.is_link_free());
        prop_assert_eq!(binders.len(), count_links(&t));
        let a = interpret(&t, mode, &sig, &no_decls()).unwrap();
        let b = interpret(&e, mode, &sig, &no_decls()).unwrap();
        prop_assert!(a.equivalent(&b));
    }

    #[test]
    fn traces_and_binders_interconvert(seed in any::<u64>(), mode in prop::sample::select(vec![Mode::Biflow, Mode::Comonoid, Mode::Spider])) {
        let sig = Signature::law_default();
        let t = gen_term(mode, &sig, 16, seed);
        let d = interpret(&t, mode, &sig, &no_decls()).unwrap();
        let l = trace_to_link(&t, mode, &sig, &no_decls()).unwrap();
        prop_assert!(!l.contains(&|s| matches!(s, Term::Trace(_))));
        prop_assert!(interpret(&l, mode, &sig, &no_decls()).unwrap().equivalent(&d));
        let r = link_to_trace(&t, mode, &sig, &no_decls()).unwrap();
        prop_assert!(r.is_link_free() && r.is_var_free());
        prop_assert!(interpret(&r, mode, &sig, &no_decls()).unwrap().equivalent(&d));
    }
}

fn count_links(t: &Term) -> usize {
    let mut n = 0;
    t.visit(&mut |s| {
        if matches!(s, Term::Link { .. }) {
            n += 1;
        }
    });
    n
}
