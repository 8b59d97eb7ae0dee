use super::{extrude_scopes, split_binders, TransformError};
use crate::term::{
    gamma_term, seq, tensor, FreeDecls, FreshNames, Mode, Polarity, Signature, Term,
};
use crate::typecheck::arity;

/// Replaces every `tr(M)` with `M : 1+m -> 1+n` by
/// `link y x. (x * m) ; M ; (y * n)` for fresh `x`, `y`.
pub fn trace_to_link(
    t: &Term,
    mode: Mode,
    sig: &Signature,
    decls: &FreeDecls,
) -> Result<Term, TransformError> {
    if !mode.has_trace() {
        return Err(TransformError::ModeViolation {
            mode,
            reason: "there are no traces to convert".into(),
        });
    }
    let mut fresh = FreshNames::new("t", t.all_names());
    convert_traces(t, sig, &mut decls.clone(), &mut fresh)
}

fn convert_traces(
    t: &Term,
    sig: &Signature,
    decls: &mut FreeDecls,
    fresh: &mut FreshNames,
) -> Result<Term, TransformError> {
    Ok(match t {
        Term::Trace(body) => {
            let a = arity(body, sig, decls)?;
            let body = convert_traces(body, sig, decls, fresh)?;
            let (y, x) = fresh.pair();
            let head = Term::tensor(Term::var(x.clone()), Term::Id(a.inputs - 1));
            let tail = Term::tensor(Term::var(y.clone()), Term::Id(a.outputs - 1));
            Term::link(y, x, Term::seq(Term::seq(head, body), tail))
        }
        Term::Seq(a, b) => Term::seq(
            convert_traces(a, sig, decls, fresh)?,
            convert_traces(b, sig, decls, fresh)?,
        ),
        Term::Tensor(a, b) => Term::tensor(
            convert_traces(a, sig, decls, fresh)?,
            convert_traces(b, sig, decls, fresh)?,
        ),
        Term::Link { sink, source, body } => {
            let saved = (decls.get(sink).copied(), decls.get(source).copied());
            decls.insert(sink.clone(), Polarity::Sink);
            decls.insert(source.clone(), Polarity::Source);
            let inner = convert_traces(body, sig, decls, fresh);
            restore(decls, sink, saved.0);
            restore(decls, source, saved.1);
            Term::link(sink.clone(), source.clone(), inner?)
        }
        leaf => leaf.clone(),
    })
}

fn restore(decls: &mut FreeDecls, name: &str, old: Option<Polarity>) {
    match old {
        Some(p) => decls.insert(name.to_string(), p),
        None => decls.remove(name),
    };
}

/// Eliminates every binder in favour of a trace.
///
/// After scope extrusion the innermost binder `x`/`y` is removed by routing
/// the wire that fed the sink `x` to a new top output and the consumers of
/// `y` from a new top input, then closing the two with a unit trace. Multiple
/// or missing occurrences are handled with `comul`/`counit` and `mul`/`unit`,
/// which the modes allowing them provide.
pub fn link_to_trace(
    t: &Term,
    mode: Mode,
    sig: &Signature,
    decls: &FreeDecls,
) -> Result<Term, TransformError> {
    if !mode.has_trace() {
        return Err(TransformError::ModeViolation {
            mode,
            reason: "binders can only become traces in a traced mode".into(),
        });
    }
    let extruded = extrude_scopes(t);
    let (binders, body) = split_binders(&extruded);
    let mut scope = decls.clone();
    for (x, y) in &binders {
        scope.insert(x.clone(), Polarity::Sink);
        scope.insert(y.clone(), Polarity::Source);
    }
    let mut term = body.clone();
    for (x, y) in binders.iter().rev() {
        let opened = abstract_source(&term, y, sig, &scope)?;
        let both = abstract_sink(&opened, x, sig, &scope)?;
        term = Term::trace(both);
    }
    Ok(term)
}

/// `M : a -> b` using source `y` becomes `1+a -> b`, input 0 feeding the
/// former occurrences of `y`.
fn abstract_source(
    m: &Term,
    y: &str,
    sig: &Signature,
    decls: &FreeDecls,
) -> Result<Term, TransformError> {
    let count = m.count_free(y);
    if count == 0 {
        return Ok(Term::tensor(Term::CoUnit, m.clone()));
    }
    Ok(match m {
        Term::Var(_) => Term::Id(1),
        Term::Seq(a, b) => {
            let (ka, kb) = (a.count_free(y), b.count_free(y));
            if kb == 0 {
                Term::seq(abstract_source(a, y, sig, decls)?, (**b).clone())
            } else if ka == 0 {
                Term::seq(
                    tensor(Term::Id(1), (**a).clone()),
                    abstract_source(b, y, sig, decls)?,
                )
            } else {
                let ain = arity(a, sig, decls)?.inputs;
                let split = tensor(Term::CoMul, Term::Id(ain));
                let left = tensor(Term::Id(1), abstract_source(a, y, sig, decls)?);
                Term::seq(seq(split, left), abstract_source(b, y, sig, decls)?)
            }
        }
        Term::Tensor(a, b) => {
            let (ka, kb) = (a.count_free(y), b.count_free(y));
            let a1 = arity(a, sig, decls)?.inputs;
            let a2 = arity(b, sig, decls)?.inputs;
            if kb == 0 {
                Term::tensor(abstract_source(a, y, sig, decls)?, (**b).clone())
            } else if ka == 0 {
                let route = tensor(gamma_term(1, a1), Term::Id(a2));
                Term::seq(
                    route,
                    tensor((**a).clone(), abstract_source(b, y, sig, decls)?),
                )
            } else {
                let split = tensor(Term::CoMul, Term::Id(a1 + a2));
                let route = tensor(tensor(Term::Id(1), gamma_term(1, a1)), Term::Id(a2));
                let both = Term::tensor(
                    abstract_source(a, y, sig, decls)?,
                    abstract_source(b, y, sig, decls)?,
                );
                Term::seq(seq(split, route), both)
            }
        }
        Term::Trace(a) => {
            let inner_in = arity(a, sig, decls)?.inputs;
            let swap = tensor(Term::Sym, Term::Id(inner_in - 1));
            Term::trace(Term::seq(swap, abstract_source(a, y, sig, decls)?))
        }
        Term::Link { sink, source, body } => Term::link(
            sink.clone(),
            source.clone(),
            abstract_source(body, y, sig, decls)?,
        ),
        _ => unreachable!("only variables, composites and binders contain variables"),
    })
}

/// `M : a -> b` using sink `x` becomes `a -> 1+b`, output 0 carrying what
/// used to flow into `x`.
fn abstract_sink(
    m: &Term,
    x: &str,
    sig: &Signature,
    decls: &FreeDecls,
) -> Result<Term, TransformError> {
    let count = m.count_free(x);
    if count == 0 {
        return Ok(Term::tensor(Term::Unit, m.clone()));
    }
    Ok(match m {
        Term::Var(_) => Term::Id(1),
        Term::Seq(a, b) => {
            let (ka, kb) = (a.count_free(x), b.count_free(x));
            if ka == 0 {
                Term::seq((**a).clone(), abstract_sink(b, x, sig, decls)?)
            } else if kb == 0 {
                Term::seq(
                    abstract_sink(a, x, sig, decls)?,
                    tensor(Term::Id(1), (**b).clone()),
                )
            } else {
                let bout = arity(b, sig, decls)?.outputs;
                let right = tensor(Term::Id(1), abstract_sink(b, x, sig, decls)?);
                let merge = tensor(Term::Mul, Term::Id(bout));
                Term::seq(seq(abstract_sink(a, x, sig, decls)?, right), merge)
            }
        }
        Term::Tensor(a, b) => {
            let (ka, kb) = (a.count_free(x), b.count_free(x));
            let b1 = arity(a, sig, decls)?.outputs;
            let b2 = arity(b, sig, decls)?.outputs;
            if kb == 0 {
                Term::tensor(abstract_sink(a, x, sig, decls)?, (**b).clone())
            } else if ka == 0 {
                let route = tensor(gamma_term(b1, 1), Term::Id(b2));
                Term::seq(
                    Term::tensor((**a).clone(), abstract_sink(b, x, sig, decls)?),
                    route,
                )
            } else {
                let both = Term::tensor(
                    abstract_sink(a, x, sig, decls)?,
                    abstract_sink(b, x, sig, decls)?,
                );
                let route = tensor(tensor(Term::Id(1), gamma_term(b1, 1)), Term::Id(b2));
                let merge = tensor(Term::Mul, Term::Id(b1 + b2));
                Term::seq(seq(both, route), merge)
            }
        }
        Term::Trace(a) => {
            let inner_out = arity(a, sig, decls)?.outputs;
            let swap = tensor(Term::Sym, Term::Id(inner_out - 1));
            Term::trace(Term::seq(abstract_sink(a, x, sig, decls)?, swap))
        }
        Term::Link { sink, source, body } => Term::link(
            sink.clone(),
            source.clone(),
            abstract_sink(body, x, sig, decls)?,
        ),
        _ => unreachable!("only variables, composites and binders contain variables"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;
    use crate::Context;

    fn check(mode: Mode, src: &str) {
        let sig = Signature::new()
            .with("f", 1, 3)
            .with("g", 3, 1)
            .with("k", 1, 1)
            .with("h", 2, 1);
        let ctx = Context::new(mode, sig.clone());
        let t = parse_term(src, &sig, &FreeDecls::new()).unwrap();
        let l = trace_to_link(&t, mode, &sig, &FreeDecls::new()).expect(src);
        assert!(!l.contains(&|s| matches!(s, Term::Trace(_))), "{src}");
        assert!(ctx.equivalent(&t, &l).unwrap(), "trace_to_link {src}");
        let r = link_to_trace(&t, mode, &sig, &FreeDecls::new()).unwrap();
        assert!(r.is_link_free(), "{src}");
        assert!(ctx.equivalent(&t, &r).unwrap(), "link_to_trace {src}");
    }

    #[test]
    fn yanking_becomes_identity() {
        let sig = Signature::new();
        let ctx = Context::new(Mode::Biflow, sig.clone());
        let l = trace_to_link(
            &Term::trace(Term::Sym),
            Mode::Biflow,
            &sig,
            &FreeDecls::new(),
        )
        .unwrap();
        assert!(ctx
            .interpret(&l)
            .unwrap()
            .equivalent(&crate::Diagram::identity(1)));
    }

    #[test]
    fn trace_free_is_unchanged() {
        let t = Term::seq(Term::Sym, Term::Sym);
        let sig = Signature::new();
        assert_eq!(
            trace_to_link(&t, Mode::Biflow, &sig, &FreeDecls::new()).unwrap(),
            t
        );
    }

    #[test]
    fn uniflow_is_rejected() {
        let sig = Signature::new();
        let err = trace_to_link(&Term::Id(1), Mode::Uniflow, &sig, &FreeDecls::new()).unwrap_err();
        assert_eq!(err.code(), "ModeViolation");
    }

    #[test]
    fn biflow_round_trips() {
        check(Mode::Biflow, "tr(sym)");
        check(Mode::Biflow, "link x y. y ; k ; x");
        check(
            Mode::Biflow,
            "link x' x. link y y'. (f*y);(1*x'*y'*1);(g*x)",
        );
        check(Mode::Biflow, "tr[2](f * 1 ; 1 * sym * 1 ; g * 1 ; sym) * k");
        check(Mode::Biflow, "link x y. tr(h ; f ; x * y * 1 * 1)");
        check(Mode::Biflow, "link a b. (b * 1 ; h) * a");
    }

    #[test]
    fn comonoid_and_spider_round_trips() {
        check(Mode::Comonoid, "link x y. x * y * y");
        check(Mode::Comonoid, "link x y. x");
        check(
            Mode::Comonoid,
            "link x y. (y * 1 ; h) ; k ; (y * 1 ; h) ; x ; y ; comul ; counit * 1",
        );
        check(Mode::Spider, "link x y. x * x * y");
        check(Mode::Spider, "link x y. y");
        check(Mode::Spider, "link x y. (x * y ; k) * (y ; x)");
    }
}
