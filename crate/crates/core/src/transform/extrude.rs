use std::collections::BTreeMap;

use crate::term::{FreshNames, Name, Term};

/// Moves every binder to the root.
///
/// Binders are first renamed apart (`v0`, `v0'`, ... in pre-order), which
/// makes every side condition of the extrusion laws hold, and then collected
/// outermost-first in pre-order.
pub fn extrude_scopes(t: &Term) -> Term {
    let mut fresh = FreshNames::new("v", t.all_names());
    let renamed = rename_apart(t, &mut fresh, &BTreeMap::new());
    let mut binders = Vec::new();
    let body = pull(renamed, &mut binders);
    binders
        .into_iter()
        .rev()
        .fold(body, |t, (x, y)| Term::link(x, y, t))
}

/// Splits a root binder prefix from its body.
pub fn split_binders(t: &Term) -> (Vec<(Name, Name)>, &Term) {
    let mut binders = Vec::new();
    let mut cur = t;
    while let Term::Link { sink, source, body } = cur {
        binders.push((sink.clone(), source.clone()));
        cur = body;
    }
    (binders, cur)
}

fn rename_apart(t: &Term, fresh: &mut FreshNames, env: &BTreeMap<Name, Name>) -> Term {
    match t {
        Term::Var(x) => Term::var(env.get(x).cloned().unwrap_or_else(|| x.clone())),
        Term::Link { sink, source, body } => {
            let (x, y) = fresh.pair();
            let mut inner = env.clone();
            inner.insert(sink.clone(), x.clone());
            inner.insert(source.clone(), y.clone());
            Term::link(x, y, rename_apart(body, fresh, &inner))
        }
        Term::Seq(a, b) => {
            let a = rename_apart(a, fresh, env);
            Term::seq(a, rename_apart(b, fresh, env))
        }
        Term::Tensor(a, b) => {
            let a = rename_apart(a, fresh, env);
            Term::tensor(a, rename_apart(b, fresh, env))
        }
        Term::Trace(a) => Term::trace(rename_apart(a, fresh, env)),
        leaf => leaf.clone(),
    }
}

fn pull(t: Term, binders: &mut Vec<(Name, Name)>) -> Term {
    match t {
        Term::Link { sink, source, body } => {
            binders.push((sink, source));
            pull(*body, binders)
        }
        Term::Seq(a, b) => {
            let a = pull(*a, binders);
            Term::seq(a, pull(*b, binders))
        }
        Term::Tensor(a, b) => {
            let a = pull(*a, binders);
            Term::tensor(a, pull(*b, binders))
        }
        Term::Trace(a) => Term::trace(pull(*a, binders)),
        leaf => leaf,
    }
}
