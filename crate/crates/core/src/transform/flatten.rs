use std::collections::BTreeSet;

use super::{require_closed, TransformError};
use crate::diagram::{canonical_form, Diagram, Port};
use crate::term::{seq, tensor_all, FreshNames, Mode, Name, Term};

/// Writes a closed diagram as `u ; (boxes) ; v` under one binder per net.
///
/// Each net gets a pair `wi`, `wi'`: the sink `wi` sits at every producer end
/// and the source `wi'` at every consumer end. A net without a producer (only
/// possible with comonoid or spider wiring) is fed from itself through an
/// extra `wi' ; wi` factor when the mode requires its sink to occur. Closed
/// loops become `link wi wi'. wi' ; wi`.
pub fn flatten(d: &Diagram, mode: Mode) -> Result<Term, TransformError> {
    require_closed(d)?;
    let c = canonical_form(d);
    let nb = c.boxes().len();

    let box_order: Vec<usize> = if mode == Mode::Uniflow {
        c.topological_boxes()
            .ok_or_else(|| TransformError::ModeViolation {
                mode,
                reason: "the diagram is cyclic".into(),
            })?
    } else {
        (0..nb).collect()
    };
    let mut rank = vec![0; nb];
    for (r, &b) in box_order.iter().enumerate() {
        rank[b] = r + 1;
    }

    // nets in binder order: by the rank of their first producer
    let mut nets: Vec<usize> = (0..c.nets().len()).collect();
    nets.sort_by_key(|&k| {
        let first = c.nets()[k].producers().next();
        let r = match first {
            Some(Port::BoxOut(b, _)) => rank[b],
            _ => 0,
        };
        (r, k)
    });

    let avoid: BTreeSet<Name> = c.boxes().iter().map(|b| b.name.clone()).collect();
    let mut fresh = FreshNames::new("w", avoid);
    let mut names: Vec<(Name, Name)> = vec![(String::new(), String::new()); c.nets().len()];
    for &k in &nets {
        names[k] = fresh.pair();
    }
    let net_of = |p: Port| -> usize {
        c.nets()
            .iter()
            .position(|n| n.ports().binary_search(&p).is_ok())
            .expect("every port lies on a net")
    };
    let sink = |p: Port| Term::var(names[net_of(p)].0.clone());
    let source = |p: Port| Term::var(names[net_of(p)].1.clone());

    let u = tensor_all((0..c.inputs()).map(|i| sink(Port::Input(i))));
    let v = tensor_all((0..c.outputs()).map(|j| source(Port::Output(j))));
    let mut middle: Vec<Term> = box_order
        .iter()
        .map(|&b| {
            let node = &c.boxes()[b];
            let ys = tensor_all((0..node.inputs).map(|i| source(Port::BoxIn(b, i))));
            let zs = tensor_all((0..node.outputs).map(|j| sink(Port::BoxOut(b, j))));
            seq(seq(ys, Term::constant(node.name.clone())), zs)
        })
        .collect();
    let self_fed = mode != Mode::Spider;
    for &k in &nets {
        if self_fed && c.nets()[k].producer_count() == 0 {
            let (x, y) = &names[k];
            middle.push(Term::seq(Term::var(y.clone()), Term::var(x.clone())));
        }
    }
    let mut pairs: Vec<(Name, Name)> = nets.iter().map(|&k| names[k].clone()).collect();
    for _ in 0..c.loops() {
        let (x, y) = fresh.pair();
        middle.push(Term::seq(Term::var(y.clone()), Term::var(x.clone())));
        pairs.push((x, y));
    }
    let body = seq(seq(u, tensor_all(middle)), v);
    Ok(pairs
        .into_iter()
        .rev()
        .fold(body, |t, (x, y)| Term::link(x, y, t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::print_term;
    use crate::term::Signature;
    use crate::Context;

    fn sig() -> Signature {
        Signature::new().with("f", 1, 3).with("g", 3, 1)
    }

    #[test]
    fn single_wire() {
        let t = flatten(&Diagram::identity(1), Mode::Uniflow).unwrap();
        assert_eq!(print_term(&t), "link w0 w0'. w0 ; w0'");
    }

    #[test]
    fn f_then_g_has_five_binders() {
        let ctx = Context::new(Mode::Uniflow, sig());
        let d = ctx
            .interpret(&Term::seq(Term::constant("f"), Term::constant("g")))
            .unwrap();
        let t = flatten(&d, Mode::Uniflow).unwrap();
        let (binders, _) = crate::transform::split_binders(&t);
        assert_eq!(binders.len(), 5);
        assert!(t.is_combinator_free());
        assert!(ctx.interpret(&t).unwrap().equivalent(&d));
    }

    #[test]
    fn loops_and_empty() {
        let d = Diagram::identity(1).trace(Mode::Biflow).unwrap();
        let t = flatten(&d, Mode::Biflow).unwrap();
        assert_eq!(print_term(&t), "link w0 w0'. w0' ; w0");
        assert_eq!(
            flatten(&Diagram::empty(), Mode::Uniflow).unwrap(),
            Term::Id(0)
        );
    }

    #[test]
    fn open_diagram_is_rejected() {
        let err = flatten(&Diagram::source("y"), Mode::Uniflow).unwrap_err();
        assert_eq!(err.code(), "OpenDiagram");
    }

    #[test]
    fn producerless_net_in_comonoid() {
        // tr(comul) : 0 -> 1, a wire fed only by itself
        let d = Diagram::comul().trace(Mode::Comonoid).unwrap();
        let t = flatten(&d, Mode::Comonoid).unwrap();
        let ctx = Context::new(Mode::Comonoid, Signature::new());
        assert!(ctx.interpret(&t).unwrap().equivalent(&d));
        let s = flatten(&d, Mode::Spider).unwrap();
        let ctx = Context::new(Mode::Spider, Signature::new());
        assert!(ctx.interpret(&s).unwrap().equivalent(&d));
    }
}
