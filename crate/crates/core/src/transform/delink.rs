use super::{require_closed, TransformError};
use crate::diagram::{canonical_form, Diagram, Port};
use crate::term::{perm_term, seq, tensor, tensor_all, Mode, Permutation, Term};

/// Writes a closed diagram as a term without variables or binders.
///
/// Uniflow diagrams are scheduled one box per layer, with permutations
/// bringing each box's inputs to the top of the bus. In traced modes all box
/// inputs are fed back through one global trace and the rest is a wiring
/// term: a permutation in the linear modes, `ψ`/`ε` fans and `φ`/`η` joins
/// otherwise.
pub fn delink(d: &Diagram, mode: Mode) -> Result<Term, TransformError> {
    require_closed(d)?;
    let c = canonical_form(d);
    c.audit(mode)
        .map_err(|reason| TransformError::ModeViolation { mode, reason })?;
    if mode == Mode::Uniflow {
        layered(&c, mode)
    } else {
        Ok(global_trace(&c, mode))
    }
}

fn producer_of(c: &Diagram, consumer: Port) -> Port {
    c.net_of(consumer)
        .and_then(|n| n.producers().next())
        .expect("linear nets have exactly one producer")
}

fn layered(c: &Diagram, mode: Mode) -> Result<Term, TransformError> {
    let order = c
        .topological_boxes()
        .filter(|_| c.loops() == 0)
        .ok_or_else(|| TransformError::ModeViolation {
            mode,
            reason: "the diagram is cyclic".into(),
        })?;
    let mut bus: Vec<Port> = (0..c.inputs()).map(Port::Input).collect();
    let mut term = Term::Id(c.inputs());
    for b in order {
        let node = &c.boxes()[b];
        let wanted: Vec<Port> = (0..node.inputs)
            .map(|i| producer_of(c, Port::BoxIn(b, i)))
            .collect();
        let rest: Vec<Port> = bus
            .iter()
            .copied()
            .filter(|p| !wanted.contains(p))
            .collect();
        let target: Vec<Port> = wanted.iter().chain(&rest).copied().collect();
        term = seq(term, routing(&bus, &target));
        term = seq(
            term,
            tensor(Term::constant(node.name.clone()), Term::Id(rest.len())),
        );
        bus = (0..node.outputs)
            .map(|j| Port::BoxOut(b, j))
            .chain(rest)
            .collect();
    }
    let target: Vec<Port> = (0..c.outputs())
        .map(|j| producer_of(c, Port::Output(j)))
        .collect();
    Ok(seq(term, routing(&bus, &target)))
}

/// The permutation term moving the wires of `from` into the order `to`.
fn routing(from: &[Port], to: &[Port]) -> Term {
    let images = from
        .iter()
        .map(|p| to.iter().position(|q| q == p).expect("same wire set"))
        .collect();
    perm_term(&Permutation::new(images).expect("a bijection"))
}

fn global_trace(c: &Diagram, mode: Mode) -> Term {
    let producers: Vec<Port> = c
        .boxes()
        .iter()
        .enumerate()
        .flat_map(|(b, n)| (0..n.outputs).map(move |j| Port::BoxOut(b, j)))
        .chain((0..c.inputs()).map(Port::Input))
        .collect();
    let consumers: Vec<Port> = c
        .boxes()
        .iter()
        .enumerate()
        .flat_map(|(b, n)| (0..n.inputs).map(move |i| Port::BoxIn(b, i)))
        .chain((0..c.outputs()).map(Port::Output))
        .collect();
    let k: usize = c.boxes().iter().map(|b| b.inputs).sum();

    let boxes = tensor_all(c.boxes().iter().map(|b| Term::constant(b.name.clone())));
    let wiring = if mode.is_linear() {
        routing_between(&producers, &consumers, c)
    } else {
        fan_wiring(&producers, &consumers, c, mode)
    };
    let body = seq(tensor(boxes, Term::Id(c.inputs())), wiring);
    let traced = Term::trace_n(k, body);
    (0..c.loops()).fold(traced, |t, _| tensor(t, Term::trace(Term::Id(1))))
}

/// Linear wiring: each producer position goes straight to the position of
/// its unique consumer.
fn routing_between(producers: &[Port], consumers: &[Port], c: &Diagram) -> Term {
    let images = producers
        .iter()
        .map(|&p| {
            let net = c.net_of(p).expect("port on a net");
            let q = net
                .consumers()
                .next()
                .expect("linear nets have one consumer");
            consumers
                .iter()
                .position(|&x| x == q)
                .expect("consumer listed")
        })
        .collect();
    perm_term(&Permutation::new(images).expect("a bijection"))
}

/// `perm ; (⊗ nets join ; fan) ; perm`.
fn fan_wiring(producers: &[Port], consumers: &[Port], c: &Diagram, mode: Mode) -> Term {
    let mut grouped_producers = Vec::new();
    let mut grouped_consumers = Vec::new();
    let mut blocks = Vec::new();
    for net in c.nets() {
        let ps: Vec<Port> = net.producers().collect();
        let cs: Vec<Port> = net.consumers().collect();
        blocks.push(if ps.is_empty() && !mode.has_monoid() {
            Term::trace(fan(cs.len() + 1))
        } else {
            seq(join(ps.len()), fan(cs.len()))
        });
        grouped_producers.extend(ps);
        grouped_consumers.extend(cs);
    }
    let before = routing(producers, &grouped_producers);
    let images: Vec<usize> = grouped_consumers
        .iter()
        .map(|q| {
            consumers
                .iter()
                .position(|x| x == q)
                .expect("consumer listed")
        })
        .collect();
    let after = perm_term(&Permutation::new(images).expect("a bijection"));
    seq(seq(before, tensor_all(blocks)), after)
}

/// `1 -> n` by repeated `comul`, `counit` for zero.
fn fan(n: usize) -> Term {
    match n {
        0 => Term::CoUnit,
        1 => Term::Id(1),
        _ => seq(Term::CoMul, tensor(Term::Id(1), fan(n - 1))),
    }
}

/// `n -> 1` by repeated `mul`, `unit` for zero.
fn join(n: usize) -> Term {
    match n {
        0 => Term::Unit,
        1 => Term::Id(1),
        _ => seq(tensor(join(n - 1), Term::Id(1)), Term::Mul),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;
    use crate::term::{FreeDecls, Signature};
    use crate::Context;

    fn ctx(mode: Mode) -> Context {
        Context::new(
            mode,
            Signature::new()
                .with("f", 1, 3)
                .with("g", 3, 1)
                .with("k", 1, 1),
        )
    }

    fn round_trip(mode: Mode, src: &str) {
        let c = ctx(mode);
        let t = parse_term(src, &c.signature, &FreeDecls::new()).unwrap();
        let d = c.interpret(&t).unwrap();
        let r = delink(&d, mode).unwrap();
        assert!(r.is_link_free() && r.is_var_free(), "{src}");
        assert!(c.interpret(&r).unwrap().equivalent(&d), "{src}");
    }

    #[test]
    fn identity_stays_identity() {
        assert_eq!(
            delink(&Diagram::identity(3), Mode::Uniflow).unwrap(),
            Term::Id(3)
        );
        assert_eq!(
            delink(&Diagram::identity(2), Mode::Biflow).unwrap(),
            Term::Id(2)
        );
    }

    #[test]
    fn uniflow_examples() {
        round_trip(
            Mode::Uniflow,
            "link x' x. link y y'. (f*y);(1*x'*y'*1);(g*x)",
        );
        round_trip(Mode::Uniflow, "sym ; k * f");
        round_trip(Mode::Uniflow, "0");
    }

    #[test]
    fn traced_examples() {
        round_trip(Mode::Biflow, "tr(f ; g)");
        round_trip(Mode::Biflow, "tr(1) * k");
        round_trip(Mode::Comonoid, "comul ; k * counit");
        round_trip(Mode::Comonoid, "tr(comul) ; k");
        round_trip(
            Mode::Spider,
            "mul ; comul ; (unit ; k) * 1 * 1 ; 1 * mul ; counit * 1",
        );
        round_trip(Mode::Spider, "unit ; counit");
    }

    #[test]
    fn uniflow_rejects_cycles() {
        let d = Diagram::constant("k", &ctx(Mode::Biflow).signature)
            .unwrap()
            .trace(Mode::Biflow)
            .unwrap();
        assert_eq!(
            delink(&d, Mode::Uniflow).unwrap_err().code(),
            "ModeViolation"
        );
    }
}
