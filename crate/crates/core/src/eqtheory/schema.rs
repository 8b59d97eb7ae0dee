//! The equation schemas of the four theories.
//!
//! A schema is instantiated in two steps: metavariables are drawn from the
//! generator at suitable types, then both sides are built from them. Keeping
//! the metavariables separate lets the checker shrink a failing instance by
//! simplifying the metavariables alone. Numeric parameters (widths, trace
//! depths) are carried as identity metavariables `Id(k)`.

use rand::Rng;

use super::gen::{wrap, TermGen};
use crate::term::{
    gamma_term, tensor_all, Arity, FreeDecls, Mode, Name, Polarity, Signature, Term,
};
use crate::typecheck::arity;

pub(crate) type Metas = fn(&mut TermGen<'_>, usize) -> Vec<Term>;
pub(crate) type Build = fn(&[Term], &Signature) -> Option<(Term, Term)>;

/// One equation of a theory, with both sides as templates.
pub struct Schema {
    pub name: &'static str,
    /// Weakest mode in which the equation holds.
    pub floor: Mode,
    pub lhs: &'static str,
    pub rhs: &'static str,
    pub side: &'static str,
    /// Closed schemas have no metavariables; one instance covers them.
    pub closed: bool,
    pub(crate) metas: Metas,
    pub(crate) build: Build,
}

/// Metavariable values and the two sides built from them.
#[derive(Clone, Debug)]
pub struct Instance {
    pub metas: Vec<Term>,
    pub lhs: Term,
    pub rhs: Term,
}

impl Schema {
    /// Draws metavariables until both sides can be built.
    pub fn instantiate(&self, gen: &mut TermGen<'_>, size: usize) -> Instance {
        loop {
            let metas = (self.metas)(gen, size);
            if let Some((lhs, rhs)) = (self.build)(&metas, gen.signature()) {
                return Instance { metas, lhs, rhs };
            }
        }
    }

    /// Builds both sides from given metavariables, if they fit together.
    pub fn rebuild(&self, metas: &[Term], sig: &Signature) -> Option<(Term, Term)> {
        (self.build)(metas, sig)
    }

    pub fn display(&self) -> String {
        if self.side.is_empty() {
            format!("{} = {}", self.lhs, self.rhs)
        } else {
            format!("{} = {}  if {}", self.lhs, self.rhs, self.side)
        }
    }
}

/// Every schema valid at `mode`, including those of the weaker modes.
pub fn schemas(mode: Mode) -> Vec<&'static Schema> {
    ALL.iter().filter(|s| mode.includes(s.floor)).collect()
}

/// Looks a schema up by name.
pub fn schema(name: &str) -> Option<&'static Schema> {
    ALL.iter().find(|s| s.name == name)
}

const U: &str = "u";
const V: &str = "v";

fn pair() -> Vec<(Name, Name)> {
    vec![(U.to_string(), V.to_string())]
}

fn uv_decls() -> FreeDecls {
    FreeDecls::from([
        (U.to_string(), Polarity::Sink),
        (V.to_string(), Polarity::Source),
    ])
}

fn ar(t: &Term, sig: &Signature) -> Option<Arity> {
    arity(t, sig, &FreeDecls::new()).ok()
}

fn ar_uv(t: &Term, sig: &Signature) -> Option<Arity> {
    arity(t, sig, &uv_decls()).ok()
}

fn width(t: &Term) -> Option<usize> {
    match t {
        Term::Id(k) => Some(*k),
        _ => None,
    }
}

fn share(size: usize, parts: usize) -> usize {
    (size / parts).max(1)
}

fn link_uv(body: Term) -> Term {
    wrap(&pair(), body)
}

/// `γ_{m,n}` written with binders: each input wire enters a sink and leaves
/// through the matching source in swapped position.
pub fn nominal_gamma(m: usize, n: usize) -> Term {
    let names: Vec<(Name, Name)> = (0..m + n)
        .map(|i| (format!("a{i}"), format!("a{i}'")))
        .collect();
    let sinks = tensor_all(names.iter().map(|(x, _)| Term::var(x.clone())));
    let sources = tensor_all(
        names[m..]
            .iter()
            .chain(&names[..m])
            .map(|(_, y)| Term::var(y.clone())),
    );
    wrap(&names, Term::seq(sinks, sources))
}

fn no_metas(_: &mut TermGen<'_>, _: usize) -> Vec<Term> {
    Vec::new()
}

fn one_closed(g: &mut TermGen<'_>, size: usize) -> Vec<Term> {
    vec![g.closed(size)]
}

fn chain3(g: &mut TermGen<'_>, size: usize) -> Vec<Term> {
    let (m, n, p, q) = (g.arity(), g.arity(), g.arity(), g.arity());
    let s = share(size, 3);
    vec![
        g.closed_typed(m, n, s),
        g.closed_typed(n, p, s),
        g.closed_typed(p, q, s),
    ]
}

fn three_closed(g: &mut TermGen<'_>, size: usize) -> Vec<Term> {
    let s = share(size, 3);
    vec![g.closed(s), g.closed(s), g.closed(s)]
}

fn two_closed(g: &mut TermGen<'_>, size: usize) -> Vec<Term> {
    let s = share(size, 2);
    vec![g.closed(s), g.closed(s)]
}

fn functoriality_metas(g: &mut TermGen<'_>, size: usize) -> Vec<Term> {
    let s = share(size, 4);
    let (m1, k1, n1) = (g.arity(), g.arity(), g.arity());
    let (m2, k2, n2) = (g.arity(), g.arity(), g.arity());
    vec![
        g.closed_typed(m1, k1, s),
        g.closed_typed(m2, k2, s),
        g.closed_typed(k1, n1, s),
        g.closed_typed(k2, n2, s),
    ]
}

fn widths2(g: &mut TermGen<'_>, _: usize) -> Vec<Term> {
    vec![Term::Id(g.arity()), Term::Id(g.arity())]
}

fn widths3(g: &mut TermGen<'_>, _: usize) -> Vec<Term> {
    vec![
        Term::Id(g.arity()),
        Term::Id(g.arity()),
        Term::Id(g.arity()),
    ]
}

fn open_and_closed(g: &mut TermGen<'_>, size: usize) -> Vec<Term> {
    let s = share(size, 2);
    let (m, n) = (g.arity(), g.arity());
    let body = g.linked(m, n, s, &pair());
    vec![body, g.closed(s)]
}

fn open_seq_left(g: &mut TermGen<'_>, size: usize) -> Vec<Term> {
    let s = share(size, 2);
    let (m, k, n) = (g.arity(), g.arity(), g.arity());
    vec![g.linked(m, k, s, &pair()), g.closed_typed(k, n, s)]
}

fn open_seq_right(g: &mut TermGen<'_>, size: usize) -> Vec<Term> {
    let s = share(size, 2);
    let (m, k, n) = (g.arity(), g.arity(), g.arity());
    vec![g.linked(k, n, s, &pair()), g.closed_typed(m, k, s)]
}

fn open_only(g: &mut TermGen<'_>, size: usize) -> Vec<Term> {
    let (m, n) = (g.arity(), g.arity());
    vec![g.linked(m, n, size, &pair())]
}

fn depth(g: &mut TermGen<'_>) -> usize {
    g.rng().gen_range(1..=2)
}

fn tightening_left_metas(g: &mut TermGen<'_>, size: usize) -> Vec<Term> {
    let s = share(size, 2);
    let k = depth(g);
    let (a0, a, b) = (g.arity(), g.arity(), g.arity());
    vec![
        Term::Id(k),
        g.closed_typed(k + a, k + b, s),
        g.closed_typed(a0, a, s),
    ]
}

fn tightening_right_metas(g: &mut TermGen<'_>, size: usize) -> Vec<Term> {
    let s = share(size, 2);
    let k = depth(g);
    let (a, b, b1) = (g.arity(), g.arity(), g.arity());
    vec![
        Term::Id(k),
        g.closed_typed(k + a, k + b, s),
        g.closed_typed(b, b1, s),
    ]
}

fn sliding_metas(g: &mut TermGen<'_>, size: usize) -> Vec<Term> {
    let s = share(size, 2);
    let (k, k1) = (depth(g), depth(g));
    let (a, b) = (g.arity(), g.arity());
    vec![
        Term::Id(b),
        g.closed_typed(k + a, k1 + b, s),
        g.closed_typed(k1, k, s),
    ]
}

fn traced_metas(g: &mut TermGen<'_>, size: usize) -> Vec<Term> {
    let k = depth(g);
    let (a, b) = (g.arity(), g.arity());
    vec![Term::Id(k), g.closed_typed(k + a, k + b, size)]
}

fn split_depth_metas(g: &mut TermGen<'_>, size: usize) -> Vec<Term> {
    let (i, j) = (depth(g) - 1, depth(g));
    let (a, b) = (g.arity(), g.arity());
    vec![
        Term::Id(i),
        Term::Id(j),
        g.closed_typed(i + j + a, i + j + b, size),
    ]
}

fn superposing_metas(g: &mut TermGen<'_>, size: usize) -> Vec<Term> {
    let s = share(size, 2);
    let k = depth(g);
    let (a, b) = (g.arity(), g.arity());
    vec![Term::Id(k), g.closed_typed(k + a, k + b, s), g.closed(s)]
}

fn trace_scope_metas(g: &mut TermGen<'_>, size: usize) -> Vec<Term> {
    let i = g.rng().gen_range(0..=1);
    let (a, b) = (g.arity(), g.arity());
    vec![Term::Id(i), g.linked(i + a, i + b, size, &pair())]
}

fn one_loop_metas(g: &mut TermGen<'_>, size: usize) -> Vec<Term> {
    let (a, b) = (g.arity(), g.arity());
    vec![g.closed_typed(1 + a, 1 + b, size)]
}

fn is_closed_term(t: &Term, sig: &Signature) -> bool {
    ar(t, sig).is_some()
}

fn doesnt_mention_uv(t: &Term) -> bool {
    let free = t.free_names();
    !free.contains(U) && !free.contains(V)
}

fn b_assoc(ms: &[Term], sig: &Signature) -> Option<(Term, Term)> {
    let [a, b, c] = ms else { return None };
    let l = Term::seq(a.clone(), Term::seq(b.clone(), c.clone()));
    let r = Term::seq(Term::seq(a.clone(), b.clone()), c.clone());
    is_closed_term(&l, sig).then_some((l, r))
}

fn b_identity_left(ms: &[Term], sig: &Signature) -> Option<(Term, Term)> {
    let [a] = ms else { return None };
    let m = ar(a, sig)?.inputs;
    Some((Term::seq(Term::Id(m), a.clone()), a.clone()))
}

fn b_identity_right(ms: &[Term], sig: &Signature) -> Option<(Term, Term)> {
    let [a] = ms else { return None };
    let n = ar(a, sig)?.outputs;
    Some((Term::seq(a.clone(), Term::Id(n)), a.clone()))
}

fn b_functoriality(ms: &[Term], sig: &Signature) -> Option<(Term, Term)> {
    let [m1, m2, n1, n2] = ms else { return None };
    let l = Term::seq(
        Term::tensor(m1.clone(), m2.clone()),
        Term::tensor(n1.clone(), n2.clone()),
    );
    let r = Term::tensor(
        Term::seq(m1.clone(), n1.clone()),
        Term::seq(m2.clone(), n2.clone()),
    );
    (is_closed_term(&l, sig) && is_closed_term(&r, sig)).then_some((l, r))
}

fn b_tensor_identity(ms: &[Term], _: &Signature) -> Option<(Term, Term)> {
    let (m, n) = (width(ms.first()?)?, width(ms.get(1)?)?);
    Some((Term::tensor(Term::Id(m), Term::Id(n)), Term::Id(m + n)))
}

fn b_strict_assoc(ms: &[Term], sig: &Signature) -> Option<(Term, Term)> {
    let [a, b, c] = ms else { return None };
    let l = Term::tensor(a.clone(), Term::tensor(b.clone(), c.clone()));
    let r = Term::tensor(Term::tensor(a.clone(), b.clone()), c.clone());
    is_closed_term(&l, sig).then_some((l, r))
}

fn b_strict_unit_left(ms: &[Term], sig: &Signature) -> Option<(Term, Term)> {
    let [a] = ms else { return None };
    is_closed_term(a, sig).then(|| (Term::tensor(Term::Id(0), a.clone()), a.clone()))
}

fn b_strict_unit_right(ms: &[Term], sig: &Signature) -> Option<(Term, Term)> {
    let [a] = ms else { return None };
    is_closed_term(a, sig).then(|| (Term::tensor(a.clone(), Term::Id(0)), a.clone()))
}

fn b_symmetry(ms: &[Term], sig: &Signature) -> Option<(Term, Term)> {
    let [a, b] = ms else { return None };
    let (x, y) = (ar(a, sig)?, ar(b, sig)?);
    let l = Term::seq(
        Term::tensor(a.clone(), b.clone()),
        gamma_term(x.outputs, y.outputs),
    );
    let r = Term::seq(
        gamma_term(x.inputs, y.inputs),
        Term::tensor(b.clone(), a.clone()),
    );
    Some((l, r))
}

fn b_symmetry_involution(ms: &[Term], _: &Signature) -> Option<(Term, Term)> {
    let (m, n) = (width(ms.first()?)?, width(ms.get(1)?)?);
    Some((
        Term::seq(gamma_term(m, n), gamma_term(n, m)),
        Term::Id(m + n),
    ))
}

fn b_strict_sym_empty_left(_: &[Term], _: &Signature) -> Option<(Term, Term)> {
    Some((nominal_gamma(0, 1), Term::Id(1)))
}

fn b_strict_sym_empty_right(_: &[Term], _: &Signature) -> Option<(Term, Term)> {
    Some((nominal_gamma(1, 0), Term::Id(1)))
}

fn b_strict_sym_split(ms: &[Term], _: &Signature) -> Option<(Term, Term)> {
    let (m, n, p) = (width(ms.first()?)?, width(ms.get(1)?)?, width(ms.get(2)?)?);
    let r = Term::seq(
        Term::tensor(nominal_gamma(m, n), Term::Id(p)),
        Term::tensor(Term::Id(n), nominal_gamma(m, p)),
    );
    Some((nominal_gamma(m, n + p), r))
}

fn b_alpha(ms: &[Term], sig: &Signature) -> Option<(Term, Term)> {
    let [a] = ms else { return None };
    ar_uv(a, sig)?;
    let map = [
        (U.to_string(), "u'".to_string()),
        (V.to_string(), "v'".to_string()),
    ]
    .into();
    let renamed = a.rename_free(&map);
    Some((link_uv(a.clone()), Term::link("u'", "v'", renamed)))
}

fn b_extrude_seq_left(ms: &[Term], sig: &Signature) -> Option<(Term, Term)> {
    let [m, n] = ms else { return None };
    if !doesnt_mention_uv(n) {
        return None;
    }
    let l = Term::seq(link_uv(m.clone()), n.clone());
    let r = link_uv(Term::seq(m.clone(), n.clone()));
    is_closed_term(&l, sig).then_some((l, r))
}

fn b_extrude_seq_right(ms: &[Term], sig: &Signature) -> Option<(Term, Term)> {
    let [m, n] = ms else { return None };
    if !doesnt_mention_uv(n) {
        return None;
    }
    let l = Term::seq(n.clone(), link_uv(m.clone()));
    let r = link_uv(Term::seq(n.clone(), m.clone()));
    is_closed_term(&l, sig).then_some((l, r))
}

fn b_extrude_tensor_left(ms: &[Term], sig: &Signature) -> Option<(Term, Term)> {
    let [m, n] = ms else { return None };
    if !doesnt_mention_uv(n) {
        return None;
    }
    let l = Term::tensor(link_uv(m.clone()), n.clone());
    let r = link_uv(Term::tensor(m.clone(), n.clone()));
    is_closed_term(&l, sig).then_some((l, r))
}

fn b_extrude_tensor_right(ms: &[Term], sig: &Signature) -> Option<(Term, Term)> {
    let [m, n] = ms else { return None };
    if !doesnt_mention_uv(n) {
        return None;
    }
    let l = Term::tensor(n.clone(), link_uv(m.clone()));
    let r = link_uv(Term::tensor(n.clone(), m.clone()));
    is_closed_term(&l, sig).then_some((l, r))
}

fn b_link_identity(_: &[Term], _: &Signature) -> Option<(Term, Term)> {
    Some((link_uv(Term::seq(Term::var(U), Term::var(V))), Term::Id(1)))
}

fn b_tightening_left(ms: &[Term], sig: &Signature) -> Option<(Term, Term)> {
    let [k, f, g] = ms else { return None };
    let k = width(k)?;
    let l = Term::trace_n(
        k,
        Term::seq(Term::tensor(Term::Id(k), g.clone()), f.clone()),
    );
    let r = Term::seq(g.clone(), Term::trace_n(k, f.clone()));
    (is_closed_term(&l, sig) && is_closed_term(&r, sig)).then_some((l, r))
}

fn b_tightening_right(ms: &[Term], sig: &Signature) -> Option<(Term, Term)> {
    let [k, f, g] = ms else { return None };
    let k = width(k)?;
    let l = Term::trace_n(
        k,
        Term::seq(f.clone(), Term::tensor(Term::Id(k), g.clone())),
    );
    let r = Term::seq(Term::trace_n(k, f.clone()), g.clone());
    (is_closed_term(&l, sig) && is_closed_term(&r, sig)).then_some((l, r))
}

fn b_sliding(ms: &[Term], sig: &Signature) -> Option<(Term, Term)> {
    let [b, f, g] = ms else { return None };
    let b = width(b)?;
    let (fa, ga) = (ar(f, sig)?, ar(g, sig)?);
    // f : k + a -> k' + b and g : k' -> k
    let (k, k1) = (ga.outputs, ga.inputs);
    let a = fa.inputs.checked_sub(k)?;
    if fa.outputs != k1 + b {
        return None;
    }
    let l = Term::trace_n(
        k,
        Term::seq(f.clone(), Term::tensor(g.clone(), Term::Id(b))),
    );
    let r = Term::trace_n(
        k1,
        Term::seq(Term::tensor(g.clone(), Term::Id(a)), f.clone()),
    );
    Some((l, r))
}

fn b_vanishing_zero(ms: &[Term], sig: &Signature) -> Option<(Term, Term)> {
    let [_, f] = ms else { return None };
    is_closed_term(f, sig).then(|| (Term::trace_n(0, f.clone()), f.clone()))
}

fn b_vanishing_sum(ms: &[Term], sig: &Signature) -> Option<(Term, Term)> {
    let [i, j, f] = ms else { return None };
    let (i, j) = (width(i)?, width(j)?);
    let l = Term::trace_n(i + j, f.clone());
    is_closed_term(&l, sig).then(|| (l, Term::trace_n(i, Term::trace_n(j, f.clone()))))
}

fn b_superposing(ms: &[Term], sig: &Signature) -> Option<(Term, Term)> {
    let [k, f, n] = ms else { return None };
    let k = width(k)?;
    let l = Term::trace_n(k, Term::tensor(f.clone(), n.clone()));
    let r = Term::tensor(Term::trace_n(k, f.clone()), n.clone());
    is_closed_term(&l, sig).then_some((l, r))
}

fn b_yanking(_: &[Term], _: &Signature) -> Option<(Term, Term)> {
    Some((Term::trace(Term::Sym), Term::Id(1)))
}

fn b_trace_scope(ms: &[Term], sig: &Signature) -> Option<(Term, Term)> {
    let [i, m] = ms else { return None };
    let i = width(i)?;
    let l = link_uv(Term::trace_n(i, m.clone()));
    let r = Term::trace_n(i, link_uv(m.clone()));
    (is_closed_term(&l, sig) && is_closed_term(&r, sig)).then_some((l, r))
}

fn b_trace_as_link(ms: &[Term], sig: &Signature) -> Option<(Term, Term)> {
    let [m] = ms else { return None };
    let a = ar(m, sig)?;
    let (i, o) = (a.inputs.checked_sub(1)?, a.outputs.checked_sub(1)?);
    let body = Term::seq(
        Term::seq(Term::tensor(Term::var("t'"), Term::Id(i)), m.clone()),
        Term::tensor(Term::var("t"), Term::Id(o)),
    );
    Some((Term::trace(m.clone()), Term::link("t", "t'", body)))
}

fn b_counit_link(_: &[Term], _: &Signature) -> Option<(Term, Term)> {
    Some((Term::CoUnit, link_uv(Term::var(U))))
}

fn b_comul_link(_: &[Term], _: &Signature) -> Option<(Term, Term)> {
    let body = Term::tensor(Term::tensor(Term::var(U), Term::var(V)), Term::var(V));
    Some((Term::CoMul, link_uv(body)))
}

fn b_coassoc(_: &[Term], _: &Signature) -> Option<(Term, Term)> {
    let l = Term::seq(Term::CoMul, Term::tensor(Term::CoMul, Term::Id(1)));
    let r = Term::seq(Term::CoMul, Term::tensor(Term::Id(1), Term::CoMul));
    Some((l, r))
}

fn b_cocomm(_: &[Term], _: &Signature) -> Option<(Term, Term)> {
    Some((Term::seq(Term::CoMul, Term::Sym), Term::CoMul))
}

fn b_counitality(_: &[Term], _: &Signature) -> Option<(Term, Term)> {
    let l = Term::seq(Term::CoMul, Term::tensor(Term::CoUnit, Term::Id(1)));
    Some((l, Term::Id(1)))
}

fn b_unit_link(_: &[Term], _: &Signature) -> Option<(Term, Term)> {
    Some((Term::Unit, link_uv(Term::var(V))))
}

fn b_mul_link(_: &[Term], _: &Signature) -> Option<(Term, Term)> {
    let body = Term::tensor(Term::tensor(Term::var(U), Term::var(U)), Term::var(V));
    Some((Term::Mul, link_uv(body)))
}

fn b_mul_assoc(_: &[Term], _: &Signature) -> Option<(Term, Term)> {
    let l = Term::seq(Term::tensor(Term::Mul, Term::Id(1)), Term::Mul);
    let r = Term::seq(Term::tensor(Term::Id(1), Term::Mul), Term::Mul);
    Some((l, r))
}

fn b_mul_comm(_: &[Term], _: &Signature) -> Option<(Term, Term)> {
    Some((Term::seq(Term::Sym, Term::Mul), Term::Mul))
}

fn b_unitality(_: &[Term], _: &Signature) -> Option<(Term, Term)> {
    let l = Term::seq(Term::tensor(Term::Unit, Term::Id(1)), Term::Mul);
    Some((l, Term::Id(1)))
}

fn b_frobenius(_: &[Term], _: &Signature) -> Option<(Term, Term)> {
    let l = Term::seq(
        Term::tensor(Term::Id(1), Term::CoMul),
        Term::tensor(Term::Mul, Term::Id(1)),
    );
    Some((l, Term::seq(Term::Mul, Term::CoMul)))
}

fn b_special(_: &[Term], _: &Signature) -> Option<(Term, Term)> {
    Some((Term::seq(Term::CoMul, Term::Mul), Term::Id(1)))
}

macro_rules! schema {
    ($name:expr, $floor:ident, $lhs:expr, $rhs:expr, $side:expr, $metas:expr, $build:expr) => {
        Schema {
            name: $name,
            floor: Mode::$floor,
            lhs: $lhs,
            rhs: $rhs,
            side: $side,
            closed: false,
            metas: $metas,
            build: $build,
        }
    };
    ($name:expr, $floor:ident, $lhs:expr, $rhs:expr, $build:expr) => {
        Schema {
            name: $name,
            floor: Mode::$floor,
            lhs: $lhs,
            rhs: $rhs,
            side: "",
            closed: true,
            metas: no_metas,
            build: $build,
        }
    };
}

static ALL: &[Schema] = &[
    schema!(
        "associativity",
        Uniflow,
        "M1 ; (M2 ; M3)",
        "(M1 ; M2) ; M3",
        "",
        chain3,
        b_assoc
    ),
    schema!(
        "identity-left",
        Uniflow,
        "m ; M",
        "M",
        "M : m -> n",
        one_closed,
        b_identity_left
    ),
    schema!(
        "identity-right",
        Uniflow,
        "M ; n",
        "M",
        "M : m -> n",
        one_closed,
        b_identity_right
    ),
    schema!(
        "tensor-functoriality",
        Uniflow,
        "(M1 * M2) ; (N1 * N2)",
        "(M1 ; N1) * (M2 ; N2)",
        "",
        functoriality_metas,
        b_functoriality
    ),
    schema!(
        "tensor-identity",
        Uniflow,
        "m * n",
        "m+n",
        "",
        widths2,
        b_tensor_identity
    ),
    schema!(
        "strictness-associativity",
        Uniflow,
        "M1 * (M2 * M3)",
        "(M1 * M2) * M3",
        "",
        three_closed,
        b_strict_assoc
    ),
    schema!(
        "strictness-unit-left",
        Uniflow,
        "0 * M",
        "M",
        "",
        one_closed,
        b_strict_unit_left
    ),
    schema!(
        "strictness-unit-right",
        Uniflow,
        "M * 0",
        "M",
        "",
        one_closed,
        b_strict_unit_right
    ),
    schema!(
        "symmetry",
        Uniflow,
        "(M1 * M2) ; sym[n1,n2]",
        "sym[m1,m2] ; (M2 * M1)",
        "Mi : mi -> ni",
        two_closed,
        b_symmetry
    ),
    schema!(
        "symmetry-involution",
        Uniflow,
        "sym[m,n] ; sym[n,m]",
        "m+n",
        "",
        widths2,
        b_symmetry_involution
    ),
    schema!(
        "strict-symmetry-empty-left",
        Uniflow,
        "sym[0,1]",
        "1",
        b_strict_sym_empty_left
    ),
    schema!(
        "strict-symmetry-empty-right",
        Uniflow,
        "sym[1,0]",
        "1",
        b_strict_sym_empty_right
    ),
    schema!(
        "strict-symmetry-split",
        Uniflow,
        "sym[m,n+p]",
        "(sym[m,n] * p) ; (n * sym[m,p])",
        "sym written with binders",
        widths3,
        b_strict_sym_split
    ),
    schema!(
        "alpha",
        Uniflow,
        "link u v. M",
        "link u' v'. M[u'/u, v'/v]",
        "u', v' fresh",
        open_only,
        b_alpha
    ),
    schema!(
        "scope-extrusion-seq-left",
        Uniflow,
        "(link u v. M) ; N",
        "link u v. (M ; N)",
        "u, v not free in N",
        open_seq_left,
        b_extrude_seq_left
    ),
    schema!(
        "scope-extrusion-seq-right",
        Uniflow,
        "N ; (link u v. M)",
        "link u v. (N ; M)",
        "u, v not free in N",
        open_seq_right,
        b_extrude_seq_right
    ),
    schema!(
        "scope-extrusion-tensor-left",
        Uniflow,
        "(link u v. M) * N",
        "link u v. (M * N)",
        "u, v not free in N",
        open_and_closed,
        b_extrude_tensor_left
    ),
    schema!(
        "scope-extrusion-tensor-right",
        Uniflow,
        "N * (link u v. M)",
        "link u v. (N * M)",
        "u, v not free in N",
        open_and_closed,
        b_extrude_tensor_right
    ),
    schema!(
        "link-identity",
        Uniflow,
        "link u v. u ; v",
        "1",
        b_link_identity
    ),
    schema!(
        "left-tightening",
        Biflow,
        "tr[k]((k * G) ; F)",
        "G ; tr[k](F)",
        "",
        tightening_left_metas,
        b_tightening_left
    ),
    schema!(
        "right-tightening",
        Biflow,
        "tr[k](F ; (k * G))",
        "tr[k](F) ; G",
        "",
        tightening_right_metas,
        b_tightening_right
    ),
    schema!(
        "sliding",
        Biflow,
        "tr[k](F ; (G * b))",
        "tr[k']((G * a) ; F)",
        "F : k+a -> k'+b, G : k' -> k",
        sliding_metas,
        b_sliding
    ),
    schema!(
        "vanishing-zero",
        Biflow,
        "tr[0](F)",
        "F",
        "",
        traced_metas,
        b_vanishing_zero
    ),
    schema!(
        "vanishing-sum",
        Biflow,
        "tr[i+j](F)",
        "tr[i](tr[j](F))",
        "",
        split_depth_metas,
        b_vanishing_sum
    ),
    schema!(
        "superposing",
        Biflow,
        "tr[k](F * N)",
        "tr[k](F) * N",
        "",
        superposing_metas,
        b_superposing
    ),
    schema!("yanking", Biflow, "tr(sym)", "1", b_yanking),
    schema!(
        "trace-scope-extrusion",
        Biflow,
        "link u v. tr[i](M)",
        "tr[i](link u v. M)",
        "i in {0, 1}",
        trace_scope_metas,
        b_trace_scope
    ),
    schema!(
        "trace-as-link",
        Biflow,
        "tr(M)",
        "link t t'. (t' * m) ; M ; (t * n)",
        "M : 1+m -> 1+n",
        one_loop_metas,
        b_trace_as_link
    ),
    schema!(
        "counit-as-link",
        Comonoid,
        "counit",
        "link u v. u",
        b_counit_link
    ),
    schema!(
        "comul-as-link",
        Comonoid,
        "comul",
        "link u v. u * v * v",
        b_comul_link
    ),
    schema!(
        "coassociativity",
        Comonoid,
        "comul ; (comul * 1)",
        "comul ; (1 * comul)",
        b_coassoc
    ),
    schema!(
        "cocommutativity",
        Comonoid,
        "comul ; sym",
        "comul",
        b_cocomm
    ),
    schema!(
        "counitality",
        Comonoid,
        "comul ; (counit * 1)",
        "1",
        b_counitality
    ),
    schema!("unit-as-link", Spider, "unit", "link u v. v", b_unit_link),
    schema!(
        "mul-as-link",
        Spider,
        "mul",
        "link u v. u * u * v",
        b_mul_link
    ),
    schema!(
        "mul-associativity",
        Spider,
        "(mul * 1) ; mul",
        "(1 * mul) ; mul",
        b_mul_assoc
    ),
    schema!("mul-commutativity", Spider, "sym ; mul", "mul", b_mul_comm),
    schema!("unitality", Spider, "(unit * 1) ; mul", "1", b_unitality),
    schema!(
        "frobenius",
        Spider,
        "(1 * comul) ; (mul * 1)",
        "mul ; comul",
        b_frobenius
    ),
    schema!("special", Spider, "comul ; mul", "1", b_special),
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::typecheck::typecheck;

    #[test]
    fn cumulative_by_mode() {
        let names = |m: Mode| schemas(m).iter().map(|s| s.name).collect::<Vec<_>>();
        assert!(names(Mode::Uniflow).contains(&"link-identity"));
        assert!(!names(Mode::Uniflow).contains(&"yanking"));
        assert!(names(Mode::Biflow).contains(&"yanking"));
        assert!(!names(Mode::Comonoid).contains(&"mul-as-link"));
        assert!(names(Mode::Spider).contains(&"mul-as-link"));
        for w in Mode::ALL.windows(2) {
            assert!(schemas(w[0]).len() < schemas(w[1]).len());
        }
    }

    #[test]
    fn names_are_unique() {
        for (i, a) in ALL.iter().enumerate() {
            assert!(ALL[i + 1..].iter().all(|b| b.name != a.name), "{}", a.name);
        }
    }

    #[test]
    fn link_identity_shape() {
        let (l, r) = schema("link-identity")
            .unwrap()
            .rebuild(&[], &Signature::new())
            .unwrap();
        assert_eq!(
            l,
            Term::link("u", "v", Term::seq(Term::var("u"), Term::var("v")))
        );
        assert_eq!(r, Term::Id(1));
    }

    #[test]
    fn nominal_gamma_types() {
        let sig = Signature::new();
        for (m, n) in [(0, 1), (1, 0), (2, 2), (1, 3)] {
            let j =
                typecheck(&nominal_gamma(m, n), Mode::Uniflow, &sig, &FreeDecls::new()).unwrap();
            assert_eq!((j.dom, j.cod), (m + n, m + n));
        }
    }

    #[test]
    fn instances_have_matching_types() {
        let sig = Signature::law_default();
        for mode in Mode::ALL {
            for s in schemas(mode) {
                let mut g = TermGen::new(mode, &sig, 11);
                for _ in 0..5 {
                    let inst = s.instantiate(&mut g, 12);
                    let l = typecheck(&inst.lhs, mode, &sig, &FreeDecls::new())
                        .unwrap_or_else(|e| panic!("{} {e}", s.name));
                    let r = typecheck(&inst.rhs, mode, &sig, &FreeDecls::new())
                        .unwrap_or_else(|e| panic!("{} {e}", s.name));
                    assert_eq!(l.arity(), r.arity(), "{}", s.name);
                }
            }
        }
    }
}
