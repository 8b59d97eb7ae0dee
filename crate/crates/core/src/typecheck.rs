//! Mode-indexed type checking.
//!
//! The checker computes `Γ | Δ ⊢ M : m -> n` bottom-up. Free names are
//! tracked with occurrence counts so the same code serves the linear modes
//! (every name exactly once), comonoid (sinks once, sources any number of
//! times) and spider (no constraint). In uniflow mode the judgement also
//! carries the anchor order; link checking strengthens it on demand.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::term::{Arity, FreeDecls, Mode, Name, Polarity, Signature, Term};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("cannot compose: left side has {left_cod} outputs, right side has {right_dom} inputs")]
    ArityMismatch { left_cod: usize, right_dom: usize },
    #[error("trace needs at least one input and one output, body has type {dom} -> {cod}")]
    NegativeArity { dom: usize, cod: usize },
    #[error("variable `{name}`: {reason}")]
    LinearityViolation { name: Name, reason: String },
    #[error("`{name}` cannot be both the sink and the source of one link")]
    PolarityMismatch { name: Name },
    #[error("linking `{sink}` to `{src}` would make the anchor cyclic")]
    AnchorCycle { sink: Name, src: Name },
    #[error("{construct} is not available in {mode} mode")]
    ModeViolation { construct: &'static str, mode: Mode },
    #[error("variable `{0}` is neither bound nor declared")]
    UnboundVariable(Name),
    #[error("unknown constant `{0}`")]
    UnknownConstant(Name),
}

impl TypeError {
    pub fn code(&self) -> &'static str {
        match self {
            TypeError::ArityMismatch { .. } => "ArityMismatch",
            TypeError::NegativeArity { .. } => "NegativeArity",
            TypeError::LinearityViolation { .. } => "LinearityViolation",
            TypeError::PolarityMismatch { .. } => "PolarityMismatch",
            TypeError::AnchorCycle { .. } => "AnchorCycle",
            TypeError::ModeViolation { .. } => "ModeViolation",
            TypeError::UnboundVariable(_) => "UnboundVariable",
            TypeError::UnknownConstant(_) => "UnknownConstant",
        }
    }
}

/// A reflexive, transitive relation on variable names.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Anchor {
    carrier: BTreeSet<Name>,
    pairs: BTreeSet<(Name, Name)>,
}

impl Anchor {
    fn singleton(x: &str) -> Self {
        Anchor {
            carrier: BTreeSet::from([x.to_string()]),
            pairs: BTreeSet::from([(x.to_string(), x.to_string())]),
        }
    }

    pub fn carrier(&self) -> &BTreeSet<Name> {
        &self.carrier
    }

    pub fn pairs(&self) -> &BTreeSet<(Name, Name)> {
        &self.pairs
    }

    pub fn le(&self, a: &str, b: &str) -> bool {
        self.pairs.contains(&(a.to_string(), b.to_string()))
    }

    /// `[R ∪ R′ ∪ C×C′]`: everything on the left precedes everything on the
    /// right. The union is already closed when both operands are.
    fn sequence(&self, right: &Anchor) -> Anchor {
        let mut out = self.parallel(right);
        for a in &self.carrier {
            for b in &right.carrier {
                out.pairs.insert((a.clone(), b.clone()));
            }
        }
        out
    }

    fn parallel(&self, other: &Anchor) -> Anchor {
        Anchor {
            carrier: self.carrier.union(&other.carrier).cloned().collect(),
            pairs: self.pairs.union(&other.pairs).cloned().collect(),
        }
    }

    /// Adds `a <= b` and closes transitively. Fails (returns `false`, leaving
    /// `self` untouched) when antisymmetry would break.
    pub fn strengthen(&mut self, a: &str, b: &str) -> bool {
        if a == b || self.le(a, b) {
            return true;
        }
        if self.le(b, a) {
            return false;
        }
        let below: Vec<&Name> = self.carrier.iter().filter(|c| self.le(c, a)).collect();
        let above: Vec<&Name> = self.carrier.iter().filter(|c| self.le(b, c)).collect();
        let mut new = Vec::new();
        for l in &below {
            for u in &above {
                new.push(((*l).clone(), (*u).clone()));
            }
        }
        self.pairs.extend(new);
        true
    }

    /// `R ∖ {x, y}`.
    fn remove(&mut self, x: &str, y: &str) {
        self.carrier.remove(x);
        self.carrier.remove(y);
        self.pairs
            .retain(|(a, b)| a != x && a != y && b != x && b != y);
    }

    pub fn is_partial_order(&self) -> bool {
        let refl = self.carrier.iter().all(|c| self.le(c, c));
        let within = self
            .pairs
            .iter()
            .all(|(a, b)| self.carrier.contains(a) && self.carrier.contains(b));
        let antisym = self.pairs.iter().all(|(a, b)| a == b || !self.le(b, a));
        let trans = self.pairs.iter().all(|(a, b)| {
            self.pairs
                .range((b.clone(), String::new())..)
                .take_while(|(c, _)| c == b)
                .all(|(_, d)| self.le(a, d))
        });
        refl && within && antisym && trans
    }
}

/// The result of checking a term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Judgement {
    /// Source names with occurrence counts.
    pub sources: BTreeMap<Name, usize>,
    /// Sink names with occurrence counts.
    pub sinks: BTreeMap<Name, usize>,
    pub dom: usize,
    pub cod: usize,
    /// Present in uniflow mode only.
    pub anchor: Option<Anchor>,
}

impl Judgement {
    pub fn arity(&self) -> Arity {
        Arity::new(self.dom, self.cod)
    }

    pub fn gamma(&self) -> BTreeSet<Name> {
        self.sources.keys().cloned().collect()
    }

    pub fn delta(&self) -> BTreeSet<Name> {
        self.sinks.keys().cloned().collect()
    }

    pub fn is_closed(&self) -> bool {
        self.sources.is_empty() && self.sinks.is_empty()
    }

    /// Renders `Γ | Δ ⊢ m -> n`, followed by the non-trivial anchor pairs.
    pub fn render(&self) -> String {
        let names = |m: &BTreeMap<Name, usize>| {
            let v: Vec<String> = m
                .iter()
                .map(|(n, &c)| {
                    if c == 1 {
                        n.clone()
                    } else {
                        format!("{n}^{c}")
                    }
                })
                .collect();
            if v.is_empty() {
                "-".to_string()
            } else {
                v.join(", ")
            }
        };
        let mut s = format!(
            "{} | {} |- {} -> {}",
            names(&self.sources),
            names(&self.sinks),
            self.dom,
            self.cod
        );
        if let Some(a) = &self.anchor {
            let strict: Vec<String> = a
                .pairs()
                .iter()
                .filter(|(x, y)| x != y)
                .map(|(x, y)| format!("{x}<={y}"))
                .collect();
            if !strict.is_empty() {
                s.push_str(&format!(" | {}", strict.join(", ")));
            }
        }
        s
    }
}

pub fn typecheck(
    t: &Term,
    mode: Mode,
    sig: &Signature,
    decls: &FreeDecls,
) -> Result<Judgement, TypeError> {
    Checker::new(mode, sig, decls, None).check(t)
}

/// Like [`typecheck`], but in uniflow mode the derivation applies extra
/// strengthening steps at random points. The result may differ in its anchor
/// (or fail where the canonical derivation succeeds), never in its contexts
/// or arity.
pub fn typecheck_randomized(
    t: &Term,
    mode: Mode,
    sig: &Signature,
    decls: &FreeDecls,
    seed: u64,
) -> Result<Judgement, TypeError> {
    Checker::new(mode, sig, decls, Some(ChaCha8Rng::seed_from_u64(seed))).check(t)
}

/// The arity of `t`, ignoring linearity and mode gates.
pub fn arity(t: &Term, sig: &Signature, decls: &FreeDecls) -> Result<Arity, TypeError> {
    typecheck(t, Mode::Spider, sig, decls).map(|j| j.arity())
}

struct Checker<'a> {
    mode: Mode,
    sig: &'a Signature,
    decls: &'a FreeDecls,
    scope: Vec<(Name, Polarity)>,
    rng: Option<ChaCha8Rng>,
}

impl<'a> Checker<'a> {
    fn new(mode: Mode, sig: &'a Signature, decls: &'a FreeDecls, rng: Option<ChaCha8Rng>) -> Self {
        Checker {
            mode,
            sig,
            decls,
            scope: Vec::new(),
            rng,
        }
    }

    fn polarity(&self, x: &str) -> Option<Polarity> {
        self.scope
            .iter()
            .rev()
            .find(|(n, _)| n == x)
            .map(|(_, p)| *p)
            .or_else(|| self.decls.get(x).copied())
    }

    fn uniflow(&self) -> bool {
        self.mode == Mode::Uniflow
    }

    fn closed(&self, dom: usize, cod: usize) -> Judgement {
        Judgement {
            sources: BTreeMap::new(),
            sinks: BTreeMap::new(),
            dom,
            cod,
            anchor: self.uniflow().then(Anchor::default),
        }
    }

    fn gate(&self, ok: bool, construct: &'static str) -> Result<(), TypeError> {
        if ok {
            Ok(())
        } else {
            Err(TypeError::ModeViolation {
                construct,
                mode: self.mode,
            })
        }
    }

    fn check(&mut self, t: &Term) -> Result<Judgement, TypeError> {
        let mut j = match t {
            Term::Const(k) => {
                let a = self
                    .sig
                    .get(k)
                    .ok_or_else(|| TypeError::UnknownConstant(k.clone()))?;
                self.closed(a.inputs, a.outputs)
            }
            Term::Id(n) => self.closed(*n, *n),
            Term::Sym => self.closed(2, 2),
            Term::CoMul => {
                self.gate(self.mode.has_comonoid(), "comul")?;
                self.closed(1, 2)
            }
            Term::CoUnit => {
                self.gate(self.mode.has_comonoid(), "counit")?;
                self.closed(1, 0)
            }
            Term::Mul => {
                self.gate(self.mode.has_monoid(), "mul")?;
                self.closed(2, 1)
            }
            Term::Unit => {
                self.gate(self.mode.has_monoid(), "unit")?;
                self.closed(0, 1)
            }
            Term::Var(x) => {
                let pol = self
                    .polarity(x)
                    .ok_or_else(|| TypeError::UnboundVariable(x.clone()))?;
                let mut j = self.closed(0, 0);
                match pol {
                    Polarity::Source => {
                        j.cod = 1;
                        j.sources.insert(x.clone(), 1);
                    }
                    Polarity::Sink => {
                        j.dom = 1;
                        j.sinks.insert(x.clone(), 1);
                    }
                }
                if self.uniflow() {
                    j.anchor = Some(Anchor::singleton(x));
                }
                j
            }
            Term::Seq(l, r) => {
                let jl = self.check(l)?;
                let jr = self.check(r)?;
                if jl.cod != jr.dom {
                    return Err(TypeError::ArityMismatch {
                        left_cod: jl.cod,
                        right_dom: jr.dom,
                    });
                }
                let anchor = match (&jl.anchor, &jr.anchor) {
                    (Some(a), Some(b)) => Some(a.sequence(b)),
                    _ => None,
                };
                self.merge(jl.dom, jr.cod, &jl, &jr, anchor)?
            }
            Term::Tensor(l, r) => {
                let jl = self.check(l)?;
                let jr = self.check(r)?;
                let anchor = match (&jl.anchor, &jr.anchor) {
                    (Some(a), Some(b)) => Some(a.parallel(b)),
                    _ => None,
                };
                self.merge(jl.dom + jr.dom, jl.cod + jr.cod, &jl, &jr, anchor)?
            }
            Term::Trace(body) => {
                self.gate(self.mode.has_trace(), "trace")?;
                let mut j = self.check(body)?;
                if j.dom == 0 || j.cod == 0 {
                    return Err(TypeError::NegativeArity {
                        dom: j.dom,
                        cod: j.cod,
                    });
                }
                j.dom -= 1;
                j.cod -= 1;
                j
            }
            Term::Link { sink, source, body } => {
                if sink == source {
                    return Err(TypeError::PolarityMismatch { name: sink.clone() });
                }
                self.scope.push((sink.clone(), Polarity::Sink));
                self.scope.push((source.clone(), Polarity::Source));
                let inner = self.check(body);
                self.scope.truncate(self.scope.len() - 2);
                let mut j = inner?;
                let xs = j.sinks.remove(sink).unwrap_or(0);
                let ys = j.sources.remove(source).unwrap_or(0);
                let violation = |name: &Name, reason: String| TypeError::LinearityViolation {
                    name: name.clone(),
                    reason,
                };
                match self.mode {
                    Mode::Uniflow | Mode::Biflow => {
                        if xs != 1 {
                            return Err(violation(
                                sink,
                                format!("bound sink occurs {xs} times, expected once"),
                            ));
                        }
                        if ys != 1 {
                            return Err(violation(
                                source,
                                format!("bound source occurs {ys} times, expected once"),
                            ));
                        }
                    }
                    Mode::Comonoid if xs != 1 => {
                        return Err(violation(
                            sink,
                            format!("bound sink occurs {xs} times, expected once"),
                        ));
                    }
                    _ => {}
                }
                if let Some(a) = j.anchor.as_mut() {
                    if !a.strengthen(sink, source) {
                        return Err(TypeError::AnchorCycle {
                            sink: sink.clone(),
                            src: source.clone(),
                        });
                    }
                    a.remove(sink, source);
                }
                j
            }
        };
        self.maybe_strengthen(&mut j);
        debug_assert!(j.anchor.as_ref().is_none_or(Anchor::is_partial_order));
        Ok(j)
    }

    fn merge(
        &self,
        dom: usize,
        cod: usize,
        a: &Judgement,
        b: &Judgement,
        anchor: Option<Anchor>,
    ) -> Result<Judgement, TypeError> {
        let sources = self.merge_counts(&a.sources, &b.sources, Polarity::Source)?;
        let sinks = self.merge_counts(&a.sinks, &b.sinks, Polarity::Sink)?;
        Ok(Judgement {
            sources,
            sinks,
            dom,
            cod,
            anchor,
        })
    }

    fn merge_counts(
        &self,
        a: &BTreeMap<Name, usize>,
        b: &BTreeMap<Name, usize>,
        pol: Polarity,
    ) -> Result<BTreeMap<Name, usize>, TypeError> {
        let mut out = a.clone();
        for (n, &c) in b {
            let e = out.entry(n.clone()).or_insert(0);
            *e += c;
            let repeated = *e > 1;
            let forbidden = match self.mode {
                Mode::Uniflow | Mode::Biflow => true,
                Mode::Comonoid => pol == Polarity::Sink,
                Mode::Spider => false,
            };
            if repeated && forbidden {
                return Err(TypeError::LinearityViolation {
                    name: n.clone(),
                    reason: format!("{pol} used more than once in {} mode", self.mode),
                });
            }
        }
        Ok(out)
    }

    /// Random extra strengthening, only in randomized derivations.
    fn maybe_strengthen(&mut self, j: &mut Judgement) {
        let (Some(rng), Some(anchor)) = (self.rng.as_mut(), j.anchor.as_mut()) else {
            return;
        };
        let names: Vec<Name> = anchor.carrier().iter().cloned().collect();
        if names.len() < 2 || !rng.gen_bool(0.3) {
            return;
        }
        let a = &names[rng.gen_range(0..names.len())];
        let b = &names[rng.gen_range(0..names.len())];
        anchor.strengthen(a, b);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        Signature::new()
            .with("f", 1, 3)
            .with("g", 3, 1)
            .with("k", 1, 1)
    }

    fn v(x: &str) -> Term {
        Term::var(x)
    }

    fn check(t: &Term, mode: Mode) -> Result<Judgement, TypeError> {
        typecheck(t, mode, &sig(), &FreeDecls::new())
    }

    #[test]
    fn f_then_g() {
        let j = check(
            &Term::seq(Term::constant("f"), Term::constant("g")),
            Mode::Uniflow,
        )
        .unwrap();
        assert_eq!((j.dom, j.cod), (1, 1));
        assert!(j.is_closed());
    }

    #[test]
    fn link_identity_types() {
        let t = Term::link("x", "y", Term::seq(v("x"), v("y")));
        let j = check(&t, Mode::Uniflow).unwrap();
        assert_eq!((j.dom, j.cod), (1, 1));
        assert!(j.anchor.unwrap().carrier().is_empty());
    }

    #[test]
    fn anchor_cycle_in_uniflow_only() {
        let t = Term::link(
            "x",
            "y",
            Term::seq(v("y"), Term::seq(Term::constant("k"), v("x"))),
        );
        let err = check(&t, Mode::Uniflow).unwrap_err();
        assert_eq!(err.code(), "AnchorCycle");
        let j = check(&t, Mode::Biflow).unwrap();
        assert_eq!((j.dom, j.cod), (0, 0));
    }

    #[test]
    fn comul_and_mul_as_links() {
        let psi = Term::link(
            "x",
            "y",
            Term::tensor_all([v("x"), v("y"), v("y")]).unwrap(),
        );
        let j = check(&psi, Mode::Comonoid).unwrap();
        assert_eq!((j.dom, j.cod), (1, 2));
        let phi = Term::link(
            "x",
            "y",
            Term::tensor_all([v("x"), v("x"), v("y")]).unwrap(),
        );
        assert_eq!(
            check(&phi, Mode::Comonoid).unwrap_err().code(),
            "LinearityViolation"
        );
        let j = check(&phi, Mode::Spider).unwrap();
        assert_eq!((j.dom, j.cod), (2, 1));
    }

    #[test]
    fn mode_gates() {
        assert_eq!(
            check(&Term::CoMul, Mode::Biflow).unwrap_err().code(),
            "ModeViolation"
        );
        assert_eq!(
            check(&Term::Mul, Mode::Comonoid).unwrap_err().code(),
            "ModeViolation"
        );
        assert_eq!(
            check(&Term::trace(Term::Sym), Mode::Uniflow)
                .unwrap_err()
                .code(),
            "ModeViolation"
        );
        assert!(check(&Term::Unit, Mode::Spider).is_ok());
    }

    #[test]
    fn trace_arity() {
        let j = check(&Term::trace(Term::Sym), Mode::Biflow).unwrap();
        assert_eq!((j.dom, j.cod), (1, 1));
        let err = check(&Term::trace(Term::CoUnit), Mode::Comonoid).unwrap_err();
        assert_eq!(err, TypeError::NegativeArity { dom: 1, cod: 0 });
    }

    #[test]
    fn arity_mismatch() {
        let err = check(
            &Term::seq(Term::constant("f"), Term::constant("k")),
            Mode::Uniflow,
        )
        .unwrap_err();
        assert_eq!(
            err,
            TypeError::ArityMismatch {
                left_cod: 3,
                right_dom: 1
            }
        );
    }

    #[test]
    fn unbound_and_polarity() {
        assert_eq!(
            check(&v("z"), Mode::Uniflow).unwrap_err().code(),
            "UnboundVariable"
        );
        let t = Term::link("x", "x", v("x"));
        assert_eq!(
            check(&t, Mode::Spider).unwrap_err().code(),
            "PolarityMismatch"
        );
    }

    #[test]
    fn free_declarations() {
        let mut decls = FreeDecls::new();
        decls.insert("a".into(), Polarity::Sink);
        let t = Term::tensor(v("a"), Term::link("b", "c", Term::seq(v("b"), v("c"))));
        let j = typecheck(&t, Mode::Uniflow, &sig(), &decls).unwrap();
        assert_eq!(j.delta(), BTreeSet::from(["a".to_string()]));
        assert_eq!((j.dom, j.cod), (2, 1));
    }

    #[test]
    fn linear_duplicates_rejected() {
        let mut decls = FreeDecls::new();
        decls.insert("a".into(), Polarity::Source);
        let t = Term::tensor(v("a"), v("a"));
        let err = typecheck(&t, Mode::Biflow, &sig(), &decls).unwrap_err();
        assert_eq!(err.code(), "LinearityViolation");
        let j = typecheck(&t, Mode::Comonoid, &sig(), &decls).unwrap();
        assert_eq!(j.sources.get("a"), Some(&2));
    }

    #[test]
    fn unused_binder_in_linear_mode() {
        let t = Term::link("x", "y", v("y"));
        assert_eq!(
            check(&t, Mode::Biflow).unwrap_err().code(),
            "LinearityViolation"
        );
        assert!(check(&Term::link("x", "y", v("x")), Mode::Comonoid).is_ok());
    }

    #[test]
    fn anchor_strengthen_and_remove() {
        let mut a = Anchor::singleton("a").parallel(&Anchor::singleton("b"));
        assert!(a.strengthen("a", "b"));
        assert!(!a.strengthen("b", "a"));
        assert!(a.is_partial_order());
        let c = a.sequence(&Anchor::singleton("c"));
        assert!(c.le("a", "c") && c.le("b", "c"));
        assert!(c.is_partial_order());
    }

    #[test]
    fn render_shows_counts_and_anchor() {
        let mut decls = FreeDecls::new();
        decls.insert("a".into(), Polarity::Sink);
        decls.insert("b".into(), Polarity::Source);
        let j = typecheck(&Term::seq(v("a"), v("b")), Mode::Uniflow, &sig(), &decls).unwrap();
        assert_eq!(j.render(), "b | a |- 1 -> 1 | a<=b");
    }
}
