//! The term language: combinators, variables, the `link` binder, trace, and
//! the (co)monoid generators, together with name handling and the derived
//! builders for identities, symmetries and permutations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

pub type Name = String;

/// Which diagram discipline a term is checked and interpreted under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    /// Acyclic diagrams; variables are linear and ordered by an anchor.
    Uniflow,
    /// Traced diagrams; variables are linear.
    Biflow,
    /// Traced diagrams with copying (`comul`, `counit`); sources may be shared.
    Comonoid,
    /// Traced diagrams with copying and merging; no linearity at all.
    Spider,
}

impl Mode {
    pub const ALL: [Mode; 4] = [Mode::Uniflow, Mode::Biflow, Mode::Comonoid, Mode::Spider];

    pub fn has_trace(self) -> bool {
        self != Mode::Uniflow
    }

    pub fn has_comonoid(self) -> bool {
        matches!(self, Mode::Comonoid | Mode::Spider)
    }

    pub fn has_monoid(self) -> bool {
        self == Mode::Spider
    }

    /// Linear modes require every variable to occur exactly once.
    pub fn is_linear(self) -> bool {
        matches!(self, Mode::Uniflow | Mode::Biflow)
    }

    /// `true` if `self` admits every construct and law of `floor`.
    pub fn includes(self, floor: Mode) -> bool {
        self >= floor
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Uniflow => "uniflow",
            Mode::Biflow => "biflow",
            Mode::Comonoid => "comonoid",
            Mode::Spider => "spider",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "uniflow" => Ok(Mode::Uniflow),
            "biflow" => Ok(Mode::Biflow),
            "comonoid" => Ok(Mode::Comonoid),
            "spider" => Ok(Mode::Spider),
            other => Err(format!("unknown mode `{other}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arity {
    pub inputs: usize,
    pub outputs: usize,
}

impl Arity {
    pub fn new(inputs: usize, outputs: usize) -> Self {
        Arity { inputs, outputs }
    }
}

/// Constants available to terms, each with a fixed arity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    constants: BTreeMap<Name, Arity>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a constant. Returns `false` (and leaves the signature unchanged)
    /// if the name is already taken.
    pub fn insert(&mut self, name: impl Into<Name>, inputs: usize, outputs: usize) -> bool {
        let name = name.into();
        if self.constants.contains_key(&name) {
            return false;
        }
        self.constants.insert(name, Arity::new(inputs, outputs));
        true
    }

    pub fn with(mut self, name: &str, inputs: usize, outputs: usize) -> Self {
        self.insert(name, inputs, outputs);
        self
    }

    pub fn get(&self, name: &str) -> Option<Arity> {
        self.constants.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.constants.contains_key(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, Arity)> {
        self.constants.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn len(&self) -> usize {
        self.constants.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constants.is_empty()
    }

    /// The signature used by the law checker and the term generator: one
    /// constant for each small arity shape that is useful when building
    /// random well-typed terms.
    pub fn law_default() -> Self {
        Signature::new()
            .with("f", 1, 3)
            .with("g", 3, 1)
            .with("k", 1, 1)
            .with("h", 2, 1)
            .with("p", 1, 2)
            .with("d", 1, 0)
            .with("s", 0, 1)
            .with("c", 0, 0)
    }
}

/// How a variable occurrence is typed: a source emits a wire (`0 -> 1`), a
/// sink absorbs one (`1 -> 0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    Source,
    Sink,
}

impl Polarity {
    pub fn as_str(self) -> &'static str {
        match self {
            Polarity::Source => "source",
            Polarity::Sink => "sink",
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Polarity declarations for free variables.
pub type FreeDecls = BTreeMap<Name, Polarity>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Const(Name),
    /// Identity on `n` wires; `Id(0)` is the empty diagram.
    Id(usize),
    /// The unit symmetry `2 -> 2`.
    Sym,
    Seq(Box<Term>, Box<Term>),
    Tensor(Box<Term>, Box<Term>),
    Var(Name),
    /// `link sink source. body`: every sink occurrence of `sink` is joined to
    /// the source occurrences of `source`.
    Link {
        sink: Name,
        source: Name,
        body: Box<Term>,
    },
    /// Unit trace, feeding output 0 back into input 0.
    Trace(Box<Term>),
    CoMul,
    CoUnit,
    Mul,
    Unit,
}

impl Term {
    pub fn constant(name: impl Into<Name>) -> Term {
        Term::Const(name.into())
    }

    pub fn var(name: impl Into<Name>) -> Term {
        Term::Var(name.into())
    }

    pub fn link(sink: impl Into<Name>, source: impl Into<Name>, body: Term) -> Term {
        Term::Link {
            sink: sink.into(),
            source: source.into(),
            body: Box::new(body),
        }
    }

    pub fn seq(left: Term, right: Term) -> Term {
        Term::Seq(Box::new(left), Box::new(right))
    }

    pub fn tensor(left: Term, right: Term) -> Term {
        Term::Tensor(Box::new(left), Box::new(right))
    }

    pub fn trace(body: Term) -> Term {
        Term::Trace(Box::new(body))
    }

    /// `i` nested unit traces.
    pub fn trace_n(i: usize, body: Term) -> Term {
        (0..i).fold(body, |t, _| Term::trace(t))
    }

    /// Left-nested composition of a non-empty sequence.
    pub fn seq_all(items: impl IntoIterator<Item = Term>) -> Option<Term> {
        items.into_iter().reduce(Term::seq)
    }

    /// Left-nested tensor of a non-empty sequence.
    pub fn tensor_all(items: impl IntoIterator<Item = Term>) -> Option<Term> {
        items.into_iter().reduce(Term::tensor)
    }

    pub fn children(&self) -> Vec<&Term> {
        match self {
            Term::Seq(a, b) | Term::Tensor(a, b) => vec![a, b],
            Term::Link { body, .. } | Term::Trace(body) => vec![body],
            _ => Vec::new(),
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    /// Free variable names, regardless of polarity.
    pub fn free_names(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        let mut bound = Vec::new();
        collect_free(self, &mut bound, &mut out);
        out
    }

    /// Free variables split by declared polarity. Names without a
    /// declaration land in `undeclared`.
    pub fn free_vars(&self, decls: &FreeDecls) -> FreeVars {
        let mut fv = FreeVars::default();
        for name in self.free_names() {
            match decls.get(&name) {
                Some(Polarity::Source) => fv.sources.insert(name),
                Some(Polarity::Sink) => fv.sinks.insert(name),
                None => fv.undeclared.insert(name),
            };
        }
        fv
    }

    /// Every name occurring anywhere, free or bound, including binder names.
    pub fn all_names(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.visit(&mut |t| match t {
            Term::Var(x) => {
                out.insert(x.clone());
            }
            Term::Link { sink, source, .. } => {
                out.insert(sink.clone());
                out.insert(source.clone());
            }
            _ => {}
        });
        out
    }

    /// Pre-order traversal.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Term)) {
        f(self);
        for c in self.children() {
            c.visit(f);
        }
    }

    pub fn contains(&self, pred: &impl Fn(&Term) -> bool) -> bool {
        pred(self) || self.children().iter().any(|c| c.contains(pred))
    }

    pub fn is_link_free(&self) -> bool {
        !self.contains(&|t| matches!(t, Term::Link { .. }))
    }

    pub fn is_var_free(&self) -> bool {
        !self.contains(&|t| matches!(t, Term::Var(_)))
    }

    /// No identities on one or more wires, symmetries, traces or (co)monoid
    /// generators.
    pub fn is_combinator_free(&self) -> bool {
        !self.contains(&|t| {
            matches!(
                t,
                Term::Id(1..)
                    | Term::Sym
                    | Term::Trace(_)
                    | Term::CoMul
                    | Term::CoUnit
                    | Term::Mul
                    | Term::Unit
            )
        })
    }

    /// The subterm at `path`, where each step picks a child by index.
    pub fn at_path(&self, path: &[usize]) -> Option<&Term> {
        match path.split_first() {
            None => Some(self),
            Some((&i, rest)) => self.children().get(i)?.at_path(rest),
        }
    }

    /// A copy with the subterm at `path` replaced, or `None` for a bad path.
    pub fn replace_at(&self, path: &[usize], new: Term) -> Option<Term> {
        let Some((&i, rest)) = path.split_first() else {
            return Some(new);
        };
        Some(match (self, i) {
            (Term::Seq(a, b), 0) => Term::seq(a.replace_at(rest, new)?, (**b).clone()),
            (Term::Seq(a, b), 1) => Term::seq((**a).clone(), b.replace_at(rest, new)?),
            (Term::Tensor(a, b), 0) => Term::tensor(a.replace_at(rest, new)?, (**b).clone()),
            (Term::Tensor(a, b), 1) => Term::tensor((**a).clone(), b.replace_at(rest, new)?),
            (Term::Link { sink, source, body }, 0) => {
                Term::link(sink.clone(), source.clone(), body.replace_at(rest, new)?)
            }
            (Term::Trace(a), 0) => Term::trace(a.replace_at(rest, new)?),
            _ => return None,
        })
    }

    /// Every path in pre-order, the root first.
    pub fn paths(&self) -> Vec<Vec<usize>> {
        fn go(t: &Term, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            out.push(cur.clone());
            for (i, c) in t.children().into_iter().enumerate() {
                cur.push(i);
                go(c, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Renames the binder at `path` (and its bound occurrences) to the given
    /// fresh names.
    pub fn alpha_rename(
        &self,
        path: &[usize],
        fresh_sink: &str,
        fresh_source: &str,
    ) -> Result<Term, NameError> {
        let names = self.all_names();
        for fresh in [fresh_sink, fresh_source] {
            if names.contains(fresh) {
                return Err(NameError::Capture(fresh.to_string()));
            }
        }
        if fresh_sink == fresh_source {
            return Err(NameError::Capture(fresh_sink.to_string()));
        }
        rename_at(self, path, fresh_sink, fresh_source)
    }

    /// Substitutes free occurrences of variables according to `map`.
    pub fn rename_free(&self, map: &BTreeMap<Name, Name>) -> Term {
        match self {
            Term::Var(x) => Term::Var(map.get(x).cloned().unwrap_or_else(|| x.clone())),
            Term::Link { sink, source, body } => {
                let mut inner = map.clone();
                inner.remove(sink);
                inner.remove(source);
                Term::link(sink.clone(), source.clone(), body.rename_free(&inner))
            }
            Term::Seq(a, b) => Term::seq(a.rename_free(map), b.rename_free(map)),
            Term::Tensor(a, b) => Term::tensor(a.rename_free(map), b.rename_free(map)),
            Term::Trace(a) => Term::trace(a.rename_free(map)),
            other => other.clone(),
        }
    }

    /// Occurrences of free variable `name`.
    pub fn count_free(&self, name: &str) -> usize {
        match self {
            Term::Var(x) => usize::from(x == name),
            Term::Link { sink, source, body } => {
                if sink == name || source == name {
                    0
                } else {
                    body.count_free(name)
                }
            }
            _ => self.children().iter().map(|c| c.count_free(name)).sum(),
        }
    }
}

/// Free variables of a term split by polarity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreeVars {
    pub sources: BTreeSet<Name>,
    pub sinks: BTreeSet<Name>,
    pub undeclared: BTreeSet<Name>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum NameError {
    #[error("name `{0}` is not fresh")]
    Capture(String),
    #[error("no binder at the given path")]
    NoBinder,
}

fn collect_free(t: &Term, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
    match t {
        Term::Var(x) => {
            if !bound.contains(x) {
                out.insert(x.clone());
            }
        }
        Term::Link { sink, source, body } => {
            bound.push(sink.clone());
            bound.push(source.clone());
            collect_free(body, bound, out);
            bound.pop();
            bound.pop();
        }
        _ => {
            for c in t.children() {
                collect_free(c, bound, out);
            }
        }
    }
}

fn rename_at(
    t: &Term,
    path: &[usize],
    fresh_sink: &str,
    fresh_source: &str,
) -> Result<Term, NameError> {
    match (t, path.split_first()) {
        (Term::Link { sink, source, body }, None) => {
            let mut map = BTreeMap::new();
            map.insert(sink.clone(), fresh_sink.to_string());
            map.insert(source.clone(), fresh_source.to_string());
            Ok(Term::link(fresh_sink, fresh_source, body.rename_free(&map)))
        }
        (_, None) => Err(NameError::NoBinder),
        (Term::Seq(a, b), Some((&i, rest))) => Ok(match i {
            0 => Term::seq(rename_at(a, rest, fresh_sink, fresh_source)?, (**b).clone()),
            1 => Term::seq((**a).clone(), rename_at(b, rest, fresh_sink, fresh_source)?),
            _ => return Err(NameError::NoBinder),
        }),
        (Term::Tensor(a, b), Some((&i, rest))) => Ok(match i {
            0 => Term::tensor(rename_at(a, rest, fresh_sink, fresh_source)?, (**b).clone()),
            1 => Term::tensor((**a).clone(), rename_at(b, rest, fresh_sink, fresh_source)?),
            _ => return Err(NameError::NoBinder),
        }),
        (Term::Link { sink, source, body }, Some((0, rest))) => Ok(Term::link(
            sink.clone(),
            source.clone(),
            rename_at(body, rest, fresh_sink, fresh_source)?,
        )),
        (Term::Trace(body), Some((0, rest))) => Ok(Term::trace(rename_at(
            body,
            rest,
            fresh_sink,
            fresh_source,
        )?)),
        _ => Err(NameError::NoBinder),
    }
}

/// Generates names of the form `{prefix}{i}` / `{prefix}{i}'` that avoid a
/// reserved set.
#[derive(Clone, Debug)]
pub struct FreshNames {
    prefix: String,
    next: usize,
    avoid: BTreeSet<Name>,
}

impl FreshNames {
    pub fn new(prefix: &str, avoid: BTreeSet<Name>) -> Self {
        FreshNames {
            prefix: prefix.to_string(),
            next: 0,
            avoid,
        }
    }

    /// A fresh `(sink, source)` pair: `w3`, `w3'`.
    pub fn pair(&mut self) -> (Name, Name) {
        loop {
            let a = format!("{}{}", self.prefix, self.next);
            let b = format!("{a}'");
            self.next += 1;
            if !self.avoid.contains(&a) && !self.avoid.contains(&b) {
                self.avoid.insert(a.clone());
                self.avoid.insert(b.clone());
                return (a, b);
            }
        }
    }

    pub fn single(&mut self) -> Name {
        loop {
            let a = format!("{}{}", self.prefix, self.next);
            self.next += 1;
            if !self.avoid.contains(&a) {
                self.avoid.insert(a.clone());
                return a;
            }
        }
    }
}

/// Identity on `n` wires.
pub fn id_term(n: usize) -> Term {
    Term::Id(n)
}

/// Composition that drops identities. Both sides must already agree on the
/// middle arity; identities carry no structure so this is semantics-preserving.
pub fn seq(left: Term, right: Term) -> Term {
    match (left, right) {
        (Term::Id(_), r) => r,
        (l, Term::Id(_)) => l,
        (l, r) => Term::seq(l, r),
    }
}

/// Tensor that drops empty identities and merges adjacent identities.
pub fn tensor(left: Term, right: Term) -> Term {
    match (left, right) {
        (Term::Id(0), r) => r,
        (l, Term::Id(0)) => l,
        (Term::Id(a), Term::Id(b)) => Term::Id(a + b),
        (l, r) => Term::tensor(l, r),
    }
}

pub fn tensor_all(items: impl IntoIterator<Item = Term>) -> Term {
    items.into_iter().fold(Term::Id(0), tensor)
}

/// Symmetry `m + n -> n + m` built from unit symmetries and identities.
pub fn gamma_term(m: usize, n: usize) -> Term {
    if m == 0 || n == 0 {
        return Term::Id(m + n);
    }
    if m == 1 && n == 1 {
        return Term::Sym;
    }
    if n > 1 {
        // γ(m, 1 + (n-1)) = (γ(m,1) ⊗ (n-1)) ; (1 ⊗ γ(m, n-1))
        seq(
            tensor(gamma_term(m, 1), Term::Id(n - 1)),
            tensor(Term::Id(1), gamma_term(m, n - 1)),
        )
    } else {
        // γ(1 + (m-1), 1) = (1 ⊗ γ(m-1, 1)) ; (γ(1,1) ⊗ (m-1))
        seq(
            tensor(Term::Id(1), gamma_term(m - 1, 1)),
            tensor(Term::Sym, Term::Id(m - 1)),
        )
    }
}

/// A bijection on `0..len`: input wire `i` is sent to output position `p[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Permutation(images))
    }

    pub fn identity(len: usize) -> Self {
        Permutation((0..len).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p] = i;
        }
        Permutation(inv)
    }
}

/// A term of type `w -> w` that routes input `i` to output `p(i)`, built from
/// adjacent transpositions in bubble-sort order.
pub fn perm_term(p: &Permutation) -> Term {
    let w = p.len();
    // wires[pos] = the input wire currently at position pos
    let mut wires: Vec<usize> = (0..w).collect();
    let mut layers = Vec::new();
    for pass in 0..w {
        let mut swapped = false;
        for j in 0..w.saturating_sub(1 + pass) {
            if p.image(wires[j]) > p.image(wires[j + 1]) {
                wires.swap(j, j + 1);
                layers.push(tensor(tensor(Term::Id(j), Term::Sym), Term::Id(w - j - 2)));
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    layers.into_iter().reduce(Term::seq).unwrap_or(Term::Id(w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Term {
        Term::var("x")
    }
    fn y() -> Term {
        Term::var("y")
    }

    #[test]
    fn free_vars_of_identity_is_empty() {
        assert_eq!(
            Term::Id(1).free_vars(&FreeDecls::new()),
            FreeVars::default()
        );
    }

    #[test]
    fn link_identity_is_closed() {
        let t = Term::link("x", "y", Term::seq(x(), y()));
        assert!(t.free_names().is_empty());
    }

    #[test]
    fn free_vars_respect_scope_and_declarations() {
        let t = Term::tensor(Term::var("a"), Term::link("b", "c", Term::var("b")));
        let decls: FreeDecls = [("a".to_string(), Polarity::Sink)].into_iter().collect();
        let fv = t.free_vars(&decls);
        assert!(fv.sources.is_empty());
        assert_eq!(fv.sinks, ["a".to_string()].into_iter().collect());
        // brute force: every Var occurrence not under a binder of the same name
        let mut all_vars = BTreeSet::new();
        t.visit(&mut |s| {
            if let Term::Var(v) = s {
                all_vars.insert(v.clone());
            }
        });
        let bound: BTreeSet<_> = ["b".to_string(), "c".to_string()].into_iter().collect();
        let brute: BTreeSet<_> = all_vars.difference(&bound).cloned().collect();
        assert_eq!(brute, t.free_names());
    }

    #[test]
    fn alpha_rename_root() {
        let t = Term::link("x", "y", Term::seq(x(), y()));
        let r = t.alpha_rename(&[], "x'", "y'").unwrap();
        assert_eq!(
            r,
            Term::link("x'", "y'", Term::seq(Term::var("x'"), Term::var("y'")))
        );
    }

    #[test]
    fn alpha_rename_requires_freshness() {
        let t = Term::link("x", "y", Term::seq(x(), y()));
        assert_eq!(
            t.alpha_rename(&[], "x", "y"),
            Err(NameError::Capture("x".into()))
        );
        assert_eq!(t.alpha_rename(&[0], "a", "b"), Err(NameError::NoBinder));
    }

    #[test]
    fn alpha_rename_respects_shadowing() {
        // inner binder rebinds x; its occurrences must not be renamed
        let inner = Term::link("x", "z", Term::seq(x(), Term::var("z")));
        let t = Term::link("x", "y", Term::tensor(Term::seq(x(), y()), inner.clone()));
        let r = t.alpha_rename(&[], "p", "q").unwrap();
        assert_eq!(
            r,
            Term::link(
                "p",
                "q",
                Term::tensor(Term::seq(Term::var("p"), Term::var("q")), inner)
            )
        );
    }

    #[test]
    fn gamma_small_cases() {
        assert_eq!(gamma_term(0, 1), Term::Id(1));
        assert_eq!(gamma_term(1, 0), Term::Id(1));
        assert_eq!(gamma_term(1, 1), Term::Sym);
        assert_eq!(gamma_term(0, 3), Term::Id(3));
    }

    #[test]
    fn perm_term_trivial_cases() {
        assert_eq!(perm_term(&Permutation::identity(3)), Term::Id(3));
        assert_eq!(perm_term(&Permutation::new(vec![1, 0]).unwrap()), Term::Sym);
        assert_eq!(perm_term(&Permutation::identity(0)), Term::Id(0));
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![0, 0]).is_none());
        assert!(Permutation::new(vec![2, 0]).is_none());
        let p = Permutation::new(vec![2, 0, 1]).unwrap();
        assert_eq!(p.inverse().images(), &[1, 2, 0]);
    }

    #[test]
    fn combinator_free_detection() {
        assert!(Term::link("x", "y", Term::seq(x(), y())).is_combinator_free());
        assert!(Term::Id(0).is_combinator_free());
        assert!(!Term::Id(1).is_combinator_free());
        assert!(!Term::trace(Term::Sym).is_combinator_free());
    }

    #[test]
    fn replace_and_paths_agree() {
        let t = Term::seq(Term::tensor(x(), Term::Sym), Term::trace(y()));
        let paths = t.paths();
        assert_eq!(paths.len(), t.size());
        for p in &paths {
            let sub = t.at_path(p).unwrap().clone();
            assert_eq!(t.replace_at(p, sub).unwrap(), t);
        }
        assert_eq!(
            t.replace_at(&[1, 0], Term::Id(2)).unwrap(),
            Term::seq(Term::tensor(x(), Term::Sym), Term::trace(Term::Id(2)))
        );
        assert!(t.replace_at(&[2], Term::Id(0)).is_none());
    }
}
