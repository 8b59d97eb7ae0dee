//! Type-directed random terms.
//!
//! Terms are grown top-down from a target type `m -> n`. Variable
//! occurrences that must appear below a node (bound by an enclosing `link`,
//! or free variables of an open term) are passed down as a pending list and
//! distributed among the children; a leaf places whatever is left with
//! `(sources * m) ; core ; (sinks * n)`. Generated terms are checked and
//! regenerated until they type check, which takes care of the rare anchor
//! conflicts in uniflow mode.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::term::{tensor_all, FreeDecls, Mode, Name, Polarity, Signature, Term};
use crate::typecheck::typecheck;

const MAX_ARITY: usize = 3;
const ATTEMPTS: usize = 200;

/// Internal node budget for a requested size. Leaves grow by the variable
/// plumbing and padding they carry, about three nodes each on average.
fn budget(size: usize) -> usize {
    size.div_ceil(3).max(1)
}

/// A deterministic random generator of well-typed terms.
pub struct TermGen<'a> {
    rng: ChaCha8Rng,
    mode: Mode,
    sig: &'a Signature,
    next_name: usize,
}

#[derive(Clone, Debug)]
struct Occ {
    name: Name,
    pol: Polarity,
    /// Binder the occurrence belongs to, for the uniflow ordering rule.
    pair: Option<usize>,
}

impl<'a> TermGen<'a> {
    pub fn new(mode: Mode, sig: &'a Signature, seed: u64) -> Self {
        TermGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            mode,
            sig,
            next_name: 0,
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn signature(&self) -> &Signature {
        self.sig
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A random arity in `0..=MAX_ARITY`, biased towards small values.
    pub fn arity(&mut self) -> usize {
        let r: f64 = self.rng.gen();
        if r < 0.2 {
            0
        } else if r < 0.55 {
            1
        } else if r < 0.85 {
            2
        } else {
            MAX_ARITY
        }
    }

    /// A closed term of random type.
    pub fn closed(&mut self, size: usize) -> Term {
        let (m, n) = (self.arity(), self.arity());
        self.closed_typed(m, n, size)
    }

    /// A closed term of type `m -> n`.
    pub fn closed_typed(&mut self, m: usize, n: usize, size: usize) -> Term {
        self.typed(m, n, size, &FreeDecls::new())
    }

    /// A term of type `m -> n` whose free variables are exactly `decls`,
    /// each used as often as the mode requires (once in the linear modes).
    pub fn typed(&mut self, m: usize, n: usize, size: usize, decls: &FreeDecls) -> Term {
        for _ in 0..ATTEMPTS {
            let pending: Vec<Occ> = decls
                .iter()
                .flat_map(|(name, &pol)| {
                    let count = self.free_count(pol);
                    (0..count).map(move |_| Occ {
                        name: name.clone(),
                        pol,
                        pair: None,
                    })
                })
                .collect();
            let t = self.term(m, n, budget(size), pending);
            if let Ok(j) = typecheck(&t, self.mode, self.sig, decls) {
                if (j.dom, j.cod) == (m, n) {
                    return t;
                }
            }
        }
        // a plain leaf always type checks when there are no variables
        let t = self.core(m, n);
        debug_assert!(decls.is_empty());
        t
    }

    /// A body of type `m -> n` for the binders `pairs` (sink, source), such
    /// that wrapping it in the binders gives a closed well-typed term. Each
    /// pair occurs as often as a `link` allows in the mode.
    pub fn linked(&mut self, m: usize, n: usize, size: usize, pairs: &[(Name, Name)]) -> Term {
        for _ in 0..ATTEMPTS {
            let mut pending = Vec::new();
            for (i, (x, y)) in pairs.iter().enumerate() {
                self.push_pair(&mut pending, x, y, usize::MAX - i);
            }
            pending.shuffle(&mut self.rng);
            let body = self.term(m, n, budget(size), pending);
            let wrapped = wrap(pairs, body.clone());
            if let Ok(j) = typecheck(&wrapped, self.mode, self.sig, &FreeDecls::new()) {
                if (j.dom, j.cod) == (m, n) {
                    return body;
                }
            }
        }
        // each sink once, then each source once, around a plain core
        let k = pairs.len();
        let sinks = tensor_all(pairs.iter().map(|(x, _)| Term::var(x.clone())));
        let sources = tensor_all(pairs.iter().map(|(_, y)| Term::var(y.clone())));
        let head = Term::seq(self.core(m, k + n), Term::tensor(sinks, Term::Id(n)));
        let tail = Term::seq(Term::tensor(sources, Term::Id(n)), self.core(k + n, n));
        Term::seq(head, tail)
    }

    fn push_pair(&mut self, pending: &mut Vec<Occ>, x: &str, y: &str, id: usize) {
        let (xs, ys) = match self.mode {
            Mode::Uniflow | Mode::Biflow => (1, 1),
            Mode::Comonoid => (1, self.rng.gen_range(0..=2)),
            Mode::Spider => (self.rng.gen_range(0..=2), self.rng.gen_range(0..=2)),
        };
        for _ in 0..xs {
            pending.push(Occ {
                name: x.to_string(),
                pol: Polarity::Sink,
                pair: Some(id),
            });
        }
        for _ in 0..ys {
            pending.push(Occ {
                name: y.to_string(),
                pol: Polarity::Source,
                pair: Some(id),
            });
        }
    }

    fn free_count(&mut self, pol: Polarity) -> usize {
        match (self.mode, pol) {
            (Mode::Uniflow | Mode::Biflow, _) | (Mode::Comonoid, Polarity::Sink) => 1,
            _ => self.rng.gen_range(1..=2),
        }
    }

    fn fresh_pair(&mut self) -> (Name, Name) {
        let i = self.next_name;
        self.next_name += 1;
        (format!("x{i}"), format!("y{i}"))
    }

    fn term(&mut self, m: usize, n: usize, size: usize, pending: Vec<Occ>) -> Term {
        if size <= 1 {
            return self.leaf(m, n, pending);
        }
        let traced = self.mode.has_trace();
        let choice = self.rng.gen_range(0..100);
        match choice {
            0..=29 => self.seq(m, n, size, pending),
            30..=54 => self.tensor(m, n, size, pending),
            55..=74 => self.link(m, n, size, pending),
            75..=86 if traced => {
                let body = self.term(m + 1, n + 1, size - 1, pending);
                Term::trace(body)
            }
            _ => self.seq(m, n, size, pending),
        }
    }

    fn split_sizes(&mut self, size: usize) -> (usize, usize) {
        let rest = size.saturating_sub(1).max(2);
        let a = self.rng.gen_range(1..rest);
        (a, rest - a)
    }

    fn seq(&mut self, m: usize, n: usize, size: usize, pending: Vec<Occ>) -> Term {
        let k = self.arity();
        let (sa, sb) = self.split_sizes(size);
        let mut left = Vec::new();
        let mut right = Vec::new();
        // sinks first so that sources can follow their partner in uniflow
        let mut sink_side: Vec<(usize, bool)> = Vec::new();
        let (sinks, sources): (Vec<Occ>, Vec<Occ>) =
            pending.into_iter().partition(|o| o.pol == Polarity::Sink);
        for o in sinks {
            let go_left = self.rng.gen_bool(0.5);
            if let Some(p) = o.pair {
                sink_side.push((p, go_left));
            }
            if go_left {
                left.push(o);
            } else {
                right.push(o);
            }
        }
        for o in sources {
            let forced_right = self.mode == Mode::Uniflow
                && o.pair
                    .is_some_and(|p| sink_side.iter().any(|&(q, l)| q == p && !l));
            if forced_right || self.rng.gen_bool(0.5) {
                right.push(o);
            } else {
                left.push(o);
            }
        }
        let a = self.term(m, k, sa, left);
        let b = self.term(k, n, sb, right);
        Term::seq(a, b)
    }

    fn tensor(&mut self, m: usize, n: usize, size: usize, pending: Vec<Occ>) -> Term {
        let m1 = self.rng.gen_range(0..=m);
        let n1 = self.rng.gen_range(0..=n);
        let (sa, sb) = self.split_sizes(size);
        let (left, right): (Vec<Occ>, Vec<Occ>) =
            pending.into_iter().partition(|_| self.rng.gen_bool(0.5));
        let a = self.term(m1, n1, sa, left);
        let b = self.term(m - m1, n - n1, sb, right);
        Term::tensor(a, b)
    }

    fn link(&mut self, m: usize, n: usize, size: usize, mut pending: Vec<Occ>) -> Term {
        let (x, y) = self.fresh_pair();
        let id = self.next_name;
        self.push_pair(&mut pending, &x, &y, id);
        pending.shuffle(&mut self.rng);
        let body = self.term(m, n, size - 1, pending);
        Term::link(x, y, body)
    }

    fn leaf(&mut self, m: usize, n: usize, pending: Vec<Occ>) -> Term {
        if pending.is_empty() {
            return self.core(m, n);
        }
        let both_of_a_pair = pending.iter().any(|o| {
            o.pol == Polarity::Sink
                && o.pair.is_some()
                && pending
                    .iter()
                    .any(|p| p.pol == Polarity::Source && p.pair == o.pair)
        });
        if self.mode == Mode::Uniflow && both_of_a_pair {
            // sinks strictly before sources
            let k = self.arity();
            let (sinks, sources): (Vec<Occ>, Vec<Occ>) =
                pending.into_iter().partition(|o| o.pol == Polarity::Sink);
            let a = self.leaf(m, k, sinks);
            let b = self.leaf(k, n, sources);
            return Term::seq(a, b);
        }
        let sources: Vec<Term> = pending
            .iter()
            .filter(|o| o.pol == Polarity::Source)
            .map(|o| Term::var(o.name.clone()))
            .collect();
        let sinks: Vec<Term> = pending
            .iter()
            .filter(|o| o.pol == Polarity::Sink)
            .map(|o| Term::var(o.name.clone()))
            .collect();
        let (s, k) = (sources.len(), sinks.len());
        let core = self.core(s + m, k + n);
        let mut t = core;
        if s > 0 {
            t = Term::seq(Term::tensor(tensor_all(sources), Term::Id(m)), t);
        }
        if k > 0 {
            t = Term::seq(t, Term::tensor(tensor_all(sinks), Term::Id(n)));
        }
        t
    }

    /// A variable-free term of type `m -> n`: a fitting constant or generator
    /// when one exists, otherwise identities padded with absorbers/emitters.
    pub fn core(&mut self, m: usize, n: usize) -> Term {
        let mut options: Vec<Term> = Vec::new();
        if m == n {
            options.push(Term::Id(m));
        }
        if (m, n) == (2, 2) {
            options.push(Term::Sym);
        }
        for (name, a) in self.sig.iter() {
            if (a.inputs, a.outputs) == (m, n) {
                options.push(Term::constant(name));
            }
        }
        let co = self.mode.has_comonoid();
        let mo = self.mode.has_monoid();
        match (m, n) {
            (1, 2) if co => options.push(Term::CoMul),
            (1, 0) if co => options.push(Term::CoUnit),
            (2, 1) if mo => options.push(Term::Mul),
            (0, 1) if mo => options.push(Term::Unit),
            _ => {}
        }
        if let Some(t) = options.choose(&mut self.rng) {
            return t.clone();
        }
        let keep = m.min(n);
        let extra = if m > n {
            let pieces: Vec<Term> = (0..m - n).map(|_| self.absorber()).collect();
            tensor_all(pieces)
        } else {
            let pieces: Vec<Term> = (0..n - m).map(|_| self.emitter()).collect();
            tensor_all(pieces)
        };
        // padding goes either below or above the kept wires
        if self.rng.gen_bool(0.5) {
            Term::tensor(Term::Id(keep), extra)
        } else {
            Term::tensor(extra, Term::Id(keep))
        }
    }

    /// `1 -> 0`.
    fn absorber(&mut self) -> Term {
        let mut options: Vec<Term> = self
            .sig
            .iter()
            .filter(|(_, a)| (a.inputs, a.outputs) == (1, 0))
            .map(|(n, _)| Term::constant(n))
            .collect();
        if self.mode.has_comonoid() {
            options.push(Term::CoUnit);
        }
        options
            .choose(&mut self.rng)
            .cloned()
            .expect("the signature has a 1 -> 0 constant or the mode has counit")
    }

    /// `0 -> 1`.
    fn emitter(&mut self) -> Term {
        let mut options: Vec<Term> = self
            .sig
            .iter()
            .filter(|(_, a)| (a.inputs, a.outputs) == (0, 1))
            .map(|(n, _)| Term::constant(n))
            .collect();
        if self.mode.has_monoid() {
            options.push(Term::Unit);
        }
        options
            .choose(&mut self.rng)
            .cloned()
            .expect("the signature has a 0 -> 1 constant or the mode has unit")
    }
}

/// Wraps `body` in the binders, the first pair outermost.
pub fn wrap(pairs: &[(Name, Name)], body: Term) -> Term {
    pairs
        .iter()
        .rev()
        .fold(body, |t, (x, y)| Term::link(x.clone(), y.clone(), t))
}

/// A closed well-typed term of roughly `size` nodes, deterministic in `seed`.
pub fn gen_term(mode: Mode, sig: &Signature, size: usize, seed: u64) -> Term {
    TermGen::new(mode, sig, seed).closed(size)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let sig = Signature::law_default();
        for mode in Mode::ALL {
            assert_eq!(gen_term(mode, &sig, 15, 7), gen_term(mode, &sig, 15, 7));
        }
    }

    #[test]
    fn size_one_is_a_leaf() {
        let sig = Signature::law_default();
        for seed in 0..20 {
            let t = gen_term(Mode::Spider, &sig, 1, seed);
            assert!(t.is_var_free(), "{t:?}");
        }
    }

    #[test]
    fn generated_terms_type_check() {
        let sig = Signature::law_default();
        for mode in Mode::ALL {
            for seed in 0..100 {
                let t = gen_term(mode, &sig, 20, seed);
                assert!(
                    typecheck(&t, mode, &sig, &FreeDecls::new()).is_ok(),
                    "{mode} {seed}"
                );
            }
        }
    }

    #[test]
    fn links_and_traces_appear() {
        let sig = Signature::law_default();
        let mut links = 0;
        let mut traces = 0;
        for seed in 0..50 {
            let t = gen_term(Mode::Biflow, &sig, 20, seed);
            links += usize::from(!t.is_link_free());
            traces += usize::from(t.contains(&|s| matches!(s, Term::Trace(_))));
        }
        assert!(links > 10 && traces > 10, "{links} {traces}");
    }

    #[test]
    fn open_terms_use_their_variables() {
        let sig = Signature::law_default();
        let mut decls = FreeDecls::new();
        decls.insert("a".into(), Polarity::Sink);
        decls.insert("b".into(), Polarity::Source);
        let mut g = TermGen::new(Mode::Uniflow, &sig, 3);
        for _ in 0..20 {
            let t = g.typed(1, 1, 10, &decls);
            assert_eq!(t.count_free("a"), 1);
            assert_eq!(t.count_free("b"), 1);
        }
    }
}
