//! Denotation of checked terms as diagrams.

use crate::diagram::Diagram;
use crate::term::{FreeDecls, Mode, Name, Polarity, Signature, Term};
use crate::typecheck::{typecheck, Judgement, TypeError};
use crate::Error;

/// Everything needed to check and interpret terms: the mode, the constants
/// and the polarities of free variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Context {
    pub mode: Mode,
    pub signature: Signature,
    pub decls: FreeDecls,
}

impl Context {
    pub fn new(mode: Mode, signature: Signature) -> Self {
        Context {
            mode,
            signature,
            decls: FreeDecls::new(),
        }
    }

    pub fn with_decls(mut self, decls: FreeDecls) -> Self {
        self.decls = decls;
        self
    }

    pub fn typecheck(&self, t: &Term) -> Result<Judgement, TypeError> {
        typecheck(t, self.mode, &self.signature, &self.decls)
    }

    pub fn interpret(&self, t: &Term) -> Result<Diagram, Error> {
        interpret(t, self.mode, &self.signature, &self.decls)
    }

    /// Whether two terms denote the same diagram.
    pub fn equivalent(&self, a: &Term, b: &Term) -> Result<bool, Error> {
        Ok(self.interpret(a)?.equivalent(&self.interpret(b)?))
    }
}

/// Type checks `t` and builds its diagram.
pub fn interpret(
    t: &Term,
    mode: Mode,
    sig: &Signature,
    decls: &FreeDecls,
) -> Result<Diagram, Error> {
    let j = typecheck(t, mode, sig, decls)?;
    let d = build(t, mode, sig, decls, &mut Vec::new())?;
    debug_assert_eq!((d.inputs(), d.outputs()), (j.dom, j.cod));
    debug_assert_eq!(d.open_sources(), j.sources);
    debug_assert_eq!(d.open_sinks(), j.sinks);
    debug_assert!(mode != Mode::Uniflow || d.is_acyclic());
    Ok(d)
}

fn build(
    t: &Term,
    mode: Mode,
    sig: &Signature,
    decls: &FreeDecls,
    scope: &mut Vec<(Name, Polarity)>,
) -> Result<Diagram, Error> {
    let go = |t: &Term, scope: &mut Vec<(Name, Polarity)>| build(t, mode, sig, decls, scope);
    Ok(match t {
        Term::Const(k) => Diagram::constant(k, sig)?,
        Term::Id(n) => Diagram::identity(*n),
        Term::Sym => Diagram::symmetry(),
        Term::CoMul => Diagram::comul(),
        Term::CoUnit => Diagram::counit(),
        Term::Mul => Diagram::mul(),
        Term::Unit => Diagram::unit(),
        Term::Var(x) => {
            let pol = scope
                .iter()
                .rev()
                .find(|(n, _)| n == x)
                .map(|(_, p)| *p)
                .or_else(|| decls.get(x).copied())
                .ok_or_else(|| TypeError::UnboundVariable(x.clone()))?;
            match pol {
                Polarity::Source => Diagram::source(x),
                Polarity::Sink => Diagram::sink(x),
            }
        }
        Term::Seq(l, r) => {
            let dl = go(l, scope)?;
            dl.compose(&go(r, scope)?)?
        }
        Term::Tensor(l, r) => {
            let dl = go(l, scope)?;
            dl.tensor(&go(r, scope)?)
        }
        Term::Trace(body) => go(body, scope)?.trace(mode)?,
        Term::Link { sink, source, body } => {
            scope.push((sink.clone(), Polarity::Sink));
            scope.push((source.clone(), Polarity::Source));
            let inner = go(body, scope);
            scope.truncate(scope.len() - 2);
            inner?.link(sink, source, mode)?
        }
    })
}
