use std::fmt;

use super::gen::TermGen;
use super::schema::{Instance, Schema};
use crate::interp::interpret;
use crate::syntax::print_term;
use crate::term::{FreeDecls, Mode, Signature, Term};

/// Outcome of checking one schema.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemaReport {
    pub name: String,
    pub mode: Mode,
    pub passed: usize,
    pub failed: usize,
    pub counterexamples: Vec<Counterexample>,
}

/// A failing instance after shrinking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub lhs: Term,
    pub rhs: Term,
    pub reason: String,
}

impl SchemaReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for SchemaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SCHEMA {} {} pass {} fail {}",
            self.name, self.mode, self.passed, self.failed
        )?;
        for c in &self.counterexamples {
            write!(
                f,
                "\n  counterexample ({}): {} = {}",
                c.reason,
                print_term(&c.lhs),
                print_term(&c.rhs)
            )?;
        }
        Ok(())
    }
}

/// Per-instance seed: independent of how many instances run before it.
fn instance_seed(seed: u64, name: &str, i: usize) -> u64 {
    let h = name.bytes().fold(0xcbf2_9ce4_8422_2325_u64, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    });
    seed ^ h ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

/// Instantiates `schema` and compares the interpretations of both sides.
///
/// Closed schemas run once whatever `instances` says. Failures are shrunk
/// by simplifying the metavariables.
pub fn check_schema(
    schema: &Schema,
    mode: Mode,
    sig: &Signature,
    instances: usize,
    size: usize,
    seed: u64,
) -> SchemaReport {
    let runs = if schema.closed { 1 } else { instances };
    let mut report = SchemaReport {
        name: schema.name.to_string(),
        mode,
        passed: 0,
        failed: 0,
        counterexamples: Vec::new(),
    };
    for i in 0..runs {
        let mut gen = TermGen::new(mode, sig, instance_seed(seed, schema.name, i));
        let inst = schema.instantiate(&mut gen, size);
        match failure(&inst.lhs, &inst.rhs, mode, sig) {
            None => report.passed += 1,
            Some(reason) => {
                report.failed += 1;
                let (lhs, rhs, reason) = shrink(schema, inst, reason, mode, sig);
                report
                    .counterexamples
                    .push(Counterexample { lhs, rhs, reason });
            }
        }
    }
    report
}

/// `None` if both sides are well typed and interpret to equivalent diagrams.
fn failure(lhs: &Term, rhs: &Term, mode: Mode, sig: &Signature) -> Option<String> {
    let decls = FreeDecls::new();
    let l = match interpret(lhs, mode, sig, &decls) {
        Ok(d) => d,
        Err(e) => return Some(format!("left side: {e}")),
    };
    let r = match interpret(rhs, mode, sig, &decls) {
        Ok(d) => d,
        Err(e) => return Some(format!("right side: {e}")),
    };
    if (l.inputs(), l.outputs()) != (r.inputs(), r.outputs()) {
        return Some(format!(
            "types differ: {} -> {} vs {} -> {}",
            l.inputs(),
            l.outputs(),
            r.inputs(),
            r.outputs()
        ));
    }
    (!l.equivalent(&r)).then(|| "diagrams differ".to_string())
}

/// Greedy structural shrinking: repeatedly replaces a subterm of some
/// metavariable by one of its children or by a small identity, keeping the
/// change whenever the instance still fails.
fn shrink(
    schema: &Schema,
    inst: Instance,
    reason: String,
    mode: Mode,
    sig: &Signature,
) -> (Term, Term, String) {
    let mut metas = inst.metas;
    let mut best = (inst.lhs, inst.rhs, reason);
    let mut improved = true;
    while improved {
        improved = false;
        'search: for k in 0..metas.len() {
            for path in metas[k].paths() {
                let sub = metas[k].at_path(&path).expect("path from paths()");
                let mut candidates: Vec<Term> = sub.children().into_iter().cloned().collect();
                candidates.extend((0..=2).map(Term::Id));
                for c in candidates {
                    if c.size() >= sub.size() {
                        continue;
                    }
                    let mut trial = metas.clone();
                    trial[k] = metas[k].replace_at(&path, c).expect("path from paths()");
                    let Some((lhs, rhs)) = schema.rebuild(&trial, sig) else {
                        continue;
                    };
                    if let Some(reason) = still_fails(&lhs, &rhs, mode, sig) {
                        metas = trial;
                        best = (lhs, rhs, reason);
                        improved = true;
                        break 'search;
                    }
                }
            }
        }
    }
    best
}

/// Like [`failure`] but ignores candidates that are no longer well typed,
/// since those fail for a different reason.
fn still_fails(lhs: &Term, rhs: &Term, mode: Mode, sig: &Signature) -> Option<String> {
    let decls = FreeDecls::new();
    if interpret(lhs, mode, sig, &decls).is_err() || interpret(rhs, mode, sig, &decls).is_err() {
        return None;
    }
    failure(lhs, rhs, mode, sig)
}

/// Checks every schema valid at `mode`.
pub fn check_all(
    mode: Mode,
    sig: &Signature,
    instances: usize,
    size: usize,
    seed: u64,
) -> Vec<SchemaReport> {
    super::schema::schemas(mode)
        .into_iter()
        .map(|s| check_schema(s, mode, sig, instances, size, seed))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eqtheory::schema::schema;

    #[test]
    fn yanking_passes_once() {
        let r = check_schema(
            schema("yanking").unwrap(),
            Mode::Biflow,
            &Signature::law_default(),
            50,
            10,
            0,
        );
        assert_eq!((r.passed, r.failed), (1, 0));
        assert_eq!(r.to_string(), "SCHEMA yanking biflow pass 1 fail 0");
    }

    #[test]
    fn identity_passes() {
        let r = check_schema(
            schema("identity-left").unwrap(),
            Mode::Uniflow,
            &Signature::law_default(),
            30,
            12,
            1,
        );
        assert!(r.ok(), "{r}");
        assert_eq!(r.passed, 30);
    }

    #[test]
    fn deterministic_reports() {
        let sig = Signature::law_default();
        let a = check_all(Mode::Comonoid, &sig, 3, 10, 9);
        let b = check_all(Mode::Comonoid, &sig, 3, 10, 9);
        assert_eq!(a, b);
    }

    #[test]
    fn non_laws_are_caught_and_shrunk() {
        // tightening onto the looped wire is not a law
        fn metas(g: &mut TermGen<'_>, size: usize) -> Vec<Term> {
            vec![g.closed_typed(2, 2, size)]
        }
        fn build(ms: &[Term], sig: &Signature) -> Option<(Term, Term)> {
            let f = ms.first()?;
            crate::typecheck::arity(f, sig, &FreeDecls::new()).ok()?;
            let k = Term::constant("k");
            let lhs = Term::trace(Term::seq(Term::tensor(k.clone(), Term::Id(1)), f.clone()));
            Some((lhs, Term::seq(k, Term::trace(f.clone()))))
        }
        let bogus = Schema {
            name: "bogus",
            floor: Mode::Biflow,
            lhs: "",
            rhs: "",
            side: "",
            closed: false,
            metas,
            build,
        };
        let sig = Signature::law_default();
        let r = check_schema(&bogus, Mode::Biflow, &sig, 20, 15, 4);
        assert!(r.failed > 0);
        for c in &r.counterexamples {
            assert!(failure(&c.lhs, &c.rhs, Mode::Biflow, &sig).is_some());
        }
        assert!(r.to_string().contains("counterexample"));
        let smallest = r
            .counterexamples
            .iter()
            .map(|c| c.lhs.size())
            .min()
            .unwrap();
        assert!(smallest <= 8, "{r}");
    }
}
