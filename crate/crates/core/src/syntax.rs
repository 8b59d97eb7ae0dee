//! Concrete syntax for terms and module files.
//!
//! ```text
//! mode biflow
//! const f : 1 -> 3
//! const g : 3 -> 1
//! free a : sink
//! def fg = f ; g
//! def loop = link x y. y ; fg ; x
//! ```
//!
//! `;` is composition, `*` tensor (binding tighter), numerals are
//! identities, `link x y. M` binds sink `x` and source `y` and extends as far
//! right as possible. Definitions are inlined where they are used, so a
//! `link` naming a `free` variable binds that variable inside inlined
//! definitions too.

use std::fmt::Write as _;

use thiserror::Error;

use crate::term::{gamma_term, FreeDecls, Mode, Name, Polarity, Signature, Term};

const KEYWORDS: &[&str] = &[
    "mode", "const", "free", "def", "link", "tr", "sym", "gamma", "comul", "counit", "mul", "unit",
];

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("{line}:{col}: `{name}` is not a constant, definition, bound or declared variable")]
    UndeclaredVariable { line: usize, col: usize, name: Name },
    #[error("{line}:{col}: `{name}` is declared twice")]
    DuplicateDefinition { line: usize, col: usize, name: Name },
}

impl ParseError {
    pub fn code(&self) -> &'static str {
        match self {
            ParseError::Syntax { .. } => "SyntaxError",
            ParseError::UndeclaredVariable { .. } => "UndeclaredVariable",
            ParseError::DuplicateDefinition { .. } => "DuplicateDefinition",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Nat(usize),
    Punct(&'static str),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            while i < chars.len() && chars[i] == '\'' {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let n = s.parse().map_err(|_| ParseError::Syntax {
                line,
                col,
                message: format!("number `{s}` is too large"),
            })?;
            Tok::Nat(n)
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            i += 2;
            Tok::Punct("->")
        } else {
            i += 1;
            Tok::Punct(match c {
                ';' => ";",
                '*' => "*",
                '(' => "(",
                ')' => ")",
                '[' => "[",
                ']' => "]",
                '.' => ".",
                ',' => ",",
                ':' => ":",
                '=' => "=",
                _ => {
                    return Err(ParseError::Syntax {
                        line,
                        col,
                        message: format!("unexpected character `{c}`"),
                    })
                }
            })
        };
        col += i - start;
        out.push(Token {
            tok,
            line: l0,
            col: c0,
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

/// A parsed module file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceModule {
    pub mode: Mode,
    pub signature: Signature,
    pub free_decls: FreeDecls,
    /// Definitions in file order, with earlier definitions inlined.
    pub defs: Vec<(Name, Term)>,
}

impl SourceModule {
    pub fn def(&self, name: &str) -> Option<&Term> {
        self.defs.iter().find(|(n, _)| n == name).map(|(_, t)| t)
    }

    pub fn context(&self) -> crate::Context {
        crate::Context::new(self.mode, self.signature.clone()).with_decls(self.free_decls.clone())
    }
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    sig: &'a Signature,
    decls: &'a FreeDecls,
    defs: &'a [(Name, Term)],
    bound: Vec<Name>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, t: &Token, message: String) -> ParseError {
        ParseError::Syntax {
            line: t.line,
            col: t.col,
            message,
        }
    }

    fn describe(t: &Tok) -> String {
        match t {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Nat(n) => format!("`{n}`"),
            Tok::Punct(p) => format!("`{p}`"),
            Tok::Eof => "end of input".into(),
        }
    }

    fn expect(&mut self, p: &'static str) -> Result<(), ParseError> {
        let t = self.next();
        if t.tok == Tok::Punct(p) {
            Ok(())
        } else {
            Err(self.error_at(
                &t,
                format!("expected `{p}`, found {}", Self::describe(&t.tok)),
            ))
        }
    }

    fn is_punct(&self, p: &str) -> bool {
        matches!(&self.peek().tok, Tok::Punct(q) if *q == p)
    }

    fn is_keyword(&self, k: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == k)
    }

    fn keyword(&mut self, k: &str) -> Result<(), ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) if s == k => Ok(()),
            other => Err(self.error_at(
                &t,
                format!("expected `{k}`, found {}", Self::describe(other)),
            )),
        }
    }

    fn ident(&mut self) -> Result<(Name, Token), ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => Ok((s.clone(), t)),
            other => Err(self.error_at(
                &t,
                format!("expected an identifier, found {}", Self::describe(other)),
            )),
        }
    }

    fn nat(&mut self) -> Result<usize, ParseError> {
        let t = self.next();
        match t.tok {
            Tok::Nat(n) => Ok(n),
            ref other => Err(self.error_at(
                &t,
                format!("expected a number, found {}", Self::describe(other)),
            )),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut t = self.tens()?;
        while self.is_punct(";") {
            self.next();
            t = Term::seq(t, self.tens()?);
        }
        Ok(t)
    }

    fn tens(&mut self) -> Result<Term, ParseError> {
        let mut t = self.atom()?;
        while self.is_punct("*") {
            self.next();
            t = Term::tensor(t, self.atom()?);
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Nat(n) => Ok(Term::Id(*n)),
            Tok::Punct("(") => {
                let inner = self.term()?;
                self.expect(")")?;
                Ok(inner)
            }
            Tok::Ident(s) => match s.as_str() {
                "sym" => Ok(Term::Sym),
                "comul" => Ok(Term::CoMul),
                "counit" => Ok(Term::CoUnit),
                "mul" => Ok(Term::Mul),
                "unit" => Ok(Term::Unit),
                "gamma" => {
                    self.expect("(")?;
                    let m = self.nat()?;
                    self.expect(",")?;
                    let n = self.nat()?;
                    self.expect(")")?;
                    Ok(gamma_term(m, n))
                }
                "tr" => {
                    let mut depth = 1;
                    if self.is_punct("[") {
                        self.next();
                        depth = self.nat()?;
                        self.expect("]")?;
                    }
                    self.expect("(")?;
                    let body = self.term()?;
                    self.expect(")")?;
                    Ok(Term::trace_n(depth, body))
                }
                "link" => {
                    let (x, _) = self.ident()?;
                    let (y, _) = self.ident()?;
                    self.expect(".")?;
                    self.bound.push(x.clone());
                    self.bound.push(y.clone());
                    let body = self.term();
                    self.bound.truncate(self.bound.len() - 2);
                    Ok(Term::link(x, y, body?))
                }
                k if KEYWORDS.contains(&k) => {
                    Err(self.error_at(&t, format!("unexpected keyword `{k}`")))
                }
                name => self.resolve(name, &t),
            },
            other => Err(self.error_at(
                &t,
                format!("expected a term, found {}", Self::describe(other)),
            )),
        }
    }

    fn resolve(&self, name: &str, at: &Token) -> Result<Term, ParseError> {
        if self.bound.iter().any(|b| b == name) {
            return Ok(Term::var(name));
        }
        if let Some((_, body)) = self.defs.iter().find(|(n, _)| n == name) {
            // free names of a definition are declared globals; an enclosing
            // link on the same name binds them
            return Ok(body.clone());
        }
        if self.sig.contains(name) {
            return Ok(Term::constant(name));
        }
        if self.decls.contains_key(name) {
            return Ok(Term::var(name));
        }
        Err(ParseError::UndeclaredVariable {
            line: at.line,
            col: at.col,
            name: name.to_string(),
        })
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        let t = self.peek().clone();
        if t.tok == Tok::Eof {
            Ok(())
        } else {
            Err(self.error_at(&t, format!("unexpected {}", Self::describe(&t.tok))))
        }
    }
}

/// Parses a single term. Identifiers resolve to bound variables, then
/// constants, then declared free variables.
pub fn parse_term(text: &str, sig: &Signature, decls: &FreeDecls) -> Result<Term, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        sig,
        decls,
        defs: &[],
        bound: Vec::new(),
    };
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

/// Parses a term in the scope of a module, so its definitions are usable.
pub fn parse_term_in(text: &str, module: &SourceModule) -> Result<Term, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        sig: &module.signature,
        decls: &module.free_decls,
        defs: &module.defs,
        bound: Vec::new(),
    };
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_module(text: &str) -> Result<SourceModule, ParseError> {
    let toks = lex(text)?;
    let empty_sig = Signature::new();
    let empty_decls = FreeDecls::new();
    let mut p = Parser {
        toks,
        pos: 0,
        sig: &empty_sig,
        decls: &empty_decls,
        defs: &[],
        bound: Vec::new(),
    };
    p.keyword("mode")?;
    let t = p.next();
    let mode: Mode = match &t.tok {
        Tok::Ident(s) => s
            .parse()
            .map_err(|_| p.error_at(&t, format!("unknown mode `{s}`")))?,
        other => {
            return Err(p.error_at(
                &t,
                format!("expected a mode, found {}", Parser::describe(other)),
            ))
        }
    };
    let dup = |name: &str, at: &Token| ParseError::DuplicateDefinition {
        line: at.line,
        col: at.col,
        name: name.to_string(),
    };

    let mut sig = Signature::new();
    while p.is_keyword("const") {
        p.next();
        let (name, at) = p.ident()?;
        p.expect(":")?;
        let m = p.nat()?;
        p.expect("->")?;
        let n = p.nat()?;
        if !sig.insert(name.clone(), m, n) {
            return Err(dup(&name, &at));
        }
    }
    let mut decls = FreeDecls::new();
    while p.is_keyword("free") {
        p.next();
        let (name, at) = p.ident()?;
        p.expect(":")?;
        let t = p.next();
        let pol = match &t.tok {
            Tok::Ident(s) if s == "source" => Polarity::Source,
            Tok::Ident(s) if s == "sink" => Polarity::Sink,
            other => {
                return Err(p.error_at(
                    &t,
                    format!(
                        "expected `source` or `sink`, found {}",
                        Parser::describe(other)
                    ),
                ))
            }
        };
        if sig.contains(&name) || decls.insert(name.clone(), pol).is_some() {
            return Err(dup(&name, &at));
        }
    }

    let mut defs: Vec<(Name, Term)> = Vec::new();
    loop {
        let t = p.peek().clone();
        if t.tok == Tok::Eof {
            if defs.is_empty() {
                return Err(p.error_at(&t, "a module needs at least one `def`".into()));
            }
            break;
        }
        if !p.is_keyword("def") {
            return Err(p.error_at(
                &t,
                format!("expected `def`, found {}", Parser::describe(&t.tok)),
            ));
        }
        p.next();
        let (name, at) = p.ident()?;
        if defs.iter().any(|(n, _)| *n == name) || sig.contains(&name) || decls.contains_key(&name)
        {
            return Err(dup(&name, &at));
        }
        p.expect("=")?;
        let body = {
            let mut inner = Parser {
                toks: std::mem::take(&mut p.toks),
                pos: p.pos,
                sig: &sig,
                decls: &decls,
                defs: &defs,
                bound: Vec::new(),
            };
            let r = inner.term();
            p.toks = std::mem::take(&mut inner.toks);
            p.pos = inner.pos;
            r?
        };
        defs.push((name, body));
    }
    Ok(SourceModule {
        mode,
        signature: sig,
        free_decls: decls,
        defs,
    })
}

/// Prints a term with the fewest parentheses that still reparse to the same
/// tree.
pub fn print_term(t: &Term) -> String {
    let mut s = String::new();
    write_term(&mut s, t, 0, true);
    s
}

/// `prec`: 0 = any, 1 = tensor operand or right operand of `;`, 2 = right
/// operand of `*`. `rightmost`: nothing follows in the enclosing text, so a
/// link may extend to the end unparenthesised.
fn write_term(out: &mut String, t: &Term, prec: u8, rightmost: bool) {
    match t {
        Term::Seq(l, r) => {
            let parens = prec > 0;
            let rm = parens || rightmost;
            open(out, parens);
            write_term(out, l, 0, false);
            out.push_str(" ; ");
            write_term(out, r, 1, rm);
            close(out, parens);
        }
        Term::Tensor(l, r) => {
            let parens = prec > 1;
            let rm = parens || rightmost;
            open(out, parens);
            write_term(out, l, 1, false);
            out.push_str(" * ");
            write_term(out, r, 2, rm);
            close(out, parens);
        }
        Term::Link { sink, source, body } => {
            let parens = !rightmost;
            open(out, parens);
            let _ = write!(out, "link {sink} {source}. ");
            write_term(out, body, 0, true);
            close(out, parens);
        }
        Term::Trace(_) => {
            let mut depth = 0;
            let mut cur = t;
            while let Term::Trace(b) = cur {
                depth += 1;
                cur = b;
            }
            if depth == 1 {
                out.push_str("tr(");
            } else {
                let _ = write!(out, "tr[{depth}](");
            }
            write_term(out, cur, 0, true);
            out.push(')');
        }
        Term::Const(k) => out.push_str(k),
        Term::Var(x) => out.push_str(x),
        Term::Id(n) => {
            let _ = write!(out, "{n}");
        }
        Term::Sym => out.push_str("sym"),
        Term::CoMul => out.push_str("comul"),
        Term::CoUnit => out.push_str("counit"),
        Term::Mul => out.push_str("mul"),
        Term::Unit => out.push_str("unit"),
    }
}

fn open(out: &mut String, parens: bool) {
    if parens {
        out.push('(');
    }
}

fn close(out: &mut String, parens: bool) {
    if parens {
        out.push(')');
    }
}

pub fn print_module(m: &SourceModule) -> String {
    let mut s = format!("mode {}\n", m.mode);
    for (name, a) in m.signature.iter() {
        let _ = writeln!(s, "const {name} : {} -> {}", a.inputs, a.outputs);
    }
    for (name, pol) in &m.free_decls {
        let _ = writeln!(s, "free {name} : {pol}");
    }
    for (name, t) in &m.defs {
        let _ = writeln!(s, "def {name} = {}", print_term(t));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        Signature::new().with("f", 1, 3).with("g", 3, 1)
    }

    fn p(s: &str) -> Term {
        parse_term(s, &sig(), &FreeDecls::new()).unwrap()
    }

    #[test]
    fn module_with_one_def() {
        let m = parse_module("mode biflow\nconst f:1->3\nconst g:3->1\ndef d = f;g").unwrap();
        assert_eq!(m.mode, Mode::Biflow);
        assert_eq!(
            m.def("d"),
            Some(&Term::seq(Term::constant("f"), Term::constant("g")))
        );
    }

    #[test]
    fn dangling_operator() {
        let err = parse_module("mode uniflow\nconst f:1->1\ndef d = f;").unwrap_err();
        assert_eq!(err.code(), "SyntaxError");
    }

    #[test]
    fn link_extends_right() {
        assert_eq!(
            p("link x y. x ; y"),
            Term::link("x", "y", Term::seq(Term::var("x"), Term::var("y")))
        );
    }

    #[test]
    fn tensor_binds_tighter() {
        let t = p("1 * sym ; 2 * 1");
        assert_eq!(
            t,
            Term::seq(
                Term::tensor(Term::Id(1), Term::Sym),
                Term::tensor(Term::Id(2), Term::Id(1))
            )
        );
    }

    #[test]
    fn motivating_chain_parses() {
        let t = p("(f*1);(1*sym*1);(1*1*sym);(1*sym*1);(g*1)");
        assert_eq!(
            print_term(&t),
            "f * 1 ; 1 * sym * 1 ; 1 * 1 * sym ; 1 * sym * 1 ; g * 1"
        );
    }

    #[test]
    fn trace_forms() {
        assert_eq!(p("tr(sym)"), Term::trace(Term::Sym));
        assert_eq!(p("tr[2](3)"), Term::trace(Term::trace(Term::Id(3))));
        assert_eq!(print_term(&p("tr[2](3)")), "tr[2](3)");
    }

    #[test]
    fn print_comul_link() {
        let t = Term::link(
            "x",
            "y",
            Term::tensor_all([Term::var("x"), Term::var("y"), Term::var("y")]).unwrap(),
        );
        assert_eq!(print_term(&t), "link x y. x * y * y");
    }

    #[test]
    fn print_id() {
        assert_eq!(print_term(&Term::Id(1)), "1");
    }

    #[test]
    fn gamma_expands_and_round_trips() {
        let t = p("gamma(2,2)");
        assert_eq!(t, gamma_term(2, 2));
        assert_eq!(p(&print_term(&t)), t);
    }

    #[test]
    fn right_nested_operators_keep_parentheses() {
        let t = Term::seq(Term::Id(1), Term::seq(Term::Sym, Term::Id(2)));
        assert_eq!(print_term(&t), "1 ; (sym ; 2)");
        let u = Term::tensor(Term::Id(1), Term::tensor(Term::Sym, Term::Id(2)));
        assert_eq!(print_term(&u), "1 * (sym * 2)");
        assert_eq!(p(&print_term(&t)), t);
        assert_eq!(p(&print_term(&u)), u);
    }

    #[test]
    fn links_in_the_middle_are_parenthesised() {
        let l = Term::link("x", "y", Term::seq(Term::var("x"), Term::var("y")));
        let t = Term::seq(Term::tensor(Term::Id(1), l.clone()), Term::Id(2));
        assert_eq!(print_term(&t), "1 * (link x y. x ; y) ; 2");
        assert_eq!(p(&print_term(&t)), t);
        let u = Term::seq(Term::Id(1), Term::tensor(Term::Id(1), l));
        assert_eq!(print_term(&u), "1 ; 1 * link x y. x ; y");
        assert_eq!(p(&print_term(&u)), u);
    }

    #[test]
    fn undeclared_identifier() {
        let err = parse_term("f ; h", &sig(), &FreeDecls::new()).unwrap_err();
        assert_eq!(
            err,
            ParseError::UndeclaredVariable {
                line: 1,
                col: 5,
                name: "h".into()
            }
        );
    }

    #[test]
    fn duplicates() {
        let err = parse_module("mode uniflow\nconst f:1->1\nconst f:1->1\ndef d = f").unwrap_err();
        assert_eq!(err.code(), "DuplicateDefinition");
        let err = parse_module("mode uniflow\nconst f:1->1\ndef d = f\ndef d = f").unwrap_err();
        assert_eq!(err.code(), "DuplicateDefinition");
    }

    #[test]
    fn defs_are_inlined() {
        let m =
            parse_module("mode uniflow\nconst k:1->1\ndef a = k ; k\ndef b = a * a # two copies\n")
                .unwrap();
        let a = Term::seq(Term::constant("k"), Term::constant("k"));
        assert_eq!(m.def("b"), Some(&Term::tensor(a.clone(), a)));
    }

    #[test]
    fn link_binds_globals_of_inlined_defs() {
        let m = parse_module("mode spider\nfree x : sink\nfree y : source\ndef open = x ; y\ndef closed = link x y. open\n")
            .unwrap();
        let body = Term::seq(Term::var("x"), Term::var("y"));
        assert_eq!(m.def("closed"), Some(&Term::link("x", "y", body)));
        assert!(m
            .context()
            .typecheck(m.def("closed").unwrap())
            .unwrap()
            .is_closed());
    }

    #[test]
    fn module_round_trip() {
        let text = "mode spider\nconst f : 1 -> 3\nfree a : sink\nfree b : source\ndef d = a ; b ; f\ndef e = link x y'. x * y' * y'\n";
        let m = parse_module(text).unwrap();
        assert_eq!(print_module(&m), text);
    }

    #[test]
    fn primes_in_identifiers() {
        assert_eq!(
            p("link x' x''. x' ; x''"),
            Term::link("x'", "x''", Term::seq(Term::var("x'"), Term::var("x''")))
        );
    }

    #[test]
    fn error_positions() {
        match parse_term("f ;\n  ) ", &sig(), &FreeDecls::new()).unwrap_err() {
            ParseError::Syntax { line, col, .. } => assert_eq!((line, col), (2, 3)),
            other => panic!("{other:?}"),
        }
    }
}
