use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::NetlistError;
use crate::diagram::{canonical_form, BoxNode, Diagram, Port};
use crate::term::{Mode, Name, Signature};

/// A flat module description.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Netlist {
    pub name: Name,
    /// Mode given by a pragma, if any.
    pub mode: Option<Mode>,
    pub inputs: Vec<Name>,
    pub outputs: Vec<Name>,
    pub components: Vec<Component>,
    /// Junction names.
    pub nodes: Vec<Name>,
    /// Pairs of endpoints, producer first.
    pub wires: Vec<(Name, Name)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub instance: Name,
    pub constant: Name,
    pub inputs: Vec<Name>,
    pub outputs: Vec<Name>,
}

/// A converted netlist with notes about wires that had to be reoriented.
#[derive(Clone, Debug)]
pub struct Import {
    pub diagram: Diagram,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Punct(char),
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    mode: Option<Mode>,
    end: (usize, usize),
}

fn syntax(line: usize, col: usize, message: impl Into<String>) -> NetlistError {
    NetlistError::Syntax {
        line,
        col,
        message: message.into(),
    }
}

fn ident_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '.' | '\'')
}

impl Lexer {
    fn new(text: &str) -> Result<Self, NetlistError> {
        let mut toks = Vec::new();
        let mut mode = None;
        let mut end = (1, 1);
        for (i, line) in text.lines().enumerate() {
            let ln = i + 1;
            let chars: Vec<char> = line.chars().collect();
            let mut j = 0;
            while j < chars.len() {
                let c = chars[j];
                if c.is_whitespace() {
                    j += 1;
                } else if c == '-' && chars.get(j + 1) == Some(&'-') {
                    let comment: String = chars[j + 2..].iter().collect();
                    if let Some(rest) = comment.trim().strip_prefix("mode:") {
                        mode = Some(
                            rest.trim()
                                .parse()
                                .map_err(|e: String| syntax(ln, j + 1, e))?,
                        );
                    }
                    break;
                } else if matches!(c, '(' | ')' | ',' | ';' | ':') {
                    toks.push((Tok::Punct(c), ln, j + 1));
                    j += 1;
                } else if ident_char(c) {
                    let start = j;
                    while j < chars.len() && ident_char(chars[j]) {
                        j += 1;
                    }
                    toks.push((Tok::Ident(chars[start..j].iter().collect()), ln, start + 1));
                } else {
                    return Err(syntax(ln, j + 1, format!("unexpected character `{c}`")));
                }
            }
            end = (ln, chars.len() + 1);
        }
        Ok(Lexer {
            toks,
            pos: 0,
            mode,
            end,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |t| (t.1, t.2))
    }

    fn error(&self, message: impl Into<String>) -> NetlistError {
        let (l, c) = self.here();
        syntax(l, c, message)
    }

    fn punct(&mut self, c: char) -> Result<(), NetlistError> {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn eat_punct(&mut self, c: char) -> bool {
        let hit = self.peek() == Some(&Tok::Punct(c));
        if hit {
            self.pos += 1;
        }
        hit
    }

    fn ident(&mut self) -> Result<String, NetlistError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.error("expected a name")),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), NetlistError> {
        if self.eat_keyword(kw) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{kw}`")))
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        let hit = matches!(self.peek(), Some(Tok::Ident(s)) if s == kw);
        if hit {
            self.pos += 1;
        }
        hit
    }

    fn names(&mut self) -> Result<Vec<String>, NetlistError> {
        let mut out = vec![self.ident()?];
        while self.eat_punct(',') {
            out.push(self.ident()?);
        }
        Ok(out)
    }

    /// `[input a, b] [;] [output c]` inside parentheses.
    fn port_decl(&mut self) -> Result<(Vec<String>, Vec<String>), NetlistError> {
        self.punct('(')?;
        let mut ins = Vec::new();
        let mut outs = Vec::new();
        if self.eat_keyword("input") {
            ins = self.names()?;
        }
        self.eat_punct(';');
        if self.eat_keyword("output") {
            outs = self.names()?;
        }
        self.punct(')')?;
        Ok((ins, outs))
    }
}

/// Parses the netlist format described in the module documentation.
pub fn parse_netlist(text: &str) -> Result<Netlist, NetlistError> {
    let mut lx = Lexer::new(text)?;
    lx.keyword("module")?;
    let name = lx.ident()?;
    let (inputs, outputs) = lx.port_decl()?;
    lx.keyword("begin")?;
    let mut nl = Netlist {
        name,
        mode: lx.mode,
        inputs,
        outputs,
        ..Netlist::default()
    };
    loop {
        if lx.eat_keyword("end") {
            break;
        } else if lx.eat_keyword("component") {
            let first = lx.ident()?;
            let (instance, constant) = if lx.eat_punct(':') {
                (first, lx.ident()?)
            } else {
                (first.clone(), first)
            };
            let (ins, outs) = lx.port_decl()?;
            lx.punct(';')?;
            nl.components.push(Component {
                instance,
                constant,
                inputs: ins,
                outputs: outs,
            });
        } else if lx.eat_keyword("node") {
            nl.nodes.extend(lx.names()?);
            lx.punct(';')?;
        } else if lx.eat_keyword("wire") {
            let a = lx.ident()?;
            lx.punct(',')?;
            let b = lx.ident()?;
            lx.punct(';')?;
            nl.wires.push((a, b));
        } else {
            return Err(lx.error("expected `component`, `node`, `wire` or `end`"));
        }
    }
    if lx.peek().is_some() {
        return Err(lx.error("text after `end`"));
    }
    Ok(nl)
}

fn port_decl(ins: &[Name], outs: &[Name]) -> String {
    let mut parts = Vec::new();
    if !ins.is_empty() {
        parts.push(format!("input {}", ins.join(", ")));
    }
    if !outs.is_empty() {
        parts.push(format!("output {}", outs.join(", ")));
    }
    format!("({})", parts.join("; "))
}

pub fn print_netlist(nl: &Netlist) -> String {
    let mut s = String::new();
    if let Some(mode) = nl.mode {
        let _ = writeln!(s, "-- mode: {mode}");
    }
    let _ = writeln!(
        s,
        "module {}{}",
        nl.name,
        port_decl(&nl.inputs, &nl.outputs)
    );
    s.push_str("begin\n");
    for c in &nl.components {
        let head = if c.instance == c.constant {
            c.constant.clone()
        } else {
            format!("{} : {}", c.instance, c.constant)
        };
        let _ = writeln!(s, "component {head}{};", port_decl(&c.inputs, &c.outputs));
    }
    if !nl.nodes.is_empty() {
        let _ = writeln!(s, "node {};", nl.nodes.join(", "));
    }
    for (a, b) in &nl.wires {
        let _ = writeln!(s, "wire {a}, {b};");
    }
    s.push_str("end\n");
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum End {
    Port(Port),
    Node(usize),
}

impl End {
    fn is_producer(self) -> bool {
        matches!(self, End::Port(p) if p.is_producer())
    }

    fn is_consumer(self) -> bool {
        matches!(self, End::Port(p) if p.is_consumer())
    }
}

fn declare<'a>(
    name: &'a str,
    e: End,
    ends: &mut BTreeMap<&'a str, End>,
) -> Result<(), NetlistError> {
    match ends.insert(name, e) {
        Some(_) => Err(NetlistError::DuplicatePort(name.to_string())),
        None => Ok(()),
    }
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Builds the diagram a netlist describes.
///
/// Wires are read producer first; a wire written the other way round is
/// reoriented and reported in [`Import::warnings`]. Every consumer port needs
/// exactly one wire; in the linear modes every producer port does too.
pub fn netlist_to_diagram(
    nl: &Netlist,
    sig: &Signature,
    mode: Mode,
) -> Result<Import, NetlistError> {
    let mut ends: BTreeMap<&str, End> = BTreeMap::new();
    let mut instances = BTreeMap::new();
    for (i, n) in nl.inputs.iter().enumerate() {
        declare(n, End::Port(Port::Input(i)), &mut ends)?;
    }
    for (j, n) in nl.outputs.iter().enumerate() {
        declare(n, End::Port(Port::Output(j)), &mut ends)?;
    }
    let mut boxes = Vec::new();
    for (b, c) in nl.components.iter().enumerate() {
        if instances.insert(c.instance.as_str(), b).is_some() {
            return Err(NetlistError::DuplicatePort(c.instance.clone()));
        }
        let ar = sig
            .get(&c.constant)
            .ok_or_else(|| NetlistError::UnknownConstant(c.constant.clone()))?;
        if (ar.inputs, ar.outputs) != (c.inputs.len(), c.outputs.len()) {
            return Err(NetlistError::ArityMismatch {
                instance: c.instance.clone(),
                constant: c.constant.clone(),
                expected: format!("{} -> {}", ar.inputs, ar.outputs),
                found: format!("{} -> {}", c.inputs.len(), c.outputs.len()),
            });
        }
        for (i, n) in c.inputs.iter().enumerate() {
            declare(n, End::Port(Port::BoxIn(b, i)), &mut ends)?;
        }
        for (j, n) in c.outputs.iter().enumerate() {
            declare(n, End::Port(Port::BoxOut(b, j)), &mut ends)?;
        }
        boxes.push(BoxNode {
            name: c.constant.clone(),
            inputs: ar.inputs,
            outputs: ar.outputs,
        });
    }
    for (k, n) in nl.nodes.iter().enumerate() {
        declare(n, End::Node(k), &mut ends)?;
    }

    let all: Vec<End> = ends.values().copied().collect();
    let index: BTreeMap<End, usize> = all.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let name_of: BTreeMap<End, &str> = ends.iter().map(|(&n, &e)| (e, n)).collect();
    let mut parent: Vec<usize> = (0..all.len()).collect();
    let mut wire_count: BTreeMap<End, usize> = BTreeMap::new();
    let mut warnings = Vec::new();
    for (a, b) in &nl.wires {
        let ea = *ends
            .get(a.as_str())
            .ok_or_else(|| NetlistError::UnknownPort(a.clone()))?;
        let eb = *ends
            .get(b.as_str())
            .ok_or_else(|| NetlistError::UnknownPort(b.clone()))?;
        let same = (ea.is_producer() && eb.is_producer()) || (ea.is_consumer() && eb.is_consumer());
        if same {
            return Err(NetlistError::BadWire(a.clone(), b.clone()));
        }
        if ea.is_consumer() || eb.is_producer() {
            warnings.push(format!("wire {a}, {b}: read as {b}, {a}"));
        }
        *wire_count.entry(ea).or_default() += 1;
        *wire_count.entry(eb).or_default() += 1;
        let (ra, rb) = (find(&mut parent, index[&ea]), find(&mut parent, index[&eb]));
        parent[ra] = rb;
    }

    for (&e, &name) in &name_of {
        let End::Port(p) = e else { continue };
        let count = wire_count.get(&e).copied().unwrap_or(0);
        if p.is_consumer() || mode.is_linear() {
            match count {
                0 => return Err(NetlistError::DanglingPort(name.to_string())),
                1 => {}
                _ => return Err(NetlistError::DoubleDrive(name.to_string())),
            }
        }
    }

    let mut groups: BTreeMap<usize, Vec<End>> = BTreeMap::new();
    for (i, &e) in all.iter().enumerate() {
        groups.entry(find(&mut parent, i)).or_default().push(e);
    }
    let mut nets = Vec::new();
    let mut loops = 0;
    for members in groups.values() {
        let ports: Vec<Port> = members
            .iter()
            .filter_map(|e| match e {
                End::Port(p) => Some(*p),
                End::Node(_) => None,
            })
            .collect();
        if ports.is_empty() {
            loops += 1;
            continue;
        }
        let np = ports.iter().filter(|p| p.is_producer()).count();
        let nc = ports.len() - np;
        let first = name_of[&members[0]].to_string();
        let ok = match mode {
            Mode::Uniflow | Mode::Biflow => {
                if np > 1 || nc > 1 {
                    return Err(NetlistError::DoubleDrive(first));
                }
                np == 1 && nc == 1
            }
            Mode::Comonoid => {
                if np > 1 {
                    return Err(NetlistError::DoubleDrive(first));
                }
                true
            }
            Mode::Spider => true,
        };
        if !ok {
            return Err(NetlistError::DanglingPort(first));
        }
        nets.push(ports);
    }
    let d = Diagram::from_parts(
        boxes,
        nl.inputs.len(),
        nl.outputs.len(),
        vec![],
        vec![],
        nets,
        loops,
    );
    d.audit(mode)
        .map_err(|reason| NetlistError::ModeViolation { mode, reason })?;
    if mode == Mode::Uniflow && !d.is_acyclic() {
        return Err(NetlistError::ModeViolation {
            mode,
            reason: "the wiring is cyclic".into(),
        });
    }
    Ok(Import {
        diagram: d,
        warnings,
    })
}

/// Writes a closed diagram as a netlist named `name`.
///
/// Ports are named `u1..` (inputs), `v1..` (outputs), and `c<i>.p<j>`,
/// `c<i>.q<j>` for the inputs and outputs of the `i`th component, all
/// counted from 1 in canonical order. A net with exactly one producer
/// becomes one wire per consumer; any other net goes through a junction
/// `n<k>`.
pub fn diagram_to_netlist(d: &Diagram, name: &str) -> Result<Netlist, NetlistError> {
    if !d.is_closed() {
        let mut labels: Vec<String> = d.source_points().to_vec();
        labels.extend(d.sink_points().iter().cloned());
        labels.sort();
        labels.dedup();
        return Err(NetlistError::OpenDiagram(labels.join(", ")));
    }
    let c = canonical_form(d);
    let port_name = |p: Port| match p {
        Port::Input(i) => format!("u{}", i + 1),
        Port::Output(j) => format!("v{}", j + 1),
        Port::BoxIn(b, i) => format!("c{}.p{}", b + 1, i + 1),
        Port::BoxOut(b, j) => format!("c{}.q{}", b + 1, j + 1),
        Port::Source(_) | Port::Sink(_) => unreachable!("closed diagram"),
    };
    let components = c
        .boxes()
        .iter()
        .enumerate()
        .map(|(b, node)| Component {
            instance: format!("c{}", b + 1),
            constant: node.name.clone(),
            inputs: (0..node.inputs)
                .map(|i| port_name(Port::BoxIn(b, i)))
                .collect(),
            outputs: (0..node.outputs)
                .map(|j| port_name(Port::BoxOut(b, j)))
                .collect(),
        })
        .collect();
    let mut nodes = Vec::new();
    let mut wires = Vec::new();
    for net in c.nets() {
        let ps: Vec<Port> = net.producers().collect();
        if let [p] = ps[..] {
            for q in net.consumers() {
                wires.push((port_name(p), port_name(q)));
            }
        } else {
            let junction = format!("n{}", nodes.len() + 1);
            for p in ps {
                wires.push((port_name(p), junction.clone()));
            }
            for q in net.consumers() {
                wires.push((junction.clone(), port_name(q)));
            }
            nodes.push(junction);
        }
    }
    for _ in 0..c.loops() {
        nodes.push(format!("n{}", nodes.len() + 1));
    }
    Ok(Netlist {
        name: name.to_string(),
        mode: None,
        inputs: (0..c.inputs()).map(|i| port_name(Port::Input(i))).collect(),
        outputs: (0..c.outputs())
            .map(|j| port_name(Port::Output(j)))
            .collect(),
        components,
        nodes,
        wires,
    })
}
