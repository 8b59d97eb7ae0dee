use std::fmt::Write as _;

use crate::diagram::{canonical_form, Diagram, Port};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Record labels treat these characters as structure.
fn record_escape(s: &str) -> String {
    s.chars()
        .flat_map(|c| match c {
            '{' | '}' | '|' | '<' | '>' | ' ' => vec!['\\', c],
            c => vec![c],
        })
        .collect()
}

/// Renders a diagram as a DOT digraph.
///
/// Boxes are record nodes with one field per port, interface wires are
/// point nodes held on the first and last rank, open variable points are
/// labelled plain-text nodes, and nets with other than one producer meet at
/// a junction point. The layout of the text follows the canonical form, so
/// equivalent diagrams render identically.
pub fn to_dot(d: &Diagram) -> String {
    let c = canonical_form(d);
    let mut s = String::from("digraph diagram {\n  rankdir=LR;\n");
    for i in 0..c.inputs() {
        let _ = writeln!(s, "  in{i} [shape=point];");
    }
    for j in 0..c.outputs() {
        let _ = writeln!(s, "  out{j} [shape=point];");
    }
    if c.inputs() > 0 {
        let names: Vec<String> = (0..c.inputs()).map(|i| format!("in{i};")).collect();
        let _ = writeln!(s, "  {{ rank=source; {} }}", names.join(" "));
    }
    if c.outputs() > 0 {
        let names: Vec<String> = (0..c.outputs()).map(|j| format!("out{j};")).collect();
        let _ = writeln!(s, "  {{ rank=sink; {} }}", names.join(" "));
    }
    for (b, node) in c.boxes().iter().enumerate() {
        let ins: Vec<String> = (0..node.inputs).map(|i| format!("<i{i}>")).collect();
        let outs: Vec<String> = (0..node.outputs).map(|j| format!("<o{j}>")).collect();
        let label = format!(
            "{{{{{}}}|{}|{{{}}}}}",
            ins.join("|"),
            record_escape(&node.name),
            outs.join("|")
        );
        let _ = writeln!(s, "  b{b} [shape=record, label={}];", quote(&label));
    }
    for (k, x) in c.source_points().iter().enumerate() {
        let _ = writeln!(s, "  src{k} [shape=plaintext, label={}];", quote(x));
    }
    for (k, x) in c.sink_points().iter().enumerate() {
        let _ = writeln!(s, "  snk{k} [shape=plaintext, label={}];", quote(x));
    }
    let end = |p: Port| match p {
        Port::Input(i) => format!("in{i}"),
        Port::Output(j) => format!("out{j}"),
        Port::BoxIn(b, i) => format!("b{b}:i{i}"),
        Port::BoxOut(b, j) => format!("b{b}:o{j}"),
        Port::Source(k) => format!("src{k}"),
        Port::Sink(k) => format!("snk{k}"),
    };
    let mut junctions = 0;
    for net in c.nets() {
        let ps: Vec<Port> = net.producers().collect();
        if let [p] = ps[..] {
            for q in net.consumers() {
                let _ = writeln!(s, "  {} -> {};", end(p), end(q));
            }
        } else {
            let j = format!("j{junctions}");
            junctions += 1;
            let _ = writeln!(s, "  {j} [shape=point];");
            for p in ps {
                let _ = writeln!(s, "  {} -> {j};", end(p));
            }
            for q in net.consumers() {
                let _ = writeln!(s, "  {j} -> {};", end(q));
            }
        }
    }
    for _ in 0..c.loops() {
        let j = format!("j{junctions}");
        junctions += 1;
        let _ = writeln!(s, "  {j} [shape=point];\n  {j} -> {j};");
    }
    s.push_str("}\n");
    s
}
