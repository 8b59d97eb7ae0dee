//! Canonical labelling of diagrams.
//!
//! A diagram is viewed as a hypergraph: interface ports, boxes and variable
//! points are nodes with numbered ports, nets are hyperedges over
//! `(node, port)` pairs. Each connected component is labelled by colour
//! refinement followed by individualisation-refinement, keeping the smallest
//! leaf encoding. Interface nodes carry unique labels, so components touching
//! the interface are usually discrete after the first refinement.

use std::collections::BTreeMap;

use super::{BoxNode, Diagram, Port};

/// A complete isomorphism invariant of a diagram.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey {
    pub inputs: usize,
    pub outputs: usize,
    pub loops: usize,
    pub components: Vec<ComponentCode>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComponentCode {
    labels: Vec<NodeLabel>,
    nets: Vec<Vec<(usize, usize)>>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum NodeLabel {
    Input(usize),
    Output(usize),
    Box(String, usize, usize),
    Source(String),
    Sink(String),
}

pub fn canonical(d: &Diagram) -> CanonicalKey {
    canonicalize(d).0
}

/// The representative of `d`'s isomorphism class: boxes and points renumbered
/// in canonical order. Isomorphic diagrams give identical results.
pub fn canonical_form(d: &Diagram) -> Diagram {
    canonicalize(d).1
}

struct Hyper {
    labels: Vec<NodeLabel>,
    /// node -> port -> net index
    net_of: Vec<Vec<usize>>,
    nets: Vec<Vec<(usize, usize)>>,
}

fn build(d: &Diagram) -> Hyper {
    let mut labels = Vec::new();
    labels.extend((0..d.inputs).map(NodeLabel::Input));
    labels.extend((0..d.outputs).map(NodeLabel::Output));
    let box_base = labels.len();
    labels.extend(
        d.boxes
            .iter()
            .map(|b| NodeLabel::Box(b.name.clone(), b.inputs, b.outputs)),
    );
    let src_base = labels.len();
    labels.extend(d.sources.iter().cloned().map(NodeLabel::Source));
    let sink_base = labels.len();
    labels.extend(d.sinks.iter().cloned().map(NodeLabel::Sink));

    let mut net_of: Vec<Vec<usize>> = labels
        .iter()
        .map(|l| match l {
            NodeLabel::Box(_, i, o) => vec![usize::MAX; i + o],
            _ => vec![usize::MAX; 1],
        })
        .collect();
    let mut nets = Vec::with_capacity(d.nets.len());
    for (k, net) in d.nets.iter().enumerate() {
        let mut inc = Vec::with_capacity(net.ports().len());
        for &p in net.ports() {
            let (v, q) = match p {
                Port::Input(i) => (i, 0),
                Port::Output(j) => (d.inputs + j, 0),
                Port::BoxIn(b, i) => (box_base + b, i),
                Port::BoxOut(b, j) => (box_base + b, d.boxes[b].inputs + j),
                Port::Source(i) => (src_base + i, 0),
                Port::Sink(i) => (sink_base + i, 0),
            };
            net_of[v][q] = k;
            inc.push((v, q));
        }
        nets.push(inc);
    }
    Hyper {
        labels,
        net_of,
        nets,
    }
}

fn canonicalize(d: &Diagram) -> (CanonicalKey, Diagram) {
    let h = build(d);
    let n = h.labels.len();

    // connected components over shared nets
    let mut comp = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut members = vec![];
        let mut stack = vec![start];
        comp[start] = id;
        while let Some(v) = stack.pop() {
            members.push(v);
            for &k in &h.net_of[v] {
                if k == usize::MAX {
                    continue;
                }
                for &(u, _) in &h.nets[k] {
                    if comp[u] == usize::MAX {
                        comp[u] = id;
                        stack.push(u);
                    }
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }

    let mut coded: Vec<(ComponentCode, Vec<usize>)> = comps
        .iter()
        .map(|members| label_component(&h, members))
        .collect();
    coded.sort_by(|a, b| a.0.cmp(&b.0));

    // rebuild the diagram in canonical order
    let mut node_index = vec![0usize; n];
    let mut boxes: Vec<BoxNode> = Vec::new();
    let mut sources = Vec::new();
    let mut sinks = Vec::new();
    for (_, order) in &coded {
        for &v in order {
            match &h.labels[v] {
                NodeLabel::Input(i) | NodeLabel::Output(i) => node_index[v] = *i,
                NodeLabel::Box(name, i, o) => {
                    node_index[v] = boxes.len();
                    boxes.push(BoxNode {
                        name: name.clone(),
                        inputs: *i,
                        outputs: *o,
                    });
                }
                NodeLabel::Source(name) => {
                    node_index[v] = sources.len();
                    sources.push(name.clone());
                }
                NodeLabel::Sink(name) => {
                    node_index[v] = sinks.len();
                    sinks.push(name.clone());
                }
            }
        }
    }
    let nets = h
        .nets
        .iter()
        .map(|inc| {
            inc.iter()
                .map(|&(v, q)| {
                    let i = node_index[v];
                    match &h.labels[v] {
                        NodeLabel::Input(_) => Port::Input(i),
                        NodeLabel::Output(_) => Port::Output(i),
                        NodeLabel::Box(_, ins, _) if q < *ins => Port::BoxIn(i, q),
                        NodeLabel::Box(_, ins, _) => Port::BoxOut(i, q - ins),
                        NodeLabel::Source(_) => Port::Source(i),
                        NodeLabel::Sink(_) => Port::Sink(i),
                    }
                })
                .collect()
        })
        .collect();
    let form = Diagram::from_parts(boxes, d.inputs, d.outputs, sources, sinks, nets, d.loops);
    let key = CanonicalKey {
        inputs: d.inputs,
        outputs: d.outputs,
        loops: d.loops,
        components: coded.into_iter().map(|(c, _)| c).collect(),
    };
    (key, form)
}

/// Local view of one component: nodes renumbered `0..len`.
struct Local<'a> {
    h: &'a Hyper,
    members: &'a [usize],
    local: BTreeMap<usize, usize>,
    nets: Vec<usize>,
}

impl Local<'_> {
    fn port_neighbours(&self, colors: &[usize], v: usize) -> Vec<Vec<(usize, usize)>> {
        let g = self.members[v];
        self.h.net_of[g]
            .iter()
            .enumerate()
            .map(|(p, &k)| {
                let mut others: Vec<(usize, usize)> = self.h.nets[k]
                    .iter()
                    .filter(|&&(u, q)| (u, q) != (g, p))
                    .map(|&(u, q)| (colors[self.local[&u]], q))
                    .collect();
                others.sort_unstable();
                others
            })
            .collect()
    }

    fn refine(&self, mut colors: Vec<usize>) -> Vec<usize> {
        // own colour, then the colours seen through each port
        type Profile = (usize, Vec<Vec<(usize, usize)>>);
        let mut classes = count_classes(&colors);
        loop {
            let sigs: Vec<Profile> = (0..colors.len())
                .map(|v| (colors[v], self.port_neighbours(&colors, v)))
                .collect();
            let mut sorted: Vec<&Profile> = sigs.iter().collect();
            sorted.sort();
            sorted.dedup();
            let next: Vec<usize> = sigs
                .iter()
                .map(|s| sorted.binary_search(&s).expect("signature present"))
                .collect();
            let now = count_classes(&next);
            colors = next;
            if now == classes {
                return colors;
            }
            classes = now;
        }
    }

    fn twins(&self, a: usize, b: usize) -> bool {
        let (ga, gb) = (self.members[a], self.members[b]);
        self.h.labels[ga] == self.h.labels[gb] && self.h.net_of[ga] == self.h.net_of[gb]
    }

    fn encode(&self, colors: &[usize]) -> (ComponentCode, Vec<usize>) {
        let mut order: Vec<usize> = (0..colors.len()).collect();
        order.sort_by_key(|&v| colors[v]);
        let mut pos = vec![0; colors.len()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let labels = order
            .iter()
            .map(|&v| self.h.labels[self.members[v]].clone())
            .collect();
        let mut nets: Vec<Vec<(usize, usize)>> = self
            .nets
            .iter()
            .map(|&k| {
                let mut inc: Vec<(usize, usize)> = self.h.nets[k]
                    .iter()
                    .map(|&(u, q)| (pos[self.local[&u]], q))
                    .collect();
                inc.sort_unstable();
                inc
            })
            .collect();
        nets.sort();
        let global = order.iter().map(|&v| self.members[v]).collect();
        (ComponentCode { labels, nets }, global)
    }

    fn search(&self, colors: Vec<usize>, best: &mut Option<(ComponentCode, Vec<usize>)>) {
        let colors = self.refine(colors);
        let mut counts = BTreeMap::new();
        for &c in &colors {
            *counts.entry(c).or_insert(0usize) += 1;
        }
        let Some((&cell, _)) = counts.iter().find(|(_, &n)| n > 1) else {
            let leaf = self.encode(&colors);
            if best.as_ref().is_none_or(|b| leaf.0 < b.0) {
                *best = Some(leaf);
            }
            return;
        };
        let mut tried: Vec<usize> = Vec::new();
        for v in (0..colors.len()).filter(|&v| colors[v] == cell) {
            if tried.iter().any(|&t| self.twins(t, v)) {
                continue;
            }
            tried.push(v);
            let next = colors
                .iter()
                .enumerate()
                .map(|(u, &c)| if u == v { 2 * c + 1 } else { 2 * c })
                .collect();
            self.search(next, best);
        }
    }
}

fn count_classes(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn label_component(h: &Hyper, members: &[usize]) -> (ComponentCode, Vec<usize>) {
    let local: BTreeMap<usize, usize> = members.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut nets: Vec<usize> = members
        .iter()
        .flat_map(|&v| h.net_of[v].iter().copied())
        .collect();
    nets.sort_unstable();
    nets.dedup();
    let view = Local {
        h,
        members,
        local,
        nets,
    };
    let mut distinct: Vec<&NodeLabel> = members.iter().map(|&v| &h.labels[v]).collect();
    distinct.sort();
    distinct.dedup();
    let colors = members
        .iter()
        .map(|&v| {
            distinct
                .binary_search(&&h.labels[v])
                .expect("label present")
        })
        .collect();
    let mut best = None;
    view.search(colors, &mut best);
    best.expect("search reaches at least one leaf")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{Mode, Signature};

    fn sig() -> Signature {
        Signature::new()
            .with("f", 1, 1)
            .with("g", 1, 1)
            .with("h", 2, 1)
    }

    fn c(name: &str) -> Diagram {
        Diagram::constant(name, &sig()).unwrap()
    }

    #[test]
    fn box_order_does_not_matter() {
        let a = c("f").tensor(&c("g"));
        // same boxes, built in the other order and then swapped back
        let b = Diagram::symmetry()
            .compose(&c("g").tensor(&c("f")))
            .unwrap()
            .compose(&Diagram::symmetry())
            .unwrap();
        assert_ne!(a, b);
        assert_eq!(canonical(&a), canonical(&b));
        assert_eq!(canonical_form(&a), canonical_form(&b));
    }

    #[test]
    fn distinguishes_wiring() {
        let a = c("f").tensor(&c("g"));
        let b = c("g").tensor(&c("f"));
        assert_ne!(canonical(&a), canonical(&b));
    }

    #[test]
    fn distinguishes_loops() {
        let one = Diagram::identity(1).trace(Mode::Biflow).unwrap();
        assert_ne!(canonical(&one), canonical(&Diagram::empty()));
        assert_eq!(canonical(&one.tensor(&one)).loops, 2);
    }

    #[test]
    fn symmetric_closed_components() {
        // two closed rings of f;g built in different orders
        let ring1 = c("f")
            .compose(&c("g"))
            .unwrap()
            .trace(Mode::Biflow)
            .unwrap();
        let ring2 = c("g")
            .compose(&c("f"))
            .unwrap()
            .trace(Mode::Biflow)
            .unwrap();
        assert_eq!(canonical(&ring1), canonical(&ring2));
        let ff = c("f")
            .compose(&c("f"))
            .unwrap()
            .trace(Mode::Biflow)
            .unwrap();
        assert_ne!(canonical(&ring1), canonical(&ff));
        let both_a = ring1.tensor(&ff);
        let both_b = ff.tensor(&ring2);
        assert_eq!(canonical_form(&both_a), canonical_form(&both_b));
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let d = c("h")
            .compose(&c("f"))
            .unwrap()
            .tensor(&c("g"))
            .tensor(&Diagram::source("y"));
        let f = canonical_form(&d);
        assert_eq!(canonical_form(&f), f);
        assert_eq!(canonical(&f), canonical(&d));
    }

    #[test]
    fn point_labels_matter() {
        assert_ne!(
            canonical(&Diagram::source("x")),
            canonical(&Diagram::source("y"))
        );
    }
}
