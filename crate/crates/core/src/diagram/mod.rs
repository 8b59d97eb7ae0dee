//! Concrete diagrams up to wire homeomorphism.
//!
//! Wire nodes are never materialised. Every maximal cluster of connected
//! wire nodes is a [`Net`]: the set of ports it touches. Producers are
//! diagram inputs, box outputs and source points; consumers are diagram
//! outputs, box inputs and sink points. The mode decides which net shapes are
//! legal:
//!
//! * linear modes: one producer and one consumer per net;
//! * comonoid: at most one producer, any number of consumers (a net with no
//!   producer is fed back into itself by a trace);
//! * spider: any shape.
//!
//! A net whose ports have all been fused away is a closed loop and is only
//! counted.

mod canon;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::term::{Mode, Name, Signature};

pub use canon::{canonical, canonical_form, CanonicalKey};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Port {
    /// Diagram input (producer).
    Input(usize),
    /// Diagram output (consumer).
    Output(usize),
    /// Input `port` of box `box` (consumer).
    BoxIn(usize, usize),
    /// Output `port` of box `box` (producer).
    BoxOut(usize, usize),
    /// An open source-variable point (producer).
    Source(usize),
    /// An open sink-variable point (consumer).
    Sink(usize),
}

impl Port {
    pub fn is_producer(self) -> bool {
        matches!(self, Port::Input(_) | Port::BoxOut(..) | Port::Source(_))
    }

    pub fn is_consumer(self) -> bool {
        !self.is_producer()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoxNode {
    pub name: Name,
    pub inputs: usize,
    pub outputs: usize,
}

/// The ports joined by one cluster of wire nodes. Ports are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Net(Vec<Port>);

impl Net {
    pub fn new(mut ports: Vec<Port>) -> Self {
        ports.sort();
        Net(ports)
    }

    pub fn ports(&self) -> &[Port] {
        &self.0
    }

    pub fn producers(&self) -> impl Iterator<Item = Port> + '_ {
        self.0.iter().copied().filter(|p| p.is_producer())
    }

    pub fn consumers(&self) -> impl Iterator<Item = Port> + '_ {
        self.0.iter().copied().filter(|p| p.is_consumer())
    }

    pub fn producer_count(&self) -> usize {
        self.producers().count()
    }

    pub fn consumer_count(&self) -> usize {
        self.consumers().count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("interface mismatch: {outputs} outputs composed with {inputs} inputs")]
    IfaceMismatch { outputs: usize, inputs: usize },
    #[error("trace requires at least one input and one output (have {inputs} -> {outputs})")]
    NegativeArity { inputs: usize, outputs: usize },
    #[error("{construct} is not available in {mode} mode")]
    ModeViolation { construct: &'static str, mode: Mode },
    #[error("cannot link `{sink}` and `{src}`: {reason}")]
    UnknownLabel {
        sink: String,
        src: String,
        reason: String,
    },
    #[error("linking `{sink}` to `{src}` closes a cycle in a uniflow diagram")]
    CycleError { sink: String, src: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    boxes: Vec<BoxNode>,
    inputs: usize,
    outputs: usize,
    sources: Vec<Name>,
    sinks: Vec<Name>,
    nets: Vec<Net>,
    loops: usize,
}

impl Diagram {
    /// Assembles a diagram from raw parts. Nets are normalised (sorted); no
    /// validation beyond that, see [`Diagram::audit`].
    pub fn from_parts(
        boxes: Vec<BoxNode>,
        inputs: usize,
        outputs: usize,
        sources: Vec<Name>,
        sinks: Vec<Name>,
        nets: Vec<Vec<Port>>,
        loops: usize,
    ) -> Self {
        let mut nets: Vec<Net> = nets
            .into_iter()
            .filter(|n| !n.is_empty())
            .map(Net::new)
            .collect();
        nets.sort();
        Diagram {
            boxes,
            inputs,
            outputs,
            sources,
            sinks,
            nets,
            loops,
        }
    }

    pub fn empty() -> Self {
        Self::from_parts(vec![], 0, 0, vec![], vec![], vec![], 0)
    }

    pub fn identity(n: usize) -> Self {
        let nets = (0..n)
            .map(|i| vec![Port::Input(i), Port::Output(i)])
            .collect();
        Self::from_parts(vec![], n, n, vec![], vec![], nets, 0)
    }

    pub fn symmetry() -> Self {
        let nets = vec![
            vec![Port::Input(0), Port::Output(1)],
            vec![Port::Input(1), Port::Output(0)],
        ];
        Self::from_parts(vec![], 2, 2, vec![], vec![], nets, 0)
    }

    pub fn constant(name: &str, sig: &Signature) -> Result<Self, DiagramError> {
        let arity = sig
            .get(name)
            .ok_or_else(|| DiagramError::UnknownConstant(name.to_string()))?;
        let mut nets = Vec::new();
        for i in 0..arity.inputs {
            nets.push(vec![Port::Input(i), Port::BoxIn(0, i)]);
        }
        for j in 0..arity.outputs {
            nets.push(vec![Port::BoxOut(0, j), Port::Output(j)]);
        }
        let node = BoxNode {
            name: name.to_string(),
            inputs: arity.inputs,
            outputs: arity.outputs,
        };
        Ok(Self::from_parts(
            vec![node],
            arity.inputs,
            arity.outputs,
            vec![],
            vec![],
            nets,
            0,
        ))
    }

    /// A source occurrence of `x`: `0 -> 1`.
    pub fn source(x: &str) -> Self {
        Self::from_parts(
            vec![],
            0,
            1,
            vec![x.to_string()],
            vec![],
            vec![vec![Port::Source(0), Port::Output(0)]],
            0,
        )
    }

    /// A sink occurrence of `x`: `1 -> 0`.
    pub fn sink(x: &str) -> Self {
        Self::from_parts(
            vec![],
            1,
            0,
            vec![],
            vec![x.to_string()],
            vec![vec![Port::Input(0), Port::Sink(0)]],
            0,
        )
    }

    pub fn comul() -> Self {
        let nets = vec![vec![Port::Input(0), Port::Output(0), Port::Output(1)]];
        Self::from_parts(vec![], 1, 2, vec![], vec![], nets, 0)
    }

    pub fn counit() -> Self {
        Self::from_parts(vec![], 1, 0, vec![], vec![], vec![vec![Port::Input(0)]], 0)
    }

    pub fn mul() -> Self {
        let nets = vec![vec![Port::Input(0), Port::Input(1), Port::Output(0)]];
        Self::from_parts(vec![], 2, 1, vec![], vec![], nets, 0)
    }

    pub fn unit() -> Self {
        Self::from_parts(vec![], 0, 1, vec![], vec![], vec![vec![Port::Output(0)]], 0)
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    pub fn boxes(&self) -> &[BoxNode] {
        &self.boxes
    }

    pub fn nets(&self) -> &[Net] {
        &self.nets
    }

    pub fn loops(&self) -> usize {
        self.loops
    }

    pub fn source_points(&self) -> &[Name] {
        &self.sources
    }

    pub fn sink_points(&self) -> &[Name] {
        &self.sinks
    }

    /// Source labels with their occurrence counts.
    pub fn open_sources(&self) -> BTreeMap<Name, usize> {
        count_labels(&self.sources)
    }

    /// Sink labels with their occurrence counts.
    pub fn open_sinks(&self) -> BTreeMap<Name, usize> {
        count_labels(&self.sinks)
    }

    pub fn is_closed(&self) -> bool {
        self.sources.is_empty() && self.sinks.is_empty()
    }

    /// The net containing `port`, if the port exists.
    pub fn net_of(&self, port: Port) -> Option<&Net> {
        self.nets.iter().find(|n| n.0.binary_search(&port).is_ok())
    }

    /// Sequential composition: output `k` of `self` is fused with input `k`
    /// of `other`.
    pub fn compose(&self, other: &Diagram) -> Result<Diagram, DiagramError> {
        if self.outputs != other.inputs {
            return Err(DiagramError::IfaceMismatch {
                outputs: self.outputs,
                inputs: other.inputs,
            });
        }
        let shift = Shift::after(self);
        let mut nets: Vec<Vec<Port>> = Vec::new();
        let mut out_net = vec![usize::MAX; self.outputs];
        let mut in_net = vec![usize::MAX; other.inputs];
        for net in &self.nets {
            let idx = nets.len();
            let mut ports = Vec::new();
            for &p in net.ports() {
                match p {
                    Port::Output(j) => out_net[j] = idx,
                    p => ports.push(p),
                }
            }
            nets.push(ports);
        }
        for net in &other.nets {
            let idx = nets.len();
            let mut ports = Vec::new();
            for &p in net.ports() {
                match p {
                    Port::Input(j) => in_net[j] = idx,
                    Port::Output(j) => ports.push(Port::Output(j)),
                    p => ports.push(shift.apply(p)),
                }
            }
            nets.push(ports);
        }
        let unions: Vec<(usize, usize)> = out_net.into_iter().zip(in_net).collect();
        let (nets, new_loops) = merge_nets(nets, &unions);
        Ok(Diagram::from_parts(
            concat(&self.boxes, &other.boxes),
            self.inputs,
            other.outputs,
            concat(&self.sources, &other.sources),
            concat(&self.sinks, &other.sinks),
            nets,
            self.loops + other.loops + new_loops,
        ))
    }

    /// Parallel composition, `self` on top.
    pub fn tensor(&self, other: &Diagram) -> Diagram {
        let shift = Shift::after(self);
        let mut nets: Vec<Vec<Port>> = self.nets.iter().map(|n| n.0.clone()).collect();
        for net in &other.nets {
            nets.push(
                net.ports()
                    .iter()
                    .map(|&p| match p {
                        Port::Input(i) => Port::Input(i + self.inputs),
                        Port::Output(j) => Port::Output(j + self.outputs),
                        p => shift.apply(p),
                    })
                    .collect(),
            );
        }
        Diagram::from_parts(
            concat(&self.boxes, &other.boxes),
            self.inputs + other.inputs,
            self.outputs + other.outputs,
            concat(&self.sources, &other.sources),
            concat(&self.sinks, &other.sinks),
            nets,
            self.loops + other.loops,
        )
    }

    /// Unit trace: output 0 is fed back into input 0.
    pub fn trace(&self, mode: Mode) -> Result<Diagram, DiagramError> {
        if !mode.has_trace() {
            return Err(DiagramError::ModeViolation {
                construct: "trace",
                mode,
            });
        }
        if self.inputs == 0 || self.outputs == 0 {
            return Err(DiagramError::NegativeArity {
                inputs: self.inputs,
                outputs: self.outputs,
            });
        }
        let mut a = usize::MAX;
        let mut b = usize::MAX;
        let mut nets = Vec::new();
        for (idx, net) in self.nets.iter().enumerate() {
            let mut ports = Vec::new();
            for &p in net.ports() {
                match p {
                    Port::Output(0) => a = idx,
                    Port::Input(0) => b = idx,
                    Port::Output(j) => ports.push(Port::Output(j - 1)),
                    Port::Input(i) => ports.push(Port::Input(i - 1)),
                    p => ports.push(p),
                }
            }
            nets.push(ports);
        }
        let (nets, new_loops) = merge_nets(nets, &[(a, b)]);
        Ok(Diagram::from_parts(
            self.boxes.clone(),
            self.inputs - 1,
            self.outputs - 1,
            self.sources.clone(),
            self.sinks.clone(),
            nets,
            self.loops + new_loops,
        ))
    }

    /// Joins every sink point labelled `x` with every source point labelled
    /// `y` and erases both labels.
    pub fn link(&self, x: &str, y: &str, mode: Mode) -> Result<Diagram, DiagramError> {
        let xs = self.sinks.iter().filter(|s| *s == x).count();
        let ys = self.sources.iter().filter(|s| *s == y).count();
        let bad = |reason: String| DiagramError::UnknownLabel {
            sink: x.to_string(),
            src: y.to_string(),
            reason,
        };
        match mode {
            Mode::Uniflow | Mode::Biflow if xs != 1 || ys != 1 => {
                return Err(bad(format!(
                    "expected one sink and one source point, found {xs} and {ys}"
                )))
            }
            Mode::Comonoid if xs != 1 => {
                return Err(bad(format!("expected one sink point, found {xs}")))
            }
            _ => {}
        }
        let sink_map = compact_map(&self.sinks, x);
        let source_map = compact_map(&self.sources, y);
        let mut touched = Vec::new();
        let mut nets = Vec::new();
        for (idx, net) in self.nets.iter().enumerate() {
            let mut ports = Vec::new();
            let mut hit = false;
            for &p in net.ports() {
                match p {
                    Port::Sink(i) => match sink_map[i] {
                        Some(k) => ports.push(Port::Sink(k)),
                        None => hit = true,
                    },
                    Port::Source(i) => match source_map[i] {
                        Some(k) => ports.push(Port::Source(k)),
                        None => hit = true,
                    },
                    p => ports.push(p),
                }
            }
            if hit {
                touched.push(idx);
            }
            nets.push(ports);
        }
        let unions: Vec<(usize, usize)> = touched.windows(2).map(|w| (w[0], w[1])).collect();
        // a single touched net that loses all its ports is also a loop, and a
        // binder with no occurrences at all is a wire on its own
        let (nets, new_loops) = match touched.len() {
            0 => (nets, 1),
            1 => merge_nets(nets, &[(touched[0], touched[0])]),
            _ => merge_nets(nets, &unions),
        };
        let linked = Diagram::from_parts(
            self.boxes.clone(),
            self.inputs,
            self.outputs,
            self.sources.iter().filter(|s| *s != y).cloned().collect(),
            self.sinks.iter().filter(|s| *s != x).cloned().collect(),
            nets,
            self.loops + new_loops,
        );
        if mode == Mode::Uniflow && !linked.is_acyclic() {
            return Err(DiagramError::CycleError {
                sink: x.to_string(),
                src: y.to_string(),
            });
        }
        Ok(linked)
    }

    /// `true` iff there are no closed loops and the dependency graph through
    /// boxes and nets has no directed cycle. Nets without a producer do not
    /// count as cycles here; the check is meant for linear diagrams.
    pub fn is_acyclic(&self) -> bool {
        if self.loops > 0 {
            return false;
        }
        let graph = self.dependency_graph();
        topological_order(&graph).is_some()
    }

    /// Whether a directed path leads from the point of source `from` to the
    /// point of sink `to` (used for anchor compatibility).
    pub fn has_path(&self, from: Port, to: Port) -> bool {
        let graph = self.dependency_graph();
        let (Some(start), Some(goal)) = (graph.node_of(from), graph.node_of(to)) else {
            return false;
        };
        let mut seen = vec![false; graph.succ.len()];
        let mut stack = vec![start];
        while let Some(n) = stack.pop() {
            if n == goal {
                return true;
            }
            if std::mem::replace(&mut seen[n], true) {
                continue;
            }
            stack.extend(graph.succ[n].iter().copied());
        }
        false
    }

    /// Boxes in a topological order, ties broken by box index. `None` if the
    /// diagram is cyclic.
    pub fn topological_boxes(&self) -> Option<Vec<usize>> {
        let graph = self.dependency_graph();
        let order = topological_order(&graph)?;
        Some(
            order
                .into_iter()
                .filter(|&n| n < self.boxes.len())
                .collect(),
        )
    }

    fn dependency_graph(&self) -> DepGraph {
        // nodes: boxes, then source points, sink points, then one node per net
        let nb = self.boxes.len();
        let ns = self.sources.len();
        let nk = self.sinks.len();
        let base = nb + ns + nk;
        let mut succ = vec![Vec::new(); base + self.nets.len()];
        let node = |p: Port| -> Option<usize> {
            match p {
                Port::BoxIn(b, _) | Port::BoxOut(b, _) => Some(b),
                Port::Source(i) => Some(nb + i),
                Port::Sink(i) => Some(nb + ns + i),
                _ => None,
            }
        };
        for (k, net) in self.nets.iter().enumerate() {
            let net_node = base + k;
            for p in net.producers() {
                if let Some(n) = node(p) {
                    succ[n].push(net_node);
                }
            }
            for c in net.consumers() {
                if let Some(n) = node(c) {
                    succ[net_node].push(n);
                }
            }
        }
        DepGraph { succ, nb, ns }
    }

    /// Checks the structural invariants for `mode`: every port covered
    /// exactly once, box ports matching box arities, net shapes legal for the
    /// mode, open points obeying the mode's multiplicities.
    pub fn audit(&self, mode: Mode) -> Result<(), String> {
        let mut expected = BTreeSet::new();
        expected.extend((0..self.inputs).map(Port::Input));
        expected.extend((0..self.outputs).map(Port::Output));
        for (b, node) in self.boxes.iter().enumerate() {
            expected.extend((0..node.inputs).map(|i| Port::BoxIn(b, i)));
            expected.extend((0..node.outputs).map(|j| Port::BoxOut(b, j)));
        }
        expected.extend((0..self.sources.len()).map(Port::Source));
        expected.extend((0..self.sinks.len()).map(Port::Sink));
        let mut seen = BTreeSet::new();
        for net in &self.nets {
            if net.ports().is_empty() {
                return Err("empty net".into());
            }
            for &p in net.ports() {
                if !seen.insert(p) {
                    return Err(format!("port {p:?} covered twice"));
                }
            }
            let (np, nc) = (net.producer_count(), net.consumer_count());
            let ok = match mode {
                Mode::Uniflow | Mode::Biflow => np == 1 && nc == 1,
                Mode::Comonoid => np <= 1 && !(np == 0 && nc == 0),
                Mode::Spider => true,
            };
            if !ok {
                return Err(format!(
                    "net {:?} has illegal shape for {mode}",
                    net.ports()
                ));
            }
        }
        if seen != expected {
            return Err("wiring does not cover exactly the diagram's ports".into());
        }
        if mode == Mode::Uniflow && self.loops > 0 {
            return Err("uniflow diagram with loops".into());
        }
        let multiple = |m: &BTreeMap<Name, usize>| m.values().any(|&c| c > 1);
        match mode {
            Mode::Uniflow | Mode::Biflow
                if multiple(&self.open_sources()) || multiple(&self.open_sinks()) =>
            {
                Err("repeated variable point in a linear mode".into())
            }
            Mode::Comonoid if multiple(&self.open_sinks()) => {
                Err("repeated sink point in comonoid mode".into())
            }
            _ => Ok(()),
        }
    }

    /// Decides equality up to box renumbering and wire homeomorphism.
    pub fn equivalent(&self, other: &Diagram) -> bool {
        canonical(self) == canonical(other)
    }
}

fn count_labels(labels: &[Name]) -> BTreeMap<Name, usize> {
    let mut out = BTreeMap::new();
    for l in labels {
        *out.entry(l.clone()).or_insert(0) += 1;
    }
    out
}

fn concat<T: Clone>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().chain(b).cloned().collect()
}

/// For every point, its index after removing all points labelled `drop`.
fn compact_map(labels: &[Name], drop: &str) -> Vec<Option<usize>> {
    let mut next = 0;
    labels
        .iter()
        .map(|l| {
            if l == drop {
                None
            } else {
                next += 1;
                Some(next - 1)
            }
        })
        .collect()
}

/// Offsets applied to box and point indices of the second operand.
struct Shift {
    boxes: usize,
    sources: usize,
    sinks: usize,
}

impl Shift {
    fn after(d: &Diagram) -> Self {
        Shift {
            boxes: d.boxes.len(),
            sources: d.sources.len(),
            sinks: d.sinks.len(),
        }
    }

    fn apply(&self, p: Port) -> Port {
        match p {
            Port::BoxIn(b, i) => Port::BoxIn(b + self.boxes, i),
            Port::BoxOut(b, j) => Port::BoxOut(b + self.boxes, j),
            Port::Source(i) => Port::Source(i + self.sources),
            Port::Sink(i) => Port::Sink(i + self.sinks),
            p => p,
        }
    }
}

/// Merges nets along `unions` (indices into `nets`). Any merged group left
/// without ports becomes a loop; returns the surviving nets and the number of
/// new loops.
fn merge_nets(nets: Vec<Vec<Port>>, unions: &[(usize, usize)]) -> (Vec<Vec<Port>>, usize) {
    let mut parent: Vec<usize> = (0..nets.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let mut involved = vec![false; nets.len()];
    for &(a, b) in unions {
        involved[a] = true;
        involved[b] = true;
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut groups: BTreeMap<usize, (Vec<Port>, bool)> = BTreeMap::new();
    for (i, ports) in nets.into_iter().enumerate() {
        let r = find(&mut parent, i);
        let entry = groups.entry(r).or_insert_with(|| (Vec::new(), false));
        entry.0.extend(ports);
        entry.1 |= involved[i];
    }
    let mut loops = 0;
    let mut out = Vec::new();
    for (_, (ports, touched)) in groups {
        if ports.is_empty() {
            if touched {
                loops += 1;
            }
        } else {
            out.push(ports);
        }
    }
    (out, loops)
}

struct DepGraph {
    succ: Vec<Vec<usize>>,
    nb: usize,
    ns: usize,
}

impl DepGraph {
    fn node_of(&self, p: Port) -> Option<usize> {
        match p {
            Port::BoxIn(b, _) | Port::BoxOut(b, _) => Some(b),
            Port::Source(i) => Some(self.nb + i),
            Port::Sink(i) => Some(self.nb + self.ns + i),
            _ => None,
        }
    }
}

/// Kahn's algorithm, always taking the smallest ready node.
fn topological_order(graph: &DepGraph) -> Option<Vec<usize>> {
    let n = graph.succ.len();
    let mut indeg = vec![0usize; n];
    for s in &graph.succ {
        for &t in s {
            indeg[t] += 1;
        }
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(&v) = ready.iter().next() {
        ready.remove(&v);
        order.push(v);
        for &t in &graph.succ[v] {
            indeg[t] -= 1;
            if indeg[t] == 0 {
                ready.insert(t);
            }
        }
    }
    (order.len() == n).then_some(order)
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

    #[test]
    fn identity_one_is_a_single_wire() {
        let d = Diagram::identity(1);
        assert_eq!(d.nets(), &[Net::new(vec![Port::Input(0), Port::Output(0)])]);
        d.audit(Mode::Uniflow).unwrap();
    }

    #[test]
    fn source_point() {
        let d = Diagram::source("x");
        assert_eq!((d.inputs(), d.outputs()), (0, 1));
        assert_eq!(d.open_sources().get("x"), Some(&1));
    }

    #[test]
    fn symmetry_twice_is_identity() {
        let s = Diagram::symmetry();
        let ss = s.compose(&s).unwrap();
        assert_eq!(ss, Diagram::identity(2));
    }

    #[test]
    fn compose_f_g() {
        let s = sig();
        let d = Diagram::constant("f", &s)
            .unwrap()
            .compose(&Diagram::constant("g", &s).unwrap())
            .unwrap();
        assert_eq!((d.inputs(), d.outputs(), d.boxes().len()), (1, 1, 2));
        let internal = d
            .nets()
            .iter()
            .filter(|n| {
                n.ports()
                    .iter()
                    .all(|p| matches!(p, Port::BoxIn(..) | Port::BoxOut(..)))
            })
            .count();
        assert_eq!(internal, 3);
        assert_eq!(d.nets().len(), 5);
        assert!(d.is_acyclic());
        d.audit(Mode::Uniflow).unwrap();
    }

    #[test]
    fn compose_checks_interfaces() {
        let err = Diagram::identity(2)
            .compose(&Diagram::identity(1))
            .unwrap_err();
        assert_eq!(
            err,
            DiagramError::IfaceMismatch {
                outputs: 2,
                inputs: 1
            }
        );
    }

    #[test]
    fn identity_is_neutral() {
        let s = sig();
        let f = Diagram::constant("f", &s).unwrap();
        assert_eq!(Diagram::identity(1).compose(&f).unwrap(), f);
        assert_eq!(f.compose(&Diagram::identity(3)).unwrap(), f);
    }

    #[test]
    fn tensor_with_empty() {
        let f = Diagram::constant("f", &sig()).unwrap();
        assert_eq!(f.tensor(&Diagram::empty()), f);
        assert_eq!(Diagram::empty().tensor(&f), f);
        assert_eq!(
            Diagram::identity(1).tensor(&Diagram::identity(1)),
            Diagram::identity(2)
        );
    }

    #[test]
    fn trace_of_symmetry_is_identity() {
        assert_eq!(
            Diagram::symmetry().trace(Mode::Biflow).unwrap(),
            Diagram::identity(1)
        );
    }

    #[test]
    fn trace_of_identity_is_a_loop() {
        let d = Diagram::identity(1).trace(Mode::Biflow).unwrap();
        assert_eq!(
            (d.inputs(), d.outputs(), d.loops(), d.nets().len()),
            (0, 0, 1, 0)
        );
        assert!(!d.is_acyclic());
    }

    #[test]
    fn trace_errors() {
        assert!(matches!(
            Diagram::identity(1).trace(Mode::Uniflow),
            Err(DiagramError::ModeViolation { .. })
        ));
        assert!(matches!(
            Diagram::counit().trace(Mode::Comonoid),
            Err(DiagramError::NegativeArity { .. })
        ));
    }

    #[test]
    fn trace_through_a_box_is_cyclic() {
        let d = Diagram::constant("k", &sig())
            .unwrap()
            .trace(Mode::Biflow)
            .unwrap();
        assert_eq!(d.loops(), 0);
        assert!(!d.is_acyclic());
    }

    #[test]
    fn link_identity() {
        let d = Diagram::sink("x").compose(&Diagram::source("y")).unwrap();
        assert_eq!(
            d.link("x", "y", Mode::Uniflow).unwrap(),
            Diagram::identity(1)
        );
    }

    #[test]
    fn link_closing_a_chain_makes_a_loop() {
        // y ; x : 0 -> 0, linking x to y closes a wire on itself
        let d = Diagram::source("y").compose(&Diagram::sink("x")).unwrap();
        let l = d.link("x", "y", Mode::Biflow).unwrap();
        assert_eq!(
            l,
            Diagram::from_parts(vec![], 0, 0, vec![], vec![], vec![], 1)
        );
        assert!(matches!(
            d.link("x", "y", Mode::Uniflow),
            Err(DiagramError::CycleError { .. })
        ));
    }

    #[test]
    fn comonoid_links_give_generators() {
        let x_only = Diagram::sink("x");
        assert_eq!(
            x_only.link("x", "y", Mode::Comonoid).unwrap(),
            Diagram::counit()
        );
        let xyy = Diagram::sink("x")
            .tensor(&Diagram::source("y"))
            .tensor(&Diagram::source("y"));
        assert_eq!(
            xyy.link("x", "y", Mode::Comonoid).unwrap(),
            Diagram::comul()
        );
        assert!(matches!(
            xyy.link("x", "y", Mode::Biflow),
            Err(DiagramError::UnknownLabel { .. })
        ));
    }

    #[test]
    fn spider_links_give_monoid() {
        let y_only = Diagram::source("y");
        assert_eq!(
            y_only.link("x", "y", Mode::Spider).unwrap(),
            Diagram::unit()
        );
        let xxy = Diagram::sink("x")
            .tensor(&Diagram::sink("x"))
            .tensor(&Diagram::source("y"));
        assert_eq!(xxy.link("x", "y", Mode::Spider).unwrap(), Diagram::mul());
    }

    #[test]
    fn comonoid_laws_hold_definitionally() {
        let psi = Diagram::comul();
        let id = Diagram::identity(1);
        let left = psi.compose(&psi.tensor(&id)).unwrap();
        let right = psi.compose(&id.tensor(&psi)).unwrap();
        assert_eq!(left, right);
        let counit = psi.compose(&Diagram::counit().tensor(&id)).unwrap();
        assert_eq!(counit, id);
        let cocomm = psi.compose(&Diagram::symmetry()).unwrap();
        assert_eq!(cocomm, psi);
    }

    #[test]
    fn frobenius_and_special() {
        let id = Diagram::identity(1);
        let phi = Diagram::mul();
        let psi = Diagram::comul();
        let frob = id.tensor(&psi).compose(&phi.tensor(&id)).unwrap();
        assert_eq!(frob, phi.compose(&psi).unwrap());
        assert_eq!(psi.compose(&phi).unwrap(), id);
    }

    #[test]
    fn unit_then_counit_is_a_loop() {
        let d = Diagram::unit().compose(&Diagram::counit()).unwrap();
        assert_eq!(d.loops(), 1);
        assert!(d.nets().is_empty());
    }

    #[test]
    fn unknown_constant() {
        assert_eq!(
            Diagram::constant("zz", &sig()),
            Err(DiagramError::UnknownConstant("zz".into()))
        );
    }

    #[test]
    fn empty_loop_is_cyclic() {
        let d = Diagram::from_parts(vec![], 0, 0, vec![], vec![], vec![], 1);
        assert!(!d.is_acyclic());
        assert!(Diagram::empty().is_acyclic());
    }
}
