//! Balls in Cayley graphs of graph products, their hyperplanes, and
//! exhaustive checks of median and hyperplane properties on them.
//!
//! The generating set is every nontrivial element of a finite vertex group
//! and `v^±1` for an infinite vertex group `⟨v⟩`, so `v^k` lies at distance
//! `|k|`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, VertexOrder, VertexSet};
use crate::word::{self, ReducedWord, Syllable};

pub const MAX_BALL_RADIUS: usize = 8;
pub const MAX_BALL_VERTICES: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub label: usize,
}

#[derive(Debug, Clone)]
pub struct CayleyBall {
    pub graph: LabeledGraph,
    pub radius: usize,
    /// Reduced words, in BFS order.
    pub vertices: Vec<ReducedWord>,
    pub distance: Vec<usize>,
    pub edges: Vec<Edge>,
    index: HashMap<ReducedWord, usize>,
    /// `(neighbour, edge)` for every vertex.
    adjacency: Vec<Vec<(usize, usize)>>,
}

fn vertex_group_elements(graph: &LabeledGraph) -> Vec<Syllable> {
    let mut out = Vec::new();
    for v in graph.vertices().iter() {
        match graph.order(v) {
            VertexOrder::Finite(m) => out.extend((1..m as i64).map(|e| Syllable::new(v, e))),
            VertexOrder::Infinite => out.extend([Syllable::new(v, 1), Syllable::new(v, -1)]),
        }
    }
    out
}

/// The ball of radius `r` about the identity.
pub fn cayley_ball(graph: &LabeledGraph, r: usize) -> Result<CayleyBall> {
    if r > MAX_BALL_RADIUS {
        return Err(Error::Capacity { what: "Cayley ball radius", limit: MAX_BALL_RADIUS });
    }
    let generators: Vec<(ReducedWord, usize)> = vertex_group_elements(graph)
        .into_iter()
        .map(|s| Ok((word::reduce(graph, &[s])?, s.vertex)))
        .collect::<Result<_>>()?;
    let mut vertices = vec![ReducedWord::identity()];
    let mut distance = vec![0];
    let mut index = HashMap::from([(ReducedWord::identity(), 0)]);
    let mut queue = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        if distance[i] == r {
            continue;
        }
        for (s, _) in &generators {
            let w = word::multiply(graph, &vertices[i], s);
            if !index.contains_key(&w) {
                if vertices.len() == MAX_BALL_VERTICES {
                    return Err(Error::Capacity { what: "Cayley ball vertices", limit: MAX_BALL_VERTICES });
                }
                index.insert(w.clone(), vertices.len());
                queue.push_back(vertices.len());
                vertices.push(w);
                distance.push(distance[i] + 1);
            }
        }
    }
    let mut edges = Vec::new();
    let mut adjacency = vec![Vec::new(); vertices.len()];
    for i in 0..vertices.len() {
        for (s, label) in &generators {
            if let Some(&j) = index.get(&word::multiply(graph, &vertices[i], s)) {
                if i < j {
                    adjacency[i].push((j, edges.len()));
                    adjacency[j].push((i, edges.len()));
                    edges.push(Edge { from: i, to: j, label: *label });
                }
            }
        }
    }
    Ok(CayleyBall { graph: graph.clone(), radius: r, vertices, distance, edges, index, adjacency })
}

impl CayleyBall {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn find(&self, w: &ReducedWord) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v].iter().map(|&(u, _)| u)
    }

    fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.adjacency[u].iter().find(|&&(w, _)| w == v).map(|&(_, e)| e)
    }

    /// Both endpoints within `radius − 2` of the identity.
    pub fn is_safe_edge(&self, e: usize) -> bool {
        let safe = self.radius.saturating_sub(2);
        let edge = self.edges[e];
        self.distance[edge.from] <= safe && self.distance[edge.to] <= safe
    }

    /// Graphviz export; edges are coloured by label.
    pub fn to_dot(&self) -> String {
        const COLOURS: [&str; 8] = ["red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan"];
        let mut out = String::from("graph ball {\n  node [shape=point];\n");
        for (i, w) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [tooltip=\"{}\"];", word::format_word(&self.graph, w.syllables()));
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  n{} -- n{} [color={}, label=\"{}\"];",
                e.from,
                e.to,
                COLOURS[e.label % COLOURS.len()],
                self.graph.names()[e.label]
            );
        }
        out.push_str("}\n");
        out
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut y = x;
        while self.0[y] != root {
            let next = self.0[y];
            self.0[y] = root;
            y = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperplaneClass {
    pub edges: Vec<usize>,
    pub label: usize,
}

#[derive(Debug, Clone)]
pub struct Hyperplanes {
    pub classes: Vec<HyperplaneClass>,
    /// Class of every edge.
    pub edge_class: Vec<usize>,
    /// Transverse class pairs `(a, b)` with `a < b`.
    pub crossings: Vec<(usize, usize)>,
    /// Classes whose edges do not all share one label.
    pub mixed_labels: Vec<usize>,
}

impl Hyperplanes {
    pub fn crossing_pairs(&self) -> &[(usize, usize)] {
        &self.crossings
    }

    pub fn class_of(&self, edge: usize) -> &HyperplaneClass {
        &self.classes[self.edge_class[edge]]
    }
}

/// Edge classes generated by "same 3-cycle" and "opposite in a 4-cycle",
/// with transverse pairs read off from the 4-cycles.
pub fn hyperplanes(ball: &CayleyBall) -> Result<Hyperplanes> {
    if ball.radius < 2 {
        return Err(Error::Invalid("hyperplanes need a ball of radius at least 2".into()));
    }
    let mut uf = UnionFind((0..ball.edges.len()).collect());
    let mut corners = Vec::new();
    for g in 0..ball.len() {
        let around = &ball.adjacency[g];
        for (k, &(a, ea)) in around.iter().enumerate() {
            for &(b, eb) in &around[k + 1..] {
                if ball.edge_between(a, b).is_some() {
                    uf.union(ea, eb);
                }
                for &(x, exa) in &ball.adjacency[a] {
                    if x == g {
                        continue;
                    }
                    if let Some(exb) = ball.edge_between(x, b) {
                        uf.union(ea, exb);
                        uf.union(eb, exa);
                        corners.push((ea, eb));
                    }
                }
            }
        }
    }
    let mut ids: HashMap<usize, usize> = HashMap::new();
    let mut classes: Vec<HyperplaneClass> = Vec::new();
    let mut edge_class = Vec::with_capacity(ball.edges.len());
    for e in 0..ball.edges.len() {
        let root = uf.find(e);
        let id = *ids.entry(root).or_insert_with(|| {
            classes.push(HyperplaneClass { edges: Vec::new(), label: ball.edges[e].label });
            classes.len() - 1
        });
        classes[id].edges.push(e);
        edge_class.push(id);
    }
    let mixed_labels = classes
        .iter()
        .enumerate()
        .filter(|(_, c)| c.edges.iter().any(|&e| ball.edges[e].label != c.label))
        .map(|(i, _)| i)
        .collect();
    let mut crossings: Vec<(usize, usize)> = corners
        .into_iter()
        .map(|(a, b)| (edge_class[a], edge_class[b]))
        .filter(|(a, b)| a != b)
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    crossings.sort_unstable();
    Ok(Hyperplanes { classes, edge_class, crossings, mixed_labels })
}

/// Outcome of an exhaustive property check.
#[derive(Debug, Clone, Default)]
pub struct PropertyReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl PropertyReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({"checked": self.checked, "violations": self.violations})
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(describe());
        }
    }
}

/// Every transverse pair of classes carries adjacent labels, and every class
/// has a single label.
pub fn check_label_adjacency(ball: &CayleyBall, hyps: &Hyperplanes) -> PropertyReport {
    let mut report = PropertyReport::default();
    let names = ball.graph.names();
    for &c in &hyps.mixed_labels {
        report.record(false, || format!("class {c} has several labels"));
    }
    for &(a, b) in &hyps.crossings {
        let (u, v) = (hyps.classes[a].label, hyps.classes[b].label);
        report.record(ball.graph.adjacent(u, v), || format!("crossing classes labelled {} and {}", names[u], names[v]));
    }
    report
}

/// No two classes whose labels both lie in `labels` cross.
pub fn check_noncrossing(ball: &CayleyBall, hyps: &Hyperplanes, labels: &[usize]) -> PropertyReport {
    let mut report = PropertyReport::default();
    let names = ball.graph.names();
    for &(a, b) in &hyps.crossings {
        let (u, v) = (hyps.classes[a].label, hyps.classes[b].label);
        report.record(!(labels.contains(&u) && labels.contains(&v)), || {
            format!("classes labelled {} and {} cross", names[u], names[v])
        });
    }
    report
}

/// For each vertex `u`, the class through the edge `{1, u}` contains only
/// edges `{g, gℓ}` with `g ∈ ⟨link(u)⟩·⟨u⟩` and `ℓ ∈ ⟨u⟩`; asserted on edges
/// within `radius − 2`. When `u` has order 2 one endpoint lies in `⟨link(u)⟩`.
pub fn check_hyperplane_description(ball: &CayleyBall, hyps: &Hyperplanes) -> Result<PropertyReport> {
    let graph = &ball.graph;
    let mut report = PropertyReport::default();
    for u in graph.vertices().iter() {
        let star = graph.star_of(VertexSet::singleton(u));
        let gen = word::reduce(graph, &[Syllable::new(u, 1)])?;
        let Some(target) = ball.find(&gen) else { continue };
        let Some(e0) = ball.edge_between(0, target) else { continue };
        for &e in &hyps.class_of(e0).edges {
            if !ball.is_safe_edge(e) {
                continue;
            }
            let Edge { from, to, label } = ball.edges[e];
            let (x, y) = (&ball.vertices[from], &ball.vertices[to]);
            let step = word::multiply(graph, &word::inverse(graph, x), y);
            let in_vertex_group = label == u && step.syllables().iter().all(|s| s.vertex == u);
            report.record(in_vertex_group && word::support_set(x).is_subset(star), || {
                format!(
                    "edge {{{}, {}}} in the {} hyperplane",
                    word::format_word(graph, x.syllables()),
                    word::format_word(graph, y.syllables()),
                    graph.names()[u]
                )
            });
        }
    }
    Ok(report)
}

fn is_racg(graph: &LabeledGraph) -> bool {
    graph.vertices().iter().all(|v| graph.order(v).is_involution())
}

/// Every triple of vertices within `⌊2r/3⌋` of the identity has exactly one
/// median in the ball. Medians of such triples lie within `r`, so the count
/// is exact. Right-angled Coxeter groups only.
pub fn check_unique_medians(ball: &CayleyBall) -> Result<PropertyReport> {
    let graph = &ball.graph;
    if !is_racg(graph) {
        return Err(Error::Invalid("median check needs all vertex orders equal to 2".into()));
    }
    let inner = 2 * ball.radius / 3;
    let interior: Vec<usize> = (0..ball.len()).filter(|&v| ball.distance[v] <= inner).collect();
    let inverses: Vec<ReducedWord> = ball.vertices.iter().map(|w| word::inverse(graph, w)).collect();
    let dist = |a: usize, b: usize| word::multiply(graph, &inverses[a], &ball.vertices[b]).len();
    // Distances from each interior vertex to every ball vertex.
    let table: HashMap<usize, Vec<usize>> =
        interior.iter().map(|&a| (a, (0..ball.len()).map(|b| dist(a, b)).collect())).collect();
    let mut report = PropertyReport::default();
    for (i, &x) in interior.iter().enumerate() {
        for (j, &y) in interior.iter().enumerate().skip(i) {
            for &z in &interior[j..] {
                let (dx, dy, dz) = (&table[&x], &table[&y], &table[&z]);
                let medians = (0..ball.len())
                    .filter(|&m| dx[m] + dy[m] == dx[y] && dy[m] + dz[m] == dy[z] && dx[m] + dz[m] == dx[z])
                    .count();
                report.record(medians == 1, || {
                    let f = |v: usize| word::format_word(graph, ball.vertices[v].syllables());
                    format!("{medians} medians for ({}, {}, {})", f(x), f(y), f(z))
                });
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fb(n: usize) -> LabeledGraph {
        LabeledGraph::flat_braid(n).unwrap()
    }

    fn labels(hyps: &Hyperplanes, a: usize, b: usize) -> bool {
        hyps.crossings.iter().any(|&(x, y)| {
            let (u, v) = (hyps.classes[x].label, hyps.classes[y].label);
            (u, v) == (a, b) || (u, v) == (b, a)
        })
    }

    /// Reduced words of length at most `r` by direct enumeration of letter sequences.
    fn brute_ball_size(graph: &LabeledGraph, r: usize) -> usize {
        let gens = vertex_group_elements(graph);
        let mut seen = HashSet::from([ReducedWord::identity()]);
        let mut layer: Vec<Vec<Syllable>> = vec![vec![]];
        for _ in 0..r {
            let mut next = Vec::new();
            for w in &layer {
                for s in &gens {
                    let mut v = w.clone();
                    v.push(*s);
                    seen.insert(word::reduce(graph, &v).unwrap());
                    next.push(v);
                }
            }
            layer = next;
        }
        seen.len()
    }

    #[test]
    fn ball_examples() {
        let d = cayley_ball(&fb(3), 3).unwrap();
        assert_eq!((d.len(), d.edges.len()), (7, 6));
        assert_eq!(cayley_ball(&fb(4), 2).unwrap().len(), 9);
        let z = LabeledGraph::new(vec!["a".into()], vec![VertexOrder::Infinite], []).unwrap();
        let ball = cayley_ball(&z, 2).unwrap();
        assert_eq!(ball.len(), 5);
        assert!(cayley_ball(&fb(4), 9).is_err());
        for (g, r) in [(fb(4), 3), (fb(5), 3), (LabeledGraph::path_graph(2, VertexOrder::Infinite).unwrap(), 2)] {
            assert_eq!(cayley_ball(&g, r).unwrap().len(), brute_ball_size(&g, r));
        }
    }

    #[test]
    fn dihedral_hyperplanes_are_single_edges() {
        let ball = cayley_ball(&fb(3), 4).unwrap();
        let hyps = hyperplanes(&ball).unwrap();
        assert_eq!(hyps.classes.len(), ball.edges.len());
        assert!(hyps.crossings.is_empty());
        assert!(hyperplanes(&cayley_ball(&fb(3), 1).unwrap()).is_err());
    }

    #[test]
    fn fb4_labels() {
        let ball = cayley_ball(&fb(4), 4).unwrap();
        let hyps = hyperplanes(&ball).unwrap();
        assert!(labels(&hyps, 0, 2));
        assert!(!labels(&hyps, 0, 1));
        assert!(check_label_adjacency(&ball, &hyps).ok());
        assert!(check_hyperplane_description(&ball, &hyps).unwrap().ok());
    }

    #[test]
    fn fb7_sigma3_sigma4_never_cross() {
        let ball = cayley_ball(&fb(7), 4).unwrap();
        let hyps = hyperplanes(&ball).unwrap();
        let report = check_noncrossing(&ball, &hyps, &[2, 3]);
        assert!(report.ok() && report.checked > 0, "{:?}", report.violations);
        assert!(check_noncrossing(&ball, &hyps, &[0, 2]).violations.len() > 0);
    }

    #[test]
    fn medians_are_unique_in_fb4() {
        let ball = cayley_ball(&fb(4), 3).unwrap();
        let report = check_unique_medians(&ball).unwrap();
        assert!(report.ok(), "{:?}", report.violations);
        assert!(report.checked > 0);
    }

    #[test]
    fn medians_are_not_unique_with_triangles() {
        // Z/3 has a triangle Cayley graph, where three distinct points have no median.
        let g = LabeledGraph::new(vec!["a".into()], vec![VertexOrder::Finite(3)], []).unwrap();
        assert!(check_unique_medians(&cayley_ball(&g, 3).unwrap()).is_err());
    }

    #[test]
    fn raag_hyperplanes() {
        let g = LabeledGraph::path_graph(2, VertexOrder::Infinite).unwrap();
        let ball = cayley_ball(&g, 3).unwrap();
        let hyps = hyperplanes(&ball).unwrap();
        assert!(hyps.mixed_labels.is_empty());
        assert!(check_label_adjacency(&ball, &hyps).ok());
        assert!(check_hyperplane_description(&ball, &hyps).unwrap().ok());
        assert!(labels(&hyps, 0, 1) && !labels(&hyps, 0, 2));
    }

    #[test]
    fn finite_cliques_form_one_class() {
        // Z/3 × Z/3: each clique is a triangle and the classes are the three rows and three columns.
        let g = LabeledGraph::new(vec!["u".into(), "v".into()], vec![VertexOrder::Finite(3); 2], [(0, 1)]).unwrap();
        let ball = cayley_ball(&g, 2).unwrap();
        assert_eq!(ball.len(), 9);
        let hyps = hyperplanes(&ball).unwrap();
        assert_eq!(hyps.classes.len(), 2);
        assert!(check_label_adjacency(&ball, &hyps).ok());
        assert!(check_hyperplane_description(&ball, &hyps).unwrap().ok());
    }

    #[test]
    fn dot_export() {
        let dot = cayley_ball(&fb(3), 1).unwrap().to_dot();
        assert!(dot.starts_with("graph ball {"));
        assert_eq!(dot.matches(" -- ").count(), 2);
    }
}
