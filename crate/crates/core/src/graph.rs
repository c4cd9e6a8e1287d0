//! Finite simplicial graphs whose vertices carry the order of a cyclic group.
//!
//! A [`LabeledGraph`] defines a graph product of cyclic groups: one generator
//! per vertex, of the given order, with two generators commuting exactly when
//! their vertices are adjacent. Vertices are identified by their position in
//! the vertex list, and that position is the total order used by every
//! canonical form downstream.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest number of vertices a [`LabeledGraph`] can hold.
pub const MAX_VERTICES: usize = 64;

/// Largest graph accepted by [`LabeledGraph::maximal_joins`].
pub const MAX_JOIN_SEARCH_VERTICES: usize = 16;

/// Order of the cyclic group sitting at a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexOrder {
    Finite(u32),
    Infinite,
}

impl VertexOrder {
    pub fn is_finite(self) -> bool {
        matches!(self, VertexOrder::Finite(_))
    }

    pub fn is_involution(self) -> bool {
        self == VertexOrder::Finite(2)
    }

    /// Normalizes an exponent. Returns `None` when the power is trivial.
    pub fn normalize(self, exponent: i64) -> Option<i64> {
        match self {
            VertexOrder::Infinite => (exponent != 0).then_some(exponent),
            VertexOrder::Finite(m) => {
                let e = exponent.rem_euclid(m as i64);
                (e != 0).then_some(e)
            }
        }
    }
}

impl fmt::Display for VertexOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexOrder::Finite(m) => write!(f, "{m}"),
            VertexOrder::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum OrderRepr {
    Int(u32),
    Text(String),
}

impl Serialize for VertexOrder {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            VertexOrder::Finite(m) => OrderRepr::Int(*m),
            VertexOrder::Infinite => OrderRepr::Text("inf".into()),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for VertexOrder {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        match OrderRepr::deserialize(deserializer)? {
            OrderRepr::Int(m) if m >= 2 => Ok(VertexOrder::Finite(m)),
            OrderRepr::Int(m) => Err(serde::de::Error::custom(format!(
                "vertex order {m} is not allowed; vertex groups must be non-trivial"
            ))),
            OrderRepr::Text(s) if s == "inf" => Ok(VertexOrder::Infinite),
            OrderRepr::Text(s) => Err(serde::de::Error::custom(format!("bad order `{s}`"))),
        }
    }
}

/// A set of vertices of a [`LabeledGraph`], stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// All vertices `0..n`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << v);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = VertexSet::EMPTY;
        for v in iter {
            set.insert(v);
        }
        set
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// The factors of a join decomposition, ordered by their least vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinDecomposition {
    pub factors: Vec<VertexSet>,
}

/// A finite simplicial graph with a cyclic group order at each vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    names: Vec<String>,
    orders: Vec<VertexOrder>,
    neighbors: Vec<VertexSet>,
}

impl LabeledGraph {
    /// Builds a graph from vertex names, orders and an edge list of vertex
    /// positions.
    pub fn new(
        names: Vec<String>,
        orders: Vec<VertexOrder>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let n = names.len();
        if n > MAX_VERTICES {
            return Err(Error::Capacity {
                what: "vertex count",
                limit: MAX_VERTICES,
            });
        }
        if orders.len() != n {
            return Err(Error::InvalidGraph("one order per vertex is required".into()));
        }
        if let Some(VertexOrder::Finite(m)) = orders.iter().find(|o| matches!(o, VertexOrder::Finite(m) if *m < 2)) {
            return Err(Error::InvalidGraph(format!("vertex order {m} < 2")));
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(Error::InvalidGraph(format!("duplicate vertex `{name}`")));
            }
        }
        let mut neighbors = vec![VertexSet::EMPTY; n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::UnknownVertex(format!("#{}", u.max(v))));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at `{}`", names[u])));
            }
            neighbors[u].insert(v);
            neighbors[v].insert(u);
        }
        Ok(LabeledGraph {
            names,
            orders,
            neighbors,
        })
    }

    /// Path with `edges` edges and `edges + 1` vertices named `v0, v1, …`.
    pub fn path_graph(edges: usize, order: VertexOrder) -> Result<Self> {
        let names = (0..=edges).map(|i| format!("v{i}")).collect();
        Self::new(names, vec![order; edges + 1], (0..edges).map(|i| (i, i + 1)))
    }

    /// The flat braid group on `strands` strands as the right-angled Coxeter
    /// group of the opposite path: generators `sigma1 … sigma{n-1}`, with
    /// `sigma_i` and `sigma_j` commuting iff `|i - j| >= 2`.
    pub fn flat_braid(strands: usize) -> Result<Self> {
        if strands < 2 {
            return Err(Error::Invalid(format!(
                "flat braid groups need at least 2 strands, got {strands}"
            )));
        }
        let mut g = Self::path_graph(strands - 2, VertexOrder::Finite(2))?.opposite();
        g.names = (1..strands).map(|i| format!("sigma{i}")).collect();
        Ok(g)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.len())
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self, v: usize) -> VertexOrder {
        self.orders[v]
    }

    pub fn orders(&self) -> &[VertexOrder] {
        &self.orders
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn vertex_set<S: AsRef<str>>(&self, names: &[S]) -> Result<VertexSet> {
        names.iter().map(|n| self.vertex(n.as_ref())).collect()
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.len() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(format!("#{v}")))
        }
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.neighbors[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|u| self.neighbors[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    /// Same vertices, with every non-diagonal adjacency flipped.
    pub fn opposite(&self) -> Self {
        let all = self.vertices();
        let neighbors = (0..self.len())
            .map(|v| all.difference(self.neighbors[v]).difference(VertexSet::singleton(v)))
            .collect();
        LabeledGraph {
            names: self.names.clone(),
            orders: self.orders.clone(),
            neighbors,
        }
    }

    pub fn link(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(self.neighbors[v])
    }

    pub fn star(&self, v: usize) -> Result<VertexSet> {
        Ok(self.link(v)?.union(VertexSet::singleton(v)))
    }

    /// Vertices outside `set` adjacent to every vertex of `set`. The link of
    /// the empty set is the whole graph.
    pub fn link_of(&self, set: VertexSet) -> VertexSet {
        set.iter()
            .fold(self.vertices(), |acc, v| acc.intersection(self.neighbors[v]))
            .difference(set)
    }

    pub fn star_of(&self, set: VertexSet) -> VertexSet {
        self.link_of(set).union(set)
    }

    /// Whether `set` spans a complete subgraph.
    pub fn is_clique(&self, set: VertexSet) -> bool {
        set.iter()
            .all(|v| set.difference(VertexSet::singleton(v)).is_subset(self.neighbors[v]))
    }

    /// Whether every vertex of `a` is adjacent to every vertex of `b`.
    pub fn fully_adjacent(&self, a: VertexSet, b: VertexSet) -> bool {
        a.iter().all(|v| b.is_subset(self.neighbors[v]))
    }

    /// Whether `set` generates a finite subgroup: a clique of finite-order
    /// vertices.
    pub fn spans_finite(&self, set: VertexSet) -> bool {
        set.iter().all(|v| self.orders[v].is_finite()) && self.is_clique(set)
    }

    /// Connected components of the complement of the subgraph induced on
    /// `set`, ordered by least vertex. These are the join factors of `set`.
    pub fn join_factors(&self, set: VertexSet) -> Vec<VertexSet> {
        let mut remaining = set;
        let mut factors = Vec::new();
        while let Some(start) = remaining.first() {
            let mut component = VertexSet::singleton(start);
            let mut frontier = component;
            while let Some(v) = frontier.first() {
                frontier.remove(v);
                let fresh = set
                    .difference(self.neighbors[v])
                    .difference(VertexSet::singleton(v))
                    .difference(component);
                component = component.union(fresh);
                frontier = frontier.union(fresh);
            }
            remaining = remaining.difference(component);
            factors.push(component);
        }
        factors
    }

    /// Whether the subgraph on `set` is join-irreducible (its complement is
    /// connected). The empty set is not irreducible.
    pub fn is_join_irreducible(&self, set: VertexSet) -> bool {
        !set.is_empty() && self.join_factors(set).len() == 1
    }

    /// The unique maximal join decomposition of the whole graph.
    pub fn join_decomposition(&self) -> Result<JoinDecomposition> {
        if self.is_empty() {
            return Err(Error::EmptyGraph);
        }
        Ok(JoinDecomposition {
            factors: self.join_factors(self.vertices()),
        })
    }

    /// Whether `set` splits as a join of two subgraphs that both generate
    /// infinite groups, so that its parabolic subgroup is a product of two
    /// infinite groups.
    pub fn is_infinite_join(&self, set: VertexSet) -> bool {
        self.join_factors(set)
            .into_iter()
            .filter(|&f| !self.spans_finite(f))
            .count()
            >= 2
    }

    /// Maximal vertex sets inducing a join of two infinite factors, sorted by
    /// their vertex lists. These are the supports of the maximal product
    /// subgroups with infinite factors.
    pub fn maximal_joins(&self) -> Result<Vec<VertexSet>> {
        let n = self.len();
        if n > MAX_JOIN_SEARCH_VERTICES {
            return Err(Error::Capacity {
                what: "vertex count for join enumeration",
                limit: MAX_JOIN_SEARCH_VERTICES,
            });
        }
        let total = 1usize << n;
        let joins: Vec<bool> = (0..total)
            .map(|bits| self.is_infinite_join(VertexSet::from_bits(bits as u64)))
            .collect();
        let full = total as u64 - 1;
        let mut maximal = Vec::new();
        for bits in 0..total as u64 {
            if !joins[bits as usize] {
                continue;
            }
            // Walk the non-empty submasks of the complement to visit every strict superset.
            let rest = full & !bits;
            let mut sub = rest;
            let mut dominated = false;
            while sub != 0 {
                if joins[(bits | sub) as usize] {
                    dominated = true;
                    break;
                }
                sub = (sub - 1) & rest;
            }
            if !dominated {
                maximal.push(VertexSet::from_bits(bits));
            }
        }
        maximal.sort_by_key(|s| s.to_vec());
        Ok(maximal)
    }

    /// Renders a vertex set with vertex names, e.g. `{sigma1, sigma2}`.
    pub fn format_set(&self, set: VertexSet) -> String {
        let names: Vec<&str> = set.iter().map(|v| self.name(v)).collect();
        format!("{{{}}}", names.join(", "))
    }

    pub fn set_names(&self, set: VertexSet) -> Vec<String> {
        set.iter().map(|v| self.names[v].clone()).collect()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: GraphSpec = serde_json::from_str(text)?;
        spec.try_into()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GraphSpec::from(self)).expect("graph serializes")
    }
}

/// Wire format: `{"vertices":[{"name":…,"order":2|"inf"}],"edges":[[u,v]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphSpec {
    pub vertices: Vec<VertexSpec>,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VertexSpec {
    pub name: String,
    pub order: VertexOrder,
}

impl TryFrom<GraphSpec> for LabeledGraph {
    type Error = Error;

    fn try_from(spec: GraphSpec) -> Result<Self> {
        let names: Vec<String> = spec.vertices.iter().map(|v| v.name.clone()).collect();
        let orders = spec.vertices.iter().map(|v| v.order).collect();
        let index = |name: &str| {
            names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::UnknownVertex(name.to_string()))
        };
        let edges = spec
            .edges
            .iter()
            .map(|(u, v)| Ok((index(u)?, index(v)?)))
            .collect::<Result<Vec<_>>>()?;
        LabeledGraph::new(names, orders, edges)
    }
}

impl From<&LabeledGraph> for GraphSpec {
    fn from(g: &LabeledGraph) -> Self {
        GraphSpec {
            vertices: (0..g.len())
                .map(|v| VertexSpec {
                    name: g.names[v].clone(),
                    order: g.orders[v],
                })
                .collect(),
            edges: g
                .edges()
                .into_iter()
                .map(|(u, v)| (g.names[u].clone(), g.names[v].clone()))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fb(n: usize) -> LabeledGraph {
        LabeledGraph::flat_braid(n).unwrap()
    }

    fn set(g: &LabeledGraph, names: &[&str]) -> VertexSet {
        g.vertex_set(names).unwrap()
    }

    #[test]
    fn opposite_of_single_edge_has_no_edges() {
        let g = LabeledGraph::path_graph(1, VertexOrder::Infinite).unwrap();
        let opp = g.opposite();
        assert_eq!(opp.len(), 2);
        assert_eq!(opp.edge_count(), 0);
    }

    #[test]
    fn flat_braid_graph_commutes_far_generators() {
        let g = fb(7);
        assert_eq!(g.len(), 6);
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(g.adjacent(i, j), i.abs_diff(j) >= 2, "{i} {j}");
            }
        }
        assert_eq!(g.edge_count(), 10);
        assert_eq!(g.link(0).unwrap(), set(&g, &["sigma3", "sigma4", "sigma5", "sigma6"]));
        assert_eq!(g.star(0).unwrap(), g.link(0).unwrap().union(VertexSet::singleton(0)));
        assert!(matches!(g.link(9), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn join_decomposition_examples() {
        let k3 = LabeledGraph::new(
            vec!["x".into(), "y".into(), "z".into()],
            vec![VertexOrder::Infinite; 3],
            [(0, 1), (1, 2), (0, 2)],
        )
        .unwrap();
        assert_eq!(k3.join_decomposition().unwrap().factors.len(), 3);

        let opp_p3 = LabeledGraph::path_graph(3, VertexOrder::Finite(2)).unwrap().opposite();
        assert_eq!(opp_p3.join_decomposition().unwrap().factors, vec![opp_p3.vertices()]);

        let two = LabeledGraph::path_graph(1, VertexOrder::Finite(2)).unwrap().opposite();
        assert_eq!(two.join_decomposition().unwrap().factors, vec![two.vertices()]);

        let empty = LabeledGraph::new(vec![], vec![], []).unwrap();
        assert_eq!(empty.join_decomposition(), Err(Error::EmptyGraph));
    }

    #[test]
    fn maximal_joins_of_fb7() {
        let g = fb(7);
        let joins = g.maximal_joins().unwrap();
        assert_eq!(
            joins,
            vec![
                set(&g, &["sigma1", "sigma2", "sigma3", "sigma5", "sigma6"]),
                set(&g, &["sigma1", "sigma2", "sigma4", "sigma5", "sigma6"]),
            ]
        );
    }

    #[test]
    fn maximal_joins_of_four_cycle_is_everything() {
        for order in [VertexOrder::Finite(2), VertexOrder::Infinite] {
            let c4 = LabeledGraph::new(
                (0..4).map(|i| format!("c{i}")).collect(),
                vec![order; 4],
                [(0, 1), (1, 2), (2, 3), (3, 0)],
            )
            .unwrap();
            assert_eq!(c4.maximal_joins().unwrap(), vec![c4.vertices()]);
        }
    }

    #[test]
    fn maximal_joins_capacity() {
        let g = LabeledGraph::path_graph(17, VertexOrder::Infinite).unwrap();
        assert!(matches!(g.maximal_joins(), Err(Error::Capacity { .. })));
    }

    #[test]
    fn json_round_trip_and_errors() {
        let text = r#"{"vertices":[{"name":"a","order":"inf"},{"name":"b","order":2}],"edges":[["a","b"]]}"#;
        let g = LabeledGraph::from_json(text).unwrap();
        assert_eq!(g.order(0), VertexOrder::Infinite);
        assert_eq!(g.order(1), VertexOrder::Finite(2));
        assert!(g.adjacent(0, 1));
        let back = serde_json::to_string(&g.to_json()).unwrap();
        assert_eq!(LabeledGraph::from_json(&back).unwrap(), g);

        let bad_edge = r#"{"vertices":[{"name":"a","order":2}],"edges":[["a","z"]]}"#;
        assert_eq!(LabeledGraph::from_json(bad_edge), Err(Error::UnknownVertex("z".into())));
        let trivial = r#"{"vertices":[{"name":"a","order":1}],"edges":[]}"#;
        assert!(LabeledGraph::from_json(trivial).is_err());
        let looped = r#"{"vertices":[{"name":"a","order":2}],"edges":[["a","a"]]}"#;
        assert!(LabeledGraph::from_json(looped).is_err());
    }

    fn arb_graph(max: usize) -> impl Strategy<Value = LabeledGraph> {
        (1..=max).prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (
                proptest::collection::vec(any::<bool>(), pairs),
                proptest::collection::vec(prop_oneof![Just(VertexOrder::Finite(2)), Just(VertexOrder::Finite(3)), Just(VertexOrder::Infinite)], n),
            )
                .prop_map(move |(mask, orders)| {
                    let mut edges = Vec::new();
                    let mut k = 0;
                    for u in 0..n {
                        for v in u + 1..n {
                            if mask[k] {
                                edges.push((u, v));
                            }
                            k += 1;
                        }
                    }
                    LabeledGraph::new((0..n).map(|i| format!("x{i}")).collect(), orders, edges).unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn opposite_is_an_involution(g in arb_graph(9)) {
            prop_assert_eq!(g.opposite().opposite(), g);
        }

        #[test]
        fn join_factors_reassemble(g in arb_graph(9)) {
            let factors = g.join_decomposition().unwrap().factors;
            let union = factors.iter().fold(VertexSet::EMPTY, |a, &f| a.union(f));
            prop_assert_eq!(union, g.vertices());
            for (i, &a) in factors.iter().enumerate() {
                prop_assert!(g.is_join_irreducible(a));
                for &b in &factors[i + 1..] {
                    prop_assert!(a.intersection(b).is_empty());
                    prop_assert!(g.fully_adjacent(a, b));
                }
            }
        }

        #[test]
        fn maximal_joins_match_exhaustive_search(g in arb_graph(8)) {
            // Independent oracle: a set is an infinite join when some bipartition
            // into two non-empty, fully adjacent halves has two infinite sides.
            let n = g.len();
            let infinite = |s: u64| {
                let vs: Vec<usize> = (0..n).filter(|v| s >> v & 1 == 1).collect();
                vs.iter().any(|&v| !g.order(v).is_finite())
                    || vs.iter().any(|&u| vs.iter().any(|&v| u != v && !g.adjacent(u, v)))
            };
            let is_join = |s: u64| {
                let mut sub = s;
                while sub != 0 {
                    let other = s & !sub;
                    if other != 0 && infinite(sub) && infinite(other) {
                        let ok = (0..n).filter(|u| sub >> u & 1 == 1).all(|u| {
                            (0..n).filter(|v| other >> v & 1 == 1).all(|v| g.adjacent(u, v))
                        });
                        if ok {
                            return true;
                        }
                    }
                    sub = (sub - 1) & s;
                }
                false
            };
            let joins: Vec<u64> = (0..1u64 << n).filter(|&s| is_join(s)).collect();
            let mut expected: Vec<VertexSet> = joins
                .iter()
                .filter(|&&s| !joins.iter().any(|&t| t != s && s & !t == 0))
                .map(|&s| VertexSet::from_bits(s))
                .collect();
            expected.sort_by_key(|s| s.to_vec());
            let got = g.maximal_joins().unwrap();
            for s in &got {
                prop_assert!(g.join_factors(*s).len() >= 2);
            }
            prop_assert_eq!(got, expected);
        }
    }
}
