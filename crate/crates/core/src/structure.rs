//! Centralizers, virtual centres, thick elements and parabolic subgroups.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, VertexOrder, VertexSet, MAX_JOIN_SEARCH_VERTICES};
use crate::word::{
    self, coset_min_rep, cyclic_reduce, format_word, inverse, multiply, power, primitive_root, reduce,
    support_set, ReducedWord, Syllable,
};

/// `C(g) = conjugator · (∏ ⟨u⟩ × ∏ ⟨h⟩ × ⟨link⟩) · conjugator⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralizerDescription {
    /// Single-vertex join factors of the support; each contributes its whole vertex group.
    pub singleton_factors: Vec<usize>,
    /// Primitive roots of the components on irreducible factors with at least two vertices.
    pub cyclic_factors: Vec<ReducedWord>,
    pub link_factor: VertexSet,
    pub conjugator: ReducedWord,
}

impl CentralizerDescription {
    /// Whether `h` lies in the described subgroup.
    pub fn contains(&self, graph: &LabeledGraph, h: &[Syllable]) -> Result<bool> {
        let h = reduce(graph, h)?;
        let x = multiply(graph, &multiply(graph, &inverse(graph, &self.conjugator), &h), &self.conjugator);
        let singletons: VertexSet = self.singleton_factors.iter().copied().collect();
        let free = singletons.union(self.link_factor);
        let mut rest: Vec<Syllable> = Vec::new();
        for s in x.syllables() {
            if !free.contains(s.vertex) {
                rest.push(*s);
            }
        }
        for root in &self.cyclic_factors {
            let factor = support_set(root);
            let part: Vec<Syllable> = rest.iter().filter(|s| factor.contains(s.vertex)).copied().collect();
            rest.retain(|s| !factor.contains(s.vertex));
            let part = reduce(graph, &part)?;
            let bound = (part.len() / root.len().max(1)) as i64 + 1;
            if !(-bound..=bound).any(|k| power(graph, root, k) == part) {
                return Ok(false);
            }
        }
        Ok(rest.is_empty())
    }

    pub fn to_json(&self, graph: &LabeledGraph) -> Value {
        json!({
            "singleton_factors": self.singleton_factors.iter().map(|&v| graph.name(v)).collect::<Vec<_>>(),
            "cyclic_factors": self.cyclic_factors.iter().map(|r| word::word_to_json(graph, r.syllables())).collect::<Vec<_>>(),
            "link_factor": graph.set_names(self.link_factor),
            "conjugator": word::word_to_json(graph, self.conjugator.syllables()),
        })
    }

    pub fn display(&self, graph: &LabeledGraph) -> String {
        let mut parts: Vec<String> = self
            .singleton_factors
            .iter()
            .map(|&v| format!("<{}>", graph.name(v)))
            .collect();
        parts.extend(self.cyclic_factors.iter().map(|r| format!("<{}>", format_word(graph, r.syllables()))));
        if !self.link_factor.is_empty() {
            parts.push(format!("<{}>", graph.set_names(self.link_factor).join(", ")));
        }
        let body = if parts.is_empty() { "1".to_string() } else { parts.join(" x ") };
        if self.conjugator.is_empty() {
            body
        } else {
            format!("{c} ({body}) {c}^-1", c = format_word(graph, self.conjugator.syllables()))
        }
    }
}

pub fn centralizer(graph: &LabeledGraph, g: &[Syllable]) -> Result<CentralizerDescription> {
    let (conjugator, core) = cyclic_reduce(graph, g)?;
    if core.is_empty() {
        return Err(Error::TrivialElement);
    }
    let supp = support_set(&core);
    let mut singleton_factors = Vec::new();
    let mut cyclic_factors = Vec::new();
    for factor in graph.join_factors(supp) {
        if factor.len() == 1 {
            singleton_factors.push(factor.first().unwrap());
        } else {
            let part: Vec<Syllable> = core.syllables().iter().filter(|s| factor.contains(s.vertex)).copied().collect();
            cyclic_factors.push(primitive_root(graph, &part)?.0);
        }
    }
    Ok(CentralizerDescription { singleton_factors, cyclic_factors, link_factor: graph.link_of(supp), conjugator })
}

/// Every join factor of `Λ` is a single vertex or two non-adjacent involutions.
pub fn is_virtually_abelian_parabolic(graph: &LabeledGraph, lambda: VertexSet) -> bool {
    graph.join_factors(lambda).into_iter().all(|f| is_dihedral_pair(graph, f) || f.len() == 1)
}

fn is_dihedral_pair(graph: &LabeledGraph, f: VertexSet) -> bool {
    f.len() == 2 && f.iter().all(|v| graph.order(v).is_involution())
}

/// Whether the whole graph product is virtually cyclic.
pub fn is_virtually_cyclic(graph: &LabeledGraph) -> bool {
    let mut infinite_factors = 0;
    for f in graph.join_factors(VertexSet::full(graph.len())) {
        if f.len() == 1 && graph.order(f.first().unwrap()).is_finite() {
            continue;
        }
        if (f.len() == 1) || is_dihedral_pair(graph, f) {
            infinite_factors += 1;
        } else {
            return false;
        }
    }
    infinite_factors <= 1
}

/// `⟨Λ⟩` has finite index iff the rest of the graph is a clique of finite
/// vertex groups joined to `Λ`.
pub fn parabolic_has_finite_index(graph: &LabeledGraph, lambda: VertexSet) -> bool {
    let rest = VertexSet::full(graph.len()).difference(lambda);
    graph.spans_finite(rest) && graph.fully_adjacent(rest, lambda)
}

/// Whether `a⟨Φ⟩a⁻¹ ≤ ⟨Ψ⟩`.
pub fn parabolic_conjugate_included(graph: &LabeledGraph, a: &[Syllable], phi: VertexSet, psi: VertexSet) -> Result<bool> {
    if !phi.is_subset(psi) {
        return Ok(false);
    }
    let star = graph.star_of(phi);
    word::in_parabolic_product(graph, a, |v| psi.contains(v), |v| star.contains(v))
}

/// Where a virtual-centre generator comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VirtualCentreFactor {
    VertexGroup(usize),
    DihedralPair(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirtualCentreDescription {
    pub generators: Vec<ReducedWord>,
    pub structure: Vec<VirtualCentreFactor>,
}

impl VirtualCentreDescription {
    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn to_json(&self, graph: &LabeledGraph) -> Value {
        let structure: Vec<Value> = self
            .structure
            .iter()
            .map(|f| match *f {
                VirtualCentreFactor::VertexGroup(u) => json!({"vertex_group": graph.name(u)}),
                VirtualCentreFactor::DihedralPair(a, b) => json!({"dihedral_pair": [graph.name(a), graph.name(b)]}),
            })
            .collect();
        json!({
            "generators": self.generators.iter().map(|g| word::word_to_json(graph, g.syllables())).collect::<Vec<_>>(),
            "structure": structure,
        })
    }
}

pub fn virtual_centre(graph: &LabeledGraph) -> Result<VirtualCentreDescription> {
    let mut generators = Vec::new();
    let mut structure = Vec::new();
    for f in graph.join_decomposition()?.factors {
        if f.len() == 1 {
            let u = f.first().unwrap();
            generators.push(reduce(graph, &[Syllable::new(u, 1)])?);
            structure.push(VirtualCentreFactor::VertexGroup(u));
        } else if is_dihedral_pair(graph, f) {
            let v = f.to_vec();
            generators.push(reduce(graph, &[Syllable::new(v[0], 1), Syllable::new(v[1], 1)])?);
            structure.push(VirtualCentreFactor::DihedralPair(v[0], v[1]));
        }
    }
    Ok(VirtualCentreDescription { generators, structure })
}

/// An element of infinite order is thick when its centralizer is not
/// virtually abelian.
pub fn is_thick(graph: &LabeledGraph, g: &[Syllable]) -> Result<bool> {
    let (_, core) = cyclic_reduce(graph, g)?;
    let ess = support_set(&core);
    if graph.spans_finite(ess) {
        return Err(Error::TorsionElement);
    }
    Ok(!is_virtually_abelian_parabolic(graph, graph.link_of(ess)))
}

/// Supports of cyclically reduced thick elements, sorted.
pub fn thick_supports(graph: &LabeledGraph) -> Result<Vec<VertexSet>> {
    if graph.len() > MAX_JOIN_SEARCH_VERTICES {
        return Err(Error::Capacity { what: "vertices for subset enumeration", limit: MAX_JOIN_SEARCH_VERTICES });
    }
    let mut out: Vec<VertexSet> = (1u64..1 << graph.len())
        .map(VertexSet::from_bits)
        .filter(|&s| !graph.spans_finite(s) && !is_virtually_abelian_parabolic(graph, graph.link_of(s)))
        .collect();
    out.sort_by_key(|s| s.to_vec());
    Ok(out)
}

/// Every vertex of the tree lies in the star of a vertex of degree at least
/// two whose link is not virtually abelian.
pub fn raag_tree_thick_check(tree: &LabeledGraph) -> Result<bool> {
    let n = tree.len();
    if n < 3 {
        return Err(Error::NotATree(format!("{n} vertices, need at least 3")));
    }
    if tree.orders().iter().any(|o| *o != VertexOrder::Infinite) {
        return Err(Error::Invalid("tree check needs infinite vertex groups".into()));
    }
    if tree.edge_count() != n - 1 || !is_connected(tree) {
        return Err(Error::NotATree(format!("{n} vertices and {} edges, or disconnected", tree.edge_count())));
    }
    let centres: Vec<usize> = tree
        .vertices()
        .iter()
        .filter(|&u| tree.degree(u) >= 2 && !is_virtually_abelian_parabolic(tree, tree.neighbors(u)))
        .collect();
    Ok(tree
        .vertices()
        .iter()
        .all(|v| centres.iter().any(|&u| u == v || tree.adjacent(u, v))))
}

fn is_connected(graph: &LabeledGraph) -> bool {
    let mut seen = VertexSet::singleton(0);
    let mut stack = vec![0];
    while let Some(v) = stack.pop() {
        for w in graph.neighbors(v).difference(seen).iter() {
            seen.insert(w);
            stack.push(w);
        }
    }
    seen.len() == graph.len()
}

/// Checks `a⟨Φ⟩a⁻¹ = ⟨Φ⟩` on generators: each `a u a⁻¹` reduces into `⟨Φ⟩`
/// and so does each `a⁻¹ u a`.
pub fn normalizes_parabolic(graph: &LabeledGraph, a: &[Syllable], phi: VertexSet) -> Result<bool> {
    let a = reduce(graph, a)?;
    let a_inv = inverse(graph, &a);
    for u in phi.iter() {
        let gen = reduce(graph, &[Syllable::new(u, 1)])?;
        for (x, y) in [(&a, &a_inv), (&a_inv, &a)] {
            let c = multiply(graph, &multiply(graph, x, &gen), y);
            if !coset_min_rep(graph, c.syllables(), |v| phi.contains(v))?.is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{commutes, parse_word};
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn fb(n: usize) -> LabeledGraph {
        LabeledGraph::flat_braid(n).unwrap()
    }

    fn w(g: &LabeledGraph, t: &str) -> Vec<Syllable> {
        parse_word(g, t).unwrap()
    }

    fn set(g: &LabeledGraph, names: &[&str]) -> VertexSet {
        g.vertex_set(names).unwrap()
    }

    fn line_raag(k: i64) -> LabeledGraph {
        let names: Vec<String> = (-k..=k).map(|i| format!("a{i}")).collect();
        let edges = (0..names.len() - 1).map(|i| (i, i + 1)).collect::<Vec<_>>();
        LabeledGraph::new(names.clone(), vec![VertexOrder::Infinite; names.len()], edges).unwrap()
    }

    fn raag(n: usize, edges: &[(usize, usize)]) -> LabeledGraph {
        LabeledGraph::new((0..n).map(|i| format!("v{i}")).collect(), vec![VertexOrder::Infinite; n], edges.to_vec()).unwrap()
    }

    #[test]
    fn centralizer_examples() {
        let g = fb(7);
        let c = centralizer(&g, &w(&g, "sigma1 sigma2 sigma1 sigma2 sigma1 sigma2")).unwrap();
        assert!(c.singleton_factors.is_empty());
        assert_eq!(c.cyclic_factors, vec![reduce(&g, &w(&g, "sigma1 sigma2")).unwrap()]);
        assert_eq!(c.link_factor, set(&g, &["sigma4", "sigma5", "sigma6"]));
        assert!(c.conjugator.is_empty());

        let c = centralizer(&g, &w(&g, "sigma5 sigma6 sigma5 sigma6")).unwrap();
        assert_eq!(c.cyclic_factors, vec![reduce(&g, &w(&g, "sigma5 sigma6")).unwrap()]);
        assert_eq!(c.link_factor, set(&g, &["sigma1", "sigma2", "sigma3"]));

        let line = line_raag(3);
        let c = centralizer(&line, &w(&line, "a0")).unwrap();
        assert_eq!(c.singleton_factors, vec![line.vertex("a0").unwrap()]);
        assert_eq!(c.link_factor, set(&line, &["a-1", "a1"]));

        assert_eq!(centralizer(&g, &w(&g, "sigma1 sigma1")), Err(Error::TrivialElement));
    }

    #[test]
    fn line_generator_centralizer_by_brute_force() {
        // Oracle: in the ball of radius 4 over {a-1, a0, a1} (a large enough
        // window of the line for words of this length), the elements commuting
        // with a0 are exactly those in the description.
        let line = line_raag(3);
        let a0 = reduce(&line, &w(&line, "a0")).unwrap();
        let desc = centralizer(&line, a0.syllables()).unwrap();
        let gens: Vec<usize> = ["a-2", "a-1", "a0", "a1", "a2"].iter().map(|n| line.vertex(n).unwrap()).collect();
        for h in ball(&line, &gens, 4) {
            assert_eq!(commutes(&line, &a0, &h), desc.contains(&line, h.syllables()).unwrap(), "{:?}", h);
        }
    }

    fn ball(g: &LabeledGraph, gens: &[usize], radius: usize) -> Vec<ReducedWord> {
        let mut seen = HashSet::from([ReducedWord::identity()]);
        let mut frontier = vec![ReducedWord::identity()];
        for _ in 0..radius {
            let mut next = Vec::new();
            for x in &frontier {
                for &v in gens {
                    for e in [1, -1] {
                        let y = multiply(g, x, &reduce(g, &[Syllable::new(v, e)]).unwrap());
                        if seen.insert(y.clone()) {
                            next.push(y);
                        }
                    }
                }
            }
            frontier = next;
        }
        seen.into_iter().collect()
    }

    #[test]
    fn fb5_centralizers_match_commutation() {
        // Oracle: commutation tested directly on every element of the ball of
        // radius 4, for every reduced element of at most 3 syllables.
        let g = fb(5);
        let gens: Vec<usize> = g.vertices().iter().collect();
        let ball4 = ball(&g, &gens, 4);
        let elements: Vec<ReducedWord> = ball(&g, &gens, 3).into_iter().filter(|x| !x.is_empty()).collect();
        for x in &elements {
            let desc = centralizer(&g, x.syllables()).unwrap();
            for h in &ball4 {
                assert_eq!(commutes(&g, x, h), desc.contains(&g, h.syllables()).unwrap(), "{x:?} {h:?}");
            }
        }
    }

    #[test]
    fn virtually_abelian_parabolics() {
        let g = fb(7);
        assert!(is_virtually_abelian_parabolic(&g, set(&g, &["sigma3", "sigma4"])));
        assert!(!is_virtually_abelian_parabolic(&g, set(&g, &["sigma4", "sigma5", "sigma6"])));
        assert!(is_virtually_abelian_parabolic(&g, VertexSet::EMPTY));
        let z = raag(1, &[]);
        assert!(is_virtually_abelian_parabolic(&z, VertexSet::full(1)));
    }

    #[test]
    fn growth_confirms_non_virtually_abelian() {
        // Oracle: ball sizes in ⟨σ4, σ5, σ6⟩ grow exponentially, while
        // ⟨σ3, σ4⟩ ≅ D∞ grows linearly.
        let g = fb(7);
        let sizes = |names: &[&str]| -> Vec<usize> {
            let gens: Vec<usize> = names.iter().map(|n| g.vertex(n).unwrap()).collect();
            (1..=8).map(|r| ball(&g, &gens, r).len()).collect()
        };
        let free = sizes(&["sigma4", "sigma5", "sigma6"]);
        assert!(free.windows(2).all(|p| p[1] as f64 >= 1.3 * p[0] as f64), "{free:?}");
        let dihedral = sizes(&["sigma3", "sigma4"]);
        assert_eq!(dihedral, (1..=8).map(|r| 2 * r + 1).collect::<Vec<_>>());
    }

    #[test]
    fn parabolic_inclusion_and_normalizers() {
        let pair = LabeledGraph::new(vec!["a".into(), "b".into()], vec![VertexOrder::Finite(2); 2], vec![]).unwrap();
        assert!(is_virtually_cyclic(&pair));
        let g = fb(7);
        assert!(!is_virtually_cyclic(&g));
        assert!(!parabolic_has_finite_index(&g, set(&g, &["sigma1", "sigma2", "sigma3", "sigma4", "sigma5"])));
        assert!(parabolic_has_finite_index(&g, VertexSet::full(6)));
        assert!(parabolic_conjugate_included(&g, &w(&g, "sigma4"), set(&g, &["sigma1"]), set(&g, &["sigma1", "sigma2"])).unwrap());
        assert!(!parabolic_conjugate_included(&g, &w(&g, "sigma2"), set(&g, &["sigma1"]), set(&g, &["sigma1", "sigma3"])).unwrap());
        // ℤ₂ × ℤ₃ × ℤ: virtually cyclic; ℤ × ℤ is not.
        let mixed = LabeledGraph::new(
            vec!["x".into(), "y".into(), "z".into()],
            vec![VertexOrder::Finite(2), VertexOrder::Finite(3), VertexOrder::Infinite],
            vec![(0, 1), (1, 2), (0, 2)],
        )
        .unwrap();
        assert!(is_virtually_cyclic(&mixed));
        assert!(!is_virtually_cyclic(&raag(2, &[(0, 1)])));
        assert!(parabolic_has_finite_index(&mixed, set(&mixed, &["z"])));
    }

    #[test]
    fn virtual_centres() {
        let pair = LabeledGraph::new(vec!["a".into(), "b".into()], vec![VertexOrder::Finite(2); 2], vec![]).unwrap();
        let vz = virtual_centre(&pair).unwrap();
        assert_eq!(vz.generators, vec![reduce(&pair, &w(&pair, "a b")).unwrap()]);
        assert_eq!(vz.structure, vec![VirtualCentreFactor::DihedralPair(0, 1)]);
        for k in 4..=12 {
            assert!(virtual_centre(&fb(k)).unwrap().is_trivial(), "FB{k}");
        }
        let z = raag(1, &[]);
        assert_eq!(virtual_centre(&z).unwrap().generators.len(), 1);
        // FB3 is D∞, whose virtual centre is generated by σ1σ2.
        assert_eq!(virtual_centre(&fb(3)).unwrap().generators.len(), 1);
    }

    #[test]
    fn thickness_examples() {
        let g = fb(7);
        assert!(is_thick(&g, &w(&g, "sigma1 sigma2 sigma1 sigma2")).unwrap());
        assert!(!is_thick(&g, &w(&g, "sigma3 sigma4 sigma3 sigma4")).unwrap());
        assert_eq!(is_thick(&g, &w(&g, "sigma1")), Err(Error::TorsionElement));
        assert_eq!(is_thick(&g, &w(&g, "sigma1 sigma3")), Err(Error::TorsionElement));
        assert_eq!(
            thick_supports(&g).unwrap(),
            vec![set(&g, &["sigma1", "sigma2"]), set(&g, &["sigma5", "sigma6"])]
        );
    }

    #[test]
    fn tree_check() {
        assert!(raag_tree_thick_check(&raag(3, &[(0, 1), (1, 2)])).unwrap());
        assert!(raag_tree_thick_check(&raag(4, &[(0, 1), (0, 2), (0, 3)])).unwrap());
        assert!(raag_tree_thick_check(&raag(5, &[(0, 1), (1, 2), (2, 3), (3, 4)])).unwrap());
        assert!(matches!(raag_tree_thick_check(&raag(3, &[(0, 1), (1, 2), (0, 2)])), Err(Error::NotATree(_))));
        assert!(matches!(raag_tree_thick_check(&raag(4, &[(0, 1), (2, 3)])), Err(Error::NotATree(_))));
        assert!(raag_tree_thick_check(&fb(4)).is_err());
    }

    fn raag_word(vertices: usize, max_len: usize) -> impl Strategy<Value = Vec<Syllable>> {
        proptest::collection::vec(
            (0..vertices, prop_oneof![-2i64..=-1, 1i64..=2]).prop_map(|(v, e)| Syllable::new(v, e)),
            1..=max_len,
        )
    }

    proptest! {
        #[test]
        fn raag_centralizers_are_stable(word in raag_word(5, 5), k in 2i64..=4) {
            let g = raag(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
            let x = reduce(&g, &word).unwrap();
            prop_assume!(!x.is_empty());
            prop_assert_eq!(centralizer(&g, x.syllables()).unwrap(), centralizer(&g, power(&g, &x, k).syllables()).unwrap());
        }

        #[test]
        fn self_inclusion_means_normalizing(word in raag_word(6, 4), phi in 1u64..64) {
            let g = fb(7);
            let phi = VertexSet::from_bits(phi);
            if parabolic_conjugate_included(&g, &word, phi, phi).unwrap() {
                prop_assert!(normalizes_parabolic(&g, &word, phi).unwrap());
            }
        }

        #[test]
        fn virtual_centre_commutes_with_squares(word in raag_word(3, 4)) {
            // ⟨x² : x ∈ D∞ × ℤ⟩ witness: the virtual centre of {a,b} ∗ {c}
            // commutes with every square.
            let g = LabeledGraph::new(
                vec!["a".into(), "b".into(), "c".into()],
                vec![VertexOrder::Finite(2), VertexOrder::Finite(2), VertexOrder::Infinite],
                vec![(0, 2), (1, 2)],
            ).unwrap();
            let x = reduce(&g, &word).unwrap();
            let sq = power(&g, &x, 2);
            for z in virtual_centre(&g).unwrap().generators {
                prop_assert!(commutes(&g, &z, &sq));
            }
        }
    }
}
