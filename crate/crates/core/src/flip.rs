//! Flip manifolds glued from pieces `S¹ × S(b)`, where `S(b)` is a sphere with
//! `b` holes, and presentations of their fundamental groups.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp::{
    commutator_word, concat, cyclic_free_reduce, evaluate, free_reduce, inverse_word, tietze_simplify, verify_homomorphism, FpWord,
    HomomorphismReport, Letter, Presentation, TietzeResult, WordOracle,
};
use crate::graph::LabeledGraph;

/// Which boundary circle of a piece carries `(a₁⋯a_{b−1})⁻¹`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProductBoundary {
    First,
    #[default]
    Last,
}

/// A boundary torus of a piece, given by its curve in the base surface and
/// the fiber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryPair {
    pub curve: FpWord,
    pub fiber: FpWord,
}

#[derive(Debug, Clone)]
pub struct PiecePresentation {
    pub presentation: Presentation,
    pub boundaries: Vec<BoundaryPair>,
}

fn piece_generator_names(b: usize) -> Vec<String> {
    let mut names: Vec<String> = match b {
        2 => vec!["a".into()],
        3 => vec!["a".into(), "b".into()],
        _ => (1..b).map(|i| format!("a{i}")).collect(),
    };
    names.push("c".into());
    names
}

/// `⟨a₁,…,a_{b−1}, c | [a_i, c]⟩` with its `b` boundary pairs.
pub fn piece_presentation(b: usize, product: ProductBoundary) -> Result<PiecePresentation> {
    if b == 0 {
        return Err(Error::Invalid("a piece needs at least one boundary circle".into()));
    }
    let c = b - 1;
    let relators = (0..c).map(|i| commutator_word(&[Letter::pos(i)], &[Letter::pos(c)])).collect();
    let presentation = Presentation::new(piece_generator_names(b), relators)?;
    let fiber = vec![Letter::pos(c)];
    let product_curve: FpWord = (0..c).rev().map(Letter::neg).collect();
    let mut boundaries: Vec<BoundaryPair> =
        (0..c).map(|i| BoundaryPair { curve: vec![Letter::pos(i)], fiber: fiber.clone() }).collect();
    let last = BoundaryPair { curve: product_curve, fiber };
    match product {
        ProductBoundary::Last => boundaries.push(last),
        ProductBoundary::First => boundaries.insert(0, last),
    }
    Ok(PiecePresentation { presentation, boundaries })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    pub id: String,
    pub b: usize,
}

/// A boundary circle: piece id and 1-based boundary index.
pub type BoundaryRef = (String, usize);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipManifold {
    pub pieces: Vec<Piece>,
    pub gluings: Vec<(BoundaryRef, BoundaryRef)>,
    #[serde(default, skip_serializing_if = "is_default")]
    pub product_boundary: ProductBoundary,
}

fn is_default(p: &ProductBoundary) -> bool {
    *p == ProductBoundary::default()
}

impl FlipManifold {
    pub fn from_json(text: &str) -> Result<Self> {
        let m: FlipManifold = serde_json::from_str(text)?;
        m.validate()?;
        Ok(m)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }

    /// One `b = 3` piece whose first two boundaries are glued to each other.
    pub fn m1() -> Self {
        FlipManifold {
            pieces: vec![Piece { id: "p1".into(), b: 3 }],
            gluings: vec![(("p1".into(), 1), ("p1".into(), 2))],
            product_boundary: ProductBoundary::default(),
        }
    }

    /// Three `b = 3` pieces in a path.
    pub fn m2() -> Self {
        FlipManifold {
            pieces: (1..=3).map(|i| Piece { id: format!("p{i}"), b: 3 }).collect(),
            gluings: vec![(("p1".into(), 2), ("p2".into(), 1)), (("p2".into(), 2), ("p3".into(), 1))],
            product_boundary: ProductBoundary::default(),
        }
    }

    fn piece_index(&self, id: &str) -> Result<usize> {
        self.pieces
            .iter()
            .position(|p| p.id == id)
            .ok_or_else(|| Error::Invalid(format!("unknown piece `{id}`")))
    }

    pub fn validate(&self) -> Result<()> {
        if self.pieces.is_empty() {
            return Err(Error::Invalid("no pieces".into()));
        }
        let mut ids = HashSet::new();
        for p in &self.pieces {
            if p.b == 0 {
                return Err(Error::Invalid(format!("piece `{}` has no boundary", p.id)));
            }
            if p.id.is_empty() || !p.id.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(Error::Invalid(format!("bad piece id `{}`", p.id)));
            }
            if !ids.insert(&p.id) {
                return Err(Error::Invalid(format!("duplicate piece `{}`", p.id)));
            }
        }
        let mut used = HashSet::new();
        for (x, y) in &self.gluings {
            for (id, k) in [x, y] {
                let p = &self.pieces[self.piece_index(id)?];
                if *k == 0 || *k > p.b {
                    return Err(Error::Invalid(format!("piece `{id}` has no boundary {k}")));
                }
                if !used.insert((id.clone(), *k)) {
                    return Err(Error::Invalid(format!("boundary {k} of `{id}` glued twice")));
                }
            }
        }
        Ok(())
    }

    /// Sum of `χ(S(b)) = 2 − b` over pieces.
    pub fn base_euler_characteristic(&self) -> i64 {
        self.pieces.iter().map(|p| 2 - p.b as i64).sum()
    }
}

/// The glued presentation before simplification, and its simplification.
#[derive(Debug, Clone)]
pub struct FundamentalGroup {
    pub unsimplified: Presentation,
    pub tietze: TietzeResult,
}

impl FundamentalGroup {
    pub fn presentation(&self) -> &Presentation {
        &self.tietze.presentation
    }
}

/// Presents `π₁` of a flip manifold. Gluings on a BFS spanning tree from the
/// lowest-id piece identify `x = c'` and `c = x'`; every other gluing adds a
/// stable letter `t` with `t x t⁻¹ = c'` and `t c t⁻¹ = x'`.
pub fn fundamental_group(m: &FlipManifold) -> Result<FundamentalGroup> {
    m.validate()?;
    let mut names = Vec::new();
    let mut relators = Vec::new();
    let mut pieces = Vec::new();
    let suffix = m.pieces.len() > 1;
    for p in &m.pieces {
        let piece = piece_presentation(p.b, m.product_boundary)?;
        let offset = names.len();
        let shift = |w: &FpWord| -> FpWord { w.iter().map(|l| Letter::new(l.generator + offset, l.inverse)).collect() };
        for g in &piece.presentation.generators {
            names.push(if suffix { format!("{g}_{}", p.id) } else { g.clone() });
        }
        relators.extend(piece.presentation.relators.iter().map(shift));
        pieces.push(piece.boundaries.iter().map(|bp| BoundaryPair { curve: shift(&bp.curve), fiber: shift(&bp.fiber) }).collect::<Vec<_>>());
    }

    let n = m.pieces.len();
    let ends: Vec<(usize, usize, usize, usize)> = m
        .gluings
        .iter()
        .map(|((p, i), (q, j))| Ok((m.piece_index(p)?, i - 1, m.piece_index(q)?, j - 1)))
        .collect::<Result<_>>()?;
    let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (g, &(p, _, q, _)) in ends.iter().enumerate() {
        adjacency[p].push((q, g));
        adjacency[q].push((p, g));
    }
    let root = (0..n).min_by(|&a, &b| m.pieces[a].id.cmp(&m.pieces[b].id)).unwrap();
    let mut tree_edges = HashSet::new();
    let mut reached = vec![false; n];
    reached[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(p) = queue.pop_front() {
        for &(q, g) in &adjacency[p] {
            if !reached[q] {
                reached[q] = true;
                tree_edges.insert(g);
                queue.push_back(q);
            }
        }
    }
    if reached.iter().any(|r| !r) {
        return Err(Error::Disconnected);
    }

    let mut stable = 0;
    for (g, &(p, i, q, j)) in ends.iter().enumerate() {
        let (x, y) = (&pieces[p][i], &pieces[q][j]);
        if tree_edges.contains(&g) {
            relators.push(concat(&[&x.curve, &inverse_word(&y.fiber)]));
            relators.push(concat(&[&x.fiber, &inverse_word(&y.curve)]));
        } else {
            stable += 1;
            let name = if stable == 1 { "t".to_string() } else { format!("t{stable}") };
            if names.contains(&name) {
                return Err(Error::Invalid(format!("stable letter `{name}` clashes with a generator")));
            }
            let t = vec![Letter::pos(names.len())];
            let tinv = inverse_word(&t);
            names.push(name);
            relators.push(concat(&[&t, &x.curve, &tinv, &inverse_word(&y.fiber)]));
            relators.push(concat(&[&t, &x.fiber, &tinv, &inverse_word(&y.curve)]));
        }
    }
    let unsimplified = Presentation::new(names, relators)?;
    let tietze = tietze_simplify(&unsimplified);
    Ok(FundamentalGroup { unsimplified, tietze })
}

/// Whether every relator is a commutator of two distinct generators; if so,
/// returns the commutation edges.
pub fn commutation_edges(p: &Presentation) -> Option<Vec<(usize, usize)>> {
    let mut edges = Vec::new();
    for r in &p.relators {
        let r = cyclic_free_reduce(r);
        if r.len() != 4 {
            return None;
        }
        let (u, v) = (r[0].generator, r[1].generator);
        if u == v || r != commutator_word(&[r[0]], &[r[1]]) || r[0].inverse != r[1].inverse {
            return None;
        }
        edges.push((u.min(v), u.max(v)));
    }
    edges.sort_unstable();
    edges.dedup();
    Some(edges)
}

/// An isomorphism between the commutation graph of a RAAG presentation and a
/// graph with infinite vertex orders, as the target vertex of each
/// generator. Brute force; meant for small ranks.
pub fn match_raag_presentation(p: &Presentation, graph: &LabeledGraph) -> Option<Vec<usize>> {
    let edges: HashSet<(usize, usize)> = commutation_edges(p)?.into_iter().collect();
    let n = p.rank();
    if n != graph.len() || edges.len() != graph.edges().len() || n > 9 {
        return None;
    }
    fn extend(
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        edges: &HashSet<(usize, usize)>,
        graph: &LabeledGraph,
    ) -> bool {
        let k = map.len();
        if k == used.len() {
            return true;
        }
        for v in 0..used.len() {
            if used[v] || (0..k).any(|u| edges.contains(&(u, k)) != graph.adjacent(map[u], v)) {
                continue;
            }
            map.push(v);
            used[v] = true;
            if extend(map, used, edges, graph) {
                return true;
            }
            used[v] = false;
            map.pop();
        }
        false
    }
    let mut map = Vec::new();
    extend(&mut map, &mut vec![false; n], &edges, graph).then_some(map)
}

/// Outcome of comparing a simplified fundamental group with a target group.
#[derive(Debug, Clone)]
pub struct FlipCertificate {
    /// Relators of the unsimplified presentation, mapped into the target.
    pub forward: HomomorphismReport,
    /// Target relators mapped to `π₁`: each must become a relator of the
    /// simplified presentation (up to cyclic permutation and inversion) or
    /// freely trivial.
    pub backward: HomomorphismReport,
    /// `φ∘ψ` and `ψ∘φ` on generators.
    pub composites: Vec<(String, bool)>,
}

impl FlipCertificate {
    pub fn ok(&self) -> bool {
        self.forward.ok() && self.backward.ok() && self.composites.iter().all(|(_, ok)| *ok)
    }
}

/// Certifies that `π₁` is isomorphic to a target group. `phi` sends each
/// simplified generator to a word in the target generators; `psi` sends each
/// target generator to a word in the simplified generators.
pub fn certify_against<O: WordOracle>(
    group: &FundamentalGroup,
    target: &Presentation,
    oracle: &O,
    target_generators: &[O::Element],
    phi: &[FpWord],
    psi: &[FpWord],
) -> Result<FlipCertificate> {
    let simplified = group.presentation();
    if phi.len() != simplified.rank() || psi.len() != target.rank() || target_generators.len() != target.rank() {
        return Err(Error::Invalid("generator images do not match the presentations".into()));
    }
    let phi_elements: Vec<O::Element> =
        phi.iter().map(|w| evaluate(oracle, target_generators, w)).collect::<Result<_>>()?;
    let full_images: Vec<O::Element> =
        group.tietze.forward.iter().map(|w| evaluate(oracle, &phi_elements, w)).collect::<Result<_>>()?;
    let forward = verify_homomorphism(&group.unsimplified, &full_images, oracle)?;

    let keys: HashSet<FpWord> = simplified.relators.iter().map(|r| relator_key(r)).collect();
    let backward = HomomorphismReport {
        relators: target
            .relators
            .iter()
            .map(|r| {
                let image = cyclic_free_reduce(&substitute(r, psi));
                (target.format_word(r), image.is_empty() || keys.contains(&relator_key(&image)))
            })
            .collect(),
    };

    let mut composites = Vec::new();
    for (g, w) in psi.iter().enumerate() {
        let ok = evaluate(oracle, &phi_elements, w)? == target_generators[g];
        composites.push((format!("phi(psi({0})) = {0}", target.generators[g]), ok));
    }
    for (x, w) in phi.iter().enumerate() {
        let ok = free_reduce(&substitute(w, psi)) == vec![Letter::pos(x)];
        composites.push((format!("psi(phi({0})) = {0}", simplified.generators[x]), ok));
    }
    Ok(FlipCertificate { forward, backward, composites })
}

fn substitute(w: &[Letter], images: &[FpWord]) -> FpWord {
    w.iter()
        .flat_map(|l| if l.inverse { inverse_word(&images[l.generator]) } else { images[l.generator].clone() })
        .collect()
}

/// Canonical representative of a relator up to cyclic permutation and inversion.
fn relator_key(w: &[Letter]) -> FpWord {
    let w = cyclic_free_reduce(w);
    let inv = inverse_word(&w);
    (0..w.len().max(1))
        .flat_map(|k| {
            let mut a = w.clone();
            let mut b = inv.clone();
            if !a.is_empty() {
                a.rotate_left(k);
                b.rotate_left(k);
            }
            [a, b]
        })
        .min()
        .unwrap()
}

/// Certifies `π₁(M₁) ≅ ⟨a, t | [a, tat⁻¹]⟩`, matching generators by name.
pub fn certify_m1() -> Result<FlipCertificate> {
    let group = fundamental_group(&FlipManifold::m1())?;
    let target = crate::lampraag::lampraag_presentation();
    let simplified = group.presentation();
    let phi = simplified
        .generators
        .iter()
        .map(|g| Ok(vec![Letter::pos(target.generator(g)?)]))
        .collect::<Result<Vec<_>>>()?;
    let psi = target
        .generators
        .iter()
        .map(|g| Ok(vec![Letter::pos(simplified.generator(g)?)]))
        .collect::<Result<Vec<_>>>()?;
    let oracle = crate::lampraag::LampraagOracle;
    let gens = vec![crate::lampraag::LampraagElement::a(), crate::lampraag::LampraagElement::t()];
    certify_against(&group, &target, &oracle, &gens, &phi, &psi)
}

/// Certifies `π₁(M₂) ≅ A(P₄)`, matching generators by a commutation-graph
/// isomorphism.
pub fn certify_m2() -> Result<FlipCertificate> {
    let group = fundamental_group(&FlipManifold::m2())?;
    let path = LabeledGraph::path_graph(4, crate::graph::VertexOrder::Infinite)?;
    let target = crate::fp::graph_product_presentation(&path);
    let simplified = group.presentation();
    let map = match_raag_presentation(simplified, &path)
        .ok_or_else(|| Error::Invalid(format!("{simplified} is not a presentation of A(P4)")))?;
    let mut psi = vec![Vec::new(); target.rank()];
    for (x, &v) in map.iter().enumerate() {
        psi[v] = vec![Letter::pos(x)];
    }
    let phi: Vec<FpWord> = map.iter().map(|&v| vec![Letter::pos(v)]).collect();
    let oracle = crate::fp::GraphProductOracle(&path);
    let gens = path
        .vertices()
        .iter()
        .map(|v| oracle.element(&[crate::word::Syllable::new(v, 1)]))
        .collect::<Result<Vec<_>>>()?;
    certify_against(&group, &target, &oracle, &gens, &phi, &psi)
}
