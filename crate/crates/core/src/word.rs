//! Words in graph products of cyclic groups and their normal forms.
//!
//! A word is a sequence of syllables `v^e`. Three moves never change the
//! element a word represents: deleting a trivial syllable, merging two
//! neighbouring syllables at the same vertex, and swapping two neighbouring
//! syllables at adjacent vertices. A word is reduced when no sequence of moves
//! shortens it; reduced words for one element differ only by swaps.
//!
//! [`reduce`] returns the shortlex-least reduced word of the element: the pile
//! order in which, at every step, the syllable with the least vertex among
//! those that can be swapped to the front is emitted first. Two words are
//! equal in the group iff their reduced forms are identical.
//!
//! Everything here is generic over [`Commutation`], so the same code handles
//! finite [`LabeledGraph`]s and infinite but locally finite graphs such as the
//! bi-infinite line.

use std::collections::BTreeSet;
use std::fmt::Debug;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, VertexOrder, VertexSet};

/// Commutation data of a graph product of cyclic groups.
pub trait Commutation {
    type Vertex: Copy + Ord + Hash + Debug;

    fn order(&self, v: Self::Vertex) -> VertexOrder;

    /// Whether distinct vertices `u` and `v` are adjacent.
    fn commute(&self, u: Self::Vertex, v: Self::Vertex) -> bool;

    fn validate(&self, v: Self::Vertex) -> Result<()>;
}

impl Commutation for LabeledGraph {
    type Vertex = usize;

    fn order(&self, v: usize) -> VertexOrder {
        LabeledGraph::order(self, v)
    }

    fn commute(&self, u: usize, v: usize) -> bool {
        self.adjacent(u, v)
    }

    fn validate(&self, v: usize) -> Result<()> {
        self.check_vertex(v)
    }
}

/// One syllable `vertex^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Syllable<V = usize> {
    pub vertex: V,
    pub exponent: i64,
}

impl<V> Syllable<V> {
    pub fn new(vertex: V, exponent: i64) -> Self {
        Syllable { vertex, exponent }
    }
}

/// An arbitrary word; exponents may be zero or unreduced.
pub type Word<V = usize> = Vec<Syllable<V>>;

/// A reduced word in canonical pile order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedWord<V = usize>(Vec<Syllable<V>>);

impl<V: Copy> ReducedWord<V> {
    pub fn identity() -> Self {
        ReducedWord(Vec::new())
    }

    pub fn syllables(&self) -> &[Syllable<V>] {
        &self.0
    }

    /// Syllable length.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_word(&self) -> Word<V> {
        self.0.clone()
    }

    pub fn into_word(self) -> Word<V> {
        self.0
    }
}

fn dependent<G: Commutation>(g: &G, a: G::Vertex, b: G::Vertex) -> bool {
    a == b || !g.commute(a, b)
}

/// Appends a syllable to a reduced word, keeping it reduced.
fn push_syllable<G: Commutation>(g: &G, word: &mut Vec<Syllable<G::Vertex>>, s: Syllable<G::Vertex>) {
    let Some(exponent) = g.order(s.vertex).normalize(s.exponent) else {
        return;
    };
    for i in (0..word.len()).rev() {
        let t = word[i];
        if t.vertex == s.vertex {
            match g.order(s.vertex).normalize(t.exponent + exponent) {
                Some(e) => word[i].exponent = e,
                None => {
                    word.remove(i);
                }
            }
            return;
        }
        if !g.commute(t.vertex, s.vertex) {
            break;
        }
    }
    word.push(Syllable::new(s.vertex, exponent));
}

/// Rearranges a reduced word into pile order.
fn canonical_order<G: Commutation>(g: &G, word: &[Syllable<G::Vertex>]) -> Vec<Syllable<G::Vertex>> {
    let n = word.len();
    let mut blockers = vec![0usize; n];
    for j in 0..n {
        for i in 0..j {
            if dependent(g, word[i].vertex, word[j].vertex) {
                blockers[j] += 1;
            }
        }
    }
    let mut emitted = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .filter(|&j| !emitted[j] && blockers[j] == 0)
            .min_by_key(|&j| word[j].vertex)
            .expect("dependency order is acyclic");
        emitted[next] = true;
        out.push(word[next]);
        for k in next + 1..n {
            if dependent(g, word[next].vertex, word[k].vertex) {
                blockers[k] -= 1;
            }
        }
    }
    out
}

/// Reduces `word` to its canonical reduced form.
pub fn reduce<G: Commutation>(g: &G, word: &[Syllable<G::Vertex>]) -> Result<ReducedWord<G::Vertex>> {
    let mut stack = Vec::with_capacity(word.len());
    for &s in word {
        g.validate(s.vertex)?;
        push_syllable(g, &mut stack, s);
    }
    Ok(ReducedWord(canonical_order(g, &stack)))
}

fn reduce_valid<G: Commutation>(g: &G, word: impl IntoIterator<Item = Syllable<G::Vertex>>) -> ReducedWord<G::Vertex> {
    let mut stack = Vec::new();
    for s in word {
        push_syllable(g, &mut stack, s);
    }
    ReducedWord(canonical_order(g, &stack))
}

pub fn equals<G: Commutation>(g: &G, a: &[Syllable<G::Vertex>], b: &[Syllable<G::Vertex>]) -> Result<bool> {
    Ok(reduce(g, a)? == reduce(g, b)?)
}

pub fn multiply<G: Commutation>(
    g: &G,
    a: &ReducedWord<G::Vertex>,
    b: &ReducedWord<G::Vertex>,
) -> ReducedWord<G::Vertex> {
    reduce_valid(g, a.0.iter().chain(&b.0).copied())
}

pub fn inverse<G: Commutation>(g: &G, a: &ReducedWord<G::Vertex>) -> ReducedWord<G::Vertex> {
    reduce_valid(g, a.0.iter().rev().map(|s| Syllable::new(s.vertex, -s.exponent)))
}

/// `a^k` for any integer `k`.
pub fn power<G: Commutation>(g: &G, a: &ReducedWord<G::Vertex>, k: i64) -> ReducedWord<G::Vertex> {
    let base = if k < 0 { inverse(g, a) } else { a.clone() };
    reduce_valid(
        g,
        std::iter::repeat(base.0.iter().copied()).take(k.unsigned_abs() as usize).flatten(),
    )
}

/// `a b a⁻¹`.
pub fn conjugate<G: Commutation>(
    g: &G,
    a: &ReducedWord<G::Vertex>,
    b: &ReducedWord<G::Vertex>,
) -> ReducedWord<G::Vertex> {
    multiply(g, &multiply(g, a, b), &inverse(g, a))
}

/// `[a, b] = a b a⁻¹ b⁻¹`.
pub fn commutator<G: Commutation>(
    g: &G,
    a: &ReducedWord<G::Vertex>,
    b: &ReducedWord<G::Vertex>,
) -> ReducedWord<G::Vertex> {
    multiply(g, &conjugate(g, a, b), &inverse(g, b))
}

pub fn commutes<G: Commutation>(g: &G, a: &ReducedWord<G::Vertex>, b: &ReducedWord<G::Vertex>) -> bool {
    multiply(g, a, b) == multiply(g, b, a)
}

/// Vertices labelling the syllables of the reduced form, in increasing order.
pub fn support<G: Commutation>(g: &G, word: &[Syllable<G::Vertex>]) -> Result<Vec<G::Vertex>> {
    Ok(reduced_support(&reduce(g, word)?))
}

pub fn reduced_support<V: Copy + Ord>(word: &ReducedWord<V>) -> Vec<V> {
    word.0.iter().map(|s| s.vertex).collect::<BTreeSet<_>>().into_iter().collect()
}

/// Support of a reduced word as a [`VertexSet`].
pub fn support_set(word: &ReducedWord<usize>) -> VertexSet {
    word.0.iter().map(|s| s.vertex).collect()
}

/// Positions of syllables that can be swapped to the front.
fn front_positions<G: Commutation>(g: &G, word: &[Syllable<G::Vertex>]) -> Vec<usize> {
    (0..word.len())
        .filter(|&j| (0..j).all(|i| !dependent(g, word[i].vertex, word[j].vertex)))
        .collect()
}

/// Positions of syllables that can be swapped to the end.
fn end_positions<G: Commutation>(g: &G, word: &[Syllable<G::Vertex>]) -> Vec<usize> {
    let n = word.len();
    (0..n)
        .filter(|&i| (i + 1..n).all(|j| !dependent(g, word[i].vertex, word[j].vertex)))
        .collect()
}

/// A syllable swappable to the front whose vertex also labels a different
/// syllable swappable to the end; conjugating by it shortens the word.
fn conjugation_shortcut<G: Commutation>(g: &G, word: &ReducedWord<G::Vertex>) -> Option<Syllable<G::Vertex>> {
    let ends = end_positions(g, &word.0);
    front_positions(g, &word.0)
        .into_iter()
        .filter(|&i| ends.iter().any(|&j| j != i && word.0[j].vertex == word.0[i].vertex))
        .map(|i| word.0[i])
        .min_by_key(|s| s.vertex)
}

/// Whether every cyclic permutation of the reduced word is reduced.
pub fn is_cyclically_reduced<G: Commutation>(g: &G, word: &ReducedWord<G::Vertex>) -> bool {
    conjugation_shortcut(g, word).is_none()
}

/// Splits the element as `conjugator · core · conjugator⁻¹` with `core`
/// cyclically reduced.
pub fn cyclic_reduce<G: Commutation>(
    g: &G,
    word: &[Syllable<G::Vertex>],
) -> Result<(ReducedWord<G::Vertex>, ReducedWord<G::Vertex>)> {
    let mut core = reduce(g, word)?;
    let mut conjugator: Vec<Syllable<G::Vertex>> = Vec::new();
    while let Some(s) = conjugation_shortcut(g, &core) {
        let inv = Syllable::new(s.vertex, -s.exponent);
        core = reduce_valid(g, std::iter::once(inv).chain(core.0.iter().copied()).chain(std::iter::once(s)));
        conjugator.push(s);
    }
    Ok((reduce_valid(g, conjugator), core))
}

pub fn essential_support<G: Commutation>(g: &G, word: &[Syllable<G::Vertex>]) -> Result<Vec<G::Vertex>> {
    let (_, core) = cyclic_reduce(g, word)?;
    Ok(reduced_support(&core))
}

/// Join factors of a finite vertex list under the commutation relation,
/// ordered by least vertex.
pub fn join_factors_of<G: Commutation>(g: &G, vertices: &[G::Vertex]) -> Vec<Vec<G::Vertex>> {
    let mut sorted: Vec<G::Vertex> = vertices.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut component = vec![usize::MAX; sorted.len()];
    let mut factors = Vec::new();
    for start in 0..sorted.len() {
        if component[start] != usize::MAX {
            continue;
        }
        let id = factors.len();
        component[start] = id;
        let mut stack = vec![start];
        let mut members = Vec::new();
        while let Some(i) = stack.pop() {
            members.push(sorted[i]);
            for j in 0..sorted.len() {
                if component[j] == usize::MAX && !g.commute(sorted[i], sorted[j]) {
                    component[j] = id;
                    stack.push(j);
                }
            }
        }
        members.sort();
        factors.push(members);
    }
    factors
}

/// Whether an element of the given reduced form has finite order.
pub fn has_finite_order<G: Commutation>(g: &G, word: &[Syllable<G::Vertex>]) -> Result<bool> {
    let (_, core) = cyclic_reduce(g, word)?;
    let supp = reduced_support(&core);
    Ok(supp.iter().all(|&v| g.order(v).is_finite())
        && supp.iter().enumerate().all(|(i, &u)| supp[i + 1..].iter().all(|&v| g.commute(u, v))))
}

/// Root of one join factor: the candidate `k`-th root and a check.
fn factor_root<G: Commutation>(
    g: &G,
    component: &[Syllable<G::Vertex>],
    k: u64,
) -> Option<Vec<Syllable<G::Vertex>>> {
    if let [single] = component {
        let e = single.exponent;
        return match g.order(single.vertex) {
            VertexOrder::Infinite => (e % k as i64 == 0).then(|| vec![Syllable::new(single.vertex, e / k as i64)]),
            VertexOrder::Finite(m) => (1..m as i64)
                .find(|d| (d * k as i64 - e).rem_euclid(m as i64) == 0)
                .map(|d| vec![Syllable::new(single.vertex, d)]),
        };
    }
    let mut counts: Vec<(G::Vertex, usize)> = Vec::new();
    for s in component {
        match counts.iter_mut().find(|(v, _)| *v == s.vertex) {
            Some((_, c)) => *c += 1,
            None => counts.push((s.vertex, 1)),
        }
    }
    if counts.iter().any(|&(_, c)| c as u64 % k != 0) {
        return None;
    }
    let mut taken: Vec<(G::Vertex, usize)> = counts.iter().map(|&(v, _)| (v, 0)).collect();
    let mut root = Vec::new();
    for s in component {
        let quota = counts.iter().find(|(v, _)| *v == s.vertex).unwrap().1 / k as usize;
        let t = taken.iter_mut().find(|(v, _)| *v == s.vertex).unwrap();
        if t.1 < quota {
            t.1 += 1;
            root.push(*s);
        }
    }
    let candidate = reduce_valid(g, root.iter().copied());
    let target = reduce_valid(g, component.iter().copied());
    (power(g, &candidate, k as i64) == target).then(|| candidate.0)
}

/// Writes a cyclically reduced element of infinite order as `root^k` with
/// `k` maximal.
pub fn primitive_root<G: Commutation>(
    g: &G,
    word: &[Syllable<G::Vertex>],
) -> Result<(ReducedWord<G::Vertex>, u64)> {
    let w = reduce(g, word)?;
    if !is_cyclically_reduced(g, &w) {
        return Err(Error::NotCyclicallyReduced);
    }
    let supp = reduced_support(&w);
    let factors = join_factors_of(g, &supp);
    let components: Vec<Vec<Syllable<G::Vertex>>> = factors
        .iter()
        .map(|f| w.0.iter().filter(|s| f.contains(&s.vertex)).copied().collect())
        .collect();
    // Only components of infinite order bound the exponent.
    let bound = components
        .iter()
        .filter_map(|c| match c.as_slice() {
            [s] => match g.order(s.vertex) {
                VertexOrder::Infinite => Some(s.exponent.unsigned_abs()),
                VertexOrder::Finite(_) => None,
            },
            many => Some(many.len() as u64),
        })
        .min()
        .ok_or(Error::TorsionElement)?;
    for k in (1..=bound).rev() {
        let roots: Option<Vec<_>> = components.iter().map(|c| factor_root(g, c, k)).collect();
        if let Some(roots) = roots {
            return Ok((reduce_valid(g, roots.into_iter().flatten()), k));
        }
    }
    unreachable!("k = 1 always succeeds")
}

/// Shortest element of the coset `w⟨Λ⟩`: trailing syllables at vertices of
/// `Λ` are stripped until none is left.
pub fn coset_min_rep<G: Commutation>(
    g: &G,
    word: &[Syllable<G::Vertex>],
    in_lambda: impl Fn(G::Vertex) -> bool,
) -> Result<ReducedWord<G::Vertex>> {
    let mut w = reduce(g, word)?.0;
    while let Some(i) = end_positions(g, &w).into_iter().find(|&i| in_lambda(w[i].vertex)) {
        w.remove(i);
    }
    Ok(ReducedWord(canonical_order(g, &w)))
}

/// Whether `a ∈ ⟨Ψ⟩·⟨Λ⟩`.
pub fn in_parabolic_product<G: Commutation>(
    g: &G,
    a: &[Syllable<G::Vertex>],
    in_psi: impl Fn(G::Vertex) -> bool,
    in_lambda: impl Fn(G::Vertex) -> bool,
) -> Result<bool> {
    let rep = coset_min_rep(g, a, in_lambda)?;
    Ok(rep.0.iter().all(|s| in_psi(s.vertex)))
}

/// Parses `"sigma1 sigma2^-1 sigma3"` (`*` or `.` also separate syllables;
/// `1` or an empty string is the identity).
pub fn parse_word(graph: &LabeledGraph, text: &str) -> Result<Word> {
    text.split(|c: char| c.is_whitespace() || c == '*' || c == '.')
        .filter(|t| !t.is_empty() && *t != "1")
        .map(|token| {
            let (name, exponent) = match token.split_once('^') {
                Some((n, e)) => (
                    n,
                    e.trim_matches(|c| c == '(' || c == ')')
                        .parse::<i64>()
                        .map_err(|_| Error::Invalid(format!("bad exponent in `{token}`")))?,
                ),
                None => (token, 1),
            };
            Ok(Syllable::new(graph.vertex(name)?, exponent))
        })
        .collect()
}

/// Parses the JSON word format `[["sigma1",1],["sigma2",-3]]`.
pub fn word_from_json(graph: &LabeledGraph, value: &serde_json::Value) -> Result<Word> {
    let pairs: Vec<(String, i64)> = serde_json::from_value(value.clone())?;
    pairs
        .into_iter()
        .map(|(name, e)| Ok(Syllable::new(graph.vertex(&name)?, e)))
        .collect()
}

pub fn word_to_json(graph: &LabeledGraph, word: &[Syllable]) -> serde_json::Value {
    serde_json::Value::Array(
        word.iter()
            .map(|s| serde_json::json!([graph.name(s.vertex), s.exponent]))
            .collect(),
    )
}

/// Renders a word as `sigma1 sigma2^-1`, or `1` for the empty word.
pub fn format_word(graph: &LabeledGraph, word: &[Syllable]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    word.iter()
        .map(|s| match s.exponent {
            1 => graph.name(s.vertex).to_string(),
            e => format!("{}^{}", graph.name(s.vertex), e),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::{HashSet, VecDeque};

    fn fb(n: usize) -> LabeledGraph {
        LabeledGraph::flat_braid(n).unwrap()
    }

    fn w(g: &LabeledGraph, text: &str) -> Word {
        parse_word(g, text).unwrap()
    }

    fn r(g: &LabeledGraph, text: &str) -> ReducedWord {
        reduce(g, &w(g, text)).unwrap()
    }

    /// A(P_n) with vertices a0 … an.
    fn raag_path(edges: usize) -> LabeledGraph {
        let mut g = LabeledGraph::path_graph(edges, VertexOrder::Infinite).unwrap();
        let names = (0..=edges).map(|i| format!("a{i}")).collect::<Vec<_>>();
        g = LabeledGraph::new(names, g.orders().to_vec(), g.edges()).unwrap();
        g
    }

    /// Minimal-length words reachable by cancellation, amalgamation and
    /// shuffling, with syllables normalized as group elements.
    fn closure_minimum(g: &LabeledGraph, word: &[Syllable]) -> HashSet<Vec<(usize, i64)>> {
        let norm = |s: &Syllable| (s.vertex, match g.order(s.vertex) {
            VertexOrder::Finite(m) => s.exponent.rem_euclid(m as i64),
            VertexOrder::Infinite => s.exponent,
        });
        let start: Vec<(usize, i64)> = word.iter().map(norm).collect();
        let mut seen = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(cur) = queue.pop_front() {
            let mut next = Vec::new();
            for i in 0..cur.len() {
                if cur[i].1 == 0 {
                    let mut v = cur.clone();
                    v.remove(i);
                    next.push(v);
                }
                if i + 1 < cur.len() {
                    let (a, b) = (cur[i], cur[i + 1]);
                    if a.0 == b.0 {
                        let mut v = cur.clone();
                        v[i] = norm(&Syllable::new(a.0, a.1 + b.1));
                        v.remove(i + 1);
                        next.push(v);
                    } else if g.adjacent(a.0, b.0) {
                        let mut v = cur.clone();
                        v.swap(i, i + 1);
                        next.push(v);
                    }
                }
            }
            for v in next {
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
        let min = seen.iter().map(Vec::len).min().unwrap();
        seen.into_iter().filter(|v| v.len() == min).collect()
    }

    #[test]
    fn reduce_examples() {
        let g = fb(7);
        assert_eq!(r(&g, "sigma1 sigma3 sigma1"), r(&g, "sigma3"));
        let g3 = fb(3);
        let aba = r(&g3, "sigma1 sigma2 sigma1");
        assert_eq!(aba.len(), 3);
        assert_eq!(format_word(&g3, aba.syllables()), "sigma1 sigma2 sigma1");
        let x = r(&g, "sigma1 sigma2 sigma4 sigma6^3");
        assert!(multiply(&g, &x, &inverse(&g, &x)).is_empty());
        assert!(matches!(reduce(&g, &[Syllable::new(6, 1)]), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn equality_examples() {
        let g7 = fb(7);
        assert!(equals(&g7, &w(&g7, "sigma1 sigma3"), &w(&g7, "sigma3 sigma1")).unwrap());
        let g3 = fb(3);
        assert!(!equals(&g3, &w(&g3, "sigma1 sigma2"), &w(&g3, "sigma2 sigma1")).unwrap());
        // Oracle: the move closures of the two words share no minimal word.
        let a = closure_minimum(&g3, &w(&g3, "sigma1 sigma2"));
        let b = closure_minimum(&g3, &w(&g3, "sigma2 sigma1"));
        assert!(a.is_disjoint(&b));
        let racg = fb(4);
        assert_eq!(inverse(&racg, &r(&racg, "sigma1 sigma2")), r(&racg, "sigma2 sigma1"));
    }

    #[test]
    fn canonical_form_is_pile_order() {
        let g = fb(7);
        // sigma4 commutes with sigma1 and sigma2 and comes out after them.
        assert_eq!(format_word(&g, r(&g, "sigma4 sigma2 sigma1").syllables()), "sigma2 sigma1 sigma4");
        assert_eq!(format_word(&g, r(&g, "sigma6 sigma3 sigma1").syllables()), "sigma1 sigma3 sigma6");
    }

    #[test]
    fn support_and_cyclic_reduction() {
        let g3 = fb(3);
        assert_eq!(support(&g3, &w(&g3, "sigma1 sigma2 sigma1")).unwrap(), vec![0, 1]);
        let g7 = fb(7);
        let (conj, core) = cyclic_reduce(&g7, &w(&g7, "sigma3 sigma1 sigma2 sigma3")).unwrap();
        assert_eq!(conj, r(&g7, "sigma3"));
        assert_eq!(core, r(&g7, "sigma1 sigma2"));
        // σ1σ2σ1 is a reflection conjugate to σ2.
        let (conj, core) = cyclic_reduce(&g3, &w(&g3, "sigma1 sigma2 sigma1")).unwrap();
        assert_eq!(conj, r(&g3, "sigma1"));
        assert_eq!(core, r(&g3, "sigma2"));
    }

    #[test]
    fn essential_support_of_reflection() {
        // Oracle: some rotation of σ1σ2σ1 is not reduced, so the element is
        // not cyclically reduced; conjugating down gives a single vertex.
        let g3 = fb(3);
        let word = w(&g3, "sigma1 sigma2 sigma1");
        let rotation: Word = vec![word[1], word[2], word[0]];
        assert!(reduce(&g3, &rotation).unwrap().len() < 3);
        assert_eq!(essential_support(&g3, &word).unwrap(), vec![1]);
        // support is {σ1, σ2} but essential support is {σ2}.
        assert_eq!(support(&g3, &word).unwrap(), vec![0, 1]);
    }

    #[test]
    fn primitive_root_examples() {
        let g7 = fb(7);
        let (root, k) = primitive_root(&g7, &w(&g7, "sigma1 sigma2 sigma1 sigma2 sigma1 sigma2")).unwrap();
        assert_eq!((root, k), (r(&g7, "sigma1 sigma2"), 3));
        let (root, k) = primitive_root(&g7, &w(&g7, "sigma1 sigma2")).unwrap();
        assert_eq!((root.clone(), k), (r(&g7, "sigma1 sigma2"), 1));
        // Oracle: no length-1 word squares or cubes to σ1σ2 (all syllables are involutions).
        for v in 0..6 {
            let s = reduce(&g7, &[Syllable::new(v, 1)]).unwrap();
            for k in 2..=3 {
                assert_ne!(power(&g7, &s, k), root);
            }
        }

        let raag = raag_path(1);
        let (root, k) = primitive_root(&raag, &w(&raag, "a0^2 a1^2")).unwrap();
        assert_eq!((root, k), (r(&raag, "a0 a1"), 2));

        assert_eq!(
            primitive_root(&g7, &w(&g7, "sigma3 sigma1 sigma2 sigma3")),
            Err(Error::NotCyclicallyReduced)
        );
        assert_eq!(primitive_root(&g7, &w(&g7, "sigma1 sigma3")), Err(Error::TorsionElement));
    }

    #[test]
    fn primitive_root_matches_exhaustive_search() {
        // Oracle: all reduced words of syllable length ≤ 2 with exponents in
        // [-2, 2] over A(P1), searched for the largest k with x^k = a0^2 a1^2.
        let raag = raag_path(1);
        let target = r(&raag, "a0^2 a1^2");
        let mut best = 1;
        for v0 in 0..2usize {
            for e0 in [-2i64, -1, 1, 2] {
                for tail in [None, Some((0usize, 1i64)), Some((1, 1)), Some((1, -1)), Some((1, 2)), Some((1, -2))] {
                    let mut cand = vec![Syllable::new(v0, e0)];
                    if let Some((v, e)) = tail {
                        cand.push(Syllable::new(v, e));
                    }
                    let cand = reduce(&raag, &cand).unwrap();
                    for k in 1..=4 {
                        if power(&raag, &cand, k) == target {
                            best = best.max(k);
                        }
                    }
                }
            }
        }
        assert_eq!(best, 2);
    }

    #[test]
    fn coset_representatives() {
        let g7 = fb(7);
        let s3 = g7.vertex_set(&["sigma3"]).unwrap();
        assert_eq!(
            coset_min_rep(&g7, &w(&g7, "sigma1 sigma3"), |v| s3.contains(v)).unwrap(),
            r(&g7, "sigma1")
        );
        let psi = g7.vertex_set(&["sigma1", "sigma2"]).unwrap();
        let star = g7.star(0).unwrap();
        assert!(in_parabolic_product(&g7, &w(&g7, "sigma4"), |v| psi.contains(v), |v| star.contains(v)).unwrap());
        let s4 = g7.vertex_set(&["sigma4"]).unwrap();
        let s5 = g7.vertex_set(&["sigma5"]).unwrap();
        assert!(!in_parabolic_product(&g7, &w(&g7, "sigma2"), |v| s4.contains(v), |v| s5.contains(v)).unwrap());
        // Oracle: ⟨σ4⟩⟨σ5⟩ has four elements, none equal to σ2.
        let target = r(&g7, "sigma2");
        for p in ["1", "sigma4"] {
            for q in ["1", "sigma5"] {
                assert_ne!(multiply(&g7, &r(&g7, p), &r(&g7, q)), target);
            }
        }
    }

    #[test]
    fn parsing_and_json() {
        let g = fb(7);
        let word = w(&g, "sigma1*sigma2^-3 sigma6");
        assert_eq!(word, vec![Syllable::new(0, 1), Syllable::new(1, -3), Syllable::new(5, 1)]);
        let json = word_to_json(&g, &word);
        assert_eq!(json.to_string(), r#"[["sigma1",1],["sigma2",-3],["sigma6",1]]"#);
        assert_eq!(word_from_json(&g, &json).unwrap(), word);
        assert!(parse_word(&g, "sigma9").is_err());
        assert!(parse_word(&g, "1").unwrap().is_empty());
    }

    /// All arrangements of a word obtainable by swapping commuting neighbours.
    fn arrangements(g: &LabeledGraph, word: &[Syllable]) -> HashSet<Vec<Syllable>> {
        let mut seen = HashSet::from([word.to_vec()]);
        let mut stack = vec![word.to_vec()];
        while let Some(cur) = stack.pop() {
            for i in 0..cur.len().saturating_sub(1) {
                if cur[i].vertex != cur[i + 1].vertex && g.adjacent(cur[i].vertex, cur[i + 1].vertex) {
                    let mut v = cur.clone();
                    v.swap(i, i + 1);
                    if seen.insert(v.clone()) {
                        stack.push(v);
                    }
                }
            }
        }
        seen
    }

    fn arb_word(vertices: usize, max_len: usize) -> impl Strategy<Value = Word> {
        proptest::collection::vec(
            (0..vertices, prop_oneof![-2i64..=-1, 1i64..=2]).prop_map(|(v, e)| Syllable::new(v, e)),
            0..=max_len,
        )
    }

    proptest! {
        #[test]
        fn reduce_agrees_with_move_closure(word in arb_word(4, 6), racg in any::<bool>()) {
            let g = if racg { fb(5) } else { raag_path(3) };
            let red = reduce(&g, &word).unwrap();
            prop_assert!(red.len() <= word.len());
            let minimal = closure_minimum(&g, &word);
            let as_pairs: Vec<(usize, i64)> = red.syllables().iter().map(|s| (s.vertex, s.exponent)).collect();
            prop_assert!(minimal.contains(&as_pairs));
            prop_assert_eq!(reduce(&g, red.syllables()).unwrap(), red);
        }

        #[test]
        fn group_laws(a in arb_word(4, 5), b in arb_word(4, 5), c in arb_word(4, 5)) {
            let g = raag_path(3);
            let (a, b, c) = (reduce(&g, &a).unwrap(), reduce(&g, &b).unwrap(), reduce(&g, &c).unwrap());
            prop_assert_eq!(multiply(&g, &multiply(&g, &a, &b), &c), multiply(&g, &a, &multiply(&g, &b, &c)));
            prop_assert!(multiply(&g, &a, &inverse(&g, &a)).is_empty());
        }

        #[test]
        fn cyclic_reduction_is_correct(word in arb_word(4, 6), racg in any::<bool>()) {
            let g = if racg { fb(5) } else { raag_path(3) };
            let (conj, core) = cyclic_reduce(&g, &word).unwrap();
            prop_assert_eq!(conj_product(&g, &conj, &core), reduce(&g, &word).unwrap());
            // Oracle: some arrangement of the core has all rotations reduced.
            let ok = arrangements(&g, core.syllables()).into_iter().any(|arr| {
                (0..arr.len().max(1)).all(|k| {
                    let mut rot = arr.clone();
                    rot.rotate_left(k.min(arr.len()));
                    reduce(&g, &rot).unwrap().len() == arr.len()
                })
            });
            prop_assert!(ok);
        }

        #[test]
        fn coset_rep_is_shortest_in_coset(word in arb_word(4, 5), lam in 0u64..16) {
            let g = fb(5);
            let lambda = VertexSet::from_bits(lam);
            let rep = coset_min_rep(&g, &word, |v| lambda.contains(v)).unwrap();
            let target = reduce(&g, &word).unwrap();
            // rep⁻¹·w ∈ ⟨Λ⟩
            let diff = multiply(&g, &inverse(&g, &rep), &target);
            prop_assert!(support_set(&diff).is_subset(lambda));
            // Oracle: breadth-first search through w⟨Λ⟩ by right multiplication
            // with generators of Λ. The shortest element is w·λ with |λ| <= 2|w|.
            let mut seen = HashSet::from([target.clone()]);
            let mut frontier = vec![target.clone()];
            for _ in 0..2 * target.len() {
                let mut next = Vec::new();
                for x in &frontier {
                    for v in lambda.iter() {
                        let y = multiply(&g, x, &reduce(&g, &[Syllable::new(v, 1)]).unwrap());
                        if seen.insert(y.clone()) {
                            next.push(y);
                        }
                    }
                }
                frontier = next;
            }
            let shortest = seen.iter().map(ReducedWord::len).min().unwrap();
            prop_assert_eq!(rep.len(), shortest);
            prop_assert_eq!(seen.iter().filter(|x| x.len() == shortest).count(), 1);
        }
    }

    fn conj_product(g: &LabeledGraph, conj: &ReducedWord, core: &ReducedWord) -> ReducedWord {
        conjugate(g, conj, core)
    }
}
