//! Brute-force oracles used by the certificate suite. None of them calls the
//! normal-form machinery they are compared against, except to name group
//! elements once equality itself has been certified.

use std::collections::{HashMap, HashSet, VecDeque};

use gp_core::graph::{LabeledGraph, VertexOrder, VertexSet};
use gp_core::word::{self, ReducedWord, Syllable};
use gp_core::{Error, Result};
use rustc_hash::FxHashMap;

/// A word of at most 7 syllables packed into a `u64`: syllable `i` in byte
/// `i` (vertex in the high 3 bits, exponent + 16 in the low 5), length in
/// the top byte.
type Packed = u64;

const EXP_OFFSET: i64 = 16;

fn pack(word: &[(usize, i64)]) -> Packed {
    let mut p = (word.len() as u64) << 56;
    for (i, &(v, e)) in word.iter().enumerate() {
        p |= (((v as u64) << 5) | (e + EXP_OFFSET) as u64) << (8 * i);
    }
    p
}

fn unpack(p: Packed) -> Vec<(usize, i64)> {
    let len = (p >> 56) as usize;
    (0..len)
        .map(|i| {
            let b = (p >> (8 * i)) & 0xff;
            ((b >> 5) as usize, (b & 31) as i64 - EXP_OFFSET)
        })
        .collect()
}

/// The elementary moves: delete a trivial syllable, merge two adjacent
/// syllables of one vertex group, swap adjacent syllables of adjacent
/// vertices. A finite-order syllable stores its exponent mod the order, so
/// a trivial syllable has exponent 0.
fn moves(graph: &LabeledGraph, p: Packed, out: &mut Vec<Packed>) {
    let w = unpack(p);
    for i in 0..w.len() {
        if w[i].1 == 0 {
            let mut v = w.clone();
            v.remove(i);
            out.push(pack(&v));
        }
    }
    for i in 0..w.len().saturating_sub(1) {
        let ((a, x), (b, y)) = (w[i], w[i + 1]);
        if a == b {
            let e = match graph.order(a) {
                VertexOrder::Finite(m) => (x + y).rem_euclid(m as i64),
                VertexOrder::Infinite => x + y,
            };
            let mut v = w.clone();
            v[i] = (a, e);
            v.remove(i + 1);
            out.push(pack(&v));
        } else if graph.adjacent(a, b) {
            let mut v = w.clone();
            v.swap(i, i + 1);
            out.push(pack(&v));
        }
    }
}

/// Per-vertex exponent sums, reduced mod finite orders and packed one byte
/// per vertex. Every move keeps it.
fn abelian_key(graph: &LabeledGraph, word: &[(usize, i64)]) -> u64 {
    let mut sums = [0i64; 8];
    for &(v, e) in word {
        sums[v] += e;
    }
    let mut key = 0u64;
    for (v, &k) in sums.iter().enumerate().take(graph.len()) {
        let k = match graph.order(v) {
            VertexOrder::Finite(m) => k.rem_euclid(m as i64),
            VertexOrder::Infinite => k,
        };
        key |= ((k + 128) as u64 & 0xff) << (8 * v);
    }
    key
}

struct UnionFind(Vec<u32>);

impl UnionFind {
    fn find(&mut self, x: u32) -> u32 {
        let mut r = x;
        while self.0[r as usize] != r {
            r = self.0[r as usize];
        }
        let mut y = x;
        while self.0[y as usize] != r {
            let next = self.0[y as usize];
            self.0[y as usize] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: u32, b: u32) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b) as usize] = a.min(b);
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct MoveClosureReport {
    /// Input words checked.
    pub words: usize,
    /// Words in the move closure of the inputs.
    pub closure: usize,
    /// Move-equivalence classes among the inputs.
    pub classes: usize,
    pub disagreements: Vec<String>,
}

impl MoveClosureReport {
    pub fn ok(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Compares `reduce` with the equivalence generated by the elementary moves
/// on every word of at most `max_len` syllables with exponents in
/// `exponents`. Two inputs are move-equivalent iff their reductions are
/// identical; since every move keeps the exponent-sum vector, classes are
/// computed separately for each value of it.
pub fn move_closure_agreement(graph: &LabeledGraph, max_len: usize, exponents: &[i64]) -> Result<MoveClosureReport> {
    let max_exp = exponents.iter().map(|e| e.abs()).max().unwrap_or(0);
    if graph.len() > 8 || max_len > 7 || max_exp * max_len as i64 >= EXP_OFFSET {
        return Err(Error::Capacity { what: "packed move-closure words", limit: 7 });
    }
    let store = |v: usize, e: i64| match graph.order(v) {
        VertexOrder::Finite(m) => (v, e.rem_euclid(m as i64)),
        VertexOrder::Infinite => (v, e),
    };
    let letters: Vec<(usize, i64)> = graph.vertices().iter().flat_map(|v| exponents.iter().map(move |&e| (v, e))).collect();

    // Inputs are kept with their exponents as given; `store` normalizes them.
    let mut inputs: Vec<(u64, Packed)> = Vec::new();
    let mut current: Vec<Vec<(usize, i64)>> = vec![Vec::new()];
    for len in 0..=max_len {
        for w in &current {
            inputs.push((abelian_key(graph, w), pack(w)));
        }
        if len < max_len {
            current = current
                .iter()
                .flat_map(|w| letters.iter().map(move |&l| [w.as_slice(), &[l]].concat()))
                .collect();
        }
    }
    drop(current);
    inputs.sort_unstable();

    let mut report = MoveClosureReport { words: inputs.len(), ..Default::default() };
    let complain = |report: &mut MoveClosureReport, msg: String| {
        if report.disagreements.len() < 20 {
            report.disagreements.push(msg);
        } else if report.disagreements.len() == 20 {
            report.disagreements.push("…".into());
        }
    };
    let show = |p: Packed| {
        let w: Vec<Syllable> = unpack(p).into_iter().map(|(v, e)| Syllable::new(v, e)).collect();
        format!("[{}]", word::format_word(graph, &w))
    };
    let mut seen_reduced: HashSet<ReducedWord> = HashSet::new();
    let mut buffer = Vec::new();
    let mut start = 0;
    while start < inputs.len() {
        let key = inputs[start].0;
        let end = start + inputs[start..].partition_point(|&(k, _)| k == key);
        let normalize = |p: Packed| -> Packed { pack(&unpack(p).into_iter().map(|(v, e)| store(v, e)).collect::<Vec<_>>()) };
        let mut index: FxHashMap<Packed, u32> = FxHashMap::default();
        let mut nodes: Vec<Packed> = Vec::new();
        for &(_, raw) in &inputs[start..end] {
            let p = normalize(raw);
            index.entry(p).or_insert_with(|| {
                nodes.push(p);
                nodes.len() as u32 - 1
            });
        }
        let mut edges: Vec<(u32, u32)> = Vec::new();
        let mut next = 0;
        while next < nodes.len() {
            buffer.clear();
            moves(graph, nodes[next], &mut buffer);
            for &q in &buffer {
                let id = *index.entry(q).or_insert_with(|| {
                    nodes.push(q);
                    nodes.len() as u32 - 1
                });
                edges.push((next as u32, id));
            }
            next += 1;
        }
        let mut uf = UnionFind((0..nodes.len() as u32).collect());
        for (a, b) in edges {
            uf.union(a, b);
        }
        report.closure += nodes.len();

        let mut class_form: FxHashMap<u32, ReducedWord> = FxHashMap::default();
        let mut form_class: HashMap<ReducedWord, u32> = HashMap::new();
        for &(_, p) in &inputs[start..end] {
            let root = uf.find(index[&normalize(p)]);
            let w: Vec<Syllable> = unpack(p).into_iter().map(|(v, e)| Syllable::new(v, e)).collect();
            let r = word::reduce(graph, &w)?;
            match class_form.get(&root) {
                Some(f) if *f != r => complain(&mut report, format!("{} and its move-equivalent word reduce differently", show(p))),
                Some(_) => {}
                None => {
                    if let Some(&other) = form_class.get(&r) {
                        if other != root {
                            complain(&mut report, format!("{} reduces like an inequivalent word", show(p)));
                        }
                    }
                    let reduced: Vec<(usize, i64)> = r.syllables().iter().map(|s| (s.vertex, s.exponent)).collect();
                    if abelian_key(graph, &reduced) != key || !seen_reduced.insert(r.clone()) {
                        complain(&mut report, format!("{} reduces to a word of another class", show(p)));
                    }
                    form_class.insert(r.clone(), root);
                    class_form.insert(root, r);
                }
            }
        }
        report.classes += class_form.len();
        start = end;
    }
    Ok(report)
}

/// Labelled trees on `n ≥ 2` vertices, decoded from every Prüfer sequence.
pub fn labelled_trees(n: usize) -> impl Iterator<Item = Vec<(usize, usize)>> {
    let total = if n < 2 { 0 } else { n.pow(n as u32 - 2) };
    (0..total).map(move |mut code| {
        let mut seq = Vec::with_capacity(n.saturating_sub(2));
        for _ in 0..n - 2 {
            seq.push(code % n);
            code /= n;
        }
        prufer_decode(n, &seq)
    })
}

fn prufer_decode(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Elements of `⟨Λ⟩` of length at most `radius`, by breadth-first search
/// over products of its vertex-group generators.
pub fn parabolic_ball(graph: &LabeledGraph, lambda: VertexSet, radius: usize) -> Result<HashSet<ReducedWord>> {
    let mut gens = Vec::new();
    for v in lambda.iter() {
        let exps: Vec<i64> = match graph.order(v) {
            VertexOrder::Finite(m) => (1..m as i64).collect(),
            VertexOrder::Infinite => vec![1, -1],
        };
        for e in exps {
            gens.push(word::reduce(graph, &[Syllable::new(v, e)])?);
        }
    }
    let mut seen = HashSet::from([ReducedWord::identity()]);
    let mut frontier = vec![ReducedWord::identity()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for x in &frontier {
            for g in &gens {
                let y = word::multiply(graph, x, g);
                if seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    Ok(seen)
}

/// Whether `a⟨Φ⟩a⁻¹ ⊆ ⟨Ψ⟩`, decided by looking up each conjugated generator
/// in a breadth-first ball of `⟨Ψ⟩`. Parabolic subgroups are convex, so a
/// ball of radius `2|a| + 1` is enough.
pub fn conjugate_inclusion_by_search(
    graph: &LabeledGraph,
    a: &ReducedWord,
    phi: VertexSet,
    psi_ball: &HashSet<ReducedWord>,
) -> Result<bool> {
    let a_inv = word::inverse(graph, a);
    for v in phi.iter() {
        let g = word::reduce(graph, &[Syllable::new(v, 1)])?;
        let c = word::multiply(graph, &word::multiply(graph, a, &g), &a_inv);
        if !psi_ball.contains(&c) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Reduced elements of length at most `radius`, in breadth-first order.
pub fn group_ball(graph: &LabeledGraph, radius: usize) -> Result<Vec<ReducedWord>> {
    let all = parabolic_ball(graph, graph.vertices(), radius)?;
    let mut out: Vec<ReducedWord> = all.into_iter().collect();
    out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    Ok(out)
}

/// Exhaustive commutation check: `h ∈ C(g)` by direct multiplication.
pub fn commutes_by_multiplication(graph: &LabeledGraph, g: &ReducedWord, h: &ReducedWord) -> bool {
    word::multiply(graph, g, h) == word::multiply(graph, h, g)
}

/// Breadth-first search for the identity in `Λ`-cosets: whether
/// `w ∈ ⟨Ψ⟩·⟨Λ⟩`, searching products of the given length.
pub fn in_product_by_search(
    graph: &LabeledGraph,
    w: &ReducedWord,
    psi: VertexSet,
    lambda: VertexSet,
    radius: usize,
) -> Result<bool> {
    let left = parabolic_ball(graph, psi, radius)?;
    let right = parabolic_ball(graph, lambda, radius)?;
    Ok(left.iter().any(|p| right.contains(&word::multiply(graph, &word::inverse(graph, p), w))))
}

/// Vertices reachable from the first one, for sanity checks on trees.
pub fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen.into_iter().all(|s| s)
}
