//! Coxeter groups: matrices, the integral reflection representation and the
//! word problem by braid moves.
//!
//! Words are sequences of generator indices `0..rank`, printed as `x1 … xn`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fp::{graph_product_presentation, verify_homomorphism, HomomorphismReport, WordOracle};
use crate::graph::LabeledGraph;
use crate::word::Syllable;

pub const DEFAULT_LENGTH_CAP: usize = 20;
pub const MAX_CLASS_SIZE: usize = 1_000_000;
pub const DEFAULT_ORDER_BOUND: u32 = 24;

/// An entry `m(i, j)` of a Coxeter matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Label::Finite(m) => s.serialize_u32(*m),
            Label::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u32),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(m) => Ok(Label::Finite(m)),
            Raw::Text(t) if t == "inf" || t == "infinity" => Ok(Label::Infinite),
            Raw::Text(t) => Err(serde::de::Error::custom(format!("bad Coxeter label `{t}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxeterMatrix {
    rank: usize,
    m: Vec<Vec<Label>>,
}

impl CoxeterMatrix {
    pub fn new(m: Vec<Vec<Label>>) -> Result<Self> {
        let rank = m.len();
        if rank > u8::MAX as usize {
            return Err(Error::Capacity { what: "Coxeter rank", limit: u8::MAX as usize });
        }
        for (i, row) in m.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::Invalid(format!("row {} has {} entries, expected {rank}", i + 1, row.len())));
            }
            for (j, &label) in row.iter().enumerate() {
                if label != m[j][i] {
                    return Err(Error::Invalid(format!("m({},{}) differs from m({},{})", i + 1, j + 1, j + 1, i + 1)));
                }
                let ok = match (i == j, label) {
                    (true, l) => l == Label::Finite(1),
                    (false, Label::Finite(k)) => k >= 2,
                    (false, Label::Infinite) => true,
                };
                if !ok {
                    return Err(Error::Invalid(format!("bad label m({},{}) = {label}", i + 1, j + 1)));
                }
            }
        }
        Ok(CoxeterMatrix { rank, m })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: CoxeterMatrix = serde_json::from_str(text)?;
        if raw.rank != raw.m.len() {
            return Err(Error::Invalid(format!("rank {} but {} rows", raw.rank, raw.m.len())));
        }
        CoxeterMatrix::new(raw.m)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("matrix serializes")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self, i: usize, j: usize) -> Label {
        self.m[i][j]
    }

    /// The Coxeter matrix on a subset of the generators, in the given order.
    pub fn restrict(&self, generators: &[usize]) -> Result<Self> {
        for &g in generators {
            self.check_letter(g)?;
        }
        CoxeterMatrix::new(
            generators
                .iter()
                .map(|&i| generators.iter().map(|&j| self.m[i][j]).collect())
                .collect(),
        )
    }

    fn check_letter(&self, g: usize) -> Result<()> {
        if g < self.rank {
            Ok(())
        } else {
            Err(Error::UnknownGenerator(format!("x{}", g + 1)))
        }
    }

    /// Whether every off-diagonal label is 2, 3 or ∞.
    pub fn has_integral_representation(&self) -> bool {
        (0..self.rank).all(|i| {
            (0..self.rank).all(|j| i == j || matches!(self.m[i][j], Label::Finite(2) | Label::Finite(3) | Label::Infinite))
        })
    }
}

/// The quotient of FB₇ by the thick subgroup of its pure subgroup: rank 6,
/// `m(i, i+1) = 3` except `m(3, 4) = ∞`, and 2 elsewhere.
pub fn thick_quotient_matrix() -> CoxeterMatrix {
    let m = (0..6)
        .map(|i: usize| {
            (0..6)
                .map(|j: usize| match i.abs_diff(j) {
                    0 => Label::Finite(1),
                    1 if i.min(j) == 2 => Label::Infinite,
                    1 => Label::Finite(3),
                    _ => Label::Finite(2),
                })
                .collect()
        })
        .collect();
    CoxeterMatrix::new(m).expect("valid matrix")
}

/// Parses `"x1 x2 x1"` (1-based generator names, `1` for the empty word).
pub fn parse_word(matrix: &CoxeterMatrix, text: &str) -> Result<Vec<usize>> {
    text.split(|c: char| c.is_whitespace() || c == '*' || c == '.')
        .filter(|t| !t.is_empty() && *t != "1")
        .map(|t| {
            let i = t
                .strip_prefix('x')
                .and_then(|d| d.parse::<usize>().ok())
                .filter(|&i| i >= 1)
                .ok_or_else(|| Error::UnknownGenerator(t.to_string()))?;
            matrix.check_letter(i - 1)?;
            Ok(i - 1)
        })
        .collect()
}

pub fn format_word(word: &[usize]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    word.iter().map(|i| format!("x{}", i + 1)).collect::<Vec<_>>().join(" ")
}

/// Square integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i128>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        IntMatrix { n, data }
    }

    pub fn get(&self, i: usize, j: usize) -> i128 {
        self.data[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i128>> {
        self.data.chunks(self.n).map(<[i128]>::to_vec).collect()
    }

    pub fn checked_mul(&self, other: &IntMatrix) -> Option<IntMatrix> {
        let n = self.n;
        let mut data = vec![0i128; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let t = a.checked_mul(other.data[k * n + j])?;
                    data[i * n + j] = data[i * n + j].checked_add(t)?;
                }
            }
        }
        Some(IntMatrix { n, data })
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        self.checked_mul(other).expect("matrix entries overflow")
    }

    pub fn max_abs(&self) -> i128 {
        self.data.iter().map(|x| x.abs()).max().unwrap_or(0)
    }

    pub fn is_identity(&self) -> bool {
        *self == IntMatrix::identity(self.n)
    }
}

/// Reflection matrices `ρ_i(e_i) = −e_i`, `ρ_i(e_j) = e_j + c·e_i` with
/// `c = −2cos(π/m)·(−1) ∈ {0, 1, 2}` for `m ∈ {2, 3, ∞}`.
pub fn reflection_matrices(matrix: &CoxeterMatrix) -> Result<Vec<IntMatrix>> {
    if !matrix.has_integral_representation() {
        return Err(Error::Invalid("integral representation needs labels in {2, 3, inf}".into()));
    }
    let n = matrix.rank;
    Ok((0..n)
        .map(|i| {
            let mut r = IntMatrix::identity(n);
            for j in 0..n {
                r.data[i * n + j] = match (i == j, matrix.m[i][j]) {
                    (true, _) => -1,
                    (false, Label::Finite(2)) => 0,
                    (false, Label::Finite(3)) => 1,
                    (false, _) => 2,
                };
            }
            r
        })
        .collect())
}

/// Matrix of a word, `ρ(w₁)⋯ρ(w_k)`.
pub fn word_matrix(reflections: &[IntMatrix], word: &[usize]) -> IntMatrix {
    let n = reflections.first().map_or(0, |r| r.n);
    word.iter().fold(IntMatrix::identity(n), |acc, &g| acc.mul(&reflections[g]))
}

/// Braid-move solver for the word problem.
#[derive(Debug, Clone)]
pub struct CoxeterSolver<'a> {
    matrix: &'a CoxeterMatrix,
    pub length_cap: usize,
    pub class_cap: usize,
}

impl<'a> CoxeterSolver<'a> {
    pub fn new(matrix: &'a CoxeterMatrix) -> Self {
        CoxeterSolver { matrix, length_cap: DEFAULT_LENGTH_CAP, class_cap: MAX_CLASS_SIZE }
    }

    /// Words obtained from `word` by one braid move.
    fn braid_neighbours(&self, word: &[u8]) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        for p in 0..word.len().saturating_sub(1) {
            let (i, j) = (word[p], word[p + 1]);
            if i == j {
                continue;
            }
            let Label::Finite(m) = self.matrix.m[i as usize][j as usize] else {
                continue;
            };
            let m = m as usize;
            if p + m > word.len() {
                continue;
            }
            if (0..m).all(|k| word[p + k] == if k % 2 == 0 { i } else { j }) {
                let mut v = word.to_vec();
                for k in 0..m {
                    v[p + k] = if k % 2 == 0 { j } else { i };
                }
                out.push(v);
            }
        }
        out
    }

    /// All words reachable by braid moves.
    pub fn braid_class(&self, word: &[u8]) -> Result<Vec<Vec<u8>>> {
        let mut seen: HashSet<Vec<u8>> = HashSet::from([word.to_vec()]);
        let mut queue = VecDeque::from([word.to_vec()]);
        let mut order = Vec::new();
        while let Some(w) = queue.pop_front() {
            for v in self.braid_neighbours(&w) {
                if seen.insert(v.clone()) {
                    if seen.len() > self.class_cap {
                        return Err(Error::Capacity { what: "braid-move class size", limit: self.class_cap });
                    }
                    queue.push_back(v);
                }
            }
            order.push(w);
        }
        Ok(order)
    }

    /// Multiplies a reduced word by a generator on the right. Returns the
    /// braid class of the reduced product.
    fn append(&self, class: &[Vec<u8>], s: u8) -> Result<Vec<Vec<u8>>> {
        // A reduced word w has ℓ(ws) < ℓ(w) iff some reduced expression of w ends in s.
        if let Some(w) = class.iter().find(|w| w.last() == Some(&s)) {
            return self.braid_class(&w[..w.len() - 1]);
        }
        let mut w = class[0].clone();
        w.push(s);
        self.braid_class(&w)
    }

    fn reduced_class(&self, word: &[usize]) -> Result<Vec<Vec<u8>>> {
        let mut class = vec![Vec::new()];
        for &g in word {
            self.matrix.check_letter(g)?;
            class = self.append(&class, g as u8)?;
        }
        Ok(class)
    }

    /// The lexicographically least reduced word for the element.
    pub fn normal_form(&self, word: &[usize]) -> Result<Vec<usize>> {
        if word.len() > self.length_cap {
            return Err(Error::Capacity { what: "Coxeter word length", limit: self.length_cap });
        }
        let class = self.reduced_class(word)?;
        Ok(class.into_iter().min().unwrap().into_iter().map(usize::from).collect())
    }

    pub fn equals(&self, a: &[usize], b: &[usize]) -> Result<bool> {
        if a.len() + b.len() > self.length_cap {
            return Err(Error::Capacity { what: "Coxeter word length", limit: self.length_cap });
        }
        let mut w = a.to_vec();
        w.extend(b.iter().rev());
        Ok(self.reduced_class(&w)?[0].is_empty())
    }

    pub fn length(&self, word: &[usize]) -> Result<usize> {
        Ok(self.normal_form(word)?.len())
    }
}

/// Decides `a = b` with the default length cap.
pub fn coxeter_equals(matrix: &CoxeterMatrix, a: &[usize], b: &[usize]) -> Result<bool> {
    CoxeterSolver::new(matrix).equals(a, b)
}

/// Infinite iff no power up to `bound` is the identity and the largest entry
/// of the representing matrix grows strictly along the powers.
pub fn has_infinite_order(matrix: &CoxeterMatrix, word: &[usize], bound: u32) -> Result<bool> {
    for &g in word {
        matrix.check_letter(g)?;
    }
    let reflections = reflection_matrices(matrix)?;
    let base = word_matrix(&reflections, word);
    let mut current = base.clone();
    let mut growing = true;
    let mut previous = current.max_abs();
    for _ in 1..=bound {
        if current.is_identity() {
            return Ok(false);
        }
        match current.checked_mul(&base) {
            Some(next) => {
                let size = next.max_abs();
                growing &= size > previous;
                previous = size;
                current = next;
            }
            None => return if growing { Ok(true) } else { Err(Error::Undecided(bound as usize)) },
        }
    }
    if growing {
        Ok(true)
    } else {
        Err(Error::Undecided(bound as usize))
    }
}

/// `σ_i ↦ x_i` for a word over FB₇ (rank-6 right-angled Coxeter group);
/// even exponents vanish.
pub fn pi_image(word: &[Syllable]) -> Result<Vec<usize>> {
    word.iter()
        .filter(|s| s.exponent.rem_euclid(2) == 1)
        .map(|s| if s.vertex < 6 { Ok(s.vertex) } else { Err(Error::UnknownVertex(format!("sigma{}", s.vertex + 1))) })
        .collect()
}

/// Every element of length at most `max_len`, with right multiplication by
/// generators.
#[derive(Debug, Clone)]
pub struct ElementTable {
    /// Lexicographically least reduced word of each element.
    pub normal_forms: Vec<Vec<u8>>,
    /// `transitions[e][s]` is the element `e·s`, when its length is within bound.
    pub transitions: Vec<Vec<Option<usize>>>,
}

impl ElementTable {
    pub fn build(matrix: &CoxeterMatrix, max_len: usize) -> Result<Self> {
        let solver = CoxeterSolver::new(matrix);
        let rank = matrix.rank;
        let mut index: HashMap<Vec<u8>, usize> = HashMap::from([(Vec::new(), 0)]);
        let mut classes: Vec<Vec<Vec<u8>>> = vec![vec![Vec::new()]];
        let mut transitions: Vec<Vec<Option<usize>>> = vec![vec![None; rank]];
        let mut level = vec![0usize];
        for len in 0..=max_len {
            let mut next_level = Vec::new();
            for &e in &level {
                for s in 0..rank as u8 {
                    let descent = classes[e].iter().find(|w| w.last() == Some(&s)).cloned();
                    let target = match descent {
                        Some(mut w) => {
                            w.pop();
                            Some(index[&w])
                        }
                        None if len < max_len => {
                            let mut w = classes[e][0].clone();
                            w.push(s);
                            match index.get(&w) {
                                Some(&t) => Some(t),
                                None => {
                                    let class = solver.braid_class(&w)?;
                                    let id = classes.len();
                                    for v in &class {
                                        index.insert(v.clone(), id);
                                    }
                                    classes.push(class);
                                    transitions.push(vec![None; rank]);
                                    next_level.push(id);
                                    Some(id)
                                }
                            }
                        }
                        None => None,
                    };
                    transitions[e][s as usize] = target;
                }
            }
            level = next_level;
        }
        let normal_forms = classes.into_iter().map(|c| c.into_iter().min().unwrap()).collect();
        Ok(ElementTable { normal_forms, transitions })
    }

    pub fn len(&self) -> usize {
        self.normal_forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normal_forms.is_empty()
    }
}

/// Checks that the braid-move solver and the reflection representation agree
/// on all words of length at most `max_len`: every element gets a distinct
/// matrix and right multiplication matches matrix multiplication.
pub fn cross_check_representation(matrix: &CoxeterMatrix, max_len: usize) -> Result<(usize, bool)> {
    let reflections = reflection_matrices(matrix)?;
    let table = ElementTable::build(matrix, max_len)?;
    let matrices: Vec<IntMatrix> = table
        .normal_forms
        .iter()
        .map(|w| word_matrix(&reflections, &w.iter().map(|&g| g as usize).collect::<Vec<_>>()))
        .collect();
    let distinct = matrices.iter().collect::<HashSet<_>>().len() == matrices.len();
    let consistent = table.transitions.iter().enumerate().all(|(e, row)| {
        row.iter()
            .enumerate()
            .all(|(s, t)| t.map_or(true, |t| matrices[e].mul(&reflections[s]) == matrices[t]))
    });
    Ok((table.len(), distinct && consistent))
}

/// Word-problem oracle whose elements are lexicographically least reduced words.
pub struct CoxeterOracle<'a> {
    solver: CoxeterSolver<'a>,
}

impl<'a> CoxeterOracle<'a> {
    pub fn new(matrix: &'a CoxeterMatrix) -> Self {
        let mut solver = CoxeterSolver::new(matrix);
        solver.length_cap = usize::MAX;
        CoxeterOracle { solver }
    }

    pub fn element(&self, word: &[usize]) -> Result<Vec<usize>> {
        self.solver.normal_form(word)
    }
}

impl WordOracle for CoxeterOracle<'_> {
    type Element = Vec<usize>;

    fn identity(&self) -> Vec<usize> {
        Vec::new()
    }

    fn multiply(&self, a: &Vec<usize>, b: &Vec<usize>) -> Result<Vec<usize>> {
        self.solver.normal_form(&[a.as_slice(), b.as_slice()].concat())
    }

    fn inverse(&self, a: &Vec<usize>) -> Result<Vec<usize>> {
        self.solver.normal_form(&a.iter().rev().copied().collect::<Vec<_>>())
    }
}

/// Checks that `σ_i ↦ x_i` respects every relator of FB₇.
pub fn verify_pi_homomorphism() -> Result<HomomorphismReport> {
    let matrix = thick_quotient_matrix();
    let fb7 = LabeledGraph::flat_braid(7)?;
    let oracle = CoxeterOracle::new(&matrix);
    let images: Vec<Vec<usize>> = (0..6).map(|i| vec![i]).collect();
    verify_homomorphism(&graph_product_presentation(&fb7), &images, &oracle)
}
