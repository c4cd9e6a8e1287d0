//! Finitely presented groups: coset enumeration, subgroup presentations,
//! Tietze simplification and homomorphism checks.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, VertexOrder};
use crate::word::{self as gp, ReducedWord, Syllable};

pub const DEFAULT_MAX_COSETS: usize = 100_000;

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn pos(generator: usize) -> Self {
        Letter::new(generator, false)
    }

    pub fn neg(generator: usize) -> Self {
        Letter::new(generator, true)
    }

    pub fn inv(self) -> Self {
        Letter::new(self.generator, !self.inverse)
    }

    /// Column of the letter in a coset table.
    pub fn column(self) -> usize {
        2 * self.generator + self.inverse as usize
    }

    fn from_column(col: usize) -> Self {
        Letter::new(col / 2, col % 2 == 1)
    }
}

pub type FpWord = Vec<Letter>;

pub fn inverse_word(w: &[Letter]) -> FpWord {
    w.iter().rev().map(|l| l.inv()).collect()
}

pub fn free_reduce(w: &[Letter]) -> FpWord {
    let mut out: FpWord = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Freely and cyclically reduces.
pub fn cyclic_free_reduce(w: &[Letter]) -> FpWord {
    let mut w = free_reduce(w);
    while w.len() >= 2 && w[0] == w[w.len() - 1].inv() {
        w.pop();
        w.remove(0);
    }
    w
}

pub fn concat(parts: &[&[Letter]]) -> FpWord {
    free_reduce(&parts.concat())
}

pub fn power_word(w: &[Letter], k: i64) -> FpWord {
    let base = if k < 0 { inverse_word(w) } else { w.to_vec() };
    free_reduce(&base.repeat(k.unsigned_abs() as usize))
}

pub fn commutator_word(a: &[Letter], b: &[Letter]) -> FpWord {
    concat(&[a, b, &inverse_word(a), &inverse_word(b)])
}

/// Representative of a cyclic word up to rotation and inversion.
fn cyclic_key(w: &[Letter]) -> FpWord {
    let inv = inverse_word(w);
    let mut best = w.to_vec();
    for base in [w, inv.as_slice()] {
        for k in 0..base.len() {
            let mut r = base.to_vec();
            r.rotate_left(k);
            if r < best {
                best = r;
            }
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<FpWord>,
}

#[derive(Serialize, Deserialize)]
struct PresentationSpec {
    generators: Vec<String>,
    relators: Vec<Vec<Value>>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<FpWord>) -> Result<Self> {
        let mut seen = HashSet::new();
        for g in &generators {
            if !seen.insert(g.as_str()) {
                return Err(Error::Invalid(format!("duplicate generator `{g}`")));
            }
        }
        for r in &relators {
            if let Some(l) = r.iter().find(|l| l.generator >= generators.len()) {
                return Err(Error::UnknownGenerator(format!("#{}", l.generator)));
            }
        }
        let relators = relators.iter().map(|r| free_reduce(r)).filter(|r| !r.is_empty()).collect();
        Ok(Presentation { generators, relators })
    }

    /// Builds from text relators such as `"[a, t a t^-1]"` or `"t c T = b"`.
    pub fn parse<S: AsRef<str>>(generators: &[S], relators: &[S]) -> Result<Self> {
        let gens: Vec<String> = generators.iter().map(|g| g.as_ref().to_string()).collect();
        let p = Presentation::new(gens, Vec::new())?;
        let rels = relators.iter().map(|r| p.parse_word(r.as_ref())).collect::<Result<Vec<_>>>()?;
        Presentation::new(p.generators, rels)
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generator(&self, name: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// Parses a word: generators with optional integer exponents, brackets
    /// `[u, v]` for commutators, parentheses with exponents, `1` for the
    /// identity, and `u = v` for `u v⁻¹`.
    pub fn parse_word(&self, text: &str) -> Result<FpWord> {
        let mut parser = WordParser { chars: text.chars().collect(), pos: 0, presentation: self };
        let lhs = parser.word()?;
        parser.skip_ws();
        let w = if parser.eat('=') {
            let rhs = parser.word()?;
            concat(&[&lhs, &inverse_word(&rhs)])
        } else {
            lhs
        };
        parser.skip_ws();
        if parser.pos < parser.chars.len() {
            return Err(Error::Invalid(format!("unexpected `{}` in `{text}`", parser.chars[parser.pos])));
        }
        Ok(w)
    }

    pub fn format_word(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < w.len() {
            let mut j = i;
            while j < w.len() && w[j] == w[i] {
                j += 1;
            }
            let k = (j - i) as i64 * if w[i].inverse { -1 } else { 1 };
            let name = &self.generators[w[i].generator];
            parts.push(if k == 1 { name.clone() } else { format!("{name}^{k}") });
            i = j;
        }
        parts.join(" ")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: PresentationSpec = serde_json::from_str(text)?;
        let p = Presentation::new(spec.generators, Vec::new())?;
        let rels = spec.relators.iter().map(|r| p.word_from_json(r)).collect::<Result<Vec<_>>>()?;
        Presentation::new(p.generators, rels)
    }

    /// Reads `["a", 1, "t", -1]`.
    pub fn word_from_json(&self, items: &[Value]) -> Result<FpWord> {
        if items.len() % 2 != 0 {
            return Err(Error::Invalid("word must alternate names and exponents".into()));
        }
        let mut w = Vec::new();
        for pair in items.chunks(2) {
            let name = pair[0].as_str().ok_or_else(|| Error::Invalid(format!("expected a name, got {}", pair[0])))?;
            let e = pair[1].as_i64().ok_or_else(|| Error::Invalid(format!("expected an exponent, got {}", pair[1])))?;
            w.extend(power_word(&[Letter::pos(self.generator(name)?)], e));
        }
        Ok(free_reduce(&w))
    }

    pub fn word_to_json(&self, w: &[Letter]) -> Value {
        Value::Array(
            w.iter()
                .flat_map(|l| [Value::from(self.generators[l.generator].clone()), Value::from(if l.inverse { -1 } else { 1 })])
                .collect(),
        )
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "generators": self.generators,
            "relators": self.relators.iter().map(|r| self.word_to_json(r)).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        write!(f, "< {} | {} >", self.generators.join(", "), rels.join(", "))
    }
}

struct WordParser<'a> {
    chars: Vec<char>,
    pos: usize,
    presentation: &'a Presentation,
}

impl WordParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && (self.chars[self.pos].is_whitespace() || self.chars[self.pos] == '*' || self.chars[self.pos] == '.') {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.chars.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn word(&mut self) -> Result<FpWord> {
        let mut w = Vec::new();
        loop {
            self.skip_ws();
            let Some(&c) = self.chars.get(self.pos) else { break };
            let atom = if c == '(' {
                self.pos += 1;
                let inner = self.word()?;
                if !self.eat(')') {
                    return Err(Error::Invalid("missing `)`".into()));
                }
                inner
            } else if c == '[' {
                self.pos += 1;
                let a = self.word()?;
                if !self.eat(',') {
                    return Err(Error::Invalid("missing `,` in commutator".into()));
                }
                let b = self.word()?;
                if !self.eat(']') {
                    return Err(Error::Invalid("missing `]`".into()));
                }
                commutator_word(&a, &b)
            } else if c.is_alphanumeric() || c == '_' {
                let start = self.pos;
                while self.pos < self.chars.len() && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_' || self.chars[self.pos] == '-' && self.pos > start && self.chars[self.pos - 1] == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                if name == "1" {
                    Vec::new()
                } else {
                    vec![Letter::pos(self.presentation.generator(&name)?)]
                }
            } else {
                break;
            };
            let atom = if self.eat('^') { power_word(&atom, self.exponent()?) } else { atom };
            w.extend(atom);
        }
        Ok(free_reduce(&w))
    }

    fn exponent(&mut self) -> Result<i64> {
        self.skip_ws();
        let paren = self.eat('(');
        self.skip_ws();
        let start = self.pos;
        if matches!(self.chars.get(self.pos), Some('-') | Some('+')) {
            self.pos += 1;
        }
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        let k = text.parse().map_err(|_| Error::Invalid(format!("bad exponent `{text}`")))?;
        if paren && !self.eat(')') {
            return Err(Error::Invalid("missing `)` after exponent".into()));
        }
        Ok(k)
    }
}

/// One generator per vertex, `v^m` for finite orders and `[u, v]` per edge.
pub fn graph_product_presentation(graph: &LabeledGraph) -> Presentation {
    let mut relators: Vec<FpWord> = Vec::new();
    for v in graph.vertices().iter() {
        if let VertexOrder::Finite(m) = graph.order(v) {
            relators.push(vec![Letter::pos(v); m as usize]);
        }
    }
    for (u, v) in graph.edges() {
        relators.push(commutator_word(&[Letter::pos(u)], &[Letter::pos(v)]));
    }
    Presentation::new(graph.names().to_vec(), relators).expect("graph names are distinct")
}

/// A complete coset table, cosets numbered in breadth-first order from the
/// subgroup coset 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    pub generators: usize,
    /// `rows[c][letter.column()]`.
    pub rows: Vec<Vec<usize>>,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.rows.len()
    }

    pub fn act(&self, coset: usize, letter: Letter) -> usize {
        self.rows[coset][letter.column()]
    }

    pub fn trace(&self, coset: usize, w: &[Letter]) -> usize {
        w.iter().fold(coset, |c, &l| self.act(c, l))
    }

    /// Permutation of the cosets induced by each generator.
    pub fn permutations(&self) -> Vec<Vec<usize>> {
        (0..self.generators)
            .map(|g| (0..self.index()).map(|c| self.act(c, Letter::pos(g))).collect())
            .collect()
    }

    /// Checks completeness, consistency of inverse columns, closure under the
    /// relators at every coset and under the subgroup generators at coset 0.
    pub fn verify(&self, p: &Presentation, subgroup: &[FpWord]) -> bool {
        let n = self.index();
        let consistent = self.rows.iter().enumerate().all(|(c, row)| {
            row.len() == 2 * self.generators
                && row.iter().enumerate().all(|(col, &d)| d < n && self.rows[d][col ^ 1] == c)
        });
        consistent
            && (0..n).all(|c| p.relators.iter().all(|r| self.trace(c, r) == c))
            && subgroup.iter().all(|h| self.trace(0, h) == 0)
    }

    /// Representative words of each coset, read off a breadth-first spanning tree.
    pub fn transversal(&self) -> Vec<FpWord> {
        let mut reps: Vec<Option<FpWord>> = vec![None; self.index()];
        reps[0] = Some(Vec::new());
        let mut queue = VecDeque::from([0]);
        while let Some(c) = queue.pop_front() {
            for col in 0..2 * self.generators {
                let d = self.rows[c][col];
                if reps[d].is_none() {
                    let mut w = reps[c].clone().unwrap();
                    w.push(Letter::from_column(col));
                    reps[d] = Some(w);
                    queue.push_back(d);
                }
            }
        }
        reps.into_iter().map(|r| r.expect("table is connected")).collect()
    }
}

const NONE: usize = usize::MAX;

struct Enumerator<'a> {
    cols: usize,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    queue: VecDeque<usize>,
    max_cosets: usize,
    relators: &'a [FpWord],
}

impl<'a> Enumerator<'a> {
    fn rep(&mut self, mut c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[c] != root {
            let next = self.parent[c];
            self.parent[c] = root;
            c = next;
        }
        root
    }

    fn alive(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, col: usize) -> Result<()> {
        if self.table.len() >= self.max_cosets {
            return Err(Error::Capacity { what: "cosets", limit: self.max_cosets });
        }
        let d = self.table.len();
        self.table.push(vec![NONE; self.cols]);
        self.parent.push(d);
        self.table[c][col] = d;
        self.table[d][col ^ 1] = c;
        Ok(())
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.parent[hi] = lo;
            self.queue.push_back(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.merge(a, b);
        while let Some(e) = self.queue.pop_front() {
            for col in 0..self.cols {
                let d = self.table[e][col];
                if d == NONE {
                    continue;
                }
                if self.table[d][col ^ 1] == e {
                    self.table[d][col ^ 1] = NONE;
                }
                let (e1, d1) = (self.rep(e), self.rep(d));
                if self.table[e1][col] != NONE {
                    let t = self.table[e1][col];
                    self.merge(d1, t);
                } else if self.table[d1][col ^ 1] != NONE {
                    let t = self.table[d1][col ^ 1];
                    self.merge(e1, t);
                } else {
                    self.table[e1][col] = d1;
                    self.table[d1][col ^ 1] = e1;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[Letter]) -> Result<()> {
        if w.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len() as isize - 1);
        loop {
            while (i as isize) <= j && self.table[f][w[i].column()] != NONE {
                f = self.table[f][w[i].column()];
                i += 1;
            }
            if i as isize > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.table[b][w[j as usize].inv().column()] != NONE {
                b = self.table[b][w[j as usize].inv().column()];
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                let col = w[i].column();
                self.table[f][col] = b;
                self.table[b][col ^ 1] = f;
                return Ok(());
            }
            self.define(f, w[i].column())?;
        }
    }

    fn run(&mut self, subgroup: &[FpWord]) -> Result<()> {
        for h in subgroup {
            self.scan_and_fill(0, h)?;
        }
        let mut c = 0;
        while c < self.table.len() {
            for r in 0..self.relators.len() {
                if !self.alive(c) {
                    break;
                }
                let rel = self.relators[r].clone();
                self.scan_and_fill(c, &rel)?;
            }
            for col in 0..self.cols {
                if !self.alive(c) {
                    break;
                }
                if self.table[c][col] == NONE {
                    self.define(c, col)?;
                }
            }
            c += 1;
        }
        Ok(())
    }

    fn compact(mut self) -> CosetTable {
        let mut number = HashMap::from([(0usize, 0usize)]);
        let mut order = vec![0usize];
        let mut k = 0;
        while k < order.len() {
            let c = order[k];
            for col in 0..self.cols {
                let d = self.rep(self.table[c][col]);
                if !number.contains_key(&d) {
                    number.insert(d, order.len());
                    order.push(d);
                }
            }
            k += 1;
        }
        let rows = order
            .iter()
            .map(|&c| (0..self.cols).map(|col| number[&self.rep(self.table[c][col])]).collect())
            .collect();
        CosetTable { generators: self.cols / 2, rows }
    }
}

/// Coset enumeration by the HLT strategy with coincidence processing.
pub fn todd_coxeter(p: &Presentation, subgroup: &[FpWord], max_cosets: usize) -> Result<CosetTable> {
    if max_cosets == 0 {
        return Err(Error::Invalid("max_cosets must be at least 1".into()));
    }
    let cols = 2 * p.rank();
    let mut e = Enumerator {
        cols,
        table: vec![vec![NONE; cols]],
        parent: vec![0],
        queue: VecDeque::new(),
        max_cosets,
        relators: &p.relators,
    };
    e.run(subgroup)?;
    let table = e.compact();
    if !table.verify(p, subgroup) {
        return Err(Error::IncompleteTable);
    }
    Ok(table)
}

/// A subgroup presentation on Schreier generators.
#[derive(Debug, Clone)]
pub struct SubgroupPresentation {
    pub presentation: Presentation,
    /// Each Schreier generator as a word in the ambient generators.
    pub generator_words: Vec<FpWord>,
}

/// Reidemeister–Schreier rewriting with a breadth-first Schreier transversal.
pub fn reidemeister_schreier(p: &Presentation, table: &CosetTable) -> Result<SubgroupPresentation> {
    let n = table.index();
    if table.generators != p.rank() || table.rows.iter().any(|r| r.len() != 2 * p.rank() || r.iter().any(|&d| d >= n)) {
        return Err(Error::IncompleteTable);
    }
    let reps = table.transversal();
    // Tree edges: coset d reached from its parent through the last letter of reps[d].
    let is_tree = |c: usize, g: usize| -> bool {
        let d = table.act(c, Letter::pos(g));
        (reps[d].last() == Some(&Letter::pos(g)) && reps[d].len() == reps[c].len() + 1 && reps[d][..reps[c].len()] == reps[c][..])
            || (reps[c].last() == Some(&Letter::neg(g)) && reps[c].len() == reps[d].len() + 1 && reps[c][..reps[d].len()] == reps[d][..])
    };
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut names = Vec::new();
    let mut words = Vec::new();
    for c in 0..n {
        for g in 0..p.rank() {
            if !is_tree(c, g) {
                let d = table.act(c, Letter::pos(g));
                index.insert((c, g), names.len());
                names.push(format!("{}_{}", p.generators[g], c));
                words.push(concat(&[&reps[c], &[Letter::pos(g)], &inverse_word(&reps[d])]));
            }
        }
    }
    let mut relators = Vec::new();
    for c in 0..n {
        for r in &p.relators {
            let mut rewritten = Vec::new();
            let mut e = c;
            for &l in r {
                if l.inverse {
                    let f = table.act(e, l);
                    if let Some(&s) = index.get(&(f, l.generator)) {
                        rewritten.push(Letter::neg(s));
                    }
                    e = f;
                } else {
                    if let Some(&s) = index.get(&(e, l.generator)) {
                        rewritten.push(Letter::pos(s));
                    }
                    e = table.act(e, l);
                }
            }
            let rewritten = cyclic_free_reduce(&rewritten);
            if !rewritten.is_empty() {
                relators.push(rewritten);
            }
        }
    }
    Ok(SubgroupPresentation { presentation: Presentation::new(names, relators)?, generator_words: words })
}

/// Result of Tietze simplification.
#[derive(Debug, Clone)]
pub struct TietzeResult {
    pub presentation: Presentation,
    /// Image of every input generator as a word in the output generators.
    pub forward: Vec<FpWord>,
    /// Image of every output generator as a word in the input generators.
    pub backward: Vec<FpWord>,
}

/// Removes trivial and duplicate relators and eliminates generators that
/// occur exactly once in some relator. The shortest such relator is used
/// first; among equal lengths the generator latest in generator order goes.
pub fn tietze_simplify(p: &Presentation) -> TietzeResult {
    let rank = p.rank();
    let mut alive: Vec<bool> = vec![true; rank];
    let mut relators: Vec<FpWord> = p.relators.clone();
    // Eliminated generators as words in the original generators.
    let mut substitution: Vec<Option<FpWord>> = vec![None; rank];
    loop {
        let mut seen = HashSet::new();
        relators = relators
            .iter()
            .map(|r| cyclic_free_reduce(r))
            .filter(|r| !r.is_empty() && seen.insert(cyclic_key(r)))
            .collect();
        let mut best: Option<(usize, usize, usize)> = None;
        for (ri, r) in relators.iter().enumerate() {
            let mut counts: HashMap<usize, usize> = HashMap::new();
            for l in r {
                *counts.entry(l.generator).or_default() += 1;
            }
            for (&g, &count) in &counts {
                if count != 1 {
                    continue;
                }
                let key = (r.len(), usize::MAX - g, ri);
                if best.map_or(true, |(len, g0, r0)| key < (len, usize::MAX - g0, r0)) {
                    best = Some((r.len(), g, ri));
                }
            }
        }
        let Some((_, g, ri)) = best else { break };
        let r = relators.remove(ri);
        let pos = r.iter().position(|l| l.generator == g).unwrap();
        let (u, v) = (&r[..pos], &r[pos + 1..]);
        let value = if r[pos].inverse { concat(&[v, u]) } else { inverse_word(&concat(&[v, u])) };
        let substitute = |w: &[Letter]| -> FpWord {
            let mut out = Vec::new();
            for &l in w {
                if l.generator == g {
                    out.extend(if l.inverse { inverse_word(&value) } else { value.clone() });
                } else {
                    out.push(l);
                }
            }
            free_reduce(&out)
        };
        relators = relators.iter().map(|w| substitute(w)).collect();
        for s in substitution.iter_mut().flatten() {
            *s = substitute(s);
        }
        substitution[g] = Some(value);
        alive[g] = false;
    }
    let kept: Vec<usize> = (0..rank).filter(|&g| alive[g]).collect();
    let new_index: HashMap<usize, usize> = kept.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let relabel = |w: &[Letter]| -> FpWord { w.iter().map(|l| Letter::new(new_index[&l.generator], l.inverse)).collect() };
    let forward = (0..rank)
        .map(|g| match &substitution[g] {
            Some(w) => relabel(w),
            None => vec![Letter::pos(new_index[&g])],
        })
        .collect();
    let backward = kept.iter().map(|&g| vec![Letter::pos(g)]).collect();
    let presentation = Presentation {
        generators: kept.iter().map(|&g| p.generators[g].clone()).collect(),
        relators: relators.iter().map(|r| relabel(r)).collect(),
    };
    TietzeResult { presentation, forward, backward }
}

/// A group in which products can be computed and compared.
pub trait WordOracle {
    type Element: Clone + PartialEq + Eq + std::hash::Hash + fmt::Debug;

    fn identity(&self) -> Self::Element;
    fn multiply(&self, a: &Self::Element, b: &Self::Element) -> Result<Self::Element>;
    fn inverse(&self, a: &Self::Element) -> Result<Self::Element>;

    fn is_identity(&self, a: &Self::Element) -> Result<bool> {
        Ok(*a == self.identity())
    }
}

/// Image of a word under generator images.
pub fn evaluate<O: WordOracle>(oracle: &O, images: &[O::Element], w: &[Letter]) -> Result<O::Element> {
    let mut acc = oracle.identity();
    for l in w {
        let x = if l.inverse { oracle.inverse(&images[l.generator])? } else { images[l.generator].clone() };
        acc = oracle.multiply(&acc, &x)?;
    }
    Ok(acc)
}

/// Per-relator outcome of a homomorphism check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomomorphismReport {
    pub relators: Vec<(String, bool)>,
}

impl HomomorphismReport {
    pub fn ok(&self) -> bool {
        self.relators.iter().all(|(_, ok)| *ok)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.relators.iter().filter(|(_, ok)| !ok).map(|(r, _)| r.as_str()).collect()
    }
}

/// Checks that every relator of `src` maps to the identity.
pub fn verify_homomorphism<O: WordOracle>(src: &Presentation, images: &[O::Element], oracle: &O) -> Result<HomomorphismReport> {
    if images.len() != src.rank() {
        return Err(Error::Invalid(format!("{} images for {} generators", images.len(), src.rank())));
    }
    let relators = src
        .relators
        .iter()
        .map(|r| Ok((src.format_word(r), oracle.is_identity(&evaluate(oracle, images, r)?)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(HomomorphismReport { relators })
}

/// The graph product of cyclic groups itself.
pub struct GraphProductOracle<'a>(pub &'a LabeledGraph);

impl WordOracle for GraphProductOracle<'_> {
    type Element = ReducedWord;

    fn identity(&self) -> ReducedWord {
        ReducedWord::identity()
    }

    fn multiply(&self, a: &ReducedWord, b: &ReducedWord) -> Result<ReducedWord> {
        Ok(gp::multiply(self.0, a, b))
    }

    fn inverse(&self, a: &ReducedWord) -> Result<ReducedWord> {
        Ok(gp::inverse(self.0, a))
    }
}

impl GraphProductOracle<'_> {
    pub fn element(&self, w: &[Syllable]) -> Result<ReducedWord> {
        gp::reduce(self.0, w)
    }

    pub fn parse(&self, text: &str) -> Result<ReducedWord> {
        gp::reduce(self.0, &gp::parse_word(self.0, text)?)
    }
}

/// The free group on `rank` generators.
pub struct FreeGroup;

impl WordOracle for FreeGroup {
    type Element = FpWord;

    fn identity(&self) -> FpWord {
        Vec::new()
    }

    fn multiply(&self, a: &FpWord, b: &FpWord) -> Result<FpWord> {
        Ok(concat(&[a, b]))
    }

    fn inverse(&self, a: &FpWord) -> Result<FpWord> {
        Ok(inverse_word(a))
    }
}

/// The symmetric group on `n` points; a permutation lists the image of each
/// point, and products act on the right (first factor first).
pub struct SymmetricGroup(pub usize);

impl WordOracle for SymmetricGroup {
    type Element = Vec<usize>;

    fn identity(&self) -> Vec<usize> {
        (0..self.0).collect()
    }

    fn multiply(&self, a: &Vec<usize>, b: &Vec<usize>) -> Result<Vec<usize>> {
        Ok(a.iter().map(|&i| b[i]).collect())
    }

    fn inverse(&self, a: &Vec<usize>) -> Result<Vec<usize>> {
        let mut inv = vec![0; a.len()];
        for (i, &j) in a.iter().enumerate() {
            inv[j] = i;
        }
        Ok(inv)
    }
}

pub fn transposition(n: usize, i: usize, j: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.swap(i, j);
    p
}

/// Image of an FBₙ word in Sym(n): `σ_i ↦ (i, i+1)`.
pub fn perm_image(strands: usize, w: &[Syllable]) -> Result<Vec<usize>> {
    let sym = SymmetricGroup(strands);
    let mut acc = sym.identity();
    for s in w {
        if s.vertex + 1 >= strands {
            return Err(Error::UnknownVertex(format!("sigma{}", s.vertex + 1)));
        }
        if s.exponent.rem_euclid(2) == 1 {
            acc = sym.multiply(&acc, &transposition(strands, s.vertex, s.vertex + 1))?;
        }
    }
    Ok(acc)
}

pub fn is_pure(strands: usize, w: &[Syllable]) -> Result<bool> {
    Ok(perm_image(strands, w)? == SymmetricGroup(strands).identity())
}

/// Cycle notation with 1-based points, `()` for the identity.
pub fn format_permutation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push((i + 1).to_string());
            i = p[i];
        }
        out.push_str(&format!("({})", cycle.join(" ")));
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

/// Writes `target` as a word in `generators` by breadth-first search over
/// products of at most `max_len` generators and inverses.
pub fn express_in_generators<O: WordOracle>(
    oracle: &O,
    generators: &[O::Element],
    target: &O::Element,
    max_len: usize,
) -> Result<Option<FpWord>> {
    Ok(express_all(oracle, generators, std::slice::from_ref(target), max_len)?.pop().flatten())
}

/// [`express_in_generators`] for several targets with one search.
pub fn express_all<O: WordOracle>(
    oracle: &O,
    generators: &[O::Element],
    targets: &[O::Element],
    max_len: usize,
) -> Result<Vec<Option<FpWord>>> {
    let mut found: Vec<Option<FpWord>> = vec![None; targets.len()];
    let mut pending: HashMap<&O::Element, Vec<usize>> = HashMap::new();
    for (i, t) in targets.iter().enumerate() {
        pending.entry(t).or_default().push(i);
    }
    let mut seen: HashMap<O::Element, FpWord> = HashMap::new();
    let mut record = |x: &O::Element, w: &FpWord, found: &mut Vec<Option<FpWord>>| {
        if let Some(ids) = pending.remove(x) {
            for i in ids {
                found[i] = Some(w.clone());
            }
        }
    };
    let identity = oracle.identity();
    record(&identity, &Vec::new(), &mut found);
    seen.insert(identity.clone(), Vec::new());
    let inverses = generators.iter().map(|g| oracle.inverse(g)).collect::<Result<Vec<_>>>()?;
    let mut frontier = vec![identity];
    for _ in 0..max_len {
        if found.iter().all(Option::is_some) {
            break;
        }
        let mut next = Vec::new();
        for x in &frontier {
            for (i, g) in generators.iter().enumerate() {
                for (letter, y) in [(Letter::pos(i), g), (Letter::neg(i), &inverses[i])] {
                    let z = oracle.multiply(x, y)?;
                    if !seen.contains_key(&z) {
                        let mut w = seen[x].clone();
                        w.push(letter);
                        record(&z, &w, &mut found);
                        seen.insert(z.clone(), w);
                        next.push(z);
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(found)
}
