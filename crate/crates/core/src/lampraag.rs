//! The lampraag `A(𝕃) ⋊ ℤ` over the bi-infinite line, presented as
//! `⟨a, t | [a, t a t⁻¹]⟩`, and its commensurability with FB₇.
//!
//! An element is stored as `trace · t^shift` where the trace is a reduced
//! word in the generators `a_i = t^i a t^-i` of `A(𝕃)`.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fp::{
    self, express_all, graph_product_presentation, reidemeister_schreier, todd_coxeter, verify_homomorphism, FpWord,
    GraphProductOracle, HomomorphismReport, Letter, Presentation, WordOracle,
};
use crate::graph::{LabeledGraph, VertexOrder};
use crate::word::{self, Commutation, ReducedWord, Syllable};

/// The bi-infinite line: `a_i` and `a_j` commute iff `|i − j| = 1`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Line;

impl Commutation for Line {
    type Vertex = i64;

    fn order(&self, _: i64) -> VertexOrder {
        VertexOrder::Infinite
    }

    fn commute(&self, u: i64, v: i64) -> bool {
        u.abs_diff(v) == 1
    }

    fn validate(&self, _: i64) -> Result<()> {
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LampraagElement {
    pub shift: i64,
    pub trace: ReducedWord<i64>,
}

impl LampraagElement {
    pub fn identity() -> Self {
        LampraagElement { shift: 0, trace: ReducedWord::identity() }
    }

    pub fn a() -> Self {
        LampraagElement { shift: 0, trace: word::reduce(&Line, &[Syllable::new(0, 1)]).unwrap() }
    }

    pub fn t() -> Self {
        LampraagElement { shift: 1, trace: ReducedWord::identity() }
    }

    pub fn is_identity(&self) -> bool {
        self.shift == 0 && self.trace.is_empty()
    }

    /// `(u t^s)(v t^r) = u·(t^s v t^-s)·t^(s+r)`.
    pub fn multiply(&self, other: &Self) -> Self {
        let shifted = other.trace.syllables().iter().map(|s| Syllable::new(s.vertex + self.shift, s.exponent));
        let trace = word::reduce(&Line, &self.trace.syllables().iter().copied().chain(shifted).collect::<Vec<_>>()).unwrap();
        LampraagElement { shift: self.shift + other.shift, trace }
    }

    pub fn inverse(&self) -> Self {
        let inv = word::inverse(&Line, &self.trace);
        let trace = word::reduce(
            &Line,
            &inv.syllables().iter().map(|s| Syllable::new(s.vertex - self.shift, s.exponent)).collect::<Vec<_>>(),
        )
        .unwrap();
        LampraagElement { shift: -self.shift, trace }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "shift": self.shift,
            "trace": self.trace.syllables().iter().map(|s| json!([format!("a{}", s.vertex), s.exponent])).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for LampraagElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .trace
            .syllables()
            .iter()
            .map(|s| if s.exponent == 1 { format!("a{}", s.vertex) } else { format!("a{}^{}", s.vertex, s.exponent) })
            .collect();
        if self.shift != 0 {
            parts.push(if self.shift == 1 { "t".into() } else { format!("t^{}", self.shift) });
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

/// `⟨a, t | [a, t a t⁻¹]⟩`.
pub fn lampraag_presentation() -> Presentation {
    Presentation::parse(&["a", "t"], &["[a, t a t^-1]"]).expect("valid presentation")
}

/// Evaluates a word over `{a, t}` (generator 0 is `a`, generator 1 is `t`).
pub fn lampraag_eval(w: &[Letter]) -> Result<LampraagElement> {
    let mut shift = 0i64;
    let mut trace = Vec::new();
    for l in w {
        match l.generator {
            0 => trace.push(Syllable::new(shift, if l.inverse { -1 } else { 1 })),
            1 => shift += if l.inverse { -1 } else { 1 },
            g => return Err(Error::UnknownGenerator(format!("#{g}"))),
        }
    }
    Ok(LampraagElement { shift, trace: word::reduce(&Line, &trace)? })
}

/// Parses and evaluates text such as `"[a, t^2 a t^-2]"`.
pub fn lampraag_parse(text: &str) -> Result<LampraagElement> {
    lampraag_eval(&lampraag_presentation().parse_word(text)?)
}

/// Word-problem oracle for the lampraag.
#[derive(Debug, Clone, Copy, Default)]
pub struct LampraagOracle;

impl WordOracle for LampraagOracle {
    type Element = LampraagElement;

    fn identity(&self) -> LampraagElement {
        LampraagElement::identity()
    }

    fn multiply(&self, a: &LampraagElement, b: &LampraagElement) -> Result<LampraagElement> {
        Ok(a.multiply(b))
    }

    fn inverse(&self, a: &LampraagElement) -> Result<LampraagElement> {
        Ok(a.inverse())
    }
}

/// One sub-check of the commensurability certificate.
#[derive(Debug, Clone)]
pub struct CertificateCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    /// Per-relator or per-generator outcomes, where applicable.
    pub items: Vec<(String, bool)>,
}

impl CertificateCheck {
    fn from_report(name: &'static str, detail: String, report: HomomorphismReport) -> Self {
        CertificateCheck { name, passed: report.ok(), detail, items: report.relators }
    }

    pub fn failures(&self) -> Vec<&str> {
        self.items.iter().filter(|(_, ok)| !ok).map(|(s, _)| s.as_str()).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "check": self.name,
            "passed": self.passed,
            "detail": self.detail,
            "items": self.items.iter().map(|(s, ok)| json!({"item": s, "passed": ok})).collect::<Vec<_>>(),
        })
    }
}

#[derive(Debug, Clone)]
pub struct CommensurabilityCertificate {
    pub checks: Vec<CertificateCheck>,
}

impl CommensurabilityCertificate {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CertificateCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.passed(),
            "checks": self.checks.iter().map(CertificateCheck::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Images of `σ1σ2`, `σ3σ4`, `σ5σ6` in the lampraag, as words over `{a, t}`.
#[derive(Debug, Clone)]
pub struct CommensurabilityMap {
    pub images: [String; 3],
}

impl Default for CommensurabilityMap {
    fn default() -> Self {
        CommensurabilityMap { images: ["a".into(), "t^2".into(), "t a t^-1".into()] }
    }
}

/// Longest word searched when rewriting subgroup elements in the chosen generators.
const EXPRESSION_RADIUS: usize = 8;

pub const FB7_SUBGROUP: [&str; 3] = ["sigma1 sigma2", "sigma3 sigma4", "sigma5 sigma6"];
pub const LAMPRAAG_SUBGROUP: [&str; 3] = ["a", "t a t^-1", "t^2"];

/// The five checks: coset indices 8 and 2, a Reidemeister–Schreier
/// presentation of `H = ⟨σ1σ2, σ3σ4, σ5σ6⟩`, the map `H → lampraag` on it,
/// the inverse map `K = ⟨a, tat⁻¹, t²⟩ → FB₇` on the presentation of `K`, and
/// both composites on generators.
pub fn verify_commensurability_certificate(map: &CommensurabilityMap, max_cosets: usize) -> Result<CommensurabilityCertificate> {
    let fb7 = LabeledGraph::flat_braid(7)?;
    let fb_oracle = GraphProductOracle(&fb7);
    let fb_pres = graph_product_presentation(&fb7);
    let lamp_pres = lampraag_presentation();
    let h_words: Vec<FpWord> = FB7_SUBGROUP.iter().map(|w| fb_pres.parse_word(w)).collect::<Result<_>>()?;
    let k_words: Vec<FpWord> = LAMPRAAG_SUBGROUP.iter().map(|w| lamp_pres.parse_word(w)).collect::<Result<_>>()?;
    let h_elems: Vec<ReducedWord> = FB7_SUBGROUP.iter().map(|w| fb_oracle.parse(w)).collect::<Result<_>>()?;
    let k_elems: Vec<LampraagElement> = k_words.iter().map(|w| lampraag_eval(w)).collect::<Result<_>>()?;
    let phi: Vec<LampraagElement> = map.images.iter().map(|w| lampraag_parse(w)).collect::<Result<_>>()?;
    // ψ sends a ↦ σ1σ2, tat⁻¹ ↦ σ5σ6, t² ↦ σ3σ4, inverting the intended φ.
    let psi: Vec<ReducedWord> = vec![h_elems[0].clone(), h_elems[2].clone(), h_elems[1].clone()];

    let mut checks = Vec::new();

    let h_table = todd_coxeter(&fb_pres, &h_words, max_cosets)?;
    let k_table = todd_coxeter(&lamp_pres, &k_words, max_cosets)?;
    checks.push(CertificateCheck {
        name: "indices",
        passed: h_table.index() == 8 && k_table.index() == 2,
        detail: format!("[FB7 : H] = {}, [lampraag : K] = {}", h_table.index(), k_table.index()),
        items: vec![
            ("[FB7 : H] = 8".into(), h_table.index() == 8),
            ("[lampraag : K] = 2".into(), k_table.index() == 2),
        ],
    });

    let p_h = reidemeister_schreier(&fb_pres, &h_table)?;
    let h_gens: Vec<ReducedWord> = p_h
        .generator_words
        .iter()
        .map(|w| fp::evaluate(&fb_oracle, &fb_generators(&fb7)?, w))
        .collect::<Result<_>>()?;
    let h_expr = express_all(&fb_oracle, &h_elems, &h_gens, EXPRESSION_RADIUS)?;
    let rewritten = h_expr.iter().all(Option::is_some);
    checks.push(CertificateCheck {
        name: "subgroup-presentation",
        passed: rewritten,
        detail: format!(
            "H has {} Schreier generators and {} relators",
            p_h.presentation.rank(),
            p_h.presentation.relators.len()
        ),
        items: p_h
            .presentation
            .generators
            .iter()
            .zip(&h_expr)
            .map(|(g, e)| (format!("{g} in <sigma1 sigma2, sigma3 sigma4, sigma5 sigma6>"), e.is_some()))
            .collect(),
    });
    if !rewritten {
        return Ok(CommensurabilityCertificate { checks });
    }

    let lamp = LampraagOracle;
    let forward_images: Vec<LampraagElement> = h_expr
        .iter()
        .map(|e| fp::evaluate(&lamp, &phi, e.as_ref().unwrap()))
        .collect::<Result<_>>()?;
    let report = verify_homomorphism(&p_h.presentation, &forward_images, &lamp)?;
    checks.push(CertificateCheck::from_report(
        "forward-homomorphism",
        "relators of H map to 1 in the lampraag".into(),
        report,
    ));

    let p_k = reidemeister_schreier(&lamp_pres, &k_table)?;
    let k_gens: Vec<LampraagElement> = p_k.generator_words.iter().map(|w| lampraag_eval(w)).collect::<Result<_>>()?;
    let k_expr = express_all(&lamp, &k_elems, &k_gens, EXPRESSION_RADIUS)?;
    let report = if k_expr.iter().all(Option::is_some) {
        let backward_images: Vec<ReducedWord> = k_expr
            .iter()
            .map(|e| fp::evaluate(&fb_oracle, &psi, e.as_ref().unwrap()))
            .collect::<Result<_>>()?;
        verify_homomorphism(&p_k.presentation, &backward_images, &fb_oracle)?
    } else {
        HomomorphismReport { relators: vec![("Schreier generators of K in <a, tat^-1, t^2>".into(), false)] }
    };
    checks.push(CertificateCheck::from_report(
        "backward-homomorphism",
        format!("relators of K ({}) map to 1 in FB7", p_k.presentation),
        report,
    ));

    let mut items = Vec::new();
    let phi_in_k = express_all(&lamp, &k_elems, &phi, EXPRESSION_RADIUS)?;
    for (i, e) in phi_in_k.iter().enumerate() {
        let ok = match e {
            Some(w) => fp::evaluate(&fb_oracle, &psi, w)? == h_elems[i],
            None => false,
        };
        items.push((format!("psi(phi({})) = {}", FB7_SUBGROUP[i], FB7_SUBGROUP[i]), ok));
    }
    let psi_in_h = express_all(&fb_oracle, &h_elems, &psi, EXPRESSION_RADIUS)?;
    for (j, e) in psi_in_h.iter().enumerate() {
        let ok = match e {
            Some(w) => fp::evaluate(&lamp, &phi, w)? == k_elems[j],
            None => false,
        };
        items.push((format!("phi(psi({})) = {}", LAMPRAAG_SUBGROUP[j], LAMPRAAG_SUBGROUP[j]), ok));
    }
    checks.push(CertificateCheck {
        name: "composites",
        passed: items.iter().all(|(_, ok)| *ok),
        detail: "both composites fix the chosen generators".into(),
        items,
    });
    Ok(CommensurabilityCertificate { checks })
}

fn fb_generators(graph: &LabeledGraph) -> Result<Vec<ReducedWord>> {
    graph.vertices().iter().map(|v| word::reduce(graph, &[Syllable::new(v, 1)])).collect()
}
