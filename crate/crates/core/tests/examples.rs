//! Worked examples spanning several modules.

use gp_core::flip::{fundamental_group, FlipManifold};
use gp_core::fp::{graph_product_presentation, todd_coxeter, DEFAULT_MAX_COSETS};
use gp_core::graph::LabeledGraph;
use gp_core::lampraag::{lampraag_parse, lampraag_presentation, FB7_SUBGROUP, LAMPRAAG_SUBGROUP};
use gp_core::structure::{centralizer, thick_supports, virtual_centre};
use gp_core::word;

fn fb7() -> LabeledGraph {
    LabeledGraph::flat_braid(7).unwrap()
}

#[test]
fn centralizers_print_as_products() {
    let g = fb7();
    let w = word::parse_word(&g, "sigma1 sigma2 sigma1 sigma2 sigma1 sigma2").unwrap();
    assert_eq!(centralizer(&g, &w).unwrap().display(&g), "<sigma1 sigma2> x <sigma4, sigma5, sigma6>");
    let w = word::parse_word(&g, "sigma5 sigma6 sigma5 sigma6").unwrap();
    assert_eq!(centralizer(&g, &w).unwrap().display(&g), "<sigma5 sigma6> x <sigma1, sigma2, sigma3>");
}

#[test]
fn thick_supports_and_virtual_centres() {
    let g = fb7();
    let supports: Vec<Vec<String>> = thick_supports(&g).unwrap().iter().map(|s| g.set_names(*s)).collect();
    assert_eq!(supports, [["sigma1", "sigma2"], ["sigma5", "sigma6"]]);
    assert!(virtual_centre(&g).unwrap().is_trivial());
    let d = LabeledGraph::flat_braid(3).unwrap();
    assert_eq!(virtual_centre(&d).unwrap().generators.len(), 1);
}

#[test]
fn indices_of_the_commensurable_subgroups() {
    let p = graph_product_presentation(&fb7());
    let h: Vec<_> = FB7_SUBGROUP.iter().map(|w| p.parse_word(w).unwrap()).collect();
    assert_eq!(todd_coxeter(&p, &h, DEFAULT_MAX_COSETS).unwrap().index(), 8);
    let q = lampraag_presentation();
    let k: Vec<_> = LAMPRAAG_SUBGROUP.iter().map(|w| q.parse_word(w).unwrap()).collect();
    assert_eq!(todd_coxeter(&q, &k, DEFAULT_MAX_COSETS).unwrap().index(), 2);
}

#[test]
fn first_flip_manifold_gives_the_lampraag() {
    let group = fundamental_group(&FlipManifold::m1()).unwrap();
    let p = group.presentation();
    assert_eq!(p.generators, ["a", "t"]);
    assert_eq!(p.relators.len(), 1);
    let relator = lampraag_parse(&p.format_word(&p.relators[0])).unwrap();
    assert!(relator.is_identity());
    assert!(!lampraag_parse("[a, t^2 a t^-2]").unwrap().is_identity());
}
