//! Certificate suite and command implementations for `gp-calc`.

pub mod oracles;
pub mod verify;

use gp_core::fp;
use gp_core::graph::LabeledGraph;
use gp_core::word::Syllable;
use gp_core::Result;

/// `FB_n` as a graph product: `n - 1` involutions on the opposite path.
pub fn flat_braid_group(n: usize) -> Result<LabeledGraph> {
    LabeledGraph::flat_braid(n)
}

/// Whether `w` lies in the pure flat braid group, the kernel of `FB_n -> S_n`.
pub fn pure_membership(n: usize, w: &[Syllable]) -> Result<bool> {
    fp::is_pure(n, w)
}
