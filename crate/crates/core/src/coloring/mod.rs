//! Proper colourings, exact chromatic numbers and colour-criticality.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::graph::Graph;

mod certificates;
mod critical;
mod solver;

pub use certificates::{block_coloring, critical_matching, reduced_coloring, residue_coloring};
pub use critical::{
    is_color_k_critical, is_color_k_critical_with, CriticalityOptions, CriticalityReport,
};
pub use solver::{
    chromatic_number, dsatur_greedy, greedy_clique, k_coloring, optimal_coloring, EXACT_CAP,
};

pub(crate) use solver::colorable_masks;

/// A total assignment of colours `0..palette` to the vertices `0..n`.
///
/// Properness is not part of the type; check it with [`is_proper`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<usize>,
    palette: usize,
}

impl Coloring {
    /// Panics if a colour is outside the palette.
    pub fn new(colors: Vec<usize>, palette: usize) -> Self {
        assert!(
            colors.iter().all(|&c| c < palette),
            "colour outside palette of size {palette}"
        );
        Coloring { colors, palette }
    }

    /// Palette size taken as one more than the largest colour used.
    pub fn from_colors(colors: Vec<usize>) -> Self {
        let palette = colors.iter().max().map_or(0, |&c| c + 1);
        Coloring { colors, palette }
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn palette(&self) -> usize {
        self.palette
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    /// Vertices of each colour class, indexed by colour.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.palette];
        for (v, &c) in self.colors.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    /// First monochromatic edge of `g`, if any.
    pub fn conflict(&self, g: &Graph) -> Option<(usize, usize)> {
        if self.colors.len() != g.order() {
            return None;
        }
        g.edges().find(|&(u, v)| self.colors[u] == self.colors[v])
    }
}

impl Serialize for Coloring {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.colors.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Coloring {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Vec::<usize>::deserialize(d).map(Coloring::from_colors)
    }
}

/// True iff the colouring covers every vertex and no edge is monochromatic.
pub fn is_proper(g: &Graph, c: &Coloring) -> bool {
    c.colors.len() == g.order() && c.conflict(g).is_none()
}
