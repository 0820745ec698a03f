//! The four standard digraph products.
//!
//! Vertex `(d, f)` of a product `D * F` has the flat label
//! `d * |V(F)| + f`. Folded products over several factors compose this
//! row-major, so `(x1, .., xt)` has label `((x1 * n2 + x2) * n3 + x3) ...`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::digraph::Digraph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProductKind {
    Cartesian,
    Direct,
    Strong,
    Lexicographic,
}

impl ProductKind {
    pub const ALL: [ProductKind; 4] = [
        ProductKind::Cartesian,
        ProductKind::Direct,
        ProductKind::Strong,
        ProductKind::Lexicographic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProductKind::Cartesian => "cartesian",
            ProductKind::Direct => "direct",
            ProductKind::Strong => "strong",
            ProductKind::Lexicographic => "lexicographic",
        }
    }
}

impl fmt::Display for ProductKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProductKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cartesian" | "box" => Ok(ProductKind::Cartesian),
            "direct" | "tensor" | "cross" => Ok(ProductKind::Direct),
            "strong" => Ok(ProductKind::Strong),
            "lexicographic" | "lex" => Ok(ProductKind::Lexicographic),
            other => Err(Error::precondition(format!(
                "unknown product kind `{other}`"
            ))),
        }
    }
}

/// Bijection between pairs `(d, f)` and flat product labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairIndex {
    left: usize,
    right: usize,
}

impl PairIndex {
    pub fn new(left: usize, right: usize) -> PairIndex {
        PairIndex { left, right }
    }

    pub fn of(d: &Digraph, f: &Digraph) -> PairIndex {
        PairIndex::new(d.order(), f.order())
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn len(&self) -> usize {
        self.left * self.right
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn flat(&self, d: usize, f: usize) -> usize {
        debug_assert!(d < self.left && f < self.right);
        d * self.right + f
    }

    #[inline]
    pub fn pair(&self, flat: usize) -> (usize, usize) {
        (flat / self.right, flat % self.right)
    }
}

/// Row-major label of a coordinate tuple.
pub fn flatten(radices: &[usize], coords: &[usize]) -> usize {
    radices
        .iter()
        .zip(coords)
        .fold(0, |acc, (&r, &c)| acc * r + c)
}

/// Inverse of [`flatten`].
pub fn unflatten(radices: &[usize], mut flat: usize) -> Vec<usize> {
    let mut coords = vec![0; radices.len()];
    for (slot, &r) in coords.iter_mut().zip(radices).rev() {
        *slot = flat % r;
        flat /= r;
    }
    coords
}

pub fn product(kind: ProductKind, d: &Digraph, f: &Digraph) -> Digraph {
    let idx = PairIndex::of(d, f);
    let (nd, nf) = (d.order(), f.order());
    let mut arcs: Vec<(usize, usize)> = Vec::new();

    let d_arcs_same_f = |arcs: &mut Vec<(usize, usize)>| {
        for (a, b) in d.arcs() {
            for x in 0..nf {
                arcs.push((idx.flat(a, x), idx.flat(b, x)));
            }
        }
    };
    let f_arcs_same_d = |arcs: &mut Vec<(usize, usize)>| {
        for x in 0..nd {
            for (a, b) in f.arcs() {
                arcs.push((idx.flat(x, a), idx.flat(x, b)));
            }
        }
    };
    let both = |arcs: &mut Vec<(usize, usize)>| {
        for (a, b) in d.arcs() {
            for (x, y) in f.arcs() {
                arcs.push((idx.flat(a, x), idx.flat(b, y)));
            }
        }
    };

    match kind {
        ProductKind::Cartesian => {
            d_arcs_same_f(&mut arcs);
            f_arcs_same_d(&mut arcs);
        }
        ProductKind::Direct => both(&mut arcs),
        ProductKind::Strong => {
            d_arcs_same_f(&mut arcs);
            f_arcs_same_d(&mut arcs);
            both(&mut arcs);
        }
        ProductKind::Lexicographic => {
            for (a, b) in d.arcs() {
                for x in 0..nf {
                    for y in 0..nf {
                        arcs.push((idx.flat(a, x), idx.flat(b, y)));
                    }
                }
            }
            f_arcs_same_d(&mut arcs);
        }
    }
    Digraph::from_arcs_merged(idx.len(), arcs)
}

/// Left fold `((D1 * D2) * D3) * ...`.
pub fn fold_product(kind: ProductKind, factors: &[Digraph]) -> Result<Digraph> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::precondition("a product needs at least one factor"))?;
    Ok(rest
        .iter()
        .fold(first.clone(), |acc, f| product(kind, &acc, f)))
}

/// Which fiber of a two-factor product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layer {
    /// `D^f = {(x, f) : x in V(D)}`
    DThrough(usize),
    /// `^dF = {(d, y) : y in V(F)}`
    FThrough(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    D,
    F,
}

pub fn layer(idx: &PairIndex, which: Layer) -> Result<VertexSet> {
    let mut out = VertexSet::new(idx.len());
    match which {
        Layer::DThrough(f) => {
            if f >= idx.right {
                return Err(Error::VertexOutOfRange {
                    vertex: f,
                    order: idx.right,
                });
            }
            for x in 0..idx.left {
                out.insert(idx.flat(x, f));
            }
        }
        Layer::FThrough(d) => {
            if d >= idx.left {
                return Err(Error::VertexOutOfRange {
                    vertex: d,
                    order: idx.left,
                });
            }
            for y in 0..idx.right {
                out.insert(idx.flat(d, y));
            }
        }
    }
    Ok(out)
}

/// Image of `members` under the projection `p_D` or `p_F`.
pub fn project(idx: &PairIndex, members: &[usize], onto: Factor) -> Result<VertexSet> {
    let mut out = VertexSet::new(match onto {
        Factor::D => idx.left,
        Factor::F => idx.right,
    });
    for &v in members {
        if v >= idx.len() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                order: idx.len(),
            });
        }
        let (d, f) = idx.pair(v);
        out.insert(match onto {
            Factor::D => d,
            Factor::F => f,
        });
    }
    Ok(out)
}
