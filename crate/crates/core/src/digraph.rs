//! Immutable labeled digraphs on dense vertex labels `0..n`.
//!
//! Loops are permitted and count once toward both the out-degree and the
//! in-degree of their vertex. A pair of opposite arcs `u -> v`, `v -> u` is
//! two arcs but a single edge of the underlying graph.

use std::collections::VecDeque;
use std::fmt;

use bitflags::bitflags;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};

bitflags! {
    /// Degree-based classification of a vertex. A vertex usually carries
    /// several flags at once (an isolated vertex is also a sink and a source).
    #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
    pub struct VertexClass: u8 {
        const SINK = 1;
        const SOURCE = 1 << 1;
        const ISOLATED = 1 << 2;
        const LEAF_SINK = 1 << 3;
        const LEAF_SOURCE = 1 << 4;
        const OUT_UNIVERSAL = 1 << 5;
        const IN_UNIVERSAL = 1 << 6;
        /// Set exactly when no other flag applies.
        const ORDINARY = 1 << 7;
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    out: Vec<VertexSet>,
    inn: Vec<VertexSet>,
    arc_count: usize,
}

impl Digraph {
    /// Builds a digraph on `n` vertices. Fails on an endpoint outside `0..n`
    /// or on a repeated ordered pair.
    pub fn new<I>(n: usize, arcs: I) -> Result<Digraph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut out = vec![VertexSet::new(n); n];
        for (u, v) in arcs {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: x,
                        order: n,
                    });
                }
            }
            if !out[u].insert(v) {
                return Err(Error::DuplicateArc(u, v));
            }
        }
        Ok(Digraph::from_out_sets(out))
    }

    /// Builds a digraph from arcs, silently merging repeated pairs.
    /// Panics on out-of-range endpoints.
    pub(crate) fn from_arcs_merged<I>(n: usize, arcs: I) -> Digraph
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut out = vec![VertexSet::new(n); n];
        for (u, v) in arcs {
            out[u].insert(v);
        }
        Digraph::from_out_sets(out)
    }

    pub(crate) fn from_out_sets(out: Vec<VertexSet>) -> Digraph {
        let n = out.len();
        let mut inn = vec![VertexSet::new(n); n];
        let mut arc_count = 0;
        for (u, heads) in out.iter().enumerate() {
            for v in heads {
                inn[v].insert(u);
                arc_count += 1;
            }
        }
        Digraph {
            out,
            inn,
            arc_count,
        }
    }

    pub fn edgeless(n: usize) -> Digraph {
        Digraph::from_out_sets(vec![VertexSet::new(n); n])
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.out.len()
    }

    #[inline]
    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn is_arcless(&self) -> bool {
        self.arc_count == 0
    }

    /// All arcs, ordered by tail then head.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, heads)| heads.iter().map(move |v| (u, v)))
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.out[u].contains(v)
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.has_arc(v, v)
    }

    pub fn has_loops(&self) -> bool {
        (0..self.order()).any(|v| self.has_loop(v))
    }

    fn check(&self, v: usize) -> Result<()> {
        if v < self.order() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.order(),
            })
        }
    }

    /// Open out-neighborhood `N+(v)`. Panics if `v` is out of range.
    #[inline]
    pub fn out_neighbors(&self, v: usize) -> &VertexSet {
        &self.out[v]
    }

    /// Open in-neighborhood `N-(v)`. Panics if `v` is out of range.
    #[inline]
    pub fn in_neighbors(&self, v: usize) -> &VertexSet {
        &self.inn[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inn[v].len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.out_degree(v) + self.in_degree(v)
    }

    /// `N+[v] = N+(v) ∪ {v}`; contains `v` whether or not it has a loop.
    pub fn closed_out_neighborhood(&self, v: usize) -> Result<VertexSet> {
        self.check(v)?;
        Ok(self.closed_out(v))
    }

    /// `N-[v] = N-(v) ∪ {v}`.
    pub fn closed_in_neighborhood(&self, v: usize) -> Result<VertexSet> {
        self.check(v)?;
        Ok(self.closed_in(v))
    }

    pub(crate) fn closed_out(&self, v: usize) -> VertexSet {
        let mut s = self.out[v].clone();
        s.insert(v);
        s
    }

    pub(crate) fn closed_in(&self, v: usize) -> VertexSet {
        let mut s = self.inn[v].clone();
        s.insert(v);
        s
    }

    /// True when every other vertex is an out-neighbor of `v`, i.e.
    /// `N+[v] = V`. For loopless digraphs this is `δ+(v) = n - 1`.
    pub fn is_out_universal(&self, v: usize) -> bool {
        self.closed_out(v).len() == self.order()
    }

    pub fn is_in_universal(&self, v: usize) -> bool {
        self.closed_in(v).len() == self.order()
    }

    /// Lowest-labeled out-universal vertex.
    pub fn out_universal_vertex(&self) -> Option<usize> {
        (0..self.order()).find(|&v| self.is_out_universal(v))
    }

    pub fn classify(&self, v: usize) -> Result<VertexClass> {
        self.check(v)?;
        let (dout, din) = (self.out_degree(v), self.in_degree(v));
        let mut class = VertexClass::empty();
        if dout == 0 {
            class |= VertexClass::SINK;
        }
        if din == 0 {
            class |= VertexClass::SOURCE;
        }
        if dout + din == 0 {
            class |= VertexClass::ISOLATED;
        }
        if dout + din == 1 {
            class |= if dout == 0 {
                VertexClass::LEAF_SINK
            } else {
                VertexClass::LEAF_SOURCE
            };
        }
        if self.is_out_universal(v) {
            class |= VertexClass::OUT_UNIVERSAL;
        }
        if self.is_in_universal(v) {
            class |= VertexClass::IN_UNIVERSAL;
        }
        if class.is_empty() {
            class = VertexClass::ORDINARY;
        }
        Ok(class)
    }

    pub fn sources(&self) -> VertexSet {
        VertexSet::from_members(
            self.order(),
            (0..self.order()).filter(|&v| self.inn[v].is_empty()),
        )
    }

    pub fn sinks(&self) -> VertexSet {
        VertexSet::from_members(
            self.order(),
            (0..self.order()).filter(|&v| self.out[v].is_empty()),
        )
    }

    /// The digraph `D^-` with every arc reversed.
    pub fn reverse(&self) -> Digraph {
        Digraph {
            out: self.inn.clone(),
            inn: self.out.clone(),
            arc_count: self.arc_count,
        }
    }

    pub fn without_loops(&self) -> Digraph {
        let mut out = self.out.clone();
        for (v, heads) in out.iter_mut().enumerate() {
            heads.remove(v);
        }
        Digraph::from_out_sets(out)
    }

    /// Induced subdigraph on `members` (sorted and deduplicated). Vertex `i`
    /// of the result is `map[i]` in `self`.
    pub fn induced(&self, members: &[usize]) -> Result<(Digraph, Vec<usize>)> {
        let mut map = members.to_vec();
        map.sort_unstable();
        map.dedup();
        for &v in &map {
            self.check(v)?;
        }
        Ok((self.induced_sorted(&map), map))
    }

    /// Induced subdigraph on a vertex set, with its index map.
    pub fn induced_set(&self, members: &VertexSet) -> (Digraph, Vec<usize>) {
        let map = members.to_vec();
        (self.induced_sorted(&map), map)
    }

    fn induced_sorted(&self, map: &[usize]) -> Digraph {
        let mut index = vec![usize::MAX; self.order()];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let k = map.len();
        let out = map
            .iter()
            .map(|&u| {
                VertexSet::from_members(
                    k,
                    self.out[u]
                        .iter()
                        .filter_map(|v| (index[v] != usize::MAX).then_some(index[v])),
                )
            })
            .collect();
        Digraph::from_out_sets(out)
    }

    /// Weak components, each sorted, listed by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for v in self.out[u].iter().chain(self.inn[u].iter()) {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Disjoint union; vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Digraph) -> Digraph {
        let shift = self.order();
        let arcs = self
            .arcs()
            .chain(other.arcs().map(|(u, v)| (u + shift, v + shift)));
        Digraph::from_arcs_merged(shift + other.order(), arcs)
    }

    /// Same digraph with extra arcs; repeated arcs are merged.
    pub(crate) fn with_extra_arcs<I>(&self, n: usize, extra: I) -> Digraph
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Digraph::from_arcs_merged(n, self.arcs().chain(extra))
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph(n={}, arcs=", self.order())?;
        f.debug_list().entries(self.arcs()).finish()?;
        write!(f, ")")
    }
}
