//! Digraph families that characterize ECD Cartesian products with a
//! sink-free cycle (`D1`, `D2`, `D3`) or with a source-centered star (`D0`).
//!
//! * `D1`: `V = W ∪ Z ∪ V'` where `W` is an ECD set of `D[W ∪ V']`, `Z` is an
//!   ECD set of `D[Z ∪ V']` and no arc joins `W` and `Z`; plus the one-vertex
//!   digraph.
//! * `D2`: `V = U1 ∪ U2 ∪ U3` and every arc goes from some `U_i` to
//!   `U_{i+1 mod 3}`, each vertex of `U_{i+1}` receiving exactly one of them.
//! * `D3`: a `D1` part and a `D2` part joined only by arcs from the `V'`
//!   block of the `D1` part into the `D2` part, with at least one such arc.
//! * `D0`: an ECD set `S` of `F` such that `F - S` has an ECD set `S'` and no
//!   arc runs from `S'` to `S`.
//!
//! Closed out-neighborhoods do not see loops, and neither do these families:
//! recognizers and validators ignore loops throughout.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::solver::{enumerate_ecd_sets, SearchBounds};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    D1,
    D2,
    D3,
    D0,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::D1 => "d1",
            Family::D2 => "d2",
            Family::D3 => "d3",
            Family::D0 => "d0",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "d1" => Ok(Family::D1),
            "d2" => Ok(Family::D2),
            "d3" => Ok(Family::D3),
            "d0" => Ok(Family::D0),
            other => Err(Error::precondition(format!("unknown family `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct D1Witness {
    pub w: Vec<usize>,
    pub z: Vec<usize>,
    pub vp: Vec<usize>,
    /// The one-vertex member, recorded as `W = {v}` with `Z` and `V'` empty.
    pub trivial: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct D2Witness {
    pub u1: Vec<usize>,
    pub u2: Vec<usize>,
    pub u3: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct D3Witness {
    pub part1: D1Witness,
    pub part2: D2Witness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct D0Witness {
    pub s: Vec<usize>,
    pub sp: Vec<usize>,
}

/// Evidence of family membership. All labels refer to the digraph the
/// witness was issued for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum FamilyWitness {
    D1(D1Witness),
    D2(D2Witness),
    D3(D3Witness),
    D0(D0Witness),
}

impl FamilyWitness {
    pub fn family(&self) -> Family {
        match self {
            FamilyWitness::D1(_) => Family::D1,
            FamilyWitness::D2(_) => Family::D2,
            FamilyWitness::D3(_) => Family::D3,
            FamilyWitness::D0(_) => Family::D0,
        }
    }

    pub fn validate(&self, d: &Digraph) -> Result<()> {
        match self {
            FamilyWitness::D1(w) => w.validate(d),
            FamilyWitness::D2(w) => w.validate(d),
            FamilyWitness::D3(w) => w.validate(d),
            FamilyWitness::D0(w) => w.validate(d),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("witness serializes")
    }

    /// Renames every vertex `v` to `map[v]`, e.g. from a component's local
    /// labels to those of the whole digraph.
    pub fn relabel(&self, map: &[usize]) -> FamilyWitness {
        let m = |xs: &[usize]| xs.iter().map(|&v| map[v]).collect::<Vec<_>>();
        let d1 = |w: &D1Witness| D1Witness {
            w: m(&w.w),
            z: m(&w.z),
            vp: m(&w.vp),
            trivial: w.trivial,
        };
        let d2 = |w: &D2Witness| D2Witness {
            u1: m(&w.u1),
            u2: m(&w.u2),
            u3: m(&w.u3),
        };
        match self {
            FamilyWitness::D1(w) => FamilyWitness::D1(d1(w)),
            FamilyWitness::D2(w) => FamilyWitness::D2(d2(w)),
            FamilyWitness::D3(w) => FamilyWitness::D3(D3Witness {
                part1: d1(&w.part1),
                part2: d2(&w.part2),
            }),
            FamilyWitness::D0(w) => FamilyWitness::D0(D0Witness {
                s: m(&w.s),
                sp: m(&w.sp),
            }),
        }
    }
}

fn set_of(d: &Digraph, members: &[usize]) -> Result<VertexSet> {
    let mut s = VertexSet::new(d.order());
    for &v in members {
        if v >= d.order() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                order: d.order(),
            });
        }
        if !s.insert(v) {
            return Err(Error::witness(format!("vertex {v} listed twice")));
        }
    }
    Ok(s)
}

/// Checks that the given blocks are pairwise disjoint and returns their union.
fn disjoint_union_of(d: &Digraph, blocks: &[&[usize]]) -> Result<VertexSet> {
    let mut all = VertexSet::new(d.order());
    for block in blocks {
        let s = set_of(d, block)?;
        if s.intersects(&all) {
            return Err(Error::witness("blocks overlap"));
        }
        all.union_with(&s);
    }
    Ok(all)
}

/// `set` is an ECD set of `D[within]`.
pub(crate) fn is_ecd_within(d: &Digraph, set: &VertexSet, within: &VertexSet) -> bool {
    if !set.is_subset(within) {
        return false;
    }
    let mut covered = VertexSet::new(d.order());
    for v in set {
        let mut reach = d.closed_out(v);
        reach.intersect_with(within);
        if reach.intersects(&covered) {
            return false;
        }
        covered.union_with(&reach);
    }
    covered == *within
}

/// Some non-loop arc runs from `a` to `b`.
fn arc_between(d: &Digraph, a: &VertexSet, b: &VertexSet) -> bool {
    a.iter()
        .any(|u| d.out_neighbors(u).iter().any(|v| v != u && b.contains(v)))
}

impl D1Witness {
    fn part(&self, d: &Digraph) -> Result<VertexSet> {
        disjoint_union_of(d, &[&self.w, &self.z, &self.vp])
    }

    fn validate_within(&self, d: &Digraph) -> Result<()> {
        let part = self.part(d)?;
        if self.trivial {
            if self.w.len() == 1 && self.z.is_empty() && self.vp.is_empty() {
                return Ok(());
            }
            return Err(Error::witness("trivial D1 witness must be W = {v}"));
        }
        if self.w.is_empty() || self.z.is_empty() || self.vp.is_empty() {
            return Err(Error::witness("D1 blocks W, Z, V' must be nonempty"));
        }
        let w = set_of(d, &self.w)?;
        let z = set_of(d, &self.z)?;
        let vp = set_of(d, &self.vp)?;
        let mut wv = w.clone();
        wv.union_with(&vp);
        if !is_ecd_within(d, &w, &wv) {
            return Err(Error::witness("W is not an ECD set of D[W ∪ V']"));
        }
        let mut zv = z.clone();
        zv.union_with(&vp);
        if !is_ecd_within(d, &z, &zv) {
            return Err(Error::witness("Z is not an ECD set of D[Z ∪ V']"));
        }
        if arc_between(d, &w, &z) || arc_between(d, &z, &w) {
            return Err(Error::witness("an arc joins W and Z"));
        }
        debug_assert_eq!(part.len(), self.w.len() + self.z.len() + self.vp.len());
        Ok(())
    }

    pub fn validate(&self, d: &Digraph) -> Result<()> {
        if self.part(d)?.len() != d.order() {
            return Err(Error::witness("D1 blocks do not cover V(D)"));
        }
        if self.trivial && d.order() != 1 {
            return Err(Error::witness("the trivial D1 member has one vertex"));
        }
        self.validate_within(d)
    }

    pub fn vertices(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self
            .w
            .iter()
            .chain(&self.z)
            .chain(&self.vp)
            .copied()
            .collect();
        all.sort_unstable();
        all
    }
}

impl D2Witness {
    fn blocks(&self) -> [&[usize]; 3] {
        [&self.u1, &self.u2, &self.u3]
    }

    fn validate_within(&self, d: &Digraph) -> Result<()> {
        let part = disjoint_union_of(d, &self.blocks())?;
        let blocks: Vec<VertexSet> = self
            .blocks()
            .iter()
            .map(|b| set_of(d, b))
            .collect::<Result<_>>()?;
        if blocks.iter().any(VertexSet::is_empty) {
            return Err(Error::witness("D2 blocks must be nonempty"));
        }
        for i in 0..3 {
            let next = (i + 1) % 3;
            let mut pair = blocks[i].clone();
            pair.union_with(&blocks[next]);
            if !is_ecd_within(d, &blocks[i], &pair) {
                return Err(Error::witness(format!(
                    "U{} is not an ECD set of D[U{} ∪ U{}]",
                    i + 1,
                    i + 1,
                    next + 1
                )));
            }
        }
        for u in &part {
            let from = (0..3).find(|&i| blocks[i].contains(u)).unwrap();
            for v in d.out_neighbors(u) {
                if v != u && part.contains(v) && !blocks[(from + 1) % 3].contains(v) {
                    return Err(Error::witness(format!(
                        "arc ({u}, {v}) does not run from U{} to U{}",
                        from + 1,
                        (from + 1) % 3 + 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn validate(&self, d: &Digraph) -> Result<()> {
        if disjoint_union_of(d, &self.blocks())?.len() != d.order() {
            return Err(Error::witness("D2 blocks do not cover V(D)"));
        }
        self.validate_within(d)
    }

    pub fn vertices(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self
            .u1
            .iter()
            .chain(&self.u2)
            .chain(&self.u3)
            .copied()
            .collect();
        all.sort_unstable();
        all
    }
}

impl D3Witness {
    pub fn validate(&self, d: &Digraph) -> Result<()> {
        let p1 = set_of(d, &self.part1.vertices())?;
        let p2 = set_of(d, &self.part2.vertices())?;
        if p1.intersects(&p2) || p1.len() + p2.len() != d.order() {
            return Err(Error::witness("D3 parts do not partition V(D)"));
        }
        self.part1.validate_within(d)?;
        self.part2.validate_within(d)?;
        let vp = set_of(d, &self.part1.vp)?;
        let mut cross = 0;
        for (u, v) in d.arcs() {
            match (p1.contains(u), p1.contains(v)) {
                (true, false) => {
                    if !vp.contains(u) {
                        return Err(Error::witness(format!(
                            "cross arc ({u}, {v}) does not start in V'"
                        )));
                    }
                    cross += 1;
                }
                (false, true) => {
                    return Err(Error::witness(format!("arc ({u}, {v}) enters the D1 part")));
                }
                _ => {}
            }
        }
        if cross == 0 {
            return Err(Error::witness("no arc from V' into the D2 part"));
        }
        Ok(())
    }
}

impl D0Witness {
    pub fn validate(&self, d: &Digraph) -> Result<()> {
        let s = set_of(d, &self.s)?;
        let sp = set_of(d, &self.sp)?;
        if !is_ecd_within(d, &s, &VertexSet::full(d.order())) {
            return Err(Error::witness("S is not an ECD set of F"));
        }
        if !is_ecd_within(d, &sp, &s.complement()) {
            return Err(Error::witness("S' is not an ECD set of F - S"));
        }
        if arc_between(d, &sp, &s) {
            return Err(Error::witness("an arc runs from S' to S"));
        }
        Ok(())
    }
}

pub fn recognize(
    family: Family,
    d: &Digraph,
    bounds: &SearchBounds,
) -> Result<Option<FamilyWitness>> {
    Ok(match family {
        Family::D1 => recognize_d1(d, bounds)?.map(FamilyWitness::D1),
        Family::D2 => recognize_d2(d, bounds)?.map(FamilyWitness::D2),
        Family::D3 => recognize_d3(d, bounds)?.map(FamilyWitness::D3),
        Family::D0 => recognize_d0(d, bounds)?.map(FamilyWitness::D0),
    })
}

/// Backtracking over block assignments `W`, `Z`, `V'` (tried in that order
/// for vertex 0, then vertex 1, ...). Vertices in `forced_vp` may only go
/// to `V'`.
struct D1Search<'a> {
    d: &'a Digraph,
    /// non-loop neighbors in either direction
    adj: Vec<VertexSet>,
    forced_vp: VertexSet,
    assignment: Vec<u8>,
}

const IN_W: u8 = 0;
const IN_Z: u8 = 1;
const IN_VP: u8 = 2;

impl D1Search<'_> {
    fn run(&mut self, v: usize) -> bool {
        let n = self.d.order();
        if v == n {
            return self.complete();
        }
        let in_count = self.d.in_neighbors(v).iter().filter(|&u| u != v).count();
        let choices: &[u8] = if self.forced_vp.contains(v) {
            &[IN_VP]
        } else {
            &[IN_W, IN_Z, IN_VP]
        };
        for &block in choices {
            let ok = match block {
                // W and Z are independent and mutually non-adjacent
                IN_W | IN_Z => self.adj[v]
                    .iter()
                    .filter(|&u| u < v)
                    .all(|u| self.assignment[u] == IN_VP),
                // V' vertices need an in-neighbor in W and another in Z
                _ => in_count >= 2,
            };
            if ok {
                self.assignment[v] = block;
                if self.run(v + 1) {
                    return true;
                }
            }
        }
        false
    }

    fn complete(&self) -> bool {
        let mut seen = [false; 3];
        for &b in &self.assignment {
            seen[b as usize] = true;
        }
        if !seen.iter().all(|&s| s) {
            return false;
        }
        (0..self.d.order())
            .filter(|&v| self.assignment[v] == IN_VP)
            .all(|v| {
                let (mut from_w, mut from_z) = (0, 0);
                for u in self.d.in_neighbors(v) {
                    match self.assignment[u] {
                        IN_W => from_w += 1,
                        IN_Z => from_z += 1,
                        _ => {}
                    }
                }
                from_w == 1 && from_z == 1
            })
    }

    fn witness(&self) -> D1Witness {
        let pick = |b: u8| {
            (0..self.d.order())
                .filter(|&v| self.assignment[v] == b)
                .collect()
        };
        D1Witness {
            w: pick(IN_W),
            z: pick(IN_Z),
            vp: pick(IN_VP),
            trivial: false,
        }
    }
}

fn undirected_adjacency(d: &Digraph) -> Vec<VertexSet> {
    (0..d.order())
        .map(|v| {
            let mut s = d.out_neighbors(v).clone();
            s.union_with(d.in_neighbors(v));
            s.remove(v);
            s
        })
        .collect()
}

fn search_d1(d: &Digraph, forced_vp: VertexSet) -> Option<D1Witness> {
    let mut search = D1Search {
        d,
        adj: undirected_adjacency(d),
        forced_vp,
        assignment: vec![0; d.order()],
    };
    search.run(0).then(|| search.witness())
}

fn recognize_d1(d: &Digraph, bounds: &SearchBounds) -> Result<Option<D1Witness>> {
    bounds.check_family("D1 recognition", d.order())?;
    if d.order() == 1 {
        return Ok(Some(D1Witness {
            w: vec![0],
            z: vec![],
            vp: vec![],
            trivial: true,
        }));
    }
    Ok(search_d1(d, VertexSet::new(d.order())))
}

/// Labels every vertex by `i` in `U_{i+1}`, propagating `c(v) = c(u) + 1`
/// along arcs. The smallest vertex of each weak component lands in `U1`.
fn color_d2(d: &Digraph) -> Option<Vec<u8>> {
    let n = d.order();
    if n == 0 {
        return None;
    }
    // every vertex receives exactly one non-loop arc
    if (0..n).any(|v| d.in_neighbors(v).iter().filter(|&u| u != v).count() != 1) {
        return None;
    }
    let mut color = vec![u8::MAX; n];
    for comp in d.components() {
        let root = comp[0];
        color[root] = 0;
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            let c = color[u];
            let forward = d
                .out_neighbors(u)
                .iter()
                .filter(|&v| v != u)
                .map(|v| (v, (c + 1) % 3));
            let backward = d
                .in_neighbors(u)
                .iter()
                .filter(|&v| v != u)
                .map(|v| (v, (c + 2) % 3));
            for (v, want) in forward.chain(backward).collect::<Vec<_>>() {
                if color[v] == u8::MAX {
                    color[v] = want;
                    stack.push(v);
                } else if color[v] != want {
                    return None;
                }
            }
        }
    }
    Some(color)
}

fn d2_from_colors(color: &[u8], map: &[usize]) -> D2Witness {
    let pick = |c: u8| {
        (0..color.len())
            .filter(|&v| color[v] == c)
            .map(|v| map[v])
            .collect()
    };
    D2Witness {
        u1: pick(0),
        u2: pick(1),
        u3: pick(2),
    }
}

fn recognize_d2(d: &Digraph, bounds: &SearchBounds) -> Result<Option<D2Witness>> {
    bounds.check_family("D2 recognition", d.order())?;
    let identity: Vec<usize> = (0..d.order()).collect();
    Ok(color_d2(d).map(|c| d2_from_colors(&c, &identity)))
}

/// Splits are tried with the `D2` part as a bitmask in increasing order.
fn recognize_d3(d: &Digraph, bounds: &SearchBounds) -> Result<Option<D3Witness>> {
    let n = d.order();
    bounds.check_family("D3 recognition", n)?;
    if !(6..64).contains(&n) {
        // the smallest D1 part with a V' vertex has 3 vertices, as does C_3^0
        return Ok(None);
    }
    for mask in 1u64..(1u64 << n) - 1 {
        let part2 = VertexSet::from_members(n, (0..n).filter(|&v| mask >> v & 1 == 1));
        let part1 = part2.complement();
        if part1.len() < 3 || part2.len() < 3 {
            continue;
        }
        if arc_between(d, &part2, &part1) {
            continue;
        }
        let tails = VertexSet::from_members(
            n,
            part1
                .iter()
                .filter(|&u| d.out_neighbors(u).iter().any(|v| part2.contains(v))),
        );
        if tails.is_empty() {
            continue;
        }
        let (sub2, map2) = d.induced_set(&part2);
        let Some(colors) = color_d2(&sub2) else {
            continue;
        };
        let (sub1, map1) = d.induced_set(&part1);
        let forced = VertexSet::from_members(
            sub1.order(),
            (0..sub1.order()).filter(|&i| tails.contains(map1[i])),
        );
        if let Some(local) = search_d1(&sub1, forced) {
            let lift = |xs: &[usize]| xs.iter().map(|&i| map1[i]).collect::<Vec<_>>();
            let part1 = D1Witness {
                w: lift(&local.w),
                z: lift(&local.z),
                vp: lift(&local.vp),
                trivial: false,
            };
            return Ok(Some(D3Witness {
                part1,
                part2: d2_from_colors(&colors, &map2),
            }));
        }
    }
    Ok(None)
}

/// First `(S, S')` with `S` ranging over the ECD sets of `F` and `S'` over
/// the ECD sets of `F - S`, both in lexicographic order.
fn recognize_d0(f: &Digraph, bounds: &SearchBounds) -> Result<Option<D0Witness>> {
    let n = f.order();
    for s in enumerate_ecd_sets(f, bounds)? {
        let s_set = VertexSet::from_members(n, s.iter().copied());
        let rest = s_set.complement();
        if rest.is_empty() {
            return Ok(Some(D0Witness { s, sp: Vec::new() }));
        }
        let (sub, map) = f.induced_set(&rest);
        for local in enumerate_ecd_sets(&sub, bounds)? {
            let sp: Vec<usize> = local.iter().map(|&i| map[i]).collect();
            let sp_set = VertexSet::from_members(n, sp.iter().copied());
            if !arc_between(f, &sp_set, &s_set) {
                return Ok(Some(D0Witness { s, sp }));
            }
        }
    }
    Ok(None)
}

/// Target of an extra arc added by [`construct_d1`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Hub {
    /// the vertex `w_i` created for block `i` of the first partition
    W(usize),
    /// the vertex `z_i` created for block `i` of the second partition
    Z(usize),
}

fn check_partition(universe: usize, blocks: &[Vec<usize>], what: &str) -> Result<()> {
    let mut seen = vec![false; universe];
    for block in blocks {
        if block.is_empty() {
            return Err(Error::precondition(format!("{what} has an empty block")));
        }
        for &v in block {
            if v >= universe {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    order: universe,
                });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::precondition(format!(
                    "{what} lists vertex {v} twice"
                )));
            }
        }
    }
    if let Some(v) = seen.iter().position(|s| !s) {
        return Err(Error::precondition(format!("{what} misses vertex {v}")));
    }
    Ok(())
}

/// Builds a `D1` member from a base digraph `D'` and two partitions of its
/// vertices. The result has `V(D')` first, then `w_1..w_p`, then
/// `z_1..z_r`; `extra` lists arcs from `V(D')` to the new vertices.
pub fn construct_d1(
    base: &Digraph,
    pi1: &[Vec<usize>],
    pi2: &[Vec<usize>],
    extra: &[(usize, Hub)],
) -> Result<(Digraph, D1Witness)> {
    let m = base.order();
    if m == 0 {
        return Err(Error::precondition("the base digraph must have a vertex"));
    }
    check_partition(m, pi1, "first partition")?;
    check_partition(m, pi2, "second partition")?;
    let (p, r) = (pi1.len(), pi2.len());
    let n = m + p + r;
    let mut arcs = Vec::new();
    for (i, block) in pi1.iter().enumerate() {
        arcs.extend(block.iter().map(|&v| (m + i, v)));
    }
    for (i, block) in pi2.iter().enumerate() {
        arcs.extend(block.iter().map(|&v| (m + p + i, v)));
    }
    for &(v, hub) in extra {
        if v >= m {
            return Err(Error::precondition(format!(
                "extra arc must start in V(D'), not at {v}"
            )));
        }
        let head = match hub {
            Hub::W(i) if i < p => m + i,
            Hub::Z(i) if i < r => m + p + i,
            _ => {
                return Err(Error::precondition(format!(
                    "extra arc targets unknown {hub:?}"
                )))
            }
        };
        arcs.push((v, head));
    }
    let d = base.with_extra_arcs(n, arcs);
    let witness = D1Witness {
        w: (m..m + p).collect(),
        z: (m + p..n).collect(),
        vp: (0..m).collect(),
        trivial: false,
    };
    Ok((d, witness))
}

/// Builds a `D2` member with `|U_i| = sizes[i]`. `arcs[i]` lists pairs
/// `(a, b)` meaning the `a`-th vertex of `U_{i+1}` dominates the `b`-th
/// vertex of `U_{i+2}` (indices cyclic); every vertex must be dominated
/// exactly once. Labels are `U1`, then `U2`, then `U3`.
pub fn construct_d2(
    sizes: [usize; 3],
    arcs: [&[(usize, usize)]; 3],
) -> Result<(Digraph, D2Witness)> {
    if sizes.contains(&0) {
        return Err(Error::precondition(
            "every block of a D2 member is nonempty",
        ));
    }
    let offset = [0, sizes[0], sizes[0] + sizes[1]];
    let n = sizes.iter().sum();
    let mut all = Vec::new();
    for i in 0..3 {
        let next = (i + 1) % 3;
        let mut hits = vec![0usize; sizes[next]];
        for &(a, b) in arcs[i] {
            if a >= sizes[i] || b >= sizes[next] {
                return Err(Error::precondition(format!(
                    "dominator pair ({a}, {b}) out of range for U{} -> U{}",
                    i + 1,
                    next + 1
                )));
            }
            hits[b] += 1;
            all.push((offset[i] + a, offset[next] + b));
        }
        if let Some(b) = hits.iter().position(|&h| h != 1) {
            return Err(Error::precondition(format!(
                "vertex {b} of U{} has {} dominators in U{}",
                next + 1,
                hits[b],
                i + 1
            )));
        }
    }
    let d = Digraph::new(n, all)?;
    let witness = D2Witness {
        u1: (0..offset[1]).collect(),
        u2: (offset[1]..offset[2]).collect(),
        u3: (offset[2]..n).collect(),
    };
    Ok((d, witness))
}

/// Joins a `D1` member and a `D2` member with arcs from the `V'` block of
/// the first into the second. Labels of the `D2` member are shifted by the
/// order of the `D1` member.
pub fn construct_d3(
    d1: (&Digraph, &D1Witness),
    d2: (&Digraph, &D2Witness),
    cross: &[(usize, usize)],
) -> Result<(Digraph, D3Witness)> {
    d1.1.validate(d1.0)?;
    d2.1.validate(d2.0)?;
    if cross.is_empty() {
        return Err(Error::precondition(
            "a D3 member needs an arc from V' into the D2 part",
        ));
    }
    let shift = d1.0.order();
    let mut arcs = Vec::new();
    for &(u, v) in cross {
        if !d1.1.vp.contains(&u) {
            return Err(Error::precondition(format!(
                "cross arc must start in V', not at {u}"
            )));
        }
        if v >= d2.0.order() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                order: d2.0.order(),
            });
        }
        arcs.push((u, shift + v));
    }
    let joined = d1.0.disjoint_union(d2.0);
    let d = joined.with_extra_arcs(joined.order(), arcs);
    let lift = |xs: &[usize]| xs.iter().map(|&v| v + shift).collect();
    let witness = D3Witness {
        part1: d1.1.clone(),
        part2: D2Witness {
            u1: lift(&d2.1.u1),
            u2: lift(&d2.1.u2),
            u3: lift(&d2.1.u3),
        },
    };
    Ok((d, witness))
}

/// Two-stage external-dominator construction `D -> D_p -> D_{p,r}`.
///
/// `w_partition` partitions `V(D)` and adds `w_1..w_p` after `V(D)`;
/// `b` lists pairs `(v, j)` adding arcs `v -> w_j`. `z_partition`
/// partitions `V(D_p)` and adds `z_1..z_r` after that; `bp` lists pairs
/// `(v, i)` adding arcs `v -> z_i`. Tails of both lists must lie in `V(D)`.
/// An arcless `D` is returned unchanged.
pub fn construct_dpr(
    base: &Digraph,
    w_partition: &[Vec<usize>],
    b: &[(usize, usize)],
    z_partition: &[Vec<usize>],
    bp: &[(usize, usize)],
) -> Result<(Digraph, D0Witness)> {
    let m = base.order();
    if base.is_arcless() {
        return Ok((
            base.clone(),
            D0Witness {
                s: (0..m).collect(),
                sp: Vec::new(),
            },
        ));
    }
    check_partition(m, w_partition, "W-partition")?;
    let p = w_partition.len();
    let np = m + p;
    check_partition(np, z_partition, "Z-partition")?;
    let r = z_partition.len();
    let n = np + r;

    let mut arcs = Vec::new();
    for (j, block) in w_partition.iter().enumerate() {
        arcs.extend(block.iter().map(|&v| (m + j, v)));
    }
    for &(v, j) in b {
        if v >= m || j >= p {
            return Err(Error::precondition(format!(
                "B arc ({v}, w{j}) must run from V(D) to some w_j"
            )));
        }
        arcs.push((v, m + j));
    }
    for (i, block) in z_partition.iter().enumerate() {
        arcs.extend(block.iter().map(|&v| (np + i, v)));
    }
    for &(v, i) in bp {
        if v >= m || i >= r {
            return Err(Error::precondition(format!(
                "B' arc ({v}, z{i}) must run from V(D) to some z_i"
            )));
        }
        arcs.push((v, np + i));
    }
    let d = base.with_extra_arcs(n, arcs);
    Ok((
        d,
        D0Witness {
            s: (np..n).collect(),
            sp: (m..np).collect(),
        },
    ))
}
