//! Direct products of oriented cycles and of oriented paths.

use serde::Serialize;

use super::DecisionReport;
use crate::bitset::VertexSet;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::generators::{gen_cycle, gen_path, CyclePattern, PathPattern};
use crate::products::{flatten, fold_product, unflatten, ProductKind};

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Shape of `C_{k1} × ... × C_{kt}` for sink-free cycles: the number of
/// components and their common length. Every component is a sink-free
/// cycle of length `lcm(k1, .., kt)`, and there are `k1 ... kt / lcm` of
/// them. For two factors the count is `gcd(k1, k2)`; from three factors on
/// it can exceed the gcd, e.g. `C_2 × C_2 × C_2` has four components.
pub fn direct_cycle_structure(ks: &[usize]) -> Result<(usize, usize)> {
    let (&first, rest) = ks
        .split_first()
        .ok_or_else(|| Error::precondition("at least one cycle length is needed"))?;
    if ks.contains(&0) {
        return Err(Error::precondition("cycle lengths must be positive"));
    }
    Ok(rest.iter().fold((1, first), |(count, len), &k| {
        let g = gcd(len, k);
        (count * g, len / g * k)
    }))
}

/// In-neighbors other than `v` itself.
fn proper_in(d: &Digraph, v: usize) -> impl Iterator<Item = usize> + '_ {
    d.in_neighbors(v).iter().filter(move |&u| u != v)
}

fn check_max_degree_two(c: &Digraph) -> Result<()> {
    for v in 0..c.order() {
        let mut nbrs = c.out_neighbors(v).clone();
        nbrs.union_with(c.in_neighbors(v));
        nbrs.remove(v);
        if nbrs.len() > 2 {
            return Err(Error::precondition(format!(
                "vertex {v} has degree above 2; not a cycle or path"
            )));
        }
    }
    Ok(())
}

/// Sources that reach `v` along a directed path with no source or sink in
/// its interior, with the length of that path. A source reports itself at
/// distance 0, a sink on a cycle with sources gets one entry per side, and
/// a vertex of a sink-free cycle gets none.
pub fn neighboring_source_distances(c: &Digraph, v: usize) -> Result<Vec<(usize, usize)>> {
    let n = c.order();
    if v >= n {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            order: n,
        });
    }
    check_max_degree_two(c)?;
    let ins: Vec<usize> = proper_in(c, v).collect();
    if ins.is_empty() {
        return Ok(vec![(v, 0)]);
    }
    let mut found = Vec::new();
    for start in ins {
        let (mut cur, mut dist) = (start, 1);
        loop {
            let back: Vec<usize> = proper_in(c, cur).collect();
            match back.as_slice() {
                [] => {
                    found.push((cur, dist));
                    break;
                }
                // went around a sink-free cycle
                _ if dist > n => return Ok(Vec::new()),
                [u] => cur = *u,
                _ => {
                    return Err(Error::precondition(format!(
                        "vertex {cur} is a sink inside a path"
                    )))
                }
            }
            dist += 1;
        }
    }
    Ok(found)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SinkDistances {
    pub sink: usize,
    pub sources: Vec<(usize, usize)>,
}

/// Blocks of the ECD set `A ∪ R ∪ Q'` of a cycle with sinks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirectCycleWitness {
    /// non-extreme vertices at even distance from their neighboring source
    pub a: Vec<usize>,
    /// the sources
    pub r: Vec<usize>,
    /// sinks at even distance from both neighboring sources
    pub qp: Vec<usize>,
    pub sinks: Vec<SinkDistances>,
}

impl DirectCycleWitness {
    pub fn set(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self
            .a
            .iter()
            .chain(&self.r)
            .chain(&self.qp)
            .copied()
            .collect();
        s.sort_unstable();
        s
    }
}

/// The witness for a cycle with at least one sink, or `None` when some sink
/// lies at odd distance from both of its neighboring sources.
pub fn direct_cycle_witness(pattern: &CyclePattern) -> Result<Option<DirectCycleWitness>> {
    if pattern.sinks().is_empty() {
        return Err(Error::precondition(format!("cycle {pattern} has no sinks")));
    }
    let c = gen_cycle(pattern);
    let (mut a, mut r, mut qp, mut sinks) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for v in 0..c.order() {
        let dists = neighboring_source_distances(&c, v)?;
        let even = dists.iter().filter(|(_, d)| d % 2 == 0).count();
        if proper_in(&c, v).count() == 0 {
            r.push(v);
        } else if c.out_degree(v) == 0 {
            match even {
                0 => return Ok(None),
                2 => qp.push(v),
                _ => {}
            }
            sinks.push(SinkDistances {
                sink: v,
                sources: dists,
            });
        } else if even == 1 {
            a.push(v);
        }
    }
    Ok(Some(DirectCycleWitness { a, r, qp, sinks }))
}

/// Walks every component of a digraph whose vertices all have one in- and
/// one out-neighbor and keeps every other vertex.
fn alternate_along_cycles(p: &Digraph) -> Result<Vec<usize>> {
    let n = p.order();
    let mut seen = VertexSet::new(n);
    let mut set = Vec::new();
    for start in 0..n {
        if seen.contains(start) {
            continue;
        }
        let mut cycle = vec![start];
        seen.insert(start);
        let mut cur = start;
        loop {
            let next = p
                .out_neighbors(cur)
                .first()
                .filter(|_| p.out_degree(cur) == 1)
                .ok_or_else(|| {
                    Error::witness(format!("vertex {cur} does not lie on a directed cycle"))
                })?;
            if next == start {
                break;
            }
            if !seen.insert(next) {
                return Err(Error::witness(format!("vertex {next} revisited")));
            }
            cycle.push(next);
            cur = next;
        }
        if cycle.len() > 1 && cycle.len() % 2 == 1 {
            return Err(Error::witness(format!(
                "component of vertex {start} is an odd cycle"
            )));
        }
        set.extend(cycle.into_iter().step_by(2));
    }
    set.sort_unstable();
    Ok(set)
}

/// ECD set of the direct product of `patterns` in the given order, where
/// only the last pattern may have sinks and `witness` describes it.
pub fn build_ecd_direct_cycles(
    patterns: &[CyclePattern],
    witness: Option<&DirectCycleWitness>,
) -> Result<Vec<usize>> {
    let (last, init) = patterns
        .split_last()
        .ok_or_else(|| Error::precondition("at least one cycle is needed"))?;
    if init.iter().any(|p| !p.sinks().is_empty()) {
        return Err(Error::precondition("only the last cycle may have sinks"));
    }
    match (last.sinks().is_empty(), witness) {
        (true, None) => {
            let factors: Vec<Digraph> = patterns.iter().map(gen_cycle).collect();
            alternate_along_cycles(&fold_product(ProductKind::Direct, &factors)?)
        }
        (false, Some(w)) => {
            let k = last.len();
            let inner = VertexSet::from_members(k, w.set());
            let total: usize = patterns.iter().map(CyclePattern::len).product();
            Ok((0..total).filter(|&x| inner.contains(x % k)).collect())
        }
        _ => Err(Error::witness(
            "witness must be given exactly when the last cycle has sinks",
        )),
    }
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(T::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

/// `C_{k1}^{p1} × ... × C_{kt}^{pt}`. At most one factor may have sinks; if
/// none has, some `k_i` must be even (or all of them equal 1, a single loop);
/// otherwise every sink of the one factor with sinks must be at even
/// distance from one of its neighboring sources.
pub fn decide_direct_cycles(patterns: &[CyclePattern]) -> Result<DecisionReport> {
    if patterns.is_empty() {
        return Err(Error::precondition("at least one cycle is needed"));
    }
    let desc = format!("direct(cycles {})", join(patterns));
    let factors: Vec<Digraph> = patterns.iter().map(gen_cycle).collect();
    let p = fold_product(ProductKind::Direct, &factors)?;
    let bearing: Vec<usize> = (0..patterns.len())
        .filter(|&i| !patterns[i].sinks().is_empty())
        .collect();
    match bearing.as_slice() {
        [] => {
            let ks: Vec<usize> = patterns.iter().map(CyclePattern::len).collect();
            if ks.iter().any(|k| k % 2 == 0) || ks.iter().all(|&k| k == 1) {
                let set = build_ecd_direct_cycles(patterns, None)?;
                DecisionReport::positive(desc, &p, set, Vec::new())
            } else {
                Ok(DecisionReport::negative(
                    desc,
                    &p,
                    "all cycle lengths are odd",
                ))
            }
        }
        &[j] => {
            let Some(witness) = direct_cycle_witness(&patterns[j])? else {
                return Ok(DecisionReport::negative(
                    desc,
                    &p,
                    "a sink is at odd distance from both neighboring sources",
                ));
            };
            let perm: Vec<usize> = (0..patterns.len()).filter(|&i| i != j).chain([j]).collect();
            let moved: Vec<CyclePattern> = perm.iter().map(|&i| patterns[i].clone()).collect();
            let local = build_ecd_direct_cycles(&moved, Some(&witness))?;
            let radices: Vec<usize> = patterns.iter().map(CyclePattern::len).collect();
            let moved_radices: Vec<usize> = moved.iter().map(CyclePattern::len).collect();
            let mut set: Vec<usize> = local
                .into_iter()
                .map(|x| {
                    let mc = unflatten(&moved_radices, x);
                    let mut coords = vec![0; perm.len()];
                    for (slot, &i) in perm.iter().enumerate() {
                        coords[i] = mc[slot];
                    }
                    flatten(&radices, &coords)
                })
                .collect();
            set.sort_unstable();
            DecisionReport::positive(desc, &p, set, Vec::new())
        }
        _ => Ok(DecisionReport::negative(desc, &p, "two factors have sinks")),
    }
}

/// All sources of a digraph in which every other vertex has exactly one
/// in-neighbor, plus every vertex at even distance from its source.
pub fn path_product_certificate(p: &Digraph) -> Result<Vec<usize>> {
    let n = p.order();
    let mut set = Vec::new();
    for v in 0..n {
        let (mut cur, mut dist) = (v, 0);
        loop {
            let mut back = proper_in(p, cur);
            let Some(u) = back.next() else { break };
            if back.next().is_some() {
                return Err(Error::precondition(format!(
                    "vertex {cur} has two in-neighbors"
                )));
            }
            cur = u;
            dist += 1;
            if dist > n {
                return Err(Error::precondition("directed cycle found"));
            }
        }
        if dist % 2 == 0 {
            set.push(v);
        }
    }
    Ok(set)
}

/// `P_{k1} × ... × P_{kt}` is ECD exactly when no factor has a sink of
/// degree 2. A one-vertex factor makes the product arcless, hence ECD
/// whatever the other factors are.
pub fn decide_direct_paths(patterns: &[PathPattern]) -> Result<DecisionReport> {
    if patterns.is_empty() {
        return Err(Error::precondition("at least one path is needed"));
    }
    let desc = format!("direct(paths {})", join(patterns));
    let factors: Vec<Digraph> = patterns.iter().map(gen_path).collect();
    let p = fold_product(ProductKind::Direct, &factors)?;
    let trivial = patterns.iter().any(|w| w.order() == 1);
    if !trivial {
        if let Some(i) = patterns.iter().position(PathPattern::has_internal_sink) {
            return Ok(DecisionReport::negative(
                desc,
                &p,
                format!("factor {i} has a sink of degree 2"),
            ));
        }
    }
    let set = path_product_certificate(&p)?;
    DecisionReport::positive(desc, &p, set, Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::find_ecd_set;

    fn cyc(w: &str) -> CyclePattern {
        w.parse().unwrap()
    }

    fn directed(k: usize) -> CyclePattern {
        CyclePattern::directed(k).unwrap()
    }

    #[test]
    fn structure_of_sink_free_products() {
        assert_eq!(direct_cycle_structure(&[4, 6]).unwrap(), (2, 12));
        assert_eq!(direct_cycle_structure(&[2, 2]).unwrap(), (2, 2));
        assert_eq!(direct_cycle_structure(&[5]).unwrap(), (1, 5));
        assert_eq!(direct_cycle_structure(&[2, 2, 2]).unwrap(), (4, 2));
        assert!(direct_cycle_structure(&[]).is_err());

        let factors: Vec<Digraph> = [2, 2].iter().map(|&k| gen_cycle(&directed(k))).collect();
        let p = fold_product(ProductKind::Direct, &factors).unwrap();
        assert_eq!(p.components().len(), 2);
    }

    #[test]
    fn neighboring_sources() {
        // source 0, sink 2: 0 -> 1 -> 2 <- 3 <- 4 <- 5 <- 0
        let c = gen_cycle(&cyc("cw cw ccw ccw ccw ccw"));
        assert_eq!(
            neighboring_source_distances(&c, 2).unwrap(),
            vec![(0, 2), (0, 4)]
        );
        assert_eq!(neighboring_source_distances(&c, 0).unwrap(), vec![(0, 0)]);
        assert_eq!(neighboring_source_distances(&c, 4).unwrap(), vec![(0, 2)]);

        let alt = gen_cycle(&cyc("cw ccw cw ccw"));
        let d = neighboring_source_distances(&alt, 1).unwrap();
        assert_eq!(d.len(), 2);
        assert!(d.iter().all(|&(_, dist)| dist == 1));

        assert!(neighboring_source_distances(&gen_cycle(&directed(4)), 1)
            .unwrap()
            .is_empty());
        assert!(neighboring_source_distances(&gen_cycle(&directed(2)), 1)
            .unwrap()
            .is_empty());
        let star = Digraph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(neighboring_source_distances(&star, 1).is_err());
    }

    #[test]
    fn sink_free_cycles() {
        assert!(
            decide_direct_cycles(&[directed(4), directed(6)])
                .unwrap()
                .decision
        );
        assert!(
            !decide_direct_cycles(&[directed(3), directed(5)])
                .unwrap()
                .decision
        );
        assert!(
            decide_direct_cycles(&[directed(1), directed(1)])
                .unwrap()
                .decision
        );
        assert_eq!(
            build_ecd_direct_cycles(&[directed(2)], None).unwrap(),
            vec![0]
        );
        for k in 1..=12 {
            let r = decide_direct_cycles(&[directed(k)]).unwrap();
            assert_eq!(r.decision, k % 2 == 0 || k == 1, "k = {k}");
        }
    }

    #[test]
    fn cycles_with_sinks() {
        let alt = cyc("cw ccw cw ccw");
        assert!(
            !decide_direct_cycles(&[directed(4), alt.clone()])
                .unwrap()
                .decision
        );
        let six = cyc("cw cw ccw ccw ccw ccw");
        let r = decide_direct_cycles(&[directed(4), six.clone()]).unwrap();
        assert!(r.decision);
        let r2 = decide_direct_cycles(&[six.clone(), directed(4)]).unwrap();
        assert!(r2.decision);
        assert_eq!(r.certificate_size(), r2.certificate_size());
        assert!(!decide_direct_cycles(&[alt.clone(), six]).unwrap().decision);

        let w = direct_cycle_witness(&cyc("cw cw ccw ccw ccw ccw"))
            .unwrap()
            .unwrap();
        assert_eq!(w.r, vec![0]);
        assert_eq!(w.qp, vec![2]);
        assert_eq!(w.a, vec![4]);
        assert!(direct_cycle_witness(&alt).unwrap().is_none());
    }

    #[test]
    fn paths() {
        let ff: PathPattern = "fwd fwd".parse().unwrap();
        let fb: PathPattern = "fwd bwd".parse().unwrap();
        let f: PathPattern = "fwd".parse().unwrap();
        let r = decide_direct_paths(&[ff.clone(), ff.clone()]).unwrap();
        assert!(r.decision);
        assert!(!decide_direct_paths(&[fb.clone(), ff]).unwrap().decision);
        let single = decide_direct_paths(&[f]).unwrap();
        assert_eq!(single.certificate.unwrap().set, vec![0]);
        let trivial = decide_direct_paths(&[fb.clone(), PathPattern::trivial()]).unwrap();
        assert!(trivial.decision);
        let p = gen_path(&fb);
        assert!(find_ecd_set(&p).is_none());
    }
}
