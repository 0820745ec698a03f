//! Cartesian products with a sink-free cycle or with an oriented star.

use super::DecisionReport;
use crate::bitset::VertexSet;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::families::{is_ecd_within, recognize, D0Witness, D1Witness, Family, FamilyWitness};
use crate::generators::{gen_cycle, gen_star, CyclePattern, StarMode, StarOrientation, Turn};
use crate::products::{product, ProductKind};
use crate::solver::{find_ecd_set, is_ecd_set, SearchBounds};

/// `order[i]` is the vertex reached after `i` steps along a sink-free
/// cycle, starting from vertex 0.
fn walk_order(pattern: &CyclePattern) -> Result<Vec<usize>> {
    if !pattern.sinks().is_empty() {
        return Err(Error::precondition(format!("cycle {pattern} has sinks")));
    }
    let k = pattern.len();
    Ok(match pattern.word()[0] {
        Turn::Cw => (0..k).collect(),
        Turn::Ccw => (0..k).map(|i| (k - i) % k).collect(),
    })
}

/// ECD set of `D □ C_k` restricted to the vertices a witness describes:
/// `D1` blocks alternate `W, Z` along the cycle, `D2` blocks cycle through
/// `U1, U2, U3`, and `D3` does both on its two parts. Labels are
/// `x * k + c`.
pub fn build_ecd_cartesian_cycle(
    d: &Digraph,
    witness: &FamilyWitness,
    pattern: &CyclePattern,
) -> Result<Vec<usize>> {
    let order = walk_order(pattern)?;
    let k = order.len();
    let need = |div: usize, what: &str| {
        if k % div == 0 {
            Ok(())
        } else {
            Err(Error::witness(format!(
                "{what} clause needs {div} | k, got k = {k}"
            )))
        }
    };
    fn d1<'a>(w: &'a D1Witness, layers: &mut [Vec<&'a [usize]>]) {
        for (step, layer) in layers.iter_mut().enumerate() {
            layer.push(if step % 2 == 0 { &w.w } else { &w.z });
        }
    }
    let mut layers: Vec<Vec<&[usize]>> = vec![Vec::new(); k];
    match witness {
        FamilyWitness::D1(w) => {
            need(2, "D1")?;
            d1(w, &mut layers);
        }
        FamilyWitness::D2(w) => {
            need(3, "D2")?;
            let blocks = [&w.u1, &w.u2, &w.u3];
            for (step, layer) in layers.iter_mut().enumerate() {
                layer.push(blocks[step % 3]);
            }
        }
        FamilyWitness::D3(w) => {
            need(6, "D3")?;
            d1(&w.part1, &mut layers);
            let blocks = [&w.part2.u1, &w.part2.u2, &w.part2.u3];
            for (step, layer) in layers.iter_mut().enumerate() {
                layer.push(blocks[step % 3]);
            }
        }
        FamilyWitness::D0(_) => return Err(Error::witness("a D0 witness describes star products")),
    }
    let mut set = Vec::new();
    for (step, blocks) in layers.iter().enumerate() {
        for &x in blocks.iter().flat_map(|b| b.iter()) {
            if x >= d.order() {
                return Err(Error::VertexOutOfRange {
                    vertex: x,
                    order: d.order(),
                });
            }
            set.push(x * k + order[step]);
        }
    }
    set.sort_unstable();
    Ok(set)
}

/// `D □ C_k` for a sink-free cycle. For `k = 1` the product is `D` with a
/// loop at every vertex, so the answer is whether `D` itself is ECD.
/// Otherwise each weak component must be in `D1` with `2 | k`, in `D2` with
/// `3 | k`, or in `D3` with `6 | k`; components may use different clauses.
pub fn decide_cartesian_cycle(
    d: &Digraph,
    pattern: &CyclePattern,
    bounds: &SearchBounds,
) -> Result<DecisionReport> {
    walk_order(pattern)?;
    let k = pattern.len();
    let p = product(ProductKind::Cartesian, d, &gen_cycle(pattern));
    let desc = format!("cartesian(D[{}], cycle {pattern})", d.order());
    if k == 1 {
        return Ok(match find_ecd_set(d) {
            Some(cert) => DecisionReport::positive(desc, &p, cert.set, Vec::new())?,
            None => DecisionReport::negative(desc, &p, "factor D not ECD"),
        });
    }
    let mut set = Vec::new();
    let mut witnesses = Vec::new();
    for comp in d.components() {
        if bounds.check_family("component", comp.len()).is_err() {
            return Ok(DecisionReport::brute_force(desc, &p));
        }
        let (sub, map) = d.induced(&comp)?;
        let mut found = None;
        for (family, div) in [(Family::D1, 2), (Family::D2, 3), (Family::D3, 6)] {
            if k.is_multiple_of(div) {
                if let Some(w) = recognize(family, &sub, bounds)? {
                    found = Some(w.relabel(&map));
                    break;
                }
            }
        }
        match found {
            Some(w) => {
                set.extend(build_ecd_cartesian_cycle(d, &w, pattern)?);
                witnesses.push(w);
            }
            None => {
                let why = format!("component of vertex {} fits no clause for k = {k}", comp[0]);
                return Ok(DecisionReport::negative(desc, &p, why));
            }
        }
    }
    set.sort_unstable();
    DecisionReport::positive(desc, &p, set, witnesses)
}

/// `(S × {center}) ∪ (S' × leaves)` in `F □ K_{1,t}` with the center a
/// source. Labels are `x * (t + 1) + s`, the center being `s = 0`.
pub fn build_ecd_cartesian_star(
    f: &Digraph,
    witness: &D0Witness,
    leaves: usize,
) -> Result<Vec<usize>> {
    witness.validate(f)?;
    let width = leaves + 1;
    let mut set: Vec<usize> = witness.s.iter().map(|&x| x * width).collect();
    for &x in &witness.sp {
        set.extend((1..=leaves).map(|s| x * width + s));
    }
    set.sort_unstable();
    Ok(set)
}

/// `F □ K_{1,t}`. With the center a source the answer is membership of `F`
/// in `D0`; the other orientations are settled by search.
pub fn decide_cartesian_star(
    f: &Digraph,
    o: &StarOrientation,
    bounds: &SearchBounds,
) -> Result<DecisionReport> {
    let p = product(ProductKind::Cartesian, f, &gen_star(o)?);
    let mode = match o.mode {
        StarMode::CenterSource => "center-source".to_string(),
        StarMode::CenterSink => "center-sink".to_string(),
        StarMode::Mixed { sources, sinks } => format!("mixed {sources}+{sinks}"),
    };
    let desc = format!("cartesian(F[{}], star {} {mode})", f.order(), o.leaves);
    if o.mode != StarMode::CenterSource {
        return Ok(DecisionReport::brute_force(desc, &p));
    }
    match recognize(Family::D0, f, bounds) {
        Err(e) if e.is_bound_exceeded() => Ok(DecisionReport::brute_force(desc, &p)),
        Err(e) => Err(e),
        Ok(None) => Ok(DecisionReport::negative(desc, &p, "F not in D0")),
        Ok(Some(FamilyWitness::D0(w))) => {
            let set = build_ecd_cartesian_star(f, &w, o.leaves)?;
            DecisionReport::positive(desc, &p, set, vec![FamilyWitness::D0(w)])
        }
        Ok(Some(_)) => unreachable!("D0 recognition returns D0 witnesses"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedStarOutcome {
    pub set: Vec<usize>,
    /// whether `set` really is an ECD set of the product
    pub verified: bool,
}

/// Checks the block conditions for a star with `t1` source leaves:
/// `blocks` has `t1 + 3` (possibly empty) blocks partitioning `V(F)`.
pub fn mixed_star_preconditions(f: &Digraph, blocks: &[Vec<usize>], t1: usize) -> Result<()> {
    let n = f.order();
    if t1 == 0 {
        return Err(Error::precondition("the mixed star needs a source leaf"));
    }
    if blocks.len() != t1 + 3 {
        return Err(Error::precondition(format!(
            "expected {} blocks, got {}",
            t1 + 3,
            blocks.len()
        )));
    }
    let mut sets = Vec::with_capacity(blocks.len());
    let mut seen = VertexSet::new(n);
    for block in blocks {
        let mut s = VertexSet::new(n);
        for &v in block {
            if v >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    order: n,
                });
            }
            if seen.contains(v) {
                return Err(Error::precondition(format!("vertex {v} is in two blocks")));
            }
            seen.insert(v);
            s.insert(v);
        }
        sets.push(s);
    }
    if seen.len() != n {
        return Err(Error::precondition("blocks do not cover V(F)"));
    }
    let all = VertexSet::full(n);
    for (i, w) in sets[..t1].iter().enumerate() {
        if !is_ecd_within(f, w, &all) {
            return Err(Error::precondition(format!(
                "W{} is not an ECD set of F",
                i + 1
            )));
        }
    }
    let (a, b, c) = (&sets[t1], &sets[t1 + 1], &sets[t1 + 2]);
    let mut abc = a.clone();
    abc.union_with(b);
    abc.union_with(c);
    if !is_ecd_within(f, a, &abc) {
        return Err(Error::precondition(format!(
            "W{} is not ECD in its induced part",
            t1 + 1
        )));
    }
    let mut bc = b.clone();
    bc.union_with(c);
    for u in a {
        if let Some(v) = f
            .out_neighbors(u)
            .iter()
            .find(|&v| v != u && !bc.contains(v))
        {
            return Err(Error::precondition(format!(
                "arc ({u}, {v}) leaves W{} outside W{} ∪ W{}",
                t1 + 1,
                t1 + 2,
                t1 + 3
            )));
        }
    }
    if !is_ecd_within(f, b, &a.complement()) {
        return Err(Error::precondition(format!(
            "W{} is not ECD in its induced part",
            t1 + 2
        )));
    }
    for u in b {
        if let Some(v) = f.out_neighbors(u).iter().find(|&v| a.contains(v)) {
            return Err(Error::precondition(format!(
                "arc ({u}, {v}) runs from W{} into W{}",
                t1 + 2,
                t1 + 1
            )));
        }
    }
    Ok(())
}

/// The set proposed for `F □ K_{1,t}` with `t1` source leaves and `t2`
/// sink leaves, together with the outcome of checking it. The claim comes
/// without proof, so a failed check is reported rather than raised.
pub fn build_mixed_star_ecd(
    f: &Digraph,
    blocks: &[Vec<usize>],
    t1: usize,
    t2: usize,
) -> Result<MixedStarOutcome> {
    mixed_star_preconditions(f, blocks, t1)?;
    let t = t1 + t2;
    let star = gen_star(&StarOrientation::mixed(t1, t2))?;
    let p = product(ProductKind::Cartesian, f, &star);
    let width = t + 1;
    let mut set = Vec::new();
    for (i, block) in blocks[..t1].iter().enumerate() {
        set.extend(block.iter().map(|&x| x * width + i + 1));
    }
    set.extend(blocks[t1].iter().map(|&x| x * width));
    for &x in &blocks[t1 + 1] {
        set.extend((t1 + 1..=t).map(|s| x * width + s));
    }
    set.sort_unstable();
    let verified = is_ecd_set(&p, &set)?.is_some();
    Ok(MixedStarOutcome { set, verified })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{construct_d2, construct_dpr};
    use crate::theorems::Method;

    fn cycle(word: &str) -> CyclePattern {
        word.parse().unwrap()
    }

    fn directed(k: usize) -> CyclePattern {
        CyclePattern::directed(k).unwrap()
    }

    fn c3() -> Digraph {
        Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn single_vertex_times_cycle() {
        let b = SearchBounds::default();
        let one = Digraph::edgeless(1);
        assert!(
            decide_cartesian_cycle(&one, &directed(4), &b)
                .unwrap()
                .decision
        );
        assert!(
            !decide_cartesian_cycle(&one, &directed(3), &b)
                .unwrap()
                .decision
        );
        assert!(
            decide_cartesian_cycle(&one, &directed(1), &b)
                .unwrap()
                .decision
        );
    }

    #[test]
    fn three_cycle_times_cycle() {
        let b = SearchBounds::default();
        let r = decide_cartesian_cycle(&c3(), &directed(6), &b).unwrap();
        assert!(r.decision);
        assert_eq!(r.method, Method::Theorem);
        assert_eq!(r.certificate_size(), Some(6));
        assert!(
            !decide_cartesian_cycle(&c3(), &directed(4), &b)
                .unwrap()
                .decision
        );
        let diag = decide_cartesian_cycle(&c3(), &directed(3), &b).unwrap();
        assert_eq!(diag.certificate.unwrap().set, vec![0, 4, 8]);
    }

    #[test]
    fn reversed_cycle_is_handled() {
        let b = SearchBounds::default();
        let r = decide_cartesian_cycle(&c3(), &cycle("ccwccwccw"), &b).unwrap();
        assert!(r.decision);
        assert!(decide_cartesian_cycle(&c3(), &cycle("cwccwcwccw"), &b).is_err());
    }

    #[test]
    fn mixed_clauses_across_components() {
        let b = SearchBounds::default();
        let d = Digraph::edgeless(1).disjoint_union(&c3());
        let r = decide_cartesian_cycle(&d, &directed(6), &b).unwrap();
        assert!(r.decision);
        assert_eq!(r.witnesses.len(), 2);
        assert!(
            !decide_cartesian_cycle(&d, &directed(3), &b)
                .unwrap()
                .decision
        );
        assert!(
            !decide_cartesian_cycle(&d, &directed(2), &b)
                .unwrap()
                .decision
        );
    }

    #[test]
    fn oversized_component_falls_back_to_search() {
        let b: SearchBounds = "family=2".parse().unwrap();
        let r = decide_cartesian_cycle(&c3(), &directed(3), &b).unwrap();
        assert_eq!(r.method, Method::BruteForce);
        assert!(r.decision);
    }

    #[test]
    fn star_products() {
        let b = SearchBounds::default();
        for t in 1..=3 {
            let r = decide_cartesian_star(
                &Digraph::edgeless(2),
                &StarOrientation::center_source(t),
                &b,
            )
            .unwrap();
            assert!(r.decision);
            assert_eq!(r.certificate_size(), Some(2));
        }
        let digon = Digraph::new(2, [(0, 1), (1, 0)]).unwrap();
        let r = decide_cartesian_star(&digon, &StarOrientation::center_source(1), &b).unwrap();
        assert!(!r.decision);

        let arc = Digraph::new(2, [(0, 1)]).unwrap();
        let (f, _) = construct_dpr(&arc, &[vec![0, 1]], &[], &[vec![0, 1, 2]], &[]).unwrap();
        let r = decide_cartesian_star(&f, &StarOrientation::center_source(1), &b).unwrap();
        assert!(r.decision);
        assert_eq!(r.certificate_size(), Some(2));

        let sink = decide_cartesian_star(&arc, &StarOrientation::center_sink(2), &b).unwrap();
        assert_eq!(sink.method, Method::BruteForce);
    }

    #[test]
    fn mixed_star_remark() {
        let one = [(0, 0)];
        let (c3, _) = construct_d2([1, 1, 1], [&one, &one, &one]).unwrap();
        assert!(build_mixed_star_ecd(&c3, &[vec![0], vec![], vec![], vec![]], 0, 1).is_err());
        // W3 has to reach all of W1, which the edgeless digraph cannot do
        let e = Digraph::edgeless(2);
        assert!(mixed_star_preconditions(&e, &[vec![0, 1], vec![], vec![], vec![]], 1).is_err());

        let f = Digraph::new(3, [(0, 1), (1, 0), (2, 1), (0, 2)]).unwrap();
        let blocks = [vec![0], vec![2], vec![1], vec![]];
        let out = build_mixed_star_ecd(&f, &blocks, 1, 1).unwrap();
        assert!(out.verified);
        assert_eq!(out.set.len(), 3);
    }
}
