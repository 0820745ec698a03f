//! Exact ECD search.
//!
//! Finding an ECD set is an exact cover problem: the universe is `V(D)` and
//! the options are the closed out-neighborhoods `N+[w]`. The search
//! repeatedly picks the uncovered vertex with the fewest live candidate
//! dominators (ties to the lowest label) and branches over those candidates
//! in ascending order. A candidate for `u` is any `w` with `u ∈ N+[w]` whose
//! closed out-neighborhood is disjoint from everything already covered.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::digraph::Digraph;
use crate::error::{Error, Result};

/// Size limits for the exponential searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    /// Largest digraph for which all ECD sets are enumerated or `γ` computed.
    pub enumerate: usize,
    /// Largest digraph handed to single-solution search by the front ends.
    pub search: usize,
    /// Largest digraph (or component) searched for a family witness.
    pub family: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            enumerate: 24,
            search: 64,
            family: 12,
        }
    }
}

impl SearchBounds {
    pub fn check_enumerate(&self, what: &'static str, order: usize) -> Result<()> {
        if order > self.enumerate {
            return Err(Error::BoundExceeded {
                what,
                order,
                bound: self.enumerate,
            });
        }
        Ok(())
    }

    pub fn check_search(&self, what: &'static str, order: usize) -> Result<()> {
        if order > self.search {
            return Err(Error::BoundExceeded {
                what,
                order,
                bound: self.search,
            });
        }
        Ok(())
    }

    pub fn check_family(&self, what: &'static str, order: usize) -> Result<()> {
        if order > self.family {
            return Err(Error::BoundExceeded {
                what,
                order,
                bound: self.family,
            });
        }
        Ok(())
    }

    /// Applies `key=value` overrides (`enum`, `search`, `family`) on top of
    /// `self`, e.g. `"enum=20,family=10"`.
    pub fn with_overrides(mut self, spec: &str) -> Result<SearchBounds> {
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::precondition(format!("bound `{part}` is not key=value")))?;
            let value: usize = value.trim().parse().map_err(|_| {
                Error::precondition(format!("bound `{part}` has a non-integer value"))
            })?;
            match key.trim() {
                "enum" | "enumerate" => self.enumerate = value,
                "search" => self.search = value,
                "family" => self.family = value,
                other => return Err(Error::precondition(format!("unknown bound `{other}`"))),
            }
        }
        Ok(self)
    }
}

impl FromStr for SearchBounds {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SearchBounds::default().with_overrides(s)
    }
}

impl fmt::Display for SearchBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "enum={},search={},family={}",
            self.enumerate, self.search, self.family
        )
    }
}

/// An ECD set together with the vertex-to-dominator map it induces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EcdCertificate {
    #[serde(rename = "s")]
    pub set: Vec<usize>,
    /// `dominator[u]` is the unique member of `set` whose closed
    /// out-neighborhood contains `u`.
    pub dominator: Vec<usize>,
}

impl EcdCertificate {
    /// Re-checks the certificate against `d` from scratch.
    pub fn verify(&self, d: &Digraph) -> bool {
        match is_ecd_set(d, &self.set) {
            Ok(Some(cert)) => cert == *self,
            _ => false,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominationNumbers {
    /// Domination number `γ(D)`.
    pub gamma: usize,
    /// Absorbing number `γ_a(D)`.
    pub gamma_a: usize,
}

fn check_members(d: &Digraph, set: &[usize]) -> Result<VertexSet> {
    let n = d.order();
    let mut s = VertexSet::new(n);
    for &v in set {
        if v >= n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                order: n,
            });
        }
        s.insert(v);
    }
    Ok(s)
}

/// `Q -> R`: every vertex of `r` lies in the closed out-neighborhood of some
/// vertex of `q`.
pub fn covers(d: &Digraph, q: &[usize], r: &[usize]) -> Result<bool> {
    let q = check_members(d, q)?;
    let r = check_members(d, r)?;
    let mut reached = VertexSet::new(d.order());
    for v in &q {
        reached.union_with(&d.closed_out(v));
    }
    Ok(r.is_subset(&reached))
}

pub fn is_dominating_set(d: &Digraph, set: &[usize]) -> Result<bool> {
    let all: Vec<usize> = (0..d.order()).collect();
    covers(d, set, &all)
}

/// Checks whether the closed out-neighborhoods of `set` partition `V(D)`.
/// Repeated members are ignored.
pub fn is_ecd_set(d: &Digraph, set: &[usize]) -> Result<Option<EcdCertificate>> {
    let members = check_members(d, set)?;
    Ok(certificate_for(d, &members))
}

fn certificate_for(d: &Digraph, members: &VertexSet) -> Option<EcdCertificate> {
    let n = d.order();
    let mut dominator = vec![usize::MAX; n];
    for s in members {
        for u in &d.closed_out(s) {
            if dominator[u] != usize::MAX {
                return None;
            }
            dominator[u] = s;
        }
    }
    if dominator.contains(&usize::MAX) {
        return None;
    }
    Some(EcdCertificate {
        set: members.to_vec(),
        dominator,
    })
}

struct ExactCover {
    closed_out: Vec<VertexSet>,
    /// `candidates[u]`: every `w` with `u ∈ N+[w]`, ascending.
    candidates: Vec<Vec<usize>>,
}

impl ExactCover {
    fn new(d: &Digraph) -> ExactCover {
        let n = d.order();
        ExactCover {
            closed_out: (0..n).map(|v| d.closed_out(v)).collect(),
            candidates: (0..n).map(|v| d.closed_in(v).to_vec()).collect(),
        }
    }

    /// Picks the branching vertex. `None` means everything is covered;
    /// `Some((u, 0))` is a dead end.
    fn choose(&self, covered: &VertexSet) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for u in covered.complement().iter() {
            let count = self.candidates[u]
                .iter()
                .filter(|&&w| !self.closed_out[w].intersects(covered))
                .count();
            if best.is_none_or(|(_, c)| count < c) {
                best = Some((u, count));
                if count == 0 {
                    break;
                }
            }
        }
        best
    }

    /// Depth-first search; `on_solution` returns `false` to stop.
    fn search<F>(
        &self,
        covered: &mut VertexSet,
        chosen: &mut Vec<usize>,
        on_solution: &mut F,
    ) -> bool
    where
        F: FnMut(&[usize]) -> bool,
    {
        let Some((u, count)) = self.choose(covered) else {
            return on_solution(chosen);
        };
        if count == 0 {
            return true;
        }
        let options: Vec<usize> = self.candidates[u]
            .iter()
            .copied()
            .filter(|&w| !self.closed_out[w].intersects(covered))
            .collect();
        for w in options {
            covered.union_with(&self.closed_out[w]);
            chosen.push(w);
            let keep_going = self.search(covered, chosen, on_solution);
            chosen.pop();
            covered.difference_with(&self.closed_out[w]);
            if !keep_going {
                return false;
            }
        }
        true
    }

    fn first(&self) -> Option<Vec<usize>> {
        let n = self.closed_out.len();
        let mut found = None;
        self.search(&mut VertexSet::new(n), &mut Vec::new(), &mut |s| {
            found = Some(s.to_vec());
            false
        });
        found
    }
}

/// Finds an ECD set, or `None` if `D` is not an ECD digraph.
///
/// Weak components are solved independently; the answer is the union of the
/// first solution of each component in the search order described in the
/// module docs, which coincides with the first solution of the undivided
/// search.
pub fn find_ecd_set(d: &Digraph) -> Option<EcdCertificate> {
    let mut members = VertexSet::new(d.order());
    for comp in d.components() {
        let (sub, map) = d.induced(&comp).expect("component vertices are in range");
        let local = ExactCover::new(&sub).first()?;
        for v in local {
            members.insert(map[v]);
        }
    }
    let cert = certificate_for(d, &members);
    debug_assert!(cert.is_some(), "search produced a non-ECD set");
    cert
}

/// Whether `D` has an ECD set.
pub fn is_ecd_digraph(d: &Digraph) -> bool {
    find_ecd_set(d).is_some()
}

/// All ECD sets, each sorted, in lexicographic order.
pub fn enumerate_ecd_sets(d: &Digraph, bounds: &SearchBounds) -> Result<Vec<Vec<usize>>> {
    bounds.check_enumerate("ECD enumeration", d.order())?;
    let cover = ExactCover::new(d);
    let mut all = Vec::new();
    cover.search(&mut VertexSet::new(d.order()), &mut Vec::new(), &mut |s| {
        let mut s = s.to_vec();
        s.sort_unstable();
        all.push(s);
        true
    });
    all.sort();
    Ok(all)
}

/// Smallest dominating set size, by iterative deepening.
fn min_dominating(d: &Digraph) -> usize {
    let n = d.order();
    let closed_out: Vec<VertexSet> = (0..n).map(|v| d.closed_out(v)).collect();
    let candidates: Vec<Vec<usize>> = (0..n).map(|v| d.closed_in(v).to_vec()).collect();

    fn dominate(
        covered: &VertexSet,
        budget: usize,
        closed_out: &[VertexSet],
        candidates: &[Vec<usize>],
    ) -> bool {
        let uncovered = covered.complement();
        let missing = uncovered.len();
        if missing == 0 {
            return true;
        }
        if budget == 0 {
            return false;
        }
        let gain = closed_out
            .iter()
            .map(|c| c.intersection_len(&uncovered))
            .max()
            .unwrap_or(0);
        if gain == 0 || missing > gain * budget {
            return false;
        }
        let u = uncovered
            .iter()
            .min_by_key(|&u| candidates[u].len())
            .expect("some vertex is uncovered");
        candidates[u].iter().any(|&w| {
            let mut next = covered.clone();
            next.union_with(&closed_out[w]);
            dominate(&next, budget - 1, closed_out, candidates)
        })
    }

    let empty = VertexSet::new(n);
    (0..=n)
        .find(|&k| dominate(&empty, k, &closed_out, &candidates))
        .expect("V(D) dominates itself")
}

/// Exact `γ(D)` alone.
pub fn gamma(d: &Digraph, bounds: &SearchBounds) -> Result<usize> {
    bounds.check_enumerate("domination number", d.order())?;
    Ok(min_dominating(d))
}

/// Exact `γ(D)` and `γ_a(D) = γ(D^-)`.
pub fn domination_number(d: &Digraph, bounds: &SearchBounds) -> Result<DominationNumbers> {
    bounds.check_enumerate("domination number", d.order())?;
    Ok(DominationNumbers {
        gamma: min_dominating(d),
        gamma_a: min_dominating(&d.reverse()),
    })
}

/// An efficient closed absorbing set: an ECD set of `D^-`. The certificate's
/// dominator map refers to closed in-neighborhoods of `D`.
pub fn find_eca_set(d: &Digraph) -> Option<EcdCertificate> {
    find_ecd_set(&d.reverse())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(k: usize) -> Digraph {
        Digraph::new(k, (0..k).map(|i| (i, (i + 1) % k))).unwrap()
    }

    fn figure_d() -> Digraph {
        Digraph::new(4, [(1, 0), (1, 2), (3, 1)]).unwrap()
    }

    fn source_star(t: usize) -> Digraph {
        Digraph::new(t + 1, (1..=t).map(|l| (0, l))).unwrap()
    }

    #[test]
    fn domination_checks() {
        let d = figure_d();
        assert!(is_dominating_set(&d, &[0, 1, 2, 3]).unwrap());
        assert!(is_dominating_set(&source_star(3), &[0]).unwrap());
        assert!(!is_dominating_set(&cycle(4), &[0]).unwrap());
        assert!(is_dominating_set(&d, &[9]).is_err());
        assert!(covers(&d, &[3], &[1, 3]).unwrap());
        assert!(!covers(&d, &[3], &[0]).unwrap());
    }

    #[test]
    fn ecd_set_checks() {
        assert!(is_ecd_set(&Digraph::edgeless(1), &[0]).unwrap().is_some());
        let cert = is_ecd_set(&cycle(4), &[0, 2]).unwrap().unwrap();
        assert_eq!(cert.dominator, vec![0, 0, 2, 2]);
        assert!(is_ecd_set(&figure_d(), &[0, 2, 3]).unwrap().is_some());
        assert!(is_ecd_set(&figure_d(), &[1, 3]).unwrap().is_none());
        assert!(is_ecd_set(&figure_d(), &[4]).is_err());
        assert!(is_ecd_set(&Digraph::edgeless(0), &[]).unwrap().is_some());
    }

    #[test]
    fn search_results() {
        assert!(find_ecd_set(&cycle(3)).is_none());
        assert_eq!(find_ecd_set(&cycle(6)).unwrap().set, vec![0, 2, 4]);
        assert_eq!(
            find_ecd_set(&Digraph::edgeless(4)).unwrap().set,
            vec![0, 1, 2, 3]
        );
        let looped = Digraph::new(1, [(0, 0)]).unwrap();
        assert_eq!(find_ecd_set(&looped).unwrap().set, vec![0]);
    }

    #[test]
    fn enumeration() {
        let b = SearchBounds::default();
        assert_eq!(
            enumerate_ecd_sets(&cycle(4), &b).unwrap(),
            vec![vec![0, 2], vec![1, 3]]
        );
        assert_eq!(
            enumerate_ecd_sets(&Digraph::edgeless(1), &b).unwrap(),
            vec![vec![0]]
        );
        assert!(enumerate_ecd_sets(&cycle(5), &b).unwrap().is_empty());
        assert!(enumerate_ecd_sets(&cycle(25), &b)
            .unwrap_err()
            .is_bound_exceeded());
    }

    #[test]
    fn domination_numbers() {
        let b = SearchBounds::default();
        for t in 1..=5 {
            let g = domination_number(&source_star(t), &b).unwrap();
            assert_eq!(
                g,
                DominationNumbers {
                    gamma: 1,
                    gamma_a: t
                }
            );
        }
        assert_eq!(domination_number(&cycle(4), &b).unwrap().gamma, 2);
        assert_eq!(
            domination_number(&Digraph::edgeless(1), &b).unwrap(),
            DominationNumbers {
                gamma: 1,
                gamma_a: 1
            }
        );
    }

    #[test]
    fn absorbing_sets() {
        // reversed, every leaf is a source pointing at the center
        assert!(find_eca_set(&source_star(3)).is_none());
        assert_eq!(find_eca_set(&source_star(1)).unwrap().set, vec![1]);
        assert_eq!(
            find_eca_set(&Digraph::edgeless(3)).unwrap().set,
            vec![0, 1, 2]
        );
        assert_eq!(
            find_eca_set(&cycle(4)).is_some(),
            find_ecd_set(&cycle(4)).is_some()
        );
    }

    #[test]
    fn bounds_parse() {
        let b: SearchBounds = "enum=20,search=30,family=8".parse().unwrap();
        assert_eq!(
            b,
            SearchBounds {
                enumerate: 20,
                search: 30,
                family: 8
            }
        );
        assert_eq!(b.to_string().parse::<SearchBounds>().unwrap(), b);
        let partial = SearchBounds::default().with_overrides("family=5").unwrap();
        assert_eq!(partial.enumerate, 24);
        assert!("enum=x".parse::<SearchBounds>().is_err());
        assert!("depth=3".parse::<SearchBounds>().is_err());
    }

    #[test]
    fn certificate_json_keys() {
        let cert = find_ecd_set(&cycle(4)).unwrap();
        assert_eq!(cert.to_json(), r#"{"s":[0,2],"dominator":[0,0,2,2]}"#);
        assert!(cert.verify(&cycle(4)));
        assert!(!cert.verify(&cycle(5)));
    }
}
