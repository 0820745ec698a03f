//! Named digraph families: oriented cycles `C_k^p`, oriented paths, oriented
//! stars, and the orientation of an undirected graph around an independent
//! dominating set.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::digraph::Digraph;
use crate::error::{Error, Result};

/// Orientation of the cycle edge between positions `i` and `i + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Turn {
    /// arc `i -> i + 1`
    Cw,
    /// arc `i + 1 -> i`
    Ccw,
}

/// Orientation of the path edge between positions `i` and `i + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Step {
    /// arc `i -> i + 1`
    Fwd,
    /// arc `i + 1 -> i`
    Bwd,
}

/// Splits a word such as `"cwccwcw"`, `"cw,ccw"` or `"cw ccw"` into tokens
/// drawn from `alphabet`. Longer tokens are tried first.
fn tokenize<'a>(text: &str, alphabet: &[&'a str]) -> Result<Vec<&'a str>> {
    let mut rest: &str = text.trim();
    let mut tokens = Vec::new();
    while !rest.is_empty() {
        rest = rest.trim_start_matches([',', ' ', '\t']);
        if rest.is_empty() {
            break;
        }
        let lower = rest.to_ascii_lowercase();
        let tok = alphabet
            .iter()
            .copied()
            .filter(|t| lower.starts_with(t))
            .max_by_key(|t| t.len())
            .ok_or_else(|| Error::InvalidPattern(format!("unexpected symbol at `{rest}`")))?;
        tokens.push(tok);
        rest = &rest[tok.len()..];
    }
    Ok(tokens)
}

/// An orientation word for a cycle on `k` vertices.
///
/// Symbol `i` orients the edge between positions `i` and `(i + 1) mod k`.
/// For `k = 1` both symbols denote the loop `C_1^0`. For `k = 2` the word
/// must be constant: a mixed two-letter word would orient both edges of the
/// digon the same way and collapse into a single arc, which is not a cycle.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CyclePattern {
    word: Vec<Turn>,
}

impl CyclePattern {
    pub fn new(word: Vec<Turn>) -> Result<CyclePattern> {
        if word.is_empty() {
            return Err(Error::InvalidPattern("cycle word must be nonempty".into()));
        }
        if word.len() == 2 && word[0] != word[1] {
            return Err(Error::InvalidPattern(
                "a two-vertex cycle needs both arcs in the same rotational direction".into(),
            ));
        }
        Ok(CyclePattern { word })
    }

    /// The sink-free cycle `C_k^0`.
    pub fn directed(k: usize) -> Result<CyclePattern> {
        CyclePattern::new(vec![Turn::Cw; k])
    }

    pub fn word(&self) -> &[Turn] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Positions that are sources: incoming edge `ccw`, outgoing edge `cw`.
    pub fn sources(&self) -> Vec<usize> {
        let k = self.len();
        if k == 1 {
            return Vec::new();
        }
        (0..k)
            .filter(|&i| self.word[(i + k - 1) % k] == Turn::Ccw && self.word[i] == Turn::Cw)
            .collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        let k = self.len();
        if k == 1 {
            return Vec::new();
        }
        (0..k)
            .filter(|&i| self.word[(i + k - 1) % k] == Turn::Cw && self.word[i] == Turn::Ccw)
            .collect()
    }

    /// The `p` in `C_k^p`.
    pub fn source_count(&self) -> usize {
        self.sources().len()
    }

    /// Rotation-minimal representative of this word.
    pub fn canonical_rotation(&self) -> CyclePattern {
        let k = self.len();
        let best = (0..k)
            .map(|r| (0..k).map(|i| self.word[(i + r) % k]).collect::<Vec<_>>())
            .min()
            .expect("nonempty word");
        CyclePattern { word: best }
    }

    /// Every valid word of length `k`, one per rotation class.
    pub fn necklaces(k: usize) -> Vec<CyclePattern> {
        let mut out: Vec<CyclePattern> = (0..1u64 << k)
            .filter_map(|bits| {
                let word = (0..k)
                    .map(|i| {
                        if bits >> i & 1 == 0 {
                            Turn::Cw
                        } else {
                            Turn::Ccw
                        }
                    })
                    .collect();
                CyclePattern::new(word).ok()
            })
            .map(|p| p.canonical_rotation())
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for CyclePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.word {
            f.write_str(match t {
                Turn::Cw => "cw",
                Turn::Ccw => "ccw",
            })?;
        }
        Ok(())
    }
}

impl FromStr for CyclePattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let word = tokenize(s, &["cw", "ccw"])?
            .into_iter()
            .map(|t| if t == "cw" { Turn::Cw } else { Turn::Ccw })
            .collect();
        CyclePattern::new(word)
    }
}

/// An orientation word for a path on `k = word.len() + 1` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PathPattern {
    word: Vec<Step>,
}

impl PathPattern {
    pub fn new(word: Vec<Step>) -> PathPattern {
        PathPattern { word }
    }

    /// The single vertex `P_1`.
    pub fn trivial() -> PathPattern {
        PathPattern { word: Vec::new() }
    }

    pub fn word(&self) -> &[Step] {
        &self.word
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.word.len() + 1
    }

    /// Positions of internal sinks (an adjacent `fwd, bwd` pair).
    pub fn internal_sinks(&self) -> Vec<usize> {
        self.word
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w == &[Step::Fwd, Step::Bwd])
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn has_internal_sink(&self) -> bool {
        !self.internal_sinks().is_empty()
    }

    /// All words for paths on `k` vertices.
    pub fn all(k: usize) -> Vec<PathPattern> {
        assert!(k >= 1);
        (0..1u64 << (k - 1))
            .map(|bits| {
                PathPattern::new(
                    (0..k - 1)
                        .map(|i| {
                            if bits >> i & 1 == 0 {
                                Step::Fwd
                            } else {
                                Step::Bwd
                            }
                        })
                        .collect(),
                )
            })
            .collect()
    }
}

impl fmt::Display for PathPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("-");
        }
        for s in &self.word {
            f.write_str(match s {
                Step::Fwd => "fwd",
                Step::Bwd => "bwd",
            })?;
        }
        Ok(())
    }
}

impl FromStr for PathPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "-" {
            return Ok(PathPattern::trivial());
        }
        let word = tokenize(s, &["fwd", "bwd"])?
            .into_iter()
            .map(|t| if t == "fwd" { Step::Fwd } else { Step::Bwd })
            .collect();
        Ok(PathPattern::new(word))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StarMode {
    CenterSource,
    CenterSink,
    /// `sources` leaves point at the center, `sinks` leaves are pointed at.
    Mixed {
        sources: usize,
        sinks: usize,
    },
}

/// Orientation of `K_{1,t}`. The center is vertex 0. In mixed mode the
/// source leaves are `1..=t1` and the sink leaves `t1+1..=t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StarOrientation {
    pub leaves: usize,
    pub mode: StarMode,
}

impl StarOrientation {
    pub fn center_source(leaves: usize) -> StarOrientation {
        StarOrientation {
            leaves,
            mode: StarMode::CenterSource,
        }
    }

    pub fn center_sink(leaves: usize) -> StarOrientation {
        StarOrientation {
            leaves,
            mode: StarMode::CenterSink,
        }
    }

    pub fn mixed(sources: usize, sinks: usize) -> StarOrientation {
        StarOrientation {
            leaves: sources + sinks,
            mode: StarMode::Mixed { sources, sinks },
        }
    }
}

/// Realizes a cycle word as a digraph on `k` vertices.
pub fn gen_cycle(pattern: &CyclePattern) -> Digraph {
    let k = pattern.len();
    let arcs = pattern.word.iter().enumerate().map(|(i, t)| {
        let j = (i + 1) % k;
        match t {
            Turn::Cw => (i, j),
            Turn::Ccw => (j, i),
        }
    });
    Digraph::new(k, arcs).expect("validated cycle word has distinct arcs")
}

pub fn gen_path(pattern: &PathPattern) -> Digraph {
    let arcs = pattern.word.iter().enumerate().map(|(i, s)| match s {
        Step::Fwd => (i, i + 1),
        Step::Bwd => (i + 1, i),
    });
    Digraph::new(pattern.order(), arcs).expect("path arcs are distinct")
}

pub fn gen_star(o: &StarOrientation) -> Result<Digraph> {
    let t = o.leaves;
    if t == 0 {
        return Err(Error::precondition("a star needs at least one leaf"));
    }
    let arcs: Vec<(usize, usize)> = match o.mode {
        StarMode::CenterSource => (1..=t).map(|l| (0, l)).collect(),
        StarMode::CenterSink => (1..=t).map(|l| (l, 0)).collect(),
        StarMode::Mixed { sources, sinks } => {
            if sources + sinks != t {
                return Err(Error::precondition(format!(
                    "mixed star with {sources} source leaves and {sinks} sink leaves has {} leaves, not {t}",
                    sources + sinks
                )));
            }
            (1..=sources)
                .map(|l| (l, 0))
                .chain((sources + 1..=t).map(|l| (0, l)))
                .collect()
        }
    };
    Ok(Digraph::new(t + 1, arcs).expect("star arcs are distinct"))
}

/// Orients the undirected graph `graph` (given as a symmetric digraph, loops
/// ignored) so that the independent dominating set `set` becomes an ECD set.
///
/// Vertices of `set` are processed in ascending order and each one claims,
/// in ascending order, every neighbor that has not been claimed yet; edges
/// to already claimed neighbors point back into `set`. Edges with both ends
/// outside `set` are oriented from the lower to the higher label.
pub fn orient_from_independent_set(graph: &Digraph, set: &[usize]) -> Result<Digraph> {
    let n = graph.order();
    for &v in set {
        if v >= n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                order: n,
            });
        }
    }
    let members = VertexSet::from_members(n, set.iter().copied());
    let adjacent = |u: usize, v: usize| u != v && (graph.has_arc(u, v) || graph.has_arc(v, u));
    for u in &members {
        if let Some(v) = members.iter().find(|&v| adjacent(u, v)) {
            return Err(Error::precondition(format!(
                "set is not independent: {u} and {v} are adjacent"
            )));
        }
    }
    for v in 0..n {
        if !members.contains(v) && !members.iter().any(|u| adjacent(u, v)) {
            return Err(Error::precondition(format!(
                "set does not dominate vertex {v}"
            )));
        }
    }

    let mut claimed = VertexSet::new(n);
    let mut arcs = Vec::new();
    for u in &members {
        for v in (0..n).filter(|&v| adjacent(u, v)) {
            if claimed.insert(v) {
                arcs.push((u, v));
            } else {
                arcs.push((v, u));
            }
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            if !members.contains(u) && !members.contains(v) && adjacent(u, v) {
                arcs.push((u, v));
            }
        }
    }
    Digraph::new(n, arcs)
}
