//! Reference implementations used as oracles: dense adjacency matrices,
//! products written straight from their definitions and plain searches.
#![allow(dead_code)]

use ecdlab::{Digraph, ProductKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dense {
    pub n: usize,
    adj: Vec<bool>,
}

impl Dense {
    pub fn new(n: usize) -> Dense {
        Dense {
            n,
            adj: vec![false; n * n],
        }
    }

    pub fn from_digraph(d: &Digraph) -> Dense {
        let mut m = Dense::new(d.order());
        for (u, v) in d.arcs() {
            m.set(u, v);
        }
        m
    }

    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Dense {
        let mut m = Dense::new(n);
        for &(u, v) in arcs {
            m.set(u, v);
        }
        m
    }

    pub fn directed_cycle(k: usize) -> Dense {
        let arcs: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
        Dense::from_arcs(k, &arcs)
    }

    pub fn arc(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    pub fn set(&mut self, u: usize, v: usize) {
        self.adj[u * self.n + v] = true;
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in 0..self.n {
                if self.arc(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn to_digraph(&self) -> Digraph {
        Digraph::new(self.n, self.arcs()).unwrap()
    }

    pub fn reverse(&self) -> Dense {
        let mut r = Dense::new(self.n);
        for (u, v) in self.arcs() {
            r.set(v, u);
        }
        r
    }

    pub fn out_degree(&self, v: usize) -> usize {
        (0..self.n).filter(|&w| self.arc(v, w)).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        (0..self.n).filter(|&w| self.arc(w, v)).count()
    }

    /// `N+[v]` as a bitmask; only for `n <= 64`.
    pub fn closed_out_mask(&self, v: usize) -> u64 {
        (0..self.n)
            .filter(|&w| w == v || self.arc(v, w))
            .fold(0, |m, w| m | 1 << w)
    }
}

pub fn kind_arc(kind: ProductKind, same_g: bool, ga: bool, same_h: bool, hb: bool) -> bool {
    let cart = (same_g && hb) || (same_h && ga);
    match kind {
        ProductKind::Cartesian => cart,
        ProductKind::Direct => ga && hb,
        ProductKind::Strong => cart || (ga && hb),
        ProductKind::Lexicographic => ga || (same_g && hb),
    }
}

pub fn product(kind: ProductKind, a: &Dense, b: &Dense) -> Dense {
    let nb = b.n;
    let mut p = Dense::new(a.n * nb);
    for g in 0..a.n {
        for h in 0..nb {
            for g2 in 0..a.n {
                for h2 in 0..nb {
                    if kind_arc(kind, g == g2, a.arc(g, g2), h == h2, b.arc(h, h2)) {
                        p.set(g * nb + h, g2 * nb + h2);
                    }
                }
            }
        }
    }
    p
}

pub fn fold(kind: ProductKind, factors: &[Dense]) -> Dense {
    let mut it = factors.iter();
    let first = it.next().expect("at least one factor").clone();
    it.fold(first, |acc, f| product(kind, &acc, f))
}

/// Every vertex lies in exactly one `N+[s]`, `s` in `set`.
pub fn is_ecd(m: &Dense, set: &[usize]) -> bool {
    let mut seen = vec![false; m.n];
    let mut hits = vec![0usize; m.n];
    for &s in set {
        if s >= m.n || seen[s] {
            return false;
        }
        seen[s] = true;
        hits[s] += 1;
        for (w, h) in hits.iter_mut().enumerate() {
            if w != s && m.arc(s, w) {
                *h += 1;
            }
        }
    }
    hits.iter().all(|&h| h == 1)
}

/// Backtracking on the lowest uncovered vertex.
pub fn find_ecd(m: &Dense) -> Option<Vec<usize>> {
    fn go(m: &Dense, covered: &mut Vec<bool>, chosen: &mut Vec<usize>) -> bool {
        let Some(v) = covered.iter().position(|c| !c) else {
            return true;
        };
        for u in 0..m.n {
            if u != v && !m.arc(u, v) {
                continue;
            }
            let hood: Vec<usize> = (0..m.n).filter(|&w| w == u || m.arc(u, w)).collect();
            if hood.iter().any(|&w| covered[w]) {
                continue;
            }
            for &w in &hood {
                covered[w] = true;
            }
            chosen.push(u);
            if go(m, covered, chosen) {
                return true;
            }
            chosen.pop();
            for &w in &hood {
                covered[w] = false;
            }
        }
        false
    }
    let mut covered = vec![false; m.n];
    let mut chosen = Vec::new();
    go(m, &mut covered, &mut chosen).then(|| {
        chosen.sort_unstable();
        chosen
    })
}

fn members(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

/// All ECD sets by trying every subset; `n <= 20`.
pub fn all_ecd_sets(m: &Dense) -> Vec<Vec<usize>> {
    assert!(m.n <= 20);
    let hoods: Vec<u64> = (0..m.n).map(|v| m.closed_out_mask(v)).collect();
    let full = (1u64 << m.n) - 1;
    let mut out = Vec::new();
    for mask in 0..=full {
        let mut acc = 0u64;
        let mut ok = true;
        for v in members(mask) {
            if acc & hoods[v] != 0 {
                ok = false;
                break;
            }
            acc |= hoods[v];
        }
        if ok && acc == full {
            out.push(members(mask));
        }
    }
    out
}

/// Domination number by trying every subset; `n <= 20`.
pub fn gamma(m: &Dense) -> usize {
    assert!(m.n <= 20);
    if m.n == 0 {
        return 0;
    }
    let hoods: Vec<u64> = (0..m.n).map(|v| m.closed_out_mask(v)).collect();
    let full = (1u64 << m.n) - 1;
    (0..=full)
        .filter(|&mask| members(mask).iter().fold(0, |a, &v| a | hoods[v]) == full)
        .map(|mask| mask.count_ones() as usize)
        .min()
        .unwrap()
}

/// Weak components as sorted vertex lists, ordered by smallest member.
pub fn components(m: &Dense) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..m.n).collect();
    fn root(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for (u, v) in m.arcs() {
        let (a, b) = (root(&mut parent, u), root(&mut parent, v));
        parent[a.max(b)] = a.min(b);
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; m.n];
    for v in 0..m.n {
        let r = root(&mut parent, v);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(v);
    }
    groups
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}
