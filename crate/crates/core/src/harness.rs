//! Corpora of small instances and the sweep that checks every decider
//! against exact search on the explicitly built product.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::families::{construct_d1, construct_d2, construct_d3, construct_dpr, Hub};
use crate::generators::{
    gen_cycle, gen_path, gen_star, CyclePattern, PathPattern, StarOrientation,
};
use crate::products::{fold_product, product, ProductKind};
use crate::solver::{enumerate_ecd_sets, find_ecd_set, gamma, is_ecd_set, SearchBounds};
use crate::theorems::{
    build_mixed_star_ecd, decide_cartesian_cycle, decide_cartesian_star, decide_direct_cycles,
    decide_direct_paths, decide_lex, decide_strong, DecisionReport, Method,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Strong,
    Lex,
    CartesianCycle,
    CartesianStar,
    DirectCycles,
    DirectPaths,
    MixedStar,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Strong,
        Suite::Lex,
        Suite::CartesianCycle,
        Suite::CartesianStar,
        Suite::DirectCycles,
        Suite::DirectPaths,
        Suite::MixedStar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Strong => "strong",
            Suite::Lex => "lex",
            Suite::CartesianCycle => "cartesian-cycle",
            Suite::CartesianStar => "cartesian-star",
            Suite::DirectCycles => "direct-cycles",
            Suite::DirectPaths => "direct-paths",
            Suite::MixedStar => "mixed-star",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::precondition(format!("unknown suite `{s}`")))
    }
}

/// Which instances a sweep covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusSpec {
    pub suite: Suite,
    /// largest factor order taken exhaustively
    pub max_n: usize,
    /// largest cycle length (or path order for `direct-paths`)
    pub k_max: usize,
    /// seeded random instances, where the suite has any
    pub samples: usize,
    pub seed: u64,
}

impl CorpusSpec {
    pub fn new(suite: Suite) -> CorpusSpec {
        let k_max = match suite {
            Suite::CartesianCycle => 8,
            Suite::DirectCycles => 6,
            Suite::DirectPaths => 5,
            _ => 3,
        };
        let samples = if suite == Suite::CartesianStar {
            1000
        } else {
            0
        };
        CorpusSpec {
            suite,
            max_n: 3,
            k_max,
            samples,
            seed: 0,
        }
    }

    fn check(&self) -> Result<()> {
        if self.max_n == 0 || self.k_max == 0 {
            return Err(Error::precondition("corpus bounds must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Strong { d: Digraph, f: Digraph },
    Lex { d: Digraph, f: Digraph },
    CartesianCycle { d: Digraph, pattern: CyclePattern },
    CartesianStar { f: Digraph, star: StarOrientation },
    DirectCycles { patterns: Vec<CyclePattern> },
    DirectPaths { patterns: Vec<PathPattern> },
}

impl Instance {
    pub fn decide(&self, bounds: &SearchBounds) -> Result<DecisionReport> {
        match self {
            Instance::Strong { d, f } => decide_strong(d, f),
            Instance::Lex { d, f } => decide_lex(d, f),
            Instance::CartesianCycle { d, pattern } => decide_cartesian_cycle(d, pattern, bounds),
            Instance::CartesianStar { f, star } => decide_cartesian_star(f, star, bounds),
            Instance::DirectCycles { patterns } => decide_direct_cycles(patterns),
            Instance::DirectPaths { patterns } => decide_direct_paths(patterns),
        }
    }

    /// Product kind and factors, in the order the product folds them.
    pub fn factors(&self) -> (ProductKind, Vec<Digraph>) {
        match self {
            Instance::Strong { d, f } => (ProductKind::Strong, vec![d.clone(), f.clone()]),
            Instance::Lex { d, f } => (ProductKind::Lexicographic, vec![d.clone(), f.clone()]),
            Instance::CartesianCycle { d, pattern } => {
                (ProductKind::Cartesian, vec![d.clone(), gen_cycle(pattern)])
            }
            Instance::CartesianStar { f, star } => (
                ProductKind::Cartesian,
                vec![f.clone(), gen_star(star).expect("corpus stars are valid")],
            ),
            Instance::DirectCycles { patterns } => (
                ProductKind::Direct,
                patterns.iter().map(gen_cycle).collect(),
            ),
            Instance::DirectPaths { patterns } => {
                (ProductKind::Direct, patterns.iter().map(gen_path).collect())
            }
        }
    }

    pub fn build_product(&self) -> Digraph {
        let (kind, factors) = self.factors();
        fold_product(kind, &factors).expect("instances have factors")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Case {
    pub key: String,
    pub instance: Instance,
}

/// Compact text form such as `3[0>1,1>2]`.
pub fn digraph_tag(d: &Digraph) -> String {
    let arcs: Vec<String> = d.arcs().map(|(u, v)| format!("{u}>{v}")).collect();
    format!("{}[{}]", d.order(), arcs.join(","))
}

/// Every loopless digraph on `1..=max_n` labeled vertices, by order and
/// then by arc bitmask over the ordered pairs.
pub fn all_loopless(max_n: usize) -> Vec<Digraph> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
            .collect();
        for mask in 0u64..1 << pairs.len() {
            let arcs = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &a)| a);
            out.push(Digraph::new(n, arcs).expect("distinct pairs"));
        }
    }
    out
}

/// Set partitions of `0..n` as restricted growth strings, in
/// lexicographic order.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(i: usize, n: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            out.push(blocks.clone());
            return;
        }
        for b in 0..=blocks.len() {
            if b == blocks.len() {
                blocks.push(vec![i]);
            } else {
                blocks[b].push(i);
            }
            go(i + 1, n, blocks, out);
            if blocks[b].len() == 1 {
                blocks.pop();
            } else {
                blocks[b].pop();
            }
        }
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}

/// Constructed members of the cycle families on at most 8 vertices,
/// labeled by how they were built.
pub fn constructed_cycle_members() -> Vec<(String, Digraph)> {
    let mut out = Vec::new();

    // D1 over bases on 1 and 2 vertices with every pair of partitions and
    // at most one extra arc into the new vertices, plus sparse 3-vertex bases
    let mut small_d1 = Vec::new();
    for base in all_loopless(2) {
        let parts = set_partitions(base.order());
        for pi1 in &parts {
            for pi2 in &parts {
                let hubs: Vec<Hub> = (0..pi1.len())
                    .map(Hub::W)
                    .chain((0..pi2.len()).map(Hub::Z))
                    .collect();
                let mut extras = vec![Vec::new()];
                for v in 0..base.order() {
                    for &h in &hubs {
                        extras.push(vec![(v, h)]);
                    }
                }
                for extra in extras {
                    let (d, w) =
                        construct_d1(&base, pi1, pi2, &extra).expect("valid D1 parameters");
                    if d.order() == 3 {
                        small_d1.push((d.clone(), w));
                    }
                    out.push((format!("d1:{}", digraph_tag(&d)), d));
                }
            }
        }
    }
    let three = all_loopless(3).into_iter().filter(|d| d.order() == 3);
    let whole = vec![vec![0, 1, 2]];
    for (i, base) in three.enumerate().filter(|(i, _)| i % 4 == 0) {
        for pi2 in [whole.clone(), vec![vec![0], vec![1, 2]]] {
            let (d, _) = construct_d1(&base, &whole, &pi2, &[]).expect("valid D1 parameters");
            out.push((format!("d1:{}:{i}", digraph_tag(&d)), d));
        }
    }

    // D2 with block sizes summing to at most 6, first maps per size
    let mut small_d2 = Vec::new();
    for a in 1..=4 {
        for b in 1..=4 {
            for c in 1..=4 {
                if a + b + c > 6 {
                    continue;
                }
                for maps in dominator_maps([a, b, c]).into_iter().take(8) {
                    let arcs: Vec<Vec<(usize, usize)>> = maps;
                    let (d, w) = construct_d2([a, b, c], [&arcs[0], &arcs[1], &arcs[2]])
                        .expect("valid D2 parameters");
                    if d.order() <= 4 {
                        small_d2.push((d.clone(), w));
                    }
                    out.push((format!("d2:{}", digraph_tag(&d)), d));
                }
            }
        }
    }

    // D3 from a 3-vertex D1 part and a small D2 part
    for (d1, w1) in &small_d1 {
        for (d2, w2) in &small_d2 {
            let targets = d2.order();
            for mask in 1u32..1 << targets {
                if d1.order() + targets > 8 || (targets == 4 && mask % 3 != 1) {
                    continue;
                }
                let cross: Vec<(usize, usize)> = (0..targets)
                    .filter(|t| mask >> t & 1 == 1)
                    .map(|t| (w1.vp[0], t))
                    .collect();
                let (d, _) = construct_d3((d1, w1), (d2, w2), &cross).expect("valid D3 parameters");
                out.push((format!("d3:{}", digraph_tag(&d)), d));
            }
        }
    }

    // components from different families side by side
    let trivial = Digraph::edgeless(1);
    let d1_parts: Vec<&Digraph> = std::iter::once(&trivial)
        .chain(small_d1.iter().map(|(d, _)| d))
        .collect();
    for a in &d1_parts {
        for (b, _) in &small_d2 {
            if a.order() + b.order() <= 8 {
                let d = a.disjoint_union(b);
                out.push((format!("mixed:{}", digraph_tag(&d)), d));
            }
        }
    }
    if let Some((d3, _)) = small_d1.first().map(|(d1, w1)| {
        let (c3, w3) = &small_d2[0];
        construct_d3((d1, w1), (c3, w3), &[(w1.vp[0], 0)]).expect("valid D3 parameters")
    }) {
        let d = trivial.disjoint_union(&d3);
        out.push((format!("mixed:{}", digraph_tag(&d)), d));
    }
    out
}

/// Every choice of one dominator per vertex, for each of the three steps
/// `U1 -> U2 -> U3 -> U1`.
fn dominator_maps(sizes: [usize; 3]) -> Vec<Vec<Vec<(usize, usize)>>> {
    let step = |from: usize, to: usize| -> Vec<Vec<(usize, usize)>> {
        let mut all = vec![Vec::new()];
        for target in 0..to {
            all = all
                .into_iter()
                .flat_map(|partial: Vec<(usize, usize)>| {
                    (0..from).map(move |src| {
                        let mut next = partial.clone();
                        next.push((src, target));
                        next
                    })
                })
                .collect();
        }
        all
    };
    let s12 = step(sizes[0], sizes[1]);
    let s23 = step(sizes[1], sizes[2]);
    let s31 = step(sizes[2], sizes[0]);
    let mut out = Vec::new();
    for a in &s12 {
        for b in &s23 {
            for c in &s31 {
                out.push(vec![a.clone(), b.clone(), c.clone()]);
            }
        }
    }
    out
}

/// Constructed `D_{p,r}` members over 2-vertex bases with arcs.
pub fn constructed_star_members() -> Vec<(String, Digraph)> {
    let mut out = Vec::new();
    for base in all_loopless(2)
        .into_iter()
        .filter(|d| d.order() == 2 && !d.is_arcless())
    {
        for wpart in set_partitions(2) {
            for b in [vec![], vec![(0, 0)]] {
                let np = 2 + wpart.len();
                for zpart in set_partitions(np) {
                    for bp in [vec![], vec![(1, 0)]] {
                        let (d, _) = construct_dpr(&base, &wpart, &b, &zpart, &bp)
                            .expect("valid D_pr parameters");
                        out.push((format!("dpr:{}", digraph_tag(&d)), d));
                    }
                }
            }
        }
    }
    out
}

/// Uniform random digraph: each ordered pair is an arc with probability
/// `density`.
pub fn random_digraph(rng: &mut ChaCha8Rng, n: usize, density: f64) -> Digraph {
    let arcs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| u != v)
        .collect();
    let kept = arcs
        .into_iter()
        .filter(|_| rng.gen_bool(density))
        .collect::<Vec<_>>();
    Digraph::new(n, kept).expect("distinct pairs")
}

/// All orientation words of paths on `1..=max_order` vertices.
pub fn all_path_patterns(max_order: usize) -> Vec<PathPattern> {
    (1..=max_order).flat_map(PathPattern::all).collect()
}

pub fn corpus(spec: &CorpusSpec) -> Result<Vec<Case>> {
    spec.check()?;
    let mut raw: Vec<(String, Instance)> = Vec::new();
    match spec.suite {
        Suite::Strong | Suite::Lex => {
            let all = all_loopless(spec.max_n);
            for d in &all {
                for f in &all {
                    let tag = format!("{}x{}", digraph_tag(d), digraph_tag(f));
                    let inst = if spec.suite == Suite::Strong {
                        Instance::Strong {
                            d: d.clone(),
                            f: f.clone(),
                        }
                    } else {
                        Instance::Lex {
                            d: d.clone(),
                            f: f.clone(),
                        }
                    };
                    raw.push((tag, inst));
                }
            }
        }
        Suite::CartesianCycle => {
            let mut ds: Vec<(String, Digraph)> = all_loopless(spec.max_n)
                .into_iter()
                .map(|d| (digraph_tag(&d), d))
                .collect();
            ds.extend(constructed_cycle_members());
            for (tag, d) in ds {
                for k in 2..=spec.k_max {
                    let pattern = CyclePattern::directed(k)?;
                    raw.push((
                        format!("{tag}|k{k}"),
                        Instance::CartesianCycle {
                            d: d.clone(),
                            pattern,
                        },
                    ));
                }
            }
        }
        Suite::CartesianStar => {
            let mut fs: Vec<(String, Digraph)> = all_loopless(spec.max_n)
                .into_iter()
                .map(|d| (digraph_tag(&d), d))
                .collect();
            fs.extend(constructed_star_members());
            for (tag, f) in fs {
                for t in 1..=3 {
                    let star = StarOrientation::center_source(t);
                    raw.push((
                        format!("{tag}|t{t}"),
                        Instance::CartesianStar { f: f.clone(), star },
                    ));
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            for i in 0..spec.samples {
                let n = rng.gen_range(4..=5);
                let density = [0.2, 0.35, 0.5][rng.gen_range(0..3)];
                let t = rng.gen_range(1..=3);
                let f = random_digraph(&mut rng, n, density);
                let star = StarOrientation::center_source(t);
                raw.push((
                    format!("rand{i}:{}|t{t}", digraph_tag(&f)),
                    Instance::CartesianStar { f, star },
                ));
            }
        }
        Suite::DirectCycles => {
            let words: Vec<CyclePattern> =
                (1..=spec.k_max).flat_map(CyclePattern::necklaces).collect();
            for a in &words {
                for b in &words {
                    raw.push((
                        format!("{a}|{b}"),
                        Instance::DirectCycles {
                            patterns: vec![a.clone(), b.clone()],
                        },
                    ));
                }
            }
            let small: Vec<CyclePattern> = (1..=spec.k_max.min(4))
                .flat_map(CyclePattern::necklaces)
                .collect();
            for a in &small {
                for b in &small {
                    for c in &small {
                        let patterns = vec![a.clone(), b.clone(), c.clone()];
                        raw.push((format!("{a}|{b}|{c}"), Instance::DirectCycles { patterns }));
                    }
                }
            }
        }
        Suite::DirectPaths => {
            let words = all_path_patterns(spec.k_max);
            for a in &words {
                for b in &words {
                    raw.push((
                        format!("{a}|{b}"),
                        Instance::DirectPaths {
                            patterns: vec![a.clone(), b.clone()],
                        },
                    ));
                }
            }
        }
        Suite::MixedStar => {
            return Err(Error::precondition(
                "the mixed-star suite runs through mixed_star_sweep",
            ));
        }
    }
    Ok(raw
        .into_iter()
        .enumerate()
        .map(|(i, (tag, instance))| Case {
            key: format!("{}/{i:05}/{tag}", spec.suite),
            instance,
        })
        .collect())
}

/// Outcome of one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub key: String,
    pub order: usize,
    pub method: Option<Method>,
    /// `None` when the decider failed
    pub theorem: Option<bool>,
    pub oracle: bool,
    pub certificate: Option<Vec<usize>>,
    /// certificate re-checked on the product
    pub certificate_ok: Option<bool>,
    /// every source of the product lies in the certificate
    pub sources_ok: Option<bool>,
    /// `γ` of an ECD product small enough to enumerate
    pub gamma: Option<usize>,
    /// every ECD set of that product has `γ` vertices
    pub ecd_total: Option<bool>,
    pub error: Option<String>,
    pub micros: u128,
}

impl Row {
    pub fn agrees(&self) -> bool {
        self.theorem == Some(self.oracle)
    }
}

pub fn evaluate(case: &Case, bounds: &SearchBounds) -> Row {
    let start = Instant::now();
    let p = case.instance.build_product();
    let oracle = find_ecd_set(&p).is_some();
    let (method, theorem, certificate, error) = match case.instance.decide(bounds) {
        Ok(r) => (
            Some(r.method),
            Some(r.decision),
            r.certificate.map(|c| c.set),
            None,
        ),
        Err(e) => (None, None, None, Some(e.to_string())),
    };
    let certificate_ok = certificate
        .as_ref()
        .map(|s| matches!(is_ecd_set(&p, s), Ok(Some(_))));
    let sources_ok = certificate
        .as_ref()
        .map(|s| p.sources().iter().all(|v| s.binary_search(&v).is_ok()));
    let (mut gamma_value, mut ecd_total) = (None, None);
    if oracle && bounds.check_enumerate("", p.order()).is_ok() {
        if let (Ok(g), Ok(sets)) = (gamma(&p, bounds), enumerate_ecd_sets(&p, bounds)) {
            gamma_value = Some(g);
            ecd_total = Some(sets.iter().all(|s| s.len() == g));
        }
    }
    Row {
        key: case.key.clone(),
        order: p.order(),
        method,
        theorem,
        oracle,
        certificate,
        certificate_ok,
        sources_ok,
        gamma: gamma_value,
        ecd_total,
        error,
        micros: start.elapsed().as_micros(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub suite: Suite,
    pub rows: Vec<Row>,
}

fn flag(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "1",
        Some(false) => "0",
        None => "-",
    }
}

fn opt<T: fmt::Display>(x: Option<T>) -> String {
    x.map_or_else(|| "-".to_string(), |v| v.to_string())
}

impl Report {
    pub fn mismatches(&self) -> Vec<&Row> {
        self.rows
            .iter()
            .filter(|r| r.theorem.is_some() && !r.agrees())
            .collect()
    }

    pub fn errors(&self) -> Vec<&Row> {
        self.rows.iter().filter(|r| r.error.is_some()).collect()
    }

    pub fn bad_certificates(&self) -> Vec<&Row> {
        self.rows
            .iter()
            .filter(|r| r.certificate_ok == Some(false))
            .collect()
    }

    /// Tab-separated, one row per instance in key order. Timing is left out
    /// unless asked for, so that a fixed seed gives identical output.
    pub fn to_tsv(&self, timing: bool) -> String {
        let mut out =
            String::from("key\torder\tmethod\ttheorem\toracle\tsize\tgamma\tecd_total\tcertificate_ok\tsources_ok");
        if timing {
            out.push_str("\tmicros");
        }
        out.push('\n');
        for r in &self.rows {
            let method = match r.method {
                Some(Method::Theorem) => "theorem",
                Some(Method::BruteForce) => "brute-force",
                None => "error",
            };
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                r.key,
                r.order,
                method,
                flag(r.theorem),
                flag(Some(r.oracle)),
                opt(r.certificate.as_ref().map(Vec::len)),
                opt(r.gamma),
                flag(r.ecd_total),
                flag(r.certificate_ok),
                flag(r.sources_ok),
            ));
            if timing {
                out.push_str(&format!("\t{}", r.micros));
            }
            out.push('\n');
        }
        out
    }

    pub fn summary(&self) -> String {
        let positive = self.rows.iter().filter(|r| r.oracle).count();
        let by_theorem = self
            .rows
            .iter()
            .filter(|r| r.method == Some(Method::Theorem))
            .count();
        format!(
            "suite {}: {} instances ({} ECD, {} decided by theorem), {} mismatches, {} errors, {} bad certificates",
            self.suite,
            self.rows.len(),
            positive,
            by_theorem,
            self.mismatches().len(),
            self.errors().len(),
            self.bad_certificates().len(),
        )
    }
}

/// Evaluates `cases` on `workers` threads (0 picks a default) and returns
/// the rows sorted by key.
pub fn run_cases(
    suite: Suite,
    cases: &[Case],
    bounds: &SearchBounds,
    workers: usize,
) -> Result<Report> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::precondition(format!("cannot start workers: {e}")))?;
    let mut rows: Vec<Row> =
        pool.install(|| cases.par_iter().map(|c| evaluate(c, bounds)).collect());
    rows.sort_by(|a, b| a.key.cmp(&b.key));
    Ok(Report { suite, rows })
}

pub fn cross_validate(spec: &CorpusSpec, bounds: &SearchBounds, workers: usize) -> Result<Report> {
    run_cases(spec.suite, &corpus(spec)?, bounds, workers)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedStarRow {
    pub key: String,
    pub product_ecd: bool,
    /// block assignments meeting the remark's conditions
    pub passing: usize,
    /// of those, assignments whose set is an ECD set
    pub verified: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedStarReport {
    pub t1: usize,
    pub t2: usize,
    pub rows: Vec<MixedStarRow>,
}

impl MixedStarReport {
    /// Assignments meeting the conditions whose set fails.
    pub fn forward_violations(&self) -> usize {
        self.rows.iter().map(|r| r.passing - r.verified).sum()
    }

    /// ECD products for which no assignment meets the conditions.
    pub fn converse_violations(&self) -> Vec<&MixedStarRow> {
        self.rows
            .iter()
            .filter(|r| r.product_ecd && r.passing == 0)
            .collect()
    }

    /// A verified set proves the product ECD, and counts never exceed
    /// their totals.
    pub fn is_consistent(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.verified <= r.passing && (r.verified == 0 || r.product_ecd))
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("key\tproduct_ecd\tpassing\tverified\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                r.key,
                u8::from(r.product_ecd),
                r.passing,
                r.verified
            ));
        }
        out
    }

    pub fn summary(&self) -> String {
        format!(
            "suite mixed-star (t1={}, t2={}): {} digraphs, {} ECD products, {} assignments meet the conditions, \
             {} of them fail, {} ECD products without a qualifying assignment",
            self.t1,
            self.t2,
            self.rows.len(),
            self.rows.iter().filter(|r| r.product_ecd).count(),
            self.rows.iter().map(|r| r.passing).sum::<usize>(),
            self.forward_violations(),
            self.converse_violations().len(),
        )
    }
}

/// Tries every assignment of the vertices of each loopless `F` on at most
/// `max_n` vertices to the `t1 + 3` blocks of the mixed-star construction.
pub fn mixed_star_sweep(max_n: usize, t1: usize, t2: usize) -> Result<MixedStarReport> {
    if t1 == 0 {
        return Err(Error::precondition("the mixed star needs a source leaf"));
    }
    let star = gen_star(&StarOrientation::mixed(t1, t2))?;
    let blocks = t1 + 3;
    let mut rows = Vec::new();
    for (i, f) in all_loopless(max_n).into_iter().enumerate() {
        let n = f.order();
        let product_ecd = find_ecd_set(&product(ProductKind::Cartesian, &f, &star)).is_some();
        let (mut passing, mut verified) = (0, 0);
        for code in 0..blocks.pow(n as u32) {
            let mut parts = vec![Vec::new(); blocks];
            let mut c = code;
            for v in 0..n {
                parts[c % blocks].push(v);
                c /= blocks;
            }
            if let Ok(outcome) = build_mixed_star_ecd(&f, &parts, t1, t2) {
                passing += 1;
                verified += usize::from(outcome.verified);
            }
        }
        rows.push(MixedStarRow {
            key: format!("mixed-star/{i:05}/{}", digraph_tag(&f)),
            product_ecd,
            passing,
            verified,
        });
    }
    Ok(MixedStarReport { t1, t2, rows })
}
