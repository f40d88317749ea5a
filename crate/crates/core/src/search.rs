//! Exhaustive cospectral-mate search over labeled graphs or a graph6 corpus.

use std::collections::HashMap;
use std::fmt;
use std::io::BufRead;
use std::path::Path;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::family::parse_family;
use crate::graph::{Graph, MulticoneParams};
use crate::graph6::{self, Graph6Reader};
use crate::invariants::{bidegreed_profile, DegreeProfile};
use crate::isomorphism::{are_isomorphic, invariant_key};
use crate::poly::{char_poly_exact, CharPoly, MatrixKind};

/// Largest labeled enumeration run by default.
pub const LABELED_LIMIT: usize = 7;
/// Largest labeled enumeration run with the long-run flag.
pub const LABELED_LONG_RUN_LIMIT: usize = 8;
/// Largest vertex count for [`nonisomorphic_graphs`].
pub const GENERATOR_LIMIT: usize = 8;

const CHUNK_BITS: u32 = 14;

#[derive(Debug, Clone)]
pub enum Source {
    /// All `2^{n(n-1)/2}` edge masks on `n` labeled vertices.
    Labeled {
        n: usize,
        long_run: bool,
    },
    Corpus(Vec<Graph>),
}

#[derive(Debug, Clone)]
pub struct SearchSpace {
    pub source: Source,
    pub connected_only: bool,
    pub edge_count: Option<usize>,
}

impl SearchSpace {
    pub fn labeled(n: usize) -> Self {
        Self::from_source(Source::Labeled { n, long_run: false })
    }

    pub fn labeled_long_run(n: usize) -> Self {
        Self::from_source(Source::Labeled { n, long_run: true })
    }

    pub fn corpus(graphs: Vec<Graph>) -> Self {
        Self::from_source(Source::Corpus(graphs))
    }

    /// Reads a whole graph6 stream; the first malformed line is an error.
    pub fn corpus_from_reader<R: BufRead>(reader: R) -> Result<Self> {
        let graphs = Graph6Reader::new(reader).collect::<Result<Vec<_>>>()?;
        Ok(Self::corpus(graphs))
    }

    pub fn corpus_file(path: impl AsRef<Path>) -> Result<Self> {
        let (graphs, _) = graph6::read_corpus(path, graph6::OnError::Abort)?;
        Ok(Self::corpus(graphs))
    }

    fn from_source(source: Source) -> Self {
        Self {
            source,
            connected_only: false,
            edge_count: None,
        }
    }

    pub fn connected_only(mut self, yes: bool) -> Self {
        self.connected_only = yes;
        self
    }

    pub fn with_edge_count(mut self, m: Option<usize>) -> Self {
        self.edge_count = m;
        self
    }

    fn check_feasible(&self) -> Result<()> {
        if let Source::Labeled { n, long_run } = self.source {
            let limit = if long_run {
                LABELED_LONG_RUN_LIMIT
            } else {
                LABELED_LIMIT
            };
            if n > limit {
                return Err(Error::SizeLimit {
                    what: "labeled enumeration vertex count",
                    actual: n,
                    limit,
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for SearchSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.source {
            Source::Labeled { n, .. } => write!(f, "labeled n={n}")?,
            Source::Corpus(g) => write!(f, "corpus of {} graphs", g.len())?,
        }
        if self.connected_only {
            write!(f, ", connected only")?;
        }
        if let Some(m) = self.edge_count {
            write!(f, ", {m} edges")?;
        }
        Ok(())
    }
}

/// Vertex pairs in mask bit order: (0,1), (0,2), (1,2), (0,3), ...
fn pair_list(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect()
}

fn graph_from_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> Graph {
    let mut rows = vec![0u64; n];
    for (k, &(u, v)) in pairs.iter().enumerate() {
        if mask >> k & 1 == 1 {
            rows[u] |= 1 << v;
            rows[v] |= 1 << u;
        }
    }
    Graph::from_rows(rows).expect("mask rows are symmetric")
}

/// The labeled graph on `n` vertices whose edge set is `mask`.
pub fn labeled_graph(n: usize, mask: u64) -> Graph {
    graph_from_mask(n, &pair_list(n), mask)
}

/// Every labeled graph on `n` vertices, in mask order.
pub fn labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs = pair_list(n);
    let total = 1u64 << pairs.len();
    (0..total).map(move |mask| graph_from_mask(n, &pairs, mask))
}

/// Spectrum-determined quantities compared before any polynomial is built.
#[derive(Debug, Clone, Copy)]
struct Prefilter {
    order: usize,
    edges: usize,
    /// Triangles (adjacency) or the degree-square sum (Laplacian kinds).
    second: usize,
}

impl Prefilter {
    fn new(p: &CharPoly, kind: MatrixKind) -> Self {
        let sums = p.power_sums(3);
        let to = |x: &num_bigint::BigInt| usize::try_from(x).expect("small trace");
        match kind {
            MatrixKind::Adjacency => Self {
                order: p.degree(),
                edges: to(&sums[1]) / 2,
                second: to(&sums[2]) / 6,
            },
            // tr L = tr Q = 2m; tr L² = tr Q² = Σd² + 2m.
            MatrixKind::Laplacian | MatrixKind::SignlessLaplacian => Self {
                order: p.degree(),
                edges: to(&sums[0]) / 2,
                second: to(&sums[1]) - to(&sums[0]),
            },
        }
    }

    fn second_of(g: &Graph, kind: MatrixKind) -> usize {
        match kind {
            MatrixKind::Adjacency => g.triangle_count(),
            _ => g.degrees().iter().map(|d| d * d).sum(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, Serialize, PartialEq, Eq)]
pub struct ScanStats {
    pub scanned: u64,
    pub passed_prefilter: u64,
    pub cospectral_hits: u64,
}

impl ScanStats {
    fn add(self, o: ScanStats) -> ScanStats {
        ScanStats {
            scanned: self.scanned + o.scanned,
            passed_prefilter: self.passed_prefilter + o.passed_prefilter,
            cospectral_hits: self.cospectral_hits + o.cospectral_hits,
        }
    }
}

struct Scan<'a> {
    target: &'a CharPoly,
    kind: MatrixKind,
    filter: Prefilter,
    space: &'a SearchSpace,
}

impl Scan<'_> {
    fn test(&self, g: &Graph, stats: &mut ScanStats) -> bool {
        if g.order() != self.filter.order || g.edge_count() != self.filter.edges {
            return false;
        }
        if self.space.edge_count.is_some_and(|m| m != g.edge_count()) {
            return false;
        }
        if Prefilter::second_of(g, self.kind) != self.filter.second {
            return false;
        }
        if self.space.connected_only && !g.is_connected() {
            return false;
        }
        stats.passed_prefilter += 1;
        let hit = char_poly_exact(g, self.kind) == *self.target;
        stats.cospectral_hits += hit as u64;
        hit
    }

    fn labeled(&self, n: usize) -> (Vec<Graph>, ScanStats) {
        let pairs = pair_list(n);
        let bits = pairs.len() as u32;
        let chunk_bits = CHUNK_BITS.min(bits);
        let chunks = 1u64 << (bits - chunk_bits);
        let parts: Vec<(Vec<Graph>, ScanStats)> = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut stats = ScanStats::default();
                let mut found = Vec::new();
                let start = c << chunk_bits;
                for mask in start..start + (1u64 << chunk_bits) {
                    stats.scanned += 1;
                    // Edge count is a popcount; most masks stop here.
                    if mask.count_ones() as usize != self.filter.edges {
                        continue;
                    }
                    let g = graph_from_mask(n, &pairs, mask);
                    if self.test(&g, &mut stats) {
                        found.push(g);
                    }
                }
                (found, stats)
            })
            .collect();
        merge(parts)
    }

    fn corpus(&self, graphs: &[Graph]) -> (Vec<Graph>, ScanStats) {
        let parts: Vec<(Vec<Graph>, ScanStats)> = graphs
            .par_chunks(256)
            .map(|chunk| {
                let mut stats = ScanStats::default();
                let found = chunk
                    .iter()
                    .filter(|g| {
                        stats.scanned += 1;
                        self.test(g, &mut stats)
                    })
                    .cloned()
                    .collect();
                (found, stats)
            })
            .collect();
        merge(parts)
    }
}

fn merge(parts: Vec<(Vec<Graph>, ScanStats)>) -> (Vec<Graph>, ScanStats) {
    let mut all = Vec::new();
    let mut stats = ScanStats::default();
    for (found, s) in parts {
        all.extend(found);
        stats = stats.add(s);
    }
    (all, stats)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mate {
    pub graph6: String,
    pub connected: bool,
    pub isomorphic_to_target: bool,
    /// Scanned graphs in this isomorphism class.
    pub copies_seen: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    UniqueAmongConnected,
    MatesFound,
    UniqueOverall,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Expectation {
    UniqueAmongConnected,
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DsReport {
    #[serde(serialize_with = "as_graph6")]
    pub target: Graph,
    pub kind: MatrixKind,
    pub space: String,
    pub connected_only: bool,
    pub stats: ScanStats,
    /// Cospectral graphs found, one per isomorphism class, in scan order.
    pub mates: Vec<Mate>,
    pub verdict: Verdict,
    pub params: Option<MulticoneParams>,
    pub expectation: Option<Expectation>,
    /// Whether the verdict agrees with the expectation; `None` without one.
    pub consistent: Option<bool>,
}

fn as_graph6<S: Serializer>(g: &Graph, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&graph6::encode(g))
}

impl DsReport {
    /// Non-isomorphic mates.
    pub fn proper_mates(&self) -> impl Iterator<Item = &Mate> {
        self.mates.iter().filter(|m| !m.isomorphic_to_target)
    }

    pub fn has_connected_mate(&self) -> bool {
        self.proper_mates().any(|m| m.connected)
    }

    pub fn target_seen(&self) -> bool {
        self.mates.iter().any(|m| m.isomorphic_to_target)
    }

    pub fn mate_graphs(&self) -> Vec<Graph> {
        self.mates
            .iter()
            .map(|m| graph6::decode(m.graph6.as_bytes()).expect("encoded by us"))
            .collect()
    }
}

pub fn find_cospectral_mates(
    target: &Graph,
    space: &SearchSpace,
    kind: MatrixKind,
) -> Result<DsReport> {
    space.check_feasible()?;
    let poly = char_poly_exact(target, kind);
    let scan = Scan {
        target: &poly,
        kind,
        filter: Prefilter::new(&poly, kind),
        space,
    };
    let (hits, stats) = match &space.source {
        Source::Labeled { n, .. } if *n != target.order() => (Vec::new(), ScanStats::default()),
        Source::Labeled { n, .. } => scan.labeled(*n),
        Source::Corpus(graphs) => scan.corpus(graphs),
    };
    let mates = dedup(target, &hits)?;
    let proper = mates.iter().any(|m| !m.isomorphic_to_target);
    let verdict = match (proper, space.connected_only) {
        (true, _) => Verdict::MatesFound,
        (false, true) => Verdict::UniqueAmongConnected,
        (false, false) => Verdict::UniqueOverall,
    };
    Ok(DsReport {
        target: target.clone(),
        kind,
        space: space.to_string(),
        connected_only: space.connected_only,
        stats,
        mates,
        verdict,
        params: None,
        expectation: None,
        consistent: None,
    })
}

fn dedup(target: &Graph, hits: &[Graph]) -> Result<Vec<Mate>> {
    let mut reps: Vec<(Graph, Mate)> = Vec::new();
    let mut buckets: HashMap<_, Vec<usize>> = HashMap::new();
    let target_key = invariant_key(target);
    for g in hits {
        let key = invariant_key(g);
        let bucket = buckets.entry(key.clone()).or_default();
        let mut known = None;
        for &i in bucket.iter() {
            if are_isomorphic(&reps[i].0, g)? {
                known = Some(i);
                break;
            }
        }
        match known {
            Some(i) => reps[i].1.copies_seen += 1,
            None => {
                let iso = key == target_key && are_isomorphic(target, g)?;
                bucket.push(reps.len());
                reps.push((
                    g.clone(),
                    Mate {
                        graph6: graph6::encode(g),
                        connected: g.is_connected(),
                        isomorphic_to_target: iso,
                        copies_seen: 1,
                    },
                ));
            }
        }
    }
    Ok(reps.into_iter().map(|(_, m)| m).collect())
}

/// Scans for mates of `K_w ∇ mC_n`. Adjacency targets are expected to have
/// no connected mate; Laplacian targets likewise when `w, m ≠ 1` and `n ≠ 6`.
pub fn certify_ds(p: MulticoneParams, kind: MatrixKind, space: &SearchSpace) -> Result<DsReport> {
    let target = Graph::multicone(p)?;
    if let Source::Labeled { n, .. } = space.source {
        if n != target.order() {
            return Err(Error::InvalidParameter(format!(
                "{p} has {} vertices but the space enumerates {n}",
                target.order()
            )));
        }
    }
    let mut report = find_cospectral_mates(&target, space, kind)?;
    let expectation = match kind {
        MatrixKind::Adjacency => Expectation::UniqueAmongConnected,
        MatrixKind::Laplacian if p.w != 1 && p.m != 1 && p.n != 6 => {
            Expectation::UniqueAmongConnected
        }
        _ => Expectation::None,
    };
    report.params = Some(p);
    report.expectation = Some(expectation);
    report.consistent = match expectation {
        Expectation::UniqueAmongConnected => Some(!report.has_connected_mate()),
        Expectation::None => None,
    };
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairCheck {
    pub left: String,
    pub right: String,
    pub left_vertices: usize,
    pub right_vertices: usize,
    pub left_edges: usize,
    pub right_edges: usize,
    pub cospectral: bool,
    pub left_components: usize,
    pub right_components: usize,
    pub non_isomorphic: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Remark1Report {
    pub pairs: Vec<PairCheck>,
    pub all_pass: bool,
}

/// Disconnected graphs adjacency-cospectral with `K_3 ∇ mC_n`.
pub const REMARK1_PAIRS: [(&str, &str); 3] = [
    ("(2*C4)~(3*C4+K3)+5*C4", "MC(3,10,4)"),
    ("C5~(6*C5+K3)+4*C5", "MC(3,11,5)"),
    ("C6~(2*C6+K3)+2*C6", "MC(3,5,6)"),
];

pub fn verify_remark1() -> Result<Remark1Report> {
    let pairs = REMARK1_PAIRS
        .par_iter()
        .map(|&(l, r)| check_pair(l, r))
        .collect::<Result<Vec<_>>>()?;
    let all_pass = pairs.iter().all(|p| p.passed);
    Ok(Remark1Report { pairs, all_pass })
}

fn check_pair(left: &str, right: &str) -> Result<PairCheck> {
    let a = parse_family(left)?;
    let b = parse_family(right)?;
    let cospectral = a.order() == b.order()
        && char_poly_exact(&a, MatrixKind::Adjacency) == char_poly_exact(&b, MatrixKind::Adjacency);
    let (ca, cb) = (a.component_count(), b.component_count());
    Ok(PairCheck {
        left: left.into(),
        right: right.into(),
        left_vertices: a.order(),
        right_vertices: b.order(),
        left_edges: a.edge_count(),
        right_edges: b.edge_count(),
        cospectral,
        left_components: ca,
        right_components: cb,
        non_isomorphic: ca != cb,
        passed: cospectral && ca != cb,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditEntry {
    pub graph6: String,
    pub is_target: bool,
    pub min_degree: usize,
    pub min_degree_ok: bool,
    pub profile: DegreeProfile,
    /// Every degree is `w - 1 + mn` or `w + 2`.
    pub degrees_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeAudit {
    pub params: MulticoneParams,
    pub expected_min_degree: usize,
    pub allowed_degrees: [usize; 2],
    pub entries: Vec<AuditEntry>,
    pub all_pass: bool,
}

/// Checks the target and each connected non-isomorphic mate against the
/// degree structure forced on graphs cospectral with `K_w ∇ mC_n`.
pub fn mate_degree_audit(report: &DsReport) -> Result<DegreeAudit> {
    let p = report.params.ok_or_else(|| {
        Error::NotApplicable("report was not produced for a multicone target".into())
    })?;
    let delta = p.w + 2;
    let allowed = [p.hub_degree(), p.rim_degree()];
    let mut graphs = vec![(report.target.clone(), true)];
    for m in report.proper_mates().filter(|m| m.connected) {
        graphs.push((graph6::decode(m.graph6.as_bytes())?, false));
    }
    let entries: Vec<AuditEntry> = graphs
        .into_iter()
        .map(|(g, is_target)| AuditEntry {
            graph6: graph6::encode(&g),
            is_target,
            min_degree: g.min_degree(),
            min_degree_ok: g.min_degree() == delta,
            profile: bidegreed_profile(&g),
            degrees_ok: g.degrees().iter().all(|d| allowed.contains(d)),
        })
        .collect();
    let all_pass = entries.iter().all(|e| e.min_degree_ok && e.degrees_ok);
    Ok(DegreeAudit {
        params: p,
        expected_min_degree: delta,
        allowed_degrees: allowed,
        entries,
        all_pass,
    })
}

/// One representative of every isomorphism class on `n` vertices, built by
/// extending each class on `n - 1` vertices with a new vertex in all ways.
pub fn nonisomorphic_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > GENERATOR_LIMIT {
        return Err(Error::SizeLimit {
            what: "generator vertex count",
            actual: n,
            limit: GENERATOR_LIMIT,
        });
    }
    let mut level = vec![Graph::empty(0)?];
    for k in 1..=n {
        level = extend_level(&level, k)?;
    }
    Ok(level)
}

type InvariantKey = Vec<(usize, Vec<usize>, usize)>;

fn extend_level(smaller: &[Graph], k: usize) -> Result<Vec<Graph>> {
    let candidates: Vec<(InvariantKey, Graph)> = smaller
        .par_iter()
        .flat_map_iter(|g| {
            (0..1u64 << (k - 1)).map(move |nb| {
                let mut rows = g.rows().to_vec();
                for (u, row) in rows.iter_mut().enumerate() {
                    *row |= (nb >> u & 1) << (k - 1);
                }
                rows.push(nb);
                let h = Graph::from_rows(rows).expect("extension is symmetric");
                (invariant_key(&h), h)
            })
        })
        .collect();
    let mut buckets: HashMap<_, Vec<Graph>> = HashMap::new();
    let mut order = Vec::new();
    for (key, g) in candidates {
        let bucket = buckets.entry(key.clone()).or_insert_with(|| {
            order.push(key);
            Vec::new()
        });
        bucket.push(g);
    }
    let classes: Vec<Vec<Graph>> = order
        .par_iter()
        .map(|key| {
            let mut reps: Vec<Graph> = Vec::new();
            for g in &buckets[key] {
                let mut seen = false;
                for r in &reps {
                    if are_isomorphic(r, g)? {
                        seen = true;
                        break;
                    }
                }
                if !seen {
                    reps.push(g.clone());
                }
            }
            Ok(reps)
        })
        .collect::<Result<_>>()?;
    Ok(classes.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn mc(w: usize, m: usize, n: usize) -> MulticoneParams {
        MulticoneParams::new(w, m, n).unwrap()
    }

    #[test]
    fn labeled_counts() {
        for (n, total, connected) in [(4, 64, 38), (5, 1024, 728)] {
            let all: HashSet<Graph> = labeled_graphs(n).collect();
            assert_eq!(all.len(), total);
            // Independent connectivity check by repeated neighborhood growth.
            let conn = all
                .iter()
                .filter(|g| {
                    let mut reach = 1u64;
                    loop {
                        let next = (0..n)
                            .filter(|&v| reach >> v & 1 == 1)
                            .fold(reach, |r, v| r | g.neighbors(v));
                        if next == reach {
                            break reach.count_ones() as usize == n;
                        }
                        reach = next;
                    }
                })
                .count();
            assert_eq!(conn, connected);
        }
    }

    #[test]
    fn small_adjacency_scans() {
        let k4 = Graph::complete(4).unwrap();
        let r = find_cospectral_mates(
            &k4,
            &SearchSpace::labeled(4).connected_only(true),
            MatrixKind::Adjacency,
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::UniqueAmongConnected);
        assert_eq!(r.stats.scanned, 64);
        assert_eq!(r.mates.len(), 1);
        assert!(r.target_seen());

        let w5 = Graph::multicone(mc(1, 1, 4)).unwrap();
        let r = find_cospectral_mates(
            &w5,
            &SearchSpace::labeled(5).connected_only(true),
            MatrixKind::Adjacency,
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::UniqueAmongConnected);
        assert_eq!(r.mates[0].copies_seen, 15);

        let star = Graph::star(4).unwrap();
        let r =
            find_cospectral_mates(&star, &SearchSpace::labeled(5), MatrixKind::Adjacency).unwrap();
        assert_eq!(r.verdict, Verdict::MatesFound);
        let mate = r.proper_mates().next().unwrap();
        assert!(!mate.connected);
        let c4k1 = Graph::cycle(4)
            .unwrap()
            .disjoint_union(&Graph::complete(1).unwrap())
            .unwrap();
        assert!(are_isomorphic(&graph6::decode(mate.graph6.as_bytes()).unwrap(), &c4k1).unwrap());
    }

    #[test]
    fn every_mate_is_cospectral() {
        let star = Graph::star(4).unwrap();
        for kind in [
            MatrixKind::Adjacency,
            MatrixKind::Laplacian,
            MatrixKind::SignlessLaplacian,
        ] {
            let r = find_cospectral_mates(&star, &SearchSpace::labeled(5), kind).unwrap();
            for g in r.mate_graphs() {
                assert!(crate::poly::cospectral_exact(&g, &star, kind));
            }
        }
    }

    #[test]
    fn laplacian_certification() {
        let r = certify_ds(
            mc(1, 1, 5),
            MatrixKind::Laplacian,
            &SearchSpace::labeled(6).connected_only(true),
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::UniqueAmongConnected);
        assert_eq!(r.expectation, Some(Expectation::None));
        assert_eq!(r.consistent, None);
    }

    #[test]
    fn size_limits() {
        let g = Graph::complete(8).unwrap();
        assert!(matches!(
            find_cospectral_mates(&g, &SearchSpace::labeled(8), MatrixKind::Adjacency),
            Err(Error::SizeLimit { .. })
        ));
        assert!(matches!(
            certify_ds(mc(1, 1, 4), MatrixKind::Adjacency, &SearchSpace::labeled(4)),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            nonisomorphic_graphs(9),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn corpus_errors_propagate() {
        let err = SearchSpace::corpus_from_reader("Bw\nB!\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Corpus { line: 2, .. }));
    }

    #[test]
    fn audit() {
        let r = certify_ds(
            mc(1, 1, 4),
            MatrixKind::Adjacency,
            &SearchSpace::labeled(5).connected_only(true),
        )
        .unwrap();
        let a = mate_degree_audit(&r).unwrap();
        assert!(a.all_pass);
        assert_eq!(a.entries[0].min_degree, 3);

        let r = certify_ds(
            mc(1, 1, 3),
            MatrixKind::Adjacency,
            &SearchSpace::labeled(4).connected_only(true),
        )
        .unwrap();
        let a = mate_degree_audit(&r).unwrap();
        assert_eq!(a.entries[0].profile, DegreeProfile::Regular(3));
        assert!(a.all_pass);

        let plain = find_cospectral_mates(
            &Graph::cycle(4).unwrap(),
            &SearchSpace::labeled(4),
            MatrixKind::Adjacency,
        )
        .unwrap();
        assert!(matches!(
            mate_degree_audit(&plain),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn generator_counts() {
        let counts: Vec<usize> = (1..=6)
            .map(|n| nonisomorphic_graphs(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn determinism_across_pools() {
        let target = Graph::star(4).unwrap();
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| {
                    find_cospectral_mates(&target, &SearchSpace::labeled(5), MatrixKind::Adjacency)
                        .unwrap()
                })
        };
        let a = run(1);
        let b = run(4);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn report_json() {
        let r = find_cospectral_mates(
            &Graph::star(4).unwrap(),
            &SearchSpace::labeled(5),
            MatrixKind::Adjacency,
        )
        .unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["target"], "Ds_");
        assert_eq!(v["verdict"], "MatesFound");
    }
}
