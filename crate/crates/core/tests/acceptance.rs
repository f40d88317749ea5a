//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//! Run with `cargo test -p multicone --test acceptance`.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use multicone::closed::{
    complement_multicone_c3_spectrum, multicone_adjacency_spectrum, multicone_laplacian_spectrum,
};
use multicone::graph6::{self, OnError};
use multicone::invariants::{
    facts_from_spectrum, has_join_eigenvalue, is_join, positive_eigenvalue_count_detailed,
    recognize_complete_multipartite, spectral_radius_bound,
};
use multicone::numeric::{eigenvalues_numeric, main_angle_identity_residual, spectral_radius};
use multicone::perfection::{is_perfect_complete, multicone_perfect_predicate};
use multicone::search::{
    find_cospectral_mates, labeled_graphs, nonisomorphic_graphs, SearchSpace, Verdict,
};
use multicone::{char_poly_exact, parse_family, Graph, MatrixKind, MulticoneParams};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    passed: bool,
    summary: String,
}

fn ok(passed: bool, summary: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        summary: summary.into(),
    }
}

fn atlas(n: usize) -> Vec<Graph> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("tests/data/atlas_n{n}.g6"));
    graph6::read_corpus(path, OnError::Abort)
        .expect("atlas data")
        .0
}

fn atlas_upto(n: usize) -> Vec<Graph> {
    (1..=n).flat_map(atlas).collect()
}

fn mc(w: usize, m: usize, n: usize) -> MulticoneParams {
    MulticoneParams::new(w, m, n).unwrap()
}

fn grid(w: usize, m: usize, ns: std::ops::RangeInclusive<usize>) -> Vec<MulticoneParams> {
    let mut out = Vec::new();
    for wi in 1..=w {
        for mi in 1..=m {
            for ni in ns.clone() {
                out.push(mc(wi, mi, ni));
            }
        }
    }
    out
}

fn sorted_desc(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

fn per_eigenvalue_close(a: Vec<f64>, b: Vec<f64>, tol: f64) -> bool {
    let (a, b) = (sorted_desc(a), sorted_desc(b));
    a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= tol)
}

// Oracles.

fn edges_direct(g: &Graph) -> usize {
    let n = g.order();
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| g.has_edge(u, v))
        .count()
}

fn triangles_direct(g: &Graph) -> usize {
    let n = g.order();
    let mut t = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                t += (g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)) as usize;
            }
        }
    }
    t
}

fn components_union_find(g: &Graph) -> usize {
    let n = g.order();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) {
                let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                parent[a] = b;
            }
        }
    }
    (0..n).filter(|&v| find(&mut parent, v) == v).count()
}

/// Matrix-tree theorem: determinant of the Laplacian with row and column 0
/// removed, by fraction-free elimination.
fn spanning_trees_kirchhoff(g: &Graph) -> i128 {
    let n = g.order();
    if n <= 1 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = (1..n)
        .map(|i| {
            (1..n)
                .map(|j| {
                    if i == j {
                        g.degree(i) as i128
                    } else {
                        -(g.has_edge(i, j) as i128)
                    }
                })
                .collect()
        })
        .collect();
    let k = n - 1;
    let mut sign = 1;
    let mut prev = 1i128;
    for c in 0..k {
        if a[c][c] == 0 {
            match (c + 1..k).find(|&r| a[r][c] != 0) {
                Some(r) => {
                    a.swap(c, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for r in c + 1..k {
            for j in c + 1..k {
                a[r][j] = (a[r][j] * a[c][c] - a[r][c] * a[c][j]) / prev;
            }
            a[r][c] = 0;
        }
        prev = a[c][c];
    }
    sign * a[k - 1][k - 1]
}

/// graph6 decoder written from the format description, for small orders.
fn decode_by_hand(s: &str) -> Graph {
    let b = s.as_bytes();
    let n = (b[0] - 63) as usize;
    let bits: Vec<bool> = b[1..]
        .iter()
        .flat_map(|&c| (0..6).rev().map(move |i| (c - 63) >> i & 1 == 1))
        .collect();
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if bits[k] {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

// Criteria.

fn c1_closed_forms() -> Outcome {
    let cases = grid(4, 4, 3..=8);
    let mut bad = Vec::new();
    for &p in &cases {
        let g = Graph::multicone(p).unwrap();
        let a = multicone_adjacency_spectrum(p).unwrap().to_floats();
        let l = multicone_laplacian_spectrum(p).unwrap().to_floats();
        let na = eigenvalues_numeric(&g, MatrixKind::Adjacency)
            .unwrap()
            .values;
        let nl = eigenvalues_numeric(&g, MatrixKind::Laplacian)
            .unwrap()
            .values;
        if !per_eigenvalue_close(a, na, 1e-9) {
            bad.push(format!("{p} A"));
        }
        if !per_eigenvalue_close(l, nl, 1e-9) {
            bad.push(format!("{p} L"));
        }
    }
    ok(
        bad.is_empty(),
        format!(
            "{} parameter triples x (A, L), mismatches: {:?}",
            cases.len(),
            bad
        ),
    )
}

fn c2_remark_pairs() -> Outcome {
    let pairs = [
        ("(2*C4)~(3*C4+K3)+5*C4", "MC(3,10,4)", 43),
        ("C5~(6*C5+K3)+4*C5", "MC(3,11,5)", 58),
        ("C6~(2*C6+K3)+2*C6", "MC(3,5,6)", 33),
    ];
    let mut passed = true;
    let mut notes = Vec::new();
    for (l, r, order) in pairs {
        let a = parse_family(l).unwrap();
        let b = parse_family(r).unwrap();
        let same = char_poly_exact(&a, MatrixKind::Adjacency)
            == char_poly_exact(&b, MatrixKind::Adjacency);
        let (ca, cb) = (components_union_find(&a), components_union_find(&b));
        let good = same && ca != cb && a.order() == order && b.order() == order;
        passed &= good;
        notes.push(format!(
            "{order}v/{}e cospectral={same} components {ca} vs {cb}",
            edges_direct(&a)
        ));
    }
    ok(passed, notes.join("; "))
}

fn c3_adjacency_ds() -> Outcome {
    let targets = [
        ("K4", mc(1, 1, 3)),
        ("W5", mc(1, 1, 4)),
        ("W6", mc(1, 1, 5)),
        ("K2~C4", mc(2, 1, 4)),
        ("F2=K1~2C3", mc(1, 2, 3)),
        ("W7", mc(1, 1, 6)),
    ];
    let mut passed = true;
    let mut notes = Vec::new();
    for (name, p) in targets {
        let g = Graph::multicone(p).unwrap();
        let space = SearchSpace::labeled(g.order()).connected_only(true);
        let r = find_cospectral_mates(&g, &space, MatrixKind::Adjacency).unwrap();
        let expected_scanned = 1u64 << (g.order() * (g.order() - 1) / 2);
        let good = r.verdict == Verdict::UniqueAmongConnected
            && r.stats.scanned == expected_scanned
            && r.target_seen();
        passed &= good;
        let mates: Vec<&str> = r.proper_mates().map(|m| m.graph6.as_str()).collect();
        notes.push(if mates.is_empty() {
            format!("{name} unique ({} scanned)", r.stats.scanned)
        } else {
            format!(
                "{name} HAS CONNECTED MATE {mates:?} ({} scanned)",
                r.stats.scanned
            )
        });
    }
    ok(passed, notes.join("; "))
}

fn c4_laplacian_wheel() -> Outcome {
    let corpus7 = atlas(7);
    let mut passed = corpus7.len() == 1044;
    let w7 = Graph::multicone(mc(1, 1, 6)).unwrap();
    let r7 =
        find_cospectral_mates(&w7, &SearchSpace::corpus(corpus7), MatrixKind::Laplacian).unwrap();
    let w7_mates: Vec<String> = r7.proper_mates().map(|m| m.graph6.clone()).collect();
    passed &= !w7_mates.is_empty() && r7.target_seen();
    let mut notes = vec![format!("W7 mates {w7_mates:?}")];
    for (name, p, n) in [("W5", mc(1, 1, 4), 5), ("W6", mc(1, 1, 5), 6)] {
        let g = Graph::multicone(p).unwrap();
        let r = find_cospectral_mates(&g, &SearchSpace::corpus(atlas(n)), MatrixKind::Laplacian)
            .unwrap();
        let none = r.proper_mates().count() == 0 && r.target_seen();
        passed &= none;
        notes.push(format!("{name} mates {}", r.proper_mates().count()));
    }
    ok(passed, notes.join("; "))
}

fn c5_spectrum_facts() -> Outcome {
    let graphs = atlas_upto(6);
    let exactly_six = graphs.iter().filter(|g| g.order() == 6).count();
    let mut bad = 0;
    for g in &graphs {
        let a = facts_from_spectrum(
            &char_poly_exact(g, MatrixKind::Adjacency),
            MatrixKind::Adjacency,
        )
        .unwrap();
        let l = facts_from_spectrum(
            &char_poly_exact(g, MatrixKind::Laplacian),
            MatrixKind::Laplacian,
        )
        .unwrap();
        let good = a.edge_count == BigInt::from(edges_direct(g))
            && l.edge_count == BigInt::from(edges_direct(g))
            && a.triangle_count == Some(BigInt::from(triangles_direct(g)))
            && l.component_count == Some(components_union_find(g))
            && l.spanning_tree_count == Some(BigInt::from(spanning_trees_kirchhoff(g)));
        bad += !good as usize;
    }
    ok(
        bad == 0 && exactly_six == 156,
        format!(
            "{} graphs on 1..6 vertices ({exactly_six} on 6), {bad} mismatches",
            graphs.len()
        ),
    )
}

fn c6_radius_bound() -> Outcome {
    let connected: Vec<Graph> = atlas_upto(7)
        .into_iter()
        .filter(|g| components_union_find(g) == 1)
        .collect();
    let mut exceptions = Vec::new();
    let mut equal = 0;
    for g in &connected {
        let r = spectral_radius_bound(g).unwrap();
        let degrees = g.degrees();
        let delta = *degrees.iter().min().unwrap();
        let structural = degrees.iter().all(|&d| d == delta)
            || degrees.iter().all(|&d| d == delta || d == g.order() - 1);
        let numeric = (r.rho - r.bound).abs() < 1e-8;
        equal += structural as usize;
        if structural != numeric || structural != r.equality_holds {
            exceptions.push(graph6::encode(g));
        }
    }
    ok(
        exceptions.is_empty(),
        format!(
            "{} connected graphs, {equal} attain the bound, exceptions {exceptions:?}",
            connected.len()
        ),
    )
}

fn c7_join_and_positive() -> Outcome {
    let graphs = atlas_upto(6);
    let mut join_bad = 0;
    let mut pos_bad = 0;
    let mut guard = 0;
    for g in &graphs {
        join_bad += (has_join_eigenvalue(g) != is_join(g)) as usize;
        let count = positive_eigenvalue_count_detailed(g).unwrap();
        guard += count.guard_engaged as usize;
        let exact = char_poly_exact(g, MatrixKind::Adjacency).positive_root_count();
        let recognized = recognize_complete_multipartite(g).is_some();
        pos_bad += (count.count != exact || (count.count == 1) != recognized) as usize;
    }
    ok(
        join_bad == 0 && pos_bad == 0,
        format!(
            "{} graphs, join exceptions {join_bad}, positive-eigenvalue exceptions {pos_bad}, exact guard engaged {guard}x",
            graphs.len()
        ),
    )
}

fn c8_complement_c3() -> Outcome {
    let mut bad = Vec::new();
    for w in 1..=3 {
        for m in 1..=4 {
            let co = Graph::multicone(mc(w, m, 3)).unwrap().complement();
            let expected = Graph::empty(w)
                .unwrap()
                .disjoint_union(&Graph::complete_multipartite(&vec![3; m]).unwrap())
                .unwrap();
            let closed = complement_multicone_c3_spectrum(w, m).unwrap().to_floats();
            let numeric = eigenvalues_numeric(&expected, MatrixKind::Adjacency)
                .unwrap()
                .values;
            // One part of size 3 is edgeless, so there is nothing to recover.
            let parts_ok = match recognize_complete_multipartite(&co) {
                Some(parts) => parts.len() == m && parts.iter().all(|p| p.len() == 3),
                None => m == 1,
            };
            if co != expected || !per_eigenvalue_close(closed, numeric, 1e-9) || !parts_ok {
                bad.push((w, m));
            }
        }
    }
    ok(
        bad.is_empty(),
        format!("12 cases (w ≤ 3, m ≤ 4), failures {bad:?}"),
    )
}

fn c9_perfectness() -> Outcome {
    let cells: Vec<MulticoneParams> = grid(3, 3, 3..=8)
        .into_iter()
        .filter(|p| p.vertex_count() <= 20)
        .collect();
    let mut grid_bad = Vec::new();
    for &p in &cells {
        let r = is_perfect_complete(&Graph::multicone(p).unwrap()).unwrap();
        let witness_ok = r
            .witness
            .as_ref()
            .is_none_or(|w| w.validate(&Graph::multicone(p).unwrap()));
        if r.perfect != multicone_perfect_predicate(p) || !witness_ok {
            grid_bad.push(p.to_string());
        }
    }

    let eight = nonisomorphic_graphs(8).unwrap();
    let mut samples = atlas_upto(7);
    let counts_ok = eight.len() == 12346 && samples.len() == 1252;
    samples.extend(eight);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..2000 {
        let edges: Vec<(usize, usize)> = (1..9)
            .flat_map(|v| (0..v).map(move |u| (u, v)))
            .filter(|_| rng.gen_bool(0.5))
            .collect();
        samples.push(Graph::from_edges(9, &edges).unwrap());
    }
    let mut sym_bad = 0;
    for g in &samples {
        let a = is_perfect_complete(g).unwrap();
        let b = is_perfect_complete(&g.complement()).unwrap();
        let witnesses_ok = a.witness.as_ref().is_none_or(|w| w.validate(g))
            && b.witness
                .as_ref()
                .is_none_or(|w| w.validate(&g.complement()));
        sym_bad += (a.perfect != b.perfect || !witnesses_ok) as usize;
    }
    ok(
        grid_bad.is_empty() && sym_bad == 0 && counts_ok && samples.len() >= 10_000,
        format!(
            "grid {} cells, disagreements {grid_bad:?}; symmetry over {} graphs (all ≤ 8 vertices + 2000 random on 9), violations {sym_bad}",
            cells.len(),
            samples.len()
        ),
    )
}

fn c10_main_angles() -> Outcome {
    let connected: Vec<Graph> = atlas_upto(6)
        .into_iter()
        .filter(|g| components_union_find(g) == 1)
        .collect();
    let mut worst: f64 = 0.0;
    let mut pairs = 0;
    for g in &connected {
        let rho = spectral_radius(g).unwrap();
        for j in 0..g.order() {
            let r = main_angle_identity_residual(g, j, &[rho + 1.5, -rho - 1.5]).unwrap();
            worst = worst.max(r);
            pairs += 1;
        }
    }
    ok(
        worst < 1e-6,
        format!(
            "{} graphs, {pairs} vertex pairs, worst residual {worst:.3e}",
            connected.len()
        ),
    )
}

fn c11_graph6() -> Outcome {
    let mut bad = 0;
    let mut lines = 0;
    for n in 1..=5 {
        let path =
            PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("tests/data/atlas_n{n}.g6"));
        for line in std::fs::read_to_string(path).unwrap().lines() {
            lines += 1;
            let g = graph6::decode(line.as_bytes()).unwrap();
            bad += (graph6::encode(&g) != line || decode_by_hand(line) != g) as usize;
        }
    }
    let mut labeled = 0;
    for n in 1..=5 {
        for g in labeled_graphs(n) {
            labeled += 1;
            let s = graph6::encode(&g);
            bad += (graph6::decode(s.as_bytes()).unwrap() != g || decode_by_hand(&s) != g) as usize;
        }
    }
    let hand = [
        ("Bw", Graph::complete(3).unwrap()),
        ("Cl", Graph::cycle(4).unwrap()),
        ("C~", Graph::complete(4).unwrap()),
        ("B?", Graph::empty(3).unwrap()),
    ];
    for (s, g) in &hand {
        bad += (graph6::decode(s.as_bytes()).unwrap() != *g || graph6::encode(g) != *s) as usize;
    }
    ok(
        bad == 0,
        format!("{lines} corpus lines, {labeled} labeled graphs, 4 hand vectors, {bad} failures"),
    )
}

fn main() {
    type Criterion = (&'static str, &'static str, Duration, fn() -> Outcome);
    let criteria: [Criterion; 11] = [
        (
            "C1",
            "closed-form spectra agree with the eigensolver",
            Duration::from_secs(30),
            c1_closed_forms,
        ),
        (
            "C2",
            "disconnected adjacency mates of K3~mCn",
            Duration::from_secs(120),
            c2_remark_pairs,
        ),
        (
            "C3",
            "adjacency DS among connected graphs by labeled scans",
            Duration::from_secs(600),
            c3_adjacency_ds,
        ),
        (
            "C4",
            "W7 has a Laplacian mate, W5 and W6 do not",
            Duration::from_secs(5),
            c4_laplacian_wheel,
        ),
        (
            "C5",
            "edge, triangle, component and tree counts from spectra",
            Duration::from_secs(5),
            c5_spectrum_facts,
        ),
        (
            "C6",
            "radius bound equality iff regular or {δ, n-1} bidegreed",
            Duration::from_secs(900),
            c6_radius_bound,
        ),
        (
            "C7",
            "join and one-positive-eigenvalue characterizations",
            Duration::from_secs(30),
            c7_join_and_positive,
        ),
        (
            "C8",
            "complement of K_w~mC3 spectrum and parts",
            Duration::from_secs(5),
            c8_complement_c3,
        ),
        (
            "C9",
            "multicone perfectness grid and complement symmetry",
            Duration::from_secs(600),
            c9_perfectness,
        ),
        (
            "C10",
            "vertex-deletion identity through main angles",
            Duration::from_secs(60),
            c10_main_angles,
        ),
        (
            "C11",
            "graph6 round trips",
            Duration::from_secs(1),
            c11_graph6,
        ),
    ];
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= limit;
        let passed = outcome.passed && in_time;
        failed += !passed as usize;
        let timing = if in_time {
            String::new()
        } else {
            " OVER TIME LIMIT".to_string()
        };
        println!(
            "[{}] {id} {name}: {} ({:.2}s, limit {}s{timing})",
            if passed { "PASS" } else { "FAIL" },
            outcome.summary,
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    println!("{} of 11 criteria pass", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
