//! Isomorphism testing for small graphs: joint color refinement followed by
//! backtracking over color-compatible assignments.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest vertex count accepted by [`are_isomorphic`].
pub const ISOMORPHISM_CAP: usize = 12;

pub fn are_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    Ok(find_isomorphism(g, h)?.is_some())
}

/// Returns `map` with `g.has_edge(u, v) == h.has_edge(map[u], map[v])`.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Result<Option<Vec<usize>>> {
    let n = g.order().max(h.order());
    if n > ISOMORPHISM_CAP {
        return Err(Error::SizeLimit {
            what: "isomorphism test vertex count",
            actual: n,
            limit: ISOMORPHISM_CAP,
        });
    }
    if g.order() != h.order()
        || g.edge_count() != h.edge_count()
        || g.degree_sequence() != h.degree_sequence()
    {
        return Ok(None);
    }
    let (cg, ch) = refine_jointly(g, h);
    let mut hist_g = cg.clone();
    let mut hist_h = ch.clone();
    hist_g.sort_unstable();
    hist_h.sort_unstable();
    if hist_g != hist_h {
        return Ok(None);
    }

    // Map rarest colors first; ties broken by vertex index.
    let mut class_size = BTreeMap::new();
    for &c in &cg {
        *class_size.entry(c).or_insert(0usize) += 1;
    }
    let mut order: Vec<usize> = (0..g.order()).collect();
    order.sort_by_key(|&v| (class_size[&cg[v]], cg[v], v));

    let mut map = vec![usize::MAX; g.order()];
    let mut used = 0u64;
    if extend(g, h, &cg, &ch, &order, 0, &mut map, &mut used) {
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

/// Per-vertex `(degree, sorted neighbor degrees, triangles through the
/// vertex)`, sorted. Equal for isomorphic graphs; used to bucket candidates.
pub fn invariant_key(g: &Graph) -> Vec<(usize, Vec<usize>, usize)> {
    let degrees = g.degrees();
    let mut key: Vec<_> = (0..g.order())
        .map(|v| {
            let nb = g.neighbors(v);
            let mut nd: Vec<usize> = (0..g.order())
                .filter(|&u| nb >> u & 1 == 1)
                .map(|u| degrees[u])
                .collect();
            nd.sort_unstable();
            let tri: u32 = (0..g.order())
                .filter(|&u| nb >> u & 1 == 1)
                .map(|u| (g.neighbors(u) & nb).count_ones())
                .sum();
            (degrees[v], nd, tri as usize / 2)
        })
        .collect();
    key.sort_unstable();
    key
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Graph,
    h: &Graph,
    cg: &[usize],
    ch: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut u64,
) -> bool {
    let Some(&v) = order.get(depth) else {
        return true;
    };
    for t in 0..h.order() {
        if *used >> t & 1 == 1 || ch[t] != cg[v] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| g.has_edge(u, v) == h.has_edge(map[u], t));
        if !consistent {
            continue;
        }
        map[v] = t;
        *used |= 1 << t;
        if extend(g, h, cg, ch, order, depth + 1, map, used) {
            return true;
        }
        *used &= !(1 << t);
        map[v] = usize::MAX;
    }
    false
}

/// 1-dimensional Weisfeiler-Leman refinement run on both graphs with a
/// shared color table, so equal colors mean equal refined classes.
fn refine_jointly(g: &Graph, h: &Graph) -> (Vec<usize>, Vec<usize>) {
    let mut cg = g.degrees();
    let mut ch = h.degrees();
    let mut classes = distinct(&cg, &ch);
    loop {
        let sig = |graph: &Graph, colors: &[usize], v: usize| {
            let mut nb: Vec<usize> = (0..graph.order())
                .filter(|&u| graph.has_edge(v, u))
                .map(|u| colors[u])
                .collect();
            nb.sort_unstable();
            (colors[v], nb)
        };
        let sg: Vec<_> = (0..g.order()).map(|v| sig(g, &cg, v)).collect();
        let sh: Vec<_> = (0..h.order()).map(|v| sig(h, &ch, v)).collect();
        let table: BTreeSet<_> = sg.iter().chain(sh.iter()).cloned().collect();
        let rank: BTreeMap<_, _> = table.into_iter().enumerate().map(|(i, k)| (k, i)).collect();
        cg = sg.iter().map(|s| rank[s]).collect();
        ch = sh.iter().map(|s| rank[s]).collect();
        let now = distinct(&cg, &ch);
        if now == classes {
            return (cg, ch);
        }
        classes = now;
    }
}

fn distinct(a: &[usize], b: &[usize]) -> usize {
    let mut all: Vec<usize> = a.iter().chain(b).copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::MulticoneParams;

    #[test]
    fn spec_examples() {
        let c5 = Graph::cycle(5).unwrap();
        assert!(are_isomorphic(&c5, &c5.complement()).unwrap());
        let star = Graph::star(4).unwrap();
        let c4k1 = Graph::cycle(4)
            .unwrap()
            .disjoint_union(&Graph::complete(1).unwrap())
            .unwrap();
        assert!(!are_isomorphic(&star, &c4k1).unwrap());
        let w4 = Graph::multicone(MulticoneParams::new(1, 1, 3).unwrap()).unwrap();
        assert!(are_isomorphic(&w4, &Graph::complete(4).unwrap()).unwrap());
    }

    #[test]
    fn mapping_preserves_edges() {
        let c5 = Graph::cycle(5).unwrap();
        let co = c5.complement();
        let map = find_isomorphism(&c5, &co).unwrap().unwrap();
        for u in 0..5 {
            for v in 0..5 {
                assert_eq!(c5.has_edge(u, v), co.has_edge(map[u], map[v]));
            }
        }
    }

    #[test]
    fn refinement_equal_but_not_isomorphic() {
        // C6 and 2C3 are both 2-regular on 6 vertices; refinement cannot
        // split them, backtracking must.
        let c6 = Graph::cycle(6).unwrap();
        let two_c3 = Graph::copies(2, &Graph::cycle(3).unwrap()).unwrap();
        assert!(!are_isomorphic(&c6, &two_c3).unwrap());
    }

    #[test]
    fn cap_enforced() {
        let big = Graph::cycle(13).unwrap();
        assert!(matches!(
            are_isomorphic(&big, &big),
            Err(Error::SizeLimit { .. })
        ));
        let ok = Graph::cycle(12).unwrap();
        assert!(are_isomorphic(&ok, &ok).unwrap());
    }

    #[test]
    fn relabeled_petersen_like() {
        // Relabel a random-looking graph and confirm both directions.
        let g = Graph::from_edges(
            8,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 0),
                (0, 4),
                (4, 5),
                (5, 6),
                (6, 7),
                (7, 4),
                (2, 6),
            ],
        )
        .unwrap();
        let perm = [5, 2, 7, 0, 3, 6, 1, 4];
        let edges: Vec<_> = g
            .edges()
            .into_iter()
            .map(|(u, v)| (perm[u], perm[v]))
            .collect();
        let h = Graph::from_edges(8, &edges).unwrap();
        assert!(are_isomorphic(&g, &h).unwrap());
        assert!(are_isomorphic(&h, &g).unwrap());
    }
}
