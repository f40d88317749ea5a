//! Undirected simple graphs on at most 64 vertices, stored as one `u64`
//! neighbor mask per vertex, together with the constructors and graph
//! operations (union, join, complement) the spectral formulas are stated in.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported vertex count; one machine word per adjacency row.
pub const MAX_VERTICES: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    rows: Vec<u64>,
}

/// Parameters of the multicone graph `K_w ∇ mC_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MulticoneParams {
    pub w: usize,
    pub m: usize,
    pub n: usize,
}

impl MulticoneParams {
    pub fn new(w: usize, m: usize, n: usize) -> Result<Self> {
        if w < 1 {
            return Err(Error::InvalidParameter(format!(
                "clique size w={w} must be >= 1"
            )));
        }
        if m < 1 {
            return Err(Error::InvalidParameter(format!(
                "cycle count m={m} must be >= 1"
            )));
        }
        if n < 3 {
            return Err(Error::InvalidParameter(format!(
                "cycle length n={n} must be >= 3"
            )));
        }
        Ok(Self { w, m, n })
    }

    pub fn vertex_count(&self) -> usize {
        self.w + self.m * self.n
    }

    pub fn edge_count(&self) -> usize {
        self.w * (self.w - 1) / 2 + self.m * self.n + self.w * self.m * self.n
    }

    /// Degree of each clique vertex, `w - 1 + mn`.
    pub fn hub_degree(&self) -> usize {
        self.w - 1 + self.m * self.n
    }

    /// Degree of each cycle vertex, `w + 2`.
    pub fn rim_degree(&self) -> usize {
        self.w + 2
    }
}

impl fmt::Display for MulticoneParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MC({},{},{})", self.w, self.m, self.n)
    }
}

fn check_order(what: &'static str, n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(Error::SizeLimit {
            what,
            actual: n,
            limit: MAX_VERTICES,
        });
    }
    Ok(())
}

#[inline]
fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices. `n = 0` is allowed so that deleting
    /// the only vertex of `K1` stays representable.
    pub fn empty(n: usize) -> Result<Self> {
        check_order("vertex count", n)?;
        Ok(Self { rows: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u},{v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from raw neighbor masks, validating symmetry and the
    /// absence of loops.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        check_order("vertex count", n)?;
        for (i, &row) in rows.iter().enumerate() {
            if row & !low_mask(n) != 0 {
                return Err(Error::InvalidParameter(format!(
                    "row {i} has bits beyond n={n}"
                )));
            }
            if row >> i & 1 == 1 {
                return Err(Error::InvalidParameter(format!("self-loop at {i}")));
            }
            let mut rest = row;
            while rest != 0 {
                let j = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if rows[j] >> i & 1 == 0 {
                    return Err(Error::InvalidParameter(format!(
                        "asymmetric edge ({i},{j})"
                    )));
                }
            }
        }
        Ok(Self { rows })
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!(
                "cycle length {n} must be >= 3"
            )));
        }
        let mut g = Self::empty(n)?;
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        Ok(g)
    }

    pub fn complete(w: usize) -> Result<Self> {
        if w < 1 {
            return Err(Error::InvalidParameter(format!(
                "clique size {w} must be >= 1"
            )));
        }
        check_order("vertex count", w)?;
        let full = low_mask(w);
        Ok(Self {
            rows: (0..w).map(|i| full & !(1u64 << i)).collect(),
        })
    }

    pub fn path(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParameter(
                "path needs at least one vertex".into(),
            ));
        }
        let mut g = Self::empty(n)?;
        for i in 1..n {
            g.add_edge(i - 1, i);
        }
        Ok(g)
    }

    /// The star `K_{1,leaves}` with the center at vertex 0.
    pub fn star(leaves: usize) -> Result<Self> {
        let mut g = Self::empty(leaves + 1)?;
        for v in 1..=leaves {
            g.add_edge(0, v);
        }
        Ok(g)
    }

    /// Complete multipartite graph with the given part sizes, parts laid out
    /// consecutively.
    pub fn complete_multipartite(parts: &[usize]) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidParameter("parts must be nonempty".into()));
        }
        let mut g = Self::empty(parts.iter().sum())?;
        let mut part_of = Vec::new();
        for (p, &size) in parts.iter().enumerate() {
            part_of.extend(std::iter::repeat_n(p, size));
        }
        for u in 0..g.order() {
            for v in u + 1..g.order() {
                if part_of[u] != part_of[v] {
                    g.add_edge(u, v);
                }
            }
        }
        Ok(g)
    }

    /// `g ∪ h`, vertices of `g` first.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Self> {
        let n = self.order() + other.order();
        check_order("union vertex count", n)?;
        let shift = self.order();
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().map(|&r| r << shift));
        Ok(Self { rows })
    }

    /// `k` disjoint copies of `g`.
    pub fn copies(k: usize, g: &Graph) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidParameter("copy count must be >= 1".into()));
        }
        check_order("copies vertex count", k.saturating_mul(g.order()))?;
        let mut out = g.clone();
        for _ in 1..k {
            out = out.disjoint_union(g)?;
        }
        Ok(out)
    }

    /// `g ∇ h`: disjoint union plus every edge between the two sides.
    /// Vertices of `g` come first.
    pub fn join(&self, other: &Graph) -> Result<Self> {
        let (a, b) = (self.order(), other.order());
        let mut out = self.disjoint_union(other)?;
        let left = low_mask(a);
        let right = low_mask(a + b) & !left;
        for i in 0..a {
            out.rows[i] |= right;
        }
        for i in a..a + b {
            out.rows[i] |= left;
        }
        Ok(out)
    }

    pub fn complement(&self) -> Self {
        let full = low_mask(self.order());
        Self {
            rows: self
                .rows
                .iter()
                .enumerate()
                .map(|(i, &r)| !r & full & !(1u64 << i))
                .collect(),
        }
    }

    /// `K_w ∇ mC_n`: clique vertices `0..w`, then the cycles in order.
    pub fn multicone(p: MulticoneParams) -> Result<Self> {
        let p = MulticoneParams::new(p.w, p.m, p.n)?;
        check_order("multicone vertex count", p.vertex_count())?;
        Self::complete(p.w)?.join(&Self::copies(p.m, &Self::cycle(p.n)?)?)
    }

    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidParameter(
                "induced subgraph of empty vertex set".into(),
            ));
        }
        if let Some(&v) = vertices.iter().find(|&&v| v >= self.order()) {
            return Err(Error::InvalidParameter(format!("vertex {v} out of range")));
        }
        let mut g = Self::empty(vertices.len())?;
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate().skip(a + 1) {
                if u == v {
                    return Err(Error::InvalidParameter(format!("vertex {u} listed twice")));
                }
                if self.has_edge(u, v) {
                    g.add_edge(a, b);
                }
            }
        }
        Ok(g)
    }

    /// `G - j`: delete vertex `j` and its edges; later vertices shift down.
    pub fn remove_vertex(&self, j: usize) -> Result<Self> {
        if j >= self.order() {
            return Err(Error::InvalidParameter(format!("vertex {j} out of range")));
        }
        let low = low_mask(j);
        let rows = self
            .rows
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != j)
            .map(|(_, &r)| (r & low) | ((r >> 1) & !low))
            .collect();
        Ok(Self { rows })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.rows[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.rows
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.order() {
            let mut rest = self.rows[u] & !low_mask(u + 1);
            while rest != 0 {
                out.push((u, rest.trailing_zeros() as usize));
                rest &= rest - 1;
            }
        }
        out
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.order()).map(|v| self.degree(v)).collect()
    }

    /// Degrees sorted ascending.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable();
        d
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// `Some(d)` if every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degrees();
        match d.first() {
            Some(&first) if d.iter().all(|&x| x == first) => Some(first),
            None => Some(0),
            _ => None,
        }
    }

    pub fn triangle_count(&self) -> usize {
        let mut t = 0;
        for (u, v) in self.edges() {
            t += (self.rows[u] & self.rows[v]).count_ones() as usize;
        }
        t / 3
    }

    /// Vertex masks of the connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for s in 0..self.order() {
            if seen >> s & 1 == 1 {
                continue;
            }
            let comp = self.reach(s);
            seen |= comp;
            out.push(comp);
        }
        out
    }

    fn reach(&self, s: usize) -> u64 {
        let mut comp = 1u64 << s;
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0;
            let mut rest = frontier;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                next |= self.rows[v];
            }
            frontier = next & !comp;
            comp |= next;
        }
        comp
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    pub fn is_connected(&self) -> bool {
        self.order() <= 1 || self.reach(0) == low_mask(self.order())
    }

    /// BFS distances from `s`; `None` for unreachable vertices.
    pub fn distances_from(&self, s: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.order()];
        dist[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            let mut rest = self.rows[u];
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Largest distance between two vertices, `None` when disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for s in 0..self.order() {
            for d in self.distances_from(s) {
                best = best.max(d?);
            }
        }
        Some(best)
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![None; self.order()];
        for s in 0..self.order() {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                let mut rest = self.rows[u];
                while rest != 0 {
                    let v = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    match side[v] {
                        None => {
                            side[v] = Some(!su);
                            queue.push_back(v);
                        }
                        Some(sv) if sv == su => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    /// Vertices with at least one neighbor.
    pub fn non_isolated(&self) -> Vec<usize> {
        (0..self.order()).filter(|&v| self.rows[v] != 0).collect()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.order(), self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mc(w: usize, m: usize, n: usize) -> Graph {
        Graph::multicone(MulticoneParams::new(w, m, n).unwrap()).unwrap()
    }

    #[test]
    fn cycles() {
        let c3 = Graph::cycle(3).unwrap();
        assert_eq!(c3.edge_count(), 3);
        assert_eq!(c3.regular_degree(), Some(2));
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(c4.edge_count(), 4);
        assert!(c4.is_bipartite());
        assert_eq!(Graph::cycle(6).unwrap().diameter(), Some(3));
        assert!(matches!(Graph::cycle(2), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn complete_graphs() {
        let k1 = Graph::complete(1).unwrap();
        assert_eq!((k1.order(), k1.edge_count()), (1, 0));
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(k4.edge_count(), 6);
        assert_eq!(k4.regular_degree(), Some(3));
        assert_eq!(Graph::complete(3).unwrap(), Graph::cycle(3).unwrap());
        assert!(Graph::complete(0).is_err());
        assert_eq!(Graph::complete(64).unwrap().edge_count(), 64 * 63 / 2);
    }

    #[test]
    fn unions_and_copies() {
        let c3 = Graph::cycle(3).unwrap();
        let two = Graph::copies(2, &c3).unwrap();
        assert_eq!(
            (two.order(), two.edge_count(), two.component_count()),
            (6, 6, 2)
        );
        let u = Graph::cycle(4)
            .unwrap()
            .disjoint_union(&Graph::complete(1).unwrap())
            .unwrap();
        assert_eq!((u.order(), u.edge_count()), (5, 4));
        let ten = Graph::copies(10, &Graph::cycle(4).unwrap()).unwrap();
        assert_eq!((ten.order(), ten.edge_count()), (40, 40));
        let big = Graph::copies(17, &Graph::cycle(4).unwrap());
        assert!(matches!(big, Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn joins() {
        let k1 = Graph::complete(1).unwrap();
        assert_eq!(
            k1.join(&Graph::cycle(3).unwrap()).unwrap(),
            Graph::complete(4).unwrap()
        );
        let g = Graph::complete(3)
            .unwrap()
            .join(&Graph::copies(10, &Graph::cycle(4).unwrap()).unwrap())
            .unwrap();
        assert_eq!((g.order(), g.edge_count()), (43, 163));
        let w5 = k1.join(&Graph::cycle(4).unwrap()).unwrap();
        assert_eq!(w5.edge_count(), 8);
        assert!(w5.diameter().unwrap() <= 2);
    }

    #[test]
    fn complements() {
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(k4.complement(), Graph::empty(4).unwrap());
        let c4 = Graph::cycle(4).unwrap();
        let two_k2 = Graph::copies(2, &Graph::complete(2).unwrap()).unwrap();
        assert_eq!(c4.complement().edge_count(), 2);
        assert_eq!(c4.complement().component_count(), 2);
        assert!(crate::isomorphism::are_isomorphic(&c4.complement(), &two_k2).unwrap());
        let c5 = Graph::cycle(5).unwrap();
        assert!(crate::isomorphism::are_isomorphic(&c5, &c5.complement()).unwrap());
    }

    #[test]
    fn multicones() {
        let w5 = mc(1, 1, 4);
        assert_eq!(w5.degree_sequence(), vec![3, 3, 3, 3, 4]);
        let f2 = mc(1, 2, 3);
        assert_eq!((f2.order(), f2.edge_count()), (7, 12));
        let g = mc(2, 2, 4);
        assert_eq!((g.order(), g.edge_count()), (10, 25));
        assert!(MulticoneParams::new(0, 1, 3).is_err());
        assert!(MulticoneParams::new(1, 0, 3).is_err());
        assert!(MulticoneParams::new(1, 1, 2).is_err());
        assert!(matches!(
            Graph::multicone(MulticoneParams { w: 3, m: 20, n: 4 }),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn bfs_plumbing() {
        assert_eq!(
            Graph::copies(5, &Graph::cycle(4).unwrap())
                .unwrap()
                .component_count(),
            5
        );
        let disconnected = Graph::copies(2, &Graph::cycle(3).unwrap()).unwrap();
        assert_eq!(disconnected.diameter(), None);
        assert!(!disconnected.is_connected());
        assert_eq!(Graph::path(4).unwrap().diameter(), Some(3));
    }

    #[test]
    fn induced_subgraphs() {
        let w5 = mc(1, 1, 4);
        assert_eq!(
            w5.induced_subgraph(&[1, 2, 3, 4]).unwrap(),
            Graph::cycle(4).unwrap()
        );
        assert_eq!(w5.remove_vertex(0).unwrap(), Graph::cycle(4).unwrap());
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(
            k4.induced_subgraph(&[0, 2, 3]).unwrap(),
            Graph::cycle(3).unwrap()
        );
        let g = mc(2, 1, 5);
        assert_eq!(
            g.induced_subgraph(&[2, 3, 4, 5, 6]).unwrap(),
            Graph::cycle(5).unwrap()
        );
        assert!(g.induced_subgraph(&[]).is_err());
        assert!(g.induced_subgraph(&[1, 1]).is_err());
    }

    #[test]
    fn remove_vertex_shifts_labels() {
        let p = Graph::path(5).unwrap();
        let q = p.remove_vertex(2).unwrap();
        assert_eq!(q.edges(), vec![(0, 1), (2, 3)]);
        let k1 = Graph::complete(1).unwrap();
        assert_eq!(k1.remove_vertex(0).unwrap().order(), 0);
    }

    #[test]
    fn from_rows_validates() {
        assert!(Graph::from_rows(vec![0b10, 0b00]).is_err());
        assert!(Graph::from_rows(vec![0b01]).is_err());
        assert!(Graph::from_rows(vec![0b10, 0b01]).is_ok());
    }
}
