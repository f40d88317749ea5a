//! Perfectness by explicit search for odd holes and odd antiholes.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, MulticoneParams};

/// Largest vertex count accepted by [`is_perfect`].
pub const PERFECTION_CAP: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WitnessKind {
    OddHole,
    OddAntihole,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BergeWitness {
    pub kind: WitnessKind,
    /// Cycle order; starts at the smallest vertex, second entry below the last.
    pub vertices: Vec<usize>,
}

impl BergeWitness {
    /// The listed vertices induce exactly this cycle in `g` (hole) or in its
    /// complement (antihole).
    pub fn validate(&self, g: &Graph) -> bool {
        let host = match self.kind {
            WitnessKind::OddHole => g.clone(),
            WitnessKind::OddAntihole => g.complement(),
        };
        let k = self.vertices.len();
        if k < 5 || k.is_multiple_of(2) {
            return false;
        }
        (0..k).all(|i| {
            (i + 1..k).all(|j| {
                let consecutive = j == i + 1 || (i == 0 && j == k - 1);
                host.has_edge(self.vertices[i], self.vertices[j]) == consecutive
            })
        })
    }
}

/// Shortest induced odd cycle of length `5..=max_len`, lexicographically
/// smallest among those of that length. Lengths beyond the vertex count are
/// ignored; `max_len < 5` searches nothing.
pub fn find_odd_hole(g: &Graph, max_len: usize) -> Option<BergeWitness> {
    let top = max_len.min(g.order());
    (5..=top).step_by(2).find_map(|len| {
        let found: Vec<Option<Vec<usize>>> = (0..g.order())
            .into_par_iter()
            .map(|s| {
                let mut path = vec![s];
                cycle_from(g, len, &mut path).then_some(path)
            })
            .collect();
        found
            .into_iter()
            .flatten()
            .next()
            .map(|vertices| BergeWitness {
                kind: WitnessKind::OddHole,
                vertices,
            })
    })
}

/// Extends an induced path whose vertices all exceed `path[0]` until it
/// closes into an induced cycle of length `len`, trying vertices in order.
fn cycle_from(g: &Graph, len: usize, path: &mut Vec<usize>) -> bool {
    let s = path[0];
    let last = *path.last().expect("nonempty");
    let k = path.len();
    let above_s = above(s);
    let used: u64 = path.iter().fold(0, |m, &v| m | 1 << v);
    // Vertices adjacent to an interior path vertex would create a chord.
    let interior: u64 = path[1..k.max(2) - 1]
        .iter()
        .fold(0, |m, &v| m | g.neighbors(v));
    let mut options = g.neighbors(last) & above_s & !used & !interior;
    if k == len - 1 {
        options &= g.neighbors(s);
        // Fix orientation: second vertex below the last.
        options &= above(path[1]);
    } else if k > 1 {
        options &= !g.neighbors(s);
    }
    while options != 0 {
        let u = options.trailing_zeros() as usize;
        options &= options - 1;
        path.push(u);
        if k + 1 == len || cycle_from(g, len, path) {
            return true;
        }
        path.pop();
    }
    false
}

fn above(v: usize) -> u64 {
    u64::MAX.checked_shl(v as u32 + 1).unwrap_or(0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PerfectReport {
    pub perfect: bool,
    pub max_len: usize,
    pub witness: Option<BergeWitness>,
}

/// Berge test up to `max_len`: no odd hole in `g` or in its complement.
pub fn is_perfect(g: &Graph, max_len: usize) -> Result<PerfectReport> {
    if g.order() > PERFECTION_CAP {
        return Err(Error::SizeLimit {
            what: "perfection test vertex count",
            actual: g.order(),
            limit: PERFECTION_CAP,
        });
    }
    let witness = find_odd_hole(g, max_len).or_else(|| {
        find_odd_hole(&g.complement(), max_len).map(|w| BergeWitness {
            kind: WitnessKind::OddAntihole,
            vertices: w.vertices,
        })
    });
    Ok(PerfectReport {
        perfect: witness.is_none(),
        max_len,
        witness,
    })
}

/// Complete search over all cycle lengths.
pub fn is_perfect_complete(g: &Graph) -> Result<PerfectReport> {
    is_perfect(g, g.order())
}

/// `K_w ∇ mC_n` and its complement are perfect exactly when `n` is even or 3.
pub fn multicone_perfect_predicate(p: MulticoneParams) -> bool {
    p.n.is_multiple_of(2) || p.n == 3
}

/// Default search depth for a multicone: the rim length.
pub fn multicone_max_len(p: MulticoneParams) -> usize {
    p.n
}
