//! Structural facts recoverable from a spectrum, and executable forms of the
//! classical spectral characterizations used by the multicone arguments:
//! the spectral-radius bound with its equality case, join detection through
//! the Laplacian eigenvalue `n`, the regularity criteria, the structure of
//! non-regular graphs with three eigenvalues, and graphs with exactly one
//! positive eigenvalue.
//!
//! Every "is an eigenvalue" decision feeding an equivalence is made on the
//! exact characteristic polynomial.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::numeric::{eigenvalues_numeric, NumericSpectrum};
use crate::poly::{char_poly_exact, CharPoly, MatrixKind};

/// Longest closed-walk length reported.
pub const MAX_WALK_LENGTH: usize = 6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumFacts {
    pub kind: MatrixKind,
    pub vertex_count: usize,
    #[serde(serialize_with = "decimal::one")]
    pub edge_count: BigInt,
    /// Closed walks of length 2..=6, adjacency only.
    #[serde(serialize_with = "decimal::list")]
    pub closed_walk_counts: Option<Vec<BigInt>>,
    #[serde(serialize_with = "decimal::opt")]
    pub triangle_count: Option<BigInt>,
    /// Adjacency only: `Some(d)` when the spectrum is that of a d-regular graph.
    #[serde(serialize_with = "decimal::opt")]
    pub regular_degree: Option<BigInt>,
    pub is_regular_by_spectrum: Option<bool>,
    pub is_bipartite_by_spectrum: Option<bool>,
    #[serde(serialize_with = "decimal::opt")]
    pub spanning_tree_count: Option<BigInt>,
    pub component_count: Option<usize>,
    #[serde(serialize_with = "decimal::opt")]
    pub sum_sq_degrees: Option<BigInt>,
}

/// Big integers as decimal strings in JSON.
mod decimal {
    use num_bigint::BigInt;
    use serde::Serializer;

    pub fn one<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(x)
    }

    pub fn opt<S: Serializer>(x: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => s.serialize_some(&v.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn list<S: Serializer>(x: &Option<Vec<BigInt>>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => s.serialize_some(&v.iter().map(ToString::to_string).collect::<Vec<_>>()),
            None => s.serialize_none(),
        }
    }
}

pub fn facts_from_spectrum(p: &CharPoly, kind: MatrixKind) -> Result<SpectrumFacts> {
    let n = p.degree();
    let mut facts = SpectrumFacts {
        kind,
        vertex_count: n,
        edge_count: BigInt::zero(),
        closed_walk_counts: None,
        triangle_count: None,
        regular_degree: None,
        is_regular_by_spectrum: None,
        is_bipartite_by_spectrum: None,
        spanning_tree_count: None,
        component_count: None,
        sum_sq_degrees: None,
    };
    match kind {
        MatrixKind::Adjacency => {
            let sums = p.power_sums(MAX_WALK_LENGTH);
            facts.edge_count = exact_div(&sums[1], 2);
            facts.triangle_count = Some(exact_div(&sums[2], 6));
            facts.closed_walk_counts = Some(sums[1..].to_vec());

            let two_m = &sums[1];
            let regular = (n > 0)
                .then(|| {
                    let (d, r) = two_m.div_rem(&BigInt::from(n));
                    (r.is_zero() && p.div_linear(&d).is_some() && p.roots_above(&d) == 0)
                        .then_some(d)
                })
                .flatten();
            facts.is_regular_by_spectrum = Some(regular.is_some() || n == 0);
            facts.regular_degree = regular;
            // Symmetric spectrum: p(-x) = ±p(x), i.e. every x^{n-k} with odd k vanishes.
            let bipartite = (0..=n)
                .filter(|k| k % 2 == 1)
                .all(|k| p.coeff(n - k).is_zero());
            facts.is_bipartite_by_spectrum = Some(bipartite);
        }
        MatrixKind::Laplacian => {
            let sums = p.power_sums(2);
            facts.edge_count = exact_div(&sums[0], 2);
            let components = p.zero_root_multiplicity();
            facts.component_count = Some(components);
            facts.sum_sq_degrees = Some(&sums[1] - &sums[0]);
            let trees = if components == 1 {
                // Product of nonzero roots = (-1)^{n-1} · coefficient of x.
                let mut prod = p.coeff(1);
                if (n - 1) % 2 == 1 {
                    prod = -prod;
                }
                exact_div(&prod, n as i64)
            } else {
                BigInt::zero()
            };
            facts.spanning_tree_count = Some(trees);
        }
        MatrixKind::SignlessLaplacian => {
            return Err(Error::KindMismatch {
                expected: "adjacency or laplacian",
                actual: kind.name(),
            })
        }
    }
    Ok(facts)
}

fn exact_div(a: &BigInt, d: i64) -> BigInt {
    let (q, r) = a.div_rem(&BigInt::from(d));
    assert!(r.is_zero(), "invariant breach: {a} not divisible by {d}");
    q
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StructureClass {
    Regular {
        degree: usize,
    },
    /// Every vertex has degree `low` (the minimum) or `high = n - 1`.
    Bidegreed {
        low: usize,
        high: usize,
    },
    Neither,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub rho: f64,
    pub delta: usize,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub bound: f64,
    /// Decided from the degree multiset, not from `rho` and `bound`.
    pub equality_holds: bool,
    pub structure_class: StructureClass,
}

/// `ρ ≤ (δ-1)/2 + √(2m - nδ + (δ+1)²/4)` for the minimum degree `δ`, with
/// equality exactly for regular graphs and graphs whose degrees are all `δ`
/// or `n - 1`. Defined on connected graphs only.
pub fn spectral_radius_bound(g: &Graph) -> Result<BoundReport> {
    if g.order() == 0 || !g.is_connected() {
        return Err(Error::Unsupported(
            "the radius bound equality case is only characterized for connected graphs".into(),
        ));
    }
    let n = g.order();
    let m = g.edge_count();
    let delta = g.min_degree();
    let d = delta as f64;
    let bound = (d - 1.0) / 2.0 + (2.0 * m as f64 - n as f64 * d + (d + 1.0).powi(2) / 4.0).sqrt();
    let structure_class = structure_class(g);
    Ok(BoundReport {
        rho: eigenvalues_numeric(g, MatrixKind::Adjacency)?.largest(),
        delta,
        vertex_count: n,
        edge_count: m,
        bound,
        equality_holds: structure_class != StructureClass::Neither,
        structure_class,
    })
}

pub fn structure_class(g: &Graph) -> StructureClass {
    if let Some(degree) = g.regular_degree() {
        return StructureClass::Regular { degree };
    }
    let low = g.min_degree();
    let high = g.order() - 1;
    if g.degrees().iter().all(|&d| d == low || d == high) {
        StructureClass::Bidegreed { low, high }
    } else {
        StructureClass::Neither
    }
}

/// Whether the vertex count `n` is a Laplacian eigenvalue, decided by exact
/// division of the Laplacian characteristic polynomial by `x - n`.
pub fn has_join_eigenvalue(g: &Graph) -> bool {
    let n = g.order();
    n > 0
        && char_poly_exact(g, MatrixKind::Laplacian)
            .div_linear(&BigInt::from(n))
            .is_some()
}

/// `g` is a join of two graphs exactly when its complement is disconnected.
pub fn is_join(g: &Graph) -> bool {
    g.order() >= 2 && !g.complement().is_connected()
}

/// Splits a join `g = A ∇ B` into the vertex sets of `A` and `B`.
pub fn join_parts(g: &Graph) -> Option<(Vec<usize>, Vec<usize>)> {
    if !is_join(g) {
        return None;
    }
    let first = g.complement().components()[0];
    let (a, b): (Vec<usize>, Vec<usize>) = (0..g.order()).partition(|&v| first >> v & 1 == 1);
    Some((a, b))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegularityReport {
    pub is_regular: bool,
    pub rho: f64,
    pub average_degree: f64,
    /// `|ρ - average degree| < 1e-9`.
    pub rho_equals_average: bool,
    /// `A·1` is a multiple of `1`, checked exactly.
    pub ones_is_eigenvector: bool,
    pub consistent: bool,
}

pub fn regularity_report(g: &Graph) -> Result<RegularityReport> {
    let is_regular = g.regular_degree().is_some();
    let rho = eigenvalues_numeric(g, MatrixKind::Adjacency)?.largest();
    let n = g.order().max(1);
    let average_degree = 2.0 * g.edge_count() as f64 / n as f64;
    let rho_equals_average = (rho - average_degree).abs() < 1e-9;
    let image: Vec<i64> = MatrixKind::Adjacency
        .matrix(g)
        .iter()
        .map(|row| row.iter().sum())
        .collect();
    let ones_is_eigenvector = image.windows(2).all(|w| w[0] == w[1]);
    Ok(RegularityReport {
        is_regular,
        rho,
        average_degree,
        rho_equals_average,
        ones_is_eigenvector,
        consistent: is_regular == rho_equals_average && is_regular == ones_is_eigenvector,
    })
}

/// Parts of the complete multipartite graph formed by the non-isolated
/// vertices, or `None` if they do not form one (or there are none).
pub fn recognize_complete_multipartite(g: &Graph) -> Option<Vec<Vec<usize>>> {
    let support = g.non_isolated();
    if support.is_empty() {
        return None;
    }
    let core = g.induced_subgraph(&support).ok()?;
    let co = core.complement();
    let mut parts = Vec::new();
    for comp in co.components() {
        let members: Vec<usize> = (0..core.order()).filter(|&v| comp >> v & 1 == 1).collect();
        // Each complement component must be a clique.
        let size = members.len();
        if members
            .iter()
            .any(|&v| (co.neighbors(v) & comp).count_ones() as usize != size - 1)
        {
            return None;
        }
        parts.push(members.into_iter().map(|v| support[v]).collect());
    }
    Some(parts)
}

/// Numeric positive-eigenvalue threshold.
pub const POSITIVE_THRESHOLD: f64 = 1e-9;
/// Eigenvalues with magnitude in this open band trigger an exact recount.
pub const GUARD_BAND: (f64, f64) = (1e-11, 1e-7);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PositiveCount {
    pub count: usize,
    /// The numeric count was replaced by the exact sign-change count.
    pub guard_engaged: bool,
}

pub fn positive_eigenvalue_count(g: &Graph) -> Result<usize> {
    Ok(positive_eigenvalue_count_detailed(g)?.count)
}

pub fn positive_eigenvalue_count_detailed(g: &Graph) -> Result<PositiveCount> {
    let spectrum = eigenvalues_numeric(g, MatrixKind::Adjacency)?;
    Ok(count_positive(g, &spectrum.values))
}

fn count_positive(g: &Graph, values: &[f64]) -> PositiveCount {
    let borderline = values
        .iter()
        .any(|x| x.abs() > GUARD_BAND.0 && x.abs() < GUARD_BAND.1);
    if borderline {
        PositiveCount {
            count: char_poly_exact(g, MatrixKind::Adjacency).positive_root_count(),
            guard_engaged: true,
        }
    } else {
        PositiveCount {
            count: values.iter().filter(|&&x| x > POSITIVE_THRESHOLD).count(),
            guard_engaged: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThreeEigenvalueReport {
    pub theta: [f64; 3],
    pub diameter: usize,
    pub complete_bipartite: bool,
    pub checks: Vec<NamedCheck>,
}

impl ThreeEigenvalueReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub fn is_complete_bipartite(g: &Graph) -> bool {
    g.non_isolated().len() == g.order()
        && recognize_complete_multipartite(g).is_some_and(|parts| parts.len() == 2)
}

/// Checks for a connected non-regular graph with exactly three distinct
/// adjacency eigenvalues `θ0 > θ1 > θ2`: diameter two; non-integral `θ0`
/// forces complete bipartite; `θ1 ≥ 0` with equality exactly for complete
/// bipartite graphs; `θ2 ≤ -√2` with equality exactly for the path `P3`.
pub fn three_eigenvalue_report(g: &Graph) -> Result<ThreeEigenvalueReport> {
    if g.order() == 0 || !g.is_connected() {
        return Err(Error::NotApplicable("graph is not connected".into()));
    }
    if g.regular_degree().is_some() {
        return Err(Error::NotApplicable("graph is regular".into()));
    }
    let spectrum = eigenvalues_numeric(g, MatrixKind::Adjacency)?;
    if spectrum.distinct_count() != 3 {
        return Err(Error::NotApplicable(format!(
            "graph has {} distinct eigenvalues",
            spectrum.distinct_count()
        )));
    }
    let theta = [
        spectrum.groups[0].0,
        spectrum.groups[1].0,
        spectrum.groups[2].0,
    ];
    let p = char_poly_exact(g, MatrixKind::Adjacency);
    let complete_bipartite = is_complete_bipartite(g);
    let diameter = g.diameter().expect("connected");

    let rounded = theta[0].round();
    let theta0_integral =
        (theta[0] - rounded).abs() < 1e-6 && p.div_linear(&BigInt::from(rounded as i64)).is_some();
    let theta1_zero = p.zero_root_multiplicity() > 0;
    let sqrt2_root = p
        .div_exact(&CharPoly::from_i64_descending(&[1, 0, -2]).expect("monic"))
        .is_some();
    let theta2_is_minus_sqrt2 = sqrt2_root && (theta[2] + 2f64.sqrt()).abs() < 1e-6;
    let is_p3 = g.order() == 3 && g.edge_count() == 2;

    let checks = vec![
        NamedCheck {
            name: "diameter-two",
            passed: diameter == 2,
            detail: format!("diameter {diameter}"),
        },
        NamedCheck {
            name: "non-integral-theta0-implies-complete-bipartite",
            passed: theta0_integral || complete_bipartite,
            detail: format!("theta0 {:.9} integral={theta0_integral}", theta[0]),
        },
        NamedCheck {
            name: "theta1-nonnegative",
            passed: theta[1] > -1e-9 && (theta1_zero == complete_bipartite),
            detail: format!("theta1 {:.9} zero={theta1_zero}", theta[1]),
        },
        NamedCheck {
            name: "theta2-at-most-minus-sqrt2",
            passed: theta[2] < -(2f64.sqrt()) + 1e-9 && (theta2_is_minus_sqrt2 == is_p3),
            detail: format!(
                "theta2 {:.9} equals -sqrt2={theta2_is_minus_sqrt2}",
                theta[2]
            ),
        },
    ];
    Ok(ThreeEigenvalueReport {
        theta,
        diameter,
        complete_bipartite,
        checks,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum DegreeProfile {
    Regular(usize),
    /// `(degree, count)` pairs, higher degree first.
    Bidegreed((usize, usize), (usize, usize)),
    Other(Vec<(usize, usize)>),
}

pub fn bidegreed_profile(g: &Graph) -> DegreeProfile {
    let mut counts: Vec<(usize, usize)> = Vec::new();
    for d in g.degree_sequence().into_iter().rev() {
        match counts.last_mut() {
            Some((deg, c)) if *deg == d => *c += 1,
            _ => counts.push((d, 1)),
        }
    }
    match counts.as_slice() {
        [] => DegreeProfile::Regular(0),
        [(d, _)] => DegreeProfile::Regular(*d),
        [hi, lo] => DegreeProfile::Bidegreed(*hi, *lo),
        _ => DegreeProfile::Other(counts),
    }
}

pub fn signless_laplacian_spectrum(g: &Graph) -> Result<NumericSpectrum> {
    eigenvalues_numeric(g, MatrixKind::SignlessLaplacian)
}

/// Everything above for one graph, as printed by `invariants`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantSummary {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub connected: bool,
    pub adjacency_facts: SpectrumFacts,
    pub laplacian_facts: SpectrumFacts,
    pub degree_profile: DegreeProfile,
    pub bound: Option<BoundReport>,
    pub has_join_eigenvalue: bool,
    pub is_join: bool,
    pub regularity: RegularityReport,
    pub positive_eigenvalues: PositiveCount,
    pub complete_multipartite_parts: Option<Vec<usize>>,
    pub three_eigenvalue: Option<ThreeEigenvalueReport>,
}

pub fn summarize(g: &Graph) -> Result<InvariantSummary> {
    let a = char_poly_exact(g, MatrixKind::Adjacency);
    let l = char_poly_exact(g, MatrixKind::Laplacian);
    Ok(InvariantSummary {
        vertex_count: g.order(),
        edge_count: g.edge_count(),
        connected: g.is_connected(),
        adjacency_facts: facts_from_spectrum(&a, MatrixKind::Adjacency)?,
        laplacian_facts: facts_from_spectrum(&l, MatrixKind::Laplacian)?,
        degree_profile: bidegreed_profile(g),
        bound: spectral_radius_bound(g).ok(),
        has_join_eigenvalue: has_join_eigenvalue(g),
        is_join: is_join(g),
        regularity: regularity_report(g)?,
        positive_eigenvalues: positive_eigenvalue_count_detailed(g)?,
        complete_multipartite_parts: recognize_complete_multipartite(g)
            .map(|parts| parts.iter().map(Vec::len).collect()),
        three_eigenvalue: three_eigenvalue_report(g).ok(),
    })
}
