//! Floating-point spectra via cyclic Jacobi rotations, eigenvalue grouping,
//! and the per-vertex eigenspace projections used by the vertex-deletion
//! identity `P_{G-j}(y) = P_G(y) Σ_i α_ij² / (y - μ_i)`.
//!
//! These numbers are advisory: exact cospectrality lives in [`crate::poly`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::poly::{char_poly_exact, MatrixKind};

pub const DEFAULT_GROUP_TOL: f64 = 1e-7;
/// Eigenvector-dependent quantities are limited to this many vertices.
pub const MAIN_ANGLE_CAP: usize = 32;
const MAX_SWEEPS: usize = 100;

/// Dense symmetric eigendecomposition. Returns eigenvalues in descending
/// order and the matching unit eigenvectors (`vectors[k]` belongs to
/// `values[k]`).
pub fn symmetric_eigen(matrix: &[Vec<f64>]) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = matrix.len();
    let mut a: Vec<Vec<f64>> = matrix.to_vec();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let scale = a
        .iter()
        .flatten()
        .map(|x| x * x)
        .sum::<f64>()
        .sqrt()
        .max(1.0);

    let mut converged = n <= 1;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| a[p][q] * a[p][q])
            .sum();
        if off.sqrt() <= 1e-15 * scale {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                a[p][p] -= t * apq;
                a[q][q] += t * apq;
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for r in 0..n {
                    if r != p && r != q {
                        let (arp, arq) = (a[r][p], a[r][q]);
                        a[r][p] = c * arp - s * arq;
                        a[p][r] = a[r][p];
                        a[r][q] = s * arp + c * arq;
                        a[q][r] = a[r][q];
                    }
                    let (vrp, vrq) = (v[r][p], v[r][q]);
                    v[r][p] = c * vrp - s * vrq;
                    v[r][q] = s * vrp + c * vrq;
                }
            }
        }
    }
    if !converged {
        return Err(Error::NumericFailure { sweeps: MAX_SWEEPS });
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| a[j][j].total_cmp(&a[i][i]));
    let values = idx.iter().map(|&k| a[k][k]).collect();
    let vectors = idx
        .iter()
        .map(|&k| (0..n).map(|r| v[r][k]).collect())
        .collect();
    Ok((values, vectors))
}

pub fn symmetric_eigenvalues(matrix: &[Vec<f64>]) -> Result<Vec<f64>> {
    Ok(symmetric_eigen(matrix)?.0)
}

fn float_matrix(g: &Graph, kind: MatrixKind) -> Vec<Vec<f64>> {
    kind.matrix(g)
        .into_iter()
        .map(|row| row.into_iter().map(|x| x as f64).collect())
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct NumericSpectrum {
    pub kind: MatrixKind,
    pub tol: f64,
    /// Descending.
    pub values: Vec<f64>,
    /// `(value, multiplicity)` with values within `tol` of a neighbor merged.
    pub groups: Vec<(f64, usize)>,
}

/// Groups a descending list: a value joins the current group while it lies
/// within `tol` of the previous value. Group values are means.
pub fn group_values(values: &[f64], tol: f64) -> Vec<(f64, usize)> {
    let mut groups: Vec<(f64, usize)> = Vec::new();
    let mut prev = f64::NAN;
    let mut sum = 0.0;
    for &x in values {
        if groups.is_empty() || (prev - x).abs() > tol {
            if let Some(last) = groups.last_mut() {
                last.0 = sum / last.1 as f64;
            }
            groups.push((x, 0));
            sum = 0.0;
        }
        let last = groups.last_mut().unwrap();
        last.1 += 1;
        sum += x;
        prev = x;
    }
    if let Some(last) = groups.last_mut() {
        last.0 = sum / last.1 as f64;
    }
    groups
}

impl NumericSpectrum {
    pub fn from_values(kind: MatrixKind, mut values: Vec<f64>, tol: f64) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        let groups = group_values(&values, tol);
        Self {
            kind,
            tol,
            values,
            groups,
        }
    }

    pub fn largest(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn distinct_count(&self) -> usize {
        self.groups.len()
    }
}

#[derive(Serialize, Deserialize)]
struct SpectrumJson {
    kind: MatrixKind,
    tol: f64,
    groups: Vec<(f64, usize)>,
}

impl Serialize for NumericSpectrum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SpectrumJson {
            kind: self.kind,
            tol: self.tol,
            groups: self.groups.clone(),
        }
        .serialize(s)
    }
}

pub fn eigenvalues_numeric(g: &Graph, kind: MatrixKind) -> Result<NumericSpectrum> {
    eigenvalues_numeric_with_tol(g, kind, DEFAULT_GROUP_TOL)
}

pub fn eigenvalues_numeric_with_tol(
    g: &Graph,
    kind: MatrixKind,
    tol: f64,
) -> Result<NumericSpectrum> {
    let values = symmetric_eigenvalues(&float_matrix(g, kind))?;
    Ok(NumericSpectrum::from_values(kind, values, tol))
}

pub fn spectral_radius(g: &Graph) -> Result<f64> {
    Ok(eigenvalues_numeric(g, MatrixKind::Adjacency)?.largest())
}

/// Sorted values pairwise within `tol`.
pub fn values_match(a: &[f64], b: &[f64], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= tol)
}

pub fn spectra_equal_numeric(a: &NumericSpectrum, b: &NumericSpectrum, tol: f64) -> Result<bool> {
    if a.kind != b.kind {
        return Err(Error::KindMismatch {
            expected: a.kind.name(),
            actual: b.kind.name(),
        });
    }
    Ok(values_match(&a.values, &b.values, tol))
}

/// Squared projection norms of each standard basis vector onto each
/// adjacency eigenspace.
#[derive(Debug, Clone)]
pub struct MainAngles {
    /// Distinct eigenvalues, descending.
    pub eigenvalues: Vec<f64>,
    /// `squared[i][j]`: squared norm of the projection of `e_j` onto the
    /// eigenspace of `eigenvalues[i]`.
    pub squared: Vec<Vec<f64>>,
}

pub fn main_angles(g: &Graph) -> Result<MainAngles> {
    main_angles_with_tol(g, DEFAULT_GROUP_TOL)
}

pub fn main_angles_with_tol(g: &Graph, tol: f64) -> Result<MainAngles> {
    let n = g.order();
    if n > MAIN_ANGLE_CAP {
        return Err(Error::SizeLimit {
            what: "main-angle vertex count",
            actual: n,
            limit: MAIN_ANGLE_CAP,
        });
    }
    let (values, vectors) = symmetric_eigen(&float_matrix(g, MatrixKind::Adjacency))?;
    let groups = group_values(&values, tol);
    let mut squared = Vec::with_capacity(groups.len());
    let mut k = 0;
    for &(_, mult) in &groups {
        let mut row = vec![0.0; n];
        for vec in &vectors[k..k + mult] {
            for (j, x) in vec.iter().enumerate() {
                row[j] += x * x;
            }
        }
        squared.push(row);
        k += mult;
    }
    Ok(MainAngles {
        eigenvalues: groups.iter().map(|g| g.0).collect(),
        squared,
    })
}

/// Closest approach allowed between a sample point and an eigenvalue.
pub const MIN_SAMPLE_DISTANCE: f64 = 0.5;

/// Largest `|P_{G-j}(y) - P_G(y) Σ_i α_ij² / (y - μ_i)|` over the samples,
/// with both polynomials evaluated from their exact coefficients.
pub fn main_angle_identity_residual(g: &Graph, j: usize, samples: &[f64]) -> Result<f64> {
    let deleted = g.remove_vertex(j)?;
    let angles = main_angles(g)?;
    for &y in samples {
        for &mu in &angles.eigenvalues {
            if (y - mu).abs() < MIN_SAMPLE_DISTANCE {
                return Err(Error::SampleTooClose {
                    sample: y,
                    eigenvalue: mu,
                    distance: MIN_SAMPLE_DISTANCE,
                });
            }
        }
    }
    let p = char_poly_exact(g, MatrixKind::Adjacency);
    let q = char_poly_exact(&deleted, MatrixKind::Adjacency);
    let mut worst: f64 = 0.0;
    for &y in samples {
        let sum: f64 = angles
            .eigenvalues
            .iter()
            .zip(&angles.squared)
            .map(|(mu, row)| row[j] / (y - mu))
            .sum();
        let residual = (q.evaluate_f64(y) - p.evaluate_f64(y) * sum).abs();
        worst = worst.max(residual);
    }
    Ok(worst)
}
