//! Exact characteristic polynomials `det(xI - M)` of the adjacency,
//! Laplacian and signless Laplacian matrices, over the integers.
//!
//! Coefficients come from the Faddeev-LeVerrier recurrence
//!
//! ```text
//! M_0 = 0,  c_n = 1
//! M_k = A M_{k-1} + c_{n-k+1} I
//! c_{n-k} = -tr(A M_k) / k
//! ```
//!
//! whose divisions are exact over the integers. The recurrence first runs on
//! checked `i128` arithmetic and falls back to big integers on overflow.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MatrixKind {
    Adjacency,
    Laplacian,
    SignlessLaplacian,
}

impl MatrixKind {
    pub fn name(self) -> &'static str {
        match self {
            MatrixKind::Adjacency => "adjacency",
            MatrixKind::Laplacian => "laplacian",
            MatrixKind::SignlessLaplacian => "signless-laplacian",
        }
    }

    /// Diagonal entry for a vertex of degree `d` and the off-diagonal entry
    /// for an edge.
    fn entries(self, d: usize) -> (i64, i64) {
        match self {
            MatrixKind::Adjacency => (0, 1),
            MatrixKind::Laplacian => (d as i64, -1),
            MatrixKind::SignlessLaplacian => (d as i64, 1),
        }
    }

    /// Dense integer matrix of this kind for `g`, row-major.
    pub fn matrix(self, g: &Graph) -> Vec<Vec<i64>> {
        let n = g.order();
        let mut m = vec![vec![0; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            let (diag, off) = self.entries(g.degree(i));
            row[i] = diag;
            for (j, cell) in row.iter_mut().enumerate() {
                if g.has_edge(i, j) {
                    *cell = off;
                }
            }
        }
        m
    }
}

impl std::str::FromStr for MatrixKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" | "adjacency" => Ok(MatrixKind::Adjacency),
            "L" | "l" | "laplacian" => Ok(MatrixKind::Laplacian),
            "Q" | "q" | "signless" | "signless-laplacian" => Ok(MatrixKind::SignlessLaplacian),
            _ => Err(Error::InvalidParameter(format!(
                "unknown matrix kind {s:?} (use A, L or Q)"
            ))),
        }
    }
}

/// Monic integer polynomial. `coeffs[i]` is the coefficient of `x^i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CharPoly {
    coeffs: Vec<BigInt>,
}

impl CharPoly {
    pub fn from_ascending(coeffs: Vec<BigInt>) -> Result<Self> {
        match coeffs.last() {
            Some(lead) if lead.is_one() => Ok(Self { coeffs }),
            _ => Err(Error::InvalidParameter(
                "characteristic polynomial must be monic".into(),
            )),
        }
    }

    pub fn from_descending(mut coeffs: Vec<BigInt>) -> Result<Self> {
        coeffs.reverse();
        Self::from_ascending(coeffs)
    }

    pub fn from_i64_descending(coeffs: &[i64]) -> Result<Self> {
        Self::from_descending(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `∏ (x - r)` over the given integer roots.
    pub fn from_integer_roots(roots: &[i64]) -> Self {
        roots
            .iter()
            .fold(Self::one(), |p, &r| p.mul(&Self::linear(r)))
    }

    pub fn one() -> Self {
        Self {
            coeffs: vec![BigInt::one()],
        }
    }

    /// `x - r`.
    pub fn linear(r: i64) -> Self {
        Self {
            coeffs: vec![BigInt::from(-r), BigInt::one()],
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn ascending(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn descending(&self) -> Vec<BigInt> {
        self.coeffs.iter().rev().cloned().collect()
    }

    pub fn mul(&self, other: &CharPoly) -> CharPoly {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        CharPoly { coeffs: out }
    }

    pub fn sub(&self, other: &CharPoly) -> Vec<BigInt> {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len).map(|i| self.coeff(i) - other.coeff(i)).collect()
    }

    /// Exact quotient by `x - r`, or `None` when `r` is not a root.
    pub fn div_linear(&self, r: &BigInt) -> Option<CharPoly> {
        let (q, rem) = self.synthetic_division(r);
        rem.is_zero().then_some(CharPoly { coeffs: q })
    }

    fn synthetic_division(&self, r: &BigInt) -> (Vec<BigInt>, BigInt) {
        let d = self.degree();
        if d == 0 {
            return (vec![], self.coeffs[0].clone());
        }
        let mut q = vec![BigInt::zero(); d];
        let mut carry = BigInt::zero();
        for i in (0..=d).rev() {
            let v = &self.coeffs[i] + &carry * r;
            if i == 0 {
                return (q, v);
            }
            q[i - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    /// Exact division by another monic polynomial.
    pub fn div_exact(&self, divisor: &CharPoly) -> Option<CharPoly> {
        if divisor.degree() > self.degree() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        let mut q = vec![BigInt::zero(); self.degree() - dd + 1];
        for k in (0..q.len()).rev() {
            let c = rem[k + dd].clone();
            if !c.is_zero() {
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * b;
                }
            }
            q[k] = c;
        }
        rem.iter()
            .all(Zero::is_zero)
            .then_some(CharPoly { coeffs: q })
    }

    /// Multiplicity of the integer `r` as a root.
    pub fn root_multiplicity(&self, r: &BigInt) -> usize {
        let mut p = self.clone();
        let mut k = 0;
        while p.degree() > 0 {
            match p.div_linear(r) {
                Some(q) => {
                    p = q;
                    k += 1;
                }
                None => break,
            }
        }
        k
    }

    /// Multiplicity of the root 0: the number of vanishing low coefficients.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// `p(x + c)`.
    pub fn shifted(&self, c: &BigInt) -> CharPoly {
        // Horner in polynomial form: p(x+c) = (...((a_d)(x+c) + a_{d-1})(x+c) ...)
        let mut acc = vec![self.coeffs[self.degree()].clone()];
        for i in (0..self.degree()).rev() {
            let mut next = vec![BigInt::zero(); acc.len() + 1];
            for (j, a) in acc.iter().enumerate() {
                next[j + 1] += a;
                next[j] += a * c;
            }
            next[0] += &self.coeffs[i];
            acc = next;
        }
        CharPoly { coeffs: acc }
    }

    /// Number of roots strictly greater than zero, counted with
    /// multiplicity. Exact for real-rooted polynomials (every characteristic
    /// polynomial of a symmetric matrix), where Descartes' sign count is tight.
    pub fn positive_root_count(&self) -> usize {
        let signs: Vec<bool> = self
            .coeffs
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| c.is_positive())
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of roots strictly greater than the integer `t`.
    pub fn roots_above(&self, t: &BigInt) -> usize {
        self.shifted(t).positive_root_count()
    }

    /// Newton power sums `Σ λ^k` for `k = 1..=max_k`, exact.
    pub fn power_sums(&self, max_k: usize) -> Vec<BigInt> {
        let n = self.degree();
        // a(j) = coefficient of x^{n-j}; a(0) = 1.
        let a = |j: usize| {
            if j <= n {
                self.coeffs[n - j].clone()
            } else {
                BigInt::zero()
            }
        };
        let mut p: Vec<BigInt> = Vec::with_capacity(max_k + 1);
        p.push(BigInt::from(n));
        for k in 1..=max_k {
            let mut s = BigInt::from(k) * a(k);
            for j in 1..k {
                s += a(j) * &p[k - j];
            }
            p.push(-s);
        }
        p.remove(0);
        p
    }

    pub fn evaluate(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * x + BigRational::from_integer(c.clone())
            })
    }

    pub fn evaluate_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Largest coefficient magnitude, as a float scale for residual checks.
    pub fn coefficient_scale(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY))
            .fold(1.0, f64::max)
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in (0..=self.degree()).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            if !mag.is_one() || i == 0 {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for CharPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.coeffs.iter().rev().map(|c| c.to_string()).collect();
        strings.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CharPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        let coeffs = strings
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        CharPoly::from_descending(coeffs).map_err(serde::de::Error::custom)
    }
}

/// Arithmetic needed by the recurrence; `None` signals overflow.
trait Scalar: Clone {
    fn nil() -> Self;
    fn from_i64(v: i64) -> Self;
    fn add(&self, o: &Self) -> Option<Self>;
    fn mul_i64(&self, k: i64) -> Option<Self>;
    fn is_nil(&self) -> bool;
    /// Panics when `k` does not divide `self`: the recurrence guarantees it does.
    fn div_exact_i64(&self, k: i64) -> Self;
    fn into_bigint(self) -> BigInt;
}

impl Scalar for i128 {
    fn nil() -> Self {
        0
    }
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn mul_i64(&self, k: i64) -> Option<Self> {
        self.checked_mul(k as i128)
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn div_exact_i64(&self, k: i64) -> Self {
        let k = k as i128;
        assert!(
            self % k == 0,
            "invariant breach: inexact division {self} / {k}"
        );
        self / k
    }
    fn into_bigint(self) -> BigInt {
        BigInt::from(self)
    }
}

impl Scalar for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn mul_i64(&self, k: i64) -> Option<Self> {
        Some(self * k)
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn div_exact_i64(&self, k: i64) -> Self {
        let (q, r) = num_integer::Integer::div_rem(self, &BigInt::from(k));
        assert!(
            Zero::is_zero(&r),
            "invariant breach: inexact division {self} / {k}"
        );
        q
    }
    fn into_bigint(self) -> BigInt {
        self
    }
}

/// Sparse row view: diagonal value plus `(column, value)` off-diagonal entries.
struct SparseMatrix {
    diag: Vec<i64>,
    off: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    fn new(g: &Graph, kind: MatrixKind) -> Self {
        let n = g.order();
        let mut diag = Vec::with_capacity(n);
        let mut off = Vec::with_capacity(n);
        for i in 0..n {
            let (d, e) = kind.entries(g.degree(i));
            diag.push(d);
            let mut row = Vec::new();
            let mut rest = g.neighbors(i);
            while rest != 0 {
                row.push((rest.trailing_zeros() as usize, e));
                rest &= rest - 1;
            }
            off.push(row);
        }
        Self { diag, off }
    }
}

fn faddeev_leverrier<T: Scalar>(a: &SparseMatrix) -> Option<Vec<BigInt>> {
    let n = a.diag.len();
    let mut coeffs = vec![T::nil(); n + 1];
    coeffs[n] = T::from_i64(1);
    // M_k stored row-major.
    let mut m = vec![T::nil(); n * n];
    let mut next = vec![T::nil(); n * n];
    for k in 1..=n {
        // next = A * m
        for i in 0..n {
            for col in 0..n {
                let mut acc = m[i * n + col].mul_i64(a.diag[i])?;
                for &(j, v) in &a.off[i] {
                    let term = m[j * n + col].mul_i64(v)?;
                    acc = acc.add(&term)?;
                }
                next[i * n + col] = acc;
            }
        }
        // M_k = A M_{k-1} + c_{n-k+1} I
        let c = coeffs[n - k + 1].clone();
        for i in 0..n {
            next[i * n + i] = next[i * n + i].add(&c)?;
        }
        std::mem::swap(&mut m, &mut next);
        // tr(A M_k)
        let mut trace = T::nil();
        for i in 0..n {
            let mut t = m[i * n + i].mul_i64(a.diag[i])?;
            for &(j, v) in &a.off[i] {
                t = t.add(&m[j * n + i].mul_i64(v)?)?;
            }
            trace = trace.add(&t)?;
        }
        let c = trace.div_exact_i64(k as i64).mul_i64(-1)?;
        coeffs[n - k] = c;
    }
    debug_assert!(n == 0 || !coeffs[n].is_nil());
    Some(coeffs.into_iter().map(Scalar::into_bigint).collect())
}

pub fn char_poly_exact(g: &Graph, kind: MatrixKind) -> CharPoly {
    let a = SparseMatrix::new(g, kind);
    let coeffs = faddeev_leverrier::<i128>(&a)
        .or_else(|| faddeev_leverrier::<BigInt>(&a))
        .expect("big-integer recurrence cannot overflow");
    CharPoly { coeffs }
}

/// Exact cospectrality: identical characteristic polynomials.
pub fn cospectral_exact(g: &Graph, h: &Graph, kind: MatrixKind) -> bool {
    g.order() == h.order()
        && g.edge_count() == h.edge_count()
        && char_poly_exact(g, kind) == char_poly_exact(h, kind)
}

pub fn poly_evaluate(p: &CharPoly, x: &BigRational) -> BigRational {
    p.evaluate(x)
}
