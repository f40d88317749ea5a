//! Closed-form spectra, kept symbolic until compared.
//!
//! Each eigenvalue is one of
//!
//! * a rational number,
//! * `a + b·cos(2πk/n)` with integers `a, b`,
//! * a root `(Ω ± √(Ω² - 4Γ)) / 2` of `y² - Ωy + Γ`,
//!
//! carried with a multiplicity. Descriptors that happen to be rational (the
//! cosine at angles with denominator 1, 2, 3, 4 or 6, or a surd with a square
//! discriminant) are normalized to [`Eigenvalue::Rational`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::MulticoneParams;
use crate::poly::{CharPoly, MatrixKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", content = "params", rename_all = "snake_case")]
pub enum Eigenvalue {
    /// `num / den`, reduced, `den > 0`.
    Rational { num: i64, den: i64 },
    /// `a + b·cos(2πk/n)`.
    Cosine { a: i64, b: i64, k: u64, n: u64 },
    /// `(omega + sign·√(omega² - 4·gamma)) / 2`, `sign` is `1` or `-1`.
    QuadraticSurd { omega: i64, gamma: i64, sign: i8 },
}

impl Eigenvalue {
    pub fn rational(q: Rational64) -> Self {
        Eigenvalue::Rational {
            num: *q.numer(),
            den: *q.denom(),
        }
        .normalized()
    }

    pub fn integer(v: i64) -> Self {
        Eigenvalue::Rational { num: v, den: 1 }
    }

    pub fn cosine(a: i64, b: i64, k: u64, n: u64) -> Self {
        Eigenvalue::Cosine { a, b, k, n }.normalized()
    }

    pub fn surd(omega: i64, gamma: i64, sign: i8) -> Self {
        Eigenvalue::QuadraticSurd { omega, gamma, sign }.normalized()
    }

    /// The exact value when it is rational.
    pub fn as_rational(&self) -> Option<Rational64> {
        match *self {
            Eigenvalue::Rational { num, den } => Some(Rational64::new(num, den)),
            Eigenvalue::Cosine { a, b, k, n } => {
                rational_cos(k, n).map(|c| Rational64::from(a) + Rational64::from(b) * c)
            }
            Eigenvalue::QuadraticSurd { omega, gamma, sign } => {
                let disc = omega * omega - 4 * gamma;
                if disc < 0 {
                    return None;
                }
                let root = disc.sqrt();
                (root * root == disc).then(|| Rational64::new(omega + sign as i64 * root, 2))
            }
        }
    }

    pub fn normalized(self) -> Self {
        match self.as_rational() {
            Some(q) => Eigenvalue::Rational {
                num: *q.numer(),
                den: *q.denom(),
            },
            None => match self {
                Eigenvalue::Cosine { a, b, k, n } => {
                    // cos(2πk/n) = cos(2π(n-k)/n); keep the smaller index.
                    let k = k % n;
                    let k = k.min(n - k);
                    Eigenvalue::Cosine { a, b, k, n }
                }
                other => other,
            },
        }
    }

    pub fn to_f64(&self) -> f64 {
        match *self {
            Eigenvalue::Rational { num, den } => num as f64 / den as f64,
            Eigenvalue::Cosine { a, b, k, n } => {
                a as f64 + b as f64 * (2.0 * std::f64::consts::PI * k as f64 / n as f64).cos()
            }
            Eigenvalue::QuadraticSurd { omega, gamma, sign } => {
                let disc = (omega * omega - 4 * gamma) as f64;
                (omega as f64 + sign as f64 * disc.sqrt()) / 2.0
            }
        }
    }

    pub fn negated(self) -> Self {
        match self {
            Eigenvalue::Rational { num, den } => Eigenvalue::Rational { num: -num, den },
            Eigenvalue::Cosine { a, b, k, n } => Eigenvalue::Cosine { a: -a, b: -b, k, n },
            Eigenvalue::QuadraticSurd { omega, gamma, sign } => Eigenvalue::QuadraticSurd {
                omega: -omega,
                gamma,
                sign: -sign,
            },
        }
    }

    /// `self + c`.
    pub fn shifted(self, c: i64) -> Self {
        match self {
            Eigenvalue::Rational { num, den } => Eigenvalue::Rational {
                num: num + c * den,
                den,
            },
            Eigenvalue::Cosine { a, b, k, n } => Eigenvalue::Cosine { a: a + c, b, k, n },
            Eigenvalue::QuadraticSurd { omega, gamma, sign } => Eigenvalue::QuadraticSurd {
                omega: omega + 2 * c,
                gamma: gamma + omega * c + c * c,
                sign,
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_zero())
    }
}

/// `cos(2πk/n)` when rational (Niven: only 0, ±1/2, ±1 occur).
fn rational_cos(k: u64, n: u64) -> Option<Rational64> {
    let k = k % n;
    let d = n / k.gcd(&n);
    match d {
        1 => Some(Rational64::from(1)),
        2 => Some(Rational64::from(-1)),
        3 => Some(Rational64::new(-1, 2)),
        4 => Some(Rational64::from(0)),
        6 => Some(Rational64::new(1, 2)),
        _ => None,
    }
}

impl fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Eigenvalue::Rational { num, den: 1 } => write!(f, "{num}"),
            Eigenvalue::Rational { num, den } => write!(f, "{num}/{den}"),
            Eigenvalue::Cosine { a, b, k, n } => {
                if a != 0 {
                    write!(f, "{a}{}", if b < 0 { "-" } else { "+" })?;
                } else if b < 0 {
                    write!(f, "-")?;
                }
                write!(f, "{}cos(2π·{k}/{n})", b.abs())
            }
            Eigenvalue::QuadraticSurd { omega, gamma, sign } => {
                let sign = if sign > 0 { '+' } else { '-' };
                write!(f, "({omega}{sign}√{})/2", omega * omega - 4 * gamma)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Descriptor {
    #[serde(flatten)]
    pub value: Eigenvalue,
    pub mult: usize,
}

/// A multiset of exact eigenvalues.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ClosedSpectrum {
    pub descriptors: Vec<Descriptor>,
}

impl ClosedSpectrum {
    fn push(&mut self, value: Eigenvalue, mult: usize) {
        if mult > 0 {
            self.descriptors.push(Descriptor {
                value: value.normalized(),
                mult,
            });
        }
    }

    pub fn from_pairs(pairs: &[(Eigenvalue, usize)]) -> Self {
        let mut s = Self::default();
        for &(v, m) in pairs {
            s.push(v, m);
        }
        s
    }

    pub fn vertex_count(&self) -> usize {
        self.descriptors.iter().map(|d| d.mult).sum()
    }

    /// Float image with multiplicities expanded, descending.
    pub fn to_floats(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self
            .descriptors
            .iter()
            .flat_map(|d| std::iter::repeat_n(d.value.to_f64(), d.mult))
            .collect();
        out.sort_by(|a, b| b.total_cmp(a));
        out
    }

    /// Merges descriptors with the same exact value and sorts descending.
    pub fn canonical(&self) -> Self {
        let mut merged: Vec<Descriptor> = Vec::new();
        for d in &self.descriptors {
            let v = d.value.normalized();
            match merged.iter_mut().find(|e| e.value == v) {
                Some(e) => e.mult += d.mult,
                None => merged.push(Descriptor {
                    value: v,
                    mult: d.mult,
                }),
            }
        }
        merged.sort_by(|a, b| b.value.to_f64().total_cmp(&a.value.to_f64()));
        Self {
            descriptors: merged,
        }
    }

    /// Same multiset up to float comparison at `tol`.
    pub fn matches_floats(&self, values: &[f64], tol: f64) -> bool {
        crate::numeric::values_match(&self.to_floats(), values, tol)
    }

    pub fn approx_eq(&self, other: &ClosedSpectrum, tol: f64) -> bool {
        self.matches_floats(&other.to_floats(), tol)
    }

    /// Removes one exactly-zero eigenvalue.
    fn without_one_zero(&self) -> Result<Self> {
        let mut out = self.clone();
        let idx = out
            .descriptors
            .iter()
            .position(|d| d.value.is_zero())
            .ok_or_else(|| {
                Error::MalformedSpectrum("Laplacian spectrum has no zero eigenvalue".into())
            })?;
        out.descriptors[idx].mult -= 1;
        if out.descriptors[idx].mult == 0 {
            out.descriptors.remove(idx);
        }
        Ok(out)
    }

    fn map(&self, f: impl Fn(Eigenvalue) -> Eigenvalue) -> Self {
        let mut out = Self::default();
        for d in &self.descriptors {
            out.push(f(d.value), d.mult);
        }
        out
    }
}

impl fmt::Display for ClosedSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, d) in self.descriptors.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[{}]^{}", d.value, d.mult)?;
        }
        write!(f, "}}")
    }
}

fn check_cycle_len(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "cycle length {n} must be >= 3"
        )));
    }
    Ok(())
}

/// Upper index of the doubled cosine eigenvalues of `C_n`: `n/2 - 1` for
/// even `n`, `(n-1)/2` for odd `n`. May be zero, giving an empty range.
fn cosine_upper(n: usize) -> usize {
    if n.is_multiple_of(2) {
        n / 2 - 1
    } else {
        (n - 1) / 2
    }
}

/// Spectrum of the cycle `C_n`: `2cos(2πk/n)` for the adjacency matrix,
/// `2 - 2cos(2πk/n)` for the Laplacian and `2 + 2cos(2πk/n)` for the
/// signless Laplacian.
pub fn cycle_spectrum(n: usize, kind: MatrixKind) -> Result<ClosedSpectrum> {
    check_cycle_len(n)?;
    let (a, b) = match kind {
        MatrixKind::Adjacency => (0, 2),
        MatrixKind::Laplacian => (2, -2),
        MatrixKind::SignlessLaplacian => (2, 2),
    };
    let mut s = ClosedSpectrum::default();
    s.push(Eigenvalue::integer(a + b), 1);
    for k in 1..=cosine_upper(n) {
        s.push(Eigenvalue::cosine(a, b, k as u64, n as u64), 2);
    }
    if n.is_multiple_of(2) {
        s.push(Eigenvalue::integer(a - b), 1);
    }
    Ok(s)
}

/// Characteristic polynomial of `G1 ∇ G2` for an `r1`-regular `G1` on `n1`
/// vertices and an `r2`-regular `G2` on `n2` vertices:
///
/// `P = P1·P2 / ((y-r1)(y-r2)) · ((y-r1)(y-r2) - n1·n2)`.
pub fn join_char_poly(
    p1: &CharPoly,
    r1: i64,
    n1: usize,
    p2: &CharPoly,
    r2: i64,
    n2: usize,
) -> Result<CharPoly> {
    if p1.degree() != n1 || p2.degree() != n2 {
        return Err(Error::InvalidParameter(format!(
            "polynomial degrees ({}, {}) do not match vertex counts ({n1}, {n2})",
            p1.degree(),
            p2.degree()
        )));
    }
    let q1 = p1.div_linear(&BigInt::from(r1)).ok_or_else(|| {
        Error::RegularityViolation(format!("{r1} is not a root of the first polynomial"))
    })?;
    let q2 = p2.div_linear(&BigInt::from(r2)).ok_or_else(|| {
        Error::RegularityViolation(format!("{r2} is not a root of the second polynomial"))
    })?;
    // (y - r1)(y - r2) - n1 n2 = y² - (r1 + r2) y + r1 r2 - n1 n2
    let quad = CharPoly::from_descending(vec![
        BigInt::from(1),
        BigInt::from(-(r1 + r2)),
        BigInt::from(r1 * r2 - (n1 * n2) as i64),
    ])?;
    Ok(q1.mul(&q2).mul(&quad))
}

/// Adjacency spectrum of `K_w ∇ mC_n`:
/// `[-1]^{w-1}, [2cos(2πk/n)]^{2m}, [2]^{m-1}, [-2]^m (n even)` and the two
/// roots of `y² - Ωy + Γ` with `Ω = w+1`, `Γ = 2(w-1) - mnw`.
pub fn multicone_adjacency_spectrum(p: MulticoneParams) -> Result<ClosedSpectrum> {
    let p = MulticoneParams::new(p.w, p.m, p.n)?;
    let (m, n) = (p.m, p.n);
    let mut s = ClosedSpectrum::default();
    s.push(Eigenvalue::integer(-1), p.w - 1);
    for k in 1..=cosine_upper(n) {
        s.push(Eigenvalue::cosine(0, 2, k as u64, n as u64), 2 * m);
    }
    s.push(Eigenvalue::integer(2), m - 1);
    if n % 2 == 0 {
        s.push(Eigenvalue::integer(-2), m);
    }
    let (omega, gamma) = multicone_omega_gamma(p);
    s.push(Eigenvalue::surd(omega, gamma, 1), 1);
    s.push(Eigenvalue::surd(omega, gamma, -1), 1);
    debug_assert_eq!(s.vertex_count(), p.w + m * n);
    Ok(s)
}

/// `(Ω, Γ) = (w + 1, 2(w - 1) - mnw)`.
pub fn multicone_omega_gamma(p: MulticoneParams) -> (i64, i64) {
    let (w, m, n) = (p.w as i64, p.m as i64, p.n as i64);
    (w + 1, 2 * (w - 1) - m * n * w)
}

/// `n - λ` for every Laplacian eigenvalue but one zero, plus `0`.
pub fn complement_laplacian_spectrum(s: &ClosedSpectrum) -> Result<ClosedSpectrum> {
    let n = s.vertex_count() as i64;
    let rest = s.without_one_zero()?;
    let mut out = rest.map(|v| v.negated().shifted(n));
    out.push(Eigenvalue::integer(0), 1);
    Ok(out)
}

/// Laplacian spectrum of `G ∇ H` from those of `G` (n vertices) and `H`
/// (m vertices): `n+m, m+λ_i, n+μ_j, 0`.
pub fn join_laplacian_spectrum(g: &ClosedSpectrum, h: &ClosedSpectrum) -> Result<ClosedSpectrum> {
    let n = g.vertex_count() as i64;
    let m = h.vertex_count() as i64;
    let g_rest = g.without_one_zero()?;
    let h_rest = h.without_one_zero()?;
    let mut out = ClosedSpectrum::default();
    out.push(Eigenvalue::integer(n + m), 1);
    out.descriptors
        .extend(g_rest.map(|v| v.shifted(m)).descriptors);
    out.descriptors
        .extend(h_rest.map(|v| v.shifted(n)).descriptors);
    out.push(Eigenvalue::integer(0), 1);
    Ok(out)
}

/// Laplacian spectrum of `K_w ∇ mC_n`:
/// `[w+mn]^w, [w+2-2cos(2πk/n)]^{2m}, [w]^{m-1}, [w+4]^m (n even), [0]^1`.
pub fn multicone_laplacian_spectrum(p: MulticoneParams) -> Result<ClosedSpectrum> {
    let p = MulticoneParams::new(p.w, p.m, p.n)?;
    let (w, m, n) = (p.w as i64, p.m, p.n);
    let mut s = ClosedSpectrum::default();
    s.push(Eigenvalue::integer(w + (m * n) as i64), p.w);
    for k in 1..=cosine_upper(n) {
        s.push(Eigenvalue::cosine(w + 2, -2, k as u64, n as u64), 2 * m);
    }
    s.push(Eigenvalue::integer(w), m - 1);
    if n % 2 == 0 {
        s.push(Eigenvalue::integer(w + 4), m);
    }
    s.push(Eigenvalue::integer(0), 1);
    Ok(s)
}

/// Adjacency spectrum of the complement of `K_w ∇ mC_3`, i.e. of
/// `wK_1 ∪ K_{3,…,3}` (m parts): `[-3]^{m-1}, [0]^{2m+w}, [3m-3]^1`.
pub fn complement_multicone_c3_spectrum(w: usize, m: usize) -> Result<ClosedSpectrum> {
    MulticoneParams::new(w, m, 3)?;
    let mut s = ClosedSpectrum::default();
    s.push(Eigenvalue::integer(-3), m - 1);
    s.push(Eigenvalue::integer(0), 2 * m + w);
    s.push(Eigenvalue::integer(3 * m as i64 - 3), 1);
    Ok(s)
}

/// The larger quadratic root `(w+1+√((w-3)² + 4mnw))/2` written through the
/// radius bound `(δ-1)/2 + √(2e - vδ + (δ+1)²/4)` at `δ = w+2`; both sides
/// are returned as `(Ω, discriminant)` pairs for symbolic comparison.
pub fn largest_root_vs_radius_bound(p: MulticoneParams) -> ((i64, i64), (i64, i64)) {
    let (omega, gamma) = multicone_omega_gamma(p);
    let from_root = (omega, omega * omega - 4 * gamma);
    let delta = p.rim_degree() as i64;
    let (v, e) = (p.vertex_count() as i64, p.edge_count() as i64);
    // (δ-1)/2 + √(X)/2 with X = 4(2e - vδ) + (δ+1)², as (δ-1, X) over 2.
    let from_bound = (
        delta - 1,
        4 * (2 * e - v * delta) + (delta + 1) * (delta + 1),
    );
    (from_root, from_bound)
}

/// Whether the rational `q` is a root of `p`, decided exactly.
pub fn is_rational_root(p: &CharPoly, q: Rational64) -> bool {
    let x = num_rational::BigRational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom()));
    p.evaluate(&x).is_zero()
}

/// Rounds a descriptor's float image; used only for labels.
pub fn display_value(v: &Eigenvalue) -> String {
    match v.as_rational() {
        Some(q) if q.is_integer() => q.to_integer().to_string(),
        _ => format!("{:.12}", v.to_f64()),
    }
}
