//! The `δ = 2ν(n+1) + m + 1` quasi-invariant vector fields on
//! `CP^n × S^m × S^1`, evaluated numerically.
//!
//! Points are stored as representatives `(z, v, λ)` of `S^{2n+1} × S^m × S^1`.
//! Tangent vectors to `CP^n` are horizontal lifts `w` with `⟨z, w⟩ = 0`;
//! the class `[z, w]` is invariant under `(z, w) ↦ (ωz, ωw)` for `|ω| = 1`.
//!
//! Field indices are 1-based: `1 ..= 2ν+1` are the Clifford fields built from
//! `A_j`, and `2ν + j` for `j = 2 ..= m+1` are the sphere fields.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::clifford::{self, beta, hermitian, CliffordFamily, Sign};
use crate::error::{Error, Result};
use crate::invariants::WallParams;
use crate::linalg;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Numerical tolerances. Inputs are unit vectors and the formulas are
/// low-degree polynomials, so residuals stay near machine epsilon.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Tolerances {
    /// tangency and well-definedness identities
    pub algebraic: f64,
    /// `dκ ∘ ξ = ±ξ ∘ κ` comparisons
    pub invariance: f64,
    /// relative singular value threshold for rank
    pub rank: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { algebraic: 1e-10, invariance: 1e-9, rank: 1e-8 }
    }
}

/// Representative `(z, v, λ)` of a point of `CP^n × S^m × S^1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TotalSpacePoint {
    pub z: Vec<Complex64>,
    pub v: Vec<f64>,
    pub lambda: Complex64,
}

const UNIT_TOL: f64 = 1e-12;

impl TotalSpacePoint {
    pub fn new(z: Vec<Complex64>, v: Vec<f64>, lambda: Complex64) -> Result<Self> {
        let p = Self { z, v, lambda };
        if p.z.is_empty() || p.v.len() < 2 {
            return Err(Error::InvalidParameter("need n >= 0 and m >= 1".into()));
        }
        let norms = [
            p.z.iter().map(|c| c.norm_sqr()).sum::<f64>(),
            p.v.iter().map(|x| x * x).sum::<f64>(),
            p.lambda.norm_sqr(),
        ];
        if norms.iter().any(|s| (s - 1.0).abs() > UNIT_TOL) {
            return Err(Error::InvalidParameter(format!("point is not on the unit spheres: {norms:?}")));
        }
        Ok(p)
    }

    /// `n` of `CP^n`.
    pub fn n(&self) -> usize {
        self.z.len() - 1
    }

    /// `m` of `S^m`.
    pub fn m(&self) -> usize {
        self.v.len() - 1
    }

    /// Same point, representative `ωz`.
    pub fn with_phase(&self, omega: Complex64) -> Self {
        Self { z: self.z.iter().map(|c| omega * c).collect(), ..self.clone() }
    }
}

/// Tangent vector `([z, w], (v, u), (λ, μ))` in ambient coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AmbientTangent {
    pub w: Vec<Complex64>,
    pub u: Vec<f64>,
    pub mu: Complex64,
}

impl AmbientTangent {
    pub fn neg(&self) -> Self {
        Self {
            w: self.w.iter().map(|c| -c).collect(),
            u: self.u.iter().map(|x| -x).collect(),
            mu: -self.mu,
        }
    }

    /// Largest componentwise distance between the `w`, `u` and `μ` slots.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let w = self.w.iter().zip(&other.w).map(|(a, b)| (a - b).norm());
        let u = self.u.iter().zip(&other.u).map(|(a, b)| (a - b).abs());
        w.chain(u).chain([(self.mu - other.mu).norm()]).fold(0.0, f64::max)
    }

    /// `|⟨z,w⟩|`, `|⟨v,u⟩|`, `|Re(λ μ̄)|` at the anchor `p`.
    pub fn tangency_residuals(&self, p: &TotalSpacePoint) -> [f64; 3] {
        let zw = hermitian(&p.z, &self.w).norm();
        let vu: f64 = p.v.iter().zip(&self.u).map(|(a, b)| a * b).sum();
        let lm = (p.lambda * self.mu.conj()).re;
        [zw, vu.abs(), lm.abs()]
    }

    /// Real coordinates: Re/Im of `w`, then `u`, then Re/Im of `μ`.
    pub fn to_real(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(2 * self.w.len() + self.u.len() + 2);
        for c in &self.w {
            out.push(c.re);
            out.push(c.im);
        }
        out.extend_from_slice(&self.u);
        out.push(self.mu.re);
        out.push(self.mu.im);
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Involution {
    /// `([z], v, λ) ↦ ([z̄], −v, λ)`
    Sigma,
    /// `([z], v, λ) ↦ ([z], ρ(v), −λ)`, `ρ` negating the last coordinate
    Tau,
}

impl Involution {
    pub const ALL: [Involution; 2] = [Involution::Sigma, Involution::Tau];

    pub fn name(self) -> &'static str {
        match self {
            Involution::Sigma => "sigma",
            Involution::Tau => "tau",
        }
    }
}

fn reflect_last(v: &[f64]) -> Vec<f64> {
    let mut out = v.to_vec();
    if let Some(last) = out.last_mut() {
        *last = -*last;
    }
    out
}

pub fn apply_involution(kind: Involution, p: &TotalSpacePoint) -> TotalSpacePoint {
    match kind {
        Involution::Sigma => TotalSpacePoint {
            z: p.z.iter().map(|c| c.conj()).collect(),
            v: p.v.iter().map(|x| -x).collect(),
            lambda: p.lambda,
        },
        Involution::Tau => {
            TotalSpacePoint { z: p.z.clone(), v: reflect_last(&p.v), lambda: -p.lambda }
        }
    }
}

/// Differential of the involution; the result is anchored at
/// `apply_involution(kind, p)`.
pub fn apply_differential(kind: Involution, t: &AmbientTangent) -> AmbientTangent {
    match kind {
        Involution::Sigma => AmbientTangent {
            w: t.w.iter().map(|c| c.conj()).collect(),
            u: t.u.iter().map(|x| -x).collect(),
            mu: t.mu,
        },
        Involution::Tau => AmbientTangent { w: t.w.clone(), u: reflect_last(&t.u), mu: -t.mu },
    }
}

/// Deterministic generator for sample `stream` of a campaign seeded with `seed`.
pub fn sample_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Rotation-invariant sample: normalized Gaussian `z` and `v`, uniform `λ`.
pub fn sample_point<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> TotalSpacePoint {
    loop {
        let z: Vec<Complex64> = (0..=n)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let v: Vec<f64> = (0..=m).map(|_| rng.sample(StandardNormal)).collect();
        let zn = z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        let vn = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if zn < 1e-6 || vn < 1e-6 {
            continue;
        }
        let theta: f64 = rng.random_range(0.0..2.0 * PI);
        return TotalSpacePoint {
            z: z.into_iter().map(|c| c / zn).collect(),
            v: v.into_iter().map(|x| x / vn).collect(),
            lambda: Complex64::from_polar(1.0, theta),
        };
    }
}

/// Sphere field `ξ_{2ν+j}`, `2 ≤ j ≤ m+1`:
/// `(0, e_j − ⟨v,e_j⟩ v, −i⟨v,e_j⟩ λ)`.
pub fn xi_high(j: usize, p: &TotalSpacePoint) -> Result<AmbientTangent> {
    let m = p.m();
    if !(2..=m + 1).contains(&j) {
        return Err(Error::IndexOutOfRange { index: j, lo: 2, hi: m + 1 });
    }
    let vj = p.v[j - 1];
    let mut u: Vec<f64> = p.v.iter().map(|x| -vj * x).collect();
    u[j - 1] += 1.0;
    Ok(AmbientTangent {
        w: vec![Complex64::new(0.0, 0.0); p.z.len()],
        u,
        mu: -I * vj * p.lambda,
    })
}

/// Clifford field `ξ_j`, `1 ≤ j ≤ 2ν+1`:
/// `(A_j z + β_j z, iβ_j (e_1 − ⟨v,e_1⟩ v), β_j ⟨v,e_1⟩ λ)`.
pub fn xi_low(j: usize, p: &TotalSpacePoint, f: &CliffordFamily) -> Result<AmbientTangent> {
    let a = f.matrix(j)?;
    if p.z.len() != a.size() {
        return Err(Error::DimensionMismatch { expected: a.size(), actual: p.z.len() });
    }
    let az = a.apply(&p.z)?;
    let b = beta(&p.z, a)?;
    let w = az.iter().zip(&p.z).map(|(x, z)| x + b * z).collect();
    let v1 = p.v[0];
    // iβ is real when β is purely imaginary; the real part is the exact value
    let ib = (I * b).re;
    let mut u: Vec<f64> = p.v.iter().map(|x| -ib * v1 * x).collect();
    u[0] += ib;
    Ok(AmbientTangent { w, u, mu: b * v1 * p.lambda })
}

/// The full family of `δ` fields on `CP^n × S^m × S^1`.
#[derive(Debug, Clone)]
pub struct WallFields {
    params: WallParams,
    family: CliffordFamily,
}

impl WallFields {
    pub fn new(params: WallParams) -> Result<Self> {
        let family = clifford::build_family(params.n())?;
        Ok(Self { params, family })
    }

    pub fn params(&self) -> WallParams {
        self.params
    }

    pub fn family(&self) -> &CliffordFamily {
        &self.family
    }

    /// Number of Clifford fields, `2ν + 1`.
    pub fn low_count(&self) -> usize {
        self.family.len()
    }

    pub fn delta(&self) -> usize {
        self.low_count() + self.params.m() as usize
    }

    pub fn evaluate(&self, index: usize, p: &TotalSpacePoint) -> Result<AmbientTangent> {
        let low = self.low_count();
        if p.m() as u64 != self.params.m() || p.n() as u64 != self.params.n() {
            return Err(Error::DimensionMismatch {
                expected: self.params.dim() as usize,
                actual: p.m() + 2 * p.n() + 1,
            });
        }
        match index {
            i if (1..=low).contains(&i) => xi_low(i, p, &self.family),
            i if i > low && i <= self.delta() => xi_high(i - low + 1, p),
            _ => Err(Error::IndexOutOfRange { index, lo: 1, hi: self.delta() }),
        }
    }

    pub fn evaluate_all(&self, p: &TotalSpacePoint) -> Result<Vec<AmbientTangent>> {
        (1..=self.delta()).map(|i| self.evaluate(i, p)).collect()
    }

    /// Expected `(σ-sign, τ-sign)`: `(ε_j, +1)` for Clifford fields,
    /// `(−1, +1)` for sphere fields `j ≤ m` and `(−1, −1)` for `j = m+1`.
    pub fn expected_signs(&self, index: usize) -> Result<(Sign, Sign)> {
        let low = self.low_count();
        if (1..=low).contains(&index) {
            Ok((self.family.sign(index)?, Sign::Plus))
        } else if index == self.delta() {
            Ok((Sign::Minus, Sign::Minus))
        } else if index > low && index < self.delta() {
            Ok((Sign::Minus, Sign::Plus))
        } else {
            Err(Error::IndexOutOfRange { index, lo: 1, hi: self.delta() })
        }
    }
}

/// Evaluates field `index` at the representative `ωz` and checks that the
/// result is the same tangent vector: `w(ωz) = ω w(z)`, `u` and `μ` unchanged.
pub fn check_well_defined(
    index: usize,
    p: &TotalSpacePoint,
    fields: &WallFields,
    omega: Complex64,
    tol: f64,
) -> Result<bool> {
    let base = fields.evaluate(index, p)?;
    let moved = fields.evaluate(index, &p.with_phase(omega))?;
    let rotated = AmbientTangent { w: base.w.iter().map(|c| omega * c).collect(), ..base };
    Ok(moved.max_abs_diff(&rotated) <= tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QuasiSign {
    Plus,
    Minus,
    Fail,
}

impl QuasiSign {
    pub fn sign(self) -> Option<Sign> {
        match self {
            QuasiSign::Plus => Some(Sign::Plus),
            QuasiSign::Minus => Some(Sign::Minus),
            QuasiSign::Fail => None,
        }
    }
}

impl From<Sign> for QuasiSign {
    fn from(s: Sign) -> Self {
        match s {
            Sign::Plus => QuasiSign::Plus,
            Sign::Minus => QuasiSign::Minus,
        }
    }
}

/// Sign `s` with `dκ ∘ ξ(p) = s · ξ(κ(p))`, compared slot by slot at the
/// common anchor representative.
pub fn quasi_invariance_sign(
    index: usize,
    kind: Involution,
    p: &TotalSpacePoint,
    fields: &WallFields,
    tol: f64,
) -> Result<QuasiSign> {
    let lhs = apply_differential(kind, &fields.evaluate(index, p)?);
    let rhs = fields.evaluate(index, &apply_involution(kind, p))?;
    let plus = lhs.max_abs_diff(&rhs);
    let minus = lhs.max_abs_diff(&rhs.neg());
    Ok(match (plus <= tol, minus <= tol) {
        (false, false) => QuasiSign::Fail,
        (true, false) => QuasiSign::Plus,
        (false, true) => QuasiSign::Minus,
        // only possible when the field nearly vanishes
        (true, true) if plus <= minus => QuasiSign::Plus,
        (true, true) => QuasiSign::Minus,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct IndependenceReport {
    pub rank: usize,
    pub vectors: usize,
    /// `σ_min / σ_max`
    pub min_relative_singular_value: f64,
}

pub fn independence_of(tangents: &[AmbientTangent], rel_tol: f64) -> IndependenceReport {
    let rows: Vec<Vec<f64>> = tangents.iter().map(AmbientTangent::to_real).collect();
    let sv = linalg::singular_values(&rows);
    let max = sv.first().copied().unwrap_or(0.0);
    let min = sv.last().copied().unwrap_or(0.0);
    IndependenceReport {
        rank: linalg::numerical_rank(&sv, rel_tol),
        vectors: tangents.len(),
        min_relative_singular_value: if max > 0.0 { min / max } else { 0.0 },
    }
}

/// Rank of all `δ` fields at `p` as real vectors of length `2(n+1) + (m+1) + 2`.
pub fn independence_report(
    p: &TotalSpacePoint,
    fields: &WallFields,
    rel_tol: f64,
) -> Result<IndependenceReport> {
    Ok(independence_of(&fields.evaluate_all(p)?, rel_tol))
}

/// The eight 8th roots of unity.
pub fn roots_of_unity_8() -> [Complex64; 8] {
    std::array::from_fn(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 8.0))
}

/// Every check performed at one sampled point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PointCheck {
    /// max over fields of the three tangency residuals
    pub tangency: [f64; 3],
    pub well_defined: bool,
    /// observed `(σ, τ)` signs per field, 1-based order
    pub signs: Vec<(QuasiSign, QuasiSign)>,
    pub independence: IndependenceReport,
}

pub fn check_point(p: &TotalSpacePoint, fields: &WallFields, tol: &Tolerances) -> Result<PointCheck> {
    let tangents = fields.evaluate_all(p)?;
    let mut tangency = [0.0f64; 3];
    for t in &tangents {
        for (acc, r) in tangency.iter_mut().zip(t.tangency_residuals(p)) {
            *acc = acc.max(r);
        }
    }
    let mut well_defined = true;
    for index in 1..=fields.delta() {
        for omega in roots_of_unity_8() {
            well_defined &= check_well_defined(index, p, fields, omega, tol.algebraic)?;
        }
    }
    let signs = (1..=fields.delta())
        .map(|i| {
            Ok((
                quasi_invariance_sign(i, Involution::Sigma, p, fields, tol.invariance)?,
                quasi_invariance_sign(i, Involution::Tau, p, fields, tol.invariance)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PointCheck {
        tangency,
        well_defined,
        signs,
        independence: independence_of(&tangents, tol.rank),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn basis(m: usize, k: usize) -> Vec<f64> {
        let mut v = vec![0.0; m + 1];
        v[k - 1] = 1.0;
        v
    }

    fn fields(m: u64, n: u64) -> WallFields {
        WallFields::new(WallParams::new(m, n).unwrap()).unwrap()
    }

    #[test]
    fn sample_point_reproducible_and_unit() {
        let a = sample_point(1, 1, &mut sample_rng(42, 0));
        let b = sample_point(1, 1, &mut sample_rng(42, 0));
        assert_eq!(a, b);
        let other = sample_point(1, 1, &mut sample_rng(42, 1));
        assert_ne!(a, other);
        assert!(TotalSpacePoint::new(a.z.clone(), a.v.clone(), a.lambda).is_ok());
        let zn: f64 = a.z.iter().map(|x| x.norm_sqr()).sum();
        assert!((zn - 1.0).abs() < 1e-12);
        assert!((a.lambda.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn point_validation() {
        assert!(TotalSpacePoint::new(vec![c(2.0, 0.0)], basis(1, 1), c(1.0, 0.0)).is_err());
        assert!(TotalSpacePoint::new(vec![c(1.0, 0.0)], vec![1.0], c(1.0, 0.0)).is_err());
    }

    #[test]
    fn xi_high_examples() {
        let lambda = Complex64::from_polar(1.0, 0.7);
        let p = TotalSpacePoint::new(vec![c(1.0, 0.0)], basis(3, 1), lambda).unwrap();
        for j in 2..=4 {
            let t = xi_high(j, &p).unwrap();
            assert_eq!(t.u, basis(3, j));
            assert_eq!(t.mu, c(0.0, 0.0));
        }
        let p = TotalSpacePoint::new(vec![c(1.0, 0.0)], basis(3, 3), lambda).unwrap();
        let t = xi_high(3, &p).unwrap();
        assert_eq!(t.u, vec![0.0; 4]);
        assert!((t.mu - (-I * lambda)).norm() < 1e-15);
        assert!(xi_high(1, &p).is_err());
        assert!(xi_high(5, &p).is_err());
    }

    #[test]
    fn xi_low_n0() {
        let f = clifford::build_family(0).unwrap();
        let lambda = Complex64::from_polar(1.0, 1.3);
        let p = TotalSpacePoint::new(vec![c(1.0, 0.0)], basis(2, 1), lambda).unwrap();
        let t = xi_low(1, &p, &f).unwrap();
        assert_eq!(t.w, [c(0.0, 0.0)]);
        assert_eq!(t.u, vec![0.0; 3]);
        assert!((t.mu - (-I * lambda)).norm() < 1e-15);
    }

    #[test]
    fn xi_low_dimension_checked() {
        let f = clifford::build_family(1).unwrap();
        let p = TotalSpacePoint::new(vec![c(1.0, 0.0)], basis(1, 1), c(1.0, 0.0)).unwrap();
        assert!(xi_low(1, &p, &f).is_err());
    }

    #[test]
    fn involutions() {
        let p = sample_point(3, 2, &mut sample_rng(7, 3));
        for k in Involution::ALL {
            assert_eq!(apply_involution(k, &apply_involution(k, &p)), p);
        }
        let st = apply_involution(Involution::Sigma, &apply_involution(Involution::Tau, &p));
        let ts = apply_involution(Involution::Tau, &apply_involution(Involution::Sigma, &p));
        assert_eq!(st, ts);

        let f = fields(2, 3);
        let t = f.evaluate(1, &p).unwrap();
        let s = apply_differential(Involution::Sigma, &t);
        assert_eq!(apply_differential(Involution::Sigma, &s), t);
        assert_eq!(s.mu, t.mu);
        assert_eq!(apply_differential(Involution::Tau, &t).mu, -t.mu);
    }

    #[test]
    fn well_defined_checks() {
        let f = fields(2, 3);
        let p = sample_point(3, 2, &mut sample_rng(11, 0));
        for i in 1..=f.delta() {
            assert!(check_well_defined(i, &p, &f, c(1.0, 0.0), 0.0).unwrap());
            assert!(check_well_defined(i, &p, &f, I, 1e-10).unwrap());
        }
        // sphere fields have w = 0, unchanged under any phase
        let hi = f.delta();
        let omega = Complex64::from_polar(1.0, 2.1);
        assert!(check_well_defined(hi, &p, &f, omega, 0.0).unwrap());
    }

    #[test]
    fn sign_examples() {
        let f = fields(3, 3);
        let low = f.low_count();
        for s in 0..5 {
            let p = sample_point(3, 3, &mut sample_rng(5, s));
            for j in 2..=4 {
                let index = low + j - 1;
                let sigma = quasi_invariance_sign(index, Involution::Sigma, &p, &f, 1e-9).unwrap();
                let tau = quasi_invariance_sign(index, Involution::Tau, &p, &f, 1e-9).unwrap();
                assert_eq!(sigma, QuasiSign::Minus);
                assert_eq!(tau, if j == 4 { QuasiSign::Minus } else { QuasiSign::Plus });
            }
            for j in 1..=low {
                let sigma = quasi_invariance_sign(j, Involution::Sigma, &p, &f, 1e-9).unwrap();
                let tau = quasi_invariance_sign(j, Involution::Tau, &p, &f, 1e-9).unwrap();
                assert_eq!(sigma, f.family().sign(j).unwrap().into());
                assert_eq!(tau, QuasiSign::Plus);
            }
        }
    }

    #[test]
    fn independence_examples() {
        let f = fields(1, 1);
        assert_eq!(f.delta(), 4);
        let p = sample_point(1, 1, &mut sample_rng(3, 0));
        let rep = independence_report(&p, &f, 1e-8).unwrap();
        assert_eq!(rep.rank, 4);
        assert!(rep.min_relative_singular_value > 0.0);

        let mut ts = f.evaluate_all(&p).unwrap();
        ts[2] = ts[0].clone();
        assert_eq!(independence_of(&ts, 1e-8).rank, 3);
    }

    #[test]
    fn expected_sign_layout() {
        let f = fields(2, 1);
        // 2ν+1 = 3 Clifford fields, then ξ_{2ν+2}, ξ_{2ν+3}
        assert_eq!(f.delta(), 5);
        assert_eq!(f.expected_signs(1).unwrap(), (Sign::Minus, Sign::Plus));
        assert_eq!(f.expected_signs(3).unwrap(), (Sign::Plus, Sign::Plus));
        assert_eq!(f.expected_signs(4).unwrap(), (Sign::Minus, Sign::Plus));
        assert_eq!(f.expected_signs(5).unwrap(), (Sign::Minus, Sign::Minus));
        assert!(f.expected_signs(6).is_err());
        assert!(f.evaluate(0, &sample_point(1, 2, &mut sample_rng(0, 0))).is_err());
    }
}
