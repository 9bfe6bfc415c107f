//! Exact construction of the anticommuting family `A_1, …, A_{2ν+1}` on
//! `C^{n+1}` from the complex spin representation.
//!
//! Write `n + 1 = 2^ν · b` with `b` odd. Each `A_j` is the `b`-fold block
//! diagonal of the spinor generator `X(j)` acting on `(C^2)^{⊗ν}`. Blocks are
//! outer and tensor factors are ordered lexicographically (left factor
//! major), so componentwise conjugation on `C^2` composes to componentwise
//! conjugation on `C^{n+1}` and no change of basis is needed.

use std::fmt;
use std::str::FromStr;

use num_complex::{Complex, Complex64};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants;

pub type Gauss = Complex<i64>;

const ZERO: Gauss = Gauss::new(0, 0);
const ONE: Gauss = Gauss::new(1, 0);
const I: Gauss = Gauss::new(0, 1);

/// Square matrix over the Gaussian integers, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussMatrix {
    size: usize,
    entries: Vec<Gauss>,
}

impl GaussMatrix {
    pub fn zeros(size: usize) -> Self {
        Self { size, entries: vec![ZERO; size * size] }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size);
        for i in 0..size {
            m.entries[i * size + i] = ONE;
        }
        m
    }

    pub fn from_rows(rows: &[&[Gauss]]) -> Result<Self> {
        let size = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != size) {
            return Err(Error::DimensionMismatch { expected: size, actual: bad.len() });
        }
        Ok(Self { size, entries: rows.iter().flat_map(|r| r.iter().copied()).collect() })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, row: usize, col: usize) -> Gauss {
        self.entries[row * self.size + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Gauss) {
        self.entries[row * self.size + col] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == ZERO)
    }

    fn check_size(&self, other: &Self) -> Result<()> {
        if self.size == other.size {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.size, actual: other.size })
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        let n = self.size;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * other.entries[k * n + j];
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(Self { size: self.size, entries })
    }

    pub fn scale(&self, s: Gauss) -> Self {
        Self { size: self.size, entries: self.entries.iter().map(|&e| e * s).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scale(-ONE)
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Self { size: self.size, entries: self.entries.iter().map(|e| e.conj()).collect() }
    }

    pub fn conj_transpose(&self) -> Self {
        let n = self.size;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.entries[j * n + i] = self.entries[i * n + j].conj();
            }
        }
        out
    }

    /// Kronecker product, left factor major.
    pub fn kronecker(&self, other: &Self) -> Self {
        let (p, q) = (self.size, other.size);
        let n = p * q;
        let mut out = Self::zeros(n);
        for i in 0..p {
            for j in 0..p {
                let a = self.entries[i * p + j];
                if a == ZERO {
                    continue;
                }
                for k in 0..q {
                    for l in 0..q {
                        out.entries[(i * q + k) * n + j * q + l] = a * other.entries[k * q + l];
                    }
                }
            }
        }
        out
    }

    /// `copies`-fold block diagonal `self ⊕ ⋯ ⊕ self`.
    pub fn block_diagonal(&self, copies: usize) -> Self {
        let (s, n) = (self.size, self.size * copies);
        let mut out = Self::zeros(n);
        for b in 0..copies {
            for i in 0..s {
                for j in 0..s {
                    out.entries[(b * s + i) * n + b * s + j] = self.entries[i * s + j];
                }
            }
        }
        out
    }

    /// `A z` in floating point.
    pub fn apply(&self, z: &[Complex64]) -> Result<Vec<Complex64>> {
        if z.len() != self.size {
            return Err(Error::DimensionMismatch { expected: self.size, actual: z.len() });
        }
        let n = self.size;
        Ok((0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let a = self.entries[i * n + j];
                        Complex64::new(a.re as f64, a.im as f64) * z[j]
                    })
                    .sum()
            })
            .collect())
    }
}

fn fmt_gauss(g: Gauss) -> String {
    match (g.re, g.im) {
        (0, 0) => "0".into(),
        (1, 0) => "1".into(),
        (-1, 0) => "-1".into(),
        (0, 1) => "i".into(),
        (0, -1) => "-i".into(),
        (re, 0) => re.to_string(),
        (0, im) => format!("{im}i"),
        (re, im) if im < 0 => format!("{re}-{}i", -im),
        (re, im) => format!("{re}+{im}i"),
    }
}

impl fmt::Display for GaussMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(|&e| fmt_gauss(e)).collect();
        let width = cells.iter().map(|c| c.len()).max().unwrap_or(1);
        for row in cells.chunks(self.size.max(1)) {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[ {} ]", line.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for GaussMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GaussMatrix({}x{})\n{}", self.size, self.size, self)
    }
}

/// The four displayed generators of `M_2(C)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    /// identity
    E,
    /// `diag(i, −i)`
    G1,
    /// `[[0, i], [i, 0]]`
    G2,
    /// `[[0, −i], [i, 0]]`, Hermitian; not to be confused with the isometry
    /// `bΔ → C^{n+1}`, which is the identity in this basis.
    T,
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "E" => Ok(Generator::E),
            "g1" => Ok(Generator::G1),
            "g2" => Ok(Generator::G2),
            "T" => Ok(Generator::T),
            _ => Err(Error::UnknownGenerator(s.into())),
        }
    }
}

pub fn generator_2x2(g: Generator) -> GaussMatrix {
    let rows: [[Gauss; 2]; 2] = match g {
        Generator::E => [[ONE, ZERO], [ZERO, ONE]],
        Generator::G1 => [[I, ZERO], [ZERO, -I]],
        Generator::G2 => [[ZERO, I], [I, ZERO]],
        Generator::T => [[ZERO, -I], [I, ZERO]],
    };
    GaussMatrix::from_rows(&[&rows[0], &rows[1]]).expect("2x2")
}

fn tensor_power(g: Generator, k: usize) -> GaussMatrix {
    let m = generator_2x2(g);
    (0..k).fold(GaussMatrix::identity(1), |acc, _| acc.kronecker(&m))
}

fn check_index(j: usize, nu: u32) -> Result<()> {
    let hi = 2 * nu as usize + 1;
    if (1..=hi).contains(&j) {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index: j, lo: 1, hi })
    }
}

/// Image `X(j)` of the Clifford generator `e_j` in `End((C^2)^{⊗ν})`:
/// `E^{⊗(ν−1−t)} ⊗ g_{α(j)} ⊗ T^{⊗t}` with `t = ⌊(j−1)/2⌋` for `j ≤ 2ν`,
/// and `i·T^{⊗ν}` for `j = 2ν + 1`. The empty tensor product is `[1]`.
pub fn spin_generator(j: usize, nu: u32) -> Result<GaussMatrix> {
    check_index(j, nu)?;
    let nu = nu as usize;
    if j == 2 * nu + 1 {
        return Ok(tensor_power(Generator::T, nu).scale(I));
    }
    let t = (j - 1) / 2;
    let g = if j % 2 == 1 { Generator::G1 } else { Generator::G2 };
    Ok(tensor_power(Generator::E, nu - 1 - t)
        .kronecker(&generator_2x2(g))
        .kronecker(&tensor_power(Generator::T, t)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    fn from_parity_even(even: bool) -> Self {
        if even {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// Sign `ε_j` with `A_j(z̄) = ε_j · conj(A_j z)`: `−1` when `⌊(j−1)/2⌋` is
/// even (for `j ≤ 2ν`) or when `ν` is even (for `j = 2ν + 1`).
pub fn predicted_sign(j: usize, nu: u32) -> Result<Sign> {
    check_index(j, nu)?;
    if j == 2 * nu as usize + 1 {
        Ok(Sign::from_parity_even(nu.is_multiple_of(2)))
    } else {
        Ok(Sign::from_parity_even(((j - 1) / 2).is_multiple_of(2)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordFamily {
    pub n: u64,
    pub nu: u32,
    /// odd `b` with `n + 1 = 2^ν b`
    pub odd_part: u64,
    pub matrices: Vec<GaussMatrix>,
    pub predicted_signs: Vec<Sign>,
}

impl CliffordFamily {
    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    /// Size `n + 1` of every matrix.
    pub fn size(&self) -> usize {
        (self.n + 1) as usize
    }

    /// `A_j`, 1-based.
    pub fn matrix(&self, j: usize) -> Result<&GaussMatrix> {
        check_index(j, self.nu)?;
        Ok(&self.matrices[j - 1])
    }

    pub fn sign(&self, j: usize) -> Result<Sign> {
        check_index(j, self.nu)?;
        Ok(self.predicted_signs[j - 1])
    }
}

/// `A_j = X(j) ⊕ ⋯ ⊕ X(j)` (`b` copies) on `C^{n+1}`, `j = 1, …, 2ν(n+1)+1`.
pub fn build_family(n: u64) -> Result<CliffordFamily> {
    let size = n
        .checked_add(1)
        .ok_or_else(|| Error::InvalidParameter("n + 1 overflows".into()))?;
    let nu = invariants::nu(size)?;
    let odd_part = size >> nu;
    let count = 2 * nu as usize + 1;
    let mut matrices = Vec::with_capacity(count);
    let mut predicted_signs = Vec::with_capacity(count);
    for j in 1..=count {
        matrices.push(spin_generator(j, nu)?.block_diagonal(odd_part as usize));
        predicted_signs.push(predicted_sign(j, nu)?);
    }
    Ok(CliffordFamily { n, nu, odd_part, matrices, predicted_signs })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Identity {
    /// `A_j A_k + A_k A_j = 0`
    Anticommute { j: usize, k: usize },
    /// `A_j + A_j^* = 0`
    SkewHermitian { j: usize },
    /// `conj(A_j) = ε_j A_j`
    QuasiReal { j: usize, sign: Sign },
}

impl Identity {
    pub fn label(&self) -> &'static str {
        match self {
            Identity::Anticommute { .. } => "anticommute",
            Identity::SkewHermitian { .. } => "skewHermitian",
            Identity::QuasiReal { .. } => "quasiReal",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Identity::Anticommute { j, k } => write!(f, "A{j}A{k} + A{k}A{j} = 0"),
            Identity::SkewHermitian { j } => write!(f, "A{j} + A{j}* = 0"),
            Identity::QuasiReal { j, sign } => write!(f, "conj(A{j}) = {sign}·A{j}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub identity: Identity,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub checks: Vec<IdentityCheck>,
}

impl FamilyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Exact check of anticommutation, skew-Hermitian symmetry and the
/// quasi-real conjugation signs. Failures are recorded, not returned as errors.
pub fn verify_family(f: &CliffordFamily) -> FamilyReport {
    let mut checks = Vec::new();
    let count = f.matrices.len();
    for j in 1..=count {
        for k in j + 1..=count {
            let (a, b) = (&f.matrices[j - 1], &f.matrices[k - 1]);
            let passed = match (a.mul(b), b.mul(a)) {
                (Ok(ab), Ok(ba)) => ab.add(&ba).is_ok_and(|s| s.is_zero()),
                _ => false,
            };
            checks.push(IdentityCheck { identity: Identity::Anticommute { j, k }, passed });
        }
    }
    for (j, a) in (1..).zip(&f.matrices) {
        let passed = a.add(&a.conj_transpose()).is_ok_and(|s| s.is_zero());
        checks.push(IdentityCheck { identity: Identity::SkewHermitian { j }, passed });
    }
    for (j, (a, &sign)) in (1..).zip(f.matrices.iter().zip(&f.predicted_signs)) {
        // A z̄ = ε conj(A z) for all z  ⇔  A = ε conj(A)
        let passed = a.conj() == a.scale(Gauss::new(sign.value(), 0));
        checks.push(IdentityCheck { identity: Identity::QuasiReal { j, sign }, passed });
    }
    FamilyReport { checks }
}

/// Hermitian product `⟨z, w⟩ = w^* z`.
pub fn hermitian(z: &[Complex64], w: &[Complex64]) -> Complex64 {
    z.iter().zip(w).map(|(a, b)| a * b.conj()).sum()
}

/// `β(z) = ⟨z, A z⟩ = (A z)^* z`; purely imaginary for skew-Hermitian `A`.
pub fn beta(z: &[Complex64], a: &GaussMatrix) -> Result<Complex64> {
    let az = a.apply(z)?;
    Ok(hermitian(z, &az))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> Gauss {
        Gauss::new(re, im)
    }

    #[test]
    fn generators_match_display() {
        assert_eq!(generator_2x2(Generator::E), GaussMatrix::identity(2));
        assert_eq!(
            generator_2x2(Generator::G2),
            GaussMatrix::from_rows(&[&[ZERO, I], &[I, ZERO]]).unwrap()
        );
        let t = generator_2x2(Generator::T);
        assert_eq!(t.mul(&t).unwrap(), GaussMatrix::identity(2));
        assert_eq!("g1".parse::<Generator>().unwrap(), Generator::G1);
        assert!("g3".parse::<Generator>().is_err());
    }

    #[test]
    fn kronecker_examples() {
        let e = generator_2x2(Generator::E);
        assert_eq!(e.kronecker(&e), GaussMatrix::identity(4));
        let m = generator_2x2(Generator::G1).kronecker(&e);
        let diag: Vec<Gauss> = (0..4).map(|i| m.get(i, i)).collect();
        assert_eq!(diag, [I, I, -I, -I]);
        let off_diagonal_zero = (0..4).all(|i| (0..4).all(|j| i == j || m.get(i, j) == ZERO));
        assert!(off_diagonal_zero);
    }

    #[test]
    fn spin_generator_examples() {
        let gen = |x| generator_2x2(x);
        assert_eq!(spin_generator(1, 1).unwrap(), gen(Generator::G1));
        assert_eq!(spin_generator(2, 1).unwrap(), gen(Generator::G2));
        assert_eq!(spin_generator(3, 1).unwrap(), gen(Generator::T).scale(I));
        assert_eq!(
            spin_generator(4, 2).unwrap(),
            gen(Generator::G2).kronecker(&gen(Generator::T))
        );
        assert_eq!(
            spin_generator(1, 2).unwrap(),
            gen(Generator::E).kronecker(&gen(Generator::G1))
        );
        assert_eq!(spin_generator(1, 0).unwrap(), GaussMatrix::from_rows(&[&[I]]).unwrap());
        assert!(spin_generator(2, 0).is_err());
        assert!(spin_generator(0, 1).is_err());
        assert!(spin_generator(6, 2).is_err());
    }

    #[test]
    fn build_family_examples() {
        let f = build_family(1).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f.matrices[0], generator_2x2(Generator::G1));
        assert_eq!(f.matrices[1], generator_2x2(Generator::G2));
        assert_eq!(f.matrices[2], generator_2x2(Generator::T).scale(I));

        let f = build_family(2).unwrap();
        assert_eq!((f.nu, f.odd_part, f.len()), (0, 3, 1));
        assert_eq!(f.matrices[0], GaussMatrix::identity(3).scale(I));

        let f = build_family(0).unwrap();
        assert_eq!(f.matrices, [GaussMatrix::from_rows(&[&[I]]).unwrap()]);
    }

    #[test]
    fn block_structure() {
        // n + 1 = 12 = 4 · 3
        let f = build_family(11).unwrap();
        assert_eq!((f.nu, f.odd_part, f.len()), (2, 3, 5));
        for (j, a) in (1..).zip(&f.matrices) {
            let x = spin_generator(j, 2).unwrap();
            for blk in 0..3 {
                for r in 0..4 {
                    for c in 0..12 {
                        let expected =
                            if c / 4 == blk { x.get(r, c % 4) } else { ZERO };
                        assert_eq!(a.get(blk * 4 + r, c), expected);
                    }
                }
            }
        }
    }

    #[test]
    fn predicted_sign_examples() {
        let signs: Vec<Sign> = (1..=3).map(|j| predicted_sign(j, 1).unwrap()).collect();
        assert_eq!(signs, [Sign::Minus, Sign::Minus, Sign::Plus]);
        // cross-check against entrywise conjugation of g1, g2, iT
        for (j, s) in (1..).zip(&signs) {
            let x = spin_generator(j, 1).unwrap();
            assert_eq!(x.conj(), x.scale(g(s.value(), 0)));
        }
        assert_eq!(predicted_sign(1, 0).unwrap(), Sign::Minus);
        assert_eq!(predicted_sign(5, 2).unwrap(), Sign::Minus);
        assert_eq!(predicted_sign(7, 3).unwrap(), Sign::Plus);
        assert_eq!(predicted_sign(3, 2).unwrap(), Sign::Plus);
        assert!(predicted_sign(4, 1).is_err());
    }

    #[test]
    fn verify_family_passes_and_detects_mutation() {
        let f = build_family(1).unwrap();
        let g1g2 = f.matrices[0].mul(&f.matrices[1]).unwrap();
        assert_eq!(g1g2, GaussMatrix::from_rows(&[&[ZERO, -ONE], &[ONE, ZERO]]).unwrap());
        let report = verify_family(&f);
        assert!(report.all_passed());
        assert_eq!(report.checks.len(), 3 + 3 + 3);

        let mut bad = f.clone();
        let v = bad.matrices[1].get(0, 0);
        bad.matrices[1].set(0, 0, v + ONE);
        assert!(!verify_family(&bad).all_passed());

        let mut wrong_sign = f;
        wrong_sign.predicted_signs[2] = Sign::Minus;
        let report = verify_family(&wrong_sign);
        let failures: Vec<_> = report.failures().map(|c| c.identity).collect();
        assert_eq!(failures, [Identity::QuasiReal { j: 3, sign: Sign::Minus }]);
    }

    #[test]
    fn verify_family_n0() {
        let report = verify_family(&build_family(0).unwrap());
        assert!(report.all_passed());
        assert!(report.checks.iter().all(|c| !matches!(c.identity, Identity::Anticommute { .. })));
        assert_eq!(report.checks.len(), 2);
    }

    #[test]
    fn beta_examples() {
        let a = GaussMatrix::from_rows(&[&[I]]).unwrap();
        let b = beta(&[Complex64::new(1.0, 0.0)], &a).unwrap();
        assert_eq!(b, Complex64::new(0.0, -1.0));
        assert!(beta(&[Complex64::new(1.0, 0.0); 2], &a).is_err());
    }

    #[test]
    fn display_entries() {
        let s = generator_2x2(Generator::T).to_string();
        assert_eq!(s, "[  0 -i ]\n[  i  0 ]\n");
        assert_eq!(fmt_gauss(g(2, -3)), "2-3i");
    }
}
