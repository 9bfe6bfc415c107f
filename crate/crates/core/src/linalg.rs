//! Small dense linear algebra for rank certification.

/// Singular values of the matrix whose rows are `rows`, in descending order.
///
/// One-sided Jacobi: pairs of vectors are rotated until mutually orthogonal,
/// after which their norms are the singular values. Sizes here are a few
/// dozen at most, so the O(k^2 n) sweeps are cheap and the result is
/// accurate to a small multiple of machine epsilon relative to the largest
/// singular value.
pub fn singular_values(rows: &[Vec<f64>]) -> Vec<f64> {
    let mut cols: Vec<Vec<f64>> = rows.to_vec();
    let k = cols.len();
    const MAX_SWEEPS: usize = 60;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..k {
            for q in p + 1..k {
                let (alpha, beta, gamma) = cols[p].iter().zip(&cols[q]).fold(
                    (0.0, 0.0, 0.0),
                    |(a, b, g), (x, y)| (a + x * x, b + y * y, g + x * y),
                );
                if gamma == 0.0 || gamma.abs() <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (lo, hi) = cols.split_at_mut(q);
                for (x, y) in lo[p].iter_mut().zip(hi[0].iter_mut()) {
                    let (xp, yq) = (*x, *y);
                    *x = c * xp - s * yq;
                    *y = s * xp + c * yq;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = cols.iter().map(|c| c.iter().map(|x| x * x).sum::<f64>().sqrt()).collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Number of singular values above `rel_tol · σ_max`.
pub fn numerical_rank(singular_values: &[f64], rel_tol: f64) -> usize {
    let max = singular_values.iter().copied().fold(0.0, f64::max);
    if max == 0.0 {
        return 0;
    }
    singular_values.iter().filter(|&&s| s > rel_tol * max).count()
}
