//! Exact rational linear algebra: elimination, kernels, determinants,
//! integer Smith normal form, and a small rational simplex used for strict
//! interior tests with verified certificates.
//!
//! Matrices are dense `Vec<Vec<Q>>` in row-major order. Everything here is
//! exact; the simplex uses Bland's rule, so it terminates, and both possible
//! answers come with a certificate that is re-checked before being returned.

use crate::rat::{qi, Q};
use num::bigint::BigInt;
use num::{One, Signed, Zero};

/// Reduced row echelon form in place; returns the pivot column indices.
pub fn rref(rows: &mut [Vec<Q>]) -> Vec<usize> {
    let m = rows.len();
    if m == 0 {
        return Vec::new();
    }
    let n = rows[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = &*x / &inv;
        }
        for i in 0..m {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..n {
                    let d = &rows[r][j] * &f;
                    rows[i][j] = &rows[i][j] - d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut work = rows.to_vec();
    rref(&mut work).len()
}

/// One exact solution of `a x = b` with free variables set to zero,
/// or `None` when the system is inconsistent.
pub fn solve(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    if a.is_empty() {
        return Some(Vec::new());
    }
    let n = a[0].len();
    let mut aug: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&n) {
        return None; // pivot in the constant column
    }
    let mut x = vec![Q::zero(); n];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = aug[row][n].clone();
    }
    Some(x)
}

/// Basis of the right kernel of `a`.
pub fn kernel(a: &[Vec<Q>]) -> Vec<Vec<Q>> {
    if a.is_empty() {
        return Vec::new();
    }
    let n = a[0].len();
    let mut work = a.to_vec();
    let pivots = rref(&mut work);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivot_set.contains(c)) {
        let mut v = vec![Q::zero(); n];
        v[free] = Q::one();
        for (row, &c) in pivots.iter().enumerate() {
            v[c] = -work[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Determinant of a square matrix by fraction-free-ish Gaussian elimination.
pub fn det(a: &[Vec<Q>]) -> Q {
    let n = a.len();
    let mut m = a.to_vec();
    let mut sign = Q::one();
    let mut result = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(p, c);
            sign = -sign;
        }
        let piv = m[c][c].clone();
        result = result * &piv;
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &piv;
                for j in c..n {
                    let d = &m[c][j] * &f;
                    m[i][j] = &m[i][j] - d;
                }
            }
        }
    }
    result * sign
}

/// Outcome of the exact strict-interior test for the origin.
///
/// Exactly one certificate is populated: `weights` are multipliers
/// `λ_s ≥ 1` with `Σ λ_s s = 0` (so no closed halfspace contains all points
/// unless they fail to span), `separating` is a nonzero functional `φ` with
/// `φ·s ≥ 0` for every point. Both are re-verified before being returned.
#[derive(Debug, Clone)]
pub struct InteriorResult {
    pub interior: bool,
    pub weights: Option<Vec<Q>>,
    pub separating: Option<Vec<Q>>,
}

/// Decides whether the origin lies in the interior of the convex hull of
/// `points` (full-dimensional interior in the ambient space).
pub fn zero_in_interior(points: &[Vec<i64>], dim: usize) -> InteriorResult {
    assert!(points.iter().all(|p| p.len() == dim));
    let rows: Vec<Vec<Q>> = points
        .iter()
        .map(|p| p.iter().map(|&x| qi(x)).collect())
        .collect();
    if rank(&rows) < dim {
        // The points live in a proper subspace; any functional orthogonal to
        // all of them separates (weakly) and the interior is empty.
        let phi = kernel(&rows)
            .into_iter()
            .next()
            .unwrap_or_else(|| vec![Q::one(); dim.max(1)]);
        verify_separating(points, &phi, false);
        return InteriorResult {
            interior: false,
            weights: None,
            separating: Some(phi),
        };
    }
    match phase_one(points, dim) {
        Ok(nu) => {
            let weights: Vec<Q> = nu.iter().map(|v| v + Q::one()).collect();
            // Verify: Σ λ_s s = 0 with every λ_s ≥ 1.
            for w in &weights {
                assert!(*w >= Q::one(), "interior certificate broke λ ≥ 1");
            }
            for d in 0..dim {
                let mut acc = Q::zero();
                for (s, w) in points.iter().zip(&weights) {
                    acc += w * qi(s[d]);
                }
                assert!(acc.is_zero(), "interior certificate does not balance");
            }
            InteriorResult {
                interior: true,
                weights: Some(weights),
                separating: None,
            }
        }
        Err(phi) => {
            verify_separating(points, &phi, true);
            InteriorResult {
                interior: false,
                weights: None,
                separating: Some(phi),
            }
        }
    }
}

fn verify_separating(points: &[Vec<i64>], phi: &[Q], require_strict: bool) {
    assert!(phi.iter().any(|v| !v.is_zero()), "zero separating functional");
    let mut strict = false;
    for p in points {
        let dot: Q = p.iter().zip(phi).map(|(&x, f)| qi(x) * f).sum();
        assert!(dot >= Q::zero(), "separating certificate violated");
        if dot > Q::zero() {
            strict = true;
        }
    }
    if require_strict {
        assert!(strict, "separating certificate is identically zero on input");
    }
}

/// Phase-one simplex for `A ν = -A·1, ν ≥ 0` where the columns of `A` are the
/// points. Feasibility means the origin is a convex combination with all
/// multipliers at least one. On infeasibility returns the Farkas functional.
fn phase_one(points: &[Vec<i64>], dim: usize) -> std::result::Result<Vec<Q>, Vec<Q>> {
    let n = points.len();
    let m = dim;
    // Row-major tableau: m constraint rows of [A | I | rhs], then the cost row.
    let width = n + m + 1;
    let mut t = vec![vec![Q::zero(); width]; m + 1];
    let mut flip = vec![false; m];
    for i in 0..m {
        let rhs: Q = -points.iter().map(|p| qi(p[i])).sum::<Q>();
        flip[i] = rhs < Q::zero();
        let sgn = if flip[i] { -Q::one() } else { Q::one() };
        for (j, p) in points.iter().enumerate() {
            t[i][j] = qi(p[i]) * &sgn;
        }
        t[i][n + i] = Q::one();
        t[i][width - 1] = rhs * &sgn;
    }
    // Cost row for minimizing the artificial sum, in canonical form for the
    // all-artificial starting basis: reduced costs are column sums negated.
    for j in 0..n {
        t[m][j] = -(0..m).map(|i| t[i][j].clone()).sum::<Q>();
    }
    t[m][width - 1] = -(0..m).map(|i| t[i][width - 1].clone()).sum::<Q>();
    let mut basis: Vec<usize> = (n..n + m).collect();

    loop {
        // Bland: entering column = smallest index with negative reduced cost.
        let Some(enter) = (0..n + m).find(|&j| t[m][j] < Q::zero()) else {
            break;
        };
        // Ratio test, Bland ties broken by smallest basic variable.
        let mut leave: Option<usize> = None;
        let mut best: Option<Q> = None;
        for i in 0..m {
            if t[i][enter] > Q::zero() {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match &best {
                    None => true,
                    Some(b) => {
                        ratio < *b || (ratio == *b && basis[i] < basis[leave.unwrap()])
                    }
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let Some(li) = leave else {
            unreachable!("phase-one objective is bounded below by zero")
        };
        pivot(&mut t, li, enter);
        basis[li] = enter;
    }

    let objective = -t[m][width - 1].clone();
    if objective.is_zero() {
        let mut nu = vec![Q::zero(); n];
        for (i, &b) in basis.iter().enumerate() {
            if b < n {
                nu[b] = t[i][width - 1].clone();
            }
        }
        Ok(nu)
    } else {
        // Dual values from the artificial reduced costs: y_i = 1 - r_{n+i},
        // mapped back through the row sign flips; φ = -y separates.
        let mut phi = vec![Q::zero(); m];
        for i in 0..m {
            let y = Q::one() - &t[m][n + i];
            phi[i] = if flip[i] { y } else { -y };
        }
        Err(phi)
    }
}

fn pivot(t: &mut [Vec<Q>], row: usize, col: usize) {
    let width = t[0].len();
    let inv = t[row][col].clone();
    for x in t[row].iter_mut() {
        *x = &*x / &inv;
    }
    for i in 0..t.len() {
        if i != row && !t[i][col].is_zero() {
            let f = t[i][col].clone();
            for j in 0..width {
                let d = &t[row][j] * &f;
                t[i][j] = &t[i][j] - d;
            }
        }
    }
}

/// Diagonal of the Smith normal form of an integer matrix, as non-negative
/// integers `d_1 | d_2 | …` (zeros trail when the rank is deficient).
pub fn smith_diagonal(mat: &[Vec<i64>]) -> Vec<BigInt> {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    let mut m: Vec<Vec<BigInt>> = mat
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let steps = rows.min(cols);
    let mut out = Vec::with_capacity(steps);
    for t in 0..steps {
        'outer: loop {
            // Move a minimal-magnitude nonzero entry of the trailing block to (t, t).
            let mut pos: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !m[i][j].is_zero()
                        && pos.is_none_or(|(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                    {
                        pos = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pos else {
                break;
            };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            // Clear the pivot row and column by Euclidean steps.
            let mut dirty = false;
            for i in t + 1..rows {
                if !m[i][t].is_zero() {
                    let q = &m[i][t] / &m[t][t];
                    for j in t..cols {
                        let d = &m[t][j] * &q;
                        m[i][j] -= d;
                    }
                    if !m[i][t].is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !m[t][j].is_zero() {
                    let q = &m[t][j] / &m[t][t];
                    for row in m.iter_mut().skip(t) {
                        let d = &row[t] * &q;
                        row[j] -= d;
                    }
                    if !m[t][j].is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // Enforce divisibility of the remaining block by the pivot.
            for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&m[i][j] % &m[t][t]).is_zero() {
                        let row = m[i].clone();
                        for (dst, src) in m[t].iter_mut().zip(row) {
                            *dst += src;
                        }
                        continue 'outer;
                    }
                }
            }
            break;
        }
        if m[t][t].is_zero() {
            break;
        }
        out.push(m[t][t].abs());
    }
    while out.len() < steps {
        out.push(BigInt::zero());
    }
    out
}
