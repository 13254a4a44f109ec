//! Exact feasibility for `A c = b, c >= 0` over an ordered field.
//!
//! Two kernels: a Phase-I tableau simplex with Bland's rule, and
//! Fourier–Motzkin elimination for small systems. Both return a concrete
//! solution so every answer doubles as a certificate.

use crate::linalg::Matrix;
use crate::scalar::OrderedField;

/// Which kernel produced a solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Simplex,
    FourierMotzkin,
}

/// Default bound on the number of inequalities Fourier–Motzkin may hold
/// before giving up in favour of the simplex kernel.
pub const FM_ROW_CAP: usize = 4096;

/// Nonnegative solution of `a·c = b` by Phase-I simplex, or `None` when the
/// system is infeasible.
pub fn simplex_feasible<T: OrderedField>(a: &Matrix<T>, b: &[T]) -> Option<Vec<T>> {
    let (m, n) = (a.rows(), a.cols());
    assert_eq!(m, b.len());
    let width = n + m + 1;
    // rows: [A | I | b] with b made nonnegative
    let mut t: Vec<Vec<T>> = (0..m)
        .map(|i| {
            let flip = b[i] < T::zero();
            let mut row = Vec::with_capacity(width);
            for j in 0..n {
                let v = a[(i, j)].clone();
                row.push(if flip { -v } else { v });
            }
            for k in 0..m {
                row.push(if k == i { T::one() } else { T::zero() });
            }
            row.push(if flip { -b[i].clone() } else { b[i].clone() });
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();
    // reduced costs of the artificial objective
    let mut z: Vec<T> = (0..width)
        .map(|j| {
            if (n..n + m).contains(&j) {
                T::zero()
            } else {
                t.iter().fold(T::zero(), |acc, row| acc - row[j].clone())
            }
        })
        .collect();

    loop {
        let Some(enter) = (0..n + m).find(|&j| z[j] < T::zero()) else {
            break;
        };
        let mut leave: Option<(usize, T)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[enter] > T::zero() {
                let ratio = row[width - 1].clone() / row[enter].clone();
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            // unbounded direction cannot occur for a bounded-below objective
            break;
        };
        pivot(&mut t, &mut z, r, enter);
        basis[r] = enter;
    }
    if z[width - 1] < T::zero() {
        return None;
    }
    // objective value is -z[last]; any positive artificial means infeasible
    for (i, &bv) in basis.iter().enumerate() {
        if bv >= n && t[i][width - 1] != T::zero() {
            return None;
        }
    }
    let mut c = vec![T::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            c[bv] = t[i][width - 1].clone();
        }
    }
    Some(c)
}

fn pivot<T: OrderedField>(t: &mut [Vec<T>], z: &mut [T], r: usize, col: usize) {
    let p = t[r][col].clone();
    for v in t[r].iter_mut() {
        *v = v.clone() / p.clone();
    }
    let prow = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == r || row[col] == T::zero() {
            continue;
        }
        let f = row[col].clone();
        for (v, pv) in row.iter_mut().zip(&prow) {
            *v = v.clone() - f.clone() * pv.clone();
        }
    }
    if z[col] != T::zero() {
        let f = z[col].clone();
        for (v, pv) in z.iter_mut().zip(&prow) {
            *v = v.clone() - f.clone() * pv.clone();
        }
    }
}

/// Fourier–Motzkin result: `Err(())` signals row blow-up past the cap.
pub type FmResult<T> = Result<Option<Vec<T>>, ()>;

/// Nonnegative solution of `a·c = b` by Gaussian elimination on the
/// equalities followed by Fourier–Motzkin elimination of the free
/// variables, with back-substitution choosing each variable at its lower
/// bound.
pub fn fourier_motzkin_feasible<T: OrderedField>(a: &Matrix<T>, b: &[T], row_cap: usize) -> FmResult<T> {
    let (m, n) = (a.rows(), a.cols());
    let mut aug: Vec<Vec<T>> = (0..m)
        .map(|i| {
            let mut row: Vec<T> = a.row(i).to_vec();
            row.push(b[i].clone());
            row
        })
        .collect();
    // reduced row echelon form
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m).find(|&i| aug[i][c] != T::zero()) else {
            continue;
        };
        aug.swap(r, p);
        let pv = aug[r][c].clone();
        for v in aug[r].iter_mut() {
            *v = v.clone() / pv.clone();
        }
        let prow = aug[r].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i != r && row[c] != T::zero() {
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&prow) {
                    *v = v.clone() - f.clone() * pv.clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m {
            break;
        }
    }
    if aug[r..].iter().any(|row| row[n] != T::zero()) {
        return Ok(None);
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let k = free.len();

    // inequalities g·y <= h over the free variables y
    let mut rows: Vec<(Vec<T>, T)> = Vec::new();
    for (i, _) in pivots.iter().enumerate() {
        let g: Vec<T> = free.iter().map(|&f| aug[i][f].clone()).collect();
        rows.push((g, aug[i][n].clone()));
    }
    for j in 0..k {
        let mut g = vec![T::zero(); k];
        g[j] = -T::one();
        rows.push((g, T::zero()));
    }

    let mut stages: Vec<Vec<(Vec<T>, T)>> = Vec::with_capacity(k);
    for j in 0..k {
        stages.push(rows.clone());
        let mut next = Vec::new();
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for row in rows.into_iter() {
            if row.0[j] > T::zero() {
                pos.push(row);
            } else if row.0[j] < T::zero() {
                neg.push(row);
            } else {
                next.push(row);
            }
        }
        for (gp, hp) in &pos {
            for (gn, hn) in &neg {
                let (cp, cn) = (gp[j].clone(), -gn[j].clone());
                let g: Vec<T> = gp
                    .iter()
                    .zip(gn)
                    .map(|(x, y)| x.clone() * cn.clone() + y.clone() * cp.clone())
                    .collect();
                let h = hp.clone() * cn.clone() + hn.clone() * cp.clone();
                next.push(normalize(g, h));
            }
        }
        dedup(&mut next);
        if next.len() > row_cap {
            return Err(());
        }
        rows = next;
    }
    if rows.iter().any(|(_, h)| *h < T::zero()) {
        return Ok(None);
    }

    let mut y = vec![T::zero(); k];
    for j in (0..k).rev() {
        let mut lower: Option<T> = None;
        for (g, h) in &stages[j] {
            if g[j] < T::zero() {
                // g_j y_j <= h - Σ_{l>j} g_l y_l, so y_j >= rest / g_j
                let rest = (j + 1..k).fold(h.clone(), |acc, l| acc - g[l].clone() * y[l].clone());
                let bound = rest / g[j].clone();
                if lower.as_ref().is_none_or(|lo| bound > *lo) {
                    lower = Some(bound);
                }
            }
        }
        y[j] = lower.unwrap_or_else(T::zero);
    }
    let mut c = vec![T::zero(); n];
    for (j, &f) in free.iter().enumerate() {
        c[f] = y[j].clone();
    }
    for (i, &p) in pivots.iter().enumerate() {
        let v = free
            .iter()
            .enumerate()
            .fold(aug[i][n].clone(), |acc, (j, &f)| acc - aug[i][f].clone() * y[j].clone());
        c[p] = v;
    }
    debug_assert!(c.iter().all(|v| *v >= T::zero()));
    Ok(Some(c))
}

fn normalize<T: OrderedField>(g: Vec<T>, h: T) -> (Vec<T>, T) {
    let scale = g
        .iter()
        .chain(std::iter::once(&h))
        .find(|v| **v != T::zero())
        .map(|v| if *v < T::zero() { -v.clone() } else { v.clone() });
    match scale {
        Some(s) => (g.into_iter().map(|v| v / s.clone()).collect(), h / s),
        None => (g, h),
    }
}

fn dedup<T: OrderedField>(rows: &mut Vec<(Vec<T>, T)>) {
    let mut out: Vec<(Vec<T>, T)> = Vec::with_capacity(rows.len());
    for r in rows.drain(..) {
        if r.0.iter().all(|v| *v == T::zero()) && r.1 >= T::zero() {
            continue;
        }
        if !out.contains(&r) {
            out.push(r);
        }
    }
    *rows = out;
}

/// Dispatches on dimension: Fourier–Motzkin when `a` has at most three
/// rows (falling back to simplex on blow-up), simplex otherwise.
pub fn nonneg_solution<T: OrderedField>(a: &Matrix<T>, b: &[T]) -> (Option<Vec<T>>, Method) {
    if a.rows() <= 3 {
        if let Ok(r) = fourier_motzkin_feasible(a, b, FM_ROW_CAP) {
            return (r, Method::FourierMotzkin);
        }
    }
    (simplex_feasible(a, b), Method::Simplex)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn mat(rows: &[&[i64]]) -> Matrix<BigRational> {
        Matrix::from_i64_rows(rows)
    }

    fn check(a: &Matrix<BigRational>, b: &[BigRational], c: &[BigRational]) {
        assert!(c.iter().all(|v| *v >= q(0)));
        let got = a.mul_vec(&crate::linalg::Coords(c.to_vec()));
        assert_eq!(got.0, b);
    }

    #[test]
    fn both_kernels_agree_on_feasibility() {
        let a = mat(&[&[-4, 12, 0, 1], &[9, 5, 1, 1]]);
        for b in [[q(8), q(14)], [q(-4), q(9)], [q(0), q(0)], [q(-5), q(-1)], [q(100), q(-1)]] {
            let s = simplex_feasible(&a, &b);
            let f = fourier_motzkin_feasible(&a, &b, FM_ROW_CAP).unwrap();
            assert_eq!(s.is_some(), f.is_some(), "b = {b:?}");
            if let Some(c) = s {
                check(&a, &b, &c);
            }
            if let Some(c) = f {
                check(&a, &b, &c);
            }
        }
    }

    #[test]
    fn inconsistent_equalities() {
        let a = mat(&[&[1, 1], &[2, 2]]);
        assert!(simplex_feasible(&a, &[q(1), q(3)]).is_none());
        assert!(fourier_motzkin_feasible(&a, &[q(1), q(3)], 10).unwrap().is_none());
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale-style degenerate system; Bland's rule must terminate
        let a = mat(&[&[1, 0, 0, 1, 0, 0, 0], &[0, 1, 0, 0, 1, 0, 0], &[0, 0, 1, 0, 0, 1, 0], &[1, 1, 1, 0, 0, 0, 1]]);
        let b = [q(0), q(0), q(1), q(1)];
        let c = simplex_feasible(&a, &b).unwrap();
        check(&a, &b, &c);
    }

    #[test]
    fn float_instantiation() {
        let a: Matrix<f64> = Matrix::from_i64_rows(&[&[1, 2], &[3, 1]]);
        let c = simplex_feasible(&a, &[5.0, 5.0]).unwrap();
        assert!((c[0] - 1.0).abs() < 1e-12 && (c[1] - 2.0).abs() < 1e-12);
    }
}
