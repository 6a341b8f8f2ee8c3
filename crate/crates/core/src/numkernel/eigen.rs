//! Cyclic Jacobi eigensolver for real symmetric matrices.

use super::context::NumContext;
use super::matrix::SymMatrix;
use super::real::Real;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;
const MAX_DIM: usize = 10_000;

/// Eigen-decomposition `M = V diag(values) Vᵀ`.
#[derive(Clone, Debug)]
pub struct SymEigen<T> {
    /// Ascending eigenvalues.
    pub values: Vec<T>,
    /// `vectors[i]` is the unit eigenvector of `values[i]`, with its first
    /// nonzero component positive.
    pub vectors: Vec<Vec<T>>,
}

/// Full eigen-decomposition of a symmetric matrix.
pub fn sym_eigen<T: Real>(m: &SymMatrix<T>, ctx: &NumContext) -> Result<SymEigen<T>> {
    let (values, v) = jacobi(m, ctx, true)?;
    let n = m.dim();
    let v = v.expect("vectors requested");
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("finite eigenvalues"));
    let sign_floor = ctx.tol::<T>(0).sqrt();
    let mut vals = Vec::with_capacity(n);
    let mut vecs = Vec::with_capacity(n);
    for &k in &order {
        vals.push(values[k].clone());
        let mut col: Vec<T> = (0..n).map(|r| v[r * n + k].clone()).collect();
        let first = col.iter().find(|x| x.abs() > sign_floor).or_else(|| col.iter().find(|x| !x.is_zero()));
        if let Some(f) = first {
            if *f < T::zero() {
                for x in col.iter_mut() {
                    *x = -x.clone();
                }
            }
        }
        vecs.push(col);
    }
    Ok(SymEigen {
        values: vals,
        vectors: vecs,
    })
}

/// Ascending eigenvalues only (skips accumulating the rotations).
pub fn sym_eigenvalues<T: Real>(m: &SymMatrix<T>, ctx: &NumContext) -> Result<Vec<T>> {
    let (mut values, _) = jacobi(m, ctx, false)?;
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    Ok(values)
}

fn jacobi<T: Real>(
    m: &SymMatrix<T>,
    ctx: &NumContext,
    want_vectors: bool,
) -> Result<(Vec<T>, Option<Vec<T>>)> {
    let n = m.dim();
    if n == 0 {
        return Err(Error::invalid("empty matrix"));
    }
    if n > MAX_DIM {
        return Err(Error::invalid(format!("dimension {n} exceeds {MAX_DIM}")));
    }
    let mut a: Vec<T> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            a.push(m.get(i, j).clone());
        }
    }
    let mut v: Option<Vec<T>> = want_vectors.then(|| {
        let mut id = vec![T::zero(); n * n];
        for i in 0..n {
            id[i * n + i] = T::one();
        }
        id
    });

    let norm = m.frobenius_norm();
    if norm.is_zero() {
        return Ok((vec![T::zero(); n], v));
    }
    let tol = ctx.eig_tol::<T>();
    let target = (tol.clone() * &norm).sqr();
    let skip = tol * &norm / T::from_i64(n as i64);
    let one = T::one();

    let off = |a: &[T]| {
        let mut s = T::zero();
        for p in 0..n {
            for q in p + 1..n {
                s += a[p * n + q].sqr();
            }
        }
        s
    };

    for _sweep in 0..MAX_SWEEPS {
        if off(&a) <= target {
            let values = (0..n).map(|i| a[i * n + i].clone()).collect();
            return Ok((values, v));
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q].clone();
                if apq.abs() <= skip {
                    if !apq.is_zero() {
                        a[p * n + q] = T::zero();
                        a[q * n + p] = T::zero();
                    }
                    continue;
                }
                let theta = (a[q * n + q].clone() - &a[p * n + p]) / (apq.clone() + &apq);
                let mut t = one.clone() / (theta.abs() + (theta.sqr() + &one).sqrt());
                if theta < T::zero() {
                    t = -t;
                }
                let c = one.clone() / (t.sqr() + &one).sqrt();
                let s = t.clone() * &c;
                let tau = s.clone() / (one.clone() + &c);
                let shift = t * &apq;
                a[p * n + p] -= &shift;
                a[q * n + q] += &shift;
                a[p * n + q] = T::zero();
                a[q * n + p] = T::zero();
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let (g, h) = (a[r * n + p].clone(), a[r * n + q].clone());
                    let (np, nq) = rotate(g, h, &s, &tau);
                    a[p * n + r] = np.clone();
                    a[r * n + p] = np;
                    a[q * n + r] = nq.clone();
                    a[r * n + q] = nq;
                }
                if let Some(v) = v.as_mut() {
                    for r in 0..n {
                        let (g, h) = (v[r * n + p].clone(), v[r * n + q].clone());
                        let (np, nq) = rotate(g, h, &s, &tau);
                        v[r * n + p] = np;
                        v[r * n + q] = nq;
                    }
                }
            }
        }
    }
    let residual = off(&a).sqrt().to_f64();
    Err(Error::non_convergence(
        format!("Jacobi eigensolver ({n}x{n}, {MAX_SWEEPS} sweeps)"),
        residual,
    ))
}

#[inline]
fn rotate<T: Real>(g: T, h: T, s: &T, tau: &T) -> (T, T) {
    let mut t1 = g.clone() * tau;
    t1 += &h;
    t1 *= s;
    let mut t2 = h.clone() * tau;
    t2 = g.clone() - t2;
    t2 *= s;
    (g - t1, h + t2)
}
