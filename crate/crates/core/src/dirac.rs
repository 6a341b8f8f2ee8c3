//! The operator D(λ, k) = (1 − Π) D₀ (1 − Π) on E_N and its spectrum.
//!
//! In the real basis ξ_n, D₀ = −i d/dx is i·A with A real antisymmetric,
//! coupling only ξ_n and ξ_{−n}: A(n, −n) = 2πn/L = −A(−n, n). Because Π
//! commutes with the grading, D(λ, k) = i·[[0, C], [−Cᵀ, 0]] with
//! C = Q₊ A₊₋ Q₋, and conjugating the odd block by −i turns it into the real
//! symmetric matrix [[0, C], [Cᵀ, 0]] with the same eigenvalues. Everything
//! below works with that real form; coordinates list the even block
//! (indices 0..=N) first and then the odd block (−1..=−N).

use crate::basis::Parity;
use crate::error::{Error, Result};
use crate::numkernel::{sym_eigen, NumContext, Real, SymMatrix};
use crate::prolate::nu_cutoff;
use crate::prolateproj::{build_projection, ProlateProjection};

/// Even-to-odd block A₊₋ of D₀: row i ↔ index i, column j ↔ index −(j+1).
pub fn d0_coupling<T: Real>(l: &T, n_trunc: usize) -> Vec<Vec<T>> {
    let mut c = vec![vec![T::zero(); n_trunc]; n_trunc + 1];
    for n in 1..=n_trunc {
        c[n][n - 1] = T::pi() * T::from_i64(2 * n as i64) / l;
    }
    c
}

/// Real symmetric matrix [[0, C], [Cᵀ, 0]] unitarily equivalent to the
/// Hermitian operator with off-diagonal block C.
fn graded_symmetric<T: Real>(c: &[Vec<T>]) -> SymMatrix<T> {
    let even = c.len();
    let odd = c.first().map_or(0, Vec::len);
    SymMatrix::from_fn(even + odd, |i, j| {
        // from_fn asks for i ≥ j
        if i >= even && j < even {
            c[j][i - even].clone()
        } else {
            T::zero()
        }
    })
}

/// D₀ on E_N in the real graded form; its eigenvalues are {2πj/L : |j| ≤ N}.
pub fn d0_matrix<T: Real>(l: &T, n_trunc: usize) -> SymMatrix<T> {
    graded_symmetric(&d0_coupling(l, n_trunc))
}

/// D(λ, k) in the real graded form.
#[derive(Clone, Debug)]
pub struct DiracOperator<T> {
    pub lambda: T,
    pub l: T,
    pub k: usize,
    pub n_trunc: usize,
    pub projection: ProlateProjection<T>,
    /// C = Q₊ A₊₋ Q₋, (N+1) × N.
    pub coupling: Vec<Vec<T>>,
}

impl<T: Real> DiracOperator<T> {
    pub fn dim(&self) -> usize {
        2 * self.n_trunc + 1
    }

    /// Real symmetric form [[0, C], [Cᵀ, 0]].
    pub fn matrix(&self) -> SymMatrix<T> {
        graded_symmetric(&self.coupling)
    }

    /// Applies the operator (real form) to a vector in E_N coordinates.
    pub fn apply(&self, x: &[T]) -> Vec<T> {
        let even = self.n_trunc + 1;
        let mut out = vec![T::zero(); self.dim()];
        for (i, row) in self.coupling.iter().enumerate() {
            for (j, cij) in row.iter().enumerate() {
                out[i] += cij.clone() * &x[even + j];
                out[even + j] += cij.clone() * &x[i];
            }
        }
        out
    }
}

/// Builds D(λ, k) from a prolate projection computed at the same N.
pub fn dirac_from_projection<T: Real>(projection: ProlateProjection<T>) -> DiracOperator<T> {
    let n = projection.n_trunc;
    let a = d0_coupling(&projection.l, n);
    // Q₊ A Q₋: project the columns, then the rows.
    let cols: Vec<Vec<T>> = (0..n)
        .map(|j| {
            let col: Vec<T> = a.iter().map(|row| row[j].clone()).collect();
            projection.complement(Parity::Even, &col)
        })
        .collect();
    let rows: Vec<Vec<T>> = (0..=n)
        .map(|i| {
            let row: Vec<T> = cols.iter().map(|c| c[i].clone()).collect();
            projection.complement(Parity::Odd, &row)
        })
        .collect();
    DiracOperator {
        lambda: projection.lambda.clone(),
        l: projection.l.clone(),
        k: projection.k,
        n_trunc: n,
        projection,
        coupling: rows,
    }
}

/// D(λ, k) with the projection built from scratch.
pub fn dirac_build<T: Real>(
    lambda: &T,
    k: usize,
    n_trunc: usize,
    ctx: &NumContext,
) -> Result<DiracOperator<T>> {
    Ok(dirac_from_projection(build_projection(lambda, k, n_trunc, ctx)?))
}

/// The default number of conditions at μ: the largest even k ≤ ν(μ) − 1.
pub fn default_k<T: Real>(mu: &T, ctx: &NumContext) -> Result<usize> {
    let nu = nu_cutoff(mu, ctx)?;
    if nu == 0 {
        return Ok(0);
    }
    let k = nu - 1;
    Ok(k - k % 2)
}

/// Spectrum of D(λ, k).
#[derive(Clone, Debug)]
pub struct DiracSpectrum<T> {
    /// Positive eigenvalues, ascending.
    pub positive: Vec<T>,
    /// Unit eigenvectors (real graded form) of the positive eigenvalues.
    pub vectors: Vec<Vec<T>>,
    /// Negative eigenvalues, ascending.
    pub negative: Vec<T>,
    pub kernel_dim: usize,
    /// Dimension of the even part of the kernel minus the odd part, from the
    /// rank of the off-diagonal block.
    pub kernel_index: i64,
    pub n_trunc: usize,
}

impl<T: Real> DiracSpectrum<T> {
    /// Number of positive eigenvalues in (0, e].
    pub fn count_upto(&self, e: &T) -> usize {
        self.positive.iter().take_while(|v| *v <= e).count()
    }
}

/// Kernel threshold 10^(−digits/3).
pub fn kernel_threshold<T: Real>(ctx: &NumContext) -> T {
    T::ten_pow_neg((ctx.effective_digits::<T>() / 3) as i32)
}

/// Full eigen-decomposition of D, split into kernel and ± parts.
pub fn dirac_spectrum<T: Real>(d: &DiracOperator<T>, ctx: &NumContext) -> Result<DiracSpectrum<T>> {
    spectrum_of(&d.matrix(), d.n_trunc, ctx)
}

fn spectrum_of<T: Real>(m: &SymMatrix<T>, n_trunc: usize, ctx: &NumContext) -> Result<DiracSpectrum<T>> {
    let eig = sym_eigen(m, ctx)?;
    let thr = kernel_threshold::<T>(ctx);
    // a gap of at least this much above the threshold is expected
    let grey = thr.sqrt();
    let even = n_trunc + 1;
    let mut out = DiracSpectrum {
        positive: Vec::new(),
        vectors: Vec::new(),
        negative: Vec::new(),
        kernel_dim: 0,
        kernel_index: 0,
        n_trunc,
    };
    for (v, vec) in eig.values.into_iter().zip(eig.vectors) {
        let a = v.abs();
        if a < thr {
            out.kernel_dim += 1;
        } else if a < grey {
            return Err(Error::AmbiguousKernel(format!(
                "eigenvalue {:.3e} between the kernel threshold {:.1e} and {:.1e}",
                v.to_f64(),
                thr.to_f64(),
                grey.to_f64()
            )));
        } else if v > T::zero() {
            out.positive.push(v);
            out.vectors.push(vec);
        } else {
            out.negative.push(v);
        }
    }
    // ker = ker Cᵀ (even side, dim N+1−r) ⊕ ker C (odd side, dim N−r)
    let r = out.positive.len();
    out.kernel_index = (even - r) as i64 - (n_trunc - r) as i64;
    if out.kernel_dim != 2 * n_trunc + 1 - 2 * r {
        return Err(Error::AmbiguousKernel(format!(
            "{} kernel eigenvalues but {r} positive ones in dimension {}",
            out.kernel_dim,
            2 * n_trunc + 1
        )));
    }
    Ok(out)
}

/// Spectrum of D₀ itself.
pub fn d0_spectrum<T: Real>(l: &T, n_trunc: usize, ctx: &NumContext) -> Result<DiracSpectrum<T>> {
    spectrum_of(&d0_matrix(l, n_trunc), n_trunc, ctx)
}

/// Number of positive eigenvalues of D in (0, e].
pub fn count_nonzero_upto<T: Real>(spec: &DiracSpectrum<T>, e: &T) -> usize {
    spec.count_upto(e)
}

/// Smoothed zero count ⟨N(E)⟩ = (E/2π) log(E/2π) − E/2π.
pub fn smoothed_zero_count<T: Real>(e: &T) -> T {
    let x = e.clone() / (T::pi() * T::from_i64(2));
    x.clone() * x.ln() - x
}

/// Overlap of a positive-eigenvalue vector (real graded form) with the D₀
/// eigenvector of rotation number j ≥ 1, (ξ_j − iξ_{−j})/√2, which in the
/// graded form is (e_j + e_{−j})/√2.
pub fn d0_overlap<T: Real>(v: &[T], n_trunc: usize, j: usize) -> T {
    if j == 0 {
        return v[0].clone();
    }
    let even = n_trunc + 1;
    (v[j].clone() + &v[even + j - 1]) / T::from_i64(2).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d0_eigenvalues_are_quantised() {
        let ctx = NumContext::with_digits(30);
        let l = 1.7f64;
        let s = d0_spectrum(&l, 6, &ctx).unwrap();
        assert_eq!(s.kernel_dim, 1);
        assert_eq!(s.kernel_index, 1);
        for (j, v) in s.positive.iter().enumerate() {
            let want = 2.0 * std::f64::consts::PI * (j + 1) as f64 / l;
            assert!((v - want).abs() < 1e-12);
        }
        assert_eq!(s.negative.len(), 6);
    }

    #[test]
    fn d0_eigenvectors_have_unit_overlap() {
        let ctx = NumContext::with_digits(30);
        let s = d0_spectrum(&2.0f64, 5, &ctx).unwrap();
        for (j, v) in s.vectors.iter().enumerate() {
            assert!((d0_overlap(v, 5, j + 1).abs() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn smoothed_count_at_two_pi_mu() {
        let mu = 7.25f64;
        let e = 2.0 * std::f64::consts::PI * mu;
        assert!((smoothed_zero_count(&e) - (mu * mu.ln() - mu)).abs() < 1e-12);
    }
}
