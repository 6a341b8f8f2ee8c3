//! The prolate projection Π(λ, k): the functions φ_n pushed through ℰ,
//! expanded on the basis η_j and orthonormalised block by block.
//!
//! Components follow ℰ(φ_n)_j = 2 Σ_{1≤r<λ} ∫_0^{log(λ/r)} e^{x/2} φ_n(r e^x) ξ_j(x) dx.

use crate::basis::Parity;
use crate::error::{Error, Result};
use crate::numkernel::matrix::{dot, norm};
use crate::numkernel::quad::QuadOptions;
use crate::numkernel::{integrate_vec, NumContext, Real, SymMatrix};
use crate::prolate::{family_values, prolate_family, PhiFn, ProlateFn, NU_THRESHOLD};

/// Values ξ_j(x) for every index of one parity block with |j| ≤ `n_trunc`.
pub fn basis_values<T: Real>(parity: Parity, n_trunc: usize, l: &T, x: &T) -> Vec<T> {
    let dim = parity.block_dim(n_trunc);
    let amp = (T::from_i64(2) / l).sqrt();
    let (s1, c1) = (T::pi() * T::from_i64(2) * x / l).sin_cos();
    let mut out = Vec::with_capacity(dim);
    // (s, c) = (sin, cos)(2πjx/L) by rotation
    let (mut s, mut c) = (T::zero(), T::one());
    if parity == Parity::Even {
        out.push(T::one() / l.sqrt());
    }
    for j in 1..=n_trunc {
        let ns = s.clone() * &c1 + c.clone() * &s1;
        c = c * &c1 - s * &s1;
        s = ns;
        let v = match parity {
            Parity::Even => amp.clone() * &c,
            // ξ_{−j} = (−1)^j √(2/L) sin(−2πjx/L)
            Parity::Odd => -(amp.clone() * &s),
        };
        out.push(if j % 2 == 0 { v } else { -v });
    }
    out
}

/// Coordinates of ℰ(φ_n) on the η_j of the block matching the parity of n.
/// Components on the other block vanish and are not returned.
pub fn e_phi_components<T: Real>(phi: &PhiFn<T>, n_trunc: usize, ctx: &NumContext) -> Result<Vec<T>> {
    let lambda = phi.lambda().clone();
    let l = lambda.ln() * T::from_i64(2);
    let parity = Parity::of_order(phi.n);
    let dim = parity.block_dim(n_trunc);
    // φ is only known to roughly working precision relative to its peak, so
    // the quadrature cannot resolve components below that level.
    let peak = (0..=48).fold(T::zero(), |m, i| {
        T::max_of(m, phi.eval(&(lambda.clone() * T::from_ratio(i, 48))).abs())
    });
    let abs_tol = (ctx.tol::<T>(15) * peak).to_f64();
    let mut total = vec![T::zero(); dim];
    let mut r = 1i64;
    while T::from_i64(r) < lambda {
        let rr = T::from_i64(r);
        let upper = (lambda.clone() / &rr).ln();
        let f = |x: &T| {
            let w = (x.clone() / T::from_i64(2)).exp() * phi.eval(&(rr.clone() * x.exp()));
            basis_values(parity, n_trunc, &l, x)
                .into_iter()
                .map(|b| b * &w)
                .collect()
        };
        let opts = QuadOptions {
            panels: 2 + n_trunc / 4 + phi.n / 2,
            abs_tol,
            ..Default::default()
        };
        let part = integrate_vec(f, dim, &T::zero(), &upper, ctx, &opts)?;
        for (t, p) in total.iter_mut().zip(part) {
            *t += p;
        }
        r += 1;
    }
    Ok(total.into_iter().map(|v| v * T::from_i64(2)).collect())
}

/// [`e_phi_components`] for several φ_n of one family at once: a single
/// quadrature per r with one Legendre recurrence and one set of basis
/// values per node.
pub fn e_phi_components_joint<T: Real>(
    family: &[ProlateFn<T>],
    phis: &[PhiFn<T>],
    n_trunc: usize,
    ctx: &NumContext,
) -> Result<Vec<Vec<T>>> {
    let Some(first) = phis.first() else {
        return Ok(Vec::new());
    };
    let lambda = first.lambda().clone();
    let l = lambda.ln() * T::from_i64(2);
    let dims: Vec<usize> = phis.iter().map(|p| Parity::of_order(p.n).block_dim(n_trunc)).collect();
    let total: usize = dims.iter().sum();
    let values = |x: &T| -> Vec<T> {
        let psi = family_values(family, x);
        phis.iter()
            .map(|p| psi[p.n].clone() * &p.top_weight - psi[p.n % 2].clone() * &p.base_weight)
            .collect()
    };
    let peak = (0..=48).fold(T::zero(), |m, i| {
        values(&(lambda.clone() * T::from_ratio(i, 48)))
            .into_iter()
            .fold(m, |m, v| T::max_of(m, v.abs()))
    });
    let abs_tol = (ctx.tol::<T>(15) * peak).to_f64();
    let n_max = phis.iter().map(|p| p.n).max().unwrap_or(2);
    let mut out = vec![T::zero(); total];
    let mut r = 1i64;
    while T::from_i64(r) < lambda {
        let rr = T::from_i64(r);
        let upper = (lambda.clone() / &rr).ln();
        let f = |x: &T| {
            let w = (x.clone() / T::from_i64(2)).exp();
            let phi = values(&(rr.clone() * x.exp()));
            let even = basis_values(Parity::Even, n_trunc, &l, x);
            let odd = basis_values(Parity::Odd, n_trunc, &l, x);
            let mut v = Vec::with_capacity(total);
            for (p, ph) in phis.iter().zip(phi) {
                let s = ph * &w;
                let b = if p.n % 2 == 0 { &even } else { &odd };
                v.extend(b.iter().map(|x| x.clone() * &s));
            }
            v
        };
        let opts = QuadOptions {
            panels: 2 + n_trunc / 4 + n_max / 2,
            abs_tol,
            ..Default::default()
        };
        let part = integrate_vec(f, total, &T::zero(), &upper, ctx, &opts)?;
        for (t, p) in out.iter_mut().zip(part) {
            *t += p;
        }
        r += 1;
    }
    let mut res = Vec::with_capacity(phis.len());
    let mut it = out.into_iter().map(|v| v * T::from_i64(2));
    for d in dims {
        res.push(it.by_ref().take(d).collect());
    }
    Ok(res)
}

/// One orthonormal vector ε of the projection, in block coordinates.
#[derive(Clone, Debug)]
pub struct EpsVector<T> {
    /// Index n of the φ_n whose Gram–Schmidt step produced this vector.
    pub n: usize,
    pub parity: Parity,
    pub coords: Vec<T>,
}

/// Orthonormal vectors spanning the range of Π(λ, k) inside E_N.
#[derive(Clone, Debug)]
pub struct ProlateProjection<T> {
    pub lambda: T,
    /// L = 2 log λ.
    pub l: T,
    pub k: usize,
    pub n_trunc: usize,
    pub vectors: Vec<EpsVector<T>>,
}

impl<T: Real> ProlateProjection<T> {
    /// Vectors of one block, in increasing n.
    pub fn block(&self, parity: Parity) -> Vec<&EpsVector<T>> {
        self.vectors.iter().filter(|v| v.parity == parity).collect()
    }

    /// Π restricted to one block, Σ ε εᵀ.
    pub fn matrix(&self, parity: Parity) -> SymMatrix<T> {
        let vs = self.block(parity);
        SymMatrix::from_fn(parity.block_dim(self.n_trunc), |i, j| {
            vs.iter()
                .fold(T::zero(), |acc, v| acc + v.coords[i].clone() * &v.coords[j])
        })
    }

    /// Π(λ, k′) for k′ ≤ k. Gram–Schmidt runs in increasing n inside each
    /// block, so dropping the vectors with n > k′+1 gives the smaller
    /// projection exactly.
    pub fn truncate(&self, k: usize) -> Result<Self> {
        if k > self.k {
            return Err(Error::invalid(format!("cannot extend a projection from k = {} to {k}", self.k)));
        }
        Ok(ProlateProjection {
            lambda: self.lambda.clone(),
            l: self.l.clone(),
            k,
            n_trunc: self.n_trunc,
            vectors: self.vectors.iter().filter(|v| v.n <= k + 1).cloned().collect(),
        })
    }

    /// Applies 1 − Π to a block vector.
    pub fn complement(&self, parity: Parity, x: &[T]) -> Vec<T> {
        let mut out = x.to_vec();
        for v in self.block(parity) {
            let c = dot(&v.coords, x);
            for (o, e) in out.iter_mut().zip(&v.coords) {
                *o -= c.clone() * e;
            }
        }
        out
    }
}

/// Modified Gram–Schmidt with one re-orthogonalisation pass; `raw` holds
/// (n, vector) pairs of one block in processing order.
pub fn gram_schmidt<T: Real>(
    raw: Vec<(usize, Vec<T>)>,
    parity: Parity,
    ctx: &NumContext,
) -> Result<Vec<EpsVector<T>>> {
    let floor = T::ten_pow_neg((ctx.effective_digits::<T>() / 2) as i32);
    let mut out: Vec<EpsVector<T>> = Vec::with_capacity(raw.len());
    for (n, mut v) in raw {
        let original = norm(&v);
        if original.is_zero() {
            return Err(Error::NearDependence { n, pivot: 0.0 });
        }
        for _ in 0..2 {
            for e in &out {
                let c = dot(&e.coords, &v);
                for (x, y) in v.iter_mut().zip(&e.coords) {
                    *x -= c.clone() * y;
                }
            }
        }
        let pivot = norm(&v);
        if pivot < floor.clone() * &original {
            return Err(Error::NearDependence {
                n,
                pivot: (pivot / original).to_f64(),
            });
        }
        for x in v.iter_mut() {
            *x /= &pivot;
        }
        out.push(EpsVector { n, parity, coords: v });
    }
    Ok(out)
}

/// Π(λ, k): span of ℰ(φ_n), n = 2..=k+1, orthonormalised separately in the
/// even and odd blocks in increasing n.
///
/// Requires k ≤ ν(λ²), i.e. χ(λ², k) at or above the ν threshold, so that
/// every φ_n used is built from well-concentrated prolates.
pub fn build_projection<T: Real>(
    lambda: &T,
    k: usize,
    n_trunc: usize,
    ctx: &NumContext,
) -> Result<ProlateProjection<T>> {
    let l = lambda.ln() * T::from_i64(2);
    if k == 0 {
        return Ok(ProlateProjection {
            lambda: lambda.clone(),
            l,
            k,
            n_trunc,
            vectors: Vec::new(),
        });
    }
    if n_trunc == 0 {
        return Err(Error::invalid("basis truncation must be positive"));
    }
    let family = prolate_family(k + 2, lambda, ctx)?;
    if family[k].chi < T::from_f64(NU_THRESHOLD) {
        return Err(Error::invalid(format!(
            "k = {k} exceeds the prolate cutoff at lambda = {lambda} (chi = {:.4})",
            family[k].chi.to_f64()
        )));
    }
    let phis: Vec<PhiFn<T>> = (2..=k + 1)
        .map(|n| PhiFn::from_family(n, &family))
        .collect::<Result<_>>()?;
    let comps: Vec<(usize, Vec<T>)> = phis
        .iter()
        .map(|p| p.n)
        .zip(e_phi_components_joint(&family, &phis, n_trunc, ctx)?)
        .collect();
    let mut vectors = Vec::with_capacity(k);
    for parity in [Parity::Even, Parity::Odd] {
        let raw: Vec<_> = comps
            .iter()
            .filter(|(n, _)| Parity::of_order(*n) == parity)
            .cloned()
            .collect();
        vectors.extend(gram_schmidt(raw, parity, ctx)?);
    }
    Ok(ProlateProjection {
        lambda: lambda.clone(),
        l,
        k,
        n_trunc,
        vectors,
    })
}
