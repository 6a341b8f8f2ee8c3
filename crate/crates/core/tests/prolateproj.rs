use zetalab::basis::{xi, Parity};
use zetalab::numkernel::matrix::dot;
use zetalab::numkernel::{sym_eigen, GaussLegendre};
use zetalab::prolate::{prolate_family, PhiFn};
use zetalab::prolateproj::{build_projection, e_phi_components, ProlateProjection};
use zetalab::weilform::{assemble_sigma, WhichTerms};
use zetalab::{BigReal, NumContext, Real, SymMatrix};

/// ℰ(φ) components rewritten in u = r·eˣ:
/// 2 ∫_1^λ u^{-1/2} φ(u) Σ_{r ≤ u} r^{-1/2} ξ_j(log(u/r)) du,
/// integrated with a fixed composite rule on each [r, r+1] ∩ [1, λ].
fn components_oracle(phi: &PhiFn<BigReal>, n_trunc: usize) -> Vec<BigReal> {
    let lambda = phi.lambda().clone();
    let l = lambda.ln() * BigReal::from_i64(2);
    let parity = Parity::of_order(phi.n);
    let dim = parity.block_dim(n_trunc);
    let rule = GaussLegendre::<BigReal>::compute(50);
    let mut out = vec![BigReal::zero(); dim];
    let mut a = BigReal::one();
    while a < lambda {
        let b = BigReal::min_of(a.clone() + BigReal::one(), lambda.clone());
        let panels = 12;
        let h = (b.clone() - &a) / BigReal::from_i64(panels);
        let half = h.clone() / BigReal::from_i64(2);
        let r_max = a.to_f64().round() as i64;
        for p in 0..panels {
            let mid = a.clone() + h.clone() * BigReal::from_i64(p) + &half;
            for (x, w) in rule.nodes.iter().zip(&rule.weights) {
                let u = mid.clone() + half.clone() * x;
                let weight = phi.eval(&u) / u.sqrt() * w * &half;
                for r in 1..=r_max {
                    let rr = BigReal::from_i64(r);
                    let arg = (u.clone() / &rr).ln();
                    let s = weight.clone() / rr.sqrt();
                    for (i, o) in out.iter_mut().enumerate() {
                        *o += s.clone() * xi(parity.index(i), &l, &arg);
                    }
                }
            }
        }
        a = b;
    }
    out.into_iter().map(|v| v * BigReal::from_i64(2)).collect()
}

/// Π on one block as Rᵀ G⁻¹ R, with G⁻¹ from the eigen-decomposition of the
/// Gram matrix of the raw ℰ(φ_n) vectors.
fn projector_oracle(raw: &[Vec<BigReal>], ctx: &NumContext) -> SymMatrix<BigReal> {
    let g = SymMatrix::from_fn(raw.len(), |i, j| dot(&raw[i], &raw[j]));
    let eig = sym_eigen(&g, ctx).unwrap();
    let dim = raw[0].len();
    // W rows: s^{-1/2} uᵀ R, orthonormal and spanning the same space
    let w: Vec<Vec<BigReal>> = eig
        .values
        .iter()
        .zip(&eig.vectors)
        .map(|(s, u)| {
            let scale = BigReal::one() / s.sqrt();
            (0..dim)
                .map(|c| {
                    let col = u.iter().zip(raw).fold(BigReal::zero(), |acc, (ui, r)| acc + ui.clone() * &r[c]);
                    col * &scale
                })
                .collect()
        })
        .collect();
    SymMatrix::from_fn(dim, |i, j| w.iter().fold(BigReal::zero(), |acc, v| acc + v[i].clone() * &v[j]))
}

fn raw_block(mu: &str, k: usize, n_trunc: usize, parity: Parity, ctx: &NumContext) -> Vec<(usize, Vec<BigReal>)> {
    let lambda = BigReal::parse(mu).unwrap().sqrt();
    let family = prolate_family(k + 2, &lambda, ctx).unwrap();
    (2..=k + 1)
        .filter(|&n| Parity::of_order(n) == parity)
        .map(|n| {
            let phi = PhiFn::from_family(n, &family).unwrap();
            (n, e_phi_components(&phi, n_trunc, ctx).unwrap())
        })
        .collect()
}

#[test]
fn components_match_integer_split_oracle() {
    let ctx = NumContext::with_digits(40);
    let _g = ctx.install();
    let tol = BigReal::ten_pow_neg(20);
    // μ = 3 exercises the single-term case λ < 2
    for (mu, k) in [("3", 3), ("5.5", 5)] {
        let lambda = BigReal::parse(mu).unwrap().sqrt();
        let family = prolate_family(k + 2, &lambda, &ctx).unwrap();
        for n in 2..=k + 1 {
            let phi = PhiFn::from_family(n, &family).unwrap();
            let got = e_phi_components(&phi, 10, &ctx).unwrap();
            let want = components_oracle(&phi, 10);
            for (j, (g, w)) in got.iter().zip(&want).enumerate() {
                let d = (g.clone() - w).abs();
                assert!(d < tol, "mu={mu} n={n} j={j}: {g} vs {w}");
            }
        }
    }
}

#[test]
fn projector_matches_gram_eigen_oracle() {
    let ctx = NumContext::with_digits(40);
    let _g = ctx.install();
    let (mu, k, n) = ("5.5", 6, 14);
    let proj = build_projection(&BigReal::parse(mu).unwrap().sqrt(), k, n, &ctx).unwrap();
    let tol = BigReal::ten_pow_neg(20);
    for parity in [Parity::Even, Parity::Odd] {
        let raw: Vec<Vec<BigReal>> = raw_block(mu, k, n, parity, &ctx).into_iter().map(|(_, v)| v).collect();
        let want = projector_oracle(&raw, &ctx);
        let got = proj.matrix(parity);
        for i in 0..want.dim() {
            for j in 0..want.dim() {
                let d = (got.get(i, j).clone() - want.get(i, j)).abs();
                assert!(d < tol, "{parity:?} ({i}, {j})");
            }
        }
    }
}

fn check_orthonormal_projector(p: &ProlateProjection<f64>, tol: f64) {
    for parity in [Parity::Even, Parity::Odd] {
        let vs = p.block(parity);
        for (a, va) in vs.iter().enumerate() {
            for (b, vb) in vs.iter().enumerate() {
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((dot(&va.coords, &vb.coords) - want).abs() < tol);
            }
        }
        let m = p.matrix(parity);
        let d = m.dim();
        for i in 0..d {
            for j in 0..d {
                let sq: f64 = (0..d).map(|t| m.get(i, t) * m.get(t, j)).sum();
                assert!((sq - m.get(i, j)).abs() < tol, "Π² ≠ Π at ({i}, {j})");
                assert_eq!(m.get(i, j), m.get(j, i));
            }
        }
    }
}

#[test]
fn projection_is_orthonormal_with_balanced_blocks() {
    let ctx = NumContext::with_digits(30);
    for (mu, k) in [(5.5f64, 8usize), (7.5, 11), (10.5, 18)] {
        let p = build_projection(&mu.sqrt(), k, 40, &ctx).unwrap();
        assert_eq!(p.vectors.len(), k);
        // n = 2..=k+1: ⌈k/2⌉ even values and ⌊k/2⌋ odd ones
        assert_eq!(p.block(Parity::Even).len(), k.div_ceil(2));
        assert_eq!(p.block(Parity::Odd).len(), k / 2);
        check_orthonormal_projector(&p, 1e-12);
        // the complement kills the range
        for v in p.block(Parity::Odd) {
            let c = p.complement(Parity::Odd, &v.coords);
            assert!(c.iter().all(|x| x.abs() < 1e-12));
        }
    }
}

#[test]
fn zero_conditions_give_empty_projection() {
    let ctx = NumContext::with_digits(30);
    let p = build_projection(&2.0f64, 0, 10, &ctx).unwrap();
    assert!(p.vectors.is_empty());
    let x: Vec<f64> = (0..11).map(|i| i as f64).collect();
    assert_eq!(p.complement(Parity::Even, &x), x);
}

#[test]
fn too_many_conditions_rejected() {
    let ctx = NumContext::with_digits(30);
    assert!(build_projection(&5.5f64.sqrt(), 14, 20, &ctx).is_err());
}

#[test]
fn range_aligns_with_small_weil_eigenvectors() {
    // The i-th vector of each block is close to the eigenvector of the i-th
    // smallest eigenvalue of the Weil form on that block.
    let ctx = NumContext::with_digits(60);
    let _g = ctx.install();
    let mu = BigReal::parse("5.5").unwrap();
    let n = 30;
    let w = assemble_sigma(&mu, n, &WhichTerms::full(), &ctx).unwrap();
    let p = build_projection(&mu.sqrt(), 8, n, &ctx).unwrap();
    for parity in [Parity::Even, Parity::Odd] {
        let e = sym_eigen(w.block(parity), &ctx).unwrap();
        for (i, v) in p.block(parity).iter().enumerate() {
            let ov = dot(&v.coords, &e.vectors[i]).abs().to_f64();
            assert!(ov > 0.99, "{parity:?} n={} overlap {ov}", v.n);
        }
    }
}
