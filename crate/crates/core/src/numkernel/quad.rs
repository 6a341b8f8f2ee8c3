//! Gauss–Legendre rules and adaptive panel-doubling integration.

use std::any::{Any, TypeId};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;

use super::context::NumContext;
use super::real::Real;
use crate::error::{Error, Result};

/// Nodes and weights of an n-point Gauss–Legendre rule on [−1, 1].
#[derive(Clone, Debug)]
pub struct GaussLegendre<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

/// Value of P_n and P_n' at x.
fn legendre_with_derivative<T: Real>(n: usize, x: &T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x.clone();
    for k in 2..=n {
        let kk = T::from_i64(k as i64);
        let p2 = (T::from_i64(2 * k as i64 - 1) * x * &p1 - T::from_i64(k as i64 - 1) * &p0) / &kk;
        p0 = p1;
        p1 = p2;
    }
    let dp = T::from_i64(n as i64) * (x.clone() * &p1 - p0) / (x.sqr() - T::one());
    (p1, dp)
}

impl<T: Real> GaussLegendre<T> {
    /// Computes the rule by Newton iteration at the current precision.
    pub fn compute(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre order must be positive");
        let mut nodes = vec![T::zero(); n];
        let mut weights = vec![T::zero(); n];
        let tol = T::epsilon() * T::from_i64(64);
        for i in 0..n.div_ceil(2) {
            let guess = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut x = T::from_f64(guess);
            let mut dp = T::one();
            for _ in 0..200 {
                let (p, d) = legendre_with_derivative(n, &x);
                let dx = p / &d;
                x -= &dx;
                dp = d;
                if dx.abs() <= tol {
                    let (_, d) = legendre_with_derivative(n, &x);
                    dp = d;
                    break;
                }
            }
            let w = T::from_i64(2) / ((T::one() - x.sqr()) * dp.sqr());
            nodes[i] = -x.clone();
            nodes[n - 1 - i] = x;
            weights[i] = w.clone();
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = T::zero();
        }
        GaussLegendre { nodes, weights }
    }

    /// Shared cached rule for order `n` at the current precision.
    pub fn cached(n: usize) -> Arc<Self> {
        static CACHE: Lazy<Mutex<HashMap<(TypeId, usize, u32), Arc<dyn Any + Send + Sync>>>> =
            Lazy::new(|| Mutex::new(HashMap::new()));
        let key = (TypeId::of::<T>(), n, T::precision_digits());
        if let Some(hit) = CACHE.lock().expect("quadrature cache").get(&key) {
            if let Ok(rule) = hit.clone().downcast::<Self>() {
                return rule;
            }
        }
        let rule = Arc::new(Self::compute(n));
        CACHE
            .lock()
            .expect("quadrature cache")
            .insert(key, rule.clone() as Arc<dyn Any + Send + Sync>);
        rule
    }

    /// Composite rule value and ∫|f| over `panels` equal panels of [a, b].
    pub fn composite(&self, f: &mut impl FnMut(&T) -> T, a: &T, b: &T, panels: usize) -> (T, T) {
        let h = (b.clone() - a) / T::from_i64(panels as i64);
        let half = h.clone() / T::from_i64(2);
        let mut sum = T::zero();
        let mut abs = T::zero();
        for p in 0..panels {
            let mid = a.clone() + h.clone() * T::from_i64(p as i64) + &half;
            for (x, w) in self.nodes.iter().zip(&self.weights) {
                let fx = f(&(mid.clone() + half.clone() * x)) * w;
                abs += fx.abs();
                sum += fx;
            }
        }
        (sum * &half, abs * half.abs())
    }
}

/// Behaviour of the integrand at the left endpoint.
#[derive(Clone, Debug, PartialEq)]
pub enum Endpoint {
    Regular,
    /// Integrand behaves like `(x − a)^alpha · smooth`, `alpha > −1`.
    Singular { alpha: f64 },
}

/// Options for [`integrate_with`].
#[derive(Clone, Debug)]
pub struct QuadOptions {
    /// Initial number of panels.
    pub panels: usize,
    /// Give up after this many doublings.
    pub max_doublings: u32,
    /// Extra digits of slack subtracted from the working precision.
    pub slack: u32,
    /// Absolute floor: differences below it count as converged. Useful when
    /// the integrand is only known to a fixed absolute accuracy.
    pub abs_tol: f64,
    pub left: Endpoint,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            panels: 1,
            max_doublings: 14,
            slack: 15,
            abs_tol: 0.0,
            left: Endpoint::Regular,
        }
    }
}

/// ∫_a^b f with default options (regular endpoints).
pub fn integrate<T: Real>(f: impl FnMut(&T) -> T, a: &T, b: &T, ctx: &NumContext) -> Result<T> {
    integrate_with(f, a, b, ctx, &QuadOptions::default())
}

/// Adaptive panel-doubling Gauss–Legendre integration.
///
/// Doubles the panel count until two successive estimates differ by less
/// than `10^(-digits+slack)` times ∫|f|.
pub fn integrate_with<T: Real>(
    mut f: impl FnMut(&T) -> T,
    a: &T,
    b: &T,
    ctx: &NumContext,
    opts: &QuadOptions,
) -> Result<T> {
    match opts.left {
        Endpoint::Regular => doubling(&mut f, a, b, ctx, opts),
        Endpoint::Singular { alpha } => {
            if alpha <= -1.0 {
                return Err(Error::invalid(format!("endpoint exponent {alpha} is not integrable")));
            }
            // x = a + (b - a) t^q turns (x - a)^alpha dx into a t^(>=1) factor.
            let q = (2.0 / (1.0 + alpha)).ceil().max(1.0) as i32;
            let width = b.clone() - a;
            let qq = T::from_i64(q as i64);
            let mut g = |t: &T| {
                let tq1 = t.powi(q - 1);
                let x = a.clone() + width.clone() * (tq1.clone() * t);
                f(&x) * &width * &qq * tq1
            };
            doubling(&mut g, &T::zero(), &T::one(), ctx, opts)
        }
    }
}

fn doubling<T: Real>(
    f: &mut impl FnMut(&T) -> T,
    a: &T,
    b: &T,
    ctx: &NumContext,
    opts: &QuadOptions,
) -> Result<T> {
    let rule = GaussLegendre::<T>::cached(ctx.quad_order);
    let tol: T = ctx.tol(opts.slack);
    let atol = T::from_f64(opts.abs_tol);
    let mut panels = opts.panels.max(1);
    let (mut prev, _) = rule.composite(f, a, b, panels);
    let mut last_diff = f64::INFINITY;
    for _ in 0..opts.max_doublings {
        panels *= 2;
        let (cur, abs) = rule.composite(f, a, b, panels);
        let diff = (cur.clone() - &prev).abs();
        if diff <= tol.clone() * &abs || diff <= atol || abs.is_zero() {
            return Ok(cur);
        }
        last_diff = (diff / abs).to_f64();
        prev = cur;
    }
    Err(Error::non_convergence(
        format!("quadrature on [{}, {}] with {panels} panels", a.to_f64(), b.to_f64()),
        last_diff,
    ))
}

/// Adaptive integration of a vector-valued integrand of length `dim`.
///
/// Convergence is declared when every component changes by less than the
/// tolerance times the largest component scale ∫|f_j|.
pub fn integrate_vec<T: Real>(
    mut f: impl FnMut(&T) -> Vec<T>,
    dim: usize,
    a: &T,
    b: &T,
    ctx: &NumContext,
    opts: &QuadOptions,
) -> Result<Vec<T>> {
    let rule = GaussLegendre::<T>::cached(ctx.quad_order);
    let tol: T = ctx.tol(opts.slack);
    let atol = T::from_f64(opts.abs_tol);
    let eval = |f: &mut dyn FnMut(&T) -> Vec<T>, panels: usize| {
        let h = (b.clone() - a) / T::from_i64(panels as i64);
        let half = h.clone() / T::from_i64(2);
        let mut sum = vec![T::zero(); dim];
        let mut scale = vec![T::zero(); dim];
        for p in 0..panels {
            let mid = a.clone() + h.clone() * T::from_i64(p as i64) + &half;
            for (x, w) in rule.nodes.iter().zip(&rule.weights) {
                let v = f(&(mid.clone() + half.clone() * x));
                for j in 0..dim {
                    let t = v[j].clone() * w;
                    scale[j] += t.abs();
                    sum[j] += t;
                }
            }
        }
        for j in 0..dim {
            sum[j] *= &half;
            scale[j] *= &half;
        }
        (sum, scale)
    };
    let mut panels = opts.panels.max(1);
    let (mut prev, _) = eval(&mut f, panels);
    let mut last = f64::INFINITY;
    for _ in 0..opts.max_doublings {
        panels *= 2;
        let (cur, scale) = eval(&mut f, panels);
        let smax = scale.into_iter().fold(T::zero(), T::max_of);
        let dmax = cur
            .iter()
            .zip(&prev)
            .map(|(x, y)| (x.clone() - y).abs())
            .fold(T::zero(), T::max_of);
        if dmax <= tol.clone() * &smax || dmax <= atol || smax.is_zero() {
            return Ok(cur);
        }
        last = (dmax / smax).to_f64();
        prev = cur;
    }
    Err(Error::non_convergence(
        format!("vector quadrature on [{}, {}]", a.to_f64(), b.to_f64()),
        last,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::BigReal;

    #[test]
    fn linear_integrand() {
        let ctx = NumContext::with_digits(30);
        let v: f64 = integrate(|x: &f64| *x, &0.0, &1.0, &ctx).unwrap();
        assert!((v - 0.5).abs() < 1e-15);
    }

    #[test]
    fn sine_over_half_period() {
        let ctx = NumContext::with_digits(40);
        let _g = ctx.install();
        let v = integrate(|x: &BigReal| x.sin(), &BigReal::zero(), &BigReal::pi(), &ctx).unwrap();
        assert!((v - BigReal::from_i64(2)).abs() < BigReal::ten_pow_neg(30));
    }

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let _g = crate::numkernel::set_working_digits(60);
        let rule = GaussLegendre::<BigReal>::compute(10);
        // ∫ x^18 over [−1,1] = 2/19
        let mut s = BigReal::zero();
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            s += Real::powi(x, 18) * w;
        }
        assert!((s - BigReal::from_ratio(2, 19)).abs() < BigReal::ten_pow_neg(55));
    }

    #[test]
    fn inverse_square_root_endpoint() {
        let ctx = NumContext::with_digits(30);
        let opts = QuadOptions {
            left: Endpoint::Singular { alpha: -0.5 },
            ..Default::default()
        };
        let v = integrate_with(|x: &f64| x.cos() / x.sqrt(), &0.0, &1.0, &ctx, &opts).unwrap();
        // 2 * FresnelC-type value computed by series: Σ (-1)^k 2/((4k+1)(2k)!)
        let mut series = 0.0;
        let mut fact = 1.0;
        for k in 0..12 {
            if k > 0 {
                fact *= (2 * k - 1) as f64 * (2 * k) as f64;
            }
            series += (-1f64).powi(k) * 2.0 / ((4 * k + 1) as f64 * fact);
        }
        assert!((v - series).abs() < 1e-13);
    }

    #[test]
    fn vector_integration_matches_scalar() {
        let ctx = NumContext::with_digits(30);
        let v = integrate_vec(
            |x: &f64| vec![x.exp(), (3.0 * x).cos()],
            2,
            &0.0,
            &2.0,
            &ctx,
            &QuadOptions::default(),
        )
        .unwrap();
        assert!((v[0] - (2f64.exp() - 1.0)).abs() < 1e-13);
        assert!((v[1] - 6f64.sin() / 3.0).abs() < 1e-13);
    }
}
