use super::real::Real;

/// All prime powers `n = p^m ≤ x_max` with Λ(n) = log p, in increasing order.
pub fn von_mangoldt_range<T: Real>(x_max: &T) -> Vec<(u64, T)> {
    let xf = x_max.to_f64();
    if !(xf >= 2.0) {
        return Vec::new();
    }
    let mut limit = xf.floor() as u64;
    // Guard against the f64 image of a value just below an integer rounding up.
    if T::from_i64(limit as i64) > *x_max {
        limit -= 1;
    }
    let n = limit as usize;
    let mut lambda_prime: Vec<u64> = vec![0; n + 1];
    let mut composite = vec![false; n + 1];
    for p in 2..=n {
        if composite[p] {
            continue;
        }
        let mut q = p * p;
        while q <= n {
            composite[q] = true;
            q += p;
        }
        let mut pk = p as u64;
        while pk <= limit {
            lambda_prime[pk as usize] = p as u64;
            pk = match pk.checked_mul(p as u64) {
                Some(v) => v,
                None => break,
            };
        }
    }
    lambda_prime
        .iter()
        .enumerate()
        .filter(|(_, &p)| p != 0)
        .map(|(k, &p)| (k as u64, T::from_i64(p as i64).ln()))
        .collect()
}
