use proptest::prelude::*;
use zetalab::criteria::{
    discrepancy, discrepancy_of, evaluate_point, extract_from_grid, k_coincidence, mu_grid, sweep, CriteriaConfig,
    Criterion, KPolicy, ZetaZerosTable,
};
use zetalab::numkernel::special::{theta_siegel, zeta_critical};
use zetalab::{BigReal, Complex, NumContext, Real};

const ZETA_1: f64 = 14.134725141734693790;

fn fast_ctx() -> NumContext {
    let mut ctx = NumContext::with_digits(30);
    ctx.quad_order = 24;
    ctx
}

fn hardy_z(t: &BigReal, ctx: &NumContext) -> BigReal {
    let theta = theta_siegel(t);
    (Complex::cis(&theta) * zeta_critical(t, ctx)).re
}

#[test]
fn builtin_zeros_are_sign_changes_of_hardy_z() {
    let ctx = NumContext::with_digits(40);
    let _g = ctx.install();
    // the table carries 20 significant digits, so at least 17 decimals
    let delta = BigReal::ten_pow_neg(16);
    let table = ZetaZerosTable::builtin();
    for (n, t) in table.values::<BigReal>().iter().enumerate() {
        let below = hardy_z(&(t.clone() - &delta), &ctx);
        let above = hardy_z(&(t.clone() + &delta), &ctx);
        assert!(
            (below.to_f64() < 0.0) != (above.to_f64() < 0.0),
            "zero {} at {t}: Z = {below}, {above}",
            n + 1
        );
    }
}

#[test]
fn zeros_file_round_trip() {
    let dir = std::env::temp_dir().join(format!("zetalab-zeros-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("zeros.txt");
    let table = ZetaZerosTable::builtin();
    let text: String = (1..=table.len()).map(|n| format!("{}\n", table.decimal(n).unwrap())).collect();
    std::fs::write(&path, format!("# written by a test\n{text}")).unwrap();
    let loaded = ZetaZerosTable::load(&path).unwrap();
    assert_eq!(loaded, table);
    assert!(ZetaZerosTable::load(&dir.join("missing.txt")).is_err());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn first_zero_by_k_coincidence() {
    let ctx = fast_ctx();
    let _g = ctx.install();
    let cfg = CriteriaConfig::default();
    let mut found = Vec::new();
    for (a, b) in [(9.0, 9.5), (14.2, 14.6)] {
        let mus = mu_grid(&a, &b, &0.1).unwrap();
        let sp = k_coincidence(1, &mus, &cfg, &ctx).unwrap();
        assert_eq!(sp.len(), 1, "special points in [{a}, {b}]: {sp:?}");
        let p = &sp[0];
        assert!((p.scores.eigenvalue - ZETA_1).abs() < 0.05, "{p:?}");
        assert!(p.scores.gap.abs() < cfg.gap_threshold);
        found.push(p.mu);
    }
    // consecutive special values of λ_1 progress by exp(2π/ζ_1)
    let ratio = found[1] / found[0];
    let want = (2.0 * std::f64::consts::PI / ZETA_1).exp();
    assert!((ratio / want - 1.0).abs() < 0.01, "ratio {ratio} vs {want}");
}

#[test]
fn eigvec_distance_extracts_first_zero() {
    let ctx = fast_ctx();
    let _g = ctx.install();
    let cfg = CriteriaConfig::default();
    let mus = mu_grid(&9.0, &9.5, &0.1).unwrap();
    let grid = sweep(&mus, 1, &cfg, &ctx).unwrap();
    let table = ZetaZerosTable::builtin();
    for c in [Criterion::EigvecDistance, Criterion::Quantization] {
        let reports = extract_from_grid(1, &grid, c, &table, &cfg, &ctx).unwrap();
        let r = &reports[0];
        let sel = r.selected().expect("a special point");
        assert!(r.error.unwrap() < 0.05, "{c}: {r:?}");
        assert!(sel.scores.passes(&cfg));
        assert_eq!(r.reference, Some(ZETA_1));
    }
}

#[test]
fn scores_are_consistent_at_a_point() {
    let ctx = fast_ctx();
    let _g = ctx.install();
    let cfg = CriteriaConfig::default();
    let p = evaluate_point(&9.5f64, 4, 5, &cfg, &ctx).unwrap();
    assert_eq!(p.scores.len(), 5);
    let l = 9.5f64.ln();
    for s in &p.scores {
        let r = 2.0 * (s.eigenvalue * l / 2.0).sin().abs();
        assert!((s.residual - r).abs() < 1e-12);
        assert!((0.0..=2f64.sqrt() + 1e-12).contains(&s.distance));
        assert!(*s.score(Criterion::KCoincidence) == s.gap);
    }
    assert!(p.scores.windows(2).all(|w| w[0].eigenvalue < w[1].eigenvalue));
}

fn discrepancy_at(mu: f64) -> zetalab::criteria::Discrepancy<f64> {
    let ctx = fast_ctx();
    let _g = ctx.install();
    discrepancy(&mu, &CriteriaConfig::default(), &ZetaZerosTable::builtin(), &ctx).unwrap()
}

#[test]
fn discrepancy_landmarks() {
    let d = discrepancy_at(5.5);
    assert!((d.a - 0.635176).abs() < 1e-2, "A(5.5) = {}", d.a);
    let d = discrepancy_at(6.5);
    assert!((d.r - 0.48858).abs() < 1e-2, "R(6.5) = {}", d.r);
    let d = discrepancy_at(10.5);
    assert!((d.nr - 0.00995148).abs() < 1e-3, "NR(10.5) = {}", d.nr);
}

#[test]
fn normalised_discrepancy_does_not_grow() {
    let nr: Vec<f64> = [5.5, 6.5, 8.5, 9.5, 10.5].iter().map(|&mu| discrepancy_at(mu).nr).collect();
    assert!(nr.windows(2).all(|w| w[1] <= w[0] + 1e-12), "{nr:?}");
}

#[test]
fn discrepancy_of_exact_zeros_is_zero() {
    let table = ZetaZerosTable::builtin();
    let zeros: Vec<f64> = table.values();
    let d = discrepancy_of(&8.0, 6, &zeros, &table).unwrap();
    assert_eq!(d.count, zeros.iter().filter(|&&z| z <= 16.0 * std::f64::consts::PI).count());
    assert_eq!(d.a, 0.0);
    assert_eq!(d.nr, 0.0);
    let short = ZetaZerosTable::parse("14.134725141734693790\n21.022039638771554993\n").unwrap();
    assert!(discrepancy_of(&8.0, 6, &zeros, &short).is_err());
    assert!(discrepancy_of(&1.5, 0, &zeros, &table).is_err());
}

#[test]
fn shifted_zeros_give_the_shift() {
    let table = ZetaZerosTable::builtin();
    let zeros: Vec<f64> = table.values();
    // 2π·4 ≈ 25.13 admits the first three zeros after a 0.1 shift
    let shifted: Vec<f64> = zeros.iter().map(|z| z + 0.1).collect();
    let d = discrepancy_of(&4.0, 4, &shifted, &table).unwrap();
    assert_eq!(d.count, 3);
    assert!((d.a - 0.1).abs() < 1e-12);
    assert!((d.r - 0.1).abs() < 1e-12);
    assert!((d.nr - 0.1 / (zeros[2] - zeros[0])).abs() < 1e-12);
}

#[test]
fn fixed_k_policy_is_honoured() {
    let ctx = fast_ctx();
    let cfg = CriteriaConfig {
        k: KPolicy::Fixed(2),
        ..CriteriaConfig::default()
    };
    let d = discrepancy(&7.0f64, &cfg, &ZetaZerosTable::builtin(), &ctx).unwrap();
    assert_eq!(d.k, 2);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 8, ..ProptestConfig::default() })]

    #[test]
    fn extra_condition_never_raises_eigenvalues(mu in 5.0f64..11.0) {
        let ctx = fast_ctx();
        let _g = ctx.install();
        let cfg = CriteriaConfig { n_trunc: 32, ..CriteriaConfig::default() };
        let k = cfg.k.k_at(&mu, &ctx).unwrap();
        let p = evaluate_point(&mu, k, 4, &cfg, &ctx).unwrap();
        for s in &p.scores {
            prop_assert!(s.gap >= -1e-9, "n = {}: gap {}", s.n, s.gap);
        }
    }
}
