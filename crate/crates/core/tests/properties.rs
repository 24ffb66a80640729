//! Cross-module property tests exercising the public API end to end.

use entropy_ray_core::bounds::{
    extremal_ratio, feasible_a, feasible_b, feasible_c, q_of_g, ratio_bounds, TestWeight,
};
use entropy_ray_core::capacity::{
    capacity_causal, capacity_no_side_info, kkt_certificate, CapacityMode,
};
use entropy_ray_core::channel::{decompose, gamma, Channel, StateChannelSystem};
use entropy_ray_core::sampling;
use entropy_ray_core::scalarfn::{rho, rho_inv, threshold_t, xi, xi_inv, BranchId};
use entropy_ray_core::simplex::{kl, kl_ratio, ray_point, Dist, RayTriple};
use rand::Rng;

#[test]
fn sandwich_bounds_random_collinear_ratios() {
    let mut rng = sampling::rng(11, 0);
    for _ in 0..2000 {
        let n = rng.gen_range(2..=5);
        let alpha = sampling::random_dist(&mut rng, n);
        let beta = sampling::random_dist(&mut rng, n);
        let b = rng.gen_range(0.1..1.0);
        let c = rng.gen_range(0.0..b);
        let a = rng.gen_range(0.0..1.0);
        if a == b || a == c {
            continue;
        }
        let Ok(rt) = RayTriple::new(alpha, beta, a, b, c) else { continue };
        let Ok(r) = kl_ratio(&rt) else { continue };
        let (lo, hi) = ratio_bounds(a, b, c).unwrap();
        assert!(lo < r && r < hi, "r={r} outside ({lo},{hi}) at a={a} b={b} c={c}");
    }
}

#[test]
fn ratio_definition_consistency() {
    // kl_ratio agrees with computing the two divergences directly.
    let alpha = Dist::new(vec![0.7, 0.2, 0.1]).unwrap();
    let beta = Dist::new(vec![0.2, 0.3, 0.5]).unwrap();
    let (a, b, c) = (0.3, 0.9, 0.1);
    let u = ray_point(&alpha, &beta, a).unwrap();
    let v = ray_point(&alpha, &beta, b).unwrap();
    let w = ray_point(&alpha, &beta, c).unwrap();
    let direct = kl(&v, &u).unwrap() / kl(&w, &u).unwrap();
    let rt = RayTriple::new(alpha, beta, a, b, c).unwrap();
    assert!((kl_ratio(&rt).unwrap() - direct).abs() < 1e-13);
}

#[test]
fn branch_inverses_round_trip_under_stress() {
    let mut rng = sampling::rng(12, 0);
    for _ in 0..500 {
        let s = rng.gen_range(0.01..0.99);
        let t = rng.gen_range(0.0..=1.0);
        let y = xi(s, t).unwrap();
        let branch = if t <= s { BranchId::XiDown } else { BranchId::XiUp };
        let back = xi_inv(s, branch, y).unwrap();
        assert!((back - t).abs() < 1e-9, "s={s} t={t} back={back}");
    }
    for _ in 0..500 {
        let b = rng.gen_range(0.2..1.0);
        let c = rng.gen_range(0.0..b - 0.1);
        let a = rng.gen_range(0.0..1.0);
        if a == b || a == c || a >= 0.999 {
            continue;
        }
        let r = rho(a, b, c).unwrap();
        if !r.is_finite() || r == 0.0 {
            continue;
        }
        let branch = if a < c {
            BranchId::RhoUp1
        } else if a < b {
            BranchId::RhoDown
        } else {
            BranchId::RhoUp2
        };
        if branch == BranchId::RhoUp2 && r >= (1.0 - b) / (1.0 - c) {
            continue;
        }
        let back = rho_inv(b, c, branch, r).unwrap();
        assert!((back - a).abs() < 1e-8, "a={a} b={b} c={c} back={back}");
    }
}

#[test]
fn interval_characterizations_agree_randomized() {
    let mut rng = sampling::rng(13, 0);
    let margin = 1e-9;
    for _ in 0..2000 {
        let b = rng.gen_range(0.1..=1.0);
        let c = rng.gen_range(0.0..b);
        let a = rng.gen_range(0.0..=1.0);
        if a == b || a == c {
            continue;
        }
        let r = rng.gen_range(0.02..10.0);
        let (lo, hi) = ratio_bounds(a, b, c).unwrap();
        let inside = lo + margin < r && r < hi - margin;
        let outside = r < lo - margin || r > hi + margin;
        if !inside && !outside {
            continue;
        }
        assert_eq!(feasible_a(r, b, c).unwrap().contains(a), inside, "a at {a} {b} {c} r={r}");
        assert_eq!(feasible_b(r, a, c).unwrap().contains(b), inside, "b at {a} {b} {c} r={r}");
        assert_eq!(feasible_c(r, a, b).unwrap().contains(c), inside, "c at {a} {b} {c} r={r}");
    }
}

#[test]
fn extremal_family_stays_inside_feasible_sets() {
    // The extremal ratio at small delta sits inside every characterization.
    let (a, b, c) = (0.4, 0.9, 0.1);
    let r = extremal_ratio(a, b, c, 1e-4, 1e-4, 3).unwrap();
    assert!(feasible_a(r, b, c).unwrap().contains(a));
    assert!(feasible_b(r, a, c).unwrap().contains(b));
    assert!(feasible_c(r, a, b).unwrap().contains(c));
}

#[test]
fn weighted_root_tightens_below_the_upper_bound() {
    // Strictly decreasing weights pull the root strictly below the constant-
    // weight root (which equals the upper bound); steeper weights pull
    // harder.
    let (a, b, c) = (0.3, 0.9, 0.1);
    let (_, hi) = ratio_bounds(a, b, c).unwrap();
    let mut prev = hi;
    for k in 0..5 {
        let rate = 1.0 + k as f64;
        let g = TestWeight::new(format!("exp(-{rate}t)"), move |t| (-rate * t).exp());
        let q = q_of_g(&g, a, b, c).unwrap();
        assert!(q > 0.0 && q < prev, "q={q} not below {prev} at rate {rate}");
        prev = q;
    }
}

#[test]
fn decomposition_round_trips_on_random_channels() {
    let mut rng = sampling::rng(14, 0);
    for _ in 0..300 {
        let ni = rng.gen_range(2..=5);
        let no = rng.gen_range(2..=5);
        let k = sampling::random_channel(&mut rng, ni, no);
        let d = decompose(&k).unwrap();
        assert!((0.0..=1.0).contains(&d.gamma));
        for i in 0..ni {
            for j in 0..no {
                let v = d.gamma * d.lambda.get(j) + (1.0 - d.gamma) * d.kappa_prime.get(i, j);
                assert!((v - k.get(i, j)).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn capacity_orders_and_certifies_on_random_systems() {
    let mut rng = sampling::rng(15, 0);
    for _ in 0..40 {
        let n_out = rng.gen_range(2..=3);
        let n_side = rng.gen_range(2..=3);
        let sys = sampling::random_binary_system(&mut rng, 2, n_out, n_side);
        let lower = capacity_no_side_info(&sys).unwrap();
        let upper = capacity_causal(&sys).unwrap();
        assert!(upper.value >= lower.value - 1e-9, "{} < {}", upper.value, lower.value);
        assert!(kkt_certificate(&sys, &lower, CapacityMode::NoSide).unwrap() <= 1e-8);
        assert!(kkt_certificate(&sys, &upper, CapacityMode::Causal).unwrap() <= 1e-8);
    }
}

#[test]
fn erasure_family_capacity_is_monotone_in_noise() {
    let delta = 0.05;
    let sys = |eps: f64| {
        StateChannelSystem::new(
            vec![
                Channel::new(vec![vec![1.0, 0.0], vec![1.0 - delta, delta]]).unwrap(),
                Channel::new(vec![vec![1.0 - delta, delta], vec![1.0, 0.0]]).unwrap(),
            ],
            Dist::new(vec![1.0 - delta, delta]).unwrap(),
            Channel::new(vec![
                vec![1.0 - eps, 0.0, eps],
                vec![0.0, 1.0 - eps, eps],
            ])
            .unwrap(),
        )
        .unwrap()
    };
    let mut prev = f64::INFINITY;
    for k in 0..=5 {
        let eps = k as f64 * 0.2;
        let s = sys(eps);
        assert!((gamma(s.side()) - eps).abs() < 1e-12);
        let c = capacity_causal(&s).unwrap();
        assert!(c.value <= prev + 1e-9, "capacity increased at eps={eps}");
        prev = c.value;
    }
}

#[test]
fn threshold_links_scalar_and_capacity_worlds() {
    // Above the universal threshold the erasure family shows no strategy
    // gain on the reference system; well below it, a strict gain appears at
    // small delta.
    let t = threshold_t();
    let delta = 0.001;
    let build = |eps: f64| {
        StateChannelSystem::new(
            vec![
                Channel::new(vec![vec![1.0, 0.0], vec![1.0 - delta, delta]]).unwrap(),
                Channel::new(vec![vec![1.0 - delta, delta], vec![1.0, 0.0]]).unwrap(),
            ],
            Dist::new(vec![1.0 - delta, delta]).unwrap(),
            Channel::new(vec![
                vec![1.0 - eps, 0.0, eps],
                vec![0.0, 1.0 - eps, eps],
            ])
            .unwrap(),
        )
        .unwrap()
    };
    let above = build(t + 0.05);
    let gap_above = capacity_causal(&above).unwrap().value
        - capacity_no_side_info(&above).unwrap().value;
    assert!(gap_above.abs() <= 1e-8, "gap above threshold: {gap_above}");
    // The gain below the threshold is tiny at small delta (~4e-8 nats here)
    // but well above the 1e-11 certified gap of each solve.
    let below = build(0.05);
    let gap_below = capacity_causal(&below).unwrap().value
        - capacity_no_side_info(&below).unwrap().value;
    assert!(gap_below > 1e-9, "gap below threshold: {gap_below}");
}
