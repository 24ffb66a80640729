//! Named property-verification suites run by `entropy-ray verify`.
//!
//! Each suite prints one line per check and a summary; `run` returns
//! `Ok(false)` when any check failed so the binary can exit with status 1.

use crate::spec::load_matrix;
use crate::CliError;
use entropy_ray_core::bounds::{
    extremal_ratio, f_g, feasible_a, feasible_b, feasible_c, q_of_g, ratio_bounds,
    sup_ratio_search, TestWeight,
};
use entropy_ray_core::capacity::{
    capacity_causal, capacity_no_side_info, kkt_certificate, CapacityMode,
};
use entropy_ray_core::channel::{
    all_strategies, d_dominance_check, d_functional, decompose, gamma, gamma_product_check,
    strategy_channel, Channel, StateChannelSystem,
};
use entropy_ray_core::sampling;
use entropy_ray_core::scalarfn::{inv_e, rho, threshold_t, threshold_ta};
use entropy_ray_core::simplex::{kl_ratio, Dist, RayTriple};
use rand::Rng;
use std::path::Path;

/// Pass/fail accumulator shared by all suites.
struct Report {
    passed: usize,
    failed: usize,
}

impl Report {
    fn new() -> Self {
        Self { passed: 0, failed: 0 }
    }

    /// Record one check; `detail` is only evaluated (and printed) on failure.
    fn check(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
            println!("  [pass] {name}");
        } else {
            self.failed += 1;
            println!("  [FAIL] {name}: {}", detail());
        }
    }
}

pub fn run(suite: &str, seed: u64, n: usize, side_file: Option<&Path>) -> Result<bool, CliError> {
    if n == 0 {
        return Err(CliError::domain("sample count n must be positive"));
    }
    let mut report = Report::new();
    let known = ["theorem1", "theorem2", "appendixA", "channels", "threshold"];
    let selected: Vec<&str> = if suite == "all" {
        known.to_vec()
    } else if known.contains(&suite) {
        vec![suite]
    } else {
        return Err(CliError::domain(format!(
            "unknown suite '{suite}'; expected one of theorem1, theorem2, appendixA, \
             channels, threshold, all"
        )));
    };
    for name in selected {
        println!("suite {name} (seed {seed}, n {n})");
        match name {
            "theorem1" => suite_theorem1(&mut report, seed, n)?,
            "theorem2" => suite_theorem2(&mut report, seed, n)?,
            "appendixA" => suite_appendix_a(&mut report, seed, n)?,
            "channels" => suite_channels(&mut report, seed, n)?,
            "threshold" => suite_threshold(&mut report, seed, n, side_file)?,
            _ => unreachable!(),
        }
    }
    println!("{} passed, {} failed", report.passed, report.failed);
    Ok(report.failed == 0)
}

/// Random parameter triple with 0 <= c < b <= 1, a in [0,1] \ {b,c},
/// occasionally pinned to the boundary values 0, 1.
fn random_abc(rng: &mut impl Rng) -> (f64, f64, f64) {
    loop {
        let b = if rng.gen_bool(0.1) { 1.0 } else { rng.gen_range(0.05..1.0) };
        let c = if rng.gen_bool(0.1) { 0.0 } else { rng.gen_range(0.0..b) };
        let a = match rng.gen_range(0..10) {
            0 => 0.0,
            1 => 1.0,
            _ => rng.gen_range(0.0..=1.0),
        };
        if c < b && a != b && a != c {
            return (a, b, c);
        }
    }
}

fn suite_theorem1(report: &mut Report, seed: u64, n: usize) -> Result<(), CliError> {
    // Every realizable ratio lies strictly inside the sandwich.
    let mut rng = sampling::rng(seed, 1);
    let mut worst_margin = f64::INFINITY;
    let mut bad: Option<String> = None;
    for _ in 0..n {
        let (a, b, c) = random_abc(&mut rng);
        let dim = rng.gen_range(2..=5);
        let alpha = sampling::random_dist(&mut rng, dim);
        let beta = sampling::random_dist(&mut rng, dim);
        let Ok(rt) = RayTriple::new(alpha.clone(), beta.clone(), a, b, c) else {
            continue;
        };
        let Ok(r) = kl_ratio(&rt) else { continue };
        let (lo, hi) = ratio_bounds(a, b, c).map_err(CliError::from)?;
        let margin = (r - lo).min(hi - r);
        if margin < worst_margin {
            worst_margin = margin;
        }
        if !(lo < r && r < hi) && bad.is_none() {
            bad = Some(format!(
                "a={a} b={b} c={c} alpha={:?} beta={:?}: r={r} outside ({lo}, {hi})",
                alpha.probs(),
                beta.probs()
            ));
        }
    }
    report.check(
        "sandwich holds strictly on random ratios",
        bad.is_none(),
        || bad.clone().unwrap(),
    );
    report.check(
        "sandwich margin is strictly positive",
        worst_margin > 0.0,
        || format!("worst margin {worst_margin}"),
    );

    // The three interval characterizations agree with the sandwich.
    let mut rng = sampling::rng(seed, 2);
    let margin = 1e-9;
    let mut checked = 0usize;
    let mut mismatch: Option<String> = None;
    for _ in 0..n {
        let (a, b, c) = random_abc(&mut rng);
        let r = rng.gen_range(0.02..8.0);
        let Ok((lo, hi)) = ratio_bounds(a, b, c) else { continue };
        let inside = lo + margin < r && r < hi - margin;
        let outside = r < lo - margin || r > hi + margin;
        if !inside && !outside {
            continue;
        }
        checked += 1;
        let in_a = feasible_a(r, b, c).map_err(CliError::from)?.contains(a);
        let in_b = feasible_b(r, a, c).map_err(CliError::from)?.contains(b);
        let in_c = feasible_c(r, a, b).map_err(CliError::from)?.contains(c);
        if (in_a != inside || in_b != inside || in_c != inside) && mismatch.is_none() {
            mismatch = Some(format!(
                "r={r} a={a} b={b} c={c}: sandwich says {inside}, \
                 feasible_a/b/c say {in_a}/{in_b}/{in_c}"
            ));
        }
    }
    report.check(
        &format!("interval characterizations match sandwich ({checked} classified points)"),
        mismatch.is_none() && checked > n / 2,
        || {
            mismatch
                .clone()
                .unwrap_or_else(|| format!("only {checked} of {n} points classified"))
        },
    );
    Ok(())
}

fn suite_theorem2(report: &mut Report, seed: u64, n: usize) -> Result<(), CliError> {
    // The extremal family converges to the upper bound from below.
    let cases = [(0.3, 0.9, 0.1), (0.5, 1.0, 0.0), (0.7, 0.8, 0.05), (0.2, 0.95, 0.0)];
    let mut bad: Option<String> = None;
    for &(a, b, c) in &cases {
        let limit = rho(a, b, c).map_err(CliError::from)?;
        let mut prev_err = f64::INFINITY;
        for &delta in &[1e-2, 1e-3, 1e-4, 1e-5] {
            let r = extremal_ratio(a, b, c, delta, delta, 2).map_err(CliError::from)?;
            let err = limit - r;
            if !(err > 0.0 && err < prev_err) && bad.is_none() {
                bad = Some(format!(
                    "a={a} b={b} c={c} delta={delta}: ratio {r} vs limit {limit} \
                     (prev error {prev_err}, error {err})"
                ));
            }
            prev_err = err;
        }
        if prev_err >= 1e-2 && bad.is_none() {
            bad = Some(format!("a={a} b={b} c={c}: final error {prev_err} too large"));
        }
    }
    report.check(
        "extremal family increases strictly to the supremum",
        bad.is_none(),
        || bad.clone().unwrap(),
    );

    // Random search approaches but never attains the supremum.
    let mut bad: Option<String> = None;
    for (k, &(a, b, c)) in cases.iter().enumerate() {
        let limit = rho(a, b, c).map_err(CliError::from)?;
        let best = sup_ratio_search(a, b, c, n, seed.wrapping_add(k as u64))
            .map_err(CliError::from)?;
        if !(best < limit && best > 0.9 * limit) && bad.is_none() {
            bad = Some(format!(
                "a={a} b={b} c={c}: search best {best} vs supremum {limit}"
            ));
        }
    }
    report.check(
        "random search stays below and near the supremum",
        bad.is_none(),
        || bad.clone().unwrap(),
    );
    Ok(())
}

fn suite_appendix_a(report: &mut Report, seed: u64, n: usize) -> Result<(), CliError> {
    let cases = [(0.3, 0.9, 0.1), (0.5, 0.95, 0.0), (0.7, 0.8, 0.05)];
    let one = TestWeight::constant(1.0);

    // q(1) = rho on the grid.
    let mut bad: Option<String> = None;
    for &(a, b, c) in &cases {
        let q = q_of_g(&one, a, b, c).map_err(CliError::from)?;
        let limit = rho(a, b, c).map_err(CliError::from)?;
        if (q - limit).abs() >= 1e-8 && bad.is_none() {
            bad = Some(format!("a={a} b={b} c={c}: q(1)={q} vs rho={limit}"));
        }
    }
    report.check("constant weight recovers the upper bound", bad.is_none(), || {
        bad.clone().unwrap()
    });

    // Strictly decreasing weights pull the root strictly below q(1), and the
    // root is invariant under scaling.
    let mut rng = sampling::rng(seed, 3);
    let trials = (n / 100).clamp(5, 50);
    let mut bad: Option<String> = None;
    for _ in 0..trials {
        let (a, b, c) = cases[rng.gen_range(0..cases.len())];
        let k = rng.gen_range(0.5..5.0);
        let floor = rng.gen_range(0.01..0.5);
        let g = TestWeight::new(
            format!("exp(-{k}t)+{floor}"),
            move |t| (-k * t).exp() + floor,
        );
        let q1 = q_of_g(&one, a, b, c).map_err(CliError::from)?;
        let q = q_of_g(&g, a, b, c).map_err(CliError::from)?;
        if q >= q1 && bad.is_none() {
            bad = Some(format!(
                "a={a} b={b} c={c} g={}: q(g)={q} not below q(1)={q1}",
                g.descriptor()
            ));
        }
        let scale = rng.gen_range(0.1..10.0);
        let g_scaled = TestWeight::new(
            format!("{scale}(exp(-{k}t)+{floor})"),
            move |t| scale * ((-k * t).exp() + floor),
        );
        let qs = q_of_g(&g_scaled, a, b, c).map_err(CliError::from)?;
        if (qs - q).abs() >= 1e-9 && bad.is_none() {
            bad = Some(format!(
                "a={a} b={b} c={c}: scaling moved the root by {}",
                (qs - q).abs()
            ));
        }
    }
    report.check(
        "strictly decreasing weights tighten the root, scale-invariantly",
        bad.is_none(),
        || bad.clone().unwrap(),
    );

    // F_g is strictly increasing in r with F_g(0) < 0.
    let mut bad: Option<String> = None;
    for &(a, b, c) in &cases {
        let g = TestWeight::new("exp(-t)+0.1", |t| (-t).exp() + 0.1);
        let mut prev = f_g(0.0, a, b, c, &g).map_err(CliError::from)?;
        if prev >= 0.0 && bad.is_none() {
            bad = Some(format!("a={a} b={b} c={c}: F_g(0) = {prev} not negative"));
        }
        for k in 1..=20 {
            let r = k as f64 * 0.5;
            let v = f_g(r, a, b, c, &g).map_err(CliError::from)?;
            if v <= prev && bad.is_none() {
                bad = Some(format!("a={a} b={b} c={c}: F_g not increasing at r={r}"));
            }
            prev = v;
        }
    }
    report.check(
        "functional is negative at zero and strictly increasing",
        bad.is_none(),
        || bad.clone().unwrap(),
    );
    Ok(())
}

fn suite_channels(report: &mut Report, seed: u64, n: usize) -> Result<(), CliError> {
    let mut rng = sampling::rng(seed, 4);
    let trials = (n / 20).clamp(20, 500);

    // Useless-channel decomposition reconstructs the channel.
    let mut bad: Option<String> = None;
    for _ in 0..trials {
        let ni = rng.gen_range(2..=4);
        let no = rng.gen_range(2..=4);
        let k = sampling::random_channel(&mut rng, ni, no);
        let d = decompose(&k).map_err(CliError::from)?;
        for i in 0..ni {
            for j in 0..no {
                // kappa(j|i) = gamma*lambda_j + (1-gamma)*kappa'(j|i).
                let v = d.gamma * d.lambda.get(j) + (1.0 - d.gamma) * d.kappa_prime.get(i, j);
                if (v - k.get(i, j)).abs() >= 1e-10 && bad.is_none() {
                    bad = Some(format!(
                        "channel {:?}: entry ({i},{j}) reconstructs to {v}, expected {}",
                        k.rows(),
                        k.get(i, j)
                    ));
                }
            }
        }
        if !(0.0..=1.0).contains(&d.gamma) && bad.is_none() {
            bad = Some(format!("gamma {} out of range", d.gamma));
        }
    }
    report.check("useless-channel decomposition reconstructs", bad.is_none(), || {
        bad.clone().unwrap()
    });

    // Product bound for deterministic post-channels.
    let mut bad: Option<String> = None;
    for _ in 0..trials {
        let ni = rng.gen_range(2..=4);
        let no = rng.gen_range(2..=4);
        let a = sampling::random_channel(&mut rng, ni, no);
        let nb = rng.gen_range(1..=no);
        let map: Vec<usize> = (0..no).map(|_| rng.gen_range(0..nb)).collect();
        let b = Channel::deterministic(&map, nb).map_err(CliError::from)?;
        let (lhs, rhs) = gamma_product_check(&a, &b).map_err(CliError::from)?;
        if lhs < rhs - 1e-12 && bad.is_none() {
            bad = Some(format!(
                "A={:?} map={map:?}: gamma(AB)={lhs} below bound {rhs}",
                a.rows()
            ));
        }
    }
    report.check("gamma product bound holds", bad.is_none(), || bad.clone().unwrap());

    // Pushing a side channel through any strategy cannot reduce gamma.
    let mut bad: Option<String> = None;
    for _ in 0..trials {
        let side = sampling::random_channel(&mut rng, 2, 3);
        let g = gamma(&side);
        for u in all_strategies(2, 3) {
            let induced = strategy_channel(&u, &side).map_err(CliError::from)?;
            let gi = gamma(&induced);
            if gi < g - 1e-12 && bad.is_none() {
                bad = Some(format!(
                    "side={:?} u={:?}: gamma dropped from {g} to {gi}",
                    side.rows(),
                    u.map()
                ));
            }
        }
    }
    report.check(
        "strategies never decrease side-channel gamma",
        bad.is_none(),
        || bad.clone().unwrap(),
    );

    // D vanishes exactly when every row of kappa equals p_x, and is convex
    // along random segments.
    let mut bad: Option<String> = None;
    for _ in 0..trials {
        let n_out = rng.gen_range(2..=4);
        let sys = sampling::random_binary_system(&mut rng, 2, n_out, 3);
        let p_x = sampling::random_positive_dist(&mut rng, 2, 1e-3);
        let match_rows = Channel::new(vec![p_x.probs().to_vec(); 2]).map_err(CliError::from)?;
        let zero = d_functional(&match_rows, &sys, &p_x).map_err(CliError::from)?;
        if zero.abs() >= 1e-12 && bad.is_none() {
            bad = Some(format!("D(p_x-matching kappa) = {zero}, expected 0"));
        }
        let k1 = sampling::random_channel(&mut rng, 2, 2);
        let k2 = sampling::random_channel(&mut rng, 2, 2);
        let mid = Channel::new(
            (0..2)
                .map(|s| (0..2).map(|x| 0.5 * (k1.get(s, x) + k2.get(s, x))).collect())
                .collect(),
        )
        .map_err(CliError::from)?;
        let lhs = d_functional(&mid, &sys, &p_x).map_err(CliError::from)?;
        let rhs = 0.5 * d_functional(&k1, &sys, &p_x).map_err(CliError::from)?
            + 0.5 * d_functional(&k2, &sys, &p_x).map_err(CliError::from)?;
        if lhs.is_finite() && rhs.is_finite() && lhs > rhs + 1e-10 && bad.is_none() {
            bad = Some(format!("convexity violated: D(mid)={lhs} > average {rhs}"));
        }
    }
    report.check(
        "state-information functional vanishes at p_x and is convex",
        bad.is_none(),
        || bad.clone().unwrap(),
    );

    // Dominance above the threshold on a symmetric two-state system with the
    // uniform (equalizing) input.
    let sym = StateChannelSystem::new(
        vec![
            Channel::new(vec![vec![0.9, 0.1], vec![0.1, 0.9]]).map_err(CliError::from)?,
            Channel::new(vec![vec![0.8, 0.2], vec![0.2, 0.8]]).map_err(CliError::from)?,
        ],
        Dist::uniform(2).map_err(CliError::from)?,
        Channel::identity(2).map_err(CliError::from)?,
    )
    .map_err(CliError::from)?;
    let p_x = Dist::uniform(2).map_err(CliError::from)?;
    let mut bad: Option<String> = None;
    for _ in 0..trials {
        let kappa = sampling::random_channel(&mut rng, 2, 2);
        let ok = d_dominance_check(&sym, &p_x, &kappa).map_err(CliError::from)?;
        if !ok && bad.is_none() {
            bad = Some(format!(
                "kappa={:?} (gamma {}): noisy state channel beat the capacity",
                kappa.rows(),
                gamma(&kappa)
            ));
        }
    }
    report.check(
        "above-threshold state channels never beat capacity",
        bad.is_none(),
        || bad.clone().unwrap(),
    );
    Ok(())
}

fn suite_threshold(
    report: &mut Report,
    seed: u64,
    n: usize,
    side_file: Option<&Path>,
) -> Result<(), CliError> {
    let t = threshold_t();

    // T(a) is strictly increasing on (e^{-1}, 1) and consistent with T.
    let mut bad: Option<String> = None;
    let mut prev = 0.0;
    let grid = 1000;
    for k in 1..grid {
        let a = inv_e() + (1.0 - inv_e()) * k as f64 / grid as f64;
        let v = threshold_ta(a).map_err(CliError::from)?;
        if v <= prev && bad.is_none() {
            bad = Some(format!("T(a) not increasing at a={a}: {v} <= {prev}"));
        }
        prev = v;
    }
    report.check("per-mass threshold strictly increasing", bad.is_none(), || {
        bad.clone().unwrap()
    });
    let at_sym = threshold_ta(1.0 - inv_e()).map_err(CliError::from)?;
    report.check(
        "per-mass threshold matches universal threshold at 1-1/e",
        (at_sym - t).abs() < 1e-10,
        || format!("T(1-1/e) = {at_sym} vs T = {t}"),
    );

    // Plateau: random binary systems whose side channel has gamma >= T have
    // no strategy gain; causal capacity never falls below no-side capacity.
    let mut rng = sampling::rng(seed, 5);
    let systems = (n / 200).clamp(10, 100);
    let mut bad_plateau: Option<String> = None;
    let mut bad_order: Option<String> = None;
    let mut bad_kkt: Option<String> = None;
    for _ in 0..systems {
        let noise = rng.gen_range(t + 0.01..1.0);
        let nside = rng.gen_range(2..=3);
        let base = sampling::random_channel(&mut rng, 2, nside);
        let common = sampling::random_dist(&mut rng, nside);
        // Mixing every row toward a common row forces gamma >= noise.
        let noisy_side = Channel::new(
            base.rows()
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(common.probs())
                        .map(|(&p, &m)| (1.0 - noise) * p + noise * m)
                        .collect()
                })
                .collect(),
        )
        .map_err(CliError::from)?;
        let g = gamma(&noisy_side);
        debug_assert!(g >= noise - 1e-12);
        let sys = StateChannelSystem::new(
            vec![
                sampling::random_channel(&mut rng, 2, 3),
                sampling::random_channel(&mut rng, 2, 3),
            ],
            sampling::random_positive_dist(&mut rng, 2, 0.05),
            noisy_side,
        )
        .map_err(CliError::from)?;
        let c = capacity_causal(&sys).map_err(CliError::from)?;
        let c_lower = capacity_no_side_info(&sys).map_err(CliError::from)?;
        if c.value < c_lower.value - 1e-9 && bad_order.is_none() {
            bad_order = Some(format!(
                "gamma={g}: causal {} below no-side {}",
                c.value, c_lower.value
            ));
        }
        if (c.value - c_lower.value).abs() > 1e-8 && bad_plateau.is_none() {
            bad_plateau = Some(format!(
                "gamma={g}: causal {} vs no-side {} (gap {})",
                c.value,
                c_lower.value,
                c.value - c_lower.value
            ));
        }
        let kkt = kkt_certificate(&sys, &c, CapacityMode::Causal).map_err(CliError::from)?;
        if kkt > 1e-8 && bad_kkt.is_none() {
            bad_kkt = Some(format!("KKT residual {kkt} at gamma={g}"));
        }
    }
    report.check(
        &format!("causal capacity dominates no-side capacity ({systems} systems)"),
        bad_order.is_none(),
        || bad_order.clone().unwrap(),
    );
    report.check(
        &format!("no strategy gain above the threshold ({systems} systems)"),
        bad_plateau.is_none(),
        || bad_plateau.clone().unwrap(),
    );
    report.check("solver certificates stay tight", bad_kkt.is_none(), || {
        bad_kkt.clone().unwrap()
    });

    if let Some(path) = side_file {
        let side = load_matrix(path)?;
        if side.n_inputs() != 2 {
            return Err(CliError::domain(format!(
                "side channel in {} must have 2 rows (one per state)",
                path.display()
            )));
        }
        let g = gamma(&side);
        let spec = crate::spec::SystemSpecFile::example(0.01)?;
        let sys = spec.to_system(Some(side))?;
        let c = capacity_causal(&sys).map_err(CliError::from)?;
        let c_lower = capacity_no_side_info(&sys).map_err(CliError::from)?;
        let gap = c.value - c_lower.value;
        if g >= t {
            report.check(
                &format!("supplied side channel (gamma {g:.6} >= T) shows no gain"),
                gap.abs() <= 1e-8,
                || format!("gap {gap}"),
            );
        } else {
            println!(
                "  [info] supplied side channel has gamma {g:.6} < T; gap on the \
                 reference system is {gap:e}"
            );
        }
    }
    Ok(())
}
