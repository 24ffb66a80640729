//! Certified capacity solvers for state-dependent channels: the
//! no-side-information capacity `C̲ = max_{p_X} I(X;Y|S)` and the
//! Shannon-strategy capacity `C = max_{p_U} I(U;Y|S)` with the noisy state
//! observation causally available at the encoder.
//!
//! The solver is an accelerated Blahut–Arimoto iteration with a certified
//! stopping rule: for any feasible input distribution `p`, the divergences
//! `D_k = D(W_k ‖ pW)` sandwich the capacity as
//! `Σ_k p_k D_k ≤ C ≤ max_k D_k`, so the iterate's gap is a rigorous bound
//! on its suboptimality. The multiplicative update is sharpened by a damped
//! Newton equalization on small candidate supports (the supports are chosen
//! by descending `D_k`), which brings the certified gap to the target
//! tolerance in a handful of iterations even near capacity plateaus where
//! plain Blahut–Arimoto crawls.

use crate::channel::{all_strategies, ShannonStrategy, StateChannelSystem};
use crate::simplex::Dist;
use crate::{Error, Result};
use nalgebra::{DMatrix, DVector};

/// Certified capacity-gap stopping tolerance (nats).
const GAP_TOL: f64 = 1e-11;

/// Iteration cap for a single solve.
const MAX_ITER: u64 = 1_000_000;

/// Mass threshold above which an input letter counts as supported.
pub const SUPPORT_TOL: f64 = 1e-9;

/// Result of a capacity computation.
#[derive(Debug, Clone)]
pub struct CapacityResult {
    /// Optimal value in nats.
    pub value: f64,
    /// Optimizing input distribution (over `X`, or over strategies `U`).
    pub input_dist: Dist,
    /// KKT equalization residual at the optimizer.
    pub kkt_residual: f64,
    /// Blahut–Arimoto iterations performed.
    pub iterations: u64,
}

/// A discrete memoryless channel matrix prepared for the solver.
struct Dmc {
    /// Rows of the channel, with all-zero columns removed.
    w: Vec<Vec<f64>>,
    /// Precomputed `ln W_kj` where `W_kj > 0`.
    lw: Vec<Vec<f64>>,
    k: usize,
    n: usize,
}

impl Dmc {
    fn new(rows: &[Vec<f64>]) -> Self {
        let k = rows.len();
        let width = rows[0].len();
        let keep: Vec<usize> = (0..width)
            .filter(|&j| rows.iter().any(|r| r[j] > 0.0))
            .collect();
        let w: Vec<Vec<f64>> = rows
            .iter()
            .map(|r| keep.iter().map(|&j| r[j]).collect())
            .collect();
        let lw = w
            .iter()
            .map(|r| r.iter().map(|&p| if p > 0.0 { p.ln() } else { 0.0 }).collect())
            .collect();
        let n = keep.len();
        Dmc { w, lw, k, n }
    }

    /// Output law `q = p·W`.
    fn output_law(&self, p: &[f64]) -> Vec<f64> {
        let mut q = vec![0.0; self.n];
        for (pk, row) in p.iter().zip(&self.w) {
            if *pk > 0.0 {
                for (qj, wj) in q.iter_mut().zip(row) {
                    *qj += pk * wj;
                }
            }
        }
        q
    }

    /// Per-letter divergences `D_k = D(W_k ‖ q)`; `+∞` where the letter's
    /// support escapes `q`.
    fn divergences(&self, q: &[f64]) -> Vec<f64> {
        let lq: Vec<f64> = q.iter().map(|&v| if v > 0.0 { v.ln() } else { 0.0 }).collect();
        (0..self.k)
            .map(|i| {
                let mut d = 0.0;
                for j in 0..self.n {
                    let w = self.w[i][j];
                    if w > 0.0 {
                        if q[j] == 0.0 {
                            return f64::INFINITY;
                        }
                        d += w * (self.lw[i][j] - lq[j]);
                    }
                }
                d
            })
            .collect()
    }

    /// `(D, lower, upper)` at `p`: the certified capacity sandwich.
    fn sandwich(&self, p: &[f64]) -> (Vec<f64>, f64, f64) {
        let q = self.output_law(p);
        let d = self.divergences(&q);
        let lower = p
            .iter()
            .zip(&d)
            .filter(|(pk, _)| **pk > 0.0)
            .map(|(pk, dk)| pk * dk)
            .sum();
        let upper = d.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        (d, lower, upper)
    }

    /// Damped Newton equalization of `D_k` on a fixed support, with
    /// active-set dropping of letters driven negative. Returns a full-length
    /// distribution, or `None` when the candidate fails (singular system,
    /// divergent iteration, or exhausted support).
    fn newton_equalize(&self, support: &[usize]) -> Option<Vec<f64>> {
        let mut supp = support.to_vec();
        for _ in 0..=support.len() {
            let m = supp.len();
            if m == 0 {
                return None;
            }
            let mut ps = vec![1.0 / m as f64; m];
            let mut drop: Option<usize> = None;
            if m > 1 {
                let mut converged = false;
                'newton: for _ in 0..80 {
                    let mut qs = vec![0.0; self.n];
                    for (&pk, &i) in ps.iter().zip(&supp) {
                        for (qj, wj) in qs.iter_mut().zip(&self.w[i]) {
                            *qj += pk * wj;
                        }
                    }
                    let lqs: Vec<f64> =
                        qs.iter().map(|&v| if v > 0.0 { v.ln() } else { 0.0 }).collect();
                    let mut ds = vec![0.0; m];
                    for (row, &i) in ds.iter_mut().zip(&supp) {
                        let mut acc = 0.0;
                        for j in 0..self.n {
                            let w = self.w[i][j];
                            if w > 0.0 {
                                if qs[j] == 0.0 {
                                    return None;
                                }
                                acc += w * (self.lw[i][j] - lqs[j]);
                            }
                        }
                        *row = acc;
                    }
                    let resid: Vec<f64> = (0..m - 1).map(|i| ds[i] - ds[m - 1]).collect();
                    if resid.iter().all(|r| r.abs() < 1e-13) {
                        converged = true;
                        break 'newton;
                    }
                    // G_ij = -Σ_j W_i· W_j· / q; reduced Jacobian of the
                    // equalization system under Σ p = 1.
                    let mut g = DMatrix::zeros(m, m);
                    for a in 0..m {
                        for b in a..m {
                            let mut acc = 0.0;
                            for j in 0..self.n {
                                if qs[j] > 0.0 {
                                    acc -= self.w[supp[a]][j] * self.w[supp[b]][j] / qs[j];
                                }
                            }
                            g[(a, b)] = acc;
                            g[(b, a)] = acc;
                        }
                    }
                    let mut jac = DMatrix::zeros(m - 1, m - 1);
                    for a in 0..m - 1 {
                        for b in 0..m - 1 {
                            jac[(a, b)] =
                                (g[(a, b)] - g[(a, m - 1)]) - (g[(m - 1, b)] - g[(m - 1, m - 1)]);
                        }
                    }
                    let rhs = DVector::from_vec(resid);
                    let step = jac.lu().solve(&rhs)?;
                    if step.iter().any(|v| !v.is_finite()) {
                        return None;
                    }
                    // Damping: cap the step so no mass moves by more than
                    // 0.25 at once; near the solution the full (quadratic)
                    // step is taken.
                    let smax = step.amax();
                    let scale = if smax > 0.25 { 0.25 / smax } else { 1.0 };
                    let mut next = ps.clone();
                    let mut head = 0.0;
                    for i in 0..m - 1 {
                        next[i] -= scale * step[i];
                        head += next[i];
                    }
                    next[m - 1] = 1.0 - head;
                    let (low_idx, low) = next
                        .iter()
                        .cloned()
                        .enumerate()
                        .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())?;
                    if low < -1e-3 {
                        drop = Some(low_idx);
                        break 'newton;
                    }
                    let total: f64 = next.iter().map(|v| v.max(0.0)).sum();
                    if !(total > 0.0) {
                        return None;
                    }
                    for v in &mut next {
                        *v = v.max(0.0) / total;
                    }
                    ps = next;
                }
                if drop.is_none() && !converged {
                    return None;
                }
            }
            match drop {
                Some(idx) => {
                    supp.remove(idx);
                }
                None => {
                    let total: f64 = ps.iter().sum();
                    if !(total > 0.0) {
                        return None;
                    }
                    let mut full = vec![0.0; self.k];
                    for (&pk, &i) in ps.iter().zip(&supp) {
                        full[i] = pk.max(0.0) / total;
                    }
                    return Some(full);
                }
            }
        }
        None
    }

    /// Newton equalization with active-set augmentation: after equalizing on
    /// a support, any unsupported letter whose divergence still exceeds the
    /// achieved value violates the KKT conditions, so it is added and the
    /// equalization re-run. Returns the best (smallest-gap) iterate seen.
    fn equalize_augmented(&self, support: &[usize]) -> Option<Vec<f64>> {
        let mut supp = support.to_vec();
        let mut best: Option<(Vec<f64>, f64)> = None;
        for _ in 0..self.k {
            let Some(cand) = self.newton_equalize(&supp) else { break };
            let (d, lo, up) = self.sandwich(&cand);
            let gap = up - lo;
            if best.as_ref().is_none_or(|(_, g)| gap < *g) {
                best = Some((cand.clone(), gap));
            }
            if gap <= GAP_TOL {
                break;
            }
            let violator = (0..self.k)
                .filter(|&i| cand[i] == 0.0)
                .max_by(|&a, &b| d[a].partial_cmp(&d[b]).unwrap());
            match violator {
                Some(i) if d[i] > lo => {
                    let mut next: Vec<usize> =
                        (0..self.k).filter(|&j| cand[j] > 0.0).collect();
                    next.push(i);
                    next.sort_unstable();
                    if next == supp {
                        break;
                    }
                    supp = next;
                }
                _ => break,
            }
        }
        best.map(|(p, _)| p)
    }
}

/// Solve a plain discrete memoryless channel given by `rows` (one row per
/// input letter, nonnegative, each summing to 1) to certified gap
/// [`GAP_TOL`]. Returns `(capacity, optimizer, iterations)`.
fn solve_dmc(rows: &[Vec<f64>]) -> Result<(f64, Vec<f64>, u64)> {
    let dmc = Dmc::new(rows);
    let k = dmc.k;
    let mut p = vec![1.0 / k as f64; k];
    let mut mu = 1.0f64;
    let mut prev_lower = f64::NEG_INFINITY;
    let mut next_polish: u64 = 15;
    let mut last = (0.0, p.clone());

    for it in 0..MAX_ITER {
        // Keep the iterate strictly interior so the output law never
        // vanishes on a live column.
        let mut total = 0.0;
        for v in &mut p {
            *v = v.max(1e-250);
            total += *v;
        }
        for v in &mut p {
            *v /= total;
        }
        let (d, lower, upper) = dmc.sandwich(&p);
        let gap = upper - lower;
        last = (lower, p.clone());
        if gap <= GAP_TOL {
            return Ok((lower, p, it));
        }

        if it >= next_polish && gap < 1e-2 {
            // Candidate supports: letters in descending D order, duplicates
            // (identical rows) removed, sizes 2..=n+1.
            let mut order: Vec<usize> = (0..k).collect();
            order.sort_by(|&a, &b| d[b].partial_cmp(&d[a]).unwrap());
            let mut seen: Vec<usize> = Vec::new();
            let cap = (dmc.n + 1).min(k);
            for &i in &order {
                if seen.len() >= cap {
                    break;
                }
                if seen.iter().any(|&j| dmc.w[i] == dmc.w[j]) {
                    continue;
                }
                seen.push(i);
            }
            let mut improved = false;
            for m in 2..=seen.len() {
                let Some(cand) = dmc.equalize_augmented(&seen[..m]) else {
                    continue;
                };
                let (_, lo2, up2) = dmc.sandwich(&cand);
                if up2.is_finite() && up2 - lo2 < gap {
                    p = cand;
                    improved = true;
                    if up2 - lo2 <= GAP_TOL {
                        return Ok((lo2, p, it));
                    }
                    break;
                }
            }
            next_polish = if improved {
                it + 64
            } else {
                it + (2 * (next_polish.saturating_sub(it) + 64).max(64)).min(4000)
            };
            if improved {
                continue;
            }
        }

        // Accelerated multiplicative update with adaptive exponent.
        if lower < prev_lower - 1e-15 {
            mu = (mu * 0.5).max(1.0);
        } else {
            mu = (mu * 1.25).min(64.0);
        }
        prev_lower = lower;
        let mut total = 0.0;
        for (pk, dk) in p.iter_mut().zip(&d) {
            *pk *= (mu * (dk - upper)).exp();
            total += *pk;
        }
        for pk in &mut p {
            *pk /= total;
        }
    }

    let (lower, p) = last;
    let (_, lo, up) = dmc.sandwich(&p);
    Err(Error::NoConvergence {
        best_value: lower,
        gap: up - lo,
        iterations: MAX_ITER,
        best_input: p,
    })
}

/// The equivalent `X → (Y,S)` channel rows `W(y,s|x) = p_S(s)·p(y|x,s)`.
fn no_side_rows(sys: &StateChannelSystem) -> Vec<Vec<f64>> {
    let (nx, ny, ns) = (sys.n_inputs(), sys.n_outputs(), sys.n_states());
    (0..nx)
        .map(|x| {
            let mut row = Vec::with_capacity(ns * ny);
            for s in 0..ns {
                for y in 0..ny {
                    row.push(sys.p_s().get(s) * sys.y_given_xs()[s].get(x, y));
                }
            }
            row
        })
        .collect()
}

/// The equivalent `U → (Y,S)` channel over Shannon strategies:
/// `W(y,s|u) = p_S(s)·Σ_x p(x|u,s)·p(y|x,s)` with
/// `p(x|u,s) = Σ_s̃ side(s̃|s)·1{x=u(s̃)}`.
fn causal_rows(sys: &StateChannelSystem) -> Result<(Vec<Vec<f64>>, Vec<ShannonStrategy>)> {
    let (nx, ny, ns) = (sys.n_inputs(), sys.n_outputs(), sys.n_states());
    let nside = sys.n_side_outputs();
    let count = (nx as f64).powi(nside as i32);
    if count > (1u64 << 20) as f64 {
        return Err(Error::Domain(format!(
            "strategy space |X|^|S~| = {nx}^{nside} exceeds the 2^20 enumeration limit"
        )));
    }
    let strategies = all_strategies(nx, nside);
    let rows = strategies
        .iter()
        .map(|u| {
            let mut row = Vec::with_capacity(ns * ny);
            for s in 0..ns {
                let mut px = vec![0.0; nx];
                for st in 0..nside {
                    px[u.map()[st]] += sys.side().get(s, st);
                }
                for y in 0..ny {
                    let mix: f64 =
                        (0..nx).map(|x| px[x] * sys.y_given_xs()[s].get(x, y)).sum();
                    row.push(sys.p_s().get(s) * mix);
                }
            }
            row
        })
        .collect();
    Ok((rows, strategies))
}

fn kkt_residual_for(rows: &[Vec<f64>], p: &[f64], value: f64) -> f64 {
    let dmc = Dmc::new(rows);
    let q = dmc.output_law(p);
    let d = dmc.divergences(&q);
    let mut resid: f64 = 0.0;
    for (pk, dk) in p.iter().zip(&d) {
        if *pk > SUPPORT_TOL {
            resid = resid.max((dk - value).abs());
        } else {
            resid = resid.max((dk - value).max(0.0));
        }
    }
    resid
}

fn finish(rows: &[Vec<f64>], value: f64, p: Vec<f64>, iterations: u64) -> Result<CapacityResult> {
    let kkt_residual = kkt_residual_for(rows, &p, value);
    Ok(CapacityResult {
        value,
        input_dist: Dist::new(p)?,
        kkt_residual,
        iterations,
    })
}

/// The no-side-information capacity `C̲ = max_{p_X} I(X;Y|S)` (state known
/// at the decoder only), via the equivalent channel `X → (Y,S)`.
pub fn capacity_no_side_info(sys: &StateChannelSystem) -> Result<CapacityResult> {
    let rows = no_side_rows(sys);
    let (value, p, iterations) = solve_dmc(&rows)?;
    finish(&rows, value, p, iterations)
}

/// The Shannon-strategy capacity `C = max_{p_U} I(U;Y|S)` with the noisy
/// state observation causally available at the encoder; enumerates all
/// strategies `u ∈ X^{S̃}` (requires `|X|^{|S̃|} ≤ 2^20`).
pub fn capacity_causal(sys: &StateChannelSystem) -> Result<CapacityResult> {
    let (rows, _) = causal_rows(sys)?;
    let (value, p, iterations) = solve_dmc(&rows)?;
    finish(&rows, value, p, iterations)
}

/// Which solver a [`CapacityResult`] came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CapacityMode {
    NoSide,
    Causal,
}

/// Recompute the KKT optimality certificate for a solver result: the max
/// over letters of `|D_k − C|` (supported) and `(D_k − C)₊` (unsupported).
pub fn kkt_certificate(
    sys: &StateChannelSystem,
    result: &CapacityResult,
    mode: CapacityMode,
) -> Result<f64> {
    let rows = match mode {
        CapacityMode::NoSide => no_side_rows(sys),
        CapacityMode::Causal => causal_rows(sys)?.0,
    };
    if rows.len() != result.input_dist.len() {
        return Err(Error::Dimension(format!(
            "result distribution has {} letters, channel has {} rows",
            result.input_dist.len(),
            rows.len()
        )));
    }
    Ok(kkt_residual_for(&rows, result.input_dist.probs(), result.value))
}

/// The optional support-size bound `min{(|X|−1)·|S̃|+1, |S|·|Y|}` on the
/// causal optimizer, reported as a diagnostic.
pub fn causal_support_bound(sys: &StateChannelSystem) -> usize {
    ((sys.n_inputs() - 1) * sys.n_side_outputs() + 1).min(sys.n_states() * sys.n_outputs())
}

/// True iff the optimizer of [`capacity_no_side_info`] places both masses
/// strictly inside the band `(e^{-1}, 1−e^{-1})`. Requires binary inputs and
/// positive capacity.
pub fn capacity_achieving_input_in_band(sys: &StateChannelSystem) -> Result<bool> {
    if sys.n_inputs() != 2 {
        return Err(Error::Domain(
            "band check requires a binary input alphabet".into(),
        ));
    }
    let res = capacity_no_side_info(sys)?;
    if res.value <= 1e-11 {
        return Err(Error::Domain("band undefined: capacity is zero".into()));
    }
    let e = crate::scalarfn::inv_e();
    let (p0, p1) = (res.input_dist.get(0), res.input_dist.get(1));
    Ok(p0 > e && p0 < 1.0 - e && p1 > e && p1 < 1.0 - e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::Channel;

    fn ch(rows: &[&[f64]]) -> Channel {
        Channel::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn erasure_side(eps: f64) -> Channel {
        ch(&[&[1.0 - eps, 0.0, eps], &[0.0, 1.0 - eps, eps]])
    }

    /// The binary example system with crossover `delta` and a given side
    /// channel.
    fn example_system(delta: f64, side: Channel) -> StateChannelSystem {
        StateChannelSystem::new(
            vec![
                ch(&[&[1.0, 0.0], &[1.0 - delta, delta]]),
                ch(&[&[1.0 - delta, delta], &[1.0, 0.0]]),
            ],
            Dist::new(vec![1.0 - delta, delta]).unwrap(),
            side,
        )
        .unwrap()
    }

    #[test]
    fn useless_input_has_zero_capacity() {
        let sys = StateChannelSystem::new(
            vec![ch(&[&[0.7, 0.3], &[0.7, 0.3]]), ch(&[&[0.2, 0.8], &[0.2, 0.8]])],
            Dist::new(vec![0.5, 0.5]).unwrap(),
            Channel::identity(2).unwrap(),
        )
        .unwrap();
        let r = capacity_no_side_info(&sys).unwrap();
        assert!(r.value.abs() < 1e-10, "value = {}", r.value);
    }

    #[test]
    fn noiseless_binary_channel_is_ln2() {
        let sys = StateChannelSystem::new(
            vec![Channel::identity(2).unwrap(), Channel::identity(2).unwrap()],
            Dist::new(vec![0.5, 0.5]).unwrap(),
            Channel::identity(2).unwrap(),
        )
        .unwrap();
        let r = capacity_no_side_info(&sys).unwrap();
        assert!((r.value - std::f64::consts::LN_2).abs() < 1e-10);
        assert!(r.kkt_residual < 1e-8);
        assert!((r.input_dist.get(0) - 0.5).abs() < 1e-6);
    }

    #[test]
    fn example_capacity_matches_grid_search() {
        // 1-D grid search over p_X(0) is an independent oracle since the
        // mutual information is concave in p_X(0).
        let delta = 0.01;
        let sys = example_system(delta, erasure_side(0.5));
        let r = capacity_no_side_info(&sys).unwrap();
        let rows = no_side_rows(&sys);
        let mut best = 0.0f64;
        for k in 0..=100_000u64 {
            let p0 = k as f64 * 1e-5;
            let p = [p0, 1.0 - p0];
            let mut q = vec![0.0; rows[0].len()];
            for j in 0..q.len() {
                q[j] = p[0] * rows[0][j] + p[1] * rows[1][j];
            }
            let mut info = 0.0;
            for (x, row) in rows.iter().enumerate() {
                let mut d = 0.0;
                for j in 0..row.len() {
                    if row[j] > 0.0 && q[j] > 0.0 {
                        d += row[j] * (row[j] / q[j]).ln();
                    }
                }
                info += p[x] * d;
            }
            best = best.max(info);
        }
        assert!(
            (r.value - best).abs() < 1e-7,
            "solver {} vs grid {best}",
            r.value
        );
    }

    #[test]
    fn single_side_symbol_collapses_to_no_side() {
        let delta = 0.05;
        let sys = example_system(
            delta,
            Channel::new(vec![vec![1.0], vec![1.0]]).unwrap(),
        );
        let c = capacity_causal(&sys).unwrap();
        let c_lower = capacity_no_side_info(&sys).unwrap();
        assert!((c.value - c_lower.value).abs() < 1e-9);
    }

    #[test]
    fn perfect_side_info_dominates() {
        let delta = 0.01;
        let side = ch(&[&[1.0, 0.0], &[0.0, 1.0]]);
        let sys = example_system(delta, side);
        let c = capacity_causal(&sys).unwrap();
        let c_lower = capacity_no_side_info(&sys).unwrap();
        assert!(c.value >= c_lower.value - 1e-9);
        assert!(c.value > c_lower.value + 1e-6, "strict gain expected at small delta");
    }

    #[test]
    fn above_threshold_no_gain() {
        let delta = 0.01;
        let sys = example_system(delta, erasure_side(0.5));
        let c = capacity_causal(&sys).unwrap();
        let c_lower = capacity_no_side_info(&sys).unwrap();
        assert!((c.value - c_lower.value).abs() < 1e-8);
    }

    #[test]
    fn kkt_certificate_small_at_optimum_large_at_uniform() {
        let sys = example_system(0.02, erasure_side(0.3));
        let r = capacity_no_side_info(&sys).unwrap();
        assert!(kkt_certificate(&sys, &r, CapacityMode::NoSide).unwrap() <= 1e-8);
        let fake = CapacityResult {
            value: r.value,
            input_dist: Dist::new(vec![0.9, 0.1]).unwrap(),
            kkt_residual: 0.0,
            iterations: 0,
        };
        assert!(kkt_certificate(&sys, &fake, CapacityMode::NoSide).unwrap() > 1e-4);
    }

    #[test]
    fn symmetric_channel_optimum_is_uniform() {
        let sys = StateChannelSystem::new(
            vec![ch(&[&[0.9, 0.1], &[0.1, 0.9]]), ch(&[&[0.8, 0.2], &[0.2, 0.8]])],
            Dist::new(vec![0.5, 0.5]).unwrap(),
            Channel::identity(2).unwrap(),
        )
        .unwrap();
        let r = capacity_no_side_info(&sys).unwrap();
        assert!((r.input_dist.get(0) - 0.5).abs() < 1e-6);
        assert!(capacity_achieving_input_in_band(&sys).unwrap());
    }

    #[test]
    fn band_check_rejects_zero_capacity() {
        let sys = StateChannelSystem::new(
            vec![ch(&[&[0.7, 0.3], &[0.7, 0.3]]), ch(&[&[0.7, 0.3], &[0.7, 0.3]])],
            Dist::new(vec![0.5, 0.5]).unwrap(),
            Channel::identity(2).unwrap(),
        )
        .unwrap();
        assert!(capacity_achieving_input_in_band(&sys).is_err());
    }

    #[test]
    fn reproducibility_is_bitwise() {
        let sys = example_system(0.01, erasure_side(0.2));
        let a = capacity_causal(&sys).unwrap();
        let b = capacity_causal(&sys).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(
            a.input_dist
                .probs()
                .iter()
                .map(|v| v.to_bits())
                .collect::<Vec<_>>(),
            b.input_dist
                .probs()
                .iter()
                .map(|v| v.to_bits())
                .collect::<Vec<_>>()
        );
        assert_eq!(a.iterations, b.iterations);
    }

    #[test]
    fn support_bound_diagnostic() {
        let sys = example_system(0.01, erasure_side(0.2));
        assert_eq!(causal_support_bound(&sys), 4);
        let r = capacity_causal(&sys).unwrap();
        let support = r
            .input_dist
            .probs()
            .iter()
            .filter(|&&p| p > SUPPORT_TOL)
            .count();
        assert!(support <= causal_support_bound(&sys));
    }
}
