//! Finite channels, the noise measure `γ`, the useless-channel
//! decomposition, the `γ` product bound, Shannon-strategy induced channels,
//! and the `D(κ)` functional.

use crate::scalarfn::{inv_e, threshold_ta};
use crate::simplex::{kl_slices, Dist};
use crate::{Error, Result};

/// Tolerance within which each channel row must sum to one; constructors
/// renormalize inside this tolerance and reject outside it.
pub const ROW_SUM_TOL: f64 = 1e-12;

/// A finite channel: a row-stochastic matrix with one row per input symbol
/// and one column per output symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct Channel {
    rows: Vec<Vec<f64>>,
}

impl Channel {
    /// Validate and construct a channel with row-sum tolerance
    /// [`ROW_SUM_TOL`].
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::with_tolerance(rows, ROW_SUM_TOL)
    }

    /// Validate and construct a channel; rows summing to 1 within `tol` are
    /// renormalized, others rejected.
    pub fn with_tolerance(rows: Vec<Vec<f64>>, tol: f64) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::Domain("channel matrix must be nonempty".into()));
        }
        let width = rows[0].len();
        let mut out = Vec::with_capacity(rows.len());
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != width {
                return Err(Error::Dimension(format!(
                    "channel row {i} has length {}, expected {width}",
                    row.len()
                )));
            }
            if row.iter().any(|p| !p.is_finite() || *p < 0.0) {
                return Err(Error::Domain(format!(
                    "channel row {i} has negative or non-finite entries"
                )));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > tol {
                return Err(Error::Domain(format!(
                    "channel row {i} sums to {sum}, outside tolerance {tol}"
                )));
            }
            out.push(row.into_iter().map(|p| p / sum).collect());
        }
        Ok(Self { rows: out })
    }

    /// The deterministic useless channel `U_x`: every input is mapped to the
    /// fixed output symbol `x`.
    pub fn useless(n_inputs: usize, x: usize, n_outputs: usize) -> Result<Self> {
        if x >= n_outputs {
            return Err(Error::Domain(format!(
                "useless channel output {x} out of range for {n_outputs} outputs"
            )));
        }
        let mut row = vec![0.0; n_outputs];
        row[x] = 1.0;
        Self::new(vec![row; n_inputs])
    }

    /// The identity channel on `n` symbols.
    pub fn identity(n: usize) -> Result<Self> {
        let rows = (0..n)
            .map(|i| {
                let mut row = vec![0.0; n];
                row[i] = 1.0;
                row
            })
            .collect();
        Self::new(rows)
    }

    /// The deterministic channel realizing the map `i ↦ map[i]` into an
    /// output alphabet of size `n_outputs`.
    pub fn deterministic(map: &[usize], n_outputs: usize) -> Result<Self> {
        let rows = map
            .iter()
            .map(|&j| {
                if j >= n_outputs {
                    return Err(Error::Domain(format!(
                        "deterministic map value {j} out of range for {n_outputs} outputs"
                    )));
                }
                let mut row = vec![0.0; n_outputs];
                row[j] = 1.0;
                Ok(row)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows)
    }

    /// True when every row places all its mass on a single output symbol.
    pub fn is_deterministic(&self) -> bool {
        self.rows
            .iter()
            .all(|row| row.iter().filter(|&&p| p > 0.0).count() == 1)
    }

    /// The matrix product `self · other` (channel composition).
    pub fn compose(&self, other: &Channel) -> Result<Channel> {
        if self.n_outputs() != other.n_inputs() {
            return Err(Error::Dimension(format!(
                "compose: {} outputs vs {} inputs",
                self.n_outputs(),
                other.n_inputs()
            )));
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                (0..other.n_outputs())
                    .map(|k| {
                        row.iter()
                            .enumerate()
                            .map(|(j, &p)| p * other.rows[j][k])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        Channel::new(rows)
    }

    pub fn n_inputs(&self) -> usize {
        self.rows.len()
    }

    pub fn n_outputs(&self) -> usize {
        self.rows[0].len()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.rows[i][j]
    }
}

/// The noise measure `γ(κ) = Σ_output min_input κ(output|input)`; `γ = 1`
/// means the output is independent of the input (pure noise).
pub fn gamma(kappa: &Channel) -> f64 {
    (0..kappa.n_outputs())
        .map(|j| {
            (0..kappa.n_inputs())
                .map(|i| kappa.get(i, j))
                .fold(f64::INFINITY, f64::min)
        })
        .sum()
}

/// The useless-channel decomposition
/// `κ = Σ_x λ_x [γ(κ)·U_x + (1−γ(κ))·κ']`.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub gamma: f64,
    pub lambda: Dist,
    pub kappa_prime: Channel,
}

/// Decompose a channel per the useless-channel decomposition, with uniform
/// fallbacks for the degenerate cases `γ ∈ {0, 1}`.
pub fn decompose(kappa: &Channel) -> Result<Decomposition> {
    let n_out = kappa.n_outputs();
    if n_out < 2 {
        return Err(Error::Domain(
            "decompose requires at least 2 output symbols".into(),
        ));
    }
    let col_min: Vec<f64> = (0..n_out)
        .map(|j| {
            (0..kappa.n_inputs())
                .map(|i| kappa.get(i, j))
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let g: f64 = col_min.iter().sum();
    let g = g.min(1.0);
    let lambda = if g > 0.0 {
        Dist::new(col_min.iter().map(|&m| m / g).collect())?
    } else {
        Dist::uniform(n_out)?
    };
    let kappa_prime = if g < 1.0 {
        Channel::with_tolerance(
            kappa
                .rows()
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(&col_min)
                        .map(|(&p, &m)| ((p - m) / (1.0 - g)).max(0.0))
                        .collect()
                })
                .collect(),
            1e-9,
        )?
    } else {
        Channel::new(vec![vec![1.0 / n_out as f64; n_out]; kappa.n_inputs()])?
    };
    Ok(Decomposition { gamma: g, lambda, kappa_prime })
}

/// Evaluate both sides of the product bound
/// `γ(AB) ≥ γ(A) + (|M|−n)₊ · g` for a deterministic post-channel `B`,
/// where `M` is the set of row indices attaining column minima of `A`
/// (ties broken toward the smallest index), `g` the minimum over columns of
/// the gap between the least and second-least entry, and `n` the output
/// count of `B`. Returns `(lhs, rhs)`.
pub fn gamma_product_check(a: &Channel, b: &Channel) -> Result<(f64, f64)> {
    if !b.is_deterministic() {
        return Err(Error::Domain(
            "gamma_product_check requires a deterministic post-channel".into(),
        ));
    }
    let lhs = gamma(&a.compose(b)?);
    let m_rows = a.n_inputs();
    let mut argmins = std::collections::BTreeSet::new();
    let mut min_gap = f64::INFINITY;
    for j in 0..a.n_outputs() {
        let mut least = f64::INFINITY;
        let mut second = f64::INFINITY;
        let mut arg = 0;
        for i in 0..m_rows {
            let v = a.get(i, j);
            if v < least {
                second = least;
                least = v;
                arg = i;
            } else if v < second {
                second = v;
            }
        }
        argmins.insert(arg);
        let gap = if m_rows < 2 { 0.0 } else { second - least };
        min_gap = min_gap.min(gap);
    }
    let excess = argmins.len() as f64 - b.n_outputs() as f64;
    let rhs = gamma(a) + excess.max(0.0) * min_gap;
    Ok((lhs, rhs))
}

/// A Shannon strategy: a total map from side-channel output symbols to
/// channel input symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShannonStrategy {
    map: Vec<usize>,
    n_inputs: usize,
}

impl ShannonStrategy {
    pub fn new(map: Vec<usize>, n_inputs: usize) -> Result<Self> {
        if map.is_empty() {
            return Err(Error::Domain("strategy map must be total".into()));
        }
        if map.iter().any(|&x| x >= n_inputs) {
            return Err(Error::Domain(format!(
                "strategy map value out of range for {n_inputs} inputs"
            )));
        }
        Ok(Self { map, n_inputs })
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn n_inputs(&self) -> usize {
        self.n_inputs
    }

    /// True when the strategy ignores the side observation.
    pub fn is_constant(&self) -> bool {
        self.map.iter().all(|&x| x == self.map[0])
    }

    /// The canonical index of this strategy in the lexicographic enumeration
    /// of `X^{S̃}` (first table entry most significant).
    pub fn canonical_index(&self) -> usize {
        self.map.iter().fold(0, |acc, &x| acc * self.n_inputs + x)
    }
}

/// All strategies `u ∈ X^{S̃}` in canonical (lexicographic) order.
pub fn all_strategies(n_inputs: usize, n_side_outputs: usize) -> Vec<ShannonStrategy> {
    let count = n_inputs.pow(n_side_outputs as u32);
    (0..count)
        .map(|mut idx| {
            let mut map = vec![0; n_side_outputs];
            for slot in (0..n_side_outputs).rev() {
                map[slot] = idx % n_inputs;
                idx /= n_inputs;
            }
            ShannonStrategy { map, n_inputs }
        })
        .collect()
}

/// The `S → X` channel obtained by pushing the side channel through a
/// strategy: `p(x|s) = Σ_s̃ side(s̃|s)·1{x = u(s̃)}`; equals `side · B` for
/// the deterministic matrix `B` of `u`.
pub fn strategy_channel(u: &ShannonStrategy, side: &Channel) -> Result<Channel> {
    if u.map.len() != side.n_outputs() {
        return Err(Error::Dimension(format!(
            "strategy is over {} side symbols, side channel has {}",
            u.map.len(),
            side.n_outputs()
        )));
    }
    side.compose(&Channel::deterministic(&u.map, u.n_inputs)?)
}

/// A state-dependent channel system: per-state channels `p_{Y|X,S=s}`, the
/// state law `p_S`, and the side channel `p_{S̃|S}`.
#[derive(Debug, Clone)]
pub struct StateChannelSystem {
    y_given_xs: Vec<Channel>,
    p_s: Dist,
    side: Channel,
}

impl StateChannelSystem {
    pub fn new(y_given_xs: Vec<Channel>, p_s: Dist, side: Channel) -> Result<Self> {
        if y_given_xs.is_empty() {
            return Err(Error::Domain("need at least one state channel".into()));
        }
        let (nx, ny) = (y_given_xs[0].n_inputs(), y_given_xs[0].n_outputs());
        if y_given_xs
            .iter()
            .any(|ch| ch.n_inputs() != nx || ch.n_outputs() != ny)
        {
            return Err(Error::Dimension(
                "all per-state channels must share dimensions".into(),
            ));
        }
        if p_s.len() != y_given_xs.len() {
            return Err(Error::Dimension(format!(
                "p_s has {} states, {} state channels given",
                p_s.len(),
                y_given_xs.len()
            )));
        }
        if side.n_inputs() != p_s.len() {
            return Err(Error::Dimension(format!(
                "side channel has {} rows, expected one per state ({})",
                side.n_inputs(),
                p_s.len()
            )));
        }
        Ok(Self { y_given_xs, p_s, side })
    }

    pub fn y_given_xs(&self) -> &[Channel] {
        &self.y_given_xs
    }

    pub fn p_s(&self) -> &Dist {
        &self.p_s
    }

    pub fn side(&self) -> &Channel {
        &self.side
    }

    /// Replace the side channel (used when sweeping a side-channel family).
    pub fn with_side(&self, side: Channel) -> Result<Self> {
        Self::new(self.y_given_xs.clone(), self.p_s.clone(), side)
    }

    pub fn n_states(&self) -> usize {
        self.p_s.len()
    }

    pub fn n_inputs(&self) -> usize {
        self.y_given_xs[0].n_inputs()
    }

    pub fn n_outputs(&self) -> usize {
        self.y_given_xs[0].n_outputs()
    }

    pub fn n_side_outputs(&self) -> usize {
        self.side.n_outputs()
    }

    /// The output law per state, `p_{Y|S}(y|s) = Σ_x p_X(x)·p(y|x,s)`.
    pub fn p_y_given_s(&self, p_x: &Dist) -> Result<Vec<Vec<f64>>> {
        if p_x.len() != self.n_inputs() {
            return Err(Error::Dimension(format!(
                "p_x has {} entries, channel has {} inputs",
                p_x.len(),
                self.n_inputs()
            )));
        }
        Ok(self
            .y_given_xs
            .iter()
            .map(|ch| {
                (0..ch.n_outputs())
                    .map(|y| {
                        p_x.probs()
                            .iter()
                            .enumerate()
                            .map(|(x, &px)| px * ch.get(x, y))
                            .sum()
                    })
                    .collect()
            })
            .collect())
    }
}

/// The functional
/// `D(κ) = Σ_s p_S(s)·D(κ(·|s) ⊗ p_{Y|X,S=s} ‖ p_{Y|S=s})`, where the
/// output law `p_{Y|S}` is induced by `p_x`. `+∞` is a legitimate value.
pub fn d_functional(kappa: &Channel, sys: &StateChannelSystem, p_x: &Dist) -> Result<f64> {
    if kappa.n_inputs() != sys.n_states() || kappa.n_outputs() != sys.n_inputs() {
        return Err(Error::Dimension(format!(
            "kappa must map {} states to {} inputs, got {}x{}",
            sys.n_states(),
            sys.n_inputs(),
            kappa.n_inputs(),
            kappa.n_outputs()
        )));
    }
    let pys = sys.p_y_given_s(p_x)?;
    let mut total = 0.0;
    for s in 0..sys.n_states() {
        let ch = &sys.y_given_xs()[s];
        let mix: Vec<f64> = (0..ch.n_outputs())
            .map(|y| {
                (0..ch.n_inputs())
                    .map(|x| kappa.get(s, x) * ch.get(x, y))
                    .sum()
            })
            .collect();
        total += sys.p_s().get(s) * kl_slices(&mix, &pys[s]);
    }
    Ok(total)
}

/// Property harness for the dominance claim: with binary inputs and an
/// equalizing `p_x` (`D(U_0) = D(U_1) = C` within 1e−8), returns true iff
/// `D(κ) ≤ C + 1e−9` whenever `γ(κ) ≥ T(p_x(0)) ∨ T(p_x(1))` (vacuously
/// true below the threshold).
pub fn d_dominance_check(
    sys: &StateChannelSystem,
    p_x: &Dist,
    kappa: &Channel,
) -> Result<bool> {
    if sys.n_inputs() != 2 {
        return Err(Error::Domain(
            "d_dominance_check requires a binary input alphabet".into(),
        ));
    }
    let d0 = d_functional(&Channel::useless(sys.n_states(), 0, 2)?, sys, p_x)?;
    let d1 = d_functional(&Channel::useless(sys.n_states(), 1, 2)?, sys, p_x)?;
    if !(d0.is_finite() && d1.is_finite() && (d0 - d1).abs() <= 1e-8) {
        return Err(Error::Domain(format!(
            "p_x not equalizing: D(U_0) = {d0}, D(U_1) = {d1}"
        )));
    }
    let c = 0.5 * (d0 + d1);
    let (p0, p1) = (p_x.get(0), p_x.get(1));
    if p0 <= inv_e() || p1 <= inv_e() {
        return Err(Error::Domain(format!(
            "T(p) undefined: p_x = ({p0}, {p1}) has a mass at or below e^-1"
        )));
    }
    let thr = threshold_ta(p0)?.max(threshold_ta(p1)?);
    if gamma(kappa) >= thr {
        Ok(d_functional(kappa, sys, p_x)? <= c + 1e-9)
    } else {
        Ok(true)
    }
}
