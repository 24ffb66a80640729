//! Seeded sampling of distributions, channels, and state-channel systems for
//! property testing. A single 64-bit seed drives a counter-based ChaCha
//! generator, so suites are reproducible and independent streams can be
//! split off cheaply.

use crate::channel::{Channel, StateChannelSystem};
use crate::simplex::Dist;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};

/// The deterministic generator used throughout: stream `stream` of the seed.
pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// A Dirichlet sample with the given concentration parameters.
pub fn dirichlet(rng: &mut impl Rng, alpha: &[f64]) -> Vec<f64> {
    loop {
        let draws: Vec<f64> = alpha
            .iter()
            .map(|&a| Gamma::new(a, 1.0).expect("positive alpha").sample(rng))
            .collect();
        let sum: f64 = draws.iter().sum();
        if sum > 0.0 {
            return draws.into_iter().map(|x| x / sum).collect();
        }
    }
}

/// A uniform (symmetric Dirichlet(1)) random distribution on `n` symbols.
pub fn random_dist(rng: &mut impl Rng, n: usize) -> Dist {
    Dist::new(dirichlet(rng, &vec![1.0; n])).expect("dirichlet sample is a distribution")
}

/// A strictly positive random distribution: Dirichlet(1) conditioned on all
/// entries exceeding `floor`.
pub fn random_positive_dist(rng: &mut impl Rng, n: usize, floor: f64) -> Dist {
    loop {
        let p = dirichlet(rng, &vec![1.0; n]);
        if p.iter().all(|&x| x > floor) {
            return Dist::new(p).expect("dirichlet sample is a distribution");
        }
    }
}

/// A random channel with Dirichlet(1) rows.
pub fn random_channel(rng: &mut impl Rng, n_inputs: usize, n_outputs: usize) -> Channel {
    Channel::new(
        (0..n_inputs)
            .map(|_| dirichlet(rng, &vec![1.0; n_outputs]))
            .collect(),
    )
    .expect("dirichlet rows are stochastic")
}

/// A random binary-input system with `n_states` states, `n_outputs` channel
/// outputs, and `n_side_outputs` side-channel outputs.
pub fn random_binary_system(
    rng: &mut impl Rng,
    n_states: usize,
    n_outputs: usize,
    n_side_outputs: usize,
) -> StateChannelSystem {
    let y_given_xs = (0..n_states)
        .map(|_| random_channel(rng, 2, n_outputs))
        .collect();
    let p_s = random_dist(rng, n_states);
    let side = random_channel(rng, n_states, n_side_outputs);
    StateChannelSystem::new(y_given_xs, p_s, side).expect("sampled system is valid")
}
