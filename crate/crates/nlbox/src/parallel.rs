//! Thread fan-out for the restart-based XOR solver.

use std::thread;

use nlbox_core::games::{self, GameError, SolverConfig, XorGame};

/// [`games::xor_quantum_value`] with restarts split across `threads`
/// workers. Each restart draws from its own seeded stream and the
/// reduction is a maximum, so the result does not depend on `threads`.
pub fn xor_quantum_value(g: &XorGame, cfg: &SolverConfig, threads: usize) -> Result<f64, GameError> {
    let restarts = cfg.restarts.max(1) as u64;
    let threads = (threads.max(1) as u64).min(restarts);
    if threads == 1 {
        return games::xor_quantum_value(g, cfg);
    }
    let (nx, ny) = g.inputs();
    if nx > games::XOR_INPUT_CAP || ny > games::XOR_INPUT_CAP {
        return Err(GameError::TooLarge);
    }
    let best = thread::scope(|s| {
        let workers: Vec<_> = (0..threads)
            .map(|t| {
                s.spawn(move || {
                    (t..restarts)
                        .step_by(threads as usize)
                        .map(|i| games::xor_bias_restart(g, cfg, i))
                        .fold(f64::NEG_INFINITY, f64::max)
                })
            })
            .collect();
        workers
            .into_iter()
            .map(|w| w.join().expect("solver thread panicked"))
            .fold(f64::NEG_INFINITY, f64::max)
    });
    Ok(games::xor_value_from_bias(g, best))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn independent_of_thread_count() {
        let cfg = SolverConfig {
            restarts: 24,
            seed: 5,
            ..SolverConfig::default()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let g = games::random_xor_game(&mut rng, 4);
            let one = xor_quantum_value(&g, &cfg, 1).unwrap();
            for t in [2, 3, 8, 64] {
                assert_eq!(xor_quantum_value(&g, &cfg, t).unwrap(), one);
            }
        }
    }
}
