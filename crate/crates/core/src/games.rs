//! Non-local games: exact classical values, the trivial baseline, and
//! quantum values of XOR games through the unit-vector characterization.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::rat::{half, to_f64, Rat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GameError {
    #[error("prior must be non-negative and sum to 1")]
    BadPrior,
    #[error("expected {expected} entries, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("game too large to enumerate")]
    TooLarge,
    #[error("classical value equals the trivial value")]
    DegenerateGame,
    #[error("alphabets must be non-empty")]
    EmptyAlphabet,
}

/// Largest deterministic strategy count enumerated for one player.
pub const ENUMERATION_CAP: u64 = 1 << 22;

/// Largest input alphabet handled by the XOR solver.
pub const XOR_INPUT_CAP: usize = 64;

/// `G = (X × Y, A × B, π, V)` with alphabets `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Game {
    inputs: (usize, usize),
    outputs: (usize, usize),
    prior: Vec<Rat>,
    predicate: Vec<bool>,
}

fn check_prior(prior: &[Rat], expected: usize) -> Result<(), GameError> {
    if prior.len() != expected {
        return Err(GameError::SizeMismatch {
            expected,
            got: prior.len(),
        });
    }
    if prior.iter().any(Signed::is_negative) || !prior.iter().sum::<Rat>().is_one() {
        return Err(GameError::BadPrior);
    }
    Ok(())
}

impl Game {
    /// `prior[x·|Y| + y]`, `predicate[((a·|B| + b)·|X| + x)·|Y| + y]`.
    pub fn new(
        inputs: (usize, usize),
        outputs: (usize, usize),
        prior: Vec<Rat>,
        predicate: Vec<bool>,
    ) -> Result<Self, GameError> {
        if inputs.0 == 0 || inputs.1 == 0 || outputs.0 == 0 || outputs.1 == 0 {
            return Err(GameError::EmptyAlphabet);
        }
        check_prior(&prior, inputs.0 * inputs.1)?;
        let expected = inputs.0 * inputs.1 * outputs.0 * outputs.1;
        if predicate.len() != expected {
            return Err(GameError::SizeMismatch {
                expected,
                got: predicate.len(),
            });
        }
        Ok(Game {
            inputs,
            outputs,
            prior,
            predicate,
        })
    }

    pub fn from_fn(
        inputs: (usize, usize),
        outputs: (usize, usize),
        prior: impl Fn(usize, usize) -> Rat,
        wins: impl Fn(usize, usize, usize, usize) -> bool,
    ) -> Result<Self, GameError> {
        let (nx, ny) = inputs;
        let (na, nb) = outputs;
        let p = (0..nx * ny).map(|i| prior(i / ny, i % ny)).collect();
        let mut v = Vec::with_capacity(nx * ny * na * nb);
        for a in 0..na {
            for b in 0..nb {
                for x in 0..nx {
                    for y in 0..ny {
                        v.push(wins(a, b, x, y));
                    }
                }
            }
        }
        Game::new(inputs, outputs, p, v)
    }

    pub fn inputs(&self) -> (usize, usize) {
        self.inputs
    }

    pub fn outputs(&self) -> (usize, usize) {
        self.outputs
    }

    pub fn prior(&self, x: usize, y: usize) -> &Rat {
        &self.prior[x * self.inputs.1 + y]
    }

    pub fn wins(&self, a: usize, b: usize, x: usize, y: usize) -> bool {
        let (nx, ny) = self.inputs;
        self.predicate[((a * self.outputs.1 + b) * nx + x) * ny + y]
    }

    /// Winning probability of deterministic strategies `a = fa[x]`, `b = fb[y]`.
    pub fn value_of(&self, fa: &[usize], fb: &[usize]) -> Rat {
        let mut total = Rat::zero();
        for (x, &a) in fa.iter().enumerate() {
            for (y, &b) in fb.iter().enumerate() {
                if self.wins(a, b, x, y) {
                    total += self.prior(x, y);
                }
            }
        }
        total
    }

    /// The game with the players' roles exchanged.
    pub fn transpose(&self) -> Game {
        Game::from_fn(
            (self.inputs.1, self.inputs.0),
            (self.outputs.1, self.outputs.0),
            |y, x| self.prior(x, y).clone(),
            |b, a, y, x| self.wins(a, b, x, y),
        )
        .expect("transpose of a valid game")
    }
}

fn strategy_count(outputs: usize, inputs: usize) -> Option<u64> {
    (outputs as u64).checked_pow(u32::try_from(inputs).ok()?)
}

/// Exact classical value. One player's deterministic strategies are
/// enumerated and the other plays a best response per input, which gives
/// the maximum over all deterministic pairs.
pub fn classical_value(g: &Game) -> Result<Rat, GameError> {
    let alice = strategy_count(g.outputs.0, g.inputs.0);
    let bob = strategy_count(g.outputs.1, g.inputs.1);
    match (alice, bob) {
        (Some(na), Some(nb)) if nb < na && nb <= ENUMERATION_CAP => {
            return classical_value(&g.transpose());
        }
        (Some(na), _) if na <= ENUMERATION_CAP => {}
        _ => return Err(GameError::TooLarge),
    }
    let (nx, ny) = g.inputs;
    let (na, nb) = g.outputs;
    let mut fa = vec![0usize; nx];
    let mut best = Rat::zero();
    loop {
        let mut total = Rat::zero();
        for y in 0..ny {
            let mut best_b = Rat::zero();
            for b in 0..nb {
                let mut s = Rat::zero();
                for (x, &a) in fa.iter().enumerate() {
                    if g.wins(a, b, x, y) {
                        s += g.prior(x, y);
                    }
                }
                if s > best_b {
                    best_b = s;
                }
            }
            total += best_b;
        }
        if total > best {
            best = total;
        }
        // Odometer over Alice's strategies.
        let mut i = 0;
        loop {
            if i == nx {
                return Ok(best);
            }
            fa[i] += 1;
            if fa[i] < na {
                break;
            }
            fa[i] = 0;
            i += 1;
        }
    }
}

/// A binary game whose predicate depends on `c = a ⊕ b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XorGame {
    inputs: (usize, usize),
    prior: Vec<Rat>,
    predicate: Vec<bool>,
}

impl XorGame {
    /// `prior[x·|Y| + y]`, `predicate[(c·|X| + x)·|Y| + y]`.
    pub fn new(inputs: (usize, usize), prior: Vec<Rat>, predicate: Vec<bool>) -> Result<Self, GameError> {
        if inputs.0 == 0 || inputs.1 == 0 {
            return Err(GameError::EmptyAlphabet);
        }
        let n = inputs.0 * inputs.1;
        check_prior(&prior, n)?;
        if predicate.len() != 2 * n {
            return Err(GameError::SizeMismatch {
                expected: 2 * n,
                got: predicate.len(),
            });
        }
        Ok(XorGame {
            inputs,
            prior,
            predicate,
        })
    }

    pub fn from_fn(
        inputs: (usize, usize),
        prior: impl Fn(usize, usize) -> Rat,
        wins: impl Fn(u8, usize, usize) -> bool,
    ) -> Result<Self, GameError> {
        let (nx, ny) = inputs;
        let p = (0..nx * ny).map(|i| prior(i / ny, i % ny)).collect();
        let v = (0..2 * nx * ny)
            .map(|i| wins((i / (nx * ny)) as u8, i / ny % nx, i % ny))
            .collect();
        XorGame::new(inputs, p, v)
    }

    /// Uniform prior on two bits, win iff `a ⊕ b = x ∧ y`.
    pub fn chsh() -> Self {
        XorGame::from_fn((2, 2), |_, _| Rat::new(1.into(), 4.into()), |c, x, y| {
            c as usize == x & y
        })
        .expect("valid")
    }

    /// Uniform prior on `n × n` inputs with a predicate that ignores everything but `c`.
    pub fn constant(n: usize, wins_on: [bool; 2]) -> Self {
        let w = Rat::new(1.into(), ((n * n) as i64).into());
        XorGame::from_fn((n, n), |_, _| w.clone(), |c, _, _| wins_on[c as usize]).expect("valid")
    }

    pub fn inputs(&self) -> (usize, usize) {
        self.inputs
    }

    pub fn prior(&self, x: usize, y: usize) -> &Rat {
        &self.prior[x * self.inputs.1 + y]
    }

    pub fn wins(&self, c: u8, x: usize, y: usize) -> bool {
        let (nx, ny) = self.inputs;
        self.predicate[(c as usize * nx + x) * ny + y]
    }

    /// The XOR form of `g`, when outputs are bits and the predicate only
    /// looks at `a ⊕ b`.
    pub fn from_game(g: &Game) -> Option<XorGame> {
        if g.outputs() != (2, 2) {
            return None;
        }
        let (nx, ny) = g.inputs();
        for x in 0..nx {
            for y in 0..ny {
                if g.wins(0, 0, x, y) != g.wins(1, 1, x, y) || g.wins(0, 1, x, y) != g.wins(1, 0, x, y) {
                    return None;
                }
            }
        }
        XorGame::from_fn((nx, ny), |x, y| g.prior(x, y).clone(), |c, x, y| g.wins(0, c as usize, x, y)).ok()
    }

    pub fn to_game(&self) -> Game {
        Game::from_fn(
            self.inputs,
            (2, 2),
            |x, y| self.prior(x, y).clone(),
            |a, b, x, y| self.wins((a ^ b) as u8, x, y),
        )
        .expect("valid xor game")
    }

    /// `π(x,y)·(V(0,x,y) − V(1,x,y))` as floats, row-major in `x`.
    pub fn bias_matrix(&self) -> Vec<Vec<f64>> {
        let (nx, ny) = self.inputs;
        (0..nx)
            .map(|x| {
                (0..ny)
                    .map(|y| {
                        let c = i32::from(self.wins(0, x, y)) - i32::from(self.wins(1, x, y));
                        to_f64(self.prior(x, y)) * f64::from(c)
                    })
                    .collect()
            })
            .collect()
    }

    /// `Σ π(x,y)·(V(0) + V(1))/2`, the value at zero correlation.
    pub fn base_value(&self) -> Rat {
        let (nx, ny) = self.inputs;
        let mut total = Rat::zero();
        for x in 0..nx {
            for y in 0..ny {
                let hits = u8::from(self.wins(0, x, y)) + u8::from(self.wins(1, x, y));
                total += self.prior(x, y) * Rat::from_integer(hits.into());
            }
        }
        total * half()
    }
}

/// Winning probability with both players outputting uniform random bits.
pub fn trivial_value(g: &XorGame) -> Rat {
    g.base_value()
}

/// Constants in the bounds relating classical and quantum XOR-game values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GameBounds {
    pub kg_low: f64,
    pub kg_high: f64,
    pub gamma1: f64,
    pub gamma2: f64,
}

impl GameBounds {
    pub fn standard() -> Self {
        GameBounds {
            kg_low: 1.6769,
            kg_high: core::f64::consts::PI / (2.0 * libm::log(1.0 + libm::sqrt(2.0))),
            gamma1: 1.1382,
            gamma2: 0.74202,
        }
    }
}

impl Default for GameBounds {
    fn default() -> Self {
        GameBounds::standard()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub restarts: usize,
    pub tol: f64,
    pub max_sweeps: usize,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            restarts: 200,
            tol: 1e-10,
            max_sweeps: 10_000,
            seed: 0,
        }
    }
}

fn dot(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(p, q)| p * q).sum()
}

/// Rescales `v` to unit length; a zero vector keeps `fallback`.
fn normalize_into(v: &mut [f64], fallback: &[f64]) {
    let n = libm::sqrt(dot(v, v));
    if n > 1e-300 {
        v.iter_mut().for_each(|c| *c /= n);
    } else {
        v.copy_from_slice(fallback);
    }
}

fn bias(m: &[Vec<f64>], u: &[Vec<f64>], v: &[Vec<f64>]) -> f64 {
    let mut s = 0.0;
    for (x, row) in m.iter().enumerate() {
        for (y, &c) in row.iter().enumerate() {
            s += c * dot(&u[x], &v[y]);
        }
    }
    s
}

fn check_xor_size(g: &XorGame) -> Result<(), GameError> {
    let (nx, ny) = g.inputs;
    if nx > XOR_INPUT_CAP || ny > XOR_INPUT_CAP {
        Err(GameError::TooLarge)
    } else {
        Ok(())
    }
}

/// One restart of alternating maximization of `Σ M(x,y)⟨u_x, v_y⟩` over unit
/// vectors in dimension `min(|X|, |Y|)`. Restart `index` draws its start from
/// its own stream of `cfg.seed`, so restarts are independent of run order.
pub fn xor_bias_restart(g: &XorGame, cfg: &SolverConfig, index: u64) -> f64 {
    let m = g.bias_matrix();
    let (nx, ny) = g.inputs;
    let d = nx.min(ny);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index);
    let random_unit = |rng: &mut ChaCha8Rng| {
        let mut v: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mut e = vec![0.0; d];
        e[0] = 1.0;
        normalize_into(&mut v, &e);
        v
    };
    let mut u: Vec<Vec<f64>> = (0..nx).map(|_| random_unit(&mut rng)).collect();
    let mut v: Vec<Vec<f64>> = (0..ny).map(|_| random_unit(&mut rng)).collect();
    let mut current = bias(&m, &u, &v);
    for _ in 0..cfg.max_sweeps {
        for y in 0..ny {
            let mut acc = vec![0.0; d];
            for x in 0..nx {
                acc.iter_mut().zip(&u[x]).for_each(|(a, c)| *a += m[x][y] * c);
            }
            normalize_into(&mut acc, &v[y]);
            v[y] = acc;
        }
        for x in 0..nx {
            let mut acc = vec![0.0; d];
            for y in 0..ny {
                acc.iter_mut().zip(&v[y]).for_each(|(a, c)| *a += m[x][y] * c);
            }
            normalize_into(&mut acc, &u[x]);
            u[x] = acc;
        }
        let next = bias(&m, &u, &v);
        let improved = next - current;
        current = next;
        if improved < cfg.tol {
            break;
        }
    }
    current
}

/// `base + bias/2` for a bias found by the solver.
pub fn xor_value_from_bias(g: &XorGame, bias: f64) -> f64 {
    to_f64(&g.base_value()) + bias / 2.0
}

/// Quantum value of an XOR game: best over `cfg.restarts` restarts. The
/// vectors found are feasible, so the result is a lower bound that is
/// exact whenever some restart reaches the global optimum.
pub fn xor_quantum_value(g: &XorGame, cfg: &SolverConfig) -> Result<f64, GameError> {
    check_xor_size(g)?;
    let best = (0..cfg.restarts.max(1) as u64)
        .map(|i| xor_bias_restart(g, cfg, i))
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(xor_value_from_bias(g, best))
}

/// `(ω_Q − τ)/(ω_C − τ)` given an already computed quantum value.
pub fn grothendieck_ratio_with(g: &XorGame, omega_q: f64) -> Result<f64, GameError> {
    let omega_c = classical_value(&g.to_game())?;
    let tau = trivial_value(g);
    if omega_c == tau {
        return Err(GameError::DegenerateGame);
    }
    Ok((omega_q - to_f64(&tau)) / to_f64(&(omega_c - tau)))
}

pub fn grothendieck_ratio(g: &XorGame, cfg: &SolverConfig) -> Result<f64, GameError> {
    let omega_q = xor_quantum_value(g, cfg)?;
    grothendieck_ratio_with(g, omega_q)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Thm8Report {
    pub omega_c: Rat,
    pub omega_q: f64,
    pub bound: f64,
    pub holds: bool,
}

pub const THM8_SLACK: f64 = 1e-6;

/// Piecewise upper bound on `ω_Q` in terms of `ω_C`.
pub fn thm8_bound(omega_c: f64, bounds: &GameBounds) -> f64 {
    if omega_c <= bounds.gamma2 {
        bounds.gamma1 * omega_c
    } else {
        let s = libm::sin(core::f64::consts::FRAC_PI_2 * omega_c);
        s * s
    }
}

pub fn thm8_check_with(g: &XorGame, omega_q: f64) -> Result<Thm8Report, GameError> {
    let omega_c = classical_value(&g.to_game())?;
    let bound = thm8_bound(to_f64(&omega_c), &GameBounds::standard());
    Ok(Thm8Report {
        holds: omega_q <= bound + THM8_SLACK,
        omega_c,
        omega_q,
        bound,
    })
}

pub fn thm8_check(g: &XorGame, cfg: &SolverConfig) -> Result<Thm8Report, GameError> {
    let omega_q = xor_quantum_value(g, cfg)?;
    thm8_check_with(g, omega_q)
}

/// Non-local computation game of `f` on `m` bits: inputs `{0,1}^m` each,
/// uniform prior, win iff `a ⊕ b = f(x ⊕ y)`.
pub fn nlc_game(f: &[bool]) -> Result<XorGame, GameError> {
    let n = f.len();
    if n == 0 || !n.is_power_of_two() {
        return Err(GameError::SizeMismatch {
            expected: n.next_power_of_two().max(1),
            got: n,
        });
    }
    if n > XOR_INPUT_CAP {
        return Err(GameError::TooLarge);
    }
    let w = Rat::new(1.into(), ((n * n) as i64).into());
    XorGame::from_fn((n, n), |_, _| w.clone(), |c, x, y| (c == 1) == f[x ^ y])
}

/// Random XOR game: input sizes in `2..=max_inputs`, prior weights drawn
/// from `1..=4` on every input pair and normalized, and one random target
/// parity `a ⊕ b = t(x, y)` per pair.
pub fn random_xor_game<R: Rng>(rng: &mut R, max_inputs: usize) -> XorGame {
    let hi = max_inputs.max(2);
    let nx = rng.gen_range(2..=hi);
    let ny = rng.gen_range(2..=hi);
    let raw: Vec<i64> = (0..nx * ny).map(|_| rng.gen_range(1..=4)).collect();
    let total: i64 = raw.iter().sum();
    let prior: Vec<Rat> = raw.iter().map(|&w| Rat::new(w.into(), total.into())).collect();
    let target: Vec<bool> = (0..nx * ny).map(|_| rng.gen_bool(0.5)).collect();
    XorGame::from_fn((nx, ny), |x, y| prior[x * ny + y].clone(), |c, x, y| (c == 1) == target[x * ny + y])
        .expect("valid random game")
}
