//! Wirings: adaptive local processing of `n` boxes into one derived box.
//!
//! Each party runs a [`LocalStrategy`]: it uses the boxes in a fixed order,
//! picks every box input from its external input and the outcomes seen so
//! far, and finally outputs a function of its external input and all
//! outcomes. [`compose`] evaluates the derived box exactly.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::boxes::{self, CorrBox};
use crate::rat::{int, Rat};

pub mod search;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WiringError {
    #[error("strategy expects {expected} boxes, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("malformed strategy: {0}")]
    BadStrategy(&'static str),
    #[error("input boxes must be non-signalling")]
    SignallingInput,
    #[error("box is not of the correlated form ε·PR + (1−ε)·C")]
    NotCorrelatedForm,
    #[error("box denominators too large for the exhaustive search")]
    TooLarge,
}

/// One party's deterministic strategy over `n` boxes.
///
/// Tables are indexed by bit patterns: `input_fns[i]` over
/// `x | o_0 << 1 | … | o_{i-1} << i` where `o_j` is the outcome of step
/// `j`, and `output_fn` over `x | o_0 << 1 | … | o_{n-1} << n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocalStrategy {
    order: Vec<usize>,
    input_fns: Vec<Vec<u8>>,
    output_fn: Vec<u8>,
}

impl LocalStrategy {
    pub fn new(
        order: Vec<usize>,
        input_fns: Vec<Vec<u8>>,
        output_fn: Vec<u8>,
    ) -> Result<Self, WiringError> {
        let n = order.len();
        if n == 0 || n > 16 {
            return Err(WiringError::BadStrategy("box count must be between 1 and 16"));
        }
        let mut seen = vec![false; n];
        for &j in &order {
            if j >= n || seen[j] {
                return Err(WiringError::BadStrategy("order is not a permutation"));
            }
            seen[j] = true;
        }
        if input_fns.len() != n
            || input_fns
                .iter()
                .enumerate()
                .any(|(i, t)| t.len() != 1 << (i + 1))
        {
            return Err(WiringError::BadStrategy(
                "step i input table must have 2^(i+1) entries",
            ));
        }
        if output_fn.len() != 1 << (n + 1) {
            return Err(WiringError::BadStrategy("output table must have 2^(n+1) entries"));
        }
        if input_fns.iter().flatten().chain(&output_fn).any(|&v| v > 1) {
            return Err(WiringError::BadStrategy("tables must hold bits"));
        }
        Ok(LocalStrategy {
            order,
            input_fns,
            output_fn,
        })
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn input_fns(&self) -> &[Vec<u8>] {
        &self.input_fns
    }

    pub fn output_fn(&self) -> &[u8] {
        &self.output_fn
    }

    /// Feed `x` through every box and output the first box's outcome.
    pub fn identity() -> Self {
        parity(1)
    }

    /// For external input `x` and step outcomes `steps` (bit `i` = outcome
    /// of step `i`): the input given to each physical box, the outcome each
    /// physical box produced, and the final output.
    fn trace(&self, x: u8, steps: usize) -> (Vec<u8>, Vec<u8>, u8) {
        let n = self.n();
        let mut inputs = vec![0u8; n];
        let mut outcomes = vec![0u8; n];
        for (i, &j) in self.order.iter().enumerate() {
            let seen = steps & ((1 << i) - 1);
            inputs[j] = self.input_fns[i][x as usize | seen << 1];
            outcomes[j] = (steps >> i & 1) as u8;
        }
        (inputs, outcomes, self.output_fn[x as usize | steps << 1])
    }
}

/// Input `x` into all `n` boxes and output the parity of the outcomes.
fn parity(n: usize) -> LocalStrategy {
    let input_fns = (0..n)
        .map(|i| (0..1usize << (i + 1)).map(|k| (k & 1) as u8).collect())
        .collect();
    let output_fn = (0..1usize << (n + 1))
        .map(|k| ((k >> 1).count_ones() & 1) as u8)
        .collect();
    LocalStrategy::new((0..n).collect(), input_fns, output_fn).expect("well-formed")
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Wiring {
    pub alice: LocalStrategy,
    pub bob: LocalStrategy,
}

impl Wiring {
    pub fn new(alice: LocalStrategy, bob: LocalStrategy) -> Result<Self, WiringError> {
        if alice.n() != bob.n() {
            return Err(WiringError::SizeMismatch {
                expected: alice.n(),
                got: bob.n(),
            });
        }
        Ok(Wiring { alice, bob })
    }

    pub fn n(&self) -> usize {
        self.alice.n()
    }

    pub fn identity() -> Self {
        fww(1)
    }
}

/// A distribution over deterministic wirings, realized with shared randomness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharedWiring {
    pub parts: Vec<(Rat, Wiring)>,
}

impl SharedWiring {
    pub fn new(parts: Vec<(Rat, Wiring)>) -> Result<Self, WiringError> {
        let Some(n) = parts.first().map(|(_, w)| w.n()) else {
            return Err(WiringError::BadStrategy("empty mixture"));
        };
        if parts.iter().any(|(p, w)| w.n() != n || *p < Rat::zero())
            || !parts.iter().map(|(p, _)| p).sum::<Rat>().is_one()
        {
            return Err(WiringError::BadStrategy(
                "mixture weights must be a distribution over equal-size wirings",
            ));
        }
        Ok(SharedWiring { parts })
    }
}

/// Exact table of the box simulated by `w` on `boxes`.
///
/// For every `(x, y)` the sum runs over all joint outcome branches; the
/// boxes are independent given their inputs, and each party's inputs are
/// set step by step from its own earlier outcomes.
pub fn compose(w: &Wiring, boxes: &[CorrBox]) -> Result<CorrBox, WiringError> {
    let n = w.n();
    if boxes.len() != n {
        return Err(WiringError::SizeMismatch {
            expected: n,
            got: boxes.len(),
        });
    }
    if boxes.iter().any(|b| !b.is_nonsignalling()) {
        return Err(WiringError::SignallingInput);
    }
    let mut table: [Rat; 16] = core::array::from_fn(|_| Rat::zero());
    let branches = 1usize << n;
    for x in 0..2u8 {
        let alice: Vec<_> = (0..branches).map(|s| w.alice.trace(x, s)).collect();
        for y in 0..2u8 {
            let bob: Vec<_> = (0..branches).map(|s| w.bob.trace(y, s)).collect();
            for (ua, oa, out_a) in &alice {
                for (vb, ob, out_b) in &bob {
                    let mut p = Rat::one();
                    for j in 0..n {
                        let q = boxes[j].p(oa[j], ob[j], ua[j], vb[j]);
                        if q.is_zero() {
                            p = Rat::zero();
                            break;
                        }
                        p *= q;
                    }
                    if !p.is_zero() {
                        table[boxes::index(*out_a, *out_b, x, y)] += p;
                    }
                }
            }
        }
    }
    Ok(CorrBox::new(table).expect("composition of valid boxes is valid"))
}

pub fn compose_shared(w: &SharedWiring, boxes: &[CorrBox]) -> Result<CorrBox, WiringError> {
    let parts = w
        .parts
        .iter()
        .map(|(_, wi)| compose(wi, boxes))
        .collect::<Result<Vec<_>, _>>()?;
    let weights: Vec<Rat> = w.parts.iter().map(|(p, _)| p.clone()).collect();
    Ok(boxes::mix(&parts, &weights).expect("weights validated at construction"))
}

/// Parity protocol on `n` boxes: same inputs everywhere, XOR the outcomes.
pub fn fww(n: usize) -> Wiring {
    Wiring {
        alice: parity(n),
        bob: parity(n),
    }
}

/// Two-box adaptive protocol: the first box gets the external input, the
/// second gets `input · (first outcome)`, and the output is the XOR of both
/// outcomes.
pub fn bs2() -> Wiring {
    let side = LocalStrategy::new(
        vec![0, 1],
        vec![vec![0, 1], (0..4).map(|k| (k & 1 & (k >> 1)) as u8).collect()],
        (0..8).map(|k| ((k >> 1 & 1) ^ (k >> 2 & 1)) as u8).collect(),
    )
    .expect("well-formed");
    Wiring {
        alice: side.clone(),
        bob: side,
    }
}

/// Closed form of the parity protocol on `P^C_ε`: `3 − (1−2ε)^n`.
pub fn fww_formula(eps: &Rat, n: usize) -> Rat {
    let base = int(1) - int(2) * eps;
    let mut pow = Rat::one();
    for _ in 0..n {
        pow *= &base;
    }
    int(3) - pow
}

/// Closed form of the two-box adaptive protocol on `P^C_ε`: `3ε − ε² + 2`.
pub fn bs_formula(eps: &Rat) -> Rat {
    int(3) * eps - eps * eps + int(2)
}

/// The `ε` with `b = ε·PR + (1−ε)·C`, if `b` has that form.
pub fn correlated_parameter(b: &CorrBox) -> Option<Rat> {
    let eps = b.p(0, 1, 1, 1) * int(2);
    let candidate = boxes::correlated_nonlocal(&eps).ok()?;
    (candidate == *b).then_some(eps)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BsStep {
    pub eps: Rat,
    pub chsh: Rat,
}

/// Repeatedly feeds two copies of the current correlated box through
/// [`bs2`]. Entry 0 is the starting box; entry `i` is after `i` rounds.
pub fn iterate_bs(eps0: &Rat, steps: usize) -> Result<Vec<BsStep>, WiringError> {
    let mut current =
        boxes::correlated_nonlocal(eps0).map_err(|_| WiringError::NotCorrelatedForm)?;
    let mut out = vec![BsStep {
        eps: eps0.clone(),
        chsh: current.chsh(),
    }];
    let w = bs2();
    for _ in 0..steps {
        current = compose(&w, &[current.clone(), current])?;
        let eps = correlated_parameter(&current).ok_or(WiringError::NotCorrelatedForm)?;
        out.push(BsStep {
            eps,
            chsh: current.chsh(),
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitReport {
    pub chsh_in: Rat,
    pub chsh_out: Rat,
    /// `CHSH(in) ≤ 2 ⟹ CHSH(out) ≤ 2`
    pub locality_preserved: bool,
    /// `CHSH(in) < 4 ⟹ CHSH(out) < 4`
    pub below_maximum_preserved: bool,
}

impl LimitReport {
    pub fn holds(&self) -> bool {
        self.locality_preserved && self.below_maximum_preserved
    }
}

/// Evaluates the no-creation limits on `w` applied to `n` copies of `b`.
pub fn limit_checks(b: &CorrBox, w: &Wiring) -> Result<LimitReport, WiringError> {
    let copies = vec![b.clone(); w.n()];
    let out = compose(w, &copies)?;
    let (chsh_in, chsh_out) = (b.chsh(), out.chsh());
    let two = int(2);
    let four = int(4);
    Ok(LimitReport {
        locality_preserved: chsh_in > two || chsh_out <= two,
        below_maximum_preserved: chsh_in >= four || chsh_out < four,
        chsh_in,
        chsh_out,
    })
}
