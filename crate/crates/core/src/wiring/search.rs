//! Exhaustive search over deterministic two-box wirings.
//!
//! A deterministic two-box strategy for one party is a box order plus, for
//! each value of the external input, a [`Component`]: the first box input,
//! the second box input as a function of the first outcome, and the final
//! output as a function of both outcomes. With a fixed order that is
//! `(2·4·16)² = 16384` strategies per side.
//!
//! Pairing both sides naively costs ~8·10⁸ compositions. The search
//! instead uses that the correlator `X_xy` of the composed box depends only
//! on Alice's component for `x` and Bob's component for `y`, so every
//! signed CHSH combination `Σ s_xy X_xy` separates: for each pair of Alice
//! components, Bob's best component is chosen independently per `y`. This
//! visits the same strategy space exactly.

use alloc::collections::BTreeSet;
use alloc::rc::Rc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{compose, LocalStrategy, Wiring, WiringError};
use crate::boxes::{self, CorrBox};
use crate::rat::{common_denominator, scaled_numerators, Rat};

/// Both box orders.
pub const ORDERS: [[usize; 2]; 2] = [[0, 1], [1, 0]];

/// Per-side strategy count with the box order fixed: `4 · 16 · 256`.
pub const RAW_SIDE_COUNT_FIXED_ORDER: usize = 4 * 16 * 256;

/// Behaviour on one external input value, packed into 7 bits:
/// bit 0 first input, bits 1–2 second input by first outcome,
/// bits 3–6 output by `o1 | o2 << 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Component(u8);

impl Component {
    pub const COUNT: usize = 128;

    pub fn new(bits: u8) -> Option<Self> {
        (bits < 128).then_some(Component(bits))
    }

    pub fn all() -> impl Iterator<Item = Component> + Clone {
        (0..128u8).map(Component)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    #[inline]
    pub fn first_input(self) -> u8 {
        self.0 & 1
    }

    #[inline]
    pub fn second_input(self, o1: u8) -> u8 {
        self.0 >> (1 + o1) & 1
    }

    #[inline]
    pub fn output(self, o1: u8, o2: u8) -> u8 {
        self.0 >> (3 + (o1 | o2 << 1)) & 1
    }
}

/// A full deterministic two-box strategy for one party.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SideStrategy {
    pub order: [usize; 2],
    pub per_input: [Component; 2],
}

impl SideStrategy {
    pub fn to_local(&self) -> LocalStrategy {
        let [c0, c1] = self.per_input;
        let first = vec![c0.first_input(), c1.first_input()];
        let second = (0..4u8)
            .map(|k| [c0, c1][(k & 1) as usize].second_input(k >> 1))
            .collect();
        let output = (0..8u8)
            .map(|k| [c0, c1][(k & 1) as usize].output(k >> 1 & 1, k >> 2))
            .collect();
        LocalStrategy::new(self.order.to_vec(), vec![first, second], output)
            .expect("component tables are well-formed")
    }

    /// Truth table of `(x, a0, a1) ↦ (input to box 0, input to box 1, output)`
    /// in physical box labels. Strategies with equal keys act identically.
    pub fn channel_key(&self) -> [u8; 8] {
        core::array::from_fn(|k| {
            let (x, phys) = (k & 1, [(k >> 1 & 1) as u8, (k >> 2 & 1) as u8]);
            let c = self.per_input[x];
            let (o1, o2) = (phys[self.order[0]], phys[self.order[1]]);
            let mut inputs = [0u8; 2];
            inputs[self.order[0]] = c.first_input();
            inputs[self.order[1]] = c.second_input(o1);
            inputs[0] | inputs[1] << 1 | c.output(o1, o2) << 2
        })
    }
}

/// Every per-side strategy with a fixed box order, before deduplication.
pub fn raw_side_strategies(order: [usize; 2]) -> impl Iterator<Item = SideStrategy> {
    Component::all().flat_map(move |c0| {
        Component::all().map(move |c1| SideStrategy {
            order,
            per_input: [c0, c1],
        })
    })
}

/// Per-side strategies over both orders, deduplicated by channel key.
/// Reversed-order strategies survive only when their second input really
/// depends on the first outcome.
pub fn side_strategies() -> Vec<SideStrategy> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for order in ORDERS {
        for s in raw_side_strategies(order) {
            if seen.insert(s.channel_key()) {
                out.push(s);
            }
        }
    }
    out
}

/// All canonical deterministic two-box wirings, Alice-major.
pub fn enumerate_wirings() -> impl Iterator<Item = Wiring> {
    let sides = Rc::new(side_strategies());
    let bob_sides = Rc::clone(&sides);
    (0..sides.len()).flat_map(move |i| {
        let alice = sides[i].to_local();
        let bob_sides = Rc::clone(&bob_sides);
        (0..bob_sides.len()).map(move |j| Wiring {
            alice: alice.clone(),
            bob: bob_sides[j].to_local(),
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub chsh: Rat,
    pub alice: SideStrategy,
    pub bob: SideStrategy,
}

impl SearchResult {
    pub fn witness(&self) -> Wiring {
        Wiring {
            alice: self.alice.to_local(),
            bob: self.bob.to_local(),
        }
    }
}

/// Maximum CHSH of `compose(w, [b, b])` over every deterministic two-box
/// wiring, with the first maximizer in enumeration order as witness.
/// Shared randomness cannot do better since CHSH is convex in the wiring
/// mixture weights.
pub fn max_chsh_over_wirings(b: &CorrBox) -> Result<SearchResult, WiringError> {
    let all: Vec<Component> = Component::all().collect();
    search_components(b, &ORDERS, &ORDERS, &all, &all)
}

/// The search restricted to the given orders and per-input components.
pub fn search_components(
    b: &CorrBox,
    alice_orders: &[[usize; 2]],
    bob_orders: &[[usize; 2]],
    alice_comps: &[Component],
    bob_comps: &[Component],
) -> Result<SearchResult, WiringError> {
    if !b.is_nonsignalling() {
        return Err(WiringError::SignallingInput);
    }
    if alice_orders.is_empty() || bob_orders.is_empty() || alice_comps.is_empty() || bob_comps.is_empty() {
        return Err(WiringError::BadStrategy("empty search space"));
    }
    let denom = common_denominator(b.table());
    if denom.bits() > 40 {
        return Err(WiringError::TooLarge);
    }
    let p = scaled_numerators(b.table(), &denom).ok_or(WiringError::TooLarge)?;

    let nb = bob_comps.len();
    // Incumbent: (value, alice order, bob order, c0, c1, d0, d1)
    let mut best: Option<(i128, usize, usize, usize, usize, usize, usize)> = None;
    let mut table = vec![0i128; alice_comps.len() * nb];
    for (oa_i, oa) in alice_orders.iter().enumerate() {
        for (ob_i, ob) in bob_orders.iter().enumerate() {
            for (i, &ca) in alice_comps.iter().enumerate() {
                for (j, &cb) in bob_comps.iter().enumerate() {
                    table[i * nb + j] = correlator_scaled(&p, *oa, ca, *ob, cb);
                }
            }
            let row = |i: usize| &table[i * nb..(i + 1) * nb];
            for c0 in 0..alice_comps.len() {
                for c1 in 0..alice_comps.len() {
                    let (r0, r1) = (row(c0), row(c1));
                    // Extremes of X_0y ± X_1y over Bob's component for y.
                    let mut plus = Extremes::default();
                    let mut minus = Extremes::default();
                    for d in 0..nb {
                        plus.see(r0[d] + r1[d], d);
                        minus.see(r0[d] - r1[d], d);
                    }
                    // Bob's component choice is independent for y = 0 and y = 1,
                    // and both y see the same table, so one pass serves both.
                    for x0 in 0..2usize {
                        for y0 in 0..2usize {
                            let flipped_y = 1 - y0;
                            // Coefficient pair at y = flipped_y: (+1, −1) if x0 = 0 else (−1, +1).
                            let sign = if x0 == 0 { 1 } else { -1 };
                            for global in [1i128, -1] {
                                let mut total = 0i128;
                                let mut picks = [0usize; 2];
                                for y in 0..2 {
                                    let (v, d) = if y == flipped_y {
                                        minus.best(sign * global)
                                    } else {
                                        plus.best(global)
                                    };
                                    total += v;
                                    picks[y] = d;
                                }
                                if best.is_none_or(|bst| total > bst.0) {
                                    best = Some((total, oa_i, ob_i, c0, c1, picks[0], picks[1]));
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    let (value, oa_i, ob_i, c0, c1, d0, d1) = best.expect("non-empty search space");
    let scale = &denom * &denom;
    let chsh = Rat::new(BigInt::from(value), scale);
    let result = SearchResult {
        chsh,
        alice: SideStrategy {
            order: alice_orders[oa_i],
            per_input: [alice_comps[c0], alice_comps[c1]],
        },
        bob: SideStrategy {
            order: bob_orders[ob_i],
            per_input: [bob_comps[d0], bob_comps[d1]],
        },
    };
    debug_assert_eq!(
        compose(&result.witness(), &[b.clone(), b.clone()]).map(|c| c.chsh()),
        Ok(result.chsh.clone())
    );
    Ok(result)
}

/// Running max and min with first-index tie-breaking.
#[derive(Default)]
struct Extremes {
    max: Option<(i128, usize)>,
    min: Option<(i128, usize)>,
}

impl Extremes {
    #[inline]
    fn see(&mut self, v: i128, d: usize) {
        if self.max.is_none_or(|(m, _)| v > m) {
            self.max = Some((v, d));
        }
        if self.min.is_none_or(|(m, _)| v < m) {
            self.min = Some((v, d));
        }
    }

    /// Best value of `sign · v`.
    #[inline]
    fn best(&self, sign: i128) -> (i128, usize) {
        if sign > 0 {
            self.max.expect("non-empty")
        } else {
            let (v, d) = self.min.expect("non-empty");
            (-v, d)
        }
    }
}

/// Correlator `X` of the composed box (scaled by `denom²`) when Alice plays
/// component `ca` with box order `oa` and Bob plays `cb` with order `ob`.
fn correlator_scaled(p: &[i128], oa: [usize; 2], ca: Component, ob: [usize; 2], cb: Component) -> i128 {
    let mut sum = 0i128;
    for o1 in 0..2u8 {
        for o2 in 0..2u8 {
            let mut ain = [0u8; 2];
            let mut aout = [0u8; 2];
            ain[oa[0]] = ca.first_input();
            ain[oa[1]] = ca.second_input(o1);
            aout[oa[0]] = o1;
            aout[oa[1]] = o2;
            let out_a = ca.output(o1, o2);
            for q1 in 0..2u8 {
                for q2 in 0..2u8 {
                    let mut bin = [0u8; 2];
                    let mut bout = [0u8; 2];
                    bin[ob[0]] = cb.first_input();
                    bin[ob[1]] = cb.second_input(q1);
                    bout[ob[0]] = q1;
                    bout[ob[1]] = q2;
                    let w0 = p[boxes::index(aout[0], bout[0], ain[0], bin[0])];
                    if w0 == 0 {
                        continue;
                    }
                    let w1 = p[boxes::index(aout[1], bout[1], ain[1], bin[1])];
                    let w = w0 * w1;
                    if out_a ^ cb.output(q1, q2) == 0 {
                        sum += w;
                    } else {
                        sum -= w;
                    }
                }
            }
        }
    }
    sum
}

/// Number of canonical per-side strategies.
pub fn canonical_side_count() -> usize {
    side_strategies().len()
}
