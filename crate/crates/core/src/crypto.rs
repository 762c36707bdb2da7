//! Cryptography from PR boxes: one-out-of-two oblivious transfer with exact
//! privacy analysis and the reduction attack, and bit commitment with exact
//! small-instance adversaries.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boxes::{pr, CorrBox};
use crate::rat::{half, rat, Rat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CryptoError {
    #[error("parameters beyond the enumeration cap (n ≤ 2, k ≤ 2)")]
    TooLarge,
    #[error("n must be at least 1")]
    BadParam,
}

/// Number of `11` blocks at odd positions; a trailing lone bit counts 0.
pub fn count11(s: &[u8]) -> usize {
    match s {
        [a, b, rest @ ..] => count11(rest) + usize::from(*a == 1 && *b == 1),
        _ => 0,
    }
}

/// One branch of the OT protocol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OtRun {
    pub x0: u8,
    pub x1: u8,
    pub c: u8,
    pub a: u8,
    pub b: u8,
    pub m: u8,
    pub output: u8,
    pub weight: Rat,
}

/// All box branches of the protocol on one box: Alice inputs `x0 ⊕ x1`, Bob
/// inputs `c`, Alice sends `m = x0 ⊕ a`, Bob outputs `m ⊕ b`.
pub fn ot_run_with(bx: &CorrBox, x0: u8, x1: u8, c: u8) -> Vec<OtRun> {
    let mut runs = Vec::new();
    for a in 0..2u8 {
        for b in 0..2u8 {
            let weight = bx.p(a, b, x0 ^ x1, c).clone();
            if weight.is_zero() {
                continue;
            }
            let m = x0 ^ a;
            runs.push(OtRun {
                x0,
                x1,
                c,
                a,
                b,
                m,
                output: m ^ b,
                weight,
            });
        }
    }
    runs
}

pub fn ot_run(x0: u8, x1: u8, c: u8) -> Vec<OtRun> {
    ot_run_with(&pr(), x0, x1, c)
}

/// Probability the receiver outputs `x_c`.
pub fn ot_correctness(x0: u8, x1: u8, c: u8) -> Rat {
    let want = if c == 0 { x0 } else { x1 };
    ot_run(x0, x1, c)
        .iter()
        .filter(|r| r.output == want)
        .map(|r| r.weight.clone())
        .sum()
}

/// Total variation distance between two weighted lists of views.
fn statistical_distance<V: PartialEq>(p: &[(V, Rat)], q: &[(V, Rat)]) -> Rat {
    let mut keys: Vec<&V> = Vec::new();
    for (v, _) in p.iter().chain(q) {
        if !keys.contains(&v) {
            keys.push(v);
        }
    }
    let mass = |d: &[(V, Rat)], k: &V| -> Rat { d.iter().filter(|(v, _)| v == k).map(|(_, w)| w.clone()).sum() };
    keys.iter()
        .map(|k| (mass(p, k) - mass(q, k)).abs())
        .sum::<Rat>()
        * half()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OtPrivacy {
    /// Largest distance between Alice's views `(x0, x1, a)` under `c = 0` and `c = 1`.
    pub sender_leak: Rat,
    /// Largest distance between Bob's views `(c, b, m)` over the two values
    /// of `x_{1−c}` with `x_c` and `c` fixed.
    pub receiver_leak: Rat,
}

pub fn ot_privacy_report() -> OtPrivacy {
    let alice_view = |x0, x1, c| -> Vec<((u8, u8, u8), Rat)> {
        ot_run(x0, x1, c).into_iter().map(|r| ((r.x0, r.x1, r.a), r.weight)).collect()
    };
    let bob_view = |x0, x1, c| -> Vec<((u8, u8, u8), Rat)> {
        ot_run(x0, x1, c).into_iter().map(|r| ((r.c, r.b, r.m), r.weight)).collect()
    };
    let mut sender_leak = Rat::zero();
    let mut receiver_leak = Rat::zero();
    for x0 in 0..2u8 {
        for x1 in 0..2u8 {
            let d = statistical_distance(&alice_view(x0, x1, 0), &alice_view(x0, x1, 1));
            sender_leak = sender_leak.max(d);
        }
    }
    for c in 0..2u8 {
        for known in 0..2u8 {
            let inputs = |other: u8| if c == 0 { (known, other) } else { (other, known) };
            let (p0, p1) = (inputs(0), inputs(1));
            let d = statistical_distance(&bob_view(p0.0, p0.1, c), &bob_view(p1.0, p1.1, c));
            receiver_leak = receiver_leak.max(d);
        }
    }
    OtPrivacy {
        sender_leak,
        receiver_leak,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionReport {
    /// Probability an honest receiver (fixed `c` up front) learns the secret.
    pub honest: Rat,
    /// Probability a receiver who feeds `c = k` after `k` is announced learns it.
    pub cheating: Rat,
    /// Distance between the sender's views `(secret, k, a)` in the two cases.
    pub sender_view_distance: Rat,
}

/// OT from 1-2 OT: the sender puts the secret at a random position `k` and 0
/// at the other, then announces `k`. The receiver learns the secret when it
/// holds `s_k` and knows it.
pub fn ot_reduction_attack() -> ReductionReport {
    let quarter = rat(1, 4);
    let mut honest = Rat::zero();
    let mut cheating = Rat::zero();
    let mut honest_view: Vec<((u8, u8, u8), Rat)> = Vec::new();
    let mut cheating_view: Vec<((u8, u8, u8), Rat)> = Vec::new();
    for secret in 0..2u8 {
        for k in 0..2u8 {
            let (s0, s1) = if k == 0 { (secret, 0) } else { (0, secret) };
            // Honest receiver: c uniform, committed before k is announced.
            for c in 0..2u8 {
                for r in ot_run(s0, s1, c) {
                    let w = &quarter * &half() * &r.weight;
                    if c == k && r.output == secret {
                        honest += &w;
                    }
                    honest_view.push(((secret, k, r.a), w));
                }
            }
            // Cheating receiver: waits for k, then inputs c = k.
            for r in ot_run(s0, s1, k) {
                let w = &quarter * &r.weight;
                if r.output == secret {
                    cheating += &w;
                }
                cheating_view.push(((secret, k, r.a), w));
            }
        }
    }
    ReductionReport {
        honest,
        cheating,
        sender_view_distance: statistical_distance(&honest_view, &cheating_view),
    }
}

/// Largest `n` and `k` the exact commitment analyses accept.
pub const BC_MAX_N: usize = 2;
pub const BC_MAX_K: usize = 2;

/// Parity bit making `|x₁…x₂ₙ|₁₁ + x₂ₙ₊₁ + c` even.
pub fn commit_last_bit(prefix: &[u8], c: u8) -> u8 {
    ((count11(prefix) as u8) ^ c) & 1
}

/// Bob's reveal check for one round.
pub fn bc_check(c: u8, x: &[u8], a: &[u8], big_a: u8, y: &[u8], b: &[u8]) -> bool {
    let len = x.len();
    if len == 0 || len.is_multiple_of(2) {
        return false;
    }
    let boxes_ok = (0..len).all(|i| a[i] ^ b[i] == x[i] & y[i]);
    let a_ok = a.iter().fold(0, |acc, v| acc ^ v) == big_a;
    let parity_ok = (count11(&x[..len - 1]) + usize::from(x[len - 1]) + usize::from(c)).is_multiple_of(2);
    boxes_ok && a_ok && parity_ok
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BcRound {
    pub x: Vec<u8>,
    pub a: Vec<u8>,
    pub big_a: u8,
    pub y: Vec<u8>,
    pub b: Vec<u8>,
    pub accepted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BcTranscript {
    pub c: u8,
    pub n: usize,
    pub rounds: Vec<BcRound>,
    pub accepted: bool,
}

impl BcTranscript {
    /// What Bob holds before the reveal: `A` and his outputs per round.
    pub fn bob_commit_view(&self) -> Vec<(u8, Vec<u8>, Vec<u8>)> {
        self.rounds.iter().map(|r| (r.big_a, r.y.clone(), r.b.clone())).collect()
    }
}

/// An honest run with PR-box outcomes and all coins drawn from `seed`.
pub fn bc_honest_run(c: u8, n: usize, k: usize, seed: u64) -> Result<BcTranscript, CryptoError> {
    if n == 0 {
        return Err(CryptoError::BadParam);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = 2 * n + 1;
    let mut rounds = Vec::with_capacity(k);
    for _ in 0..k {
        let mut x: Vec<u8> = (0..2 * n).map(|_| rng.gen_range(0..2)).collect();
        x.push(commit_last_bit(&x, c));
        let y: Vec<u8> = (0..len).map(|_| rng.gen_range(0..2)).collect();
        let a: Vec<u8> = (0..len).map(|_| rng.gen_range(0..2)).collect();
        let b: Vec<u8> = (0..len).map(|i| a[i] ^ (x[i] & y[i])).collect();
        let big_a = a.iter().fold(0, |acc, v| acc ^ v);
        let accepted = bc_check(c, &x, &a, big_a, &y, &b);
        rounds.push(BcRound {
            x,
            a,
            big_a,
            y,
            b,
            accepted,
        });
    }
    let accepted = rounds.iter().all(|r| r.accepted);
    Ok(BcTranscript { c, n, rounds, accepted })
}

fn bits(v: usize, len: usize) -> Vec<u8> {
    (0..len).map(|i| (v >> i & 1) as u8).collect()
}

fn check_caps(n: usize, k: usize) -> Result<(), CryptoError> {
    if n == 0 {
        return Err(CryptoError::BadParam);
    }
    if n > BC_MAX_N || k > BC_MAX_K {
        return Err(CryptoError::TooLarge);
    }
    Ok(())
}

/// Probability an honest run is accepted, by enumerating commit strings,
/// box outcomes and Bob's strings.
pub fn bc_honest_accept_probability(c: u8, n: usize, k: usize) -> Result<Rat, CryptoError> {
    check_caps(n, k)?;
    let len = 2 * n + 1;
    let mut round = Rat::zero();
    let w = Rat::new(1.into(), (1i64 << (2 * n + 2 * len)).into());
    for xp in 0..1usize << (2 * n) {
        let mut x = bits(xp, 2 * n);
        x.push(commit_last_bit(&x, c));
        for av in 0..1usize << len {
            let a = bits(av, len);
            let big_a = a.iter().fold(0, |acc, v| acc ^ v);
            for yv in 0..1usize << len {
                let y = bits(yv, len);
                let b: Vec<u8> = (0..len).map(|i| a[i] ^ (x[i] & y[i])).collect();
                if bc_check(c, &x, &a, big_a, &y, &b) {
                    round += &w;
                }
            }
        }
    }
    Ok(num_traits::pow(round, k))
}

/// Probability Bob accuses when Alice reveals with bit `flip` of `x` changed
/// (keeping her real outcomes), over commit strings, outcomes and `y`.
pub fn bc_tamper_accusation(c: u8, n: usize, flip: usize) -> Result<Rat, CryptoError> {
    check_caps(n, 1)?;
    let len = 2 * n + 1;
    if flip >= len {
        return Err(CryptoError::BadParam);
    }
    let mut accuse = Rat::zero();
    let w = Rat::new(1.into(), (1i64 << (2 * n + 2 * len)).into());
    for xp in 0..1usize << (2 * n) {
        let mut x = bits(xp, 2 * n);
        x.push(commit_last_bit(&x, c));
        let mut shown = x.clone();
        shown[flip] ^= 1;
        for av in 0..1usize << len {
            let a = bits(av, len);
            let big_a = a.iter().fold(0, |acc, v| acc ^ v);
            for yv in 0..1usize << len {
                let y = bits(yv, len);
                let b: Vec<u8> = (0..len).map(|i| a[i] ^ (x[i] & y[i])).collect();
                if !bc_check(c, &shown, &a, big_a, &y, &b) {
                    accuse += &w;
                }
            }
        }
    }
    Ok(accuse)
}

/// `P(A, b⃗ | y, c)` for one round, indexed `big_a | b⃗ << 1`.
fn bob_view_likelihoods(n: usize, y: &[u8], c: u8) -> Vec<Rat> {
    let len = 2 * n + 1;
    let mut out = vec![Rat::zero(); 1 << (len + 1)];
    let w = Rat::new(1.into(), (1i64 << (2 * n + len)).into());
    for xp in 0..1usize << (2 * n) {
        let mut x = bits(xp, 2 * n);
        x.push(commit_last_bit(&x, c));
        for av in 0..1usize << len {
            let big_a = (av.count_ones() & 1) as usize;
            let bv = (0..len).fold(0usize, |acc, i| acc | usize::from((av >> i & 1) as u8 ^ (x[i] & y[i])) << i);
            out[big_a | bv << 1] += &w;
        }
    }
    out
}

/// Likelihood pairs `(P(view|c=0), P(view|c=1))` for one choice of `y`, with
/// views of proportional likelihoods merged (lossless for the optimal guess).
fn merged_observations(n: usize, y: &[u8]) -> Vec<(Rat, Rat)> {
    let l0 = bob_view_likelihoods(n, y, 0);
    let l1 = bob_view_likelihoods(n, y, 1);
    let mut classes: Vec<(Rat, Rat)> = Vec::new();
    for (p, q) in l0.into_iter().zip(l1) {
        if p.is_zero() && q.is_zero() {
            continue;
        }
        match classes.iter_mut().find(|(cp, cq)| cp * &q == cq * &p) {
            Some((cp, cq)) => {
                *cp += p;
                *cq += q;
            }
            None => classes.push((p, q)),
        }
    }
    classes
}

/// Bob's best probability of guessing `c` before the reveal, over adaptive
/// choices of his strings `y` in each of `k` rounds and any guess rule on
/// his full view. `c` is uniform.
pub fn bc_hiding_advantage(n: usize, k: usize) -> Result<Rat, CryptoError> {
    check_caps(n, k)?;
    let len = 2 * n + 1;
    let mut options: Vec<Vec<(Rat, Rat)>> = Vec::new();
    for yv in 0..1usize << len {
        let obs = merged_observations(n, &bits(yv, len));
        if !options.contains(&obs) {
            options.push(obs);
        }
    }
    Ok(hiding_value(&options, k, &Rat::one(), &Rat::one()) * half())
}

fn hiding_value(options: &[Vec<(Rat, Rat)>], rounds: usize, w0: &Rat, w1: &Rat) -> Rat {
    if rounds == 0 {
        return w0.max(w1).clone();
    }
    options
        .iter()
        .map(|obs| {
            obs.iter()
                .map(|(p, q)| hiding_value(options, rounds - 1, &(w0 * p), &(w1 * q)))
                .sum::<Rat>()
        })
        .max()
        .expect("at least one choice of y")
}

/// Pass probability over Bob's uniform `y` for a reveal of `(x′, a′)` when
/// the real commit was `(x, a)`: boxes are independent, so it is a product.
fn reveal_pass_probability(x: &[u8], a: &[u8], shown_x: &[u8], shown_a: &[u8]) -> Rat {
    let mut p = Rat::one();
    for i in 0..x.len() {
        // Bob sees b = a ⊕ x·y and needs a′ ⊕ b = x′·y, i.e. a′ ⊕ a = (x ⊕ x′)·y.
        let changed = x[i] != shown_x[i];
        let differs = a[i] != shown_a[i];
        if changed {
            p *= half();
        } else if differs {
            return Rat::zero();
        }
    }
    p
}

/// Best probability a cheating Alice opens the bit `1 − c` after an honest
/// commit to `c` in every round. She picks which valid commit string `x` to
/// use and her reveal `(x′, a′)` as a function of her view (the announced
/// `A` can always be made to match `a′`); rounds are independent, so the optimum is the product of per-round
/// optima.
pub fn bc_binding_advantage(n: usize, k: usize) -> Result<Rat, CryptoError> {
    bc_open_probability(n, k, true)
}

/// [`bc_binding_advantage`] when Alice opens either the committed bit
/// (`change = false`) or its complement.
pub fn bc_open_probability(n: usize, k: usize, change: bool) -> Result<Rat, CryptoError> {
    check_caps(n, k)?;
    let len = 2 * n + 1;
    let target_c = u8::from(change);
    let out_w = Rat::new(1.into(), (1i64 << len).into());
    let mut best_round = Rat::zero();
    for xv in 0..1usize << len {
        let x = bits(xv, len);
        if !honest_commit(&x) {
            continue;
        }
        let mut value = Rat::zero();
        for av in 0..1usize << len {
            let a = bits(av, len);
            // A is announced after the outcomes, so it is part of the choice.
            let mut best = Rat::zero();
            for sx in 0..1usize << len {
                let shown_x = bits(sx, len);
                if !(count11(&shown_x[..len - 1]) + usize::from(shown_x[len - 1]) + usize::from(target_c)).is_multiple_of(2) {
                    continue;
                }
                for sa in 0..1usize << len {
                    let p = reveal_pass_probability(&x, &a, &shown_x, &bits(sa, len));
                    if p > best {
                        best = p;
                    }
                }
            }
            value += &out_w * best;
        }
        if value > best_round {
            best_round = value;
        }
    }
    Ok(num_traits::pow(best_round, k))
}

/// Commit strings valid for bit 0 (Alice's commitment is to `c = 0`; the
/// complement case is symmetric).
fn honest_commit(x: &[u8]) -> bool {
    let len = x.len();
    commit_last_bit(&x[..len - 1], 0) == x[len - 1]
}

/// Reference curves for the commitment security bounds.
pub fn hiding_reference(n: usize, k: usize) -> Rat {
    half() + Rat::new((k as i64).into(), (1i64 << (n + 1)).into())
}

pub fn binding_reference(k: usize) -> Rat {
    half() + Rat::new(2.into(), (1i64 << k).into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;

    #[test]
    fn count11_examples() {
        assert_eq!(count11(&[]), 0);
        assert_eq!(count11(&[1, 1]), 1);
        assert_eq!(count11(&[0, 1, 1, 1]), 1);
        assert_eq!(count11(&[1, 1, 1]), 1);
        assert_eq!(count11(&[0, 1, 1, 0]), 0);
    }

    #[test]
    fn ot_is_correct() {
        for i in 0..8u8 {
            let (x0, x1, c) = (i & 1, i >> 1 & 1, i >> 2);
            assert_eq!(ot_correctness(x0, x1, c), int(1));
        }
        assert!(ot_run(1, 0, 1).iter().all(|r| r.output == 0));
        assert!(ot_run(0, 0, 1).iter().all(|r| r.output == 0));
        for r in ot_run(1, 1, 0) {
            assert_eq!(r.m, r.x0 ^ r.a);
            assert_eq!(r.output, r.m ^ r.b);
        }
    }

    #[test]
    fn ot_privacy() {
        let p = ot_privacy_report();
        assert_eq!(p.sender_leak, int(0));
        assert_eq!(p.receiver_leak, int(0));
    }

    #[test]
    fn ot_leaks_with_a_broken_box() {
        // A box whose Alice outcome reveals y lets the sender learn c.
        let b = CorrBox::from_fn(|a, bb, _, y| if a == y && bb == 0 { int(1) } else { int(0) }).unwrap();
        let runs0 = ot_run_with(&b, 0, 0, 0);
        let runs1 = ot_run_with(&b, 0, 0, 1);
        assert_ne!(runs0[0].a, runs1[0].a);
    }

    #[test]
    fn reduction_attack() {
        let r = ot_reduction_attack();
        assert_eq!(r.honest, half());
        assert_eq!(r.cheating, int(1));
        assert_eq!(r.sender_view_distance, int(0));
    }

    #[test]
    fn honest_commitments_accept() {
        for (c, n, k) in [(0, 1, 1), (1, 2, 2), (1, 1, 3)] {
            let t = bc_honest_run(c, n, k, 42).unwrap();
            assert!(t.accepted);
            assert_eq!(t.rounds.len(), k);
            assert!(t.rounds.iter().all(|r| r.x.len() == 2 * n + 1));
        }
        assert_eq!(bc_honest_accept_probability(0, 1, 2).unwrap(), int(1));
        assert_eq!(bc_honest_accept_probability(1, 2, 1).unwrap(), int(1));
    }

    #[test]
    fn tampering_is_caught() {
        for flip in 0..3 {
            assert!(bc_tamper_accusation(0, 1, flip).unwrap() > int(0));
        }
        // Flipping the parity bit always breaks the parity check.
        assert_eq!(bc_tamper_accusation(1, 1, 2).unwrap(), int(1));
    }

    /// Oracle: non-adaptive Bob, y fixed per round, guess from the full view.
    fn hiding_brute(n: usize, k: usize) -> Rat {
        let len = 2 * n + 1;
        let tables: Vec<[Vec<Rat>; 2]> = (0..1usize << len)
            .map(|yv| {
                let y = bits(yv, len);
                [bob_view_likelihoods(n, &y, 0), bob_view_likelihoods(n, &y, 1)]
            })
            .collect();
        let mut best = Rat::zero();
        let choices = tables.len().pow(k as u32);
        for choice in 0..choices {
            let ys: Vec<usize> = (0..k).map(|r| choice / tables.len().pow(r as u32) % tables.len()).collect();
            let views = 1usize << ((len + 1) * k);
            let mut total = Rat::zero();
            for v in 0..views {
                let mut p = [Rat::one(), Rat::one()];
                for (r, &y) in ys.iter().enumerate() {
                    let o = v >> ((len + 1) * r) & ((1 << (len + 1)) - 1);
                    for c in 0..2 {
                        p[c] *= &tables[y][c][o];
                    }
                }
                total += p[0].clone().max(p[1].clone());
            }
            best = best.max(total * half());
        }
        best
    }

    #[test]
    fn hiding_values() {
        assert_eq!(bc_hiding_advantage(1, 0).unwrap(), half());
        for n in 1..=2 {
            for k in 1..=2 {
                let v = bc_hiding_advantage(n, k).unwrap();
                assert!(v <= hiding_reference(n, k), "n={n} k={k} v={v}");
            }
        }
        assert_eq!(bc_hiding_advantage(1, 1).unwrap(), hiding_brute(1, 1));
        assert_eq!(bc_hiding_advantage(1, 2).unwrap(), hiding_brute(1, 2));
        assert_eq!(bc_hiding_advantage(2, 1).unwrap(), hiding_brute(2, 1));
        assert_eq!(bc_hiding_advantage(3, 1), Err(CryptoError::TooLarge));
    }

    #[test]
    fn hiding_monotone() {
        let v = |n, k| bc_hiding_advantage(n, k).unwrap();
        assert!(v(1, 1) <= v(1, 2));
        assert!(v(2, 1) <= v(2, 2));
        assert!(v(2, 1) <= v(1, 1));
        assert!(v(2, 2) <= v(1, 2));
    }

    /// Oracle for one round with n = 1: explicit sum over Bob's y.
    fn binding_brute_n1() -> Rat {
        let len = 3;
        let mut best_round = Rat::zero();
        for xv in 0..8usize {
            let x = bits(xv, len);
            if !honest_commit(&x) {
                continue;
            }
            let mut value = Rat::zero();
            for av in 0..8usize {
                let a = bits(av, len);
                let mut best = Rat::zero();
                for big_a in 0..2u8 {
                    for sx in 0..8usize {
                        for sa in 0..8usize {
                            let (shown_x, shown_a) = (bits(sx, len), bits(sa, len));
                            let mut pass = Rat::zero();
                            for yv in 0..8usize {
                                let y = bits(yv, len);
                                let b: Vec<u8> = (0..len).map(|i| a[i] ^ (x[i] & y[i])).collect();
                                if bc_check(1, &shown_x, &shown_a, big_a, &y, &b) {
                                    pass += rat(1, 8);
                                }
                            }
                            best = best.max(pass);
                        }
                    }
                }
                value += rat(1, 8) * best;
            }
            best_round = best_round.max(value);
        }
        best_round
    }

    #[test]
    fn binding_values() {
        let v11 = bc_binding_advantage(1, 1).unwrap();
        assert_eq!(v11, binding_brute_n1());
        assert!(v11 <= int(1));
        assert_eq!(bc_open_probability(1, 1, false).unwrap(), int(1));
        assert!(bc_binding_advantage(1, 2).unwrap() <= v11);
        assert!(bc_binding_advantage(2, 2).unwrap() <= bc_binding_advantage(2, 1).unwrap());
        assert_eq!(bc_binding_advantage(1, 3), Err(CryptoError::TooLarge));
    }
}
