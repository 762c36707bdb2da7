//! Distributed computation with non-local boxes: GF(2) normal forms, van
//! Dam's protocol, noisy success probabilities, the `B_cc` threshold and an
//! n-party simulation of parity correlations.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::boxes::{self, CorrBox};
use crate::rat::{common_denominator, rat, scaled_numerators, Rat, Surd};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DistError {
    #[error("truth table has {got} entries, expected {expected}")]
    TableSize { expected: usize, got: usize },
    #[error("bad hex truth table")]
    BadHex,
    #[error("arity beyond the supported cap")]
    ArityTooLarge,
    #[error("expected a two-party function")]
    NotBipartite,
    #[error("input box is signalling")]
    SignallingInput,
    #[error("probabilities too fine for fixed-width arithmetic")]
    TooLarge,
}

/// A Boolean function of several parties' bit strings. Input index packs
/// party 0's bits lowest, then party 1's, and so on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoolFn {
    arity: Vec<usize>,
    table: Vec<bool>,
}

impl BoolFn {
    pub fn new(arity: Vec<usize>, table: Vec<bool>) -> Result<Self, DistError> {
        let bits: usize = arity.iter().sum();
        if bits >= usize::BITS as usize - 1 {
            return Err(DistError::ArityTooLarge);
        }
        if table.len() != 1 << bits {
            return Err(DistError::TableSize {
                expected: 1 << bits,
                got: table.len(),
            });
        }
        Ok(BoolFn { arity, table })
    }

    pub fn from_fn(arity: Vec<usize>, f: impl FnMut(usize) -> bool) -> Result<Self, DistError> {
        let bits: usize = arity.iter().sum();
        if bits >= 24 {
            return Err(DistError::ArityTooLarge);
        }
        BoolFn::new(arity, (0..1usize << bits).map(f).collect())
    }

    /// `f(x, y)` with `x` and `y` of `n` bits each; bit `i` of the packed
    /// words is `f(x | y << n)`.
    pub fn bipartite_from_bits(n: usize, bits: &[u64]) -> Result<Self, DistError> {
        let len = 1usize << (2 * n);
        if bits.len() != len.div_ceil(64) {
            return Err(DistError::TableSize {
                expected: len,
                got: bits.len() * 64,
            });
        }
        BoolFn::from_fn(vec![n, n], |i| bits[i / 64] >> (i % 64) & 1 == 1)
    }

    /// Hex truth table, most significant digit first; bit `i` of the number
    /// is the value at input index `i`. Shorter strings are zero-extended.
    pub fn from_hex(arity: Vec<usize>, hex: &str) -> Result<Self, DistError> {
        let hex = hex.trim();
        let hex = hex.strip_prefix("0x").unwrap_or(hex);
        let bits: usize = arity.iter().sum();
        if bits >= 24 {
            return Err(DistError::ArityTooLarge);
        }
        let len = 1usize << bits;
        if hex.is_empty() || hex.len() * 4 > len.max(4) {
            return Err(DistError::BadHex);
        }
        let mut table = vec![false; len];
        for (k, ch) in hex.chars().rev().enumerate() {
            let d = ch.to_digit(16).ok_or(DistError::BadHex)?;
            for j in 0..4 {
                if d >> j & 1 == 1 {
                    let i = 4 * k + j;
                    if i >= len {
                        return Err(DistError::BadHex);
                    }
                    table[i] = true;
                }
            }
        }
        BoolFn::new(arity, table)
    }

    /// Inverse of [`BoolFn::from_hex`].
    pub fn to_hex(&self) -> alloc::string::String {
        let digits = self.table.len().div_ceil(4);
        (0..digits)
            .rev()
            .map(|k| {
                let d = (0..4).fold(0u32, |acc, j| {
                    acc | u32::from(self.table.get(4 * k + j).copied().unwrap_or(false)) << j
                });
                char::from_digit(d, 16).expect("hex digit")
            })
            .collect()
    }

    pub fn arity(&self) -> &[usize] {
        &self.arity
    }

    pub fn parties(&self) -> usize {
        self.arity.len()
    }

    pub fn bits(&self) -> usize {
        self.arity.iter().sum()
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    pub fn eval(&self, index: usize) -> bool {
        self.table[index]
    }

    /// Packs per-party inputs into an input index.
    pub fn pack(&self, inputs: &[usize]) -> usize {
        let mut idx = 0;
        let mut shift = 0;
        for (&v, &k) in inputs.iter().zip(&self.arity) {
            idx |= (v & ((1 << k) - 1)) << shift;
            shift += k;
        }
        idx
    }

    pub fn unpack(&self, index: usize) -> Vec<usize> {
        let mut shift = 0;
        self.arity
            .iter()
            .map(|&k| {
                let v = index >> shift & ((1 << k) - 1);
                shift += k;
                v
            })
            .collect()
    }

    fn party_mask(&self, party: usize) -> usize {
        let shift: usize = self.arity[..party].iter().sum();
        ((1 << self.arity[party]) - 1) << shift
    }
}

/// Monomials of the algebraic normal form, each a mask over input bits,
/// in increasing order.
pub fn anf(f: &BoolFn) -> Vec<usize> {
    let mut c: Vec<bool> = f.table.clone();
    let n = f.bits();
    for i in 0..n {
        for m in 0..c.len() {
            if m >> i & 1 == 1 {
                c[m] ^= c[m ^ (1 << i)];
            }
        }
    }
    c.iter()
        .enumerate()
        .filter_map(|(m, &v)| v.then_some(m))
        .collect()
}

/// XOR of monomials evaluated at `index`.
pub fn eval_anf(monomials: &[usize], index: usize) -> bool {
    monomials.iter().fold(false, |acc, &m| acc ^ (index & m == m))
}

/// `P(x)·Q(y)` with `P` an XOR of x-monomials and `Q` a single y-monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub p: Vec<usize>,
    pub q: usize,
}

impl Term {
    pub fn eval_p(&self, x: usize) -> bool {
        eval_anf(&self.p, x)
    }

    pub fn eval_q(&self, y: usize) -> bool {
        y & self.q == self.q
    }
}

/// `f(x, y) = ⊕ᵢ Pᵢ(x)·Qᵢ(y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredForm {
    pub n: usize,
    pub terms: Vec<Term>,
}

impl FactoredForm {
    pub fn eval(&self, x: usize, y: usize) -> bool {
        self.terms
            .iter()
            .fold(false, |acc, t| acc ^ (t.eval_p(x) & t.eval_q(y)))
    }

    /// Whether the form reproduces `f` on every input.
    pub fn is_valid_for(&self, f: &BoolFn) -> bool {
        let n = self.n;
        (0..f.table.len()).all(|i| self.eval(i & ((1 << n) - 1), i >> n) == f.eval(i))
    }
}

fn check_bipartite(f: &BoolFn) -> Result<usize, DistError> {
    match f.arity() {
        [n, m] if n == m => Ok(*n),
        _ => Err(DistError::NotBipartite),
    }
}

/// Groups the ANF by y-monomial, giving at most `2ⁿ` terms.
pub fn factor_bipartite(f: &BoolFn) -> Result<FactoredForm, DistError> {
    let n = check_bipartite(f)?;
    let xmask = (1 << n) - 1;
    let mut terms: Vec<Term> = Vec::new();
    // ANF monomials come sorted by mask; bucket them by their y-part.
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); 1 << n];
    for m in anf(f) {
        buckets[m >> n].push(m & xmask);
    }
    for (q, p) in buckets.into_iter().enumerate() {
        if !p.is_empty() {
            terms.push(Term { p, q });
        }
    }
    Ok(FactoredForm { n, terms })
}

/// Joint distribution of `(a, b)` in van Dam's protocol: term `i` feeds
/// `Pᵢ(x)`, `Qᵢ(y)` into box `i` (a copy of `b`), and each party outputs the
/// XOR of its box outcomes. Entry `a | b << 1`.
pub fn van_dam_distribution(
    form: &FactoredForm,
    x: usize,
    y: usize,
    b: &CorrBox,
) -> Result<[Rat; 4], DistError> {
    if !b.is_nonsignalling() {
        return Err(DistError::SignallingInput);
    }
    let denom = common_denominator(b.table());
    let m = form.terms.len();
    if denom.bits() as usize * m.max(1) > 100 {
        return Err(DistError::TooLarge);
    }
    let p = scaled_numerators(b.table(), &denom).ok_or(DistError::TooLarge)?;
    let state = distribution_scaled(form, x, y, &p);
    let scale = denom.pow(m as u32);
    Ok(state.map(|w| Rat::new(BigInt::from(w), scale.clone())))
}

/// Branch sum over the boxes with the table scaled to integers.
fn distribution_scaled(form: &FactoredForm, x: usize, y: usize, p: &[i128]) -> [i128; 4] {
    let mut state = [0i128; 4];
    state[0] = 1;
    for t in &form.terms {
        let (u, v) = (u8::from(t.eval_p(x)), u8::from(t.eval_q(y)));
        let mut next = [0i128; 4];
        for (s, &w) in state.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for a in 0..2u8 {
                for bb in 0..2u8 {
                    let q = p[boxes::index(a, bb, u, v)];
                    if q != 0 {
                        next[s ^ (a | bb << 1) as usize] += w * q;
                    }
                }
            }
        }
        state = next;
    }
    state
}

/// Probability that van Dam's protocol outputs `a ⊕ b = f(x, y)`.
pub fn van_dam_success(form: &FactoredForm, f: &BoolFn, x: usize, y: usize, b: &CorrBox) -> Result<Rat, DistError> {
    let d = van_dam_distribution(form, x, y, b)?;
    let target = f.eval(x | y << form.n);
    Ok(if target {
        &d[1] + &d[2]
    } else {
        &d[0] + &d[3]
    })
}

/// `(a, b)` pairs reachable with perfect PR boxes; every one satisfies
/// `a ⊕ b = f(x, y)` when the protocol is correct.
pub fn van_dam_run(f: &BoolFn, x: usize, y: usize) -> Result<Vec<(u8, u8)>, DistError> {
    let form = factor_bipartite(f)?;
    let d = van_dam_distribution(&form, x, y, &boxes::pr())?;
    Ok((0..4u8)
        .filter(|&s| !d[s as usize].is_zero())
        .map(|s| (s & 1, s >> 1))
        .collect())
}

/// Whether van Dam's protocol with PR boxes puts all probability on
/// `a ⊕ b = f(x, y)` for every input. Runs on integer weights so it is cheap
/// enough for exhaustive sweeps.
pub fn van_dam_check_all(f: &BoolFn) -> Result<bool, DistError> {
    let form = factor_bipartite(f)?;
    let n = form.n;
    let pr = boxes::pr();
    let denom = common_denominator(pr.table());
    let p = scaled_numerators(pr.table(), &denom).expect("small denominators");
    Ok((0..f.table.len()).all(|i| {
        let d = distribution_scaled(&form, i & ((1 << n) - 1), i >> n, &p);
        let wrong = if f.eval(i) { d[0] + d[3] } else { d[1] + d[2] };
        wrong == 0
    }))
}

/// Probability that the parity of `m` independent boxes, each correct with
/// probability `p`, is correct: `(1 + (2p − 1)^m)/2`.
pub fn noisy_parity_success(m: u32, p: &Rat) -> Rat {
    let bias = Rat::from_integer(2.into()) * p - Rat::one();
    (Rat::one() + num_traits::pow(bias, m as usize)) / Rat::from_integer(2.into())
}

/// CHSH value of an isotropic box winning the CHSH game with probability `p`.
pub fn chsh_of_success(p: &Rat) -> Rat {
    Rat::from_integer(8.into()) * p - Rat::from_integer(4.into())
}

/// `8p − 4` for a surd `p`.
pub fn chsh_of_success_surd(p: &Surd) -> Surd {
    p.scale(&Rat::from_integer(8.into())).add_rat(&Rat::from_integer((-4).into()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct BccReport {
    pub value: f64,
    /// `(3 + √6)/6`.
    pub threshold_success: Surd,
    pub chsh_at_threshold: Surd,
    /// Exact square of `chsh_at_threshold`; `32/3` when consistent.
    pub squared: Rat,
}

/// `B_cc = 4√(2/3)` with an exact check that `8p − 4` at the success
/// threshold `(3 + √6)/6` squares to `32/3`.
pub fn bcc_constant() -> BccReport {
    let p = Surd::new(rat(1, 2), rat(1, 6), 6);
    let chsh = chsh_of_success_surd(&p);
    let sq = chsh.square();
    let squared = sq.as_rational().cloned().expect("surd part cancels");
    BccReport {
        value: 4.0 * libm::sqrt(2.0 / 3.0),
        threshold_success: p,
        chsh_at_threshold: chsh,
        squared,
    }
}

/// `B_cc² = 32/3`.
pub fn bcc_squared() -> Rat {
    rat(32, 3)
}

/// Largest party count [`bp_simulate`] accepts.
pub const BP_MAX_PARTIES: usize = 4;
/// Largest total input bit count [`bp_simulate`] accepts.
pub const BP_MAX_BITS: usize = 8;

/// A box shared by `n` parties: entry `[input index][output vector]`, output
/// bit `i` belonging to party `i`; input indices follow [`BoolFn::pack`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartyBox {
    arity: Vec<usize>,
    table: Vec<Vec<Rat>>,
}

impl PartyBox {
    pub fn parties(&self) -> usize {
        self.arity.len()
    }

    pub fn arity(&self) -> &[usize] {
        &self.arity
    }

    pub fn p(&self, input: usize, outputs: usize) -> &Rat {
        &self.table[input][outputs]
    }

    /// Uniform on outputs with parity `f(x⃗)`: `1/2^{n−1}` there, 0 elsewhere.
    pub fn parity_target(f: &BoolFn) -> PartyBox {
        let n = f.parties();
        let w = Rat::new(1.into(), BigInt::from(1u64 << (n - 1)));
        let table = (0..f.table.len())
            .map(|i| {
                (0..1usize << n)
                    .map(|o| {
                        if ((o.count_ones() & 1) == 1) == f.eval(i) {
                            w.clone()
                        } else {
                            Rat::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        PartyBox {
            arity: f.arity.clone(),
            table,
        }
    }

    fn input_mask(&self, parties: usize) -> usize {
        let mut mask = 0;
        let mut shift = 0;
        for (i, &k) in self.arity.iter().enumerate() {
            if parties >> i & 1 == 1 {
                mask |= ((1 << k) - 1) << shift;
            }
            shift += k;
        }
        mask
    }

    /// Marginal of the outputs of the parties in `subset` (bitmask).
    pub fn marginal(&self, subset: usize, input: usize) -> Vec<Rat> {
        let n = self.parties();
        let mut out = vec![Rat::zero(); 1 << n];
        for (o, w) in self.table[input].iter().enumerate() {
            out[o & subset] += w;
        }
        out
    }

    /// Every marginal on a proper subset of parties is independent of the
    /// other parties' inputs.
    pub fn is_nonsignalling(&self) -> bool {
        let n = self.parties();
        let inputs = self.table.len();
        (1..(1usize << n) - 1).all(|s| {
            let own = self.input_mask(s);
            (0..inputs).all(|i| {
                let base = i & own;
                i == base || self.marginal(s, i) == self.marginal(s, base)
            })
        })
    }

    /// Every single-party output is uniform on every input.
    pub fn has_uniform_marginals(&self) -> bool {
        let h = Rat::new(1.into(), 2.into());
        (0..self.parties()).all(|p| {
            (0..self.table.len()).all(|i| {
                let m = self.marginal(1 << p, i);
                m[0] == h && m[1 << p] == h
            })
        })
    }
}

/// XOR-shares of one ANF monomial: `shares[j] = (holder, value)`.
/// `factors` are `(party, local bit)` in party order; PR boxes are drawn
/// from `branch`, one bit per box, consumed lowest first.
fn monomial_shares(factors: &[(usize, bool)], branch: &mut u64) -> Vec<(usize, bool)> {
    let mut shares = vec![factors[0]];
    for &(party, z) in &factors[1..] {
        let mut next = Vec::with_capacity(2 * shares.len());
        for &(holder, s) in &shares {
            // PR box between holder (input s) and party (input z): α ⊕ β = s·z.
            let alpha = *branch & 1 == 1;
            *branch >>= 1;
            next.push((holder, alpha));
            next.push((party, alpha ^ (s & z)));
        }
        shares = next;
    }
    shares
}

/// Boxes used for a monomial touching `k` parties: `2^{k−1} − 1`.
pub fn boxes_per_monomial(k: usize) -> usize {
    (1usize << k.saturating_sub(1)) - 1
}

/// Distribution of XOR-shares of 0 from a chain of `n − 1` PR boxes fed
/// input 0: box `i` links parties `i` and `i + 1`, whose outcomes agree.
/// Uniform over even-weight output vectors.
fn zero_sharing_mask(n: usize) -> Vec<Rat> {
    let mut mask = vec![Rat::zero(); 1 << n];
    let weight = Rat::new(1.into(), BigInt::from(1u64 << (n - 1)));
    for branch in 0..1usize << (n - 1) {
        let mut out = 0usize;
        for i in 0..n - 1 {
            if branch >> i & 1 == 1 {
                out ^= 0b11 << i;
            }
        }
        mask[out] += &weight;
    }
    mask
}

/// Simulates the `n`-party parity correlation `⊕aᵢ = f(x⃗)` with bipartite
/// PR boxes. Each ANF monomial is a product of per-party local factors; its
/// XOR-shares are built by a chain that multiplies the current shares by the
/// next party's factor, one PR box per existing share. Monomials inside a
/// single party are added locally and the constant monomial goes to party 0.
/// A chain of PR boxes sharing 0 re-randomizes the shares so the outputs are
/// uniform on the parity manifold. Returns the exact joint output table.
pub fn bp_simulate(f: &BoolFn) -> Result<PartyBox, DistError> {
    let n = f.parties();
    if n == 0 || n > BP_MAX_PARTIES || f.bits() > BP_MAX_BITS {
        return Err(DistError::ArityTooLarge);
    }
    let monomials = anf(f);
    let party_masks: Vec<usize> = (0..n).map(|p| f.party_mask(p)).collect();
    let half = Rat::new(1.into(), 2.into());
    let mask = zero_sharing_mask(n);
    let mut table = Vec::with_capacity(f.table.len());
    for input in 0..f.table.len() {
        // Distribution over output vectors, built one monomial at a time.
        let mut dist = vec![Rat::zero(); 1 << n];
        dist[0] = Rat::one();
        for &m in &monomials {
            let factors: Vec<(usize, bool)> = (0..n)
                .filter(|&p| m & party_masks[p] != 0)
                .map(|p| {
                    let pm = m & party_masks[p];
                    (p, input & pm == pm)
                })
                .collect();
            let mut contrib = vec![Rat::zero(); 1 << n];
            if factors.is_empty() {
                contrib[1] = Rat::one();
            } else {
                let k = boxes_per_monomial(factors.len());
                let weight = num_traits::pow(half.clone(), k);
                for branch in 0..1u64 << k {
                    let mut bits = branch;
                    let mut out = 0usize;
                    for (holder, v) in monomial_shares(&factors, &mut bits) {
                        if v {
                            out ^= 1 << holder;
                        }
                    }
                    contrib[out] += &weight;
                }
            }
            let mut next = vec![Rat::zero(); 1 << n];
            for (o1, w1) in dist.iter().enumerate() {
                if w1.is_zero() {
                    continue;
                }
                for (o2, w2) in contrib.iter().enumerate() {
                    if !w2.is_zero() {
                        next[o1 ^ o2] += w1 * w2;
                    }
                }
            }
            dist = next;
        }
        let mut masked = vec![Rat::zero(); 1 << n];
        for (o1, w1) in dist.iter().enumerate() {
            if w1.is_zero() {
                continue;
            }
            for (o2, w2) in mask.iter().enumerate() {
                if !w2.is_zero() {
                    masked[o1 ^ o2] += w1 * w2;
                }
            }
        }
        table.push(masked);
    }
    Ok(PartyBox {
        arity: f.arity.clone(),
        table,
    })
}

/// Communication scenario on top of [`bp_simulate`]: parties `1..n` each
/// send their output bit to party 0, which outputs the XOR of everything it
/// holds. Returns the message count if party 0 is right on every input and
/// every reachable branch.
pub fn parity_broadcast(f: &BoolFn) -> Result<Option<usize>, DistError> {
    let b = bp_simulate(f)?;
    let n = f.parties();
    for input in 0..f.table.len() {
        for o in 0..1usize << n {
            if b.p(input, o).is_zero() {
                continue;
            }
            // Party 0 combines its own bit with the n − 1 received bits.
            let received = (1..n).fold(o & 1 == 1, |acc, p| acc ^ (o >> p & 1 == 1));
            if received != f.eval(input) {
                return Ok(None);
            }
        }
    }
    Ok(Some(n - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boxes::{isotropic, uniform};
    use crate::rat::{half, int};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn bip(n: usize, f: impl Fn(usize, usize) -> bool) -> BoolFn {
        BoolFn::from_fn(vec![n, n], |i| f(i & ((1 << n) - 1), i >> n)).unwrap()
    }

    #[test]
    fn anf_examples() {
        let and = bip(1, |x, y| x & y == 1);
        assert_eq!(anf(&and), vec![0b11]);
        assert!(anf(&bip(2, |_, _| false)).is_empty());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let f = BoolFn::from_fn(vec![2, 2], |_| rng.gen_bool(0.5)).unwrap();
            let m = anf(&f);
            assert!((0..16).all(|i| eval_anf(&m, i) == f.eval(i)));
        }
    }

    #[test]
    fn factoring_examples() {
        // x₁y₁ ⊕ x₂y₁
        let f = bip(2, |x, y| ((x & 1) ^ (x >> 1)) & y & 1 == 1);
        let form = factor_bipartite(&f).unwrap();
        assert_eq!(form.terms, vec![Term { p: vec![0b01, 0b10], q: 0b01 }]);
        let ip = bip(2, |x, y| (x & y).count_ones() & 1 == 1);
        assert_eq!(factor_bipartite(&ip).unwrap().terms.len(), 2);
    }

    #[test]
    fn every_two_bit_function_factors() {
        for bits in 0..1u64 << 16 {
            let f = BoolFn::bipartite_from_bits(2, &[bits]).unwrap();
            let form = factor_bipartite(&f).unwrap();
            assert!(form.terms.len() <= 4);
            assert!(form.is_valid_for(&f));
        }
    }

    #[test]
    fn van_dam_with_pr_boxes() {
        let and = bip(1, |x, y| x & y == 1);
        for i in 0..4 {
            for (a, b) in van_dam_run(&and, i & 1, i >> 1).unwrap() {
                assert_eq!(a ^ b == 1, and.eval(i));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let f = BoolFn::from_fn(vec![3, 3], |_| rng.gen_bool(0.5)).unwrap();
            let form = factor_bipartite(&f).unwrap();
            assert!(form.terms.len() <= 8);
            assert!(van_dam_check_all(&f).unwrap());
            for i in (0..64).step_by(7) {
                let p = van_dam_success(&form, &f, i & 7, i >> 3, &boxes::pr()).unwrap();
                assert_eq!(p, int(1));
            }
        }
    }

    #[test]
    fn van_dam_with_noisy_boxes() {
        let eps = rat(5, 6);
        let b = isotropic(&eps).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..30 {
            let f = BoolFn::from_fn(vec![2, 2], |_| rng.gen_bool(0.5)).unwrap();
            let form = factor_bipartite(&f).unwrap();
            let expected = noisy_parity_success(form.terms.len() as u32, &eps);
            for i in 0..16 {
                assert_eq!(van_dam_success(&form, &f, i & 3, i >> 2, &b).unwrap(), expected);
            }
        }
        let f = bip(1, |x, y| x & y == 1);
        let form = factor_bipartite(&f).unwrap();
        assert_eq!(van_dam_success(&form, &f, 1, 1, &uniform()).unwrap(), half());
    }

    #[test]
    fn noisy_parity_examples() {
        assert_eq!(noisy_parity_success(3, &int(1)), int(1));
        assert_eq!(noisy_parity_success(4, &half()), half());
        // Oracle: sum over the 4 error patterns of two boxes.
        let p = rat(3, 4);
        let q = int(1) - &p;
        let brute = &p * &p + &q * &q;
        assert_eq!(noisy_parity_success(2, &p), brute);
        assert_eq!(brute, rat(5, 8));
    }

    #[test]
    fn bcc_threshold() {
        let r = bcc_constant();
        assert_eq!(r.squared, bcc_squared());
        assert!((r.value - 3.266).abs() < 1e-3);
        assert!((r.chsh_at_threshold.to_f64() - r.value).abs() < 1e-12);
        assert_eq!(chsh_of_success(&int(1)), int(4));
        assert_eq!(chsh_of_success(&half()), int(0));
    }

    fn tri(f: impl Fn(usize) -> bool) -> BoolFn {
        BoolFn::from_fn(vec![1, 1, 1], f).unwrap()
    }

    #[test]
    fn bp_three_party() {
        for f in [tri(|i| i == 7), tri(|i| (i & 1 == 1) ^ (i >> 1 == 3))] {
            let b = bp_simulate(&f).unwrap();
            assert_eq!(b, PartyBox::parity_target(&f));
            assert!(b.is_nonsignalling());
            assert!(b.has_uniform_marginals());
            assert_eq!(parity_broadcast(&f).unwrap(), Some(2));
        }
    }

    #[test]
    fn bp_matches_van_dam_for_two_parties() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..20 {
            let f = BoolFn::from_fn(vec![2, 2], |_| rng.gen_bool(0.5)).unwrap();
            let b = bp_simulate(&f).unwrap();
            let form = factor_bipartite(&f).unwrap();
            for i in 0..16 {
                let d = van_dam_distribution(&form, i & 3, i >> 2, &boxes::pr()).unwrap();
                for o in 0..4 {
                    assert_eq!(b.p(i, o), &d[o]);
                }
            }
        }
    }

    #[test]
    fn bp_four_parties_and_caps() {
        let f = BoolFn::from_fn(vec![1; 4], |i| i == 15 || i == 3).unwrap();
        assert_eq!(bp_simulate(&f).unwrap(), PartyBox::parity_target(&f));
        let g = BoolFn::from_fn(vec![1; 5], |_| false).unwrap();
        assert_eq!(bp_simulate(&g), Err(DistError::ArityTooLarge));
        assert_eq!(boxes_per_monomial(4), 7);
    }

    #[test]
    fn hex_round_trip() {
        let f = BoolFn::from_hex(vec![1, 1], "8").unwrap();
        assert_eq!(f, bip(1, |x, y| x & y == 1));
        assert_eq!(f.to_hex(), "8");
        let g = BoolFn::from_hex(vec![2, 2], "0x6ac3").unwrap();
        assert_eq!(g.to_hex(), "6ac3");
        assert_eq!(BoolFn::from_hex(vec![1, 1], "1f"), Err(DistError::BadHex));
        assert_eq!(BoolFn::from_hex(vec![1, 1], "g"), Err(DistError::BadHex));
    }
}
