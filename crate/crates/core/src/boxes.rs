//! Bipartite two-input/two-output boxes.
//!
//! A [`CorrBox`] is the exact conditional table `P(a,b|x,y)` with
//! `a, b, x, y ∈ {0,1}`. Construction validates positivity and
//! normalization; non-signalling is checked separately since signalling
//! boxes are legitimate inputs to the classifiers.

use alloc::vec::Vec;
use core::array;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::rat::{rat, Frac, Rat};

/// Table position of `P(a,b|x,y)`; entries are stored in sorted `(x,y,a,b)` order.
#[inline]
pub const fn index(a: u8, b: u8, x: u8, y: u8) -> usize {
    ((x as usize) << 3) | ((y as usize) << 2) | ((a as usize) << 1) | b as usize
}

/// `(a, b, x, y)` for a table position.
#[inline]
pub const fn unindex(i: usize) -> (u8, u8, u8, u8) {
    (
        ((i >> 1) & 1) as u8,
        (i & 1) as u8,
        ((i >> 3) & 1) as u8,
        ((i >> 2) & 1) as u8,
    )
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoxError {
    #[error("negative probability at (a,b,x,y) = ({a},{b},{x},{y})")]
    NegativeProbability { a: u8, b: u8, x: u8, y: u8 },
    #[error("column (x,y) = ({x},{y}) sums to {sum} instead of 1")]
    NotNormalized { x: u8, y: u8, sum: Rat },
    #[error("mixture weights must be non-negative, sum to 1 and match the box count")]
    BadWeights,
    #[error("parameter out of range: {0}")]
    BadParam(&'static str),
}

/// Where a box fails non-signalling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignallingWitness {
    /// Alice's marginal `P(a|x)` differs between Bob inputs `y` and `y2`.
    Alice { a: u8, x: u8, y: u8, y2: u8 },
    /// Bob's marginal `P(b|y)` differs between Alice inputs `x` and `x2`.
    Bob { b: u8, x: u8, x2: u8, y: u8 },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CorrBox {
    table: [Rat; 16],
}

impl fmt::Debug for CorrBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_map();
        for (i, p) in self.table.iter().enumerate() {
            let (a, b, x, y) = unindex(i);
            list.entry(&format_args!("{a}{b}|{x}{y}"), &format_args!("{}", Frac(p)));
        }
        list.finish()
    }
}

impl CorrBox {
    /// Validating constructor over a table in [`index`] order.
    pub fn new(table: [Rat; 16]) -> Result<Self, BoxError> {
        for (i, p) in table.iter().enumerate() {
            if p.is_negative() {
                let (a, b, x, y) = unindex(i);
                return Err(BoxError::NegativeProbability { a, b, x, y });
            }
        }
        for x in 0..2 {
            for y in 0..2 {
                let sum: Rat = (0..4).map(|ab| &table[(x << 3) | (y << 2) | ab]).sum();
                if !sum.is_one() {
                    return Err(BoxError::NotNormalized {
                        x: x as u8,
                        y: y as u8,
                        sum,
                    });
                }
            }
        }
        Ok(CorrBox { table })
    }

    /// Builds a box from `f(a, b, x, y)`.
    pub fn from_fn(mut f: impl FnMut(u8, u8, u8, u8) -> Rat) -> Result<Self, BoxError> {
        Self::new(array::from_fn(|i| {
            let (a, b, x, y) = unindex(i);
            f(a, b, x, y)
        }))
    }

    pub(crate) fn from_fn_unchecked(mut f: impl FnMut(u8, u8, u8, u8) -> Rat) -> Self {
        let b = CorrBox {
            table: array::from_fn(|i| {
                let (a, b, x, y) = unindex(i);
                f(a, b, x, y)
            }),
        };
        debug_assert!(Self::new(b.table.clone()).is_ok());
        b
    }

    #[inline]
    pub fn p(&self, a: u8, b: u8, x: u8, y: u8) -> &Rat {
        &self.table[index(a, b, x, y)]
    }

    pub fn table(&self) -> &[Rat; 16] {
        &self.table
    }

    pub fn into_table(self) -> [Rat; 16] {
        self.table
    }

    pub fn alice_marginal(&self, a: u8, x: u8, y: u8) -> Rat {
        self.p(a, 0, x, y) + self.p(a, 1, x, y)
    }

    pub fn bob_marginal(&self, b: u8, x: u8, y: u8) -> Rat {
        self.p(0, b, x, y) + self.p(1, b, x, y)
    }

    /// First violated marginal condition, if any.
    pub fn signalling_witness(&self) -> Option<SignallingWitness> {
        for a in 0..2 {
            for x in 0..2 {
                if self.alice_marginal(a, x, 0) != self.alice_marginal(a, x, 1) {
                    return Some(SignallingWitness::Alice { a, x, y: 0, y2: 1 });
                }
            }
        }
        for b in 0..2 {
            for y in 0..2 {
                if self.bob_marginal(b, 0, y) != self.bob_marginal(b, 1, y) {
                    return Some(SignallingWitness::Bob { b, x: 0, x2: 1, y });
                }
            }
        }
        None
    }

    pub fn is_nonsignalling(&self) -> bool {
        self.signalling_witness().is_none()
    }

    /// `X_xy = P(00|xy) + P(11|xy) − P(01|xy) − P(10|xy)`.
    pub fn correlator(&self, x: u8, y: u8) -> Rat {
        self.p(0, 0, x, y) + self.p(1, 1, x, y) - self.p(0, 1, x, y) - self.p(1, 0, x, y)
    }

    /// The four signed CHSH combinations. Entry `2x + y` holds
    /// `X_xy + X_xȳ + X_x̄y − X_x̄ȳ`; entry 0 is the canonical
    /// `S = X00 + X01 + X10 − X11`.
    pub fn chsh_expressions(&self) -> [Rat; 4] {
        let c: [Rat; 4] = array::from_fn(|i| self.correlator((i >> 1) as u8, (i & 1) as u8));
        array::from_fn(|i| {
            let (x, y) = (i >> 1, i & 1);
            let at = |x: usize, y: usize| &c[(x << 1) | y];
            at(x, y) + at(x, 1 - y) + at(1 - x, y) - at(1 - x, 1 - y)
        })
    }

    /// `max |X_xy + X_xȳ + X_x̄y − X_x̄ȳ|` over the four placements.
    pub fn chsh(&self) -> Rat {
        self.chsh_expressions()
            .iter()
            .map(|s| s.abs())
            .max()
            .expect("four expressions")
    }

    /// The canonical combination `S = X00 + X01 + X10 − X11`.
    pub fn chsh_canonical(&self) -> Rat {
        self.chsh_expressions()[0].clone()
    }

    /// Exchanges the roles of Alice and Bob. Not a member of the relabeling group.
    pub fn swap_parties(&self) -> CorrBox {
        CorrBox::from_fn_unchecked(|a, b, x, y| self.p(b, a, y, x).clone())
    }
}

/// Entrywise convex combination.
pub fn mix(boxes: &[CorrBox], weights: &[Rat]) -> Result<CorrBox, BoxError> {
    if boxes.is_empty()
        || boxes.len() != weights.len()
        || weights.iter().any(|w| w.is_negative())
        || !weights.iter().sum::<Rat>().is_one()
    {
        return Err(BoxError::BadWeights);
    }
    Ok(CorrBox::from_fn_unchecked(|a, b, x, y| {
        boxes
            .iter()
            .zip(weights)
            .map(|(bx, w)| w * bx.p(a, b, x, y))
            .sum()
    }))
}

fn parity_box(mut rule: impl FnMut(u8, u8, u8, u8) -> bool) -> CorrBox {
    CorrBox::from_fn_unchecked(|a, b, x, y| {
        if rule(a, b, x, y) {
            rat(1, 2)
        } else {
            Rat::zero()
        }
    })
}

/// PR box: `a ⊕ b = xy` with probability 1, each output uniform.
pub fn pr() -> CorrBox {
    parity_box(|a, b, x, y| a ^ b == x & y)
}

/// Anti-PR box: `a ⊕ b ≠ xy`.
pub fn anti_pr() -> CorrBox {
    parity_box(|a, b, x, y| a ^ b != x & y)
}

/// Fully correlated box: `a = b`, uniform.
pub fn correlated() -> CorrBox {
    parity_box(|a, b, _, _| a == b)
}

pub fn uniform() -> CorrBox {
    CorrBox::from_fn_unchecked(|_, _, _, _| rat(1, 4))
}

fn check_unit(eps: &Rat) -> Result<(), BoxError> {
    if eps.is_negative() || *eps > Rat::one() {
        return Err(BoxError::BadParam("mixing parameter must lie in [0, 1]"));
    }
    Ok(())
}

/// Isotropic (noisy symmetric) box `P_ε = ε·PR + (1−ε)·antiPR`.
pub fn isotropic(eps: &Rat) -> Result<CorrBox, BoxError> {
    check_unit(eps)?;
    mix(&[pr(), anti_pr()], &[eps.clone(), Rat::one() - eps])
}

/// Correlated non-local box `P^C_ε = ε·PR + (1−ε)·C`.
pub fn correlated_nonlocal(eps: &Rat) -> Result<CorrBox, BoxError> {
    check_unit(eps)?;
    mix(&[pr(), correlated()], &[eps.clone(), Rat::one() - eps])
}

/// Deterministic local vertex `a = αx ⊕ β`, `b = γy ⊕ δ`.
pub fn local_vertex(alpha: u8, beta: u8, gamma: u8, delta: u8) -> CorrBox {
    CorrBox::from_fn_unchecked(|a, b, x, y| {
        if a == (alpha & x) ^ beta && b == (gamma & y) ^ delta {
            Rat::one()
        } else {
            Rat::zero()
        }
    })
}

/// Non-local vertex `a ⊕ b = xy ⊕ αx ⊕ βy ⊕ γ`.
pub fn nonlocal_vertex(alpha: u8, beta: u8, gamma: u8) -> CorrBox {
    parity_box(|a, b, x, y| a ^ b == (x & y) ^ (alpha & x) ^ (beta & y) ^ gamma)
}

/// All sixteen local vertices, indexed by `8α + 4β + 2γ + δ`.
pub fn local_vertices() -> Vec<CorrBox> {
    (0..16u8)
        .map(|i| local_vertex(i >> 3 & 1, i >> 2 & 1, i >> 1 & 1, i & 1))
        .collect()
}

/// All eight non-local vertices, indexed by `4α + 2β + γ`.
pub fn nonlocal_vertices() -> Vec<CorrBox> {
    (0..8u8)
        .map(|i| nonlocal_vertex(i >> 2 & 1, i >> 1 & 1, i & 1))
        .collect()
}

/// Named constructors, addressable by mnemonic from the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NamedBox {
    Pr,
    AntiPr,
    Correlated,
    Uniform,
    Isotropic(Rat),
    CorrelatedNonlocal(Rat),
    LocalVertex([u8; 4]),
    NonlocalVertex([u8; 3]),
}

impl NamedBox {
    pub fn build(&self) -> Result<CorrBox, BoxError> {
        let bits = |v: &[u8]| v.iter().all(|&b| b < 2);
        Ok(match self {
            NamedBox::Pr => pr(),
            NamedBox::AntiPr => anti_pr(),
            NamedBox::Correlated => correlated(),
            NamedBox::Uniform => uniform(),
            NamedBox::Isotropic(e) => isotropic(e)?,
            NamedBox::CorrelatedNonlocal(e) => correlated_nonlocal(e)?,
            NamedBox::LocalVertex(p) if bits(p) => local_vertex(p[0], p[1], p[2], p[3]),
            NamedBox::NonlocalVertex(p) if bits(p) => nonlocal_vertex(p[0], p[1], p[2]),
            _ => return Err(BoxError::BadParam("vertex labels must be bits")),
        })
    }
}

/// One party's reversible local operation: flip the input, then
/// relabel the output as `out ⊕ coef·input ⊕ constant`, where `input`
/// is the party's external input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct LocalRelabel {
    pub flip_input: u8,
    pub out_coef: u8,
    pub out_const: u8,
}

impl LocalRelabel {
    pub const IDENTITY: LocalRelabel = LocalRelabel {
        flip_input: 0,
        out_coef: 0,
        out_const: 0,
    };

    fn from_bits(i: u8) -> Self {
        LocalRelabel {
            flip_input: i >> 2 & 1,
            out_coef: i >> 1 & 1,
            out_const: i & 1,
        }
    }

    fn bits(self) -> u8 {
        self.flip_input << 2 | self.out_coef << 1 | self.out_const
    }

    /// Output the box must have produced for external `(input, out)`.
    #[inline]
    fn box_output(self, input: u8, out: u8) -> u8 {
        out ^ (self.out_coef & input) ^ self.out_const
    }

    /// `self` applied after `inner`.
    pub fn after(self, inner: LocalRelabel) -> LocalRelabel {
        LocalRelabel {
            flip_input: self.flip_input ^ inner.flip_input,
            out_coef: self.out_coef ^ inner.out_coef,
            out_const: self.out_const ^ inner.out_const ^ (inner.out_coef & self.flip_input),
        }
    }

    pub fn inverse(self) -> LocalRelabel {
        LocalRelabel {
            flip_input: self.flip_input,
            out_coef: self.out_coef,
            out_const: self.out_const ^ (self.out_coef & self.flip_input),
        }
    }
}

/// Element of the 64-element group of reversible local operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Relabel {
    pub alice: LocalRelabel,
    pub bob: LocalRelabel,
}

impl Relabel {
    pub const IDENTITY: Relabel = Relabel {
        alice: LocalRelabel::IDENTITY,
        bob: LocalRelabel::IDENTITY,
    };

    /// All group elements in a fixed order.
    pub fn all() -> impl Iterator<Item = Relabel> {
        (0..64u8).map(Relabel::from_index)
    }

    pub fn from_index(i: u8) -> Relabel {
        Relabel {
            alice: LocalRelabel::from_bits(i >> 3 & 7),
            bob: LocalRelabel::from_bits(i & 7),
        }
    }

    pub fn to_index(self) -> u8 {
        self.alice.bits() << 3 | self.bob.bits()
    }

    /// `self` applied after `inner`.
    pub fn after(self, inner: Relabel) -> Relabel {
        Relabel {
            alice: self.alice.after(inner.alice),
            bob: self.bob.after(inner.bob),
        }
    }

    pub fn inverse(self) -> Relabel {
        Relabel {
            alice: self.alice.inverse(),
            bob: self.bob.inverse(),
        }
    }

    /// Pushforward of `b` under this operation.
    pub fn apply(self, b: &CorrBox) -> CorrBox {
        let (ra, rb) = (self.alice, self.bob);
        CorrBox::from_fn_unchecked(|a, bb, x, y| {
            b.p(
                ra.box_output(x, a),
                rb.box_output(y, bb),
                x ^ ra.flip_input,
                y ^ rb.flip_input,
            )
            .clone()
        })
    }
}

/// Some group element mapping `from` onto `to`, if one exists.
pub fn equivalent(from: &CorrBox, to: &CorrBox) -> Option<Relabel> {
    Relabel::all().find(|r| r.apply(from) == *to)
}

/// Relabel placing the CHSH maximizer at the canonical position with a
/// positive sign, so that `chsh_canonical` of the image equals `chsh`.
pub fn canonicalizing_relabel(b: &CorrBox) -> Relabel {
    let target = b.chsh();
    Relabel::all()
        .find(|r| r.apply(b).chsh_canonical() == target)
        .expect("the group acts transitively on the eight CHSH symmetrizations")
}

pub fn canonicalize(b: &CorrBox) -> CorrBox {
    canonicalizing_relabel(b).apply(b)
}
