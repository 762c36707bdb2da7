//! Tripartite boxes and boxes with larger output alphabets.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::boxes::{self, CorrBox};
use crate::linalg;
use crate::lp::{self, Feasibility};
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MultiError {
    #[error("negative probability")]
    NegativeProbability,
    #[error("probabilities for one input do not sum to 1")]
    NotNormalized,
    #[error("box is signalling")]
    Signalling,
    #[error("expected {expected} entries, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("bad parameter: {0}")]
    BadParam(&'static str),
    #[error("output counts are not coprime")]
    NotCoprime,
}

/// Position of `P(abc|xyz)`: inputs high, then outputs, each in party order.
#[inline]
pub fn tri_index(a: u8, b: u8, c: u8, x: u8, y: u8, z: u8) -> usize {
    (x as usize) << 5 | (y as usize) << 4 | (z as usize) << 3 | (a as usize) << 2 | (b as usize) << 1 | c as usize
}

#[inline]
pub fn tri_unindex(i: usize) -> [u8; 6] {
    let bit = |k: usize| (i >> k & 1) as u8;
    [bit(2), bit(1), bit(0), bit(5), bit(4), bit(3)]
}

/// `P(abc|xyz)` with binary inputs and outputs.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TriBox {
    table: Vec<Rat>,
}

impl TriBox {
    pub fn new(table: Vec<Rat>) -> Result<Self, MultiError> {
        if table.len() != 64 {
            return Err(MultiError::SizeMismatch {
                expected: 64,
                got: table.len(),
            });
        }
        if table.iter().any(Signed::is_negative) {
            return Err(MultiError::NegativeProbability);
        }
        if table.chunks(8).any(|col| !col.iter().sum::<Rat>().is_one()) {
            return Err(MultiError::NotNormalized);
        }
        Ok(TriBox { table })
    }

    /// `f(a, b, c, x, y, z)`.
    pub fn from_fn(mut f: impl FnMut(u8, u8, u8, u8, u8, u8) -> Rat) -> Result<Self, MultiError> {
        TriBox::new(
            (0..64)
                .map(|i| {
                    let [a, b, c, x, y, z] = tri_unindex(i);
                    f(a, b, c, x, y, z)
                })
                .collect(),
        )
    }

    pub fn p(&self, a: u8, b: u8, c: u8, x: u8, y: u8, z: u8) -> &Rat {
        &self.table[tri_index(a, b, c, x, y, z)]
    }

    pub fn table(&self) -> &[Rat] {
        &self.table
    }

    /// Outcome `a ⊕ b ⊕ c = xyz`, uniform on that set.
    pub fn parity_xyz() -> TriBox {
        let q = Rat::new(1.into(), 4.into());
        TriBox::from_fn(|a, b, c, x, y, z| if a ^ b ^ c == x & y & z { q.clone() } else { Rat::zero() })
            .expect("valid")
    }

    /// Deterministic `a = fa[x]`, `b = fb[y]`, `c = fc[z]`.
    pub fn deterministic(fa: [u8; 2], fb: [u8; 2], fc: [u8; 2]) -> TriBox {
        TriBox::from_fn(|a, b, c, x, y, z| {
            if a == fa[x as usize] && b == fb[y as usize] && c == fc[z as usize] {
                Rat::one()
            } else {
                Rat::zero()
            }
        })
        .expect("valid")
    }

    /// A bipartite box shared by parties `pair` times a deterministic box
    /// `out = f[input]` held by the remaining party.
    pub fn product(bipartite: &CorrBox, pair: Pair, f: [u8; 2]) -> TriBox {
        TriBox::from_fn(|a, b, c, x, y, z| {
            let (o, i) = ([a, b, c], [x, y, z]);
            let [p, q] = pair.parties();
            let r = pair.other();
            if o[r] == f[i[r] as usize] {
                bipartite.p(o[p], o[q], i[p], i[q]).clone()
            } else {
                Rat::zero()
            }
        })
        .expect("valid")
    }

    /// `PR ⊗ (c = 0)`.
    pub fn pr_and_fixed() -> TriBox {
        TriBox::product(&boxes::pr(), Pair::AB, [0, 0])
    }

    pub fn uniform() -> TriBox {
        let q = Rat::new(1.into(), 8.into());
        TriBox::from_fn(|_, _, _, _, _, _| q.clone()).expect("valid")
    }

    pub fn mix(boxes: &[TriBox], weights: &[Rat]) -> Result<TriBox, MultiError> {
        if boxes.len() != weights.len() || weights.iter().any(Signed::is_negative) || !weights.iter().sum::<Rat>().is_one() {
            return Err(MultiError::BadParam("weights"));
        }
        TriBox::new(
            (0..64)
                .map(|i| boxes.iter().zip(weights).map(|(b, w)| w * &b.table[i]).sum())
                .collect(),
        )
    }

    /// Marginal over the outputs of `party`, for the given inputs.
    fn sum_out(&self, party: usize, o: [u8; 3], i: [u8; 3]) -> Rat {
        (0..2u8)
            .map(|v| {
                let mut oo = o;
                oo[party] = v;
                self.p(oo[0], oo[1], oo[2], i[0], i[1], i[2]).clone()
            })
            .sum()
    }

    /// Single-party marginal `P(o|inputs)`.
    fn single_marginal(&self, party: usize, out: u8, i: [u8; 3]) -> Rat {
        let mut s = Rat::zero();
        for k in 0..8u8 {
            let o = [k & 1, k >> 1 & 1, k >> 2];
            if o[party] == out {
                s += self.p(o[0], o[1], o[2], i[0], i[1], i[2]);
            }
        }
        s
    }
}

/// Two of the three parties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pair {
    AB,
    AC,
    BC,
}

impl Pair {
    pub const ALL: [Pair; 3] = [Pair::AB, Pair::AC, Pair::BC];

    pub fn parties(self) -> [usize; 2] {
        match self {
            Pair::AB => [0, 1],
            Pair::AC => [0, 2],
            Pair::BC => [1, 2],
        }
    }

    pub fn other(self) -> usize {
        match self {
            Pair::AB => 2,
            Pair::AC => 1,
            Pair::BC => 0,
        }
    }
}

/// A violated marginal condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TriWitness {
    /// Summing out `party`, the remaining outputs `outputs` depend on
    /// `party`'s own input: inputs `inputs` vs the same with it flipped.
    Pairwise { party: usize, outputs: [u8; 3], inputs: [u8; 3] },
    /// `party`'s own output `out` depends on `remote`'s input.
    Single { party: usize, remote: usize, out: u8, inputs: [u8; 3] },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriNsReport {
    /// `Σ_a P(abc|xyz)` independent of `x`, and likewise for `b`/`y`, `c`/`z`.
    pub pairwise: bool,
    /// Each party's own marginal independent of the other two inputs.
    pub single_party: bool,
    pub witness: Option<TriWitness>,
}

impl TriNsReport {
    pub fn holds(&self) -> bool {
        self.pairwise && self.single_party
    }
}

pub fn tri_nonsignalling(t: &TriBox) -> TriNsReport {
    let mut witness = None;
    let mut pairwise = true;
    'pair: for party in 0..3 {
        for k in 0..64usize {
            let [a, b, c, x, y, z] = tri_unindex(k);
            let (o, i) = ([a, b, c], [x, y, z]);
            if o[party] != 0 || i[party] != 0 {
                continue;
            }
            let mut flipped = i;
            flipped[party] = 1;
            if t.sum_out(party, o, i) != t.sum_out(party, o, flipped) {
                pairwise = false;
                witness = Some(TriWitness::Pairwise {
                    party,
                    outputs: o,
                    inputs: i,
                });
                break 'pair;
            }
        }
    }
    let mut single_party = true;
    'single: for party in 0..3 {
        for remote in (0..3).filter(|&r| r != party) {
            for k in 0..8u8 {
                let i = [k & 1, k >> 1 & 1, k >> 2];
                if i[remote] != 0 {
                    continue;
                }
                let mut flipped = i;
                flipped[remote] = 1;
                for out in 0..2u8 {
                    if t.single_marginal(party, out, i) != t.single_marginal(party, out, flipped) {
                        single_party = false;
                        if witness.is_none() {
                            witness = Some(TriWitness::Single {
                                party,
                                remote,
                                out,
                                inputs: i,
                            });
                        }
                        break 'single;
                    }
                }
            }
        }
    }
    TriNsReport {
        pairwise,
        single_party,
        witness,
    }
}

/// Normalization and pairwise non-signalling rows over the 64 unknowns.
pub fn tri_constraint_rows() -> Vec<Vec<Rat>> {
    let mut rows = Vec::new();
    for col in 0..8usize {
        let mut r = vec![Rat::zero(); 64];
        for j in 0..8 {
            r[col * 8 + j] = Rat::one();
        }
        rows.push(r);
    }
    for party in 0..3 {
        for k in 0..64usize {
            let [a, b, c, x, y, z] = tri_unindex(k);
            let (o, i) = ([a, b, c], [x, y, z]);
            if o[party] != 0 || i[party] != 0 {
                continue;
            }
            let mut r = vec![Rat::zero(); 64];
            let mut flipped = i;
            flipped[party] = 1;
            for v in 0..2u8 {
                let mut oo = o;
                oo[party] = v;
                r[tri_index(oo[0], oo[1], oo[2], i[0], i[1], i[2])] += Rat::one();
                r[tri_index(oo[0], oo[1], oo[2], flipped[0], flipped[1], flipped[2])] -= Rat::one();
            }
            rows.push(r);
        }
    }
    rows
}

/// Dimension of the tripartite non-signalling polytope: 64 − rank.
pub fn tri_dimension() -> usize {
    64 - linalg::rank(&tri_constraint_rows())
}

/// The 64 deterministic tripartite boxes.
pub fn tri_local_vertices() -> Vec<TriBox> {
    let fns: [[u8; 2]; 4] = [[0, 0], [0, 1], [1, 0], [1, 1]];
    let mut out = Vec::with_capacity(64);
    for fa in fns {
        for fb in fns {
            for fc in fns {
                out.push(TriBox::deterministic(fa, fb, fc));
            }
        }
    }
    out
}

/// Bipartite non-signalling vertex on each pair times a deterministic
/// third party: 3 · 24 · 4 = 288 boxes.
pub fn tri_two_way_generators() -> Vec<TriBox> {
    let fns: [[u8; 2]; 4] = [[0, 0], [0, 1], [1, 0], [1, 1]];
    let mut vertices = boxes::local_vertices();
    vertices.extend(boxes::nonlocal_vertices());
    let mut out = Vec::with_capacity(288);
    for pair in Pair::ALL {
        for v in &vertices {
            for f in fns {
                out.push(TriBox::product(v, pair, f));
            }
        }
    }
    out
}

/// Convex weights over a generator list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriDecomposition {
    pub weights: Vec<Rat>,
}

fn decompose(t: &TriBox, generators: &[TriBox]) -> Feasibility {
    let g: Vec<Vec<Rat>> = generators.iter().map(|b| b.table.clone()).collect();
    lp::convex_combination(&g, &t.table)
}

pub fn tri_local_membership(t: &TriBox) -> Feasibility {
    decompose(t, &tri_local_vertices())
}

pub fn tri_two_way_membership(t: &TriBox) -> Feasibility {
    decompose(t, &tri_two_way_generators())
}

/// Weights over [`tri_local_vertices`], if fully local.
pub fn tri_fully_local(t: &TriBox) -> Option<TriDecomposition> {
    tri_local_membership(t).solution().map(|weights| TriDecomposition { weights })
}

/// Weights over [`tri_two_way_generators`], if two-way local.
pub fn tri_two_way_local(t: &TriBox) -> Option<TriDecomposition> {
    tri_two_way_membership(t).solution().map(|weights| TriDecomposition { weights })
}

/// Per-party relabelings `input ⊕ f`, `output ⊕ α·input ⊕ β`, indexed by 3 bits each.
pub fn tri_relabel(t: &TriBox, ops: [u8; 3]) -> TriBox {
    TriBox::from_fn(|a, b, c, x, y, z| {
        let o = [a, b, c];
        let i = [x, y, z];
        let mut bo = [0u8; 3];
        let mut bi = [0u8; 3];
        for p in 0..3 {
            let (f, alpha, beta) = (ops[p] >> 2 & 1, ops[p] >> 1 & 1, ops[p] & 1);
            bi[p] = i[p] ^ f;
            bo[p] = o[p] ^ (alpha & i[p]) ^ beta;
        }
        t.p(bo[0], bo[1], bo[2], bi[0], bi[1], bi[2]).clone()
    })
    .expect("relabeling preserves validity")
}

/// Bipartite box over arbitrary alphabets: `P(a,b|x,y)` with `x < dx`,
/// `y < dy`, `a < da`, `b < db`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GenBox {
    dims: [usize; 4],
    table: Vec<Rat>,
}

impl GenBox {
    /// Entry `((x·dy + y)·da + a)·db + b`; `dims = [dx, dy, da, db]`.
    pub fn new(dims: [usize; 4], table: Vec<Rat>) -> Result<Self, MultiError> {
        if dims.contains(&0) {
            return Err(MultiError::BadParam("empty alphabet"));
        }
        let [dx, dy, da, db] = dims;
        let n = dx * dy * da * db;
        if table.len() != n {
            return Err(MultiError::SizeMismatch {
                expected: n,
                got: table.len(),
            });
        }
        if table.iter().any(Signed::is_negative) {
            return Err(MultiError::NegativeProbability);
        }
        if table.chunks(da * db).any(|col| !col.iter().sum::<Rat>().is_one()) {
            return Err(MultiError::NotNormalized);
        }
        let g = GenBox { dims, table };
        if !g.is_nonsignalling() {
            return Err(MultiError::Signalling);
        }
        Ok(g)
    }

    pub fn from_fn(dims: [usize; 4], mut f: impl FnMut(usize, usize, usize, usize) -> Rat) -> Result<Self, MultiError> {
        let [dx, dy, da, db] = dims;
        let mut t = Vec::with_capacity(dx * dy * da * db);
        for x in 0..dx {
            for y in 0..dy {
                for a in 0..da {
                    for b in 0..db {
                        t.push(f(a, b, x, y));
                    }
                }
            }
        }
        GenBox::new(dims, t)
    }

    pub fn dims(&self) -> [usize; 4] {
        self.dims
    }

    pub fn p(&self, a: usize, b: usize, x: usize, y: usize) -> &Rat {
        let [_, dy, da, db] = self.dims;
        &self.table[((x * dy + y) * da + a) * db + b]
    }

    pub fn table(&self) -> &[Rat] {
        &self.table
    }

    pub fn is_nonsignalling(&self) -> bool {
        let [dx, dy, da, db] = self.dims;
        let alice = |a: usize, x: usize, y: usize| -> Rat { (0..db).map(|b| self.p(a, b, x, y).clone()).sum() };
        let bob = |b: usize, x: usize, y: usize| -> Rat { (0..da).map(|a| self.p(a, b, x, y).clone()).sum() };
        (0..dx).all(|x| (0..da).all(|a| (1..dy).all(|y| alice(a, x, y) == alice(a, x, 0))))
            && (0..dy).all(|y| (0..db).all(|b| (1..dx).all(|x| bob(b, x, y) == bob(b, 0, y))))
    }

    /// The embedding of a bipartite binary box.
    pub fn from_corr(b: &CorrBox) -> GenBox {
        GenBox::from_fn([2, 2, 2, 2], |a, bb, x, y| b.p(a as u8, bb as u8, x as u8, y as u8).clone()).expect("valid")
    }
}

/// Normalization and non-signalling rows for the given alphabet sizes.
pub fn genbox_constraint_rows(dims: [usize; 4]) -> Vec<Vec<Rat>> {
    let [dx, dy, da, db] = dims;
    let n = dx * dy * da * db;
    let at = |a: usize, b: usize, x: usize, y: usize| ((x * dy + y) * da + a) * db + b;
    let mut rows = Vec::new();
    for x in 0..dx {
        for y in 0..dy {
            let mut r = vec![Rat::zero(); n];
            for a in 0..da {
                for b in 0..db {
                    r[at(a, b, x, y)] = Rat::one();
                }
            }
            rows.push(r);
        }
    }
    for x in 0..dx {
        for a in 0..da {
            for y in 1..dy {
                let mut r = vec![Rat::zero(); n];
                for b in 0..db {
                    r[at(a, b, x, y)] += Rat::one();
                    r[at(a, b, x, 0)] -= Rat::one();
                }
                rows.push(r);
            }
        }
    }
    for y in 0..dy {
        for b in 0..db {
            for x in 1..dx {
                let mut r = vec![Rat::zero(); n];
                for a in 0..da {
                    r[at(a, b, x, y)] += Rat::one();
                    r[at(a, b, 0, y)] -= Rat::one();
                }
                rows.push(r);
            }
        }
    }
    rows
}

/// Dimension of the non-signalling polytope by exact rank.
pub fn genbox_dimension(dims: [usize; 4]) -> usize {
    let n: usize = dims.iter().product();
    n - linalg::rank(&genbox_constraint_rows(dims))
}

/// Closed form for binary inputs: `4·da·db − 2·da − 2·db`.
pub fn genbox_dimension_formula(da: usize, db: usize) -> usize {
    4 * da * db - 2 * da - 2 * db
}

/// `1/k` when `(b − a) ≡ xy (mod k)` with `a, b < k`, zero elsewhere.
pub fn d_output_vertex(k: usize, da: usize, db: usize) -> Result<GenBox, MultiError> {
    if k < 2 || k > da.min(db) {
        return Err(MultiError::BadParam("need 2 ≤ k ≤ min(da, db)"));
    }
    let w = Rat::new(BigInt::one(), BigInt::from(k));
    GenBox::from_fn([2, 2, da, db], |a, b, x, y| {
        if a < k && b < k && (b + k - a) % k == (x & y) {
            w.clone()
        } else {
            Rat::zero()
        }
    })
}

/// Outputs reduced modulo `d`; needs `d` to divide both output counts.
pub fn project_mod(g: &GenBox, d: usize) -> Result<GenBox, MultiError> {
    let [dx, dy, da, db] = g.dims;
    if d == 0 || da % d != 0 || db % d != 0 {
        return Err(MultiError::BadParam("d must divide the output counts"));
    }
    let mut t = vec![Rat::zero(); dx * dy * d * d];
    for x in 0..dx {
        for y in 0..dy {
            for a in 0..da {
                for b in 0..db {
                    t[((x * dy + y) * d + a % d) * d + b % d] += g.p(a, b, x, y);
                }
            }
        }
    }
    GenBox::new([dx, dy, d, d], t)
}

/// Both boxes get the same inputs; outputs are recombined by the Chinese
/// remainder theorem into `Z_{d·d′}`.
pub fn compose_coprime(g1: &GenBox, g2: &GenBox) -> Result<GenBox, MultiError> {
    let [dx, dy, d, d1b] = g1.dims;
    let [ex, ey, e, e1b] = g2.dims;
    if d != d1b || e != e1b {
        return Err(MultiError::BadParam("square output alphabets required"));
    }
    if dx != ex || dy != ey {
        return Err(MultiError::BadParam("input alphabets differ"));
    }
    if d.gcd(&e) != 1 {
        return Err(MultiError::NotCoprime);
    }
    let k = d * e;
    GenBox::from_fn([dx, dy, k, k], |a, b, x, y| g1.p(a % d, b % d, x, y) * g2.p(a % e, b % e, x, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;

    #[test]
    fn tri_nonsignalling_examples() {
        assert!(tri_nonsignalling(&TriBox::parity_xyz()).holds());
        assert!(tri_nonsignalling(&TriBox::deterministic([0, 0], [0, 0], [0, 0])).holds());
        let copy = TriBox::from_fn(|a, b, c, x, _, _| if a == 0 && b == 0 && c == x { int(1) } else { int(0) }).unwrap();
        let r = tri_nonsignalling(&copy);
        assert!(!r.holds());
        assert!(!r.pairwise && !r.single_party);
        assert!(r.witness.is_some());
    }

    #[test]
    fn single_party_conditions_are_weaker() {
        // b ⊕ c = x with uniform b: every single marginal is uniform, yet
        // the (b, c) marginal depends on Alice's input.
        let h = Rat::new(1.into(), 2.into());
        let t = TriBox::from_fn(|a, b, c, x, _, _| if a == 0 && b ^ c == x { h.clone() } else { int(0) }).unwrap();
        let r = tri_nonsignalling(&t);
        assert!(r.single_party);
        assert!(!r.pairwise);
        assert!(matches!(r.witness, Some(TriWitness::Pairwise { party: 0, .. })));
    }

    #[test]
    fn dimensions() {
        assert_eq!(tri_dimension(), 26);
        assert_eq!(genbox_dimension([2, 2, 2, 2]), 8);
        for (da, db) in [(2, 3), (3, 3), (3, 4)] {
            assert_eq!(genbox_dimension([2, 2, da, db]), genbox_dimension_formula(da, db));
        }
    }

    #[test]
    fn tri_dimension_consistency() {
        let mut points: Vec<Vec<Rat>> = tri_local_vertices().into_iter().map(|t| t.table).collect();
        let reps = [TriBox::pr_and_fixed(), TriBox::parity_xyz()];
        for r in &reps {
            for ops in 0..512u16 {
                let o = [(ops & 7) as u8, (ops >> 3 & 7) as u8, (ops >> 6) as u8];
                points.push(tri_relabel(r, o).table);
            }
        }
        assert!(linalg::affine_dimension(&points) <= 26);
    }

    #[test]
    fn tri_locality() {
        let d = TriBox::deterministic([0, 0], [0, 0], [0, 0]);
        let w = tri_fully_local(&d).unwrap();
        assert_eq!(w.weights.iter().filter(|v| !v.is_zero()).count(), 1);
        assert!(tri_fully_local(&TriBox::uniform()).is_some());

        let pr_c = TriBox::pr_and_fixed();
        let lp_target = pr_c.table.clone();
        match tri_local_membership(&pr_c) {
            Feasibility::Infeasible(cert) => {
                let g: Vec<Vec<Rat>> = tri_local_vertices().into_iter().map(|t| t.table).collect();
                let (a, b) = lp::convex_system(&g, &lp_target);
                assert!(cert.verify(&a, &b));
            }
            Feasibility::Feasible(_) => panic!("PR ⊗ deterministic is not fully local"),
        }
        assert!(tri_two_way_local(&pr_c).is_some());
        assert!(tri_two_way_local(&TriBox::parity_xyz()).is_none());
        assert!(tri_two_way_local(&d).is_some());
    }

    #[test]
    fn tri_decompositions_reconstruct() {
        let t = TriBox::mix(
            &[TriBox::pr_and_fixed(), TriBox::product(&boxes::anti_pr(), Pair::BC, [1, 0]), TriBox::uniform()],
            &[Rat::new(1.into(), 3.into()), Rat::new(1.into(), 6.into()), Rat::new(1.into(), 2.into())],
        )
        .unwrap();
        let w = tri_two_way_local(&t).unwrap();
        let gens = tri_two_way_generators();
        for i in 0..64 {
            let s: Rat = w.weights.iter().zip(&gens).map(|(l, g)| l * &g.table[i]).sum();
            assert_eq!(s, t.table[i]);
        }
    }

    #[test]
    fn d_output_vertices() {
        assert_eq!(d_output_vertex(2, 2, 2).unwrap(), GenBox::from_corr(&boxes::pr()));
        let v3 = d_output_vertex(3, 3, 4).unwrap();
        assert!(v3.is_nonsignalling());
        assert!(d_output_vertex(4, 3, 4).is_err());
    }

    #[test]
    fn interconversions() {
        let v6 = d_output_vertex(6, 6, 6).unwrap();
        let v2 = d_output_vertex(2, 2, 2).unwrap();
        let v3 = d_output_vertex(3, 3, 3).unwrap();
        assert_eq!(project_mod(&v6, 2).unwrap(), v2);
        assert_eq!(project_mod(&v6, 3).unwrap(), v3);
        assert_eq!(project_mod(&v6, 6).unwrap(), v6);
        let c = compose_coprime(&v2, &v3).unwrap();
        assert_eq!(c, v6);
        assert_eq!(project_mod(&c, 2).unwrap(), v2);
        assert_eq!(project_mod(&c, 3).unwrap(), v3);
        assert_eq!(compose_coprime(&v2, &v2), Err(MultiError::NotCoprime));
    }

    #[test]
    fn nesting_on_mixtures() {
        let boxes = [TriBox::parity_xyz(), TriBox::pr_and_fixed(), TriBox::uniform()];
        for (i, j) in [(1usize, 4i64), (2, 5), (3, 8)] {
            let lam = Rat::new(i.into(), j.into());
            let t = TriBox::mix(&boxes, &[lam.clone(), (int(1) - &lam) / int(2), (int(1) - &lam) / int(2)]).unwrap();
            let full = tri_fully_local(&t).is_some();
            let two = tri_two_way_local(&t).is_some();
            assert!(!full || two);
            assert!(!two || tri_nonsignalling(&t).holds());
        }
    }
}
