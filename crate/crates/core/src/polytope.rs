//! Local and non-signalling polytopes of two-input/two-output boxes.
//!
//! Locality is decided two independent ways: by the CHSH criterion and by
//! an exact LP over the sixteen deterministic vertices. The two must agree
//! on every non-signalling box.

use alloc::vec::Vec;
use core::array;
use core::f64::consts::PI;

use num_traits::Zero;

use crate::boxes::{self, canonicalize, index, CorrBox};
use crate::linalg;
use crate::lp::{self, Feasibility, FarkasCertificate};
use crate::rat::{int, rat, to_f64, Rat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolytopeError {
    #[error("input box is signalling")]
    SignallingInput,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexLabel {
    /// `P^{αβγδ}`
    Local([u8; 4]),
    /// `P^{αβγ}`
    Nonlocal([u8; 3]),
}

/// The 24 extreme points of the non-signalling polytope: the 16
/// deterministic local vertices followed by the 8 non-local ones.
#[derive(Debug, Clone)]
pub struct VertexSet {
    pub vertices: Vec<CorrBox>,
    pub labels: Vec<VertexLabel>,
}

impl VertexSet {
    pub fn bipartite() -> Self {
        let mut vertices = boxes::local_vertices();
        let mut labels: Vec<_> = (0..16u8)
            .map(|i| VertexLabel::Local([i >> 3 & 1, i >> 2 & 1, i >> 1 & 1, i & 1]))
            .collect();
        vertices.extend(boxes::nonlocal_vertices());
        labels.extend((0..8u8).map(|i| VertexLabel::Nonlocal([i >> 2 & 1, i >> 1 & 1, i & 1])));
        VertexSet { vertices, labels }
    }

    pub fn local(&self) -> &[CorrBox] {
        &self.vertices[..16]
    }

    pub fn nonlocal(&self) -> &[CorrBox] {
        &self.vertices[16..]
    }

    /// Whether vertex `i` lies in the convex hull of the other 23.
    pub fn is_redundant(&self, i: usize) -> Feasibility {
        let others: Vec<Vec<Rat>> = self
            .vertices
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, v)| v.table().to_vec())
            .collect();
        lp::convex_combination(&others, self.vertices[i].table())
    }
}

/// Convex weights over the deterministic vertices, indexed by `8α + 4β + 2γ + δ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalDecomposition {
    pub weights: [Rat; 16],
}

impl LocalDecomposition {
    pub fn reconstruct(&self) -> CorrBox {
        boxes::mix(&boxes::local_vertices(), &self.weights)
            .expect("decomposition weights are a probability vector")
    }
}

fn require_ns(b: &CorrBox) -> Result<(), PolytopeError> {
    if b.is_nonsignalling() {
        Ok(())
    } else {
        Err(PolytopeError::SignallingInput)
    }
}

fn local_generators() -> Vec<Vec<Rat>> {
    boxes::local_vertices()
        .iter()
        .map(|v| v.table().to_vec())
        .collect()
}

/// Exact LP membership in the local polytope, with a Farkas certificate
/// when the box is outside.
pub fn local_membership(b: &CorrBox) -> Result<Feasibility, PolytopeError> {
    require_ns(b)?;
    Ok(lp::convex_combination(&local_generators(), b.table()))
}

/// Checks a certificate returned by [`local_membership`].
pub fn verify_nonlocality_certificate(b: &CorrBox, cert: &FarkasCertificate) -> bool {
    let (a, rhs) = lp::convex_system(&local_generators(), b.table());
    cert.verify(&a, &rhs)
}

/// Weights over the sixteen deterministic vertices, or `None` if the box
/// is non-local. The weights are the basic solution Bland's rule reaches;
/// any feasible certificate is equally valid.
pub fn local_decompose(b: &CorrBox) -> Result<Option<LocalDecomposition>, PolytopeError> {
    Ok(local_membership(b)?.solution().map(|w| LocalDecomposition {
        weights: array::from_fn(|i| w[i].clone()),
    }))
}

/// `CHSH(b) ≤ 2`, valid as a locality test for non-signalling boxes.
pub fn is_local(b: &CorrBox) -> Result<bool, PolytopeError> {
    require_ns(b)?;
    Ok(b.chsh() <= int(2))
}

/// Necessary condition for quantum realizability: `CHSH² ≤ 8`.
pub fn tsirelson_test(b: &CorrBox) -> bool {
    let c = b.chsh();
    &c * &c <= int(8)
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuantumTestReport {
    /// Entry `2x + y` is `arcsin X_xy + arcsin X_xȳ + arcsin X_x̄y − arcsin X_x̄ȳ`.
    pub arcsin_sums: [f64; 4],
    pub pass: bool,
    pub tolerance: f64,
}

pub const DEFAULT_ARCSIN_TOL: f64 = 1e-9;

/// Arcsine criterion on raw correlators `[X00, X01, X10, X11]`.
pub fn arcsin_test_correlators(correlators: [f64; 4], tol: f64) -> QuantumTestReport {
    let s: [f64; 4] = array::from_fn(|i| libm::asin(correlators[i].clamp(-1.0, 1.0)));
    let arcsin_sums: [f64; 4] = array::from_fn(|i| {
        let (x, y) = (i >> 1, i & 1);
        let at = |x: usize, y: usize| s[(x << 1) | y];
        at(x, y) + at(x, 1 - y) + at(1 - x, y) - at(1 - x, 1 - y)
    });
    let pass = arcsin_sums.iter().all(|v| v.abs() <= PI + tol);
    QuantumTestReport {
        arcsin_sums,
        pass,
        tolerance: tol,
    }
}

pub fn quantum_arcsin_test(b: &CorrBox, tol: f64) -> Result<QuantumTestReport, PolytopeError> {
    require_ns(b)?;
    let x: [f64; 4] = array::from_fn(|i| to_f64(&b.correlator((i >> 1) as u8, (i & 1) as u8)));
    Ok(arcsin_test_correlators(x, tol))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoxClass {
    Signalling,
    Local,
    QuantumConsistent,
    SuperQuantumNS,
}

impl BoxClass {
    pub fn as_str(self) -> &'static str {
        match self {
            BoxClass::Signalling => "Signalling",
            BoxClass::Local => "Local",
            BoxClass::QuantumConsistent => "QuantumConsistent",
            BoxClass::SuperQuantumNS => "SuperQuantumNS",
        }
    }
}

pub fn classify(b: &CorrBox) -> BoxClass {
    classify_with_tol(b, DEFAULT_ARCSIN_TOL)
}

pub fn classify_with_tol(b: &CorrBox, tol: f64) -> BoxClass {
    if !b.is_nonsignalling() {
        return BoxClass::Signalling;
    }
    if b.chsh() <= int(2) {
        return BoxClass::Local;
    }
    let report = quantum_arcsin_test(b, tol).expect("checked non-signalling");
    if report.pass {
        BoxClass::QuantumConsistent
    } else {
        BoxClass::SuperQuantumNS
    }
}

/// Rows of the normalization and non-signalling equalities on the
/// sixteen table entries.
pub fn ns_constraint_rows() -> Vec<Vec<Rat>> {
    let mut rows = Vec::new();
    let unit = |entries: &[(usize, i64)]| {
        let mut r: Vec<Rat> = (0..16).map(|_| Rat::zero()).collect();
        for &(i, c) in entries {
            r[i] += int(c);
        }
        r
    };
    for x in 0..2 {
        for y in 0..2 {
            let e: Vec<_> = (0..4u8).map(|ab| (index(ab >> 1, ab & 1, x, y), 1)).collect();
            rows.push(unit(&e));
        }
    }
    for a in 0..2 {
        for x in 0..2 {
            rows.push(unit(&[
                (index(a, 0, x, 0), 1),
                (index(a, 1, x, 0), 1),
                (index(a, 0, x, 1), -1),
                (index(a, 1, x, 1), -1),
            ]));
        }
    }
    for b in 0..2 {
        for y in 0..2 {
            rows.push(unit(&[
                (index(0, b, 0, y), 1),
                (index(1, b, 0, y), 1),
                (index(0, b, 1, y), -1),
                (index(1, b, 1, y), -1),
            ]));
        }
    }
    rows
}

/// Dimension of the non-signalling polytope: 16 minus the rank of its
/// equality constraints.
pub fn ns_dimension() -> usize {
    16 - linalg::rank(&ns_constraint_rows())
}

/// Dimension of the affine hull of the 16 deterministic vertices.
pub fn local_affine_dimension() -> usize {
    linalg::affine_dimension(&local_generators())
}

/// Twirl over the eight shared-random substitutions
/// `x → x⊕α`, `y → y⊕β`, `a → a⊕βx⊕αβ⊕γ`, `b → b⊕αy⊕γ`.
///
/// The output is isotropic and keeps `S = X00 + X01 + X10 − X11`.
pub fn depolarize(b: &CorrBox) -> Result<CorrBox, PolytopeError> {
    require_ns(b)?;
    let eighth = rat(1, 8);
    Ok(CorrBox::from_fn(|a, bb, x, y| {
        let mut acc = Rat::zero();
        for al in 0..2u8 {
            for be in 0..2u8 {
                for ga in 0..2u8 {
                    let a_box = a ^ (be & x) ^ (al & be) ^ ga;
                    let b_box = bb ^ (al & y) ^ ga;
                    acc += b.p(a_box, b_box, x ^ al, y ^ be);
                }
            }
        }
        acc * &eighth
    })
    .expect("twirl of a valid box is a valid box"))
}

/// Depolarization after moving the CHSH maximizer to canonical position,
/// which keeps the full CHSH value.
pub fn depolarize_canonical(b: &CorrBox) -> Result<CorrBox, PolytopeError> {
    require_ns(b)?;
    depolarize(&canonicalize(b))
}

/// The `ε` with `b = P_ε`, if `b` is isotropic.
pub fn isotropic_parameter(b: &CorrBox) -> Option<Rat> {
    let eps = b.p(0, 0, 0, 0) * int(2);
    let candidate = boxes::isotropic(&eps).ok()?;
    (candidate == *b).then_some(eps)
}
