//! Exact phase-1 simplex for `{λ ≥ 0 : Aλ = b}`.
//!
//! Pivoting follows Bland's rule, so the method terminates and the basis
//! it lands on is a deterministic function of the input. Infeasible
//! systems come back with a Farkas certificate `y` satisfying
//! `yᵀA ≤ 0` and `yᵀb > 0`, which callers can check independently.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FarkasCertificate {
    pub y: Vec<Rat>,
}

impl FarkasCertificate {
    /// Checks `yᵀA ≤ 0` columnwise and `yᵀb > 0`.
    pub fn verify(&self, a: &[Vec<Rat>], b: &[Rat]) -> bool {
        if self.y.len() != a.len() || a.len() != b.len() {
            return false;
        }
        let ncols = a.first().map_or(0, Vec::len);
        let yb: Rat = self.y.iter().zip(b).map(|(yi, bi)| yi * bi).sum();
        yb.is_positive()
            && (0..ncols).all(|j| {
                let s: Rat = self.y.iter().zip(a).map(|(yi, row)| yi * &row[j]).sum();
                !s.is_positive()
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<Rat>),
    Infeasible(FarkasCertificate),
}

impl Feasibility {
    pub fn solution(self) -> Option<Vec<Rat>> {
        match self {
            Feasibility::Feasible(x) => Some(x),
            Feasibility::Infeasible(_) => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

/// Finds `λ ≥ 0` with `Aλ = b`, `A` given row-major.
pub fn nonnegative_solution(a: &[Vec<Rat>], b: &[Rat]) -> Feasibility {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let width = n + m;

    // Rows are negated where needed so the right-hand side starts non-negative.
    let signs: Vec<bool> = b.iter().map(|v| v.is_negative()).collect();
    let mut tab: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rat> = Vec::with_capacity(m);
    for i in 0..m {
        assert_eq!(a[i].len(), n, "ragged matrix");
        let mut row = Vec::with_capacity(width);
        for v in &a[i] {
            row.push(if signs[i] { -v } else { v.clone() });
        }
        for k in 0..m {
            row.push(if k == i { Rat::one() } else { Rat::zero() });
        }
        tab.push(row);
        rhs.push(if signs[i] { -&b[i] } else { b[i].clone() });
    }
    let mut basis: Vec<usize> = (n..width).collect();

    // Reduced costs of the phase-1 objective Σ artificials.
    let mut cost = vec![Rat::zero(); width];
    for j in 0..n {
        cost[j] = -tab.iter().map(|row| &row[j]).sum::<Rat>();
    }

    loop {
        let Some(enter) = (0..width).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if !tab[i][enter].is_positive() {
                continue;
            }
            leave = match leave {
                None => Some(i),
                Some(l) => {
                    let cur = &rhs[i] / &tab[i][enter];
                    let best = &rhs[l] / &tab[l][enter];
                    if cur < best || (cur == best && basis[i] < basis[l]) {
                        Some(i)
                    } else {
                        Some(l)
                    }
                }
            };
        }
        // Phase 1 is bounded below by zero, so an entering column always has a pivot row.
        let r = leave.expect("phase-1 objective is bounded");
        pivot(&mut tab, &mut rhs, &mut cost, r, enter);
        basis[r] = enter;
    }

    let residual: Rat = basis
        .iter()
        .zip(&rhs)
        .filter(|(&j, _)| j >= n)
        .map(|(_, v)| v.clone())
        .sum();
    if residual.is_positive() {
        // Reduced cost of artificial i is 1 − yᵢ in the sign-adjusted system.
        let y = (0..m)
            .map(|i| {
                let yi = Rat::one() - &cost[n + i];
                if signs[i] {
                    -yi
                } else {
                    yi
                }
            })
            .collect();
        return Feasibility::Infeasible(FarkasCertificate { y });
    }

    let mut x = vec![Rat::zero(); n];
    for (i, &j) in basis.iter().enumerate() {
        if j < n {
            x[j] = rhs[i].clone();
        }
    }
    Feasibility::Feasible(x)
}

fn pivot(tab: &mut [Vec<Rat>], rhs: &mut [Rat], cost: &mut [Rat], r: usize, c: usize) {
    let p = tab[r][c].clone();
    for v in tab[r].iter_mut() {
        *v /= &p;
    }
    rhs[r] /= &p;
    let pivot_row = tab[r].clone();
    let pivot_rhs = rhs[r].clone();
    for i in 0..tab.len() {
        if i == r || tab[i][c].is_zero() {
            continue;
        }
        let f = tab[i][c].clone();
        for (v, pv) in tab[i].iter_mut().zip(&pivot_row) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
        rhs[i] -= &f * &pivot_rhs;
    }
    if !cost[c].is_zero() {
        let f = cost[c].clone();
        for (v, pv) in cost.iter_mut().zip(&pivot_row) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
    }
}

/// Convex-combination search: weights `λ ≥ 0`, `Σλ = 1`, `Σ λ_k g_k = target`.
pub fn convex_combination(generators: &[Vec<Rat>], target: &[Rat]) -> Feasibility {
    let (a, b) = convex_system(generators, target);
    nonnegative_solution(&a, &b)
}

/// The system [`convex_combination`] solves, for certificate checking.
pub fn convex_system(generators: &[Vec<Rat>], target: &[Rat]) -> (Vec<Vec<Rat>>, Vec<Rat>) {
    let dim = target.len();
    let mut a: Vec<Vec<Rat>> = (0..dim)
        .map(|i| generators.iter().map(|g| g[i].clone()).collect())
        .collect();
    a.push(vec![Rat::one(); generators.len()]);
    let mut b = target.to_vec();
    b.push(Rat::one());
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn check_solution(a: &[Vec<Rat>], b: &[Rat], x: &[Rat]) {
        assert!(x.iter().all(|v| !v.is_negative()));
        for (row, bi) in a.iter().zip(b) {
            let s: Rat = row.iter().zip(x).map(|(p, q)| p * q).sum();
            assert_eq!(&s, bi);
        }
    }

    #[test]
    fn feasible_system() {
        let a = vec![vec![int(1), int(1), int(0)], vec![int(0), int(1), int(1)]];
        let b = vec![rat(1, 2), int(1)];
        let x = nonnegative_solution(&a, &b).solution().unwrap();
        check_solution(&a, &b, &x);
    }

    #[test]
    fn negative_rhs_rows() {
        let a = vec![vec![int(-1), int(-2)], vec![int(1), int(0)]];
        let b = vec![int(-3), int(1)];
        let x = nonnegative_solution(&a, &b).solution().unwrap();
        check_solution(&a, &b, &x);
        assert_eq!(x, vec![int(1), int(1)]);
    }

    #[test]
    fn infeasible_with_certificate() {
        // x + y = 1 and x + y = 2
        let a = vec![vec![int(1), int(1)], vec![int(1), int(1)]];
        let b = vec![int(1), int(2)];
        match nonnegative_solution(&a, &b) {
            Feasibility::Infeasible(cert) => assert!(cert.verify(&a, &b)),
            other => panic!("expected infeasible, got {other:?}"),
        }
        // x - y = -1 with a negated row, x,y ≥ 0 and y = 0
        let a = vec![vec![int(1), int(-1)], vec![int(0), int(1)]];
        let b = vec![int(-1), int(0)];
        match nonnegative_solution(&a, &b) {
            Feasibility::Infeasible(cert) => assert!(cert.verify(&a, &b)),
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn redundant_rows_are_fine() {
        let a = vec![
            vec![int(1), int(1)],
            vec![int(2), int(2)],
            vec![int(1), int(0)],
        ];
        let b = vec![int(1), int(2), rat(1, 3)];
        let x = nonnegative_solution(&a, &b).solution().unwrap();
        check_solution(&a, &b, &x);
    }

    #[test]
    fn convex_hull_of_square() {
        let g = vec![
            vec![int(0), int(0)],
            vec![int(1), int(0)],
            vec![int(0), int(1)],
            vec![int(1), int(1)],
        ];
        assert!(convex_combination(&g, &[rat(1, 3), rat(2, 3)]).is_feasible());
        let (a, b) = convex_system(&g, &[int(2), int(0)]);
        match convex_combination(&g, &[int(2), int(0)]) {
            Feasibility::Infeasible(c) => assert!(c.verify(&a, &b)),
            _ => panic!("outside the square"),
        }
    }
}
