//! Root data of split reductive groups in coordinates.
//!
//! Coroots live in the cocharacter lattice `Y = Z^r` and roots in its dual
//! `Y* = Z^r`; the pairing is the standard dot product.

mod weyl;

use std::collections::{HashMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::intmat::{self, IntMatrix, Rat};

pub use weyl::{WeylElement, WeylGroup, WEYL_BOUND};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootDataError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("<alpha_{index}^vee, alpha_{index}> = {value}, expected 2")]
    PairingNotTwo { index: usize, value: i64 },
    #[error("Cartan matrix is not of finite type: {0}")]
    NotFiniteType(String),
    #[error("simple coroots are linearly dependent")]
    DependentCoroots,
    #[error("Weyl group enumeration exceeded {0} elements")]
    WeylTooLarge(usize),
}

/// A validated root datum `(Y, {α_i}, Y*, {α_i^∨})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootDatum {
    rank: usize,
    simple_coroots: Vec<Vec<i64>>,
    simple_roots: Vec<Vec<i64>>,
    /// `cartan[i][j] = ⟨α_i^∨, α_j⟩`.
    cartan: IntMatrix,
}

/// A coroot `α ∈ Y` together with its root `α^∨ ∈ Y*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Coroot {
    pub coroot: Vec<i64>,
    pub root: Vec<i64>,
    /// Coordinates of `coroot` in the basis of simple coroots.
    pub coefficients: Vec<i64>,
    pub positive: bool,
}

impl Coroot {
    pub fn height(&self) -> i64 {
        self.coefficients.iter().sum()
    }
}

pub fn build_root_datum(
    rank: usize,
    simple_coroots: Vec<Vec<i64>>,
    simple_roots: Vec<Vec<i64>>,
) -> Result<RootDatum, RootDataError> {
    if simple_coroots.len() != simple_roots.len() {
        return Err(RootDataError::DimensionMismatch(format!(
            "{} simple coroots but {} simple roots",
            simple_coroots.len(),
            simple_roots.len()
        )));
    }
    for v in simple_coroots.iter().chain(&simple_roots) {
        if v.len() != rank {
            return Err(RootDataError::DimensionMismatch(format!("vector {v:?} has length {}, rank is {rank}", v.len())));
        }
    }
    let l = simple_coroots.len();
    let cartan: IntMatrix =
        (0..l).map(|i| (0..l).map(|j| intmat::dot(&simple_roots[i], &simple_coroots[j])).collect()).collect();
    for (i, row) in cartan.iter().enumerate() {
        if row[i] != 2 {
            return Err(RootDataError::PairingNotTwo { index: i, value: row[i] });
        }
    }
    check_finite_type(&cartan)?;
    if intmat::rank(&simple_coroots) != l {
        return Err(RootDataError::DependentCoroots);
    }
    Ok(RootDatum { rank, simple_coroots, simple_roots, cartan })
}

fn check_finite_type(a: &IntMatrix) -> Result<(), RootDataError> {
    let l = a.len();
    let mut edges = 0;
    for i in 0..l {
        for j in 0..l {
            if i == j {
                continue;
            }
            if a[i][j] > 0 {
                return Err(RootDataError::NotFiniteType(format!("positive off-diagonal entry at ({i},{j})")));
            }
            if (a[i][j] == 0) != (a[j][i] == 0) {
                return Err(RootDataError::NotFiniteType(format!("entries ({i},{j}) and ({j},{i}) disagree on vanishing")));
            }
            if i < j && a[i][j] != 0 {
                edges += 1;
            }
        }
    }
    // Dynkin diagrams of finite type are forests
    let components = {
        let mut seen = vec![false; l];
        let mut count = 0;
        for s in 0..l {
            if seen[s] {
                continue;
            }
            count += 1;
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(x) = stack.pop() {
                for y in 0..l {
                    if !seen[y] && a[x][y] != 0 {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        count
    };
    if edges + components != l {
        return Err(RootDataError::NotFiniteType("Dynkin diagram has a cycle".into()));
    }
    for mask in 1u32..(1u32 << l) {
        let idx: Vec<usize> = (0..l).filter(|&i| mask & (1 << i) != 0).collect();
        let sub: IntMatrix = idx.iter().map(|&i| idx.iter().map(|&j| a[i][j]).collect()).collect();
        if intmat::det(&sub) <= 0 {
            return Err(RootDataError::NotFiniteType(format!("principal minor on {idx:?} is not positive")));
        }
    }
    Ok(())
}

impl RootDatum {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of simple roots.
    pub fn semisimple_rank(&self) -> usize {
        self.simple_coroots.len()
    }

    pub fn simple_coroots(&self) -> &[Vec<i64>] {
        &self.simple_coroots
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple_roots
    }

    pub fn cartan_matrix(&self) -> &IntMatrix {
        &self.cartan
    }

    /// `s_i(y) = y − ⟨α_i^∨, y⟩ α_i`.
    pub fn reflect(&self, i: usize, y: &[i64]) -> Vec<i64> {
        let c = intmat::dot(&self.simple_roots[i], y);
        y.iter().zip(&self.simple_coroots[i]).map(|(a, b)| a - c * b).collect()
    }

    /// Contragredient action on `Y*`: `x ↦ x − ⟨x, α_i⟩ α_i^∨`.
    pub fn reflect_dual(&self, i: usize, x: &[i64]) -> Vec<i64> {
        let c = intmat::dot(x, &self.simple_coroots[i]);
        x.iter().zip(&self.simple_roots[i]).map(|(a, b)| a - c * b).collect()
    }

    /// Matrix of `s_i` acting on column vectors of `Y`.
    pub fn reflection_matrix(&self, i: usize) -> IntMatrix {
        let a = &self.simple_coroots[i];
        let av = &self.simple_roots[i];
        (0..self.rank)
            .map(|r| (0..self.rank).map(|c| i64::from(r == c) - a[r] * av[c]).collect())
            .collect()
    }

    /// Rational coordinates of `y` in the simple-coroot basis, if `y` lies in their span.
    pub fn coroot_coordinates(&self, y: &[i64]) -> Option<Vec<Rat>> {
        let m = intmat::from_columns(&self.simple_coroots, self.rank);
        if self.simple_coroots.is_empty() {
            return y.iter().all(|&x| x == 0).then(Vec::new);
        }
        intmat::solve_rational(&m, y)
    }

    /// All coroots, each paired with its root; positive ones first in order of
    /// height, then the negatives in the same order.
    pub fn coroot_set(&self) -> Vec<Coroot> {
        let l = self.semisimple_rank();
        let mut seen: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..l {
            for sign in [1, -1] {
                let a: Vec<i64> = self.simple_coroots[i].iter().map(|x| sign * x).collect();
                let av: Vec<i64> = self.simple_roots[i].iter().map(|x| sign * x).collect();
                if seen.insert(a.clone(), av.clone()).is_none() {
                    queue.push_back((a, av));
                }
            }
        }
        while let Some((a, av)) = queue.pop_front() {
            for i in 0..l {
                let b = self.reflect(i, &a);
                let bv = self.reflect_dual(i, &av);
                if !seen.contains_key(&b) {
                    seen.insert(b.clone(), bv.clone());
                    queue.push_back((b, bv));
                }
            }
        }
        let mut out: Vec<Coroot> = seen
            .into_iter()
            .map(|(coroot, root)| {
                let coefficients: Vec<i64> = self
                    .coroot_coordinates(&coroot)
                    .expect("coroots lie in the span of simple coroots")
                    .iter()
                    .map(|r| {
                        assert!(r.is_integer(), "coroot with non-integral coordinates");
                        r.to_integer()
                    })
                    .collect();
                let positive = coefficients.iter().all(|&c| c >= 0);
                debug_assert!(positive || coefficients.iter().all(|&c| c <= 0));
                Coroot { coroot, root, coefficients, positive }
            })
            .collect();
        out.sort_by_key(|c| {
            let abs: Vec<i64> = c.coefficients.iter().map(|x| x.abs()).collect();
            (!c.positive, c.height().abs(), std::cmp::Reverse(abs))
        });
        out
    }

    pub fn positive_coroots(&self) -> Vec<Coroot> {
        self.coroot_set().into_iter().filter(|c| c.positive).collect()
    }

    pub fn weyl_group(&self) -> Result<WeylGroup, RootDataError> {
        weyl_generate(self)
    }

    /// `λ ≥ μ` in the dominance order: `λ − μ` is a nonnegative integer
    /// combination of simple coroots.
    pub fn dominance_leq(&self, lambda: &[i64], mu: &[i64]) -> bool {
        dominance_leq(self, lambda, mu)
    }
}

pub fn weyl_generate(datum: &RootDatum) -> Result<WeylGroup, RootDataError> {
    WeylGroup::generate(datum, WEYL_BOUND)
}

pub fn coroot_set(datum: &RootDatum) -> Vec<Coroot> {
    datum.coroot_set()
}

/// True iff `μ ≤ λ`, i.e. `λ − μ ∈ Σ Z_{≥0} α_i`.
pub fn dominance_leq(datum: &RootDatum, lambda: &[i64], mu: &[i64]) -> bool {
    let diff: Vec<i64> = lambda.iter().zip(mu).map(|(a, b)| a - b).collect();
    match datum.coroot_coordinates(&diff) {
        Some(c) => c.iter().all(|x| x.is_integer() && *x >= Rat::from_integer(0)),
        None => false,
    }
}

/// A symmetric integer bilinear form `B(x, y) = Σ b_ij x_i y_j` on `Y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BilinearForm {
    matrix: IntMatrix,
}

impl BilinearForm {
    pub fn new(matrix: IntMatrix) -> Self {
        BilinearForm { matrix }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn eval(&self, x: &[i64], y: &[i64]) -> i64 {
        intmat::dot(x, &intmat::mat_vec(&self.matrix, y))
    }

    /// `B(x, x) / 2`, or `None` when it is not an integer.
    pub fn quadratic(&self, x: &[i64]) -> Option<i64> {
        let b = self.eval(x, x);
        (b % 2 == 0).then_some(b / 2)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvarianceError {
    #[error("form has size {form} but the datum has rank {rank}")]
    Size { form: usize, rank: usize },
    #[error("b[{i}][{j}] = {bij} differs from b[{j}][{i}] = {bji}")]
    NotSymmetric { i: usize, j: usize, bij: i64, bji: i64 },
    #[error("B(s_{generator} e_{i}, s_{generator} e_{j}) = {got}, expected {expected}")]
    NotInvariant { generator: usize, i: usize, j: usize, got: i64, expected: i64 },
    #[error("Q({coroot:?}) = {value}/2 is not an integer")]
    QNotIntegral { coroot: Vec<i64>, value: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceReport {
    /// `(α, Q(α))` for every coroot, in [`RootDatum::coroot_set`] order.
    pub q_values: Vec<(Vec<i64>, i64)>,
}

pub fn check_invariance(datum: &RootDatum, form: &BilinearForm) -> Result<InvarianceReport, InvarianceError> {
    let r = datum.rank();
    if form.dim() != r || form.matrix.iter().any(|row| row.len() != r) {
        return Err(InvarianceError::Size { form: form.dim(), rank: r });
    }
    let b = &form.matrix;
    for i in 0..r {
        for j in i + 1..r {
            if b[i][j] != b[j][i] {
                return Err(InvarianceError::NotSymmetric { i, j, bij: b[i][j], bji: b[j][i] });
            }
        }
    }
    for g in 0..datum.semisimple_rank() {
        let s = datum.reflection_matrix(g);
        let moved = intmat::mat_mul(&intmat::mat_mul(&intmat::transpose(&s), b), &s);
        for i in 0..r {
            for j in 0..r {
                if moved[i][j] != b[i][j] {
                    return Err(InvarianceError::NotInvariant { generator: g, i, j, got: moved[i][j], expected: b[i][j] });
                }
            }
        }
    }
    let mut q_values = Vec::new();
    for c in datum.coroot_set() {
        match form.quadratic(&c.coroot) {
            Some(q) => q_values.push((c.coroot, q)),
            None => return Err(InvarianceError::QNotIntegral { value: form.eval(&c.coroot, &c.coroot), coroot: c.coroot }),
        }
    }
    Ok(InvarianceReport { q_values })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl2() -> RootDatum {
        build_root_datum(1, vec![vec![1]], vec![vec![2]]).unwrap()
    }

    fn sl3() -> RootDatum {
        // Y = coroot lattice with basis α_1, α_2
        build_root_datum(2, vec![vec![1, 0], vec![0, 1]], vec![vec![2, -1], vec![-1, 2]]).unwrap()
    }

    fn sp4() -> RootDatum {
        build_root_datum(2, vec![vec![1, 0], vec![0, 1]], vec![vec![2, -1], vec![-2, 2]]).unwrap()
    }

    #[test]
    fn validation() {
        assert_eq!(sl2().cartan_matrix(), &vec![vec![2]]);
        assert!(build_root_datum(1, vec![vec![2]], vec![vec![1]]).is_ok());
        assert_eq!(
            build_root_datum(1, vec![vec![1]], vec![vec![1]]),
            Err(RootDataError::PairingNotTwo { index: 0, value: 1 })
        );
        assert!(matches!(
            build_root_datum(2, vec![vec![1]], vec![vec![2]]),
            Err(RootDataError::DimensionMismatch(_))
        ));
        // affine A1: pairing -2 both ways
        assert!(matches!(
            build_root_datum(2, vec![vec![1, 0], vec![0, 1]], vec![vec![2, -2], vec![-2, 2]]),
            Err(RootDataError::NotFiniteType(_))
        ));
        // affine A2 cycle
        assert!(matches!(
            build_root_datum(
                3,
                vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
                vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]
            ),
            Err(RootDataError::NotFiniteType(_))
        ));
    }

    #[test]
    fn coroot_counts() {
        let c = sl2().coroot_set();
        assert_eq!(c.iter().map(|x| x.coroot.clone()).collect::<Vec<_>>(), vec![vec![1], vec![-1]]);
        assert_eq!(sl3().coroot_set().len(), 6);
        let b2 = sp4().coroot_set();
        assert_eq!(b2.len(), 8);
        let form = BilinearForm::new(vec![vec![4, -2], vec![-2, 2]]);
        let mut lengths: Vec<i64> = b2.iter().map(|c| form.eval(&c.coroot, &c.coroot)).collect();
        lengths.sort();
        lengths.dedup();
        assert_eq!(lengths.len(), 2);
    }

    #[test]
    fn coroot_set_is_stable() {
        for d in [sl2(), sl3(), sp4()] {
            let set = d.coroot_set();
            let keys: std::collections::HashSet<_> = set.iter().map(|c| c.coroot.clone()).collect();
            for c in &set {
                let neg: Vec<i64> = c.coroot.iter().map(|x| -x).collect();
                assert!(keys.contains(&neg));
                assert_eq!(intmat::dot(&c.root, &c.coroot), 2);
                for i in 0..d.semisimple_rank() {
                    assert!(keys.contains(&d.reflect(i, &c.coroot)));
                }
            }
        }
    }

    #[test]
    fn invariance_examples() {
        let r = check_invariance(&sl2(), &BilinearForm::new(vec![vec![2]])).unwrap();
        assert_eq!(r.q_values, vec![(vec![1], 1), (vec![-1], 1)]);
        let r = check_invariance(&sl3(), &BilinearForm::new(vec![vec![2, -1], vec![-1, 2]])).unwrap();
        assert!(r.q_values.iter().all(|(_, q)| *q == 1));
        assert!(matches!(
            check_invariance(&sl2(), &BilinearForm::new(vec![vec![3]])),
            Err(InvarianceError::QNotIntegral { .. })
        ));
        assert!(matches!(
            check_invariance(&sl3(), &BilinearForm::new(vec![vec![2, 0], vec![0, 2]])),
            Err(InvarianceError::NotInvariant { .. })
        ));
    }

    #[test]
    fn q_is_constant_on_orbits() {
        let d = sp4();
        let form = BilinearForm::new(vec![vec![4, -2], vec![-2, 2]]);
        let report = check_invariance(&d, &form).unwrap();
        let w = d.weyl_group().unwrap();
        for (a, qa) in &report.q_values {
            for e in w.elements() {
                let b = intmat::mat_vec(&e.matrix, a);
                let qb = report.q_values.iter().find(|(x, _)| *x == b).unwrap().1;
                assert_eq!(*qa, qb);
            }
        }
    }

    #[test]
    fn dominance() {
        let d = sl2();
        assert!(dominance_leq(&d, &[2], &[2]));
        assert!(dominance_leq(&d, &[3], &[1]));
        assert!(!dominance_leq(&d, &[1], &[2]));
        let d = sl3();
        assert!(dominance_leq(&d, &[1, 1], &[0, 0]));
        assert!(!dominance_leq(&d, &[1, 0], &[0, 1]));
    }
}
