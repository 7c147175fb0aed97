//! Structure constants of an `n`-fold metaplectic cover: the lattice `Λ`,
//! the integers `n_α`, and the dual root datum built from them.

mod dual;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::intmat::{self, IntMatrix, Rat};
use crate::rootdata::{check_invariance, BilinearForm, Coroot, InvarianceError, RootDatum};

pub use dual::{dual_root_datum, DualRootDatum, SandwichWitness};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetaError {
    #[error("cover degree must be positive, got {0}")]
    BadDegree(i64),
    #[error(transparent)]
    Form(#[from] InvarianceError),
    #[error("Q({0:?}) = {1} must be a positive integer on every coroot")]
    DegenerateCoroot(Vec<i64>, i64),
    #[error("{0:?} is not in the lattice Lambda")]
    NotInLambda(Vec<i64>),
    #[error("root datum axiom `{axiom}` fails: {witness}")]
    AxiomFailure { axiom: &'static str, witness: String },
}

/// `gcd(n, 0) = n`, so `Q = 0` yields `1`.
pub fn n_alpha(q_val: i64, n: i64) -> Result<i64, MetaError> {
    if n <= 0 {
        return Err(MetaError::BadDegree(n));
    }
    Ok(n / n.gcd(&q_val))
}

/// A basis of a full-rank sublattice of `Y`, in Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeBasis {
    /// Basis vectors in `Y`-coordinates.
    pub basis: Vec<Vec<i64>>,
    /// `[Y : Λ]`.
    pub index: i64,
}

impl LatticeBasis {
    /// Coordinates of `y` in this basis, if `y` lies in the lattice.
    pub fn coordinates(&self, y: &[i64]) -> Option<Vec<i64>> {
        let m = intmat::from_columns(&self.basis, y.len());
        intmat::solve_integer(&m, y)
    }

    pub fn contains(&self, y: &[i64]) -> bool {
        self.coordinates(y).is_some()
    }

    pub fn from_coordinates(&self, c: &[i64]) -> Vec<i64> {
        let r = self.basis.first().map_or(0, |b| b.len());
        (0..r).map(|i| self.basis.iter().zip(c).map(|(b, x)| b[i] * x).sum()).collect()
    }
}

/// `Λ = {x ∈ Y : B x ≡ 0 mod n}`.
///
/// With `U B V = diag(d)`, the condition reads `d_i z_i ≡ 0 mod n` for
/// `z = V^{-1} x`, so `Λ = V · diag(n / gcd(n, d_i)) Z^r`.
pub fn lambda_lattice(form: &BilinearForm, n: i64) -> LatticeBasis {
    let r = form.dim();
    let s = intmat::smith(form.matrix());
    let scales: Vec<i64> = (0..r).map(|i| n / n.gcd(&s.diag.get(i).copied().unwrap_or(0))).collect();
    let gens: Vec<Vec<i64>> = (0..r).map(|j| (0..r).map(|i| s.v[i][j] * scales[j]).collect()).collect();
    let basis = intmat::hnf_rows(&gens);
    LatticeBasis { index: scales.iter().product(), basis }
}

/// `B x ≡ 0 mod n`.
pub fn in_lambda(form: &BilinearForm, n: i64, x: &[i64]) -> bool {
    intmat::mat_vec(form.matrix(), x).iter().all(|v| v % n == 0)
}

/// Root datum, invariant form and cover degree, with the derived constants.
#[derive(Clone, Debug, Serialize)]
pub struct MetaplecticDatum {
    root: RootDatum,
    form: BilinearForm,
    n: i64,
    coroots: Vec<Coroot>,
    q_values: Vec<i64>,
    n_alphas: Vec<i64>,
    lambda: LatticeBasis,
}

impl MetaplecticDatum {
    pub fn new(root: RootDatum, form: BilinearForm, n: i64) -> Result<Self, MetaError> {
        if n <= 0 {
            return Err(MetaError::BadDegree(n));
        }
        let report = check_invariance(&root, &form)?;
        let coroots = root.coroot_set();
        let mut q_values = Vec::with_capacity(coroots.len());
        let mut n_alphas = Vec::with_capacity(coroots.len());
        for (c, (a, q)) in coroots.iter().zip(&report.q_values) {
            debug_assert_eq!(&c.coroot, a);
            if *q <= 0 {
                return Err(MetaError::DegenerateCoroot(a.clone(), *q));
            }
            q_values.push(*q);
            n_alphas.push(n_alpha(*q, n)?);
        }
        let lambda = lambda_lattice(&form, n);
        Ok(MetaplecticDatum { root, form, n, coroots, q_values, n_alphas, lambda })
    }

    pub fn root_datum(&self) -> &RootDatum {
        &self.root
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn degree(&self) -> i64 {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.root.rank()
    }

    /// Coroots in [`RootDatum::coroot_set`] order.
    pub fn coroots(&self) -> &[Coroot] {
        &self.coroots
    }

    pub fn q_values(&self) -> &[i64] {
        &self.q_values
    }

    pub fn n_alphas(&self) -> &[i64] {
        &self.n_alphas
    }

    pub fn lambda(&self) -> &LatticeBasis {
        &self.lambda
    }

    pub fn in_lambda(&self, x: &[i64]) -> bool {
        in_lambda(&self.form, self.n, x)
    }

    fn coroot_position(&self, a: &[i64]) -> Option<usize> {
        self.coroots.iter().position(|c| c.coroot == a)
    }

    /// `Q(α)` for a coroot given by its `Y`-coordinates.
    pub fn q_of(&self, a: &[i64]) -> Option<i64> {
        self.coroot_position(a).map(|k| self.q_values[k])
    }

    pub fn n_alpha_of(&self, a: &[i64]) -> Option<i64> {
        self.coroot_position(a).map(|k| self.n_alphas[k])
    }

    /// `n_{α_i}` for the simple coroots.
    pub fn simple_n_alphas(&self) -> Vec<i64> {
        self.root.simple_coroots().iter().map(|a| self.n_alpha_of(a).expect("simple coroot")).collect()
    }
}

/// `(dim i(χ), dim Wh)`: both are the index `[Y : Λ]`.
pub fn heisenberg_dimensions(md: &MetaplecticDatum) -> (i64, i64) {
    (md.lambda.index, md.lambda.index)
}

/// Dominant `λ ∈ Λ` lying in the span of the coroots, with height (sum of
/// coordinates in the simple-coroot basis) at most `height_bound`. Sorted
/// lexicographically by `Y`-coordinates.
pub fn dominant_lambda(md: &MetaplecticDatum, height_bound: i64) -> Vec<Vec<i64>> {
    let root = &md.root;
    let l = root.semisimple_rank();
    let r = root.rank();
    if l == 0 {
        return vec![vec![0; r]];
    }
    // λ = Σ c_j α_j with c = A^{-1} p, p_i = ⟨α_i^∨, λ⟩ ≥ 0
    let a = root.cartan_matrix();
    let inv_cols: Vec<Vec<Rat>> = (0..l)
        .map(|i| {
            let e: Vec<i64> = (0..l).map(|k| i64::from(k == i)).collect();
            intmat::solve_rational(a, &e).expect("Cartan matrix is invertible")
        })
        .collect();
    let weights: Vec<Rat> = inv_cols.iter().map(|c| c.iter().sum()).collect();
    let bound = Rat::from_integer(height_bound);
    let mut out = Vec::new();
    let mut p = vec![0i64; l];
    enumerate(&mut p, 0, Rat::from_integer(0), &weights, bound, &mut |p| {
        let c: Vec<Rat> = (0..l).map(|j| (0..l).map(|i| inv_cols[i][j] * p[i]).sum()).collect();
        let y: Vec<Rat> = (0..r)
            .map(|k| (0..l).map(|j| c[j] * root.simple_coroots()[j][k]).sum())
            .collect();
        if y.iter().all(|v| v.is_integer()) {
            let y: Vec<i64> = y.iter().map(|v| v.to_integer()).collect();
            if md.in_lambda(&y) {
                out.push(y);
            }
        }
    });
    out.sort();
    out
}

fn enumerate(p: &mut Vec<i64>, i: usize, used: Rat, w: &[Rat], bound: Rat, f: &mut impl FnMut(&[i64])) {
    if i == p.len() {
        f(p);
        return;
    }
    let mut k = 0;
    loop {
        let h = used + w[i] * k;
        if h > bound {
            break;
        }
        p[i] = k;
        enumerate(p, i + 1, h, w, bound, f);
        k += 1;
    }
    p[i] = 0;
}

/// `2⟨ρ^∨, λ⟩` where `ρ^∨` is half the sum of `α^∨ / n_α` over positive `α`:
/// the exponent of `v` (with `v² = q`) in `q^{⟨ρ^∨, λ⟩}`.
pub fn rho_dual_pairing(md: &MetaplecticDatum, lambda: &[i64]) -> Result<i64, MetaError> {
    if !md.in_lambda(lambda) {
        return Err(MetaError::NotInLambda(lambda.to_vec()));
    }
    let mut total = 0;
    for (c, &na) in md.coroots.iter().zip(&md.n_alphas) {
        if c.positive {
            let p = intmat::dot(&c.root, lambda);
            debug_assert_eq!(p % na, 0);
            total += p / na;
        }
    }
    Ok(total)
}

/// `2⟨ρ, λ⟩` with `ρ` half the sum of the positive roots `α^∨` of the
/// original datum.
pub fn rho_pairing(root: &RootDatum, lambda: &[i64]) -> i64 {
    root.coroot_set().iter().filter(|c| c.positive).map(|c| intmat::dot(&c.root, lambda)).sum()
}

/// The `Λ` basis as a matrix whose columns are the basis vectors.
pub fn lambda_matrix(md: &MetaplecticDatum) -> IntMatrix {
    intmat::from_columns(&md.lambda.basis, md.rank())
}
