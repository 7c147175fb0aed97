//! Explicit 2-cocycles: the `μ_{2n}`-valued torus cocycle attached to `B`,
//! its commutator pairing, and the Kubota cocycle with its splitting over
//! `SL_2(O)`.

mod check;
pub mod random;
mod sl2;

use thiserror::Error;

use crate::arith::{ArithError, LocalField, MuElement, PrimeField};
use crate::hilbert::tame_symbol;
use crate::metalattice::{MetaError, MetaplecticDatum};

pub use check::{cocycle_check, CheckLine, CocycleReport};
pub use sl2::{kubota_kappa, kubota_sigma, meta_mul, MetaSL2Element, SL2Element, Sl2Cover};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CocycleError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("determinant is not 1: det - 1 = {0}")]
    Determinant(String),
    #[error("cannot decide whether the {0} vanishes at the available precision")]
    UndecidableZero(&'static str),
    #[error("element is not in SL_2(O)")]
    NotIntegral,
    #[error("torus element has {got} coordinates, expected {expected}")]
    Rank { got: usize, expected: usize },
    #[error(transparent)]
    Meta(#[from] MetaError),
    #[error("commutator {0} does not lie in mu_n")]
    NotInMuN(MuElement),
}

/// `(t_1, …, t_r) ∈ (F^×)^r ≅ T`, coordinates relative to the basis of `Y`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusElement<F> {
    coords: Vec<F>,
}

impl<F: LocalField> TorusElement<F> {
    pub fn new(coords: Vec<F>) -> Result<Self, CocycleError> {
        for c in &coords {
            c.valuation_leading()?;
        }
        Ok(TorusElement { coords })
    }

    pub fn coords(&self) -> &[F] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    /// `x^y = (x^{y_1}, …, x^{y_r})` for a cocharacter `y ∈ Y`.
    pub fn cocharacter(y: &[i64], x: &F) -> Result<Self, CocycleError> {
        let coords = y.iter().map(|&k| field_pow(x, k)).collect::<Result<Vec<_>, _>>()?;
        Self::new(coords)
    }

    pub fn mul(&self, o: &Self) -> Result<Self, CocycleError> {
        if self.rank() != o.rank() {
            return Err(CocycleError::Rank { got: o.rank(), expected: self.rank() });
        }
        let coords = self.coords.iter().zip(&o.coords).map(|(a, b)| a.mul(b)).collect::<Result<Vec<_>, _>>()?;
        Ok(TorusElement { coords })
    }

    /// `(v(t_i), leading unit of t_i)` for each coordinate.
    pub fn data(&self) -> Result<Vec<(i64, u64)>, CocycleError> {
        Ok(self.coords.iter().map(|c| c.valuation_leading()).collect::<Result<Vec<_>, _>>()?)
    }

    pub fn valuations(&self) -> Result<Vec<i64>, CocycleError> {
        Ok(self.data()?.into_iter().map(|d| d.0).collect())
    }
}

fn field_pow<F: LocalField>(x: &F, k: i64) -> Result<F, ArithError> {
    let base = if k < 0 { x.inv()? } else { x.clone() };
    let mut r = F::one(x.modulus());
    for _ in 0..k.unsigned_abs() {
        r = r.mul(&base)?;
    }
    Ok(r)
}

fn check_rank<F>(md: &MetaplecticDatum, s: &TorusElement<F>) -> Result<(), CocycleError> {
    if s.coords.len() != md.rank() {
        return Err(CocycleError::Rank { got: s.coords.len(), expected: md.rank() });
    }
    Ok(())
}

/// `σ(s, t) = ∏_{i ≤ j} (s_i, t_j)_{2n}^{q_ij}` with `q_ii = b_ii`, `q_ij = 2 b_ij`.
pub fn torus_cocycle<F: LocalField>(
    field: &PrimeField,
    s: &TorusElement<F>,
    t: &TorusElement<F>,
    md: &MetaplecticDatum,
) -> Result<MuElement, CocycleError> {
    check_rank(md, s)?;
    check_rank(md, t)?;
    let m = 2 * md.degree() as u64;
    let b = md.form().matrix();
    let (sd, td) = (s.data()?, t.data()?);
    let mut acc = MuElement::identity(m);
    for i in 0..sd.len() {
        for j in i..td.len() {
            let qij = if i == j { b[i][i] } else { 2 * b[i][j] };
            if qij != 0 {
                acc = acc.mul(&tame_symbol(field, sd[i], td[j], m)?.pow(qij))?;
            }
        }
    }
    Ok(acc)
}

/// `[s, t] = ∏_{i,j} (s_i, t_j)_n^{b_ij}`.
pub fn torus_commutator<F: LocalField>(
    field: &PrimeField,
    s: &TorusElement<F>,
    t: &TorusElement<F>,
    md: &MetaplecticDatum,
) -> Result<MuElement, CocycleError> {
    check_rank(md, s)?;
    check_rank(md, t)?;
    let n = md.degree() as u64;
    let b = md.form().matrix();
    let (sd, td) = (s.data()?, t.data()?);
    let mut acc = MuElement::identity(n);
    for (i, si) in sd.iter().enumerate() {
        for (j, tj) in td.iter().enumerate() {
            if b[i][j] != 0 {
                acc = acc.mul(&tame_symbol(field, *si, *tj, n)?.pow(b[i][j]))?;
            }
        }
    }
    Ok(acc)
}

/// `σ(s, t) σ(t, s)^{-1}` in `μ_{2n}`, certified to land in `μ_n`.
pub fn commutator_from_cocycle<F: LocalField>(
    field: &PrimeField,
    s: &TorusElement<F>,
    t: &TorusElement<F>,
    md: &MetaplecticDatum,
) -> Result<MuElement, CocycleError> {
    let c = torus_cocycle(field, s, t, md)?.mul(&torus_cocycle(field, t, s, md)?.inv())?;
    c.restrict(md.degree() as u64).ok_or(CocycleError::NotInMuN(c))
}
