//! Brute-force computations on the `n`-fold cover of `SL_2(F_q((t)))`.
//!
//! Everything here runs over [`RatFunc`], so every matrix entry is exact.
//! The torus element `π^{lα}` is `diag(t^l, t^{-l})`, lifted through the
//! trivial section, and `SL_2(O)` is lifted through `κ`.

mod cartan;
mod convolve;
mod gk;
mod iwahori;
mod satake;

pub use cartan::{CartanDecomposition, CosetClass, GenuineCosetReport, Strategy, SupportWitness};
pub use convolve::{coset_count, left_coset_rep, ConvolutionCheck, ConvolutionReport, CosetSide, COSET_BOUND};
pub use gk::{gk_rank_one, GkRankOneReport, XPoly};
pub use iwahori::{IwahoriCase, IwahoriReport};
pub use satake::{SatakeMatrix, SatakeReport, SatakeRow, ShellRecord};

use num_integer::Integer;
use thiserror::Error;

use crate::arith::{ArithError, PrimeField, RatFunc};
use crate::cocycle::{CocycleError, MetaSL2Element, SL2Element, Sl2Cover};
use crate::metalattice::n_alpha;

#[derive(Debug, Error, PartialEq)]
pub enum Sl2Error {
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("{l}α is not in Λ = {step}Zα")]
    NotInLambda { l: i64, step: i64 },
    #[error("λ = {l}α must be dominant")]
    NotDominant { l: i64 },
    #[error("double coset class is not constant on the shell v(u) = {shell}: {witness}")]
    ShellNotConstant { shell: i64, witness: String },
    #[error("{count} cosets exceed the enumeration bound {bound}")]
    CosetBound { count: u64, bound: u64 },
    #[error("⟨α^∨, λ⟩ = {pairing} is neither n_α = {n_alpha} nor 2n_α")]
    IwahoriShape { pairing: i64, n_alpha: i64 },
    #[error("decomposition check failed for {0}")]
    Decomposition(String),
}

/// The rank-one engine: the field, the cover and the lattice `Λ = step·Zα`.
#[derive(Clone, Debug)]
pub struct Sl2Engine {
    cover: Sl2Cover,
    step: i64,
    n_alpha: i64,
}

impl Sl2Engine {
    pub fn new(q: u64, n: u64, q_alpha: i64) -> Result<Self, Sl2Error> {
        let field = PrimeField::new(q)?;
        let cover = Sl2Cover::new(field, n, q_alpha)?;
        let n = n as i64;
        // B(lα, α) = 2Ql must lie in nZ
        let step = n / n.gcd(&(2 * q_alpha));
        let n_alpha = n_alpha(q_alpha, n).map_err(CocycleError::from)?;
        Ok(Sl2Engine { cover, step, n_alpha })
    }

    pub fn cover(&self) -> &Sl2Cover {
        &self.cover
    }

    pub fn modulus(&self) -> u64 {
        self.cover.modulus()
    }

    pub fn degree(&self) -> u64 {
        self.cover.degree()
    }

    pub fn q_alpha(&self) -> i64 {
        self.cover.q_alpha()
    }

    /// The generator `step` of `Λ = step·Zα`.
    pub fn lambda_step(&self) -> i64 {
        self.step
    }

    pub fn n_alpha(&self) -> i64 {
        self.n_alpha
    }

    pub fn in_lambda(&self, l: i64) -> bool {
        l % self.step == 0
    }

    /// The smallest `l > 0` with `lα ∉ Λ`, if any.
    pub fn smallest_excluded(&self) -> Option<i64> {
        (self.step > 1).then_some(1)
    }

    pub(crate) fn kappa_lift(&self, k: &SL2Element<RatFunc>) -> Result<MetaSL2Element<RatFunc>, Sl2Error> {
        Ok(self.cover.kappa_lift(k)?)
    }

    pub(crate) fn mul(
        &self,
        x: &MetaSL2Element<RatFunc>,
        y: &MetaSL2Element<RatFunc>,
    ) -> Result<MetaSL2Element<RatFunc>, Sl2Error> {
        Ok(self.cover.mul(x, y)?)
    }

    /// `s(π^{lα}) = (diag(t^l, t^{-l}), 1)`.
    pub fn s_pi(&self, l: i64) -> MetaSL2Element<RatFunc> {
        self.cover.s_pi(l)
    }

    fn check_dominant(&self, l: i64) -> Result<(), Sl2Error> {
        if l < 0 {
            return Err(Sl2Error::NotDominant { l });
        }
        if !self.in_lambda(l) {
            return Err(Sl2Error::NotInLambda { l, step: self.step });
        }
        Ok(())
    }
}
