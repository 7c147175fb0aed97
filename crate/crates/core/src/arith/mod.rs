//! Exact arithmetic for the model local field `F = F_q((t))` with uniformiser `t`.

mod field;
mod laurent;
mod mu;
mod poly;
mod ratfunc;

use std::fmt::Debug;

use thiserror::Error;

pub use field::PrimeField;
pub use laurent::LaurentNumber;
pub use mu::{unit_to_mu, MuElement};
pub use ratfunc::RatFunc;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds the supported range")]
    ModulusTooLarge(u64),
    #[error("a degree-{n} cover needs 2n | q-1, but q = {q}")]
    CoverDegree { q: u64, n: u64 },
    #[error("{m} does not divide q-1 = {}", q - 1)]
    OrderNotDividing { m: u64, q: u64 },
    #[error("field moduli differ: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("roots of unity of orders {0} and {1} cannot be combined")]
    MuOrderMismatch(u64, u64),
    #[error("zero has no multiplicative inverse or leading unit")]
    ZeroInput,
    #[error("zero is not a unit")]
    ZeroUnit,
    #[error("precision must be at least one coefficient")]
    ZeroPrecision,
    #[error("not enough precision to decide the leading term")]
    InsufficientPrecision,
    #[error("exact inverse has an infinite expansion; request a precision")]
    InfiniteExpansion,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Operations the cocycle machinery needs from a model of `F`.
///
/// Implemented by truncated series ([`LaurentNumber`]) and by exact rational
/// functions ([`RatFunc`]).
pub trait LocalField: Clone + Debug + PartialEq + Send + Sync + Sized {
    fn modulus(&self) -> u64;
    fn constant(q: u64, c: i64) -> Self;
    /// `c · t^k`.
    fn monomial(q: u64, c: i64, k: i64) -> Self;
    fn add(&self, o: &Self) -> Result<Self, ArithError>;
    fn sub(&self, o: &Self) -> Result<Self, ArithError>;
    fn mul(&self, o: &Self) -> Result<Self, ArithError>;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, ArithError>;
    /// Errors when the available precision cannot decide.
    fn is_zero(&self) -> Result<bool, ArithError>;
    /// `(v(a), c_0)` where `c_0` is the residue of `a · t^{-v(a)}`.
    fn valuation_leading(&self) -> Result<(i64, u64), ArithError>;

    fn valuation(&self) -> Result<i64, ArithError> {
        Ok(self.valuation_leading()?.0)
    }

    fn one(q: u64) -> Self {
        Self::constant(q, 1)
    }

    fn zero(q: u64) -> Self {
        Self::constant(q, 0)
    }
}

/// `(v(a), c_0)` for a nonzero element.
pub fn valuation_leading<F: LocalField>(a: &F) -> Result<(i64, u64), ArithError> {
    a.valuation_leading()
}
