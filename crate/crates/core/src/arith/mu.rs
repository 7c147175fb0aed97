use std::fmt;

use serde::Serialize;

use super::{ArithError, PrimeField};

/// An element `ζ_m^e` of the cyclic group `μ_m ⊂ F_q^×`, where
/// `ζ_m = g^{(q-1)/m}` for the field's fixed generator `g`.
///
/// All computations stay in exponent form; a faithful character of `μ_m`
/// is implicit in the exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MuElement {
    order: u64,
    exp: u64,
}

impl MuElement {
    pub fn new(order: u64, exp: i64) -> Self {
        assert!(order > 0, "root of unity order must be positive");
        MuElement { order, exp: exp.rem_euclid(order as i64) as u64 }
    }

    pub fn identity(order: u64) -> Self {
        MuElement { order, exp: 0 }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exp
    }

    pub fn is_identity(&self) -> bool {
        self.exp == 0
    }

    pub fn mul(&self, other: &MuElement) -> Result<MuElement, ArithError> {
        if self.order != other.order {
            return Err(ArithError::MuOrderMismatch(self.order, other.order));
        }
        Ok(MuElement::new(self.order, (self.exp + other.exp) as i64))
    }

    pub fn inv(&self) -> MuElement {
        MuElement::new(self.order, -(self.exp as i64))
    }

    pub fn pow(&self, e: i64) -> MuElement {
        let m = self.order as i128;
        let exp = (self.exp as i128 * e as i128).rem_euclid(m);
        MuElement { order: self.order, exp: exp as u64 }
    }

    /// Image under `μ_m → μ_{km}`; since `ζ_m = ζ_{km}^k` the exponent scales by `k`.
    pub fn embed(&self, target_order: u64) -> Result<MuElement, ArithError> {
        if target_order % self.order != 0 {
            return Err(ArithError::MuOrderMismatch(self.order, target_order));
        }
        let k = target_order / self.order;
        Ok(MuElement::new(target_order, (self.exp * k) as i64))
    }

    /// The element of `μ_{m/k}` whose image in `μ_m` is `self`, if any.
    pub fn restrict(&self, target_order: u64) -> Option<MuElement> {
        if target_order == 0 || self.order % target_order != 0 {
            return None;
        }
        let k = self.order / target_order;
        (self.exp % k == 0).then(|| MuElement::new(target_order, (self.exp / k) as i64))
    }

    /// The residue `ζ_m^e ∈ F_q`.
    pub fn residue(&self, field: &PrimeField) -> Result<u64, ArithError> {
        let q1 = field.modulus() - 1;
        if q1 % self.order != 0 {
            return Err(ArithError::OrderNotDividing { m: self.order, q: field.modulus() });
        }
        Ok(field.gen_pow((q1 / self.order * self.exp) as i64))
    }
}

impl fmt::Display for MuElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "1")
        } else {
            write!(f, "ζ{}^{}", self.order, self.exp)
        }
    }
}

/// `u^{(q-1)/m}` as an element of `μ_m`. Its exponent is `dlog_g(u) mod m`.
pub fn unit_to_mu(field: &PrimeField, u: u64, m: u64) -> Result<MuElement, ArithError> {
    if m == 0 || (field.modulus() - 1) % m != 0 {
        return Err(ArithError::OrderNotDividing { m, q: field.modulus() });
    }
    let k = field.dlog(u)?;
    Ok(MuElement::new(m, k as i64))
}
