//! The tame Hilbert symbol `(s, t)_m` on `F^× × F^×` with values in `μ_m`.
//!
//! For `F = F_q((t))` and `m | q − 1`,
//! `(s, t)_m = ((−1)^{v(s)v(t)} s^{v(t)} / t^{v(s)} mod π)^{(q−1)/m}`,
//! which only sees valuations and leading units.

use crate::arith::{ArithError, LocalField, MuElement, PrimeField};

/// `(s, t)_m` from valuation/leading-unit data.
pub fn tame_symbol(field: &PrimeField, s: (i64, u64), t: (i64, u64), m: u64) -> Result<MuElement, ArithError> {
    let q = field.modulus();
    if m == 0 || (q - 1) % m != 0 {
        return Err(ArithError::OrderNotDividing { m, q });
    }
    let (vs, us) = s;
    let (vt, ut) = t;
    let ord = (q - 1) as i128;
    let sign = if (vs * vt).rem_euclid(2) == 1 { ord / 2 } else { 0 };
    let e = sign + vt as i128 * field.dlog(us)? as i128 - vs as i128 * field.dlog(ut)? as i128;
    let e = e.rem_euclid(ord) as i64;
    Ok(MuElement::new(m, e))
}

pub fn hilbert_symbol<F: LocalField>(field: &PrimeField, s: &F, t: &F, m: u64) -> Result<MuElement, ArithError> {
    for x in [s, t] {
        if x.modulus() != field.modulus() {
            return Err(ArithError::ModulusMismatch(x.modulus(), field.modulus()));
        }
    }
    tame_symbol(field, s.valuation_leading()?, t.valuation_leading()?, m)
}
