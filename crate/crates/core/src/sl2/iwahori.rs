use serde::Serialize;

use super::{Sl2Engine, Sl2Error};
use crate::arith::{MuElement, RatFunc};
use crate::cocycle::SL2Element;
use crate::hilbert::tame_symbol;
use crate::scalar::{CycloSum, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IwahoriCase {
    /// `⟨α^∨, λ⟩ = n_α`.
    Three,
    /// `⟨α^∨, λ⟩ = 2n_α`.
    Four,
}

/// `T_λ T_{sλ}(π^λ)` assembled from the integrand's phases over the
/// parametrization `h = (b t^{2l}, d; −a, −u t^{−l})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IwahoriReport {
    pub q: u64,
    pub n: u64,
    pub q_alpha: i64,
    pub l: i64,
    pub n_alpha: i64,
    pub case: IwahoriCase,
    pub samples: u64,
    /// Number of samples whose integrand is `ζ^{-e}`, indexed by `e`.
    pub phase_counts: Vec<u64>,
    /// Every integrand equals `(au, π^{lQ})^{±1}`.
    pub symbol_matches: bool,
    pub divisible: bool,
    pub volume: Scalar,
    pub value: Scalar,
}

fn constant(q: u64, c: i64) -> RatFunc {
    RatFunc::laurent_poly(q, 0, &[c])
}

fn mono(q: u64, c: i64, k: i64) -> RatFunc {
    RatFunc::laurent_poly(q, k, &[c])
}

impl Sl2Engine {
    /// The case of `λ = lα` in the quadratic-relation computation.
    pub fn iwahori_case(&self, l: i64) -> Result<IwahoriCase, Sl2Error> {
        let pairing = 2 * l;
        let na = self.n_alpha();
        if pairing == na {
            Ok(IwahoriCase::Three)
        } else if pairing == 2 * na {
            Ok(IwahoriCase::Four)
        } else {
            Err(Sl2Error::IwahoriShape { pairing, n_alpha: na })
        }
    }

    pub fn iwahori_integrand(&self, l: i64) -> Result<IwahoriReport, Sl2Error> {
        let case = self.iwahori_case(l)?;
        self.check_dominant(l)?;
        let q = self.modulus();
        let n = self.degree();
        let qa = self.q_alpha();
        let field = self.cover().field().clone();
        let pi_l = SL2Element::pi_power(q, l);
        let s = SL2Element::<RatFunc>::w(q).inverse();
        let target = self.mul(&self.kappa_lift(&s)?, &self.s_pi(l))?;
        let mut sum = CycloSum::new(n);
        let mut counts = vec![0u64; n as usize];
        let mut symbol_matches = true;
        let mut samples = 0;
        for a in 1..q as i64 {
            for u in 1..q as i64 {
                for b in 0..q as i64 {
                    let ai = field.inv(a as u64)? as i64;
                    let ui = field.inv(u as u64)? as i64;
                    // ad − b t^l u = 1
                    let d = constant(q, 1).add(&mono(q, b * u, l))?.mul(&constant(q, ai))?;
                    let h = SL2Element::new(mono(q, b, 2 * l), d.clone(), constant(q, -a), mono(q, -u, -l))?;
                    let i1 = SL2Element::new(constant(q, -u), d.mul(&mono(q, -1, l))?, RatFunc::zero(q), constant(q, -ui))?;
                    let i2 = SL2Element::lower(mono(q, -a * ui, l));
                    let i3 = SL2Element::new(d.clone(), constant(q, -b), mono(q, -u, l), constant(q, a))?;
                    if i1.mul(&h)?.mul(&i2)? != pi_l || h.inverse().mul(&pi_l)?.mul(&i3)? != target.g {
                        return Err(Sl2Error::Decomposition(format!("parametrization at a={a} u={u} b={b}")));
                    }
                    let hh = self.cover().lift(h);
                    let x1 = self.mul(&self.mul(&self.kappa_lift(&i1)?, &hh)?, &self.kappa_lift(&i2)?)?;
                    let hi = self.cover().inverse(&hh)?;
                    let x2 = self.mul(&self.mul(&hi, &self.s_pi(l))?, &self.kappa_lift(&i3)?)?;
                    let z1 = x1.zeta;
                    let z2 = x2.zeta.mul(&target.zeta.inv())?;
                    let e = z1.mul(&z2)?.exponent();
                    let symbol = tame_symbol(&field, (0, field.reduce(a * u)), (l, 1), n)?.pow(qa);
                    symbol_matches &= MuElement::new(n, e as i64) == symbol || MuElement::new(n, e as i64) == symbol.inv();
                    counts[e as usize] += 1;
                    sum.add_at((n - e) % n, &Scalar::one());
                    samples += 1;
                }
            }
        }
        let volume = Scalar::q_pow(2 * self.n_alpha() - 1);
        let average = sum.as_scalar().and_then(|s| s.as_int()).ok_or_else(|| {
            Sl2Error::Decomposition(format!("integrand phases {counts:?} do not average to a rational"))
        })?;
        let value = if average == 0 {
            Scalar::zero()
        } else if average == samples as i128 {
            volume.clone()
        } else {
            return Err(Sl2Error::Decomposition(format!("integrand phases {counts:?} neither cancel nor agree")));
        };
        Ok(IwahoriReport {
            q,
            n,
            q_alpha: qa,
            l,
            n_alpha: self.n_alpha(),
            case,
            samples,
            phase_counts: counts,
            symbol_matches,
            divisible: (l * qa) % n as i64 == 0,
            volume,
            value,
        })
    }
}
