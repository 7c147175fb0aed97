use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use super::{Sl2Engine, Sl2Error};
use crate::arith::RatFunc;
use crate::cocycle::SL2Element;
use crate::scalar::{CycloSum, Scalar};

/// A polynomial in the formal variable `x = x_α` with [`Scalar`] coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct XPoly {
    terms: BTreeMap<u32, Scalar>,
}

impl XPoly {
    pub fn zero() -> Self {
        XPoly::default()
    }

    pub fn one() -> Self {
        XPoly::term(Scalar::one(), 0)
    }

    /// `c · x^k`.
    pub fn term(c: Scalar, k: u32) -> Self {
        let mut p = XPoly::zero();
        p.add_term(k, &c);
        p
    }

    /// `1 − c·x^k`.
    pub fn one_minus(c: Scalar, k: u32) -> Self {
        XPoly::one().sub(&XPoly::term(c, k))
    }

    fn add_term(&mut self, k: u32, c: &Scalar) {
        let e = self.terms.entry(k).or_default();
        e.add_assign(c);
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn coefficient(&self, k: u32) -> Scalar {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &XPoly) -> XPoly {
        let mut r = self.clone();
        for (&k, c) in &o.terms {
            r.add_term(k, c);
        }
        r
    }

    pub fn sub(&self, o: &XPoly) -> XPoly {
        let mut r = self.clone();
        for (&k, c) in &o.terms {
            r.add_term(k, &-c);
        }
        r
    }

    pub fn mul(&self, o: &XPoly) -> XPoly {
        let mut r = XPoly::zero();
        for (&a, x) in &self.terms {
            for (&b, y) in &o.terms {
                r.add_term(a + b, &(x * y));
            }
        }
        r
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&k, c)| match k {
                0 => format!("({c})"),
                _ => format!("({c})*x^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for XPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The renormalized rank-one intertwining integral against the Gindikin-Karpelevich factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GkRankOneReport {
    pub q: u64,
    pub n: u64,
    pub q_alpha: i64,
    pub n_alpha: i64,
    /// Coefficient of `x^k` contributed by the shell `v(x) = −k`, `1 ≤ k ≤ 2n`.
    pub shell_coefficients: Vec<(i64, Scalar)>,
    /// The shell coefficients repeat with period `n`.
    pub periodic: bool,
    /// `(1 − x^n) · ∫ φ_K(w^{-1} e(x)) dx` in closed form.
    pub renormalized: XPoly,
    pub formula_numerator: XPoly,
    pub formula_denominator: XPoly,
    pub holds: bool,
}

impl Sl2Engine {
    /// `∫_{v(x) = −k} φ_K(w^{-1} e(x)) dx` as a multiple of `x^k`.
    fn shell_coefficient(&self, k: i64) -> Result<Scalar, Sl2Error> {
        let q = self.modulus();
        let n = self.degree();
        if !self.in_lambda(k) {
            return Ok(Scalar::zero());
        }
        let winv = self.cover().lift(SL2Element::<RatFunc>::w(q).inverse());
        let mut chars = CycloSum::new(n);
        for r in 1..q as i64 {
            let x = RatFunc::laurent_poly(q, -k, &[r]);
            let xi = x.inv()?;
            let g = self.mul(&winv, &self.cover().lift(SL2Element::upper(x.clone())))?;
            // w^{-1} e(x) = e(−1/x) · diag(1/x, x) · e_−(1/x)
            let left = self.cover().lift(SL2Element::upper(xi.neg()));
            let torus = self.cover().lift(SL2Element::diag(xi.clone())?);
            let right = self.kappa_lift(&SL2Element::lower(xi))?;
            let p = self.mul(&self.mul(&left, &torus)?, &right)?;
            if p.g != g.g {
                return Err(Sl2Error::Decomposition(format!("Bruhat identity at x = {r}t^{}", -k)));
            }
            let z1 = g.zeta.mul(&p.zeta.inv())?;
            // the torus lift relative to s(π^{kα}) · κ(diag(r^{-1}, r))
            let unit = SL2Element::diag(RatFunc::laurent_poly(q, 0, &[r]).inv()?)?;
            let base = self.mul(&self.s_pi(k), &self.kappa_lift(&unit)?)?;
            let zeta = z1.mul(&base.zeta.inv())?;
            chars.add_at(zeta.exponent(), &Scalar::one());
        }
        // each residue class of the shell has measure q^{k−1}, and δ^{1/2} contributes q^{−k}
        let total = chars.parts().iter().position(|p| p.as_int() == Some(q as i128 - 1));
        match total {
            Some(0) => Ok(Scalar::one() - Scalar::q_pow(-1)),
            Some(_) => Err(Sl2Error::Decomposition(format!("shell {k} has a constant nontrivial phase"))),
            None => match chars.as_scalar() {
                Some(s) if s.is_zero() => Ok(Scalar::zero()),
                Some(s) => Ok(&s * &Scalar::q_pow(-1)),
                None => Err(Sl2Error::Decomposition(format!("shell {k}: irrational phase sum {:?}", chars.reduced()))),
            },
        }
    }

    /// The shell sum `1 + Σ_{k≥1} c_k x^k` renormalized by `(1 − x^n)` and
    /// compared with `(1 − q^{-1}x^{n_α})(1 − x^n)/(1 − x^{n_α})`.
    pub fn gk_rank_one(&self) -> Result<GkRankOneReport, Sl2Error> {
        let n = self.degree() as i64;
        let na = self.n_alpha();
        let coeffs = (1..=2 * n).map(|k| Ok((k, self.shell_coefficient(k)?))).collect::<Result<Vec<_>, Sl2Error>>()?;
        let periodic = (0..n as usize).all(|i| coeffs[i].1 == coeffs[i + n as usize].1);
        // 1 + P/(1 − x^n), times (1 − x^n)
        let one_minus_xn = XPoly::one_minus(Scalar::one(), n as u32);
        let mut renormalized = one_minus_xn.clone();
        for (k, c) in coeffs.iter().take(n as usize) {
            renormalized = renormalized.add(&XPoly::term(c.clone(), *k as u32));
        }
        let formula_numerator = XPoly::one_minus(Scalar::q_pow(-1), na as u32).mul(&one_minus_xn);
        let formula_denominator = XPoly::one_minus(Scalar::one(), na as u32);
        let holds = periodic && renormalized.mul(&formula_denominator) == formula_numerator;
        Ok(GkRankOneReport {
            q: self.modulus(),
            n: self.degree(),
            q_alpha: self.q_alpha(),
            n_alpha: na,
            shell_coefficients: coeffs,
            periodic,
            renormalized,
            formula_numerator,
            formula_denominator,
            holds,
        })
    }
}

/// `gk_rank_one` for the `n`-fold cover with `Q(α) = q_alpha` over `F_q((t))`.
pub fn gk_rank_one(q: u64, n: u64, q_alpha: i64) -> Result<GkRankOneReport, Sl2Error> {
    Sl2Engine::new(q, n, q_alpha)?.gk_rank_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_and_metaplectic_cases() {
        let r = gk_rank_one(7, 1, 1).unwrap();
        assert!(r.holds, "{r:?}");
        assert_eq!(r.renormalized, XPoly::one_minus(Scalar::q_pow(-1), 1));

        let r = gk_rank_one(7, 3, 1).unwrap();
        assert!(r.holds, "{r:?}");
        assert_eq!(r.renormalized, XPoly::one_minus(Scalar::q_pow(-1), 3));

        let r = gk_rank_one(17, 4, 2).unwrap();
        assert!(r.holds, "{r:?}");
        assert_eq!(r.n_alpha, 2);
        // shell 1 lies in Λ but its phases cancel
        assert_eq!(r.shell_coefficients[0], (1, Scalar::zero()));
        assert_eq!(r.renormalized, XPoly::one_minus(Scalar::q_pow(-1), 2).mul(&XPoly::one().add(&XPoly::term(Scalar::one(), 2))));
    }

    #[test]
    fn display() {
        let p = XPoly::one_minus(Scalar::q_pow(-1), 3);
        assert_eq!(p.to_string(), "(1) + (-v^-2)*x^3");
    }
}
