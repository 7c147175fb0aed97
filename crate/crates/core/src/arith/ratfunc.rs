use std::fmt;

use super::field::inv_mod;
use super::poly::{self, Poly};
use super::{ArithError, LaurentNumber, LocalField};

/// An exact element of `F_q(t) ⊂ F_q((t))`, stored as `t^val · N(t)/D(t)`
/// with `N(0) != 0`, `D(0) = 1` and `gcd(N, D) = 1`.
///
/// Zero tests and leading-unit reductions are always decidable, so this is
/// the field the explicit `SL_2` engine runs over.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    q: u64,
    val: i64,
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn zero(q: u64) -> Self {
        RatFunc { q, val: 0, num: Vec::new(), den: vec![1] }
    }

    /// Laurent polynomial `Σ coeffs[i] t^{val+i}`.
    pub fn laurent_poly(q: u64, val: i64, coeffs: &[i64]) -> Self {
        let num = coeffs.iter().map(|&c| c.rem_euclid(q as i64) as u64).collect();
        Self::build(q, val, num, vec![1])
    }

    fn build(q: u64, val: i64, num: Poly, den: Poly) -> Self {
        let mut num = poly::trim(num);
        if num.is_empty() {
            return Self::zero(q);
        }
        let mut den = poly::trim(den);
        let k = poly::low_order(&num);
        num.drain(..k);
        let val = val + k as i64;
        let kd = poly::low_order(&den);
        den.drain(..kd);
        let val = val - kd as i64;
        if den.len() > 1 {
            let g = poly::gcd(&num, &den, q);
            if g.len() > 1 {
                num = poly::divrem(&num, &g, q).0;
                den = poly::divrem(&den, &g, q).0;
            }
        }
        let c = inv_mod(den[0], q);
        if c != 1 {
            num = poly::scale(&num, c, q);
            den = poly::scale(&den, c, q);
        }
        RatFunc { q, val, num, den }
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn is_zero_exact(&self) -> bool {
        self.num.is_empty()
    }

    /// True when the element is a Laurent polynomial (trivial denominator).
    pub fn is_laurent_poly(&self) -> bool {
        self.den.len() == 1
    }

    /// Expansion `... + O(t^abs_prec)` as a truncated Laurent series.
    pub fn expand(&self, abs_prec: i64) -> LaurentNumber {
        if self.num.is_empty() {
            return LaurentNumber::big_o(self.q, abs_prec);
        }
        let n = (abs_prec - self.val).max(0) as usize;
        let q = self.q;
        // power series N/D with D(0) = 1
        let mut out = vec![0u64; n];
        for k in 0..n {
            let mut s = self.num.get(k).copied().unwrap_or(0);
            for i in 1..=k.min(self.den.len().saturating_sub(1)) {
                s = (s + q - self.den[i] * out[k - i] % q) % q;
            }
            out[k] = s;
        }
        LaurentNumber::from_residues(q, self.val, out, Some(abs_prec))
    }

    fn check(&self, o: &Self) -> Result<(), ArithError> {
        if self.q != o.q {
            return Err(ArithError::ModulusMismatch(self.q, o.q));
        }
        Ok(())
    }

    pub fn mul(&self, o: &Self) -> Result<Self, ArithError> {
        self.check(o)?;
        if self.num.is_empty() || o.num.is_empty() {
            return Ok(Self::zero(self.q));
        }
        let q = self.q;
        let num = poly::mul(&self.num, &o.num, q);
        let den = poly::mul(&self.den, &o.den, q);
        Ok(Self::build(q, self.val + o.val, num, den))
    }

    pub fn add(&self, o: &Self) -> Result<Self, ArithError> {
        self.check(o)?;
        if self.num.is_empty() {
            return Ok(o.clone());
        }
        if o.num.is_empty() {
            return Ok(self.clone());
        }
        let q = self.q;
        let v = self.val.min(o.val);
        let a = poly::shift(&self.num, (self.val - v) as usize);
        let b = poly::shift(&o.num, (o.val - v) as usize);
        if self.den == o.den {
            return Ok(Self::build(q, v, poly::add(&a, &b, q), self.den.clone()));
        }
        let num = poly::add(&poly::mul(&a, &o.den, q), &poly::mul(&b, &self.den, q), q);
        let den = poly::mul(&self.den, &o.den, q);
        Ok(Self::build(q, v, num, den))
    }

    pub fn neg(&self) -> Self {
        RatFunc { q: self.q, val: self.val, num: poly::neg(&self.num, self.q), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Result<Self, ArithError> {
        self.add(&o.neg())
    }

    pub fn inv(&self) -> Result<Self, ArithError> {
        if self.num.is_empty() {
            return Err(ArithError::ZeroInput);
        }
        Ok(Self::build(self.q, -self.val, self.den.clone(), self.num.clone()))
    }

    pub fn valuation_leading(&self) -> Result<(i64, u64), ArithError> {
        match self.num.first() {
            Some(&c) => Ok((self.val, c)),
            None => Err(ArithError::ZeroInput),
        }
    }
}

impl LocalField for RatFunc {
    fn modulus(&self) -> u64 {
        self.q
    }
    fn constant(q: u64, c: i64) -> Self {
        RatFunc::laurent_poly(q, 0, &[c])
    }
    fn monomial(q: u64, c: i64, k: i64) -> Self {
        RatFunc::laurent_poly(q, k, &[c])
    }
    fn add(&self, o: &Self) -> Result<Self, ArithError> {
        RatFunc::add(self, o)
    }
    fn sub(&self, o: &Self) -> Result<Self, ArithError> {
        RatFunc::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Result<Self, ArithError> {
        RatFunc::mul(self, o)
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
    fn inv(&self) -> Result<Self, ArithError> {
        RatFunc::inv(self)
    }
    fn is_zero(&self) -> Result<bool, ArithError> {
        Ok(self.num.is_empty())
    }
    fn valuation_leading(&self) -> Result<(i64, u64), ArithError> {
        RatFunc::valuation_leading(self)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: &Poly| -> String {
            let terms: Vec<String> = p
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, c)| match i {
                    0 => format!("{c}"),
                    1 => format!("{c}*t"),
                    _ => format!("{c}*t^{i}"),
                })
                .collect();
            terms.join(" + ")
        };
        if self.num.is_empty() {
            return write!(f, "0");
        }
        write!(f, "t^{}*({})", self.val, show(&self.num))?;
        if self.den.len() > 1 {
            write!(f, "/({})", show(&self.den))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_on_samples() {
        let q = 7;
        let a = RatFunc::laurent_poly(q, -2, &[3, 1, 4]);
        let b = RatFunc::laurent_poly(q, 1, &[2, 0, 5]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.mul(&b.inv().unwrap()).unwrap(), a);
        assert_eq!(a.add(&b).unwrap().sub(&b).unwrap(), a);
        let one = RatFunc::constant(q, 1);
        assert_eq!(a.mul(&a.inv().unwrap()).unwrap(), one);
        assert!(a.sub(&a).unwrap().is_zero_exact());
    }

    #[test]
    fn leading_unit_of_quotient() {
        let q = 7;
        // t^2 (3 + t) / (5 + t) has leading coefficient 3/5 = 3*3 = 2
        let x = RatFunc::laurent_poly(q, 2, &[3, 1]).mul(&RatFunc::laurent_poly(q, 0, &[5, 1]).inv().unwrap()).unwrap();
        assert_eq!(x.valuation_leading().unwrap(), (2, 2));
    }

    #[test]
    fn expansion_matches_series_inverse() {
        let q = 7;
        let x = RatFunc::laurent_poly(q, 0, &[1, 1]).inv().unwrap();
        assert_eq!(x.expand(3), LaurentNumber::parse(q, "1 - t + t^2 + O(t^3)").unwrap());
    }
}
