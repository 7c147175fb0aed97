use std::fmt;

use super::CocycleError;
use crate::arith::{ArithError, LocalField, MuElement, PrimeField};
use crate::hilbert::tame_symbol;

/// `(a b; c d)` with `ad − bc = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct SL2Element<F> {
    pub a: F,
    pub b: F,
    pub c: F,
    pub d: F,
}

/// Zero up to the precision the value carries.
pub(crate) fn agrees_with_zero<F: LocalField>(x: &F) -> bool {
    x.is_zero().unwrap_or(true)
}

impl<F: LocalField> SL2Element<F> {
    pub fn new(a: F, b: F, c: F, d: F) -> Result<Self, CocycleError> {
        let q = a.modulus();
        for x in [&b, &c, &d] {
            if x.modulus() != q {
                return Err(ArithError::ModulusMismatch(q, x.modulus()).into());
            }
        }
        let det = a.mul(&d)?.sub(&b.mul(&c)?)?.sub(&F::one(q))?;
        if !agrees_with_zero(&det) {
            return Err(CocycleError::Determinant(format!("{det:?}")));
        }
        Ok(SL2Element { a, b, c, d })
    }

    pub(crate) fn unchecked(a: F, b: F, c: F, d: F) -> Self {
        SL2Element { a, b, c, d }
    }

    pub fn modulus(&self) -> u64 {
        self.a.modulus()
    }

    pub fn identity(q: u64) -> Self {
        Self::unchecked(F::one(q), F::zero(q), F::zero(q), F::one(q))
    }

    /// `w = (0 1; −1 0)`.
    pub fn w(q: u64) -> Self {
        Self::unchecked(F::zero(q), F::one(q), F::constant(q, -1), F::zero(q))
    }

    /// `e(x) = (1 x; 0 1)`.
    pub fn upper(x: F) -> Self {
        let q = x.modulus();
        Self::unchecked(F::one(q), x, F::zero(q), F::one(q))
    }

    /// `(1 0; x 1)`.
    pub fn lower(x: F) -> Self {
        let q = x.modulus();
        Self::unchecked(F::one(q), F::zero(q), x, F::one(q))
    }

    /// `diag(x, x^{-1})`.
    pub fn diag(x: F) -> Result<Self, CocycleError> {
        let q = x.modulus();
        let xi = x.inv()?;
        Ok(Self::unchecked(x, F::zero(q), F::zero(q), xi))
    }

    /// `diag(t^k, t^{-k})`.
    pub fn pi_power(q: u64, k: i64) -> Self {
        Self::unchecked(F::monomial(q, 1, k), F::zero(q), F::zero(q), F::monomial(q, 1, -k))
    }

    pub fn mul(&self, o: &Self) -> Result<Self, CocycleError> {
        let a = self.a.mul(&o.a)?.add(&self.b.mul(&o.c)?)?;
        let b = self.a.mul(&o.b)?.add(&self.b.mul(&o.d)?)?;
        let c = self.c.mul(&o.a)?.add(&self.d.mul(&o.c)?)?;
        let d = self.c.mul(&o.b)?.add(&self.d.mul(&o.d)?)?;
        Ok(Self::unchecked(a, b, c, d))
    }

    pub fn inverse(&self) -> Self {
        Self::unchecked(self.d.clone(), self.b.neg(), self.c.neg(), self.a.clone())
    }

    pub fn transpose(&self) -> Self {
        Self::unchecked(self.a.clone(), self.c.clone(), self.b.clone(), self.d.clone())
    }

    pub fn neg(&self) -> Self {
        Self::unchecked(self.a.neg(), self.b.neg(), self.c.neg(), self.d.neg())
    }

    /// Valuation and leading unit of `x(g)`: `c` when `c ≠ 0`, else `d`.
    pub fn x_data(&self) -> Result<(i64, u64), CocycleError> {
        match self.c.is_zero() {
            Ok(false) => Ok(self.c.valuation_leading()?),
            Ok(true) => Ok(self.d.valuation_leading()?),
            Err(_) => Err(CocycleError::UndecidableZero("lower-left entry")),
        }
    }

    /// All entries have valuation `≥ 0`.
    pub fn is_integral(&self) -> Result<bool, CocycleError> {
        for x in [&self.a, &self.b, &self.c, &self.d] {
            if !agrees_with_zero(x) && x.valuation()? < 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Minimum valuation over the nonzero entries.
    pub fn min_valuation(&self) -> Result<i64, CocycleError> {
        let mut m = i64::MAX;
        for x in [&self.a, &self.b, &self.c, &self.d] {
            if !x.is_zero()? {
                m = m.min(x.valuation()?);
            }
        }
        Ok(m)
    }
}

impl<F: fmt::Display> fmt::Display for SL2Element<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// The `n`-fold Kubota cover of `SL_2(F)` attached to `Q(α)`.
#[derive(Clone, Debug)]
pub struct Sl2Cover {
    field: PrimeField,
    n: u64,
    q_alpha: i64,
}

/// `(x / y)` as valuation and leading unit.
fn quotient(field: &PrimeField, x: (i64, u64), y: (i64, u64)) -> Result<(i64, u64), ArithError> {
    Ok((x.0 - y.0, field.mul(x.1, field.inv(y.1)?)))
}

impl Sl2Cover {
    pub fn new(field: PrimeField, n: u64, q_alpha: i64) -> Result<Self, CocycleError> {
        field.check_cover_degree(n)?;
        Ok(Sl2Cover { field, n, q_alpha })
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn degree(&self) -> u64 {
        self.n
    }

    pub fn q_alpha(&self) -> i64 {
        self.q_alpha
    }

    pub fn modulus(&self) -> u64 {
        self.field.modulus()
    }

    /// `(s, t)^Q` on valuation data.
    pub fn symbol(&self, s: (i64, u64), t: (i64, u64)) -> Result<MuElement, CocycleError> {
        Ok(tame_symbol(&self.field, s, t, self.n)?.pow(self.q_alpha))
    }

    /// `(s, t)^Q` in `μ_n`.
    pub fn symbol_of<F: LocalField>(&self, s: &F, t: &F) -> Result<MuElement, CocycleError> {
        self.symbol(s.valuation_leading()?, t.valuation_leading()?)
    }

    /// `σ(g, h) = (x(gh)/x(g), x(gh)/x(h))^Q`.
    pub fn sigma<F: LocalField>(&self, g: &SL2Element<F>, h: &SL2Element<F>) -> Result<MuElement, CocycleError> {
        let gh = g.mul(h)?;
        self.sigma_with_product(g, h, &gh)
    }

    pub(crate) fn sigma_with_product<F: LocalField>(
        &self,
        g: &SL2Element<F>,
        h: &SL2Element<F>,
        gh: &SL2Element<F>,
    ) -> Result<MuElement, CocycleError> {
        let xg = g.x_data()?;
        let xh = h.x_data()?;
        let xgh = gh.x_data()?;
        self.symbol(quotient(&self.field, xgh, xg)?, quotient(&self.field, xgh, xh)?)
    }

    /// `κ(k) = (c, d)^Q` when `0 < |c| < 1`, else `1`.
    pub fn kappa<F: LocalField>(&self, k: &SL2Element<F>) -> Result<MuElement, CocycleError> {
        if !k.is_integral()? {
            return Err(CocycleError::NotIntegral);
        }
        match k.c.is_zero() {
            Ok(true) => return Ok(MuElement::identity(self.n)),
            Ok(false) => {}
            Err(_) => return Err(CocycleError::UndecidableZero("lower-left entry")),
        }
        let (vc, uc) = k.c.valuation_leading()?;
        if vc == 0 {
            return Ok(MuElement::identity(self.n));
        }
        self.symbol((vc, uc), k.d.valuation_leading()?)
    }

    pub fn mul<F: LocalField>(&self, x: &MetaSL2Element<F>, y: &MetaSL2Element<F>) -> Result<MetaSL2Element<F>, CocycleError> {
        let g = x.g.mul(&y.g)?;
        let s = self.sigma_with_product(&x.g, &y.g, &g)?;
        Ok(MetaSL2Element { g, zeta: x.zeta.mul(&y.zeta)?.mul(&s)? })
    }

    pub fn lift<F: LocalField>(&self, g: SL2Element<F>) -> MetaSL2Element<F> {
        MetaSL2Element { g, zeta: MuElement::identity(self.n) }
    }

    /// `k ↦ (k, κ(k))`.
    pub fn kappa_lift<F: LocalField>(&self, k: &SL2Element<F>) -> Result<MetaSL2Element<F>, CocycleError> {
        Ok(MetaSL2Element { g: k.clone(), zeta: self.kappa(k)? })
    }

    /// `s(π^{lα}) = (diag(t^l, t^{-l}), 1)`.
    pub fn s_pi<F: LocalField>(&self, l: i64) -> MetaSL2Element<F> {
        self.lift(SL2Element::pi_power(self.modulus(), l))
    }

    pub fn inverse<F: LocalField>(&self, x: &MetaSL2Element<F>) -> Result<MetaSL2Element<F>, CocycleError> {
        // (g, ζ)^{-1} = (g^{-1}, ζ^{-1} σ(g, g^{-1})^{-1})
        let gi = x.g.inverse();
        let s = self.sigma(&x.g, &gi)?;
        Ok(MetaSL2Element { g: gi, zeta: x.zeta.inv().mul(&s.inv())? })
    }
}

/// An element `(g, ζ)` of the cover.
#[derive(Clone, Debug, PartialEq)]
pub struct MetaSL2Element<F> {
    pub g: SL2Element<F>,
    pub zeta: MuElement,
}

impl<F: LocalField> MetaSL2Element<F> {
    pub fn central(q: u64, zeta: MuElement) -> Self {
        MetaSL2Element { g: SL2Element::identity(q), zeta }
    }
}

pub fn kubota_sigma<F: LocalField>(cover: &Sl2Cover, g: &SL2Element<F>, h: &SL2Element<F>) -> Result<MuElement, CocycleError> {
    cover.sigma(g, h)
}

pub fn kubota_kappa<F: LocalField>(cover: &Sl2Cover, k: &SL2Element<F>) -> Result<MuElement, CocycleError> {
    cover.kappa(k)
}

pub fn meta_mul<F: LocalField>(
    cover: &Sl2Cover,
    x: &MetaSL2Element<F>,
    y: &MetaSL2Element<F>,
) -> Result<MetaSL2Element<F>, CocycleError> {
    cover.mul(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{LaurentNumber, RatFunc};

    fn cover(q_alpha: i64) -> Sl2Cover {
        Sl2Cover::new(PrimeField::new(7).unwrap(), 3, q_alpha).unwrap()
    }

    fn rf(v: i64, c: &[i64]) -> RatFunc {
        RatFunc::laurent_poly(7, v, c)
    }

    #[test]
    fn sigma_examples() {
        let c = cover(1);
        let w = SL2Element::<RatFunc>::w(7);
        assert!(c.sigma(&w, &w).unwrap().is_identity());
        let g = SL2Element::new(rf(0, &[2]), rf(0, &[1]), rf(0, &[1]), rf(0, &[1])).unwrap();
        let h = SL2Element::new(rf(0, &[1]), rf(0, &[0]), rf(0, &[3]), rf(0, &[1])).unwrap();
        assert!(g.mul(&h).unwrap().c.valuation().unwrap() == 0);
        assert!(c.sigma(&g, &h).unwrap().is_identity());
    }

    #[test]
    fn kappa_examples() {
        let c = cover(1);
        let unit_c = SL2Element::new(rf(0, &[1]), rf(0, &[0]), rf(0, &[2]), rf(0, &[1])).unwrap();
        assert!(c.kappa(&unit_c).unwrap().is_identity());
        let k = SL2Element::lower(rf(1, &[1]));
        assert!(c.kappa(&k).unwrap().is_identity());
        let k = SL2Element::new(rf(0, &[5]), rf(0, &[0]), rf(1, &[1]), rf(0, &[3])).unwrap();
        let v = c.kappa(&k).unwrap();
        assert_eq!(v.exponent(), 2);
        assert_eq!(v.residue(c.field()).unwrap(), 4);
        let outside = SL2Element::<RatFunc>::pi_power(7, 1);
        assert_eq!(c.kappa(&outside), Err(CocycleError::NotIntegral));
    }

    #[test]
    fn meta_examples() {
        let c = cover(2);
        let g = SL2Element::upper(rf(-1, &[3, 1])).mul(&SL2Element::lower(rf(1, &[2]))).unwrap();
        let x = c.lift(g.clone());
        let xi = c.lift(g.inverse());
        let p = c.mul(&x, &xi).unwrap();
        assert_eq!(p.g, SL2Element::identity(7));
        assert_eq!(p.zeta, c.sigma(&g, &g.inverse()).unwrap());
        let z = MetaSL2Element::central(7, MuElement::new(3, 1));
        assert_eq!(c.mul(&z, &x).unwrap(), MetaSL2Element { g: g.clone(), zeta: MuElement::new(3, 1) });
        assert_eq!(c.mul(&x, &z).unwrap(), MetaSL2Element { g, zeta: MuElement::new(3, 1) });
        let inv = c.inverse(&x).unwrap();
        assert_eq!(c.mul(&x, &inv).unwrap(), MetaSL2Element::central(7, MuElement::identity(3)));
    }

    #[test]
    fn truncated_entries() {
        let c = cover(1);
        let a = LaurentNumber::parse(7, "1 + O(t^3)").unwrap();
        let z = LaurentNumber::parse(7, "O(t^3)").unwrap();
        let g = SL2Element::new(a.clone(), z.clone(), z.clone(), a.clone()).unwrap();
        assert_eq!(g.x_data(), Err(CocycleError::UndecidableZero("lower-left entry")));
        assert!(c.sigma(&g, &g).is_err());
        let bad = SL2Element::new(LaurentNumber::exact(7, 0, &[2]), z.clone(), z, a);
        assert!(matches!(bad, Err(CocycleError::Determinant(_))));
    }
}
