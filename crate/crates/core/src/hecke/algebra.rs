use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use super::affine::{AffineWeylElement, AffineWeylGroup};
use super::HeckeError;
use crate::metalattice::MetaplecticDatum;
use crate::scalar::Scalar;

/// A finite combination `Σ c_x T_x` over `W_a`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HeckeElement {
    terms: BTreeMap<AffineWeylElement, Scalar>,
}

impl HeckeElement {
    pub fn zero() -> Self {
        HeckeElement::default()
    }

    pub fn basis(x: AffineWeylElement) -> Self {
        HeckeElement::term(x, Scalar::one())
    }

    pub fn term(x: AffineWeylElement, c: Scalar) -> Self {
        let mut h = HeckeElement::zero();
        h.add_term(x, &c);
        h
    }

    pub fn add_term(&mut self, x: AffineWeylElement, c: &Scalar) {
        let e = self.terms.entry(x.clone()).or_default();
        e.add_assign(c);
        if e.is_zero() {
            self.terms.remove(&x);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AffineWeylElement, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, x: &AffineWeylElement) -> Scalar {
        self.terms.get(x).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &HeckeElement) -> HeckeElement {
        let mut r = self.clone();
        for (x, c) in &o.terms {
            r.add_term(x.clone(), c);
        }
        r
    }

    pub fn sub(&self, o: &HeckeElement) -> HeckeElement {
        self.add(&o.scale(&Scalar::int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> HeckeElement {
        let mut r = HeckeElement::zero();
        for (x, d) in &self.terms {
            r.add_term(x.clone(), &(c * d));
        }
        r
    }

    fn rescale(&self, exponent: impl Fn(&AffineWeylElement) -> i64) -> HeckeElement {
        let terms = self.terms.iter().map(|(x, c)| (x.clone(), c.shift(exponent(x)))).collect();
        HeckeElement { terms }
    }
}

/// The Iwahori–Hecke algebra on `W_a` over `Z[v, v^{-1}]`, `v² = q`, with
/// Iwahori–Matsumoto multiplication in the basis `T_x`.
///
/// Two further bases are related to `T_x` by powers of `v`:
///
/// - the group basis `T'_x = v^{ℓ_Y(x) − ℓ(x)} T_x`, normalized by the
///   volumes of Iwahori double cosets in the cover, in which the
///   metaplectic relations carry their `q^{n_α − 1}` factors;
/// - the Bernstein basis `U_x = v^{−ℓ(t_λ)} T_x` for `x = t_λ w`, so that
///   `U_s = T_s` and `U_λ = q^{−⟨ρ^∨, λ⟩} T'_λ` for dominant `λ`.
#[derive(Debug)]
pub struct HeckeAlgebra {
    group: AffineWeylGroup,
    cache: Mutex<HashMap<AffineWeylElement, (AffineWeylElement, Vec<usize>)>>,
}

impl HeckeAlgebra {
    pub fn new(md: &MetaplecticDatum) -> Result<Self, HeckeError> {
        Ok(HeckeAlgebra { group: AffineWeylGroup::new(md)?, cache: Mutex::new(HashMap::new()) })
    }

    pub fn group(&self) -> &AffineWeylGroup {
        &self.group
    }

    fn decomposition(&self, x: &AffineWeylElement) -> (AffineWeylElement, Vec<usize>) {
        if let Some(d) = self.cache.lock().expect("cache lock").get(x) {
            return d.clone();
        }
        let d = self.group.reduced_decomposition(x);
        self.cache.lock().expect("cache lock").insert(x.clone(), d.clone());
        d
    }

    fn check(&self, h: &HeckeElement) -> Result<(), HeckeError> {
        match h.terms.keys().find(|x| !self.group.contains(x)) {
            Some(x) => Err(HeckeError::DatumMismatch(format!("{x:?}"))),
            None => Ok(()),
        }
    }

    fn mul_simple(&self, h: &HeckeElement, s: &AffineWeylElement) -> HeckeElement {
        let q = Scalar::q_pow(1);
        let q1 = &q - &Scalar::one();
        let mut r = HeckeElement::zero();
        for (x, c) in &h.terms {
            let xs = self.group.mul(x, s);
            if self.group.length(&xs) > self.group.length(x) {
                r.add_term(xs, c);
            } else {
                r.add_term(x.clone(), &(&q1 * c));
                r.add_term(xs, &(&q * c));
            }
        }
        r
    }

    fn mul_basis(&self, h: &HeckeElement, y: &AffineWeylElement) -> HeckeElement {
        let (omega, word) = self.decomposition(y);
        let mut cur = HeckeElement::zero();
        for (x, c) in &h.terms {
            cur.add_term(self.group.mul(x, &omega), c);
        }
        for i in word {
            cur = self.mul_simple(&cur, &self.group.simple_reflections()[i]);
        }
        cur
    }

    pub fn mul(&self, a: &HeckeElement, b: &HeckeElement) -> Result<HeckeElement, HeckeError> {
        self.check(a)?;
        self.check(b)?;
        let mut r = HeckeElement::zero();
        for (y, c) in &b.terms {
            r = r.add(&self.mul_basis(a, y).scale(c));
        }
        Ok(r)
    }

    /// Product of a sequence of factors.
    pub fn product(&self, factors: &[HeckeElement]) -> Result<HeckeElement, HeckeError> {
        let mut r = self.one();
        for f in factors {
            r = self.mul(&r, f)?;
        }
        Ok(r)
    }

    pub fn one(&self) -> HeckeElement {
        HeckeElement::basis(self.group.identity())
    }

    pub fn t(&self, x: &AffineWeylElement) -> HeckeElement {
        HeckeElement::basis(x.clone())
    }

    /// `T_s^{-1} = q^{-1} T_s − (1 − q^{-1})`, read off from the quadratic relation.
    pub fn t_simple_inverse(&self, s: &AffineWeylElement) -> HeckeElement {
        let a = HeckeElement::term(s.clone(), Scalar::q_pow(-1));
        a.sub(&self.one().scale(&(Scalar::one() - Scalar::q_pow(-1))))
    }

    /// `2·(exponent of q)` in `T'_x = v^{ℓ_Y(x) − ℓ(x)} T_x`.
    pub fn group_exponent(&self, x: &AffineWeylElement) -> i64 {
        self.group.length_in_y(x) - self.group.length(x)
    }

    pub fn u_exponent(&self, x: &AffineWeylElement) -> i64 {
        -self.group.length(&self.group.translation(&x.lambda).expect("element of W_a"))
    }

    /// `T'_x` written in the `T` basis.
    pub fn t_group(&self, x: &AffineWeylElement) -> HeckeElement {
        HeckeElement::term(x.clone(), Scalar::v_pow(self.group_exponent(x)))
    }

    /// `U_x` written in the `T` basis.
    pub fn u(&self, x: &AffineWeylElement) -> HeckeElement {
        HeckeElement::term(x.clone(), Scalar::v_pow(self.u_exponent(x)))
    }

    /// Coefficients of `h` in the `T'` basis.
    pub fn to_group_basis(&self, h: &HeckeElement) -> HeckeElement {
        h.rescale(|x| -self.group_exponent(x))
    }

    /// Coefficients of `h` in the `U` basis.
    pub fn bernstein_rescale(&self, h: &HeckeElement) -> HeckeElement {
        h.rescale(|x| -self.u_exponent(x))
    }

    /// Inverse of [`HeckeAlgebra::bernstein_rescale`].
    pub fn from_bernstein(&self, h: &HeckeElement) -> HeckeElement {
        h.rescale(|x| self.u_exponent(x))
    }

    /// Terms sorted by length, then label.
    pub fn labelled_terms(&self, h: &HeckeElement) -> Vec<(String, Scalar)> {
        let mut v: Vec<(i64, String, Scalar)> =
            h.terms.iter().map(|(x, c)| (self.group.length(x), self.group.label(x), c.clone())).collect();
        v.sort();
        v.into_iter().map(|(_, l, c)| (l, c)).collect()
    }
}
