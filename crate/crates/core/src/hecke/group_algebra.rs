use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::HeckeError;
use crate::intmat;
use crate::metalattice::{rho_pairing, MetaplecticDatum};
use crate::rootdata::WeylGroup;
use crate::scalar::Scalar;

/// `Σ c_γ z_γ` in `C[Λ]`, with `γ` in `Y`-coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    terms: BTreeMap<Vec<i64>, Scalar>,
}

impl GroupAlgebraElement {
    pub fn zero() -> Self {
        GroupAlgebraElement::default()
    }

    pub fn one(rank: usize) -> Self {
        GroupAlgebraElement::monomial(vec![0; rank], Scalar::one())
    }

    pub fn monomial(gamma: Vec<i64>, c: Scalar) -> Self {
        let mut f = GroupAlgebraElement::zero();
        f.add_term(gamma, &c);
        f
    }

    /// `1 − c·z_γ`.
    pub fn one_minus(gamma: Vec<i64>, c: Scalar) -> Self {
        GroupAlgebraElement::one(gamma.len()).sub(&GroupAlgebraElement::monomial(gamma, c))
    }

    fn add_term(&mut self, gamma: Vec<i64>, c: &Scalar) {
        let e = self.terms.entry(gamma.clone()).or_default();
        e.add_assign(c);
        if e.is_zero() {
            self.terms.remove(&gamma);
        }
    }

    pub fn coefficient(&self, gamma: &[i64]) -> Scalar {
        self.terms.get(gamma).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (g, c) in &o.terms {
            r.add_term(g.clone(), c);
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (g, c) in &o.terms {
            r.add_term(g.clone(), &-c);
        }
        r
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut r = GroupAlgebraElement::zero();
        for (g, d) in &self.terms {
            r.add_term(g.clone(), &(c * d));
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = GroupAlgebraElement::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                r.add_term(a.iter().zip(b).map(|(i, j)| i + j).collect(), &(x * y));
            }
        }
        r
    }

    /// `w · Σ c_γ z_γ = Σ c_γ z_{wγ}`.
    pub fn act(&self, weyl: &WeylGroup, w: usize) -> Self {
        let mut r = GroupAlgebraElement::zero();
        for (g, c) in &self.terms {
            r.add_term(weyl.act(w, g), c);
        }
        r
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(g, c)| format!("({c})z{g:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for GroupAlgebraElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for t in &self.terms {
            seq.serialize_element(&t)?;
        }
        seq.end()
    }
}

fn weyl_of(md: &MetaplecticDatum) -> Result<WeylGroup, HeckeError> {
    Ok(md.root_datum().weyl_group()?)
}

fn is_dominant(md: &MetaplecticDatum, gamma: &[i64]) -> bool {
    md.root_datum().simple_roots().iter().all(|r| intmat::dot(r, gamma) >= 0)
}

fn orbit(weyl: &WeylGroup, lambda: &[i64]) -> BTreeSet<Vec<i64>> {
    (0..weyl.order()).map(|w| weyl.act(w, lambda)).collect()
}

/// `d_λ`, the characteristic function of the orbit `Wλ`.
fn orbit_sum(weyl: &WeylGroup, lambda: &[i64]) -> GroupAlgebraElement {
    let mut f = GroupAlgebraElement::zero();
    for g in orbit(weyl, lambda) {
        f.add_term(g, &Scalar::one());
    }
    f
}

/// `d_λ · d_μ = Σ_ν c_ν d_ν`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitProduct {
    pub lambda: Vec<i64>,
    pub mu: Vec<i64>,
    /// `(ν, c_ν)` with `ν` dominant, highest first.
    pub terms: Vec<(Vec<i64>, Scalar)>,
    pub nonnegative: bool,
    /// `c_{λ+μ}`.
    pub leading: Scalar,
    /// Every `ν` satisfies `ν ≤ λ + μ`.
    pub bounded: bool,
}

pub fn orbit_sum_multiply(md: &MetaplecticDatum, lambda: &[i64], mu: &[i64]) -> Result<OrbitProduct, HeckeError> {
    for x in [lambda, mu] {
        if !md.in_lambda(x) {
            return Err(HeckeError::NotInLambda(x.to_vec()));
        }
        if !is_dominant(md, x) {
            return Err(HeckeError::NotDominant(x.to_vec()));
        }
    }
    let weyl = weyl_of(md)?;
    let root = md.root_datum();
    let mut rest = orbit_sum(&weyl, lambda).mul(&orbit_sum(&weyl, mu));
    let mut terms = Vec::new();
    while !rest.is_zero() {
        let nu = rest
            .terms
            .keys()
            .filter(|g| is_dominant(md, g))
            .max_by_key(|g| (rho_pairing(root, g), (*g).clone()))
            .expect("a W-invariant element has a dominant term")
            .clone();
        let c = rest.coefficient(&nu);
        rest = rest.sub(&orbit_sum(&weyl, &nu).scale(&c));
        terms.push((nu, c));
    }
    let top: Vec<i64> = lambda.iter().zip(mu).map(|(a, b)| a + b).collect();
    Ok(OrbitProduct {
        lambda: lambda.to_vec(),
        mu: mu.to_vec(),
        nonnegative: terms.iter().all(|(_, c)| c.as_int().is_some_and(|k| k >= 0)),
        leading: terms.iter().find(|(n, _)| *n == top).map(|(_, c)| c.clone()).unwrap_or_default(),
        bounded: terms.iter().all(|(n, _)| root.dominance_leq(&top, n)),
        terms,
    })
}

/// `∏_{α ∈ Φ_w} (1 − q^{-1} z_{n_α α}) (1 − z_{nα}) / (1 − z_{n_α α})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GkCoefficient {
    pub w: Vec<usize>,
    /// `Φ_w = {α > 0 : wα < 0}`.
    pub inversions: Vec<Vec<i64>>,
    pub numerator: GroupAlgebraElement,
    pub denominator: GroupAlgebraElement,
    /// `numerator · ∏(1 − z_{n_α α}) = ∏(1 − q^{-1} z_{n_α α})(1 − z_{nα})` exactly.
    pub verified: bool,
}

fn inversions(md: &MetaplecticDatum, weyl: &WeylGroup, w: usize) -> Vec<(Vec<i64>, i64)> {
    let positive: BTreeSet<&Vec<i64>> = md.coroots().iter().filter(|c| c.positive).map(|c| &c.coroot).collect();
    md.coroots()
        .iter()
        .zip(md.n_alphas())
        .filter(|(c, _)| c.positive && !positive.contains(&weyl.act(w, &c.coroot)))
        .map(|(c, &na)| (c.coroot.clone(), na))
        .collect()
}

fn scaled(v: &[i64], k: i64) -> Vec<i64> {
    v.iter().map(|x| x * k).collect()
}

/// The Gindikin–Karpelevich factor of `w` (an index into the Weyl group) in
/// `C[Λ]`. The quotient `(1 − z_{nα}) / (1 − z_{n_α α})` is the geometric sum
/// `Σ_{k < n/n_α} z_{k n_α α}`, so the denominator is `1`.
pub fn gk_coefficient(md: &MetaplecticDatum, w: usize) -> Result<GkCoefficient, HeckeError> {
    let weyl = weyl_of(md)?;
    if w >= weyl.order() {
        return Err(HeckeError::DatumMismatch(format!("Weyl index {w}")));
    }
    let n = md.degree();
    let rank = md.rank();
    let one = GroupAlgebraElement::one(rank);
    let mut numerator = one.clone();
    let mut lhs_extra = one.clone();
    let mut rhs = one.clone();
    let inv = inversions(md, &weyl, w);
    for (alpha, na) in &inv {
        let mut geometric = GroupAlgebraElement::zero();
        for k in 0..n / na {
            geometric.add_term(scaled(alpha, k * na), &Scalar::one());
        }
        let factor = GroupAlgebraElement::one_minus(scaled(alpha, *na), Scalar::q_pow(-1));
        numerator = numerator.mul(&factor).mul(&geometric);
        lhs_extra = lhs_extra.mul(&GroupAlgebraElement::one_minus(scaled(alpha, *na), Scalar::one()));
        rhs = rhs.mul(&factor).mul(&GroupAlgebraElement::one_minus(scaled(alpha, n), Scalar::one()));
    }
    Ok(GkCoefficient {
        w: weyl.element(w).word.clone(),
        inversions: inv.into_iter().map(|(a, _)| a).collect(),
        verified: numerator.mul(&lhs_extra) == rhs,
        numerator,
        denominator: one,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RenormReport {
    pub weyl_order: usize,
    /// Pairs `(w_1, w_2)` with `ℓ(w_1 w_2) = ℓ(w_1) + ℓ(w_2)`.
    pub pairs: usize,
    /// Reduced words of the failing pairs.
    pub failures: Vec<(Vec<usize>, Vec<usize>)>,
    pub holds: bool,
}

/// `c(w_1 w_2) = (w_2^{-1} · c(w_1)) · c(w_2)` for every length-additive pair,
/// where `c(w) = ∏_{α > 0, wα < 0} (1 − z_{nα})`.
pub fn renorm_cocycle_check(md: &MetaplecticDatum) -> Result<RenormReport, HeckeError> {
    let weyl = weyl_of(md)?;
    let n = md.degree();
    let rank = md.rank();
    let c: Vec<GroupAlgebraElement> = (0..weyl.order())
        .map(|w| {
            inversions(md, &weyl, w).iter().fold(GroupAlgebraElement::one(rank), |acc, (a, _)| {
                acc.mul(&GroupAlgebraElement::one_minus(scaled(a, n), Scalar::one()))
            })
        })
        .collect();
    let mut pairs = 0;
    let mut failures = Vec::new();
    for a in 0..weyl.order() {
        for b in 0..weyl.order() {
            let ab = weyl.compose(a, b);
            if weyl.element(ab).length != weyl.element(a).length + weyl.element(b).length {
                continue;
            }
            pairs += 1;
            let rhs = c[a].act(&weyl, weyl.inverse(b)).mul(&c[b]);
            if rhs != c[ab] {
                failures.push((weyl.element(a).word.clone(), weyl.element(b).word.clone()));
            }
        }
    }
    Ok(RenormReport { weyl_order: weyl.order(), pairs, holds: failures.is_empty(), failures })
}

/// `χ` sends the `k`-th basis vector of `Λ` to `ζ^{chi[k]}` with `ζ` of order
/// `order`. Regular means `χ ∘ w ≠ χ` for every `w ≠ 1`.
pub fn is_regular(md: &MetaplecticDatum, chi: &[i64], order: i64) -> Result<bool, HeckeError> {
    let basis = &md.lambda().basis;
    if chi.len() != basis.len() || order <= 0 {
        return Err(HeckeError::DatumMismatch(format!("character {chi:?} of order {order} on a rank-{} lattice", basis.len())));
    }
    let weyl = weyl_of(md)?;
    let value = |y: &[i64]| -> i64 {
        let c = md.lambda().coordinates(y).expect("W preserves Λ");
        c.iter().zip(chi).map(|(a, b)| a * b).sum::<i64>().rem_euclid(order)
    };
    Ok((1..weyl.order()).all(|w| basis.iter().any(|b| value(&weyl.act(w, b)) != value(b))))
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn orbit_sums() {
        let md = sl2(1, 3);
        let p = orbit_sum_multiply(&md, &[3], &[3]).unwrap();
        assert_eq!(p.terms, vec![(vec![6], Scalar::one()), (vec![0], Scalar::int(2))]);
        assert!(p.nonnegative && p.bounded);
        assert_eq!(orbit_sum_multiply(&md, &[0], &[6]).unwrap().terms, vec![(vec![6], Scalar::one())]);
        assert_eq!(orbit_sum_multiply(&md, &[1], &[3]), Err(HeckeError::NotInLambda(vec![1])));
        let md = sl3(1, 1);
        let p = orbit_sum_multiply(&md, &[1, 1], &[2, 1]).unwrap();
        assert!(p.nonnegative && p.bounded);
        assert_eq!(p.leading, Scalar::one());
    }

    #[test]
    fn gk_factors() {
        let md = sl2(1, 3);
        let w0 = 1;
        assert_eq!(gk_coefficient(&md, 0).unwrap().numerator, GroupAlgebraElement::one(1));
        let g = gk_coefficient(&md, w0).unwrap();
        assert!(g.verified);
        assert_eq!(g.numerator, GroupAlgebraElement::one_minus(vec![3], Scalar::q_pow(-1)));
        let g = gk_coefficient(&sl2(2, 4), w0).unwrap();
        let expect = GroupAlgebraElement::one_minus(vec![2], Scalar::q_pow(-1))
            .mul(&GroupAlgebraElement::one(1).add(&GroupAlgebraElement::monomial(vec![2], Scalar::one())));
        assert_eq!(g.numerator, expect);
        let md = sl3(1, 1);
        let weyl = md.root_datum().weyl_group().unwrap();
        let g = gk_coefficient(&md, weyl.longest()).unwrap();
        let classical = [vec![1, 0], vec![0, 1], vec![1, 1]]
            .into_iter()
            .fold(GroupAlgebraElement::one(2), |acc, a| acc.mul(&GroupAlgebraElement::one_minus(a, Scalar::q_pow(-1))));
        assert_eq!(g.numerator, classical);
    }

    #[test]
    fn renormalization_cocycle() {
        for md in [sl2(1, 3), sl3(1, 1), sl3(1, 2), sl3(1, 3)] {
            let r = renorm_cocycle_check(&md).unwrap();
            assert!(r.holds, "{r:?}");
        }
        // Σ_w |[e, w]| over the weak order of S_3
        assert_eq!(renorm_cocycle_check(&sl3(1, 1)).unwrap().pairs, 17);
    }

    #[test]
    fn regularity() {
        let md = sl2(1, 3);
        assert!(!is_regular(&md, &[0], 5).unwrap());
        assert!(is_regular(&md, &[1], 5).unwrap());
        assert!(!is_regular(&md, &[1], 2).unwrap());
    }
}
