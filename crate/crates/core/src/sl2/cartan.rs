use serde::Serialize;

use super::{Sl2Engine, Sl2Error};
use crate::arith::{MuElement, RatFunc};
use crate::cocycle::{MetaSL2Element, SL2Element};

/// Which entry is moved to the pivot position first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Strategy {
    /// Pivot on the bottom row, clearing with column operations.
    ColumnFirst,
    /// Pivot on the right column, clearing with row operations (via the transpose).
    RowFirst,
}

/// `g = k1 · diag(t^l, t^{-l}) · k2` with `k1, k2 ∈ SL_2(O)` and `l ≥ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct CartanDecomposition {
    pub k1: SL2Element<RatFunc>,
    pub l: i64,
    pub k2: SL2Element<RatFunc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CosetClass {
    /// `x = ζ · κ(k1) s(π^λ) κ(k2)`.
    Genuine { zeta: u64 },
    /// `λ ∉ Λ`: the phase depends on the decomposition.
    NotSplit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenuineCosetReport {
    pub l: i64,
    pub class: CosetClass,
}

impl GenuineCosetReport {
    pub fn zeta(&self) -> Option<u64> {
        match self.class {
            CosetClass::Genuine { zeta } => Some(zeta),
            CosetClass::NotSplit => None,
        }
    }
}

fn valuation(x: &RatFunc) -> Option<i64> {
    x.valuation_leading().ok().map(|(v, _)| v)
}

fn div(x: &RatFunc, y: &RatFunc) -> Result<RatFunc, Sl2Error> {
    Ok(x.mul(&y.inv()?)?)
}

fn w(q: u64) -> SL2Element<RatFunc> {
    SL2Element::w(q)
}

/// Column-first reduction with pivot preference given by `order`
/// over positions `0 = a, 1 = b, 2 = c, 3 = d`.
fn reduce(g: &SL2Element<RatFunc>, order: [usize; 4]) -> Result<CartanDecomposition, Sl2Error> {
    let q = g.modulus();
    let vals = [&g.a, &g.b, &g.c, &g.d].map(valuation);
    let m = vals.iter().flatten().min().copied().ok_or_else(|| Sl2Error::Decomposition(g.to_string()))?;
    let pos = order.into_iter().find(|&p| vals[p] == Some(m)).expect("minimum is attained");
    let id = SL2Element::identity(q);
    let winv = w(q).inverse();
    // g = p · h · r with h carrying the pivot at d
    let (p, h, r) = match pos {
        3 => (id.clone(), g.clone(), id),
        2 => (id, g.mul(&w(q))?, winv),
        1 => (winv, w(q).mul(g)?, id),
        _ => (winv.clone(), w(q).mul(g)?.mul(&w(q))?, winv),
    };
    let l = -m;
    let eps = h.d.mul(&RatFunc::laurent_poly(q, l, &[1]))?;
    let k1 = p.mul(&SL2Element::upper(div(&h.b, &h.d)?))?;
    let k2 = SL2Element::diag(eps.inv()?)?.mul(&SL2Element::lower(div(&h.c, &h.d)?))?.mul(&r)?;
    Ok(CartanDecomposition { k1, l, k2 })
}

impl CartanDecomposition {
    pub fn of(g: &SL2Element<RatFunc>, strategy: Strategy) -> Result<Self, Sl2Error> {
        let d = match strategy {
            Strategy::ColumnFirst => reduce(g, [3, 2, 1, 0])?,
            Strategy::RowFirst => {
                let t = reduce(&g.transpose(), [3, 1, 2, 0])?;
                CartanDecomposition { k1: t.k2.transpose(), l: t.l, k2: t.k1.transpose() }
            }
        };
        d.verify(g)?;
        Ok(d)
    }

    fn verify(&self, g: &SL2Element<RatFunc>) -> Result<(), Sl2Error> {
        let q = g.modulus();
        let prod = self.k1.mul(&SL2Element::pi_power(q, self.l))?.mul(&self.k2)?;
        if &prod != g || self.l < 0 || !self.k1.is_integral()? || !self.k2.is_integral()? {
            return Err(Sl2Error::Decomposition(g.to_string()));
        }
        Ok(())
    }
}

impl Sl2Engine {
    /// The phase `ζ` with `x = ζ · κ(k1) s(π^λ) κ(k2)` for the decomposition
    /// found by `strategy`, whether or not `λ` lies in `Λ`.
    pub fn raw_phase(&self, x: &MetaSL2Element<RatFunc>, strategy: Strategy) -> Result<(i64, MuElement), Sl2Error> {
        let d = CartanDecomposition::of(&x.g, strategy)?;
        let p = self.mul(&self.mul(&self.kappa_lift(&d.k1)?, &self.s_pi(d.l))?, &self.kappa_lift(&d.k2)?)?;
        debug_assert_eq!(p.g, x.g);
        Ok((d.l, x.zeta.mul(&p.zeta.inv())?))
    }

    /// Cartan coordinate and genuine phase of `x` relative to `s` and `κ`.
    pub fn genuine_cartan_with(&self, x: &MetaSL2Element<RatFunc>, strategy: Strategy) -> Result<GenuineCosetReport, Sl2Error> {
        let (l, zeta) = self.raw_phase(x, strategy)?;
        let class = if self.in_lambda(l) { CosetClass::Genuine { zeta: zeta.exponent() } } else { CosetClass::NotSplit };
        Ok(GenuineCosetReport { l, class })
    }

    pub fn genuine_cartan(&self, x: &MetaSL2Element<RatFunc>) -> Result<GenuineCosetReport, Sl2Error> {
        self.genuine_cartan_with(x, Strategy::ColumnFirst)
    }
}

/// Phases of `κ(h(a)) s(π^{lα}) κ(h(a)^{-1})`, which equals `π^{lα}` in `SL_2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportWitness {
    pub l: i64,
    /// `(a, exponent of ζ)` for each unit `a ∈ F_q^×`.
    pub phases: Vec<(u64, u64)>,
}

impl SupportWitness {
    /// A `K`-bi-invariant genuine function can be nonzero at `π^{lα}` only
    /// when every phase is trivial.
    pub fn consistent(&self) -> bool {
        self.phases.iter().all(|&(_, e)| e == 0)
    }

    pub fn first_nontrivial(&self) -> Option<(u64, u64)> {
        self.phases.iter().copied().find(|&(_, e)| e != 0)
    }
}

impl Sl2Engine {
    pub fn support_witness(&self, l: i64) -> Result<SupportWitness, Sl2Error> {
        let q = self.modulus();
        let mut phases = Vec::new();
        for a in 1..q {
            let h = SL2Element::diag(RatFunc::laurent_poly(q, 0, &[a as i64]))?;
            let x = self.mul(&self.mul(&self.kappa_lift(&h)?, &self.s_pi(l))?, &self.kappa_lift(&h.inverse())?)?;
            let (l2, zeta) = self.raw_phase(&x, Strategy::ColumnFirst)?;
            debug_assert_eq!(l2, l);
            phases.push((a, zeta.exponent()));
        }
        Ok(SupportWitness { l, phases })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::random;
    use rand::Rng;

    fn engine() -> Sl2Engine {
        Sl2Engine::new(7, 3, 1).unwrap()
    }

    #[test]
    fn split_torus_and_kappa_lifts() {
        let e = engine();
        for l in [0, 3, 6] {
            let r = e.genuine_cartan(&e.s_pi(l)).unwrap();
            assert_eq!(r, GenuineCosetReport { l, class: CosetClass::Genuine { zeta: 0 } });
        }
        let mut rng = random::rng(3);
        for _ in 0..20 {
            let k = random::sl2_integral(&mut rng, 7);
            let r = e.genuine_cartan(&e.kappa_lift(&k).unwrap()).unwrap();
            assert_eq!(r, GenuineCosetReport { l: 0, class: CosetClass::Genuine { zeta: 0 } });
        }
    }

    #[test]
    fn golden_unipotent_translate() {
        // π^{3α} e(u) with v(u) = −8
        let e = engine();
        let u = RatFunc::laurent_poly(7, -8, &[1]);
        let g = SL2Element::pi_power(7, 3).mul(&SL2Element::upper(u)).unwrap();
        let x = e.cover().lift(g);
        let a = e.genuine_cartan_with(&x, Strategy::ColumnFirst).unwrap();
        let b = e.genuine_cartan_with(&x, Strategy::RowFirst).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, GenuineCosetReport { l: 5, class: CosetClass::NotSplit });
        for s in [Strategy::ColumnFirst, Strategy::RowFirst] {
            assert_eq!(e.raw_phase(&x, s).unwrap(), (5, MuElement::identity(3)));
        }
    }

    #[test]
    fn path_independent_on_random_elements() {
        let e = engine();
        let mut rng = random::rng(17);
        let mut split = 0;
        for _ in 0..500 {
            let g = random::sl2(&mut rng, 7);
            let zeta = MuElement::new(3, rng.gen_range(0..3));
            let x = MetaSL2Element { g, zeta };
            let a = e.genuine_cartan_with(&x, Strategy::ColumnFirst).unwrap();
            let b = e.genuine_cartan_with(&x, Strategy::RowFirst).unwrap();
            assert_eq!(a, b, "{}", x.g);
            split += usize::from(a.zeta().is_some());
        }
        assert!(split > 50);
    }

    #[test]
    fn support_follows_lambda() {
        let e = engine();
        assert_eq!(e.smallest_excluded(), Some(1));
        let w = e.support_witness(1).unwrap();
        assert!(!w.consistent());
        assert_eq!(w.first_nontrivial(), Some((2, 2)));
        for l in [0, 3, 6] {
            assert!(e.support_witness(l).unwrap().consistent());
        }
        let one = Sl2Engine::new(7, 1, 1).unwrap();
        assert_eq!(one.smallest_excluded(), None);
    }
}
