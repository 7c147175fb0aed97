//! Seeded random elements for the identity suites.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{SL2Element, TorusElement};
use crate::arith::{LaurentNumber, RatFunc};

/// The generator every randomized suite uses.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn coeffs<R: Rng>(rng: &mut R, q: u64, len: usize) -> Vec<i64> {
    let mut c = vec![rng.gen_range(1..q) as i64];
    c.extend((1..len).map(|_| rng.gen_range(0..q) as i64));
    c
}

/// A nonzero Laurent polynomial with valuation in `[-vmax, vmax]` and up to `len` terms.
pub fn laurent<R: Rng>(rng: &mut R, q: u64, vmax: i64, len: usize) -> LaurentNumber {
    let v = rng.gen_range(-vmax..=vmax);
    let n = rng.gen_range(1..=len);
    LaurentNumber::exact(q, v, &coeffs(rng, q, n))
}

fn ratfunc<R: Rng>(rng: &mut R, q: u64, vmin: i64, vmax: i64, len: usize) -> RatFunc {
    let v = rng.gen_range(vmin..=vmax);
    let n = rng.gen_range(1..=len);
    RatFunc::laurent_poly(q, v, &coeffs(rng, q, n))
}

pub fn torus<R: Rng>(rng: &mut R, q: u64, rank: usize) -> TorusElement<LaurentNumber> {
    TorusElement::new((0..rank).map(|_| laurent(rng, q, 3, 3)).collect()).expect("nonzero coordinates")
}

fn word<R: Rng>(rng: &mut R, q: u64, integral: bool) -> SL2Element<RatFunc> {
    let vmin = if integral { 0 } else { -2 };
    let mut g = SL2Element::identity(q);
    for _ in 0..rng.gen_range(2..=4) {
        let step = match rng.gen_range(0..4) {
            0 => SL2Element::upper(ratfunc(rng, q, vmin, 2, 3)),
            1 => SL2Element::lower(ratfunc(rng, q, vmin, 2, 3)),
            2 => {
                let u = if integral { ratfunc(rng, q, 0, 0, 2) } else { ratfunc(rng, q, -2, 2, 2) };
                SL2Element::diag(u).expect("nonzero")
            }
            _ => SL2Element::w(q),
        };
        g = g.mul(&step).expect("same modulus");
    }
    g
}

/// A random element of `SL_2(F)`, a short word in unipotents, torus elements and `w`.
pub fn sl2<R: Rng>(rng: &mut R, q: u64) -> SL2Element<RatFunc> {
    word(rng, q, false)
}

/// A random element of `SL_2(O)`.
pub fn sl2_integral<R: Rng>(rng: &mut R, q: u64) -> SL2Element<RatFunc> {
    word(rng, q, true)
}
