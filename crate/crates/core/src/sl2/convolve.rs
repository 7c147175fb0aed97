use std::thread;

use serde::Serialize;

use super::{Sl2Engine, Sl2Error};
use crate::arith::RatFunc;
use crate::cocycle::{MetaSL2Element, SL2Element};
use crate::scalar::{CycloSum, Scalar};

/// Default bound on the number of enumerated cosets.
pub const COSET_BOUND: u64 = 1_000_000;

/// Which support is enumerated: left cosets `hK` of the first factor's
/// support or right cosets `Kh` of the second's.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CosetSide {
    Left,
    Right,
}

/// `c_λ * c_μ = Σ_ν coefficient_ν · c_ν`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvolutionReport {
    pub l: i64,
    pub m: i64,
    pub side: CosetSide,
    pub cosets: u64,
    pub coefficients: Vec<(i64, Scalar)>,
}

impl ConvolutionReport {
    pub fn coefficient(&self, nu: i64) -> Scalar {
        self.coefficients.iter().find(|(k, _)| *k == nu).map(|(_, s)| s.clone()).unwrap_or_default()
    }

    pub fn nonnegative(&self) -> bool {
        self.coefficients.iter().all(|(_, s)| s.as_int().is_some_and(|c| c >= 0))
    }
}

/// `|Kπ^{lα}K / K| = q^{2l} + q^{2l−1}` for `l > 0`.
pub fn coset_count(q: u64, l: i64) -> u64 {
    if l == 0 {
        1
    } else {
        q.pow(2 * l as u32) + q.pow(2 * l as u32 - 1)
    }
}

fn digits(mut index: u64, q: u64, len: usize) -> Vec<i64> {
    let mut d = Vec::with_capacity(len);
    for _ in 0..len {
        d.push((index % q) as i64);
        index /= q;
    }
    d
}

/// The `index`-th representative of `Kπ^{lα}K / K`: first
/// `(t^l, a t^{-l}; 0, t^{-l})` with `a ∈ O/π^{2l}`, then
/// `(t^{-l}, 0; b t^{-l}, t^l)` with `b ∈ πO/π^{2l}`.
pub fn left_coset_rep(q: u64, l: i64, index: u64) -> SL2Element<RatFunc> {
    let t = |k: i64| RatFunc::laurent_poly(q, k, &[1]);
    let zero = RatFunc::zero(q);
    let first = q.pow(2 * l as u32);
    if index < first {
        let a = RatFunc::laurent_poly(q, -l, &digits(index, q, 2 * l as usize));
        SL2Element::new(t(l), a, zero, t(-l)).expect("determinant one")
    } else {
        let b = RatFunc::laurent_poly(q, 1 - l, &digits(index - first, q, 2 * l as usize - 1));
        SL2Element::new(t(-l), zero, b, t(l)).expect("determinant one")
    }
}

impl Sl2Engine {
    fn phase_of(&self, x: &MetaSL2Element<RatFunc>, l: i64) -> Result<Option<u64>, Sl2Error> {
        let r = self.genuine_cartan(x)?;
        Ok(if r.l == l { r.zeta() } else { None })
    }

    fn coset_chunk(&self, l: i64, m: i64, side: CosetSide, range: std::ops::Range<u64>, nus: &[i64]) -> Result<Vec<CycloSum>, Sl2Error> {
        let q = self.modulus();
        let n = self.degree();
        let (support, other) = match side {
            CosetSide::Left => (l, m),
            CosetSide::Right => (m, l),
        };
        let mut sums = vec![CycloSum::new(n); nus.len()];
        for i in range {
            let g = left_coset_rep(q, support, i);
            let g = match side {
                CosetSide::Left => g,
                CosetSide::Right => g.inverse(),
            };
            let h = self.cover().lift(g);
            let e_h = self.phase_of(&h, support)?.ok_or_else(|| Sl2Error::Decomposition(h.g.to_string()))?;
            let hi = self.cover().inverse(&h)?;
            for (k, &nu) in nus.iter().enumerate() {
                let y = match side {
                    CosetSide::Left => self.mul(&hi, &self.s_pi(nu))?,
                    CosetSide::Right => self.mul(&self.s_pi(nu), &hi)?,
                };
                if let Some(e) = self.phase_of(&y, other)? {
                    sums[k].add_at((2 * n - e_h - e) % n, &Scalar::one());
                }
            }
        }
        Ok(sums)
    }

    /// `c_λ * c_μ` by enumerating the cosets of one factor's support.
    pub fn convolve_with(&self, l: i64, m: i64, side: CosetSide, bound: u64) -> Result<ConvolutionReport, Sl2Error> {
        self.check_dominant(l)?;
        self.check_dominant(m)?;
        let q = self.modulus();
        let support = if side == CosetSide::Left { l } else { m };
        let count = coset_count(q, support);
        if count > bound {
            return Err(Sl2Error::CosetBound { count, bound });
        }
        let step = self.lambda_step();
        let nus: Vec<i64> = (0..=(l + m) / step).map(|k| k * step).collect();
        let workers = thread::available_parallelism().map_or(1, |p| p.get()).min(16) as u64;
        let chunk = count.div_ceil(workers);
        let parts: Vec<Result<Vec<CycloSum>, Sl2Error>> = thread::scope(|s| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let range = (w * chunk).min(count)..((w + 1) * chunk).min(count);
                    let nus = &nus;
                    s.spawn(move || self.coset_chunk(l, m, side, range, nus))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        });
        let mut total = vec![CycloSum::new(self.degree()); nus.len()];
        for p in parts {
            for (t, s) in total.iter_mut().zip(p?) {
                t.merge(&s);
            }
        }
        let mut coefficients = Vec::new();
        for (nu, s) in nus.iter().zip(total) {
            let c = s.as_scalar().ok_or_else(|| Sl2Error::Decomposition(format!("coefficient at {nu}α is not rational")))?;
            if !c.is_zero() {
                coefficients.push((*nu, c));
            }
        }
        Ok(ConvolutionReport { l, m, side, cosets: count, coefficients })
    }

    /// `c_λ * c_μ`, enumerating whichever support is smaller.
    pub fn convolve(&self, l: i64, m: i64) -> Result<ConvolutionReport, Sl2Error> {
        let side = if l <= m { CosetSide::Left } else { CosetSide::Right };
        self.convolve_with(l, m, side, COSET_BOUND)
    }
}

/// Commutativity and the Satake homomorphism property on one pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvolutionCheck {
    pub product: ConvolutionReport,
    pub reversed: ConvolutionReport,
    pub commutative: bool,
    /// `(μ, S(c_λ * c_μ)(μ), (S c_λ · S c_μ)(μ))` evaluated at `v² = q`, as fractions.
    pub satake: Vec<(i64, (i128, i128), (i128, i128))>,
    pub homomorphism: bool,
}

fn same_fraction(a: (i128, i128), b: (i128, i128)) -> bool {
    a.0 * b.1 == b.0 * a.1
}

impl Sl2Engine {
    /// `c_λ * c_μ = c_μ * c_λ` and `S(c_λ * c_μ) = S(c_λ) S(c_μ)`, the
    /// reversed product enumerated on the opposite side.
    pub fn convolution_check(&self, l: i64, m: i64, seed: u64) -> Result<ConvolutionCheck, Sl2Error> {
        let (l, m) = (l.min(m), l.max(m));
        let product = self.convolve_with(l, m, CosetSide::Left, COSET_BOUND)?;
        let reversed = self.convolve_with(m, l, CosetSide::Right, COSET_BOUND)?;
        let commutative = product.coefficients == reversed.coefficients;
        let q = self.modulus() as i128;
        let step = self.lambda_step();
        let reach = (l + m) / step;
        let mut satake = Vec::new();
        let mut homomorphism = true;
        let a = |lam: i64, mu: i64| -> Result<Scalar, Sl2Error> {
            if mu.abs() > lam {
                return Ok(Scalar::zero());
            }
            Ok(self.satake_coefficient(lam, mu, seed)?.value)
        };
        for k in -reach..=reach {
            let mu = k * step;
            let mut lhs = Scalar::zero();
            for (nu, c) in &product.coefficients {
                lhs.add_assign(&(c * &a(*nu, mu)?));
            }
            let mut rhs = Scalar::zero();
            for i in -(l / step)..=(l / step) {
                let x = i * step;
                rhs.add_assign(&(&a(l, x)? * &a(m, mu - x)?));
            }
            let (lv, rv) = (lhs.eval_q(q), rhs.eval_q(q));
            let (lv, rv) = match (lv, rv) {
                (Some(x), Some(y)) => (x, y),
                _ => return Err(Sl2Error::Decomposition(format!("odd v-power at {mu}α"))),
            };
            homomorphism &= same_fraction(lv, rv);
            satake.push((mu, lv, rv));
        }
        Ok(ConvolutionCheck { product, reversed, commutative, satake, homomorphism })
    }
}
