//! Exact scalars `Σ c_k v^k` with integer coefficients, where `v² = q`.
//!
//! Shell measures, modular characters and Hecke structure constants all live
//! here. A [`CycloSum`] collects `μ_n`-weighted sums of scalars and reduces
//! them modulo the cyclotomic polynomial, so cancellation of root-of-unity
//! sums is decided exactly.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    terms: BTreeMap<i64, i128>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::int(1)
    }

    pub fn int(c: i128) -> Self {
        Scalar::monomial(c, 0)
    }

    /// `c · v^k`.
    pub fn monomial(c: i128, k: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(k, c);
        }
        Scalar { terms }
    }

    pub fn v_pow(k: i64) -> Self {
        Scalar::monomial(1, k)
    }

    /// `q^k = v^{2k}`.
    pub fn q_pow(k: i64) -> Self {
        Scalar::monomial(1, 2 * k)
    }

    /// `q^{-m}(1 − q^{-1})`, the measure of `{v(u) = m}` in `F` with `vol(O) = 1`.
    pub fn shell_measure(m: i64) -> Self {
        Scalar::q_pow(-m) - Scalar::q_pow(-m - 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i128)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn coefficient(&self, k: i64) -> i128 {
        self.terms.get(&k).copied().unwrap_or(0)
    }

    /// The integer `c` when `self = c`.
    pub fn as_int(&self) -> Option<i128> {
        match self.terms.len() {
            0 => Some(0),
            1 => self.terms.get(&0).copied(),
            _ => None,
        }
    }

    /// `Some(k)` when `self = v^k`.
    pub fn as_v_power(&self) -> Option<i64> {
        match self.terms.iter().next() {
            Some((&k, &1)) if self.terms.len() == 1 => Some(k),
            _ => None,
        }
    }

    pub fn scale(&self, c: i128) -> Self {
        if c == 0 {
            return Scalar::zero();
        }
        Scalar { terms: self.terms.iter().map(|(&k, &x)| (k, x * c)).collect() }
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        Scalar { terms: self.terms.iter().map(|(&e, &x)| (e + k, x)).collect() }
    }

    fn add_term(&mut self, k: i64, c: i128) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(k).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&k);
        }
    }

    pub fn add_assign(&mut self, o: &Scalar) {
        for (&k, &c) in &o.terms {
            self.add_term(k, c);
        }
    }

    /// Numeric value at `v = √q` for an even-exponent scalar, as a fraction.
    pub fn eval_q(&self, q: i128) -> Option<(i128, i128)> {
        let mut num = 0i128;
        let lowest = self.terms.keys().next().copied().unwrap_or(0).min(0);
        if self.terms.keys().any(|k| k % 2 != 0) {
            return None;
        }
        let den_exp = (-lowest / 2) as u32;
        for (&k, &c) in &self.terms {
            num += c * q.pow(((k - lowest) / 2) as u32);
        }
        Some((num, q.pow(den_exp)))
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        let mut r = self.clone();
        r.add_assign(o);
        r
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        &self + &o
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.scale(-1)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.scale(-1)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        &self - &o
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        let mut r = Scalar::zero();
        for (&a, &x) in &self.terms {
            for (&b, &y) in &o.terms {
                r.add_term(a + b, x * y);
            }
        }
        r
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        &self * &o
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&k, &c)) in self.terms.iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            match (k, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => write!(f, "v^{k}")?,
                _ => write!(f, "{a}*v^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `Φ_n` as integer coefficients, lowest degree first.
pub fn cyclotomic(n: u64) -> Vec<i128> {
    // x^n − 1 = ∏_{d | n} Φ_d
    let mut p = vec![0i128; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            p = exact_div(&p, &cyclotomic(d));
        }
    }
    p
}

fn exact_div(num: &[i128], den: &[i128]) -> Vec<i128> {
    let mut r = num.to_vec();
    let dl = den.len() - 1;
    let lead = den[dl];
    let mut quo = vec![0i128; r.len() - dl];
    for i in (0..quo.len()).rev() {
        let c = r[i + dl] / lead;
        quo[i] = c;
        for (j, &d) in den.iter().enumerate() {
            r[i + j] -= c * d;
        }
    }
    quo
}

/// A formal sum `Σ_e s_e · ζ^e` over `e ∈ Z/n` with scalar coefficients,
/// where `ζ` is a primitive `n`-th root of unity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloSum {
    n: u64,
    parts: Vec<Scalar>,
}

impl CycloSum {
    pub fn new(n: u64) -> Self {
        CycloSum { n, parts: vec![Scalar::zero(); n as usize] }
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn add_at(&mut self, e: u64, s: &Scalar) {
        self.parts[(e % self.n) as usize].add_assign(s);
    }

    pub fn merge(&mut self, o: &CycloSum) {
        assert_eq!(self.n, o.n, "root of unity orders differ");
        for (p, x) in self.parts.iter_mut().zip(&o.parts) {
            p.add_assign(x);
        }
    }

    /// Coefficients by exponent before reduction.
    pub fn parts(&self) -> &[Scalar] {
        &self.parts
    }

    /// Coordinates in the power basis `1, ζ, …, ζ^{φ(n)−1}`.
    pub fn reduced(&self) -> Vec<Scalar> {
        let phi = cyclotomic(self.n);
        let deg = phi.len() - 1;
        let mut r = self.parts.clone();
        for i in (deg..r.len()).rev() {
            let c = std::mem::take(&mut r[i]);
            if c.is_zero() {
                continue;
            }
            // ζ^i = −Σ_{j<deg} φ_j ζ^{i−deg+j}
            for (j, &p) in phi.iter().enumerate().take(deg) {
                r[i - deg + j].add_assign(&c.scale(-p));
            }
        }
        r.truncate(deg);
        r
    }

    pub fn is_zero(&self) -> bool {
        self.reduced().iter().all(Scalar::is_zero)
    }

    /// The value when the sum is a rational scalar.
    pub fn as_scalar(&self) -> Option<Scalar> {
        let r = self.reduced();
        if r.iter().skip(1).all(Scalar::is_zero) {
            Some(r.into_iter().next().unwrap_or_default())
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let q = Scalar::q_pow(1);
        let x = &(&q - &Scalar::one()) * &(&q + &Scalar::one());
        assert_eq!(x, Scalar::q_pow(2) - Scalar::one());
        assert_eq!(x.to_string(), "-1 + v^4");
        assert_eq!(Scalar::shell_measure(0).eval_q(7), Some((6, 7)));
        assert_eq!(Scalar::v_pow(-2).as_v_power(), Some(-2));
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic(1), vec![-1, 1]);
        assert_eq!(cyclotomic(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic(6), vec![1, -1, 1]);
    }

    #[test]
    fn root_of_unity_sums() {
        let mut s = CycloSum::new(4);
        s.add_at(0, &Scalar::int(5));
        s.add_at(2, &Scalar::int(5));
        assert!(s.is_zero());
        let mut t = CycloSum::new(3);
        for e in 0..3 {
            t.add_at(e, &Scalar::q_pow(1));
        }
        t.add_at(0, &Scalar::one());
        assert_eq!(t.as_scalar(), Some(Scalar::one()));
        let mut u = CycloSum::new(3);
        u.add_at(1, &Scalar::one());
        assert_eq!(u.as_scalar(), None);
    }
}
