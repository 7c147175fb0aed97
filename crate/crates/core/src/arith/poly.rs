//! Dense univariate polynomials over `F_q`, coefficients stored low degree first.
//! Every function returns a trimmed vector (no trailing zeros); the zero
//! polynomial is the empty vector.

use super::field::inv_mod;

pub(crate) type Poly = Vec<u64>;

pub(crate) fn trim(mut p: Poly) -> Poly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

pub(crate) fn add(a: &[u64], b: &[u64], q: u64) -> Poly {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, &s) in out.iter_mut().zip(short) {
        *o = (*o + s) % q;
    }
    trim(out)
}

pub(crate) fn neg(a: &[u64], q: u64) -> Poly {
    a.iter().map(|&c| (q - c) % q).collect()
}

pub(crate) fn mul(a: &[u64], b: &[u64], q: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if b.len() == 1 {
        return scale(a, b[0], q);
    }
    if a.len() == 1 {
        return scale(b, a[0], q);
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % q;
        }
    }
    trim(out)
}

pub(crate) fn scale(a: &[u64], c: u64, q: u64) -> Poly {
    if c % q == 0 {
        return Vec::new();
    }
    trim(a.iter().map(|&x| x * c % q).collect())
}

/// Multiply by `t^k`.
pub(crate) fn shift(a: &[u64], k: usize) -> Poly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; k];
    out.extend_from_slice(a);
    out
}

pub(crate) fn divrem(a: &[u64], b: &[u64], q: u64) -> (Poly, Poly) {
    assert!(!b.is_empty(), "polynomial division by zero");
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let mut rem = a.to_vec();
    let lead_inv = inv_mod(*b.last().unwrap(), q);
    let mut quo = vec![0u64; a.len() - b.len() + 1];
    for i in (0..quo.len()).rev() {
        let c = rem[i + b.len() - 1] * lead_inv % q;
        quo[i] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                rem[i + j] = (rem[i + j] + q - c * bj % q) % q;
            }
        }
    }
    (trim(quo), trim(rem))
}

/// Monic greatest common divisor (empty when both inputs are zero).
pub(crate) fn gcd(a: &[u64], b: &[u64], q: u64) -> Poly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y, q);
        x = y;
        y = r;
    }
    if let Some(&lead) = x.last() {
        let li = inv_mod(lead, q);
        x = scale(&x, li, q);
    }
    x
}

/// Number of low-order zero coefficients (`usize::MAX`-free: zero poly gives 0).
pub(crate) fn low_order(a: &[u64]) -> usize {
    a.iter().take_while(|&&c| c == 0).count()
}
